#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "edgetrust/registration.hpp"
#include "edgetrust/trust.hpp"

namespace edgetrust {

// Tab-separated text schemas, one row per line:
//   trust center: uid, hex(C), hex(D), hex(b)
//   device:       uid, password, hex(D), hex(b)
//   activity:     uid, sid, PA|NA, action_time
// Text fields must not contain tab, CR or LF; saving rejects them.

void save_trust_center_table(const TrustCenterTable& table, std::ostream& out);
void save_trust_center_table(const TrustCenterTable& table, const std::filesystem::path& path);
TrustCenterTable load_trust_center_table(std::istream& in);
/// A missing file loads as an empty table.
TrustCenterTable load_trust_center_table(const std::filesystem::path& path);

void save_device_table(const DeviceTable& table, std::ostream& out);
void save_device_table(const DeviceTable& table, const std::filesystem::path& path);
DeviceTable load_device_table(std::istream& in);
DeviceTable load_device_table(const std::filesystem::path& path);

/// uid-keyed activity logs. The file form is append-only; replaying it
/// reconstructs the same logs in the same order.
class ActivityStore {
 public:
  ActivityLog& log_for(const ByteString& uid);
  const ActivityLog* find(const ByteString& uid) const;
  void append(ActivityRecord record);
  std::size_t device_count() const { return logs_.size(); }
  const std::map<ByteString, ActivityLog>& logs() const { return logs_; }

 private:
  std::map<ByteString, ActivityLog> logs_;
};

std::string format_activity_row(const ActivityRecord& record);
ActivityRecord parse_activity_row(std::string_view line);

void append_activity_row(const std::filesystem::path& path, const ActivityRecord& record);
ActivityStore load_activity_store(std::istream& in);
ActivityStore load_activity_store(const std::filesystem::path& path);

/// The trust center secret persists as one hex line. It lives only in the
/// center's own storage, never in any message.
void save_secret(const TrustCenterSecret& secret, const std::filesystem::path& path);
std::optional<TrustCenterSecret> load_secret(const std::filesystem::path& path);

}  // namespace edgetrust
