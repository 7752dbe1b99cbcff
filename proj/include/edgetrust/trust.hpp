#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgetrust/bytes.hpp"
#include "edgetrust/fuzzy.hpp"

namespace edgetrust {

enum class ActionKind { positive, negative };

/// One logged action: when it happened, what kind it was, which service
/// provider reported it and for which device.
struct ActivityRecord {
  ByteString uid;
  ByteString sid;
  ActionKind kind = ActionKind::positive;
  Timestamp action_time = 0;

  bool operator==(const ActivityRecord&) const = default;
};

/// Append-only action history of a single device.
class ActivityLog {
 public:
  explicit ActivityLog(ByteString uid) : uid_(std::move(uid)) {}

  const ByteString& uid() const { return uid_; }
  const std::vector<ActivityRecord>& records() const { return records_; }

  /// Appends in arrival order. Records for another uid are rejected.
  void append(ActivityRecord record);

 private:
  ByteString uid_;
  std::vector<ActivityRecord> records_;
};

/// Approvable time frame boundaries Pos and Neg. The negative window must be
/// the bigger frame at evaluation time.
struct WindowConfig {
  Timestamp pos_boundary = 0;
  Timestamp neg_boundary = 0;
};

/// Window durations W_p and W_n derived from the boundaries.
struct WindowBounds {
  Timestamp positive = 0;
  Timestamp negative = 0;
};

struct QualifiedCounts {
  std::int64_t positive = 0;
  std::int64_t negative = 0;
};

struct TrustReport {
  ByteString uid;
  std::int64_t qualified_pos = 0;
  std::int64_t qualified_neg = 0;
  std::int64_t net_activity = 0;
  double trust_degree = 0;
};

/// W_p = |curr - Pos|, W_n = |curr - Neg|. W_n < W_p is rejected: negative
/// actions stay relevant in the bigger frame.
WindowBounds window_bounds(Timestamp curr, const WindowConfig& config);

/// Counts actions whose age falls inside the matching window. Boundaries are
/// inclusive; future-dated records never count.
QualifiedCounts qualify_actions(const ActivityLog& log, Timestamp curr,
                                const WindowConfig& config);

std::int64_t net_activity(std::int64_t qualified_pos, std::int64_t qualified_neg);

/// Qualifies the log, counts, and runs the fuzzy engine on the counts.
TrustReport assess_trust(const ActivityLog& log, Timestamp curr, const WindowConfig& config,
                         const fuzzy::FuzzyConfig& fuzzy_config);

/// Maps a trust degree onto named accessibility tiers. No default tiers are
/// shipped; thresholds are the deployment's call.
class AccessPolicy {
 public:
  /// Grants `label` from `min_trust` upward.
  void add_tier(double min_trust, std::string label);

  /// Label of the highest tier whose threshold the degree reaches, if any.
  std::optional<std::string> tier_for(double trust_degree) const;

  bool empty() const { return tiers_.empty(); }

 private:
  struct Tier {
    double min_trust;
    std::string label;
  };
  std::vector<Tier> tiers_;  // sorted by threshold descending
};

}  // namespace edgetrust
