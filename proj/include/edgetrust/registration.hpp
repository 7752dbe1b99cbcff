#pragma once

#include <cstdint>
#include <map>

#include "edgetrust/bytes.hpp"
#include "edgetrust/random.hpp"

namespace edgetrust {

/// Octets drawn for the per-device random insertion value b.
inline constexpr std::size_t kInsertionValueSize = 16;

/// Long-lived trust center secret X. Never leaves the trust center and never
/// appears in a wire message.
struct TrustCenterSecret {
  HashDigest x{};

  static TrustCenterSecret generate(RandomSource& rng);
};

/// Enrollment request: (UID, A = H(P + b), b, TS). The password itself is
/// never transmitted, only the commitment A.
struct RegistrationMessage {
  ByteString uid;
  HashDigest a{};
  ByteString b;
  Timestamp ts = 0;
};

/// Row of the trust center's credential table: (C, D, b) keyed by uid.
struct TrustCenterRecord {
  ByteString uid;
  HashDigest c{};
  HashDigest d{};
  ByteString b;

  bool operator==(const TrustCenterRecord&) const = default;
};

/// Row of the device-side table: (UID, P, D, b).
struct DeviceRecord {
  ByteString uid;
  ByteString password;
  HashDigest d{};
  ByteString b;

  bool operator==(const DeviceRecord&) const = default;
};

/// In-memory credential table, one row per uid. Single writer, any number of
/// concurrent readers.
class TrustCenterTable {
 public:
  bool contains(const ByteString& uid) const;
  const TrustCenterRecord* find(const ByteString& uid) const;
  /// Rejects a second row for the same uid.
  void insert(TrustCenterRecord record);
  std::size_t size() const { return rows_.size(); }
  const std::map<ByteString, TrustCenterRecord>& rows() const { return rows_; }

 private:
  std::map<ByteString, TrustCenterRecord> rows_;
};

class DeviceTable {
 public:
  bool contains(const ByteString& uid) const;
  const DeviceRecord* find(const ByteString& uid) const;
  void insert(DeviceRecord record);
  std::size_t size() const { return rows_.size(); }
  const std::map<ByteString, DeviceRecord>& rows() const { return rows_; }

 private:
  std::map<ByteString, DeviceRecord> rows_;
};

/// PUID = H(uid + b). Derived on demand, never stored or transmitted.
HashDigest derive_pseudonym(const ByteString& uid, const ByteString& b);

/// M = H(PUID + X), the center-side value hidden inside D = M xor C.
HashDigest derive_center_key(const HashDigest& pseudonym, const TrustCenterSecret& secret);

/// Device-side enrollment: draws b, computes A = H(password + b) and builds
/// the registration message. uid and password must be non-empty.
RegistrationMessage device_enroll(const ByteString& uid, const ByteString& password,
                                  RandomSource& rng, Timestamp now);

/// Trust-center side: derives PUID and M, computes C = H(PUID + A) and
/// D = M xor C, persists (C, D, b) under uid. A uid that is already present
/// is rejected, which doubles as the replay defense.
TrustCenterRecord tc_register(const RegistrationMessage& msg, const TrustCenterSecret& secret,
                              TrustCenterTable& table);

/// The tuple the device keeps after a completed registration.
DeviceRecord device_store(const ByteString& uid, const ByteString& password,
                          const HashDigest& d, const ByteString& b);

/// Recomputes the credential chain from (uid, password, b) and checks it
/// against the stored D. True only when every input matches the registration.
bool verify_credentials(const ByteString& uid, const ByteString& password, const ByteString& b,
                        const TrustCenterSecret& secret, const TrustCenterTable& table);

}  // namespace edgetrust
