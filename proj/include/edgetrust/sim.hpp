#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgetrust/registration.hpp"
#include "edgetrust/store.hpp"
#include "edgetrust/trust.hpp"

namespace edgetrust {

enum class MessageKind { registration, activity_report, response };

/// One captured bus message. The payload is the byte-exact serialization of
/// the carried record.
struct WireMessage {
  std::uint64_t seq = 0;
  std::string sender;
  std::string receiver;
  MessageKind kind = MessageKind::registration;
  ByteString payload;
  Timestamp ts = 0;
};

struct Transcript {
  std::vector<WireMessage> messages;
};

enum class AdversaryKind { none, eavesdrop, replay, tamper };

struct AdversaryMode {
  AdversaryKind kind = AdversaryKind::none;
  MessageKind target_kind = MessageKind::registration;
  std::uint64_t rng_seed = 0;
};

enum class ReplayOutcome { accepted, rejected };

struct SecrecyViolation {
  std::uint64_t seq = 0;
  std::string secret_name;

  bool operator==(const SecrecyViolation&) const = default;
};

struct ScenarioResult {
  std::vector<SecrecyViolation> secrecy_violations;
  std::vector<ReplayOutcome> replay_outcomes;
  std::size_t registrations_completed = 0;
};

struct Secret {
  std::string name;
  ByteString value;
};

/// Scans every payload for each secret as a contiguous octet substring.
std::vector<SecrecyViolation> check_secrecy(const Transcript& transcript,
                                            const std::vector<Secret>& secrets);

struct AckSummary {
  std::size_t appended = 0;
  std::size_t rejected = 0;
};

// Wire codecs. Decoding rejects truncated or oversized payloads.
ByteString encode_registration_message(const RegistrationMessage& msg);
RegistrationMessage decode_registration_message(const ByteString& payload);
ByteString encode_activity_records(std::span<const ActivityRecord> records);
std::vector<ActivityRecord> decode_activity_records(const ByteString& payload);

/// What the harness knows about one simulated device.
struct SimDevice {
  ByteString uid;
  ByteString password;
  ByteString b;
  std::optional<DeviceRecord> record;
};

/// Deterministic single-threaded multi-actor run: devices enroll with the
/// trust center over a synchronous ordered bus while an optional adversary
/// observes, replays or tampers. Identical (inputs, seed) give byte-identical
/// transcripts. Parallel runs with distinct seeds share no state.
class Simulation {
 public:
  explicit Simulation(std::uint64_t seed);

  /// Enrolls n devices, lets the adversary act per mode, then scans the
  /// transcript for leaked secrets. Adversary effects land in the result,
  /// never in an exception.
  ScenarioResult run_registration_scenario(std::size_t n_devices, const AdversaryMode& adversary);

  /// Service provider hands a batch of activity records to the trust center.
  /// Records for unknown devices are rejected and counted in the ack.
  AckSummary report_activity(const std::string& sp_id, std::span<const ActivityRecord> records);

  const Transcript& transcript() const { return transcript_; }
  const std::vector<SimDevice>& devices() const { return devices_; }
  const TrustCenterTable& trust_center_table() const { return tc_table_; }
  const TrustCenterSecret& trust_center_secret() const { return secret_; }
  const ActivityLog* activity_log(const ByteString& uid) const { return logs_.find(uid); }

  /// Everything that must stay off the wire: X plus each device's password,
  /// pseudonym and center key.
  std::vector<Secret> watched_secrets() const;

  /// Re-runs the credential check for a device with its own stored values.
  /// False when the device never completed enrollment or the chain no longer
  /// verifies.
  bool verify_device(const SimDevice& device) const;

 private:
  struct RegistrationReply {
    std::uint8_t status = 0;
    HashDigest d{};
  };

  Timestamp next_time() { return ++clock_; }
  const WireMessage& post(const std::string& sender, const std::string& receiver,
                          MessageKind kind, ByteString payload);
  RegistrationReply handle_registration(const ByteString& payload);

  SeededRandom rng_;
  Timestamp clock_ = 0;
  std::uint64_t next_seq_ = 1;
  Transcript transcript_;
  TrustCenterSecret secret_;
  TrustCenterTable tc_table_;
  ActivityStore logs_;
  std::vector<SimDevice> devices_;
};

struct ScenarioRun {
  Transcript transcript;
  ScenarioResult result;
};

ScenarioRun run_registration_scenario(std::size_t n_devices, const AdversaryMode& adversary,
                                      std::uint64_t seed);

std::string_view to_string(MessageKind kind);

/// One line per message: seq, sender, receiver, kind, ts, hex payload.
std::string format_transcript(const Transcript& transcript);

/// Flat key=value report.
std::string format_result(const ScenarioResult& result);

}  // namespace edgetrust
