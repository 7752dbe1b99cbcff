#include "edgetrust/sim.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "edgetrust/errors.hpp"
#include "edgetrust/hash.hpp"

namespace edgetrust {

namespace {

constexpr std::uint8_t kStatusOk = 0;
constexpr std::uint8_t kStatusDuplicate = 1;
constexpr std::uint8_t kStatusMalformed = 2;

constexpr std::uint8_t kReplyTagRegistration = 1;
constexpr std::uint8_t kReplyTagActivityAck = 2;

constexpr const char* kTrustCenterId = "tc";

void put_u32(ByteString& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_i64(ByteString& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(u >> shift));
  }
}

void put_field(ByteString& out, const ByteString& field) {
  put_u32(out, static_cast<std::uint32_t>(field.size()));
  out.insert(out.end(), field.begin(), field.end());
}

class Reader {
 public:
  explicit Reader(const ByteString& data) : data_(data) {}

  std::uint32_t read_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v = (v << 8) | data_[pos_++];
    }
    return v;
  }

  std::int64_t read_i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v = (v << 8) | data_[pos_++];
    }
    return static_cast<std::int64_t>(v);
  }

  ByteString read_field() {
    std::uint32_t len = read_u32();
    need(len);
    ByteString out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                   data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return out;
  }

  HashDigest read_digest() {
    need(kDigestSize);
    HashDigest out{};
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), kDigestSize, out.begin());
    pos_ += kDigestSize;
    return out;
  }

  std::uint8_t read_byte() {
    need(1);
    return data_[pos_++];
  }

  void finish() const {
    if (pos_ != data_.size()) {
      throw Error(ErrorCode::parse_error, "payload has trailing octets");
    }
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::parse_error, "payload truncated");
    }
  }

  const ByteString& data_;
  std::size_t pos_ = 0;
};

ByteString encode_registration_reply(std::uint8_t status, const HashDigest* d) {
  ByteString out;
  out.push_back(kReplyTagRegistration);
  out.push_back(status);
  if (status == kStatusOk && d != nullptr) {
    out.insert(out.end(), d->begin(), d->end());
  }
  return out;
}

ByteString encode_activity_ack(const AckSummary& ack) {
  ByteString out;
  out.push_back(kReplyTagActivityAck);
  put_u32(out, static_cast<std::uint32_t>(ack.appended));
  put_u32(out, static_cast<std::uint32_t>(ack.rejected));
  return out;
}

}  // namespace

ByteString encode_registration_message(const RegistrationMessage& msg) {
  ByteString out;
  put_field(out, msg.uid);
  out.insert(out.end(), msg.a.begin(), msg.a.end());
  put_field(out, msg.b);
  put_i64(out, msg.ts);
  return out;
}

RegistrationMessage decode_registration_message(const ByteString& payload) {
  Reader reader(payload);
  RegistrationMessage msg;
  msg.uid = reader.read_field();
  msg.a = reader.read_digest();
  msg.b = reader.read_field();
  msg.ts = reader.read_i64();
  reader.finish();
  return msg;
}

ByteString encode_activity_records(std::span<const ActivityRecord> records) {
  ByteString out;
  put_u32(out, static_cast<std::uint32_t>(records.size()));
  for (const ActivityRecord& record : records) {
    put_field(out, record.uid);
    put_field(out, record.sid);
    out.push_back(record.kind == ActionKind::positive ? 'P' : 'N');
    put_i64(out, record.action_time);
  }
  return out;
}

std::vector<ActivityRecord> decode_activity_records(const ByteString& payload) {
  Reader reader(payload);
  std::uint32_t count = reader.read_u32();
  std::vector<ActivityRecord> records;
  records.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    ActivityRecord record;
    record.uid = reader.read_field();
    record.sid = reader.read_field();
    std::uint8_t kind = reader.read_byte();
    if (kind == 'P') {
      record.kind = ActionKind::positive;
    } else if (kind == 'N') {
      record.kind = ActionKind::negative;
    } else {
      throw Error(ErrorCode::parse_error, "unknown action kind octet");
    }
    record.action_time = reader.read_i64();
    records.push_back(std::move(record));
  }
  reader.finish();
  return records;
}

std::vector<SecrecyViolation> check_secrecy(const Transcript& transcript,
                                            const std::vector<Secret>& secrets) {
  std::vector<SecrecyViolation> violations;
  for (const WireMessage& message : transcript.messages) {
    for (const Secret& secret : secrets) {
      if (secret.value.empty()) {
        continue;
      }
      auto hit = std::search(message.payload.begin(), message.payload.end(),
                             secret.value.begin(), secret.value.end());
      if (hit != message.payload.end()) {
        violations.push_back({message.seq, secret.name});
      }
    }
  }
  return violations;
}

Simulation::Simulation(std::uint64_t seed) : rng_(seed) {
  secret_ = TrustCenterSecret::generate(rng_);
}

const WireMessage& Simulation::post(const std::string& sender, const std::string& receiver,
                                    MessageKind kind, ByteString payload) {
  WireMessage message;
  message.seq = next_seq_++;
  message.sender = sender;
  message.receiver = receiver;
  message.kind = kind;
  message.payload = std::move(payload);
  message.ts = next_time();
  transcript_.messages.push_back(std::move(message));
  return transcript_.messages.back();
}

Simulation::RegistrationReply Simulation::handle_registration(const ByteString& payload) {
  RegistrationReply reply;
  try {
    RegistrationMessage msg = decode_registration_message(payload);
    TrustCenterRecord record = tc_register(msg, secret_, tc_table_);
    reply.status = kStatusOk;
    reply.d = record.d;
  } catch (const Error& error) {
    reply.status =
        error.code() == ErrorCode::duplicate_identity ? kStatusDuplicate : kStatusMalformed;
  }
  return reply;
}

ScenarioResult Simulation::run_registration_scenario(std::size_t n_devices,
                                                     const AdversaryMode& adversary) {
  ScenarioResult result;
  SeededRandom adversary_rng(adversary.rng_seed);
  std::vector<ByteString> captured;

  for (std::size_t i = 0; i < n_devices; ++i) {
    SimDevice device;
    device.uid = bytes_of("device-" + std::to_string(i + 1));
    device.password = bytes_of(to_hex(rng_.bytes(16)));
    Timestamp enroll_time = next_time();
    RegistrationMessage msg = device_enroll(device.uid, device.password, rng_, enroll_time);
    device.b = msg.b;
    ByteString payload = encode_registration_message(msg);

    if (adversary.kind == AdversaryKind::tamper &&
        adversary.target_kind == MessageKind::registration) {
      // Flip one octet of the credential region (uid, A, b and their length
      // prefixes). The trailing 8 octets are the inert timestamp.
      std::size_t span = payload.size() - 8;
      std::size_t index = static_cast<std::size_t>(adversary_rng.next_u64() % span);
      payload[index] ^= 0xff;
    }
    if ((adversary.kind == AdversaryKind::eavesdrop || adversary.kind == AdversaryKind::replay) &&
        adversary.target_kind == MessageKind::registration) {
      captured.push_back(payload);
    }

    const WireMessage& wire = post(string_of(device.uid), kTrustCenterId,
                                   MessageKind::registration, std::move(payload));
    RegistrationReply reply = handle_registration(wire.payload);
    post(kTrustCenterId, string_of(device.uid), MessageKind::response,
         encode_registration_reply(reply.status, &reply.d));
    if (reply.status == kStatusOk) {
      ++result.registrations_completed;
      device.record = device_store(device.uid, device.password, reply.d, device.b);
    }
    devices_.push_back(std::move(device));
  }

  if (adversary.kind == AdversaryKind::replay) {
    for (std::size_t i = 0; i < captured.size(); ++i) {
      const std::string spoofed_sender = "device-" + std::to_string(i + 1);
      const WireMessage& wire =
          post(spoofed_sender, kTrustCenterId, MessageKind::registration, captured[i]);
      RegistrationReply reply = handle_registration(wire.payload);
      post(kTrustCenterId, spoofed_sender, MessageKind::response,
           encode_registration_reply(reply.status, &reply.d));
      result.replay_outcomes.push_back(reply.status == kStatusOk ? ReplayOutcome::accepted
                                                                 : ReplayOutcome::rejected);
    }
  }

  result.secrecy_violations = check_secrecy(transcript_, watched_secrets());
  return result;
}

AckSummary Simulation::report_activity(const std::string& sp_id,
                                       std::span<const ActivityRecord> records) {
  const WireMessage& wire =
      post(sp_id, kTrustCenterId, MessageKind::activity_report, encode_activity_records(records));
  AckSummary ack;
  try {
    for (ActivityRecord& record : decode_activity_records(wire.payload)) {
      if (tc_table_.contains(record.uid)) {
        logs_.append(std::move(record));
        ++ack.appended;
      } else {
        ++ack.rejected;
      }
    }
  } catch (const Error&) {
    ack.rejected = records.size();
  }
  post(kTrustCenterId, sp_id, MessageKind::response, encode_activity_ack(ack));
  return ack;
}

std::vector<Secret> Simulation::watched_secrets() const {
  std::vector<Secret> secrets;
  secrets.push_back({"X", ByteString(secret_.x.begin(), secret_.x.end())});
  for (const SimDevice& device : devices_) {
    std::string id = string_of(device.uid);
    secrets.push_back({"P:" + id, device.password});
    HashDigest pseudonym = derive_pseudonym(device.uid, device.b);
    secrets.push_back({"PUID:" + id, ByteString(pseudonym.begin(), pseudonym.end())});
    HashDigest m = derive_center_key(pseudonym, secret_);
    secrets.push_back({"M:" + id, ByteString(m.begin(), m.end())});
  }
  return secrets;
}

bool Simulation::verify_device(const SimDevice& device) const {
  if (!device.record.has_value()) {
    return false;
  }
  try {
    return verify_credentials(device.uid, device.password, device.record->b, secret_, tc_table_);
  } catch (const Error& error) {
    if (error.code() == ErrorCode::not_registered) {
      return false;
    }
    throw;
  }
}

ScenarioRun run_registration_scenario(std::size_t n_devices, const AdversaryMode& adversary,
                                      std::uint64_t seed) {
  Simulation simulation(seed);
  ScenarioRun run;
  run.result = simulation.run_registration_scenario(n_devices, adversary);
  run.transcript = simulation.transcript();
  return run;
}

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::registration:
      return "registration";
    case MessageKind::activity_report:
      return "activity-report";
    case MessageKind::response:
      return "response";
  }
  return "unknown";
}

std::string format_transcript(const Transcript& transcript) {
  std::ostringstream out;
  for (const WireMessage& message : transcript.messages) {
    out << message.seq << ' ' << message.sender << ' ' << message.receiver << ' '
        << to_string(message.kind) << ' ' << message.ts << ' ' << to_hex(message.payload)
        << '\n';
  }
  return out.str();
}

std::string format_result(const ScenarioResult& result) {
  std::size_t accepted = 0;
  for (ReplayOutcome outcome : result.replay_outcomes) {
    if (outcome == ReplayOutcome::accepted) {
      ++accepted;
    }
  }
  std::ostringstream out;
  out << "registrations_completed=" << result.registrations_completed << '\n';
  out << "replay_attempts=" << result.replay_outcomes.size() << '\n';
  out << "replay_accepted=" << accepted << '\n';
  out << "replay_rejected=" << result.replay_outcomes.size() - accepted << '\n';
  out << "secrecy_violations=" << result.secrecy_violations.size() << '\n';
  for (const SecrecyViolation& violation : result.secrecy_violations) {
    out << "violation=" << violation.seq << ':' << violation.secret_name << '\n';
  }
  return out.str();
}

}  // namespace edgetrust
