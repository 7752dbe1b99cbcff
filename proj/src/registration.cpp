#include "edgetrust/registration.hpp"

#include "edgetrust/errors.hpp"
#include "edgetrust/hash.hpp"

namespace edgetrust {

TrustCenterSecret TrustCenterSecret::generate(RandomSource& rng) {
  TrustCenterSecret secret;
  rng.fill(secret.x);
  return secret;
}

bool TrustCenterTable::contains(const ByteString& uid) const {
  return rows_.count(uid) != 0;
}

const TrustCenterRecord* TrustCenterTable::find(const ByteString& uid) const {
  auto it = rows_.find(uid);
  return it == rows_.end() ? nullptr : &it->second;
}

void TrustCenterTable::insert(TrustCenterRecord record) {
  auto [it, inserted] = rows_.try_emplace(record.uid, std::move(record));
  if (!inserted) {
    throw Error(ErrorCode::duplicate_identity, "uid already registered");
  }
}

bool DeviceTable::contains(const ByteString& uid) const {
  return rows_.count(uid) != 0;
}

const DeviceRecord* DeviceTable::find(const ByteString& uid) const {
  auto it = rows_.find(uid);
  return it == rows_.end() ? nullptr : &it->second;
}

void DeviceTable::insert(DeviceRecord record) {
  auto [it, inserted] = rows_.try_emplace(record.uid, std::move(record));
  if (!inserted) {
    throw Error(ErrorCode::duplicate_identity, "uid already stored");
  }
}

HashDigest derive_pseudonym(const ByteString& uid, const ByteString& b) {
  return sha256(adjoin(uid, b));
}

HashDigest derive_center_key(const HashDigest& pseudonym, const TrustCenterSecret& secret) {
  return sha256(adjoin(pseudonym, secret.x));
}

RegistrationMessage device_enroll(const ByteString& uid, const ByteString& password,
                                  RandomSource& rng, Timestamp now) {
  if (uid.empty() || password.empty()) {
    throw Error(ErrorCode::invalid_identity, "uid and password must be non-empty");
  }
  RegistrationMessage msg;
  msg.uid = uid;
  msg.b = rng.bytes(kInsertionValueSize);
  msg.a = sha256(adjoin(password, msg.b));
  msg.ts = now;
  return msg;
}

TrustCenterRecord tc_register(const RegistrationMessage& msg, const TrustCenterSecret& secret,
                              TrustCenterTable& table) {
  if (msg.uid.empty()) {
    throw Error(ErrorCode::invalid_identity, "registration message carries an empty uid");
  }
  if (table.contains(msg.uid)) {
    throw Error(ErrorCode::duplicate_identity, "uid already registered");
  }
  HashDigest pseudonym = derive_pseudonym(msg.uid, msg.b);
  HashDigest m = derive_center_key(pseudonym, secret);
  TrustCenterRecord record;
  record.uid = msg.uid;
  record.c = sha256(adjoin(pseudonym, msg.a));
  record.d = xor_digests(m, record.c);
  record.b = msg.b;
  table.insert(record);
  return record;
}

DeviceRecord device_store(const ByteString& uid, const ByteString& password,
                          const HashDigest& d, const ByteString& b) {
  return DeviceRecord{uid, password, d, b};
}

bool verify_credentials(const ByteString& uid, const ByteString& password, const ByteString& b,
                        const TrustCenterSecret& secret, const TrustCenterTable& table) {
  const TrustCenterRecord* row = table.find(uid);
  if (row == nullptr) {
    throw Error(ErrorCode::not_registered, "uid not registered");
  }
  HashDigest a = sha256(adjoin(password, b));
  HashDigest pseudonym = derive_pseudonym(uid, b);
  HashDigest c = sha256(adjoin(pseudonym, a));
  return xor_digests(row->d, c) == derive_center_key(pseudonym, secret);
}

}  // namespace edgetrust
