#include "edgetrust/bytes.hpp"

#include <cstddef>
#include <limits>

#include "edgetrust/errors.hpp"

namespace edgetrust {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_u32_be(ByteString& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

ByteString bytes_of(std::string_view s) {
  return ByteString(s.begin(), s.end());
}

std::string string_of(const ByteString& b) {
  return std::string(b.begin(), b.end());
}

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t byte : data) {
    out.push_back(kHexDigits[byte >> 4]);
    out.push_back(kHexDigits[byte & 0x0f]);
  }
  return out;
}

ByteString from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::parse_error, "hex string has odd length");
  }
  ByteString out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::parse_error, "invalid hex digit");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

HashDigest digest_from_hex(std::string_view hex) {
  ByteString raw = from_hex(hex);
  if (raw.size() != kDigestSize) {
    throw Error(ErrorCode::parse_error, "digest must be exactly 32 octets");
  }
  HashDigest out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

ByteString adjoin(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  constexpr std::size_t kMax = std::numeric_limits<std::uint32_t>::max();
  if (a.size() > kMax || b.size() > kMax) {
    throw Error(ErrorCode::encoding_overflow, "operand does not fit a 4-octet length prefix");
  }
  ByteString out;
  out.reserve(8 + a.size() + b.size());
  append_u32_be(out, static_cast<std::uint32_t>(a.size()));
  out.insert(out.end(), a.begin(), a.end());
  append_u32_be(out, static_cast<std::uint32_t>(b.size()));
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

HashDigest xor_digests(const HashDigest& a, const HashDigest& b) {
  HashDigest out;
  for (std::size_t i = 0; i < kDigestSize; ++i) {
    out[i] = a[i] ^ b[i];
  }
  return out;
}

}  // namespace edgetrust
