#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgetrust {

/// Arbitrary-length octet sequence. Identifiers and passwords are carried as
/// their UTF-8 octets, random insertion values as raw bytes.
using ByteString = std::vector<std::uint8_t>;

inline constexpr std::size_t kDigestSize = 32;

/// Fixed 256-bit value, the output type of the hash primitive.
using HashDigest = std::array<std::uint8_t, kDigestSize>;

/// Integer seconds since epoch. The simulation substitutes a logical clock.
using Timestamp = std::int64_t;

ByteString bytes_of(std::string_view s);
std::string string_of(const ByteString& b);

std::string to_hex(std::span<const std::uint8_t> data);
ByteString from_hex(std::string_view hex);
HashDigest digest_from_hex(std::string_view hex);

/// Injective pairing of two octet strings: each operand is prefixed with its
/// length as a 4-octet big-endian integer, then the two are concatenated.
/// Operands longer than 2^32-1 octets do not fit the prefix and are rejected.
ByteString adjoin(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

HashDigest xor_digests(const HashDigest& a, const HashDigest& b);

}  // namespace edgetrust
