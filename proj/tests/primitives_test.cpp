#include <sys/mman.h>

#include <map>
#include <utility>

#include "edgetrust/bytes.hpp"
#include "edgetrust/errors.hpp"
#include "edgetrust/hash.hpp"
#include "edgetrust/random.hpp"
#include "gtest/gtest.h"

using namespace edgetrust;

TEST(AdjoinTest, single_octet_operands) {
  ByteString a = {0x61};
  ByteString b = {0x62};
  ByteString expected = {0x00, 0x00, 0x00, 0x01, 0x61, 0x00, 0x00, 0x00, 0x01, 0x62};
  EXPECT_EQ(adjoin(a, b), expected);
}

TEST(AdjoinTest, boundary_shift_does_not_collide) {
  EXPECT_NE(adjoin(bytes_of("ab"), bytes_of("c")), adjoin(bytes_of("a"), bytes_of("bc")));
}

TEST(AdjoinTest, empty_operands) {
  ByteString expected(8, 0x00);
  EXPECT_EQ(adjoin(ByteString{}, ByteString{}), expected);
}

TEST(AdjoinTest, deterministic) {
  ByteString a = bytes_of("alpha");
  ByteString b = bytes_of("beta");
  EXPECT_EQ(adjoin(a, b), adjoin(a, b));
}

TEST(AdjoinTest, injective_over_random_pairs) {
  SeededRandom rng(42);
  std::map<ByteString, std::pair<ByteString, ByteString>> seen;
  for (int i = 0; i < 10000; ++i) {
    ByteString a = rng.bytes(rng.next_u64() % 13);
    ByteString b = rng.bytes(rng.next_u64() % 13);
    ByteString encoded = adjoin(a, b);
    auto [it, inserted] = seen.try_emplace(encoded, a, b);
    if (!inserted) {
      ASSERT_EQ(it->second, std::make_pair(a, b))
          << "distinct pairs collided at iteration " << i;
    }
  }
}

TEST(AdjoinTest, oversized_operand_rejected) {
  // 2^32 octets of untouched zero pages; the length check fires before any
  // byte is read.
  const std::size_t size = std::size_t{1} << 32;
  void* mapping =
      mmap(nullptr, size, PROT_READ, MAP_PRIVATE | MAP_ANONYMOUS | MAP_NORESERVE, -1, 0);
  if (mapping == MAP_FAILED) {
    GTEST_SKIP() << "cannot map 4 GiB of address space";
  }
  std::span<const std::uint8_t> huge(static_cast<const std::uint8_t*>(mapping), size);
  ByteString small = {0x01};
  try {
    adjoin(huge, small);
    munmap(mapping, size);
    FAIL() << "oversized operand was accepted";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::encoding_overflow);
  }
  try {
    adjoin(small, huge);
    FAIL() << "oversized operand was accepted";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::encoding_overflow);
  }
  munmap(mapping, size);
}

TEST(HashTest, empty_input_vector) {
  EXPECT_EQ(to_hex(sha256(ByteString{})),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(HashTest, abc_vector) {
  EXPECT_EQ(to_hex(sha256(bytes_of("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HashTest, deterministic) {
  ByteString m = bytes_of("repeatable");
  EXPECT_EQ(sha256(m), sha256(m));
}

TEST(HashTest, output_is_32_octets) {
  SeededRandom rng(7);
  for (int i = 0; i < 100; ++i) {
    HashDigest digest = sha256(rng.bytes(rng.next_u64() % 64));
    EXPECT_EQ(digest.size(), kDigestSize);
  }
}

namespace {

HashDigest random_digest(SeededRandom& rng) {
  HashDigest d;
  rng.fill(d);
  return d;
}

}  // namespace

TEST(XorTest, self_inverse) {
  SeededRandom rng(11);
  HashDigest a = random_digest(rng);
  HashDigest zero{};
  EXPECT_EQ(xor_digests(a, a), zero);
}

TEST(XorTest, zero_identity) {
  SeededRandom rng(12);
  HashDigest a = random_digest(rng);
  EXPECT_EQ(xor_digests(a, HashDigest{}), a);
}

TEST(XorTest, involution_recovers_operand) {
  SeededRandom rng(13);
  for (int i = 0; i < 1000; ++i) {
    HashDigest m = random_digest(rng);
    HashDigest c = random_digest(rng);
    EXPECT_EQ(xor_digests(xor_digests(m, c), c), m);
  }
}

TEST(XorTest, commutative_and_associative) {
  SeededRandom rng(14);
  for (int i = 0; i < 1000; ++i) {
    HashDigest a = random_digest(rng);
    HashDigest b = random_digest(rng);
    HashDigest c = random_digest(rng);
    EXPECT_EQ(xor_digests(a, b), xor_digests(b, a));
    EXPECT_EQ(xor_digests(xor_digests(a, b), c), xor_digests(a, xor_digests(b, c)));
  }
}

TEST(HexTest, round_trip) {
  SeededRandom rng(15);
  for (int i = 0; i < 100; ++i) {
    ByteString data = rng.bytes(rng.next_u64() % 40);
    EXPECT_EQ(from_hex(to_hex(data)), data);
  }
}

TEST(HexTest, rejects_bad_input) {
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
  EXPECT_THROW(digest_from_hex("ab"), Error);
}
