#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "edgetrust/bytes.hpp"

namespace edgetrust {

class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  ByteString bytes(std::size_t n);
};

/// Non-deterministic randomness for real registrations.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::random_device device_;
};

/// Deterministic stream for the simulation harness and tests. The byte
/// sequence depends only on the seed.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  void fill(std::span<std::uint8_t> out) override;

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgetrust
