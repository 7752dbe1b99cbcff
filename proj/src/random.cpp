#include "edgetrust/random.hpp"

namespace edgetrust {

ByteString RandomSource::bytes(std::size_t n) {
  ByteString out(n);
  fill(out);
  return out;
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    byte = static_cast<std::uint8_t>(device_());
  }
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (int shift = 56; shift >= 0 && i < out.size(); shift -= 8) {
      out[i++] = static_cast<std::uint8_t>(word >> shift);
    }
  }
}

}  // namespace edgetrust
