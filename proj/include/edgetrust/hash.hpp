#pragma once

#include <span>

#include "edgetrust/bytes.hpp"

namespace edgetrust {

/// SHA-256 of the given octets.
HashDigest sha256(std::span<const std::uint8_t> message);

}  // namespace edgetrust
