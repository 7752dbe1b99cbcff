#include "edgetrust/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace edgetrust {

HashDigest sha256(std::span<const std::uint8_t> message) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  HashDigest out{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), message.data(), message.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("sha256 digest computation failed");
  }
  return out;
}

}  // namespace edgetrust
