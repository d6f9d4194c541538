#include "fist/fingerprint.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace fist {

Fingerprint fingerprint(std::span<const std::uint8_t> data, DigestKind kind) {
  const EVP_MD* md =
      kind == DigestKind::kSha1 ? EVP_sha1() : EVP_sha256();
  Fingerprint fp;
  fp.kind = kind;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), fp.bytes.data(), &len, md,
                 nullptr) != 1)
    throw std::runtime_error("digest computation failed");
  fp.size = static_cast<std::uint8_t>(len);
  return fp;
}

std::string Fingerprint::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(size * 2u);
  for (std::uint8_t i = 0; i < size; ++i) {
    out.push_back(digits[bytes[i] >> 4]);
    out.push_back(digits[bytes[i] & 0xf]);
  }
  return out;
}

}  // namespace fist
