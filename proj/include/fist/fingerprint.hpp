#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace fist {

enum class DigestKind { kSha1, kSha256 };

// Collision-resistant digest of a canonical byte serialization. Used to
// find candidate duplicate rows/columns/chunks cheaply; every candidate is
// still byte-verified before merging, so a collision can never corrupt a
// table.
struct Fingerprint {
  DigestKind kind = DigestKind::kSha1;
  std::uint8_t size = 20;
  std::array<std::uint8_t, 32> bytes{};

  bool operator==(const Fingerprint&) const = default;
  std::string hex() const;
};

Fingerprint fingerprint(std::span<const std::uint8_t> data,
                        DigestKind kind = DigestKind::kSha1);

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& fp) const noexcept {
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | fp.bytes[static_cast<std::size_t>(i)];
    return static_cast<std::size_t>(h);
  }
};

}  // namespace fist
