#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace fist {

// Fixed-capacity bit string, MSB-first addressing. Bit 0 is the most
// significant bit of word 0, so lexicographic word comparison matches
// left-to-right bit comparison.
struct BitString {
  static constexpr int kMaxWidth = 128;

  std::array<std::uint64_t, 2> words{0, 0};

  bool bit(int i) const {
    return (words[static_cast<std::size_t>(i) >> 6] >> (63 - (i & 63))) & 1u;
  }

  void set_bit(int i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
    auto& w = words[static_cast<std::size_t>(i) >> 6];
    w = v ? (w | mask) : (w & ~mask);
  }

  // True if the first n bits of a and b agree.
  static bool equal_prefix(const BitString& a, const BitString& b, int n);

  // Zeroes every bit at position >= n (canonical form).
  void clear_from(int n);

  auto operator<=>(const BitString&) const = default;
};

class Address;

// A routing prefix over a W-bit address space: `length` significant bits,
// the rest wildcards. Bits past `length` are stored as zero so that equality
// and hashing are structural and serialized bytes are canonical.
class Prefix {
 public:
  Prefix() = default;
  Prefix(int width, int length, BitString bits);

  static Prefix wildcard(int width) { return Prefix(width, 0, BitString{}); }
  static Prefix of_address(const Address& a, int length);

  // Accepts either "101*" (digits padded with '*' to the width) or the
  // canonical "1010/3" slash form.
  static Prefix parse(const std::string& text, int width);

  std::string str() const;        // canonical slash form, e.g. "1010/3"
  std::string star_str() const;   // "101*"

  int width() const { return width_; }
  int length() const { return length_; }
  bool bit(int i) const { return bits_.bit(i); }
  const BitString& bits() const { return bits_; }

  bool matches(const Address& a) const;

  // True if this prefix covers `other` (equal or shorter-and-agreeing).
  bool contains(const Prefix& other) const;

  bool operator==(const Prefix&) const = default;
  auto operator<=>(const Prefix&) const = default;

 private:
  int width_ = 0;
  int length_ = 0;
  BitString bits_{};
};

class Address {
 public:
  Address() = default;
  Address(int width, BitString bits);

  static Address parse(const std::string& text, int width);
  static Address from_value(int width, std::uint64_t value);  // low bits of value

  std::string str() const;

  int width() const { return width_; }
  bool bit(int i) const { return bits_.bit(i); }
  const BitString& bits() const { return bits_; }

  bool operator==(const Address&) const = default;

 private:
  int width_ = 0;
  BitString bits_{};
};

bool matches(const Prefix& p, const Address& a);

std::size_t hash_value(const Prefix& p);

}  // namespace fist

template <>
struct std::hash<fist::Prefix> {
  std::size_t operator()(const fist::Prefix& p) const noexcept {
    return fist::hash_value(p);
  }
};
