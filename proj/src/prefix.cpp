#include "fist/prefix.hpp"

#include <stdexcept>

namespace fist {

namespace {

void check_width(int width) {
  if (width < 1 || width > BitString::kMaxWidth)
    throw std::invalid_argument("address width out of range: " +
                                std::to_string(width));
}

}  // namespace

bool BitString::equal_prefix(const BitString& a, const BitString& b, int n) {
  int i = 0;
  for (std::size_t w = 0; w < a.words.size() && i < n; ++w, i += 64) {
    const int remaining = n - i;
    if (remaining >= 64) {
      if (a.words[w] != b.words[w]) return false;
    } else {
      const std::uint64_t mask = ~std::uint64_t{0} << (64 - remaining);
      if ((a.words[w] & mask) != (b.words[w] & mask)) return false;
    }
  }
  return true;
}

void BitString::clear_from(int n) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    const int word_start = static_cast<int>(w) * 64;
    if (n <= word_start) {
      words[w] = 0;
    } else if (n < word_start + 64) {
      words[w] &= ~std::uint64_t{0} << (64 - (n - word_start));
    }
  }
}

Prefix::Prefix(int width, int length, BitString bits)
    : width_(width), length_(length), bits_(bits) {
  check_width(width);
  if (length < 0 || length > width)
    throw std::invalid_argument("prefix length " + std::to_string(length) +
                                " exceeds width " + std::to_string(width));
  bits_.clear_from(length);
}

Prefix Prefix::of_address(const Address& a, int length) {
  return Prefix(a.width(), length, a.bits());
}

Prefix Prefix::parse(const std::string& text, int width) {
  check_width(width);
  const auto slash = text.find('/');
  BitString bits;
  if (slash != std::string::npos) {
    const std::string digits = text.substr(0, slash);
    int length = 0;
    try {
      std::size_t used = 0;
      length = std::stoi(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad prefix length in '" + text + "'");
    }
    if (length < 0 || length > width ||
        digits.size() < static_cast<std::size_t>(length) ||
        digits.size() > static_cast<std::size_t>(width))
      throw std::invalid_argument("prefix '" + text + "' does not fit width " +
                                  std::to_string(width));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] != '0' && digits[i] != '1')
        throw std::invalid_argument("bad digit in prefix '" + text + "'");
      bits.set_bit(static_cast<int>(i), digits[i] == '1');
    }
    return Prefix(width, length, bits);
  }
  // star form: significant digits then '*' padding, total chars == width
  if (text.size() != static_cast<std::size_t>(width))
    throw std::invalid_argument("prefix '" + text + "' does not fit width " +
                                std::to_string(width));
  int length = 0;
  bool in_padding = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '*') {
      in_padding = true;
      continue;
    }
    if (in_padding || (c != '0' && c != '1'))
      throw std::invalid_argument("bad prefix '" + text + "'");
    bits.set_bit(static_cast<int>(i), c == '1');
    ++length;
  }
  return Prefix(width, length, bits);
}

std::string Prefix::str() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(width_) + 4);
  for (int i = 0; i < width_; ++i) out.push_back(bits_.bit(i) ? '1' : '0');
  out.push_back('/');
  out += std::to_string(length_);
  return out;
}

std::string Prefix::star_str() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(width_));
  for (int i = 0; i < length_; ++i) out.push_back(bits_.bit(i) ? '1' : '0');
  out.append(static_cast<std::size_t>(width_ - length_), '*');
  return out;
}

bool Prefix::matches(const Address& a) const {
  if (a.width() != width_)
    throw std::invalid_argument("prefix width " + std::to_string(width_) +
                                " vs address width " +
                                std::to_string(a.width()));
  return BitString::equal_prefix(bits_, a.bits(), length_);
}

bool Prefix::contains(const Prefix& other) const {
  if (other.width_ != width_)
    throw std::invalid_argument("prefix width mismatch");
  return length_ <= other.length_ &&
         BitString::equal_prefix(bits_, other.bits_, length_);
}

Address::Address(int width, BitString bits) : width_(width), bits_(bits) {
  check_width(width);
  bits_.clear_from(width);
}

Address Address::parse(const std::string& text, int width) {
  check_width(width);
  if (text.size() != static_cast<std::size_t>(width))
    throw std::invalid_argument("address '" + text + "' does not fit width " +
                                std::to_string(width));
  BitString bits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw std::invalid_argument("bad digit in address '" + text + "'");
    bits.set_bit(static_cast<int>(i), text[i] == '1');
  }
  return Address(width, bits);
}

Address Address::from_value(int width, std::uint64_t value) {
  check_width(width);
  BitString bits;
  for (int i = 0; i < width && i < 64; ++i)
    bits.set_bit(width - 1 - i, (value >> i) & 1u);
  return Address(width, bits);
}

std::string Address::str() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(width_));
  for (int i = 0; i < width_; ++i) out.push_back(bits_.bit(i) ? '1' : '0');
  return out;
}

bool matches(const Prefix& p, const Address& a) { return p.matches(a); }

std::size_t hash_value(const Prefix& p) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(p.width()) << 32 |
      static_cast<std::uint64_t>(p.length()));
  mix(p.bits().words[0]);
  mix(p.bits().words[1]);
  return static_cast<std::size_t>(h);
}

}  // namespace fist
