#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace occamlab {

// A finite bitstring: a program in some description language.
// Ordered shortest-first, then lexicographically.
class Description {
 public:
  Description() = default;
  explicit Description(std::vector<std::uint8_t> bits);

  // "100111" -> 6 bits. Whitespace is skipped so "100 111" also works.
  static Description from_bit_string(std::string_view bits);
  // The `length` low bits of `value`, most significant first.
  static Description from_value(std::uint64_t value, int length);
  // "<bitlen>:<hex>", bits packed most-significant-first into bytes.
  static Description parse_hex(std::string_view text);

  std::string to_hex() const;
  std::string to_bit_string() const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  Description operator+(const Description& rhs) const;

  bool operator==(const Description&) const = default;
  std::strong_ordering operator<=>(const Description& rhs) const;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace occamlab
