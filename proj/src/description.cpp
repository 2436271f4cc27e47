#include "occamlab/description.hpp"

#include <algorithm>
#include <charconv>

#include "occamlab/common.hpp"

namespace occamlab {

Description::Description(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ValidationError("description bits must be 0 or 1");
  }
}

Description Description::from_bit_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '\t' && c != '_') {
      throw ValidationError(std::string("invalid bit character '") + c + "'");
    }
  }
  return Description(std::move(out));
}

Description Description::from_value(std::uint64_t value, int length) {
  if (length < 0 || length > 64) throw ValidationError("bit length out of range");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((value >> (length - 1 - i)) & 1U);
  }
  return Description(std::move(out));
}

Description Description::parse_hex(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("bitstring must look like <bitlen>:<hex>: " + std::string(text));
  }
  std::size_t bitlen = 0;
  auto len_part = text.substr(0, colon);
  auto [ptr, ec] = std::from_chars(len_part.data(), len_part.data() + len_part.size(), bitlen);
  if (ec != std::errc() || ptr != len_part.data() + len_part.size() || len_part.empty()) {
    throw ValidationError("bad bit length in bitstring: " + std::string(text));
  }
  auto hex = text.substr(colon + 1);
  std::size_t nbytes = (bitlen + 7) / 8;
  if (hex.size() != 2 * nbytes) {
    throw ValidationError("hex payload length does not match bit length: " + std::string(text));
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(nbytes * 8);
  for (std::size_t i = 0; i < nbytes; ++i) {
    unsigned byte = 0;
    auto [p, e] = std::from_chars(hex.data() + 2 * i, hex.data() + 2 * i + 2, byte, 16);
    if (e != std::errc() || p != hex.data() + 2 * i + 2) {
      throw ValidationError("bad hex digit in bitstring: " + std::string(text));
    }
    for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1U));
  }
  if (std::any_of(bits.begin() + static_cast<std::ptrdiff_t>(bitlen), bits.end(),
                  [](auto b) { return b != 0; })) {
    throw ValidationError("nonzero padding bits in bitstring: " + std::string(text));
  }
  bits.resize(bitlen);
  return Description(std::move(bits));
}

std::string Description::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = std::to_string(bits_.size()) + ":";
  for (std::size_t i = 0; i < bits_.size(); i += 8) {
    unsigned byte = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      byte <<= 1;
      if (i + b < bits_.size()) byte |= bits_[i + b];
    }
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xF]);
  }
  return out;
}

std::string Description::to_bit_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

Description Description::operator+(const Description& rhs) const {
  std::vector<std::uint8_t> out = bits_;
  out.insert(out.end(), rhs.bits_.begin(), rhs.bits_.end());
  return Description(std::move(out));
}

std::strong_ordering Description::operator<=>(const Description& rhs) const {
  if (auto c = bits_.size() <=> rhs.bits_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(bits_.begin(), bits_.end(), rhs.bits_.begin(),
                                                rhs.bits_.end());
}

}  // namespace occamlab
