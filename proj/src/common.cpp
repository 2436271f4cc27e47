#include "occamlab/common.hpp"

#include <atomic>
#include <iostream>

namespace occamlab {

namespace {
std::atomic<bool> g_warnings_enabled{true};
}  // namespace

Alphabet::Alphabet(int size) : size_(size) {
  if (size < kMinSize || size > kMaxSize) {
    throw ValidationError("alphabet size must be in [2,16], got " + std::to_string(size));
  }
}

bool Alphabet::contains(char c) const {
  if (c >= '0' && c <= '9') return c - '0' < size_;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10 < size_;
  return false;
}

char symbol_char(Symbol value) {
  if (value >= 16) throw ValidationError("symbol value out of range");
  return static_cast<char>(value < 10 ? '0' + value : 'a' + (value - 10));
}

Symbol symbol_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<Symbol>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<Symbol>(c - 'a' + 10);
  throw ValidationError(std::string("not a symbol digit: '") + c + "'");
}

void validate_symbols(std::string_view s, const Alphabet& alphabet) {
  for (char c : s) {
    if (!alphabet.contains(c)) {
      throw ValidationError(std::string("symbol '") + c + "' outside alphabet of size " +
                            std::to_string(alphabet.size()));
    }
  }
}

void warn(std::string_view message) {
  if (g_warnings_enabled.load(std::memory_order_relaxed)) {
    std::cerr << "warning: " << message << '\n';
  }
}

void set_warnings_enabled(bool enabled) { g_warnings_enabled.store(enabled); }

}  // namespace occamlab
