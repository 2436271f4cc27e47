#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace occamlab {

// Symbols are stored as digit characters '0'-'9','a'-'f' so that symbol
// strings print, sort and hash as ordinary strings.
using Symbol = unsigned;
using SymbolString = std::string;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated preconditions (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// No hypothesis with positive mass survives an observation.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

// Malformed, mis-versioned or tampered persisted data.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class Alphabet {
 public:
  static constexpr int kMinSize = 2;
  static constexpr int kMaxSize = 16;

  explicit Alphabet(int size);

  int size() const { return size_; }
  bool contains(char c) const;
  bool operator==(const Alphabet&) const = default;

 private:
  int size_;
};

char symbol_char(Symbol value);
Symbol symbol_value(char c);

// Throws ValidationError unless every character is a symbol of `alphabet`.
void validate_symbols(std::string_view s, const Alphabet& alphabet);

// Non-fatal diagnostics go to stderr; tests may silence them.
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace occamlab
