#pragma once

// The reference description language R0 and the wrapper languages built on
// top of it.
//
// R0(k) decodes a bitstring into 3-bit instructions operating on a one-sided
// tape of cells over Z_k:
//
//   000 INC    cell <- cell + 1 (mod k)
//   001 DEC    cell <- cell - 1 (mod k)
//   010 RIGHT  head + 1
//   011 LEFT   head - 1, no-op at cell 0
//   100 EMIT   append the current cell value to the output
//   101 LOOP   if cell == 0 jump past the matching END (end of program if unmatched)
//   110 END    if cell != 0 jump past the matching LOOP (no-op if unmatched)
//   111 HALT
//
// Trailing 1-2 bits are ignored and running off the end halts, so every
// bitstring is a program.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "occamlab/common.hpp"
#include "occamlab/description.hpp"
#include "json.hpp"

namespace occamlab {

enum class Opcode : std::uint8_t { Inc, Dec, Right, Left, Emit, LoopStart, LoopEnd, Halt };

inline constexpr int kInstructionBits = 3;
inline constexpr int kOpcodeCount = 8;

enum class RunStatus { Halted, EmitBudgetReached, StepBudgetExhausted };

std::string to_string(RunStatus status);

struct ExecutionOutcome {
  SymbolString emitted;
  RunStatus status = RunStatus::Halted;
  std::uint64_t steps_used = 0;

  bool operator==(const ExecutionOutcome&) const = default;
};

std::vector<Opcode> decode_r0(std::span<const std::uint8_t> bits);

// Reusable R0 interpreter. Keeps its tape and bracket table between calls so
// sweeps over millions of programs do not reallocate.
class Machine {
 public:
  explicit Machine(Alphabet alphabet) : alphabet_(alphabet) {}

  ExecutionOutcome execute(std::span<const Opcode> program, std::uint64_t max_steps,
                           std::size_t max_emit);

 private:
  Alphabet alphabet_;
  std::vector<std::uint8_t> tape_;
  std::vector<std::int32_t> jump_;
  std::vector<std::int32_t> stack_;
};

enum class LanguageKind { BaseR0, Dictionary, Permutation };

class Language;
using LanguagePtr = std::shared_ptr<const Language>;
using OpcodePermutation = std::array<std::uint8_t, kOpcodeCount>;

// An immutable description language. Wrappers hold exactly one inner language.
class Language {
 public:
  LanguageKind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Description>& table() const { return table_; }
  const OpcodePermutation& permutation() const { return perm_; }
  const LanguagePtr& inner() const { return inner_; }
  // 16 hex digits; FNV-1a of the canonical JSON form.
  const std::string& id() const { return id_; }
  // Wrapper nesting depth; 0 for R0.
  int depth() const;

  nlohmann::ordered_json to_json() const;
  std::string to_json_line() const { return to_json().dump(); }
  static LanguagePtr from_json(const nlohmann::json& j);
  static LanguagePtr parse(std::string_view json_text);

  // The base-R0 bitstring that `bits` denotes under this language.
  std::vector<std::uint8_t> resolve(std::span<const std::uint8_t> bits) const;
  // Instructions of the R0 program `bits` denotes.
  std::vector<Opcode> compile(std::span<const std::uint8_t> bits) const;

 private:
  friend LanguagePtr make_base_language(int k);
  friend LanguagePtr make_dictionary_wrapper(LanguagePtr base, std::vector<Description> table);
  friend LanguagePtr make_permutation_wrapper(LanguagePtr base, const OpcodePermutation& perm);

  explicit Language(Alphabet alphabet) : alphabet_(alphabet) {}
  void seal();

  LanguageKind kind_ = LanguageKind::BaseR0;
  Alphabet alphabet_;
  std::vector<Description> table_;
  OpcodePermutation perm_{0, 1, 2, 3, 4, 5, 6, 7};
  LanguagePtr inner_;
  std::string id_;
};

LanguagePtr make_base_language(int k);

// Bit 1 escapes to `base` on the remaining bits; bit 0 is followed by
// ceil(log2 m) big-endian index bits selecting a table entry (clamped to m-1).
// A truncated index denotes the empty program.
LanguagePtr make_dictionary_wrapper(LanguagePtr base, std::vector<Description> table);

// Each full 3-bit group g is rewritten to perm[g] before `base` sees it.
LanguagePtr make_permutation_wrapper(LanguagePtr base, const OpcodePermutation& perm);

// Extra description bits needed to express any inner program in the wrapper.
int simulation_overhead(const Language& wrapper);

// Re-encodes a description of the permutation wrapper's inner language so
// that the wrapper reproduces its behavior (applies perm^-1 groupwise).
Description remap_for_permutation(const Language& wrapper, const Description& inner_description);

ExecutionOutcome run(const Language& language, const Description& d, std::uint64_t max_steps,
                     std::size_t max_emit);

}  // namespace occamlab
