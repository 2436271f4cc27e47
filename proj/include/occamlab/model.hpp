#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "occamlab/common.hpp"
#include "occamlab/description.hpp"
#include "occamlab/udl.hpp"

namespace occamlab {

enum class ModelKind { General, Special };

std::string to_string(ModelKind kind);

struct ModelEntry {
  SymbolString prefix;
  double probability = 0.0;

  bool operator==(const ModelEntry&) const = default;
};

// A probability distribution over horizon-T hypothesis classes. Entries are
// kept sorted by prefix. Special models keep their zero entries so that
// non-recovery stays observable.
class Model {
 public:
  Model(std::string language_id, Alphabet alphabet, int horizon, std::vector<ModelEntry> entries,
        int observed_count, ModelKind kind);

  const std::string& language_id() const { return language_id_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int horizon() const { return horizon_; }
  int observed_count() const { return observed_count_; }
  ModelKind kind() const { return kind_; }
  const std::vector<ModelEntry>& entries() const { return entries_; }

  // 0 when the prefix has no entry.
  double probability(std::string_view prefix) const;
  const ModelEntry* find(std::string_view prefix) const;
  std::size_t surviving_count() const;
  double total_mass() const;

  bool operator==(const Model&) const = default;

 private:
  std::string language_id_;
  Alphabet alphabet_;
  int horizon_;
  std::vector<ModelEntry> entries_;
  int observed_count_;
  ModelKind kind_;
};

// The data generator whose first T symbols are the truth.
class Process {
 public:
  static Process program(LanguagePtr language, Description d, std::uint64_t max_steps);
  static Process periodic(SymbolString period);
  // "program:<bitlen>:<hex>" (run under `language`) or "periodic:<symbols>".
  static Process parse(std::string_view spec, LanguagePtr language, std::uint64_t max_steps);

  // Throws ValidationError if a program emits fewer than `horizon` symbols.
  SymbolString true_prefix(int horizon) const;
  std::string to_string() const;

  bool is_program() const { return language_ != nullptr; }
  const SymbolString& period() const { return period_; }
  const Description& description() const { return description_; }

 private:
  Process() = default;

  LanguagePtr language_;
  Description description_;
  std::uint64_t max_steps_ = 0;
  SymbolString period_;
};

}  // namespace occamlab
