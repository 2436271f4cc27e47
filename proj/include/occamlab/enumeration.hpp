#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>

#include "occamlab/description.hpp"
#include "occamlab/model.hpp"
#include "occamlab/udl.hpp"

namespace occamlab {

// Programs whose first `horizon` symbols agree.
struct HypothesisClass {
  SymbolString prefix;
  int mdl_bits = 0;
  Description representative;
  std::uint64_t program_count = 0;

  bool operator==(const HypothesisClass&) const = default;
};

struct HypothesisSpace {
  LanguagePtr language;
  int horizon = 0;
  int max_len_bits = 0;
  std::uint64_t max_steps = 0;
  std::map<SymbolString, HypothesisClass, std::less<>> classes;

  const HypothesisClass* find(std::string_view prefix) const;
  bool empty() const { return classes.empty(); }
  std::size_t size() const { return classes.size(); }
};

bool operator==(const HypothesisSpace& a, const HypothesisSpace& b);

inline constexpr std::uint64_t kDefaultSweepCeiling = std::uint64_t{1} << 22;
inline constexpr int kCacheFormatVersion = 1;

struct SweepOptions {
  // Upper bound on 2^(L+1), i.e. on the number of descriptions of length <= L.
  std::uint64_t ceiling = kDefaultSweepCeiling;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Runs every description of length 0..max_len_bits with budgets
// (max_steps, horizon). Only descriptions emitting exactly `horizon` symbols
// contribute; each class keeps the shortest (then lexicographically smallest)
// contributing description.
HypothesisSpace enumerate_space(LanguagePtr language, int max_len_bits, std::uint64_t max_steps,
                                int horizon, const SweepOptions& options = {});

// p(h) proportional to 2^-mdl(h).
Model solomonoff_prior(const HypothesisSpace& space);

std::optional<int> mdl_of(const HypothesisSpace& space, std::string_view prefix);

// JSON Lines cache: one header line, then one line per class sorted by prefix.
void write_space(const HypothesisSpace& space, std::ostream& out);
HypothesisSpace read_space(std::istream& in);
void save_space(const HypothesisSpace& space, const std::filesystem::path& path);
HypothesisSpace load_space(const std::filesystem::path& path);

}  // namespace occamlab
