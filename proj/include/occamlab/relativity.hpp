#pragma once

// Constructive witnesses for the language-relativity results: each demo
// builds the languages it needs, enumerates them, and reports one row per
// checked item together with a pass/fail verdict.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "occamlab/enumeration.hpp"
#include "occamlab/inference.hpp"
#include "json.hpp"

namespace occamlab {

struct DemoReport {
  std::string name;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  // One object per row, keyed by `columns`.
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  bool pass = false;
  std::string narrative;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

// MDL under the wrapper never exceeds base MDL plus the wrapper's overhead.
DemoReport demo_invariance(const HypothesisSpace& base_space, const LanguagePtr& wrapper,
                           const SweepOptions& options = {});

// A one-entry dictionary wrapper holding hB's program flips the prior
// ordering of hA over hB; a permutation wrapper (negative control) does not.
DemoReport demo_reorder(const HypothesisSpace& base_space, const SymbolString& h_a, const SymbolString& h_b,
                        const SweepOptions& options = {});

// After observing `observed` under both languages, the base posterior favors
// hA while the hB-favoring wrapper's posterior is dominated by hB. When no
// consistent enumerated class ranks strictly below hA, a rival is built post
// hoc from `observed` plus a diverging continuation.
DemoReport demo_overwhelm(const HypothesisSpace& base_space, const SymbolString& observed,
                          const SweepOptions& options = {});

// An R0(k) program emitting `observed` and then `period` forever.
Description construct_posthoc(const SymbolString& observed, const SymbolString& period, int k = 2);

// Executes `d` under R0(k) and checks that the first `emit_budget` symbols are
// `observed` followed by repetitions of `period`.
bool verify_posthoc(const Description& d, const SymbolString& observed, const SymbolString& period, int k,
                    std::size_t emit_budget);

// 3 * (|o| + 4 * |s|) symbols: always past the observed data by several periods.
std::size_t posthoc_verification_budget(const SymbolString& observed, const SymbolString& period);

DemoReport demo_posthoc(const SymbolString& observed, const SymbolString& period, int k = 2);

DemoReport demo_prior_posterior_symmetry(const SymbolString& observed,
                                         const std::vector<SymbolString>& continuations, int k = 2);

// Every nonempty string over the alphabet of length <= max_period.
std::vector<SymbolString> all_periods(int k, int max_period);

struct LanguageEntry {
  LanguagePtr language;
  // Probes this language is built to favor; may be empty.
  std::vector<SymbolString> favored;
};

struct SweepBounds {
  int max_len_bits = 0;
  std::uint64_t max_steps = 0;
  int horizon = 0;
};

// MDL matrix over languages x probes. Passes when each language strictly wins
// on its favored probes and no language is minimal on every probe.
DemoReport demo_no_privilege(const std::vector<LanguageEntry>& languages, const std::vector<SymbolString>& probes,
                             const SweepBounds& bounds, const SweepOptions& options = {});

// steps_to_threshold under the plain prior, the prior boosted by gamma on
// subset_true, and on subset_false; plus a special model with the truth zeroed.
DemoReport demo_confidence_tradeoff(const HypothesisSpace& space, const Process& proc,
                                    const PrefixPredicate& subset_true, const PrefixPredicate& subset_false,
                                    double gamma, double theta);

// Seeded choice of (hA, hB) with mdl(hB) - mdl(hA) >= min_gap_bits.
std::pair<SymbolString, SymbolString> pick_ordered_pair(const HypothesisSpace& space, int min_gap_bits,
                                                        std::uint64_t seed);

}  // namespace occamlab
