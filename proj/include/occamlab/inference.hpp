#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "occamlab/enumeration.hpp"
#include "occamlab/model.hpp"

namespace occamlab {

using PrefixPredicate = std::function<bool(std::string_view prefix)>;

// Drops (general) or zeroes (special) every entry disagreeing with `symbol`
// at the next position and renormalizes the survivors.
Model observe_update(const Model& m, char symbol);

// Same result as folding observe_update over `s`, computed in one pass.
Model batch_update(const Model& m, std::string_view s);

double correspondence(const Model& m, std::string_view true_prefix);
double correspondence(const Model& m, const Process& proc);

// Mean over the remaining positions j in [t, T) of the static posterior's
// marginal probability of the true symbol at j.
double alignment(const Model& m, std::string_view true_prefix);
double alignment(const Model& m, const Process& proc);

// Shannon entropy in bits.
double entropy(const Model& m);

Model reweight(const Model& m, const PrefixPredicate& subset, double gamma);

Model make_special(const Model& m, const PrefixPredicate& zero_set);

struct Metrics {
  double correspondence = 0.0;
  // Undefined once the horizon is exhausted.
  std::optional<double> alignment;
  double entropy = 0.0;

  bool operator==(const Metrics&) const = default;
};

Metrics measure(const Model& m, std::string_view true_prefix);

struct ChainRecord {
  int stage = 0;
  Model prior;
  SymbolString segment;
  Model posterior;
  Metrics before;
  Metrics after;
};

std::vector<ChainRecord> run_chain(const Model& prior, const Process& proc, std::span<const int> boundaries);

// Smallest number of true symbols after which correspondence >= theta.
std::optional<int> steps_to_threshold(const Model& prior, const Process& proc, double theta);

struct TraceRow {
  int step = 0;
  std::optional<char> observed_symbol;
  Metrics metrics;
  std::size_t surviving_classes = 0;
};

// One row before any observation and one after each true symbol.
std::vector<TraceRow> induction_trace(const Model& prior, const Process& proc);
void write_trace_csv(std::span<const TraceRow> rows, std::ostream& out);

// Cache-format lines plus a probability per entry. Classes absent from
// `space` (not expected in practice) are written without mdl/rep/count.
void write_model_snapshot(const Model& m, const HypothesisSpace& space, std::ostream& out);
nlohmann::ordered_json model_to_json(const Model& m);

}  // namespace occamlab
