#include "occamlab/inference.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace occamlab {

namespace {

void require_room(const Model& m, std::size_t symbols) {
  if (static_cast<std::size_t>(m.observed_count()) + symbols > static_cast<std::size_t>(m.horizon())) {
    throw ValidationError("horizon exhausted: model has observed " + std::to_string(m.observed_count()) +
                          " of " + std::to_string(m.horizon()) + " symbols");
  }
}

// Keeps entries satisfying `keep` (general) or zeroes the rest (special) and
// renormalizes.
template <typename Keep>
Model filter(const Model& m, Keep keep, int consumed) {
  double mass = 0.0;
  for (const auto& e : m.entries()) {
    if (keep(e.prefix)) mass += e.probability;
  }
  if (!(mass > 0.0)) {
    throw ContradictionError("no hypothesis with positive probability is consistent with the observation");
  }
  std::vector<ModelEntry> out;
  out.reserve(m.entries().size());
  for (const auto& e : m.entries()) {
    if (keep(e.prefix)) {
      out.push_back({e.prefix, e.probability / mass});
    } else if (m.kind() == ModelKind::Special) {
      out.push_back({e.prefix, 0.0});
    }
  }
  return Model(m.language_id(), m.alphabet(), m.horizon(), std::move(out), m.observed_count() + consumed,
               m.kind());
}

std::vector<ModelEntry> normalized(std::vector<ModelEntry> entries) {
  double total = 0.0;
  for (const auto& e : entries) total += e.probability;
  for (auto& e : entries) e.probability /= total;
  return entries;
}

void require_truth(const Model& m, std::string_view true_prefix) {
  if (static_cast<int>(true_prefix.size()) != m.horizon()) {
    throw ValidationError("true prefix length " + std::to_string(true_prefix.size()) +
                          " differs from model horizon " + std::to_string(m.horizon()));
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Model observe_update(const Model& m, char symbol) {
  require_room(m, 1);
  validate_symbols(std::string_view(&symbol, 1), m.alphabet());
  const auto t = static_cast<std::size_t>(m.observed_count());
  return filter(m, [&](const SymbolString& prefix) { return prefix[t] == symbol; }, 1);
}

Model batch_update(const Model& m, std::string_view s) {
  if (s.empty()) return m;
  require_room(m, s.size());
  validate_symbols(s, m.alphabet());
  const auto t = static_cast<std::size_t>(m.observed_count());
  return filter(m, [&](const SymbolString& prefix) { return prefix.compare(t, s.size(), s) == 0; },
                static_cast<int>(s.size()));
}

double correspondence(const Model& m, std::string_view true_prefix) {
  require_truth(m, true_prefix);
  return m.probability(true_prefix);
}

double correspondence(const Model& m, const Process& proc) {
  return correspondence(m, proc.true_prefix(m.horizon()));
}

double alignment(const Model& m, std::string_view true_prefix) {
  require_truth(m, true_prefix);
  const int t = m.observed_count();
  const int remaining = m.horizon() - t;
  if (remaining <= 0) throw ValidationError("alignment undefined: no remaining positions");
  double sum = 0.0;
  for (const auto& e : m.entries()) {
    if (e.probability == 0.0) continue;
    int agree = 0;
    for (int j = t; j < m.horizon(); ++j) {
      if (e.prefix[static_cast<std::size_t>(j)] == true_prefix[static_cast<std::size_t>(j)]) ++agree;
    }
    sum += e.probability * agree;
  }
  return sum / remaining;
}

double alignment(const Model& m, const Process& proc) { return alignment(m, proc.true_prefix(m.horizon())); }

double entropy(const Model& m) {
  double h = 0.0;
  for (const auto& e : m.entries()) {
    if (e.probability > 0.0) h -= e.probability * std::log2(e.probability);
  }
  return h;
}

Model reweight(const Model& m, const PrefixPredicate& subset, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("reweight factor must be finite and > 0");
  std::vector<ModelEntry> out = m.entries();
  bool any = false;
  for (auto& e : out) {
    if (subset(e.prefix)) {
      e.probability *= gamma;
      any = true;
    }
  }
  if (!any) throw ValidationError("reweight subset selects no entry");
  return Model(m.language_id(), m.alphabet(), m.horizon(), normalized(std::move(out)), m.observed_count(),
               m.kind());
}

Model make_special(const Model& m, const PrefixPredicate& zero_set) {
  std::vector<ModelEntry> out = m.entries();
  bool any = false;
  double kept = 0.0;
  for (auto& e : out) {
    if (zero_set(e.prefix)) {
      e.probability = 0.0;
      any = true;
    } else {
      kept += e.probability;
    }
  }
  if (!any) {
    warn("make_special: zero set selects nothing; model left unchanged");
    return m;
  }
  if (!(kept > 0.0)) throw ValidationError("make_special would zero every hypothesis");
  return Model(m.language_id(), m.alphabet(), m.horizon(), normalized(std::move(out)), m.observed_count(),
               ModelKind::Special);
}

Metrics measure(const Model& m, std::string_view true_prefix) {
  Metrics out;
  out.correspondence = correspondence(m, true_prefix);
  if (m.observed_count() < m.horizon()) out.alignment = alignment(m, true_prefix);
  out.entropy = entropy(m);
  return out;
}

std::vector<ChainRecord> run_chain(const Model& prior, const Process& proc, std::span<const int> boundaries) {
  long total = 0;
  for (int b : boundaries) {
    if (b < 0) throw ValidationError("chain segment lengths must be nonnegative");
    total += b;
  }
  if (total > prior.horizon() - prior.observed_count()) {
    throw ValidationError("chain segments exceed the remaining horizon");
  }
  const SymbolString truth = proc.true_prefix(prior.horizon());
  std::vector<ChainRecord> records;
  records.reserve(boundaries.size());
  Model current = prior;
  auto pos = static_cast<std::size_t>(prior.observed_count());
  int stage = 1;
  for (int b : boundaries) {
    SymbolString segment = truth.substr(pos, static_cast<std::size_t>(b));
    Model posterior = batch_update(current, segment);
    records.push_back({stage++, current, segment, posterior, measure(current, truth), measure(posterior, truth)});
    current = std::move(posterior);
    pos += static_cast<std::size_t>(b);
  }
  return records;
}

std::optional<int> steps_to_threshold(const Model& prior, const Process& proc, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ValidationError("threshold must lie in (0, 1]");
  const SymbolString truth = proc.true_prefix(prior.horizon());
  const int remaining = prior.horizon() - prior.observed_count();
  Model current = prior;
  for (int t = 0;; ++t) {
    if (correspondence(current, truth) >= theta) return t;
    if (t == remaining) return std::nullopt;
    try {
      current = observe_update(current, truth[static_cast<std::size_t>(current.observed_count())]);
    } catch (const ContradictionError&) {
      return std::nullopt;
    }
  }
}

std::vector<TraceRow> induction_trace(const Model& prior, const Process& proc) {
  const SymbolString truth = proc.true_prefix(prior.horizon());
  std::vector<TraceRow> rows;
  Model current = prior;
  int step = 0;
  rows.push_back({step, std::nullopt, measure(current, truth), current.surviving_count()});
  while (current.observed_count() < current.horizon()) {
    const char symbol = truth[static_cast<std::size_t>(current.observed_count())];
    current = observe_update(current, symbol);
    rows.push_back({++step, symbol, measure(current, truth), current.surviving_count()});
  }
  return rows;
}

void write_trace_csv(std::span<const TraceRow> rows, std::ostream& out) {
  out << "step,observed_symbol,correspondence,alignment,entropy,surviving_classes\n";
  for (const auto& r : rows) {
    out << r.step << ',';
    if (r.observed_symbol) out << *r.observed_symbol;
    out << ',' << format_double(r.metrics.correspondence) << ',';
    if (r.metrics.alignment) out << format_double(*r.metrics.alignment);
    out << ',' << format_double(r.metrics.entropy) << ',' << r.surviving_classes << '\n';
  }
}

nlohmann::ordered_json model_to_json(const Model& m) {
  nlohmann::ordered_json j;
  j["language_id"] = m.language_id();
  j["k"] = m.alphabet().size();
  j["horizon"] = m.horizon();
  j["observed_count"] = m.observed_count();
  j["kind"] = to_string(m.kind());
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : m.entries()) entries.push_back({{"prefix", e.prefix}, {"p", e.probability}});
  j["entries"] = std::move(entries);
  return j;
}

void write_model_snapshot(const Model& m, const HypothesisSpace& space, std::ostream& out) {
  nlohmann::ordered_json header;
  header["format_version"] = kCacheFormatVersion;
  header["language"] = space.language->to_json();
  header["language_id"] = m.language_id();
  header["k"] = m.alphabet().size();
  header["horizon"] = m.horizon();
  header["max_len_bits"] = space.max_len_bits;
  header["max_steps"] = space.max_steps;
  header["observed_count"] = m.observed_count();
  header["kind"] = to_string(m.kind());
  header["class_count"] = m.entries().size();
  out << header.dump() << '\n';
  for (const auto& e : m.entries()) {
    nlohmann::ordered_json line;
    line["prefix"] = e.prefix;
    if (const auto* h = space.find(e.prefix)) {
      line["mdl"] = h->mdl_bits;
      line["rep"] = h->representative.to_hex();
      line["count"] = h->program_count;
    }
    line["p"] = e.probability;
    out << line.dump() << '\n';
  }
}

}  // namespace occamlab
