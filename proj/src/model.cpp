#include "occamlab/model.hpp"

#include <algorithm>
#include <cmath>

namespace occamlab {

std::string to_string(ModelKind kind) { return kind == ModelKind::General ? "general" : "special"; }

Model::Model(std::string language_id, Alphabet alphabet, int horizon,
             std::vector<ModelEntry> entries, int observed_count, ModelKind kind)
    : language_id_(std::move(language_id)),
      alphabet_(alphabet),
      horizon_(horizon),
      entries_(std::move(entries)),
      observed_count_(observed_count),
      kind_(kind) {
  if (horizon_ < 0) throw ValidationError("horizon must be nonnegative");
  if (observed_count_ < 0 || observed_count_ > horizon_) {
    throw ValidationError("observed count must lie in [0, horizon]");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const ModelEntry& a, const ModelEntry& b) { return a.prefix < b.prefix; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (static_cast<int>(e.prefix.size()) != horizon_) {
      throw ValidationError("model entry prefix length differs from horizon");
    }
    if (i > 0 && entries_[i - 1].prefix == e.prefix) {
      throw ValidationError("duplicate model entry " + e.prefix);
    }
    if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
      throw ValidationError("model probabilities must be finite and nonnegative");
    }
    if (kind_ == ModelKind::General && e.probability == 0.0) {
      throw ValidationError("general model entry " + e.prefix + " has zero probability");
    }
  }
  if (entries_.empty()) throw ValidationError("a model needs at least one entry");
  if (std::abs(total_mass() - 1.0) > 1e-9) {
    throw ValidationError("model probabilities must sum to 1");
  }
}

const ModelEntry* Model::find(std::string_view prefix) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), prefix,
                             [](const ModelEntry& e, std::string_view p) { return e.prefix < p; });
  if (it == entries_.end() || it->prefix != prefix) return nullptr;
  return &*it;
}

double Model::probability(std::string_view prefix) const {
  const auto* e = find(prefix);
  return e ? e->probability : 0.0;
}

std::size_t Model::surviving_count() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                [](const ModelEntry& e) { return e.probability > 0.0; }));
}

double Model::total_mass() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.probability;
  return sum;
}

Process Process::program(LanguagePtr language, Description d, std::uint64_t max_steps) {
  if (!language) throw ValidationError("program process needs a language");
  Process p;
  p.language_ = std::move(language);
  p.description_ = std::move(d);
  p.max_steps_ = max_steps;
  return p;
}

Process Process::periodic(SymbolString period) {
  if (period.empty()) throw ValidationError("periodic process needs a nonempty period");
  for (char c : period) symbol_value(c);
  Process p;
  p.period_ = std::move(period);
  return p;
}

Process Process::parse(std::string_view spec, LanguagePtr language, std::uint64_t max_steps) {
  constexpr std::string_view kProgram = "program:";
  constexpr std::string_view kPeriodic = "periodic:";
  if (spec.starts_with(kProgram)) {
    return program(std::move(language), Description::parse_hex(spec.substr(kProgram.size())),
                   max_steps);
  }
  if (spec.starts_with(kPeriodic)) {
    SymbolString period(spec.substr(kPeriodic.size()));
    if (language) validate_symbols(period, language->alphabet());
    return periodic(std::move(period));
  }
  throw ValidationError("process must be program:<bitlen>:<hex> or periodic:<symbols>");
}

SymbolString Process::true_prefix(int horizon) const {
  if (horizon < 0) throw ValidationError("horizon must be nonnegative");
  const auto t = static_cast<std::size_t>(horizon);
  if (language_) {
    auto outcome = run(*language_, description_, max_steps_, t);
    if (outcome.emitted.size() < t) {
      throw ValidationError("process program emits only " + std::to_string(outcome.emitted.size()) +
                            " of " + std::to_string(t) + " symbols within the step budget");
    }
    return outcome.emitted;
  }
  SymbolString out;
  out.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.push_back(period_[i % period_.size()]);
  return out;
}

std::string Process::to_string() const {
  if (language_) return "program:" + description_.to_hex();
  return "periodic:" + period_;
}

}  // namespace occamlab
