#include "occamlab/relativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace occamlab {

namespace {

constexpr std::uint64_t kVerificationSteps = std::uint64_t{1} << 24;
// INC <-> EMIT swap; any non-identity bijection serves as the control.
constexpr OpcodePermutation kControlPermutation{4, 1, 2, 3, 0, 5, 6, 7};

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

nlohmann::ordered_json bounds_json(const HypothesisSpace& space) {
  nlohmann::ordered_json j;
  j["max_len_bits"] = space.max_len_bits;
  j["max_steps"] = space.max_steps;
  j["horizon"] = space.horizon;
  return j;
}

const HypothesisClass& require_class(const HypothesisSpace& space, const SymbolString& prefix) {
  const auto* h = space.find(prefix);
  if (!h) throw ValidationError("class " + prefix + " is not in the enumerated space");
  return *h;
}

nlohmann::ordered_json optional_int(const std::optional<int>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}

int total_overhead(const Language& language) {
  int bits = 0;
  for (const Language* l = &language; l->kind() != LanguageKind::BaseR0; l = l->inner().get()) {
    bits += simulation_overhead(*l);
  }
  return bits;
}

std::string favors(double p_a, double p_b) {
  if (p_a > p_b) return "hA";
  if (p_b > p_a) return "hB";
  return "tie";
}

void emit_adjust(std::vector<Opcode>& program, unsigned from, unsigned to, unsigned k) {
  const unsigned up = (to + k - from) % k;
  const unsigned down = k - up;
  if (up <= down) {
    program.insert(program.end(), up, Opcode::Inc);
  } else {
    program.insert(program.end(), down, Opcode::Dec);
  }
}

Description encode(const std::vector<Opcode>& program) {
  std::vector<std::uint8_t> bits;
  bits.reserve(program.size() * kInstructionBits);
  for (auto op : program) {
    const auto v = static_cast<unsigned>(op);
    bits.push_back(static_cast<std::uint8_t>((v >> 2) & 1U));
    bits.push_back(static_cast<std::uint8_t>((v >> 1) & 1U));
    bits.push_back(static_cast<std::uint8_t>(v & 1U));
  }
  return Description(std::move(bits));
}

}  // namespace

nlohmann::ordered_json DemoReport::to_json() const {
  nlohmann::ordered_json j;
  j["demo"] = name;
  j["inputs"] = inputs;
  j["columns"] = columns;
  j["rows"] = rows;
  j["summary"] = summary;
  j["warnings"] = warnings;
  j["verdict"] = pass ? "pass" : "fail";
  j["narrative"] = narrative;
  return j;
}

std::string DemoReport::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(columns[i])) out << csv_cell(row.at(columns[i]));
    }
    out << '\n';
  }
  return out.str();
}

DemoReport demo_invariance(const HypothesisSpace& base_space, const LanguagePtr& wrapper,
                           const SweepOptions& options) {
  if (!wrapper || !wrapper->inner() || wrapper->inner()->id() != base_space.language->id()) {
    throw ValidationError("invariance demo needs a wrapper whose inner language is the base space's language");
  }
  const int overhead = simulation_overhead(*wrapper);
  const auto wrapped = enumerate_space(wrapper, base_space.max_len_bits + overhead, base_space.max_steps,
                                       base_space.horizon, options);

  DemoReport report;
  report.name = "invariance";
  report.inputs["base_language"] = base_space.language->to_json();
  report.inputs["wrapper"] = wrapper->to_json();
  report.inputs["bounds"] = bounds_json(base_space);
  report.columns = {"prefix", "mdl_base", "mdl_wrapper", "gap", "bound", "ok"};

  std::optional<int> max_gap;
  int tight = 0;
  bool all_ok = true;
  for (const auto& [prefix, h] : base_space.classes) {
    const auto w = mdl_of(wrapped, prefix);
    const bool ok = w && *w <= h.mdl_bits + overhead;
    std::optional<int> gap;
    if (w) {
      gap = *w - h.mdl_bits;
      max_gap = max_gap ? std::max(*max_gap, *gap) : *gap;
      if (*gap == overhead) ++tight;
    }
    all_ok = all_ok && ok;
    report.rows.push_back({{"prefix", prefix},
                           {"mdl_base", h.mdl_bits},
                           {"mdl_wrapper", optional_int(w)},
                           {"gap", optional_int(gap)},
                           {"bound", overhead},
                           {"ok", ok}});
  }
  report.summary["simulation_overhead"] = overhead;
  report.summary["max_gap"] = optional_int(max_gap);
  report.summary["classes_at_bound"] = tight;
  report.summary["class_count"] = base_space.size();
  report.pass = all_ok;

  std::ostringstream n;
  n << "Enumerated the wrapper to " << wrapped.max_len_bits << " bits and compared MDLs of all "
    << base_space.size() << " base classes. The wrapper's overhead is " << overhead
    << " bit(s); the largest observed gap is " << (max_gap ? std::to_string(*max_gap) : "n/a") << " and "
    << tight << " class(es) sit exactly at the bound.";
  report.narrative = n.str();
  return report;
}

DemoReport demo_reorder(const HypothesisSpace& base_space, const SymbolString& h_a, const SymbolString& h_b,
                        const SweepOptions& options) {
  if (h_a == h_b) throw ValidationError("reorder demo needs two distinct classes");
  const auto& class_a = require_class(base_space, h_a);
  const auto& class_b = require_class(base_space, h_b);
  if (!(class_a.mdl_bits < class_b.mdl_bits)) {
    throw ValidationError("reorder demo needs mdl(hA) < mdl(hB) under the base language");
  }

  const auto dictionary = make_dictionary_wrapper(base_space.language, {class_b.representative});
  const auto permuted = make_permutation_wrapper(base_space.language, kControlPermutation);
  const int L = base_space.max_len_bits;
  const auto dict_space = enumerate_space(dictionary, L + 1, base_space.max_steps, base_space.horizon, options);
  const auto perm_space = enumerate_space(permuted, L, base_space.max_steps, base_space.horizon, options);

  DemoReport report;
  report.name = "reorder";
  report.inputs["base_language"] = base_space.language->to_json();
  report.inputs["bounds"] = bounds_json(base_space);
  report.inputs["hA"] = h_a;
  report.inputs["hB"] = h_b;
  report.columns = {"language", "role", "mdl_hA", "mdl_hB", "p_hA", "p_hB", "favors", "expected", "ok"};

  struct Case {
    std::string label;
    std::string role;
    const HypothesisSpace* space;
    std::string expected;
  };
  const Case cases[] = {{"base", "reference", &base_space, "hA"},
                        {"dictionary", "witness", &dict_space, "hB"},
                        {"permutation", "negative-control", &perm_space, "hA"}};
  bool all_ok = true;
  for (const auto& c : cases) {
    const auto prior = solomonoff_prior(*c.space);
    const double p_a = prior.probability(h_a);
    const double p_b = prior.probability(h_b);
    const auto verdict = favors(p_a, p_b);
    const bool ok = verdict == c.expected;
    all_ok = all_ok && ok;
    report.rows.push_back({{"language", c.label},
                           {"role", c.role},
                           {"mdl_hA", optional_int(mdl_of(*c.space, h_a))},
                           {"mdl_hB", optional_int(mdl_of(*c.space, h_b))},
                           {"p_hA", p_a},
                           {"p_hB", p_b},
                           {"favors", verdict},
                           {"expected", c.expected},
                           {"ok", ok}});
  }
  report.summary["base_log2_ratio"] = class_b.mdl_bits - class_a.mdl_bits;
  report.summary["dictionary_language"] = dictionary->to_json();
  report.summary["control_language"] = permuted->to_json();
  report.pass = all_ok;

  std::ostringstream n;
  n << "Under the base language hA=" << h_a << " (" << class_a.mdl_bits << " bits) is favored over hB=" << h_b
    << " (" << class_b.mdl_bits << " bits) by a factor 2^" << (class_b.mdl_bits - class_a.mdl_bits)
    << ". A dictionary wrapper whose single table entry is hB's program gives hB a "
    << mdl_of(dict_space, h_b).value_or(-1) << "-bit description and reverses the order; the permutation "
    << "control preserves every description length and leaves the order intact.";
  report.narrative = n.str();
  return report;
}

DemoReport demo_overwhelm(const HypothesisSpace& base_space, const SymbolString& observed,
                          const SweepOptions& options) {
  const auto& alphabet = base_space.language->alphabet();
  validate_symbols(observed, alphabet);
  if (static_cast<int>(observed.size()) >= base_space.horizon) {
    throw ValidationError("observed data must be shorter than the horizon to leave room for rivals");
  }
  if (base_space.language->kind() != LanguageKind::BaseR0) {
    throw ValidationError("overwhelm demo expects a base R0 space");
  }
  const auto base_prior = solomonoff_prior(base_space);
  Model base_post = [&] {
    try {
      return batch_update(base_prior, observed);
    } catch (const ContradictionError&) {
      throw ValidationError("no enumerated class is consistent with the observed data");
    }
  }();

  // Dominant class: highest posterior, smallest prefix on ties.
  const ModelEntry* dominant = nullptr;
  for (const auto& e : base_post.entries()) {
    if (!dominant || e.probability > dominant->probability) dominant = &e;
  }
  const SymbolString h_a = dominant->prefix;

  // Rival: the least favored other consistent class (largest prefix on ties),
  // provided the base posterior ranks it strictly below hA.
  const ModelEntry* rival = nullptr;
  for (const auto& e : base_post.entries()) {
    if (e.prefix == h_a || e.probability >= dominant->probability) continue;
    if (!rival || e.probability <= rival->probability) rival = &e;
  }
  SymbolString h_b;
  Description rival_program;
  std::string rival_source;
  if (rival) {
    h_b = rival->prefix;
    rival_program = require_class(base_space, h_b).representative;
    rival_source = "enumerated";
  } else {
    // Build one: the observed data, then the shortest period that leaves hA
    // at once and lands on a horizon prefix the base posterior ranks below hA.
    const char next = h_a[observed.size()];
    for (const auto& period : all_periods(alphabet.size(), 3)) {
      if (period.front() == next) continue;
      auto program = construct_posthoc(observed, period, alphabet.size());
      auto emitted =
          run(*base_space.language, program, base_space.max_steps, static_cast<std::size_t>(base_space.horizon))
              .emitted;
      if (static_cast<int>(emitted.size()) != base_space.horizon) continue;
      if (base_post.probability(emitted) >= dominant->probability) continue;
      h_b = std::move(emitted);
      rival_program = std::move(program);
      break;
    }
    if (h_b.empty()) throw ValidationError("could not build a post-hoc rival within the step budget");
    rival_source = "post-hoc";
  }

  const auto dictionary = make_dictionary_wrapper(base_space.language, {rival_program});
  const auto dict_space =
      enumerate_space(dictionary, base_space.max_len_bits + 1, base_space.max_steps, base_space.horizon, options);
  const auto dict_post = batch_update(solomonoff_prior(dict_space), observed);

  DemoReport report;
  report.name = "overwhelm";
  report.inputs["base_language"] = base_space.language->to_json();
  report.inputs["bounds"] = bounds_json(base_space);
  report.inputs["observed"] = observed;
  report.columns = {"language", "mdl_hA", "mdl_hB", "posterior_hA", "posterior_hB", "dominant", "expected", "ok"};

  const double base_a = base_post.probability(h_a);
  const double base_b = base_post.probability(h_b);
  const bool base_ok = base_a > base_b;
  report.rows.push_back({{"language", "base"},
                         {"mdl_hA", optional_int(mdl_of(base_space, h_a))},
                         {"mdl_hB", optional_int(mdl_of(base_space, h_b))},
                         {"posterior_hA", base_a},
                         {"posterior_hB", base_b},
                         {"dominant", h_a},
                         {"expected", "hA"},
                         {"ok", base_ok}});

  const ModelEntry* dict_top = nullptr;
  bool unique_top = true;
  for (const auto& e : dict_post.entries()) {
    if (!dict_top || e.probability > dict_top->probability) {
      dict_top = &e;
      unique_top = true;
    } else if (e.probability == dict_top->probability) {
      unique_top = false;
    }
  }
  const bool dict_ok = dict_top->prefix == h_b && unique_top;
  report.rows.push_back({{"language", "dictionary"},
                         {"mdl_hA", optional_int(mdl_of(dict_space, h_a))},
                         {"mdl_hB", optional_int(mdl_of(dict_space, h_b))},
                         {"posterior_hA", dict_post.probability(h_a)},
                         {"posterior_hB", dict_post.probability(h_b)},
                         {"dominant", dict_top->prefix},
                         {"expected", "hB"},
                         {"ok", dict_ok}});

  report.summary["hA"] = h_a;
  report.summary["hB"] = h_b;
  report.summary["rival_source"] = rival_source;
  report.summary["rival_program"] = rival_program.to_hex();
  if (rival_source == "post-hoc") report.summary["mdl_hB_base_lower_bound"] = base_space.max_len_bits + 1;
  report.summary["dictionary_language"] = dictionary->to_json();
  report.pass = base_ok && dict_ok;

  std::ostringstream n;
  n << "After observing \"" << observed << "\" both hA=" << h_a << " and hB=" << h_b
    << " remain consistent. The base posterior puts more mass on hA; under a dictionary wrapper that gives hB's "
    << "program (" << rival_source << ") a short code, the same data leave hB dominant.";
  report.narrative = n.str();
  return report;
}

Description construct_posthoc(const SymbolString& observed, const SymbolString& period, int k) {
  const Alphabet alphabet(k);
  if (period.empty()) throw ValidationError("post-hoc continuation must be nonempty");
  validate_symbols(observed, alphabet);
  validate_symbols(period, alphabet);
  const auto uk = static_cast<unsigned>(k);

  // Cell 0 emits the observed data by deltas. Cell 1 is a loop flag held at 1
  // and cells 2.. hold one copy of the period, walked and emitted forever.
  std::vector<Opcode> program;
  unsigned cell = 0;
  for (char c : observed) {
    const unsigned v = symbol_value(c);
    emit_adjust(program, cell, v, uk);
    program.push_back(Opcode::Emit);
    cell = v;
  }
  program.push_back(Opcode::Right);
  program.push_back(Opcode::Inc);
  for (char c : period) {
    program.push_back(Opcode::Right);
    emit_adjust(program, 0, symbol_value(c), uk);
  }
  program.insert(program.end(), period.size(), Opcode::Left);
  program.push_back(Opcode::LoopStart);
  for (std::size_t i = 0; i < period.size(); ++i) {
    program.push_back(Opcode::Right);
    program.push_back(Opcode::Emit);
  }
  program.insert(program.end(), period.size(), Opcode::Left);
  program.push_back(Opcode::LoopEnd);
  return encode(program);
}

bool verify_posthoc(const Description& d, const SymbolString& observed, const SymbolString& period, int k,
                    std::size_t emit_budget) {
  if (period.empty()) return false;
  const auto outcome = run(*make_base_language(k), d, kVerificationSteps, emit_budget);
  if (outcome.emitted.size() != emit_budget) return false;
  for (std::size_t i = 0; i < emit_budget; ++i) {
    const char expected = i < observed.size() ? observed[i] : period[(i - observed.size()) % period.size()];
    if (outcome.emitted[i] != expected) return false;
  }
  return true;
}

std::size_t posthoc_verification_budget(const SymbolString& observed, const SymbolString& period) {
  return 3 * (observed.size() + 4 * period.size());
}

DemoReport demo_posthoc(const SymbolString& observed, const SymbolString& period, int k) {
  const auto d = construct_posthoc(observed, period, k);
  const auto budget = posthoc_verification_budget(observed, period);
  const bool ok = verify_posthoc(d, observed, period, k, budget);
  const auto outcome = run(*make_base_language(k), d, kVerificationSteps, budget);

  DemoReport report;
  report.name = "posthoc";
  report.inputs["k"] = k;
  report.inputs["observed"] = observed;
  report.inputs["period"] = period;
  report.columns = {"observed", "period", "description", "bits", "emit_budget", "emitted", "ok"};
  report.rows.push_back({{"observed", observed},
                         {"period", period},
                         {"description", d.to_hex()},
                         {"bits", d.size()},
                         {"emit_budget", budget},
                         {"emitted", outcome.emitted},
                         {"ok", ok}});
  report.summary["description"] = d.to_hex();
  report.pass = ok;
  report.narrative = "Built a " + std::to_string(d.size()) + "-bit R0 program for \"" + observed +
                     "\" followed by \"" + period + "\" repeated, and checked its first " + std::to_string(budget) +
                     " emitted symbols by execution.";
  return report;
}

DemoReport demo_prior_posterior_symmetry(const SymbolString& observed,
                                         const std::vector<SymbolString>& continuations, int k) {
  if (continuations.empty()) throw ValidationError("symmetry demo needs at least one continuation");
  DemoReport report;
  report.name = "symmetry";
  report.inputs["k"] = k;
  report.inputs["observed"] = observed;
  report.inputs["continuations"] = continuations;
  report.columns = {"continuation", "description", "bits", "emit_budget", "ok"};
  std::size_t realized = 0;
  for (const auto& s : continuations) {
    const auto d = construct_posthoc(observed, s, k);
    const auto budget = posthoc_verification_budget(observed, s);
    const bool ok = verify_posthoc(d, observed, s, k, budget);
    if (ok) ++realized;
    report.rows.push_back(
        {{"continuation", s}, {"description", d.to_hex()}, {"bits", d.size()}, {"emit_budget", budget}, {"ok", ok}});
  }
  report.summary["realized"] = realized;
  report.summary["tested"] = continuations.size();
  report.summary["coverage"] = static_cast<double>(realized) / static_cast<double>(continuations.size());
  report.pass = realized == continuations.size();
  report.narrative = "After observing \"" + observed + "\", " + std::to_string(realized) + " of " +
                     std::to_string(continuations.size()) +
                     " tested continuations were realized by an executed, consistent hypothesis.";
  return report;
}

std::vector<SymbolString> all_periods(int k, int max_period) {
  const Alphabet alphabet(k);
  std::vector<SymbolString> out;
  for (int len = 1; len <= max_period; ++len) {
    std::size_t count = 1;
    for (int i = 0; i < len; ++i) count *= static_cast<std::size_t>(k);
    for (std::size_t v = 0; v < count; ++v) {
      SymbolString s(static_cast<std::size_t>(len), '0');
      std::size_t rest = v;
      for (int i = len - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = symbol_char(static_cast<Symbol>(rest % static_cast<std::size_t>(k)));
        rest /= static_cast<std::size_t>(k);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

DemoReport demo_no_privilege(const std::vector<LanguageEntry>& languages, const std::vector<SymbolString>& probes,
                             const SweepBounds& bounds, const SweepOptions& options) {
  if (languages.empty()) throw ValidationError("privilege demo needs at least one language");
  if (probes.empty()) throw ValidationError("privilege demo needs at least one probe");

  DemoReport report;
  report.name = "privilege";
  report.inputs["probes"] = probes;
  report.inputs["bounds"] = {{"max_len_bits", bounds.max_len_bits},
                             {"max_steps", bounds.max_steps},
                             {"horizon", bounds.horizon}};
  auto langs = nlohmann::ordered_json::array();
  for (const auto& entry : languages) {
    langs.push_back({{"language", entry.language->to_json()}, {"favored", entry.favored}});
  }
  report.inputs["languages"] = std::move(langs);
  report.columns = {"language", "kind", "sweep_bits"};
  for (const auto& p : probes) report.columns.push_back("mdl_" + p);
  report.columns.insert(report.columns.end(), {"favored", "wins_favored", "minimal_everywhere", "ok"});

  // matrix[i][j] = MDL of probe j under language i.
  std::vector<std::vector<int>> matrix;
  std::vector<int> sweep_bits;
  for (const auto& entry : languages) {
    const int bits = bounds.max_len_bits + total_overhead(*entry.language);
    const auto space = enumerate_space(entry.language, bits, bounds.max_steps, bounds.horizon, options);
    std::vector<int> row;
    for (const auto& p : probes) {
      const auto m = mdl_of(space, p);
      if (!m) throw ValidationError("probe " + p + " is absent from the space of language " + entry.language->id());
      row.push_back(*m);
    }
    for (const auto& f : entry.favored) {
      if (std::find(probes.begin(), probes.end(), f) == probes.end()) {
        throw ValidationError("favored prefix " + f + " is not among the probes");
      }
    }
    matrix.push_back(std::move(row));
    sweep_bits.push_back(bits);
  }

  const std::size_t n = languages.size();
  auto probe_index = [&](const SymbolString& p) {
    return static_cast<std::size_t>(std::find(probes.begin(), probes.end(), p) - probes.begin());
  };
  bool all_ok = true;
  bool any_universal = false;
  bool tie = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < probes.size(); ++j) {
      if (matrix[i][j] != matrix[0][j]) tie = false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool wins = true;
    for (const auto& f : languages[i].favored) {
      const auto j = probe_index(f);
      for (std::size_t o = 0; o < n; ++o) {
        if (o != i && !(matrix[i][j] < matrix[o][j])) wins = false;
      }
    }
    bool minimal_everywhere = true;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      for (std::size_t o = 0; o < n; ++o) {
        if (matrix[o][j] < matrix[i][j]) minimal_everywhere = false;
      }
    }
    const bool ok = wins && (n == 1 || !minimal_everywhere);
    any_universal = any_universal || minimal_everywhere;
    all_ok = all_ok && ok;

    nlohmann::ordered_json row;
    row["language"] = "L" + std::to_string(i);
    row["kind"] = languages[i].language->to_json().at("kind");
    row["sweep_bits"] = sweep_bits[i];
    for (std::size_t j = 0; j < probes.size(); ++j) row["mdl_" + probes[j]] = matrix[i][j];
    std::string favored;
    for (const auto& f : languages[i].favored) favored += (favored.empty() ? "" : " ") + f;
    row["favored"] = favored;
    row["wins_favored"] = wins;
    row["minimal_everywhere"] = minimal_everywhere;
    row["ok"] = ok;
    report.rows.push_back(std::move(row));
  }
  if (n == 1) {
    report.warnings.push_back("single language: the privilege comparison is vacuous");
    warn("demo_no_privilege: single language, vacuous pass");
  }
  report.summary["universally_minimal_language_exists"] = n > 1 && any_universal;
  report.summary["tie_matrix"] = tie;
  report.pass = all_ok;

  std::ostringstream text;
  text << "Computed the MDL of " << probes.size() << " probe(s) under " << n << " language(s). ";
  if (n == 1) {
    text << "With a single language there is nothing to compare.";
  } else if (tie) {
    text << "Every language assigns identical MDLs: none is privileged, and none wins anything either.";
  } else {
    text << (any_universal ? "Some language is minimal on every probe."
                           : "Each language is simplest on its own favored probes and none is minimal everywhere.");
  }
  report.narrative = text.str();
  return report;
}

DemoReport demo_confidence_tradeoff(const HypothesisSpace& space, const Process& proc,
                                    const PrefixPredicate& subset_true, const PrefixPredicate& subset_false,
                                    double gamma, double theta) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ValidationError("trade-off demo needs a finite gamma >= 1");
  const auto truth = proc.true_prefix(space.horizon);
  if (!space.find(truth)) throw ValidationError("the true class " + truth + " is not in the enumerated space");
  if (!subset_true(truth)) throw ValidationError("subset_true must contain the true class");
  if (subset_false(truth)) throw ValidationError("subset_false must not contain the true class");

  const auto prior = solomonoff_prior(space);
  std::vector<SymbolString> true_members;
  std::vector<SymbolString> false_members;
  for (const auto& e : prior.entries()) {
    if (subset_true(e.prefix)) true_members.push_back(e.prefix);
    if (subset_false(e.prefix)) false_members.push_back(e.prefix);
  }

  const auto plain = steps_to_threshold(prior, proc, theta);
  const auto boosted_true = steps_to_threshold(reweight(prior, subset_true, gamma), proc, theta);
  const auto boosted_false = steps_to_threshold(reweight(prior, subset_false, gamma), proc, theta);
  std::optional<std::optional<int>> special;
  if (space.size() > 1) {
    special = steps_to_threshold(make_special(prior, [&](std::string_view p) { return p == truth; }), proc, theta);
  }

  // Absent ranks above every integer.
  auto rank = [](const std::optional<int>& s) { return s ? static_cast<long>(*s) : std::numeric_limits<long>::max(); };

  DemoReport report;
  report.name = "tradeoff";
  report.inputs["language"] = space.language->to_json();
  report.inputs["bounds"] = bounds_json(space);
  report.inputs["process"] = proc.to_string();
  report.inputs["subset_true"] = true_members;
  report.inputs["subset_false"] = false_members;
  report.inputs["gamma"] = gamma;
  report.inputs["theta"] = theta;
  report.columns = {"variant", "prior_correspondence", "steps", "predicate", "ok"};

  const bool ii_le_i = rank(boosted_true) <= rank(plain);
  const bool i_le_iii = rank(plain) <= rank(boosted_false);
  report.rows.push_back({{"variant", "boost-true"},
                         {"prior_correspondence", correspondence(reweight(prior, subset_true, gamma), truth)},
                         {"steps", optional_int(boosted_true)},
                         {"predicate", "steps <= unweighted"},
                         {"ok", ii_le_i}});
  report.rows.push_back({{"variant", "unweighted"},
                         {"prior_correspondence", correspondence(prior, truth)},
                         {"steps", optional_int(plain)},
                         {"predicate", "boost-true <= steps <= boost-false"},
                         {"ok", ii_le_i && i_le_iii}});
  report.rows.push_back({{"variant", "boost-false"},
                         {"prior_correspondence", correspondence(reweight(prior, subset_false, gamma), truth)},
                         {"steps", optional_int(boosted_false)},
                         {"predicate", "unweighted <= steps"},
                         {"ok", i_le_iii}});
  bool special_ok = true;
  if (special) {
    special_ok = !special->has_value();
    report.rows.push_back({{"variant", "special-zero-truth"},
                           {"prior_correspondence", 0.0},
                           {"steps", optional_int(*special)},
                           {"predicate", "absent"},
                           {"ok", special_ok}});
  } else {
    report.warnings.push_back("single-class space: the special-model row is skipped");
  }
  report.pass = ii_le_i && i_le_iii && special_ok;

  auto show = [](const std::optional<int>& s) { return s ? std::to_string(*s) : std::string("never"); };
  std::ostringstream theta_text;
  theta_text << theta;
  report.narrative = "Symbols needed before the truth holds probability " + theta_text.str() + ": " +
                     show(boosted_true) + " with confidence correctly placed on the truth, " + show(plain) +
                     " with the plain prior, " + show(boosted_false) +
                     " with confidence misplaced; a special model that excludes the truth never gets there" +
                     (special ? (special->has_value() ? " (violated)." : ".") : " (not run).");
  return report;
}

std::pair<SymbolString, SymbolString> pick_ordered_pair(const HypothesisSpace& space, int min_gap_bits,
                                                        std::uint64_t seed) {
  std::vector<std::pair<SymbolString, SymbolString>> candidates;
  for (const auto& [a, ha] : space.classes) {
    for (const auto& [b, hb] : space.classes) {
      if (hb.mdl_bits - ha.mdl_bits >= min_gap_bits && a != b) candidates.emplace_back(a, b);
    }
  }
  if (candidates.empty()) {
    throw ValidationError("no class pair differs in MDL by at least " + std::to_string(min_gap_bits) + " bits");
  }
  std::mt19937_64 rng(seed);
  return candidates[rng() % candidates.size()];
}

}  // namespace occamlab
