// occamlab: enumerate hypothesis spaces, run induction traces and chains, and
// produce the language-relativity demo reports.
//
// Exit codes: 0 success / verdict pass, 1 runtime failure, verdict fail or
// contradiction, 2 validation, resource-limit or parse failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "occamlab/enumeration.hpp"
#include "occamlab/inference.hpp"
#include "occamlab/relativity.hpp"

namespace {

using namespace occamlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct RunConfig {
  std::string config_path;
  std::string language;
  int k = 2;
  int horizon = 8;
  int max_len = 18;
  std::uint64_t max_steps = 512;
  std::string process;
  std::string cache;
  std::string out;
  std::string csv;
  std::string posterior;
  std::uint64_t seed = 0;
  double theta = 0.9;
  double gamma = 8.0;
  std::string boundaries;
  std::string observed;
  std::string period;
  std::string ha;
  std::string hb;
  std::string wrapper = "dictionary";
  std::string zero;
  bool control = false;
};

// Flags registered on a subcommand, remembered so values from --config can
// fill in whatever was not given on the command line.
class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {}

  template <typename T>
  FlagSet& add(const std::string& name, T& target, const std::string& help) {
    auto* opt = app_->add_option("--" + name, target, help);
    bindings_.push_back({opt, name, [&target](const json& v) { target = v.get<T>(); }});
    return *this;
  }

  FlagSet& flag(const std::string& name, bool& target, const std::string& help) {
    auto* opt = app_->add_flag("--" + name, target, help);
    bindings_.push_back({opt, name, [&target](const json& v) { target = v.get<bool>(); }});
    return *this;
  }

  bool given(const std::string& name) const {
    for (const auto& b : bindings_) {
      if (b.name == name) return b.option->count() > 0 || b.from_config;
    }
    return false;
  }

  void apply_config(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError("config file is not valid JSON: " + std::string(e.what()));
    }
    for (auto& b : bindings_) {
      if (b.option->count() > 0) continue;
      for (const auto& key : {b.name, underscored(b.name)}) {
        if (!cfg.contains(key)) continue;
        try {
          const auto& v = cfg.at(key);
          b.assign(v.is_object() ? json(v.dump()) : v);
        } catch (const json::exception& e) {
          throw ValidationError("config key '" + key + "' has the wrong type");
        }
        b.from_config = true;
        break;
      }
    }
  }

 private:
  static std::string underscored(std::string s) {
    for (auto& c : s) {
      if (c == '-') c = '_';
    }
    return s;
  }

  struct Binding {
    CLI::Option* option;
    std::string name;
    std::function<void(const json&)> assign;
    bool from_config = false;
  };
  CLI::App* app_;
  std::vector<Binding> bindings_;
};

std::uint64_t sweep_ceiling() {
  if (const char* env = std::getenv("OCCAMLAB_SWEEP_CEILING")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("OCCAMLAB_SWEEP_CEILING must be a positive integer");
    }
  }
  return kDefaultSweepCeiling;
}

SweepOptions sweep_options() { return SweepOptions{sweep_ceiling(), 0}; }

void validate_bounds(const RunConfig& cfg) {
  if (cfg.max_len < 0) throw ValidationError("--max-len must be >= 0");
  if (cfg.max_steps < 1) throw ValidationError("--max-steps must be positive");
  if (cfg.horizon < 0) throw ValidationError("--horizon must be nonnegative");
}

LanguagePtr resolve_language(const RunConfig& cfg) {
  if (cfg.language.empty()) return make_base_language(cfg.k);
  if (cfg.language.front() == '{') return Language::parse(cfg.language);
  std::ifstream in(cfg.language);
  if (!in) throw ValidationError("--language is neither inline JSON nor a readable file: " + cfg.language);
  std::stringstream buf;
  buf << in.rdbuf();
  return Language::parse(buf.str());
}

HypothesisSpace acquire_space(const RunConfig& cfg, const FlagSet& flags, bool require_cache) {
  if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
    auto space = load_space(cfg.cache);
    if (flags.given("horizon") && cfg.horizon != space.horizon) {
      throw ValidationError("--horizon disagrees with the cache horizon " + std::to_string(space.horizon));
    }
    return space;
  }
  if (require_cache) throw ValidationError("cache file not found: " + (cfg.cache.empty() ? "<none>" : cfg.cache));
  validate_bounds(cfg);
  return enumerate_space(resolve_language(cfg), cfg.max_len, cfg.max_steps, cfg.horizon, sweep_options());
}

// Writes to `path`, or to stdout when `path` is empty.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_boundaries(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--boundaries must be a comma-separated list of nonnegative integers");
    }
  }
  return out;
}

Process resolve_process(const RunConfig& cfg, const HypothesisSpace& space) {
  if (cfg.process.empty()) throw ValidationError("--process is required");
  return Process::parse(cfg.process, space.language, space.max_steps);
}

Model prior_for(const RunConfig& cfg, const HypothesisSpace& space) {
  auto prior = solomonoff_prior(space);
  const auto zeroed = split_list(cfg.zero);
  if (zeroed.empty()) return prior;
  return make_special(prior, [&](std::string_view p) {
    return std::find(zeroed.begin(), zeroed.end(), p) != zeroed.end();
  });
}

int cmd_enumerate(const RunConfig& cfg) {
  validate_bounds(cfg);
  if (cfg.cache.empty()) throw ValidationError("--cache is required");
  const auto start = std::chrono::steady_clock::now();
  const auto space = enumerate_space(resolve_language(cfg), cfg.max_len, cfg.max_steps, cfg.horizon, sweep_options());
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  save_space(space, cfg.cache);
  if (space.empty()) warn("no description emits a full horizon; the cache holds no classes");
  std::cout << "class_count=" << space.size();
  if (!space.empty()) {
    int lo = space.classes.begin()->second.mdl_bits;
    int hi = lo;
    for (const auto& [p, h] : space.classes) {
      lo = std::min(lo, h.mdl_bits);
      hi = std::max(hi, h.mdl_bits);
    }
    std::cout << " min_mdl=" << lo << " max_mdl=" << hi;
  }
  std::cout << '\n';
  std::cerr << "elapsed_seconds=" << elapsed << '\n';
  return kExitOk;
}

int cmd_induce(const RunConfig& cfg, const FlagSet& flags) {
  if (flags.given("horizon") && cfg.horizon == 0) {
    std::ostringstream out;
    write_trace_csv({}, out);
    write_output(cfg.out, out.str());
    return kExitOk;
  }
  const auto space = acquire_space(cfg, flags, true);
  if (space.empty()) throw ValidationError("cache holds no classes");
  const auto proc = resolve_process(cfg, space);
  const auto rows = induction_trace(prior_for(cfg, space), proc);
  std::ostringstream out;
  write_trace_csv(rows, out);
  write_output(cfg.out, out.str());
  return kExitOk;
}

int cmd_chain(const RunConfig& cfg, const FlagSet& flags) {
  const auto space = acquire_space(cfg, flags, true);
  if (space.empty()) throw ValidationError("cache holds no classes");
  const auto proc = resolve_process(cfg, space);
  const auto boundaries = parse_boundaries(cfg.boundaries);
  const auto prior = prior_for(cfg, space);
  const auto truth = proc.true_prefix(space.horizon);
  const auto records = run_chain(prior, proc, boundaries);

  auto metrics_json = [](const Metrics& m) {
    nlohmann::ordered_json j;
    j["correspondence"] = m.correspondence;
    j["alignment"] = m.alignment ? nlohmann::ordered_json(*m.alignment) : nlohmann::ordered_json();
    j["entropy"] = m.entropy;
    return j;
  };
  std::ostringstream out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["stage"] = r.stage;
    j["segment"] = r.segment;
    j["metrics_before"] = metrics_json(r.before);
    j["metrics_after"] = metrics_json(r.after);
    j["prior"] = model_to_json(r.prior);
    j["posterior"] = model_to_json(r.posterior);
    out << j.dump() << '\n';
  }
  write_output(cfg.out, out.str());
  if (!cfg.posterior.empty()) {
    std::ostringstream snap;
    write_model_snapshot(records.empty() ? prior : records.back().posterior, space, snap);
    write_output(cfg.posterior, snap.str());
  }
  return kExitOk;
}

std::pair<SymbolString, SymbolString> resolve_pair(const RunConfig& cfg, const HypothesisSpace& space) {
  if (!cfg.ha.empty() || !cfg.hb.empty()) {
    if (cfg.ha.empty() || cfg.hb.empty()) throw ValidationError("give both --ha and --hb or neither");
    return {cfg.ha, cfg.hb};
  }
  return pick_ordered_pair(space, 3, cfg.seed);
}

OpcodePermutation seeded_permutation(std::uint64_t seed) {
  OpcodePermutation perm{0, 1, 2, 3, 4, 5, 6, 7};
  std::mt19937_64 rng(seed);
  for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  return perm;
}

DemoReport run_demo(const std::string& name, const RunConfig& cfg, const FlagSet& flags) {
  if (name == "posthoc") {
    if (!flags.given("period")) throw ValidationError("posthoc demo needs --period");
    return demo_posthoc(cfg.observed, cfg.period, cfg.k);
  }
  if (name == "symmetry") {
    const auto continuations = flags.given("period") ? split_list(cfg.period) : all_periods(cfg.k, 2);
    return demo_prior_posterior_symmetry(cfg.observed, continuations, cfg.k);
  }
  if (name == "invariance") {
    auto base_cfg = cfg;
    LanguagePtr wrapper;
    if (!cfg.language.empty()) {
      wrapper = resolve_language(cfg);
      if (!wrapper->inner()) throw ValidationError("invariance demo needs a wrapper language");
      base_cfg.language = wrapper->inner()->to_json_line();
    }
    base_cfg.cache.clear();
    const auto base = !cfg.cache.empty() ? acquire_space(cfg, flags, false) : acquire_space(base_cfg, flags, false);
    if (!wrapper) {
      if (cfg.wrapper == "permutation") {
        wrapper = make_permutation_wrapper(base.language, seeded_permutation(cfg.seed));
      } else if (cfg.wrapper == "dictionary") {
        if (base.empty()) throw ValidationError("base space is empty; cannot pick a table entry");
        auto it = base.classes.begin();
        std::advance(it, static_cast<long>(std::mt19937_64(cfg.seed)() % base.size()));
        wrapper = make_dictionary_wrapper(base.language, {it->second.representative});
      } else {
        throw ValidationError("--wrapper must be dictionary or permutation");
      }
    }
    return demo_invariance(base, wrapper, sweep_options());
  }
  if (name == "reorder") {
    const auto space = acquire_space(cfg, flags, false);
    const auto [ha, hb] = resolve_pair(cfg, space);
    return demo_reorder(space, ha, hb, sweep_options());
  }
  if (name == "overwhelm") {
    const auto space = acquire_space(cfg, flags, false);
    return demo_overwhelm(space, cfg.observed, sweep_options());
  }
  if (name == "privilege") {
    const auto space = acquire_space(cfg, flags, false);
    const SweepBounds bounds{space.max_len_bits, space.max_steps, space.horizon};
    const auto [ha, hb] = resolve_pair(cfg, space);
    std::vector<LanguageEntry> languages;
    if (cfg.control) {
      languages.push_back({make_permutation_wrapper(space.language, seeded_permutation(cfg.seed)), {}});
      languages.push_back({make_permutation_wrapper(space.language, seeded_permutation(cfg.seed + 1)), {}});
    } else {
      const auto* b = space.find(hb);
      if (!b) throw ValidationError("class " + hb + " is not in the enumerated space");
      languages.push_back({space.language, {ha}});
      languages.push_back({make_dictionary_wrapper(space.language, {b->representative}), {hb}});
    }
    return demo_no_privilege(languages, {ha, hb}, bounds, sweep_options());
  }
  if (name == "tradeoff") {
    const auto space = acquire_space(cfg, flags, false);
    const auto proc = resolve_process(cfg, space);
    const auto truth = proc.true_prefix(space.horizon);
    std::vector<SymbolString> others;
    for (const auto& [p, h] : space.classes) {
      if (p != truth) others.push_back(p);
    }
    if (others.empty()) throw ValidationError("trade-off demo needs at least one class besides the truth");
    const auto decoy = others[std::mt19937_64(cfg.seed)() % others.size()];
    return demo_confidence_tradeoff(
        space, proc, [&](std::string_view p) { return p == truth; }, [&](std::string_view p) { return p == decoy; },
        cfg.gamma, cfg.theta);
  }
  throw ValidationError("unknown demo '" + name +
                        "' (expected invariance|reorder|overwhelm|posthoc|symmetry|privilege|tradeoff)");
}

int cmd_demo(const std::string& name, const RunConfig& cfg, const FlagSet& flags) {
  const auto report = run_demo(name, cfg, flags);
  write_output(cfg.out, report.to_json().dump(2) + "\n");
  if (!cfg.csv.empty()) write_output(cfg.csv, report.to_csv());
  std::cerr << "verdict=" << (report.pass ? "pass" : "fail") << '\n';
  return report.pass ? kExitOk : kExitRuntime;
}

void add_common(FlagSet& flags, RunConfig& cfg) {
  flags.add("language", cfg.language, "Language spec: inline JSON or a file path (default base R0)")
      .add("k", cfg.k, "Alphabet size for the default R0 language")
      .add("horizon", cfg.horizon, "Horizon T")
      .add("max-len", cfg.max_len, "Longest description length L in bits")
      .add("max-steps", cfg.max_steps, "Step budget S per program")
      .add("cache", cfg.cache, "Hypothesis-space cache (JSON Lines)")
      .add("out", cfg.out, "Output path (stdout when omitted)")
      .add("seed", cfg.seed, "Seed for pair/probe/decoy selection");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"occamlab: universal induction over a toy description language"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string demo_name;

  auto* enumerate = app.add_subcommand("enumerate", "Sweep descriptions and write the hypothesis-space cache");
  auto* induce = app.add_subcommand("induce", "Trace correspondence/alignment/entropy while observing a process");
  auto* chain = app.add_subcommand("chain", "Run a submodel chain over consecutive segments");
  auto* demo = app.add_subcommand("demo", "Run a language-relativity demo");

  std::vector<std::pair<CLI::App*, FlagSet>> sets;
  for (auto* sub : {enumerate, induce, chain, demo}) {
    FlagSet flags(sub);
    add_common(flags, cfg);
    sub->add_option("--config", cfg.config_path, "JSON config file; flags override its values");
    sets.emplace_back(sub, std::move(flags));
  }
  auto& induce_flags = sets[1].second;
  induce_flags.add("process", cfg.process, "program:<bitlen>:<hex> or periodic:<symbols>")
      .add("zero", cfg.zero, "Comma-separated prefixes to zero (special model)");
  auto& chain_flags = sets[2].second;
  chain_flags.add("process", cfg.process, "program:<bitlen>:<hex> or periodic:<symbols>")
      .add("boundaries", cfg.boundaries, "Comma-separated segment lengths")
      .add("zero", cfg.zero, "Comma-separated prefixes to zero (special model)")
      .add("posterior", cfg.posterior, "Write the final posterior snapshot here");
  auto& demo_flags = sets[3].second;
  demo->add_option("name", demo_name, "invariance|reorder|overwhelm|posthoc|symmetry|privilege|tradeoff")->required();
  demo_flags.add("process", cfg.process, "program:<bitlen>:<hex> or periodic:<symbols>")
      .add("theta", cfg.theta, "Correspondence threshold")
      .add("gamma", cfg.gamma, "Reweighting factor")
      .add("observed", cfg.observed, "Observed symbols")
      .add("period", cfg.period, "Continuation period (comma-separated list for symmetry)")
      .add("ha", cfg.ha, "Class favored by the base language")
      .add("hb", cfg.hb, "Class the wrapper is built to favor")
      .add("wrapper", cfg.wrapper, "Default invariance wrapper: dictionary or permutation")
      .add("csv", cfg.csv, "Also write report rows as CSV here")
      .flag("control", cfg.control, "Privilege demo with two permutation wrappers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    for (auto& [sub, flags] : sets) {
      if (sub->parsed()) flags.apply_config(cfg.config_path);
    }
    if (enumerate->parsed()) return cmd_enumerate(cfg);
    if (induce->parsed()) return cmd_induce(cfg, induce_flags);
    if (chain->parsed()) return cmd_chain(cfg, chain_flags);
    if (demo->parsed()) return cmd_demo(demo_name, cfg, demo_flags);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ContradictionError& e) {
    std::cerr << "contradiction: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
