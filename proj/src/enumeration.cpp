#include "occamlab/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace occamlab {

const HypothesisClass* HypothesisSpace::find(std::string_view prefix) const {
  auto it = classes.find(prefix);
  return it == classes.end() ? nullptr : &it->second;
}

bool operator==(const HypothesisSpace& a, const HypothesisSpace& b) {
  const bool same_language =
      (a.language == nullptr && b.language == nullptr) ||
      (a.language != nullptr && b.language != nullptr && a.language->id() == b.language->id());
  return same_language && a.horizon == b.horizon && a.max_len_bits == b.max_len_bits &&
         a.max_steps == b.max_steps && a.classes == b.classes;
}

namespace {

struct Contribution {
  int length = 0;
  std::uint64_t value = 0;
  std::uint64_t count = 0;
};

using PartialMap = std::unordered_map<SymbolString, Contribution>;

// Descriptions are indexed shortest-first: index i <-> (len, value) with
// i + 1 == 2^len + value.
void sweep_range(const Language& language, int max_len_bits, std::uint64_t max_steps, int horizon,
                 std::uint64_t begin, std::uint64_t end, PartialMap& out) {
  Machine machine(language.alphabet());
  const bool direct = language.kind() == LanguageKind::BaseR0;
  std::vector<Opcode> program;
  std::vector<std::uint8_t> bits;
  const auto horizon_size = static_cast<std::size_t>(horizon);
  for (std::uint64_t i = begin; i < end; ++i) {
    const int length = std::bit_width(i + 1) - 1;
    const std::uint64_t value = (i + 1) - (std::uint64_t{1} << length);
    if (length > max_len_bits) break;
    if (direct) {
      program.clear();
      for (int shift = length - kInstructionBits; shift >= 0; shift -= kInstructionBits) {
        program.push_back(static_cast<Opcode>((value >> shift) & 7U));
      }
    } else {
      bits.resize(static_cast<std::size_t>(length));
      for (int b = 0; b < length; ++b) {
        bits[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((value >> (length - 1 - b)) & 1U);
      }
      program = language.compile(bits);
    }
    auto outcome = machine.execute(program, max_steps, horizon_size);
    if (outcome.status != RunStatus::EmitBudgetReached || outcome.emitted.size() != horizon_size) {
      continue;
    }
    auto [it, inserted] = out.try_emplace(std::move(outcome.emitted), Contribution{length, value, 0});
    ++it->second.count;
  }
}

}  // namespace

HypothesisSpace enumerate_space(LanguagePtr language, int max_len_bits, std::uint64_t max_steps,
                                int horizon, const SweepOptions& options) {
  if (!language) throw ValidationError("enumeration needs a language");
  if (max_len_bits < 0) throw ValidationError("max_len_bits must be >= 0");
  if (max_steps < 1) throw ValidationError("max_steps must be >= 1");
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  if (max_len_bits >= 62 || (std::uint64_t{1} << (max_len_bits + 1)) > options.ceiling) {
    throw ResourceLimitError("sweep of all descriptions up to " + std::to_string(max_len_bits) +
                             " bits exceeds the ceiling of " + std::to_string(options.ceiling) +
                             " descriptions");
  }

  const std::uint64_t total = (std::uint64_t{1} << (max_len_bits + 1)) - 1;
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, threads);
  if (total < 4096) threads = 1;

  std::vector<PartialMap> partials(threads);
  if (threads == 1) {
    sweep_range(*language, max_len_bits, max_steps, horizon, 0, total, partials[0]);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = total * t / threads;
      const std::uint64_t end = total * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        sweep_range(*language, max_len_bits, max_steps, horizon, begin, end, partials[t]);
      });
    }
  }

  // Per-prefix minimum over (length, value) and a count sum: both associative
  // and commutative, so chunk order does not matter.
  PartialMap merged;
  for (auto& partial : partials) {
    for (auto& [prefix, c] : partial) {
      auto [it, inserted] = merged.try_emplace(prefix, c);
      if (inserted) continue;
      auto& m = it->second;
      if (std::pair(c.length, c.value) < std::pair(m.length, m.value)) {
        m.length = c.length;
        m.value = c.value;
      }
      m.count += c.count;
    }
  }

  HypothesisSpace space;
  space.language = std::move(language);
  space.horizon = horizon;
  space.max_len_bits = max_len_bits;
  space.max_steps = max_steps;
  for (auto& [prefix, c] : merged) {
    space.classes.emplace(prefix, HypothesisClass{prefix, c.length,
                                                  Description::from_value(c.value, c.length), c.count});
  }
  return space;
}

Model solomonoff_prior(const HypothesisSpace& space) {
  if (space.empty()) throw ValidationError("cannot build a prior over an empty hypothesis space");
  int min_mdl = space.classes.begin()->second.mdl_bits;
  for (const auto& [prefix, h] : space.classes) min_mdl = std::min(min_mdl, h.mdl_bits);
  std::vector<ModelEntry> entries;
  entries.reserve(space.size());
  long double z = 0.0L;
  for (const auto& [prefix, h] : space.classes) {
    const double w = std::ldexp(1.0, min_mdl - h.mdl_bits);
    z += w;
    entries.push_back({prefix, w});
  }
  for (auto& e : entries) e.probability = static_cast<double>(e.probability / z);
  return Model(space.language->id(), space.language->alphabet(), space.horizon, std::move(entries), 0,
               ModelKind::General);
}

std::optional<int> mdl_of(const HypothesisSpace& space, std::string_view prefix) {
  if (static_cast<int>(prefix.size()) != space.horizon) {
    throw ValidationError("prefix length " + std::to_string(prefix.size()) + " differs from horizon " +
                          std::to_string(space.horizon));
  }
  const auto* h = space.find(prefix);
  if (!h) return std::nullopt;
  return h->mdl_bits;
}

void write_space(const HypothesisSpace& space, std::ostream& out) {
  nlohmann::ordered_json header;
  header["format_version"] = kCacheFormatVersion;
  header["language"] = space.language->to_json();
  header["language_id"] = space.language->id();
  header["k"] = space.language->alphabet().size();
  header["horizon"] = space.horizon;
  header["max_len_bits"] = space.max_len_bits;
  header["max_steps"] = space.max_steps;
  header["class_count"] = space.size();
  out << header.dump() << '\n';
  for (const auto& [prefix, h] : space.classes) {
    nlohmann::ordered_json line;
    line["prefix"] = h.prefix;
    line["mdl"] = h.mdl_bits;
    line["rep"] = h.representative.to_hex();
    line["count"] = h.program_count;
    out << line.dump() << '\n';
  }
}

HypothesisSpace read_space(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("cache is empty");
  HypothesisSpace space;
  std::uint64_t class_count = 0;
  try {
    const auto header = nlohmann::json::parse(line);
    const int version = header.at("format_version").get<int>();
    if (version != kCacheFormatVersion) {
      throw FormatError("unsupported cache format version " + std::to_string(version) + " (expected " +
                        std::to_string(kCacheFormatVersion) + ")");
    }
    space.language = Language::from_json(header.at("language"));
    const auto claimed = header.at("language_id").get<std::string>();
    if (claimed != space.language->id()) {
      throw FormatError("cache integrity error: header claims language id " + claimed +
                        " but the stored language hashes to " + space.language->id());
    }
    if (header.at("k").get<int>() != space.language->alphabet().size()) {
      throw FormatError("cache integrity error: k disagrees with the stored language");
    }
    space.horizon = header.at("horizon").get<int>();
    space.max_len_bits = header.at("max_len_bits").get<int>();
    space.max_steps = header.at("max_steps").get<std::uint64_t>();
    class_count = header.at("class_count").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed cache header: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(std::string("invalid language in cache header: ") + e.what());
  }

  const SymbolString* previous = nullptr;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    HypothesisClass h;
    try {
      const auto j = nlohmann::json::parse(line);
      h.prefix = j.at("prefix").get<std::string>();
      h.mdl_bits = j.at("mdl").get<int>();
      h.representative = Description::parse_hex(j.at("rep").get<std::string>());
      h.program_count = j.at("count").get<std::uint64_t>();
      validate_symbols(h.prefix, space.language->alphabet());
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed cache line: ") + e.what());
    } catch (const ValidationError& e) {
      throw FormatError(std::string("invalid cache line: ") + e.what());
    }
    if (static_cast<int>(h.prefix.size()) != space.horizon || h.mdl_bits > space.max_len_bits ||
        h.mdl_bits < 0 || static_cast<int>(h.representative.size()) != h.mdl_bits || h.program_count < 1) {
      throw FormatError("cache line violates class invariants: " + line);
    }
    if (previous && !(*previous < h.prefix)) {
      throw FormatError("cache lines are not strictly sorted by prefix");
    }
    auto [it, inserted] = space.classes.emplace(h.prefix, std::move(h));
    previous = &it->first;
  }
  if (space.size() != class_count) {
    throw FormatError("cache integrity error: header class_count " + std::to_string(class_count) +
                      " but found " + std::to_string(space.size()) + " classes");
  }
  return space;
}

void save_space(const HypothesisSpace& space, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_space(space, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

HypothesisSpace load_space(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return read_space(in);
}

}  // namespace occamlab
