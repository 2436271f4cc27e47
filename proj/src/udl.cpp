#include "occamlab/udl.hpp"

#include <algorithm>

namespace occamlab {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Halted:
      return "halted";
    case RunStatus::EmitBudgetReached:
      return "emit-budget-reached";
    case RunStatus::StepBudgetExhausted:
      return "step-budget-exhausted";
  }
  return "unknown";
}

std::vector<Opcode> decode_r0(std::span<const std::uint8_t> bits) {
  std::vector<Opcode> ops;
  ops.reserve(bits.size() / kInstructionBits);
  for (std::size_t i = 0; i + kInstructionBits <= bits.size(); i += kInstructionBits) {
    ops.push_back(static_cast<Opcode>((bits[i] << 2) | (bits[i + 1] << 1) | bits[i + 2]));
  }
  return ops;
}

ExecutionOutcome Machine::execute(std::span<const Opcode> program, std::uint64_t max_steps,
                                  std::size_t max_emit) {
  const auto n = static_cast<std::int32_t>(program.size());
  jump_.assign(program.size(), -1);
  stack_.clear();
  for (std::int32_t i = 0; i < n; ++i) {
    if (program[i] == Opcode::LoopStart) {
      stack_.push_back(i);
    } else if (program[i] == Opcode::LoopEnd && !stack_.empty()) {
      auto open = stack_.back();
      stack_.pop_back();
      jump_[open] = i;
      jump_[i] = open;
    }
  }

  const auto k = static_cast<std::uint8_t>(alphabet_.size());
  tape_.assign(1, 0);
  std::size_t head = 0;
  std::int32_t pc = 0;
  ExecutionOutcome out;
  auto finish = [&](RunStatus status) {
    out.status = status;
    return out;
  };

  while (true) {
    if (pc >= n) return finish(RunStatus::Halted);
    if (out.steps_used >= max_steps) return finish(RunStatus::StepBudgetExhausted);
    const Opcode op = program[pc];
    if (op == Opcode::Emit && out.emitted.size() >= max_emit) {
      return finish(RunStatus::EmitBudgetReached);
    }
    ++out.steps_used;
    std::uint8_t& cell = tape_[head];
    switch (op) {
      case Opcode::Inc:
        cell = static_cast<std::uint8_t>(cell + 1 == k ? 0 : cell + 1);
        ++pc;
        break;
      case Opcode::Dec:
        cell = static_cast<std::uint8_t>(cell == 0 ? k - 1 : cell - 1);
        ++pc;
        break;
      case Opcode::Right:
        if (++head == tape_.size()) tape_.push_back(0);
        ++pc;
        break;
      case Opcode::Left:
        if (head > 0) --head;
        ++pc;
        break;
      case Opcode::Emit:
        out.emitted.push_back(symbol_char(cell));
        ++pc;
        if (out.emitted.size() == max_emit) return finish(RunStatus::EmitBudgetReached);
        break;
      case Opcode::LoopStart:
        if (cell == 0) {
          pc = jump_[pc] < 0 ? n : jump_[pc] + 1;
        } else {
          ++pc;
        }
        break;
      case Opcode::LoopEnd:
        if (cell != 0 && jump_[pc] >= 0) {
          pc = jump_[pc] + 1;
        } else {
          ++pc;
        }
        break;
      case Opcode::Halt:
        return finish(RunStatus::Halted);
    }
  }
}

namespace {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kDigits[h & 0xF];
  return out;
}

int index_bits(std::size_t m) {
  int bits = 0;
  while ((std::size_t{1} << bits) < m) ++bits;
  return bits;
}

}  // namespace

int Language::depth() const { return inner_ ? 1 + inner_->depth() : 0; }

void Language::seal() { id_ = fnv1a_hex(to_json().dump()); }

nlohmann::ordered_json Language::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case LanguageKind::BaseR0:
      j["kind"] = "base-r0";
      j["k"] = alphabet_.size();
      break;
    case LanguageKind::Dictionary: {
      j["kind"] = "dictionary-wrapper";
      j["k"] = alphabet_.size();
      auto table = nlohmann::ordered_json::array();
      for (const auto& d : table_) table.push_back(d.to_hex());
      j["table"] = std::move(table);
      j["inner"] = inner_->to_json();
      break;
    }
    case LanguageKind::Permutation:
      j["kind"] = "permutation-wrapper";
      j["k"] = alphabet_.size();
      j["perm"] = perm_;
      j["inner"] = inner_->to_json();
      break;
  }
  return j;
}

LanguagePtr Language::from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    const int k = j.at("k").get<int>();
    if (kind == "base-r0") return make_base_language(k);
    LanguagePtr inner = from_json(j.at("inner"));
    if (inner->alphabet().size() != k) {
      throw ValidationError("wrapper alphabet size differs from its inner language");
    }
    if (kind == "dictionary-wrapper") {
      std::vector<Description> table;
      for (const auto& entry : j.at("table")) {
        table.push_back(Description::parse_hex(entry.get<std::string>()));
      }
      return make_dictionary_wrapper(std::move(inner), std::move(table));
    }
    if (kind == "permutation-wrapper") {
      const auto values = j.at("perm").get<std::vector<int>>();
      if (values.size() != kOpcodeCount) throw ValidationError("perm must have 8 entries");
      OpcodePermutation perm{};
      for (std::size_t i = 0; i < perm.size(); ++i) {
        if (values[i] < 0 || values[i] >= kOpcodeCount) {
          throw ValidationError("perm entries must be in [0,7]");
        }
        perm[i] = static_cast<std::uint8_t>(values[i]);
      }
      return make_permutation_wrapper(std::move(inner), perm);
    }
    throw ValidationError("unknown language kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed language JSON: ") + e.what());
  }
}

LanguagePtr Language::parse(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("language is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::vector<std::uint8_t> Language::resolve(std::span<const std::uint8_t> bits) const {
  switch (kind_) {
    case LanguageKind::BaseR0:
      return {bits.begin(), bits.end()};
    case LanguageKind::Dictionary: {
      if (bits.empty()) return {};
      if (bits[0] == 1) return inner_->resolve(bits.subspan(1));
      const int width = index_bits(table_.size());
      if (bits.size() < static_cast<std::size_t>(1 + width)) return {};
      std::size_t index = 0;
      for (int i = 0; i < width; ++i) index = (index << 1) | bits[static_cast<std::size_t>(1 + i)];
      index = std::min(index, table_.size() - 1);
      return inner_->resolve(table_[index].bits());
    }
    case LanguageKind::Permutation: {
      std::vector<std::uint8_t> out(bits.begin(), bits.end());
      for (std::size_t i = 0; i + kInstructionBits <= out.size(); i += kInstructionBits) {
        const auto mapped = perm_[static_cast<std::size_t>((out[i] << 2) | (out[i + 1] << 1) | out[i + 2])];
        out[i] = (mapped >> 2) & 1U;
        out[i + 1] = (mapped >> 1) & 1U;
        out[i + 2] = mapped & 1U;
      }
      return inner_->resolve(out);
    }
  }
  return {};
}

std::vector<Opcode> Language::compile(std::span<const std::uint8_t> bits) const {
  if (kind_ == LanguageKind::BaseR0) return decode_r0(bits);
  return decode_r0(resolve(bits));
}

LanguagePtr make_base_language(int k) {
  auto lang = std::shared_ptr<Language>(new Language(Alphabet(k)));
  lang->seal();
  return lang;
}

LanguagePtr make_dictionary_wrapper(LanguagePtr base, std::vector<Description> table) {
  if (!base) throw ValidationError("dictionary wrapper needs an inner language");
  if (table.empty()) throw ValidationError("dictionary wrapper table must be nonempty");
  auto lang = std::shared_ptr<Language>(new Language(base->alphabet()));
  lang->kind_ = LanguageKind::Dictionary;
  lang->table_ = std::move(table);
  lang->inner_ = std::move(base);
  lang->seal();
  return lang;
}

LanguagePtr make_permutation_wrapper(LanguagePtr base, const OpcodePermutation& perm) {
  if (!base) throw ValidationError("permutation wrapper needs an inner language");
  std::array<bool, kOpcodeCount> seen{};
  for (auto p : perm) {
    if (p >= kOpcodeCount || seen[p]) throw ValidationError("opcode permutation is not a bijection");
    seen[p] = true;
  }
  auto lang = std::shared_ptr<Language>(new Language(base->alphabet()));
  lang->kind_ = LanguageKind::Permutation;
  lang->perm_ = perm;
  lang->inner_ = std::move(base);
  lang->seal();
  return lang;
}

int simulation_overhead(const Language& wrapper) {
  switch (wrapper.kind()) {
    case LanguageKind::Dictionary:
      return 1;
    case LanguageKind::Permutation:
      return 0;
    case LanguageKind::BaseR0:
      break;
  }
  throw ValidationError("base R0 has no inner language to simulate");
}

Description remap_for_permutation(const Language& wrapper, const Description& inner_description) {
  if (wrapper.kind() != LanguageKind::Permutation) {
    throw ValidationError("remap_for_permutation needs a permutation wrapper");
  }
  OpcodePermutation inverse{};
  for (std::size_t g = 0; g < kOpcodeCount; ++g) inverse[wrapper.permutation()[g]] = static_cast<std::uint8_t>(g);
  std::vector<std::uint8_t> bits(inner_description.bits().begin(), inner_description.bits().end());
  for (std::size_t i = 0; i + kInstructionBits <= bits.size(); i += kInstructionBits) {
    const auto mapped = inverse[static_cast<std::size_t>((bits[i] << 2) | (bits[i + 1] << 1) | bits[i + 2])];
    bits[i] = (mapped >> 2) & 1U;
    bits[i + 1] = (mapped >> 1) & 1U;
    bits[i + 2] = mapped & 1U;
  }
  return Description(std::move(bits));
}

ExecutionOutcome run(const Language& language, const Description& d, std::uint64_t max_steps,
                     std::size_t max_emit) {
  Machine machine(language.alphabet());
  const auto program = language.compile(d.bits());
  return machine.execute(program, max_steps, max_emit);
}

}  // namespace occamlab
