#include <random>

#include "doctest.h"
#include "occamlab/udl.hpp"
#include "reference_r0.hpp"

using namespace occamlab;

namespace {

Description bits(std::string_view s) { return Description::from_bit_string(s); }

Description random_description(std::mt19937_64& rng, int max_len) {
  const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
  return Description::from_value(rng(), len);
}

}  // namespace

TEST_CASE("alphabet bounds") {
  CHECK_THROWS_AS(make_base_language(1), ValidationError);
  CHECK_THROWS_AS(make_base_language(17), ValidationError);
  CHECK(make_base_language(16)->alphabet().size() == 16);
}

TEST_CASE("description hex encoding") {
  const auto d = bits("100 111 01");
  CHECK(d.to_hex() == "8:9d");
  CHECK(Description::parse_hex("8:9d") == d);
  CHECK(Description().to_hex() == "0:");
  CHECK(Description::parse_hex("0:").empty());
  CHECK(Description::parse_hex("3:80") == bits("100"));
  CHECK_THROWS_AS(Description::parse_hex("3:81"), ValidationError);  // nonzero padding
  CHECK_THROWS_AS(Description::parse_hex("9:ff"), ValidationError);  // too short
  CHECK_THROWS_AS(Description::parse_hex("ff"), ValidationError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_description(rng, 64);
    CHECK(Description::parse_hex(x.to_hex()) == x);
  }
}

TEST_CASE("description order is shortest first then lexicographic") {
  CHECK(bits("1") < bits("00"));
  CHECK(bits("010") < bits("011"));
  CHECK(Description() < bits("0"));
}

TEST_CASE("base R0 examples") {
  const auto r0 = make_base_language(2);
  SUBCASE("empty program halts silently") {
    const auto out = run(*r0, Description(), 100, 8);
    CHECK(out.emitted.empty());
    CHECK(out.status == RunStatus::Halted);
  }
  SUBCASE("EMIT HALT") {
    const auto out = run(*r0, bits("100 111"), 100, 8);
    CHECK(out.emitted == "0");
    CHECK(out.status == RunStatus::Halted);
  }
  SUBCASE("INC [ RIGHT EMIT LEFT ] emits zeros forever") {
    for (std::size_t budget : {1U, 8U, 50U}) {
      const auto out = run(*r0, bits("000 101 010 100 011 110"), 100000, budget);
      CHECK(out.emitted == std::string(budget, '0'));
      CHECK(out.status == RunStatus::EmitBudgetReached);
    }
  }
  SUBCASE("INC EMIT") {
    const auto out = run(*r0, bits("000 100"), 100, 8);
    CHECK(out.emitted == "1");
    CHECK(out.status == RunStatus::Halted);
    CHECK(out.steps_used == 2);
  }
  SUBCASE("INC EMIT [ EMIT ] hits the emit budget") {
    const auto out = run(*r0, bits("000 100 101 100 110"), 100, 4);
    CHECK(out.emitted == "1111");
    CHECK(out.status == RunStatus::EmitBudgetReached);
  }
  SUBCASE("zero step budget") {
    const auto out = run(*r0, bits("000 100"), 0, 8);
    CHECK(out.emitted.empty());
    CHECK(out.status == RunStatus::StepBudgetExhausted);
    CHECK(run(*r0, Description(), 0, 8).status == RunStatus::Halted);
  }
  SUBCASE("trailing bits ignored") {
    CHECK(run(*r0, bits("100 11"), 10, 8) == run(*r0, bits("100"), 10, 8));
  }
  SUBCASE("unmatched brackets are total") {
    // [ with cell 0 and no partner: jump to end.
    CHECK(run(*r0, bits("101 100"), 10, 8).emitted.empty());
    // ] without partner is a no-op.
    CHECK(run(*r0, bits("000 110 100"), 10, 8).emitted == "1");
  }
  SUBCASE("LEFT at cell 0 is a no-op") {
    CHECK(run(*r0, bits("011 000 100"), 10, 8).emitted == "1");
  }
  SUBCASE("modular arithmetic in larger alphabets") {
    const auto r5 = make_base_language(5);
    CHECK(run(*r5, bits("001 100 000 000 100"), 10, 8).emitted == "41");
    const auto r16 = make_base_language(16);
    CHECK(run(*r16, bits("001 100"), 10, 8).emitted == "f");
  }
}

TEST_CASE("interpreter agrees with the reference oracle on random programs") {
  std::mt19937_64 rng(11);
  for (int k : {2, 3, 7}) {
    const auto lang = make_base_language(k);
    for (int i = 0; i < 3000; ++i) {
      const auto d = random_description(rng, 40);
      const auto steps = rng() % 300;
      const auto emit = static_cast<std::size_t>(rng() % 12);
      const auto got = run(*lang, d, steps, emit);
      const auto want = reference::run(d.to_bit_string(), k, steps, emit);
      REQUIRE(got.emitted == want.emitted);
      REQUIRE(to_string(got.status) == want.status);
      REQUIRE(got.steps_used == want.steps);
    }
  }
}

TEST_CASE("execution invariants") {
  std::mt19937_64 rng(3);
  const auto r0 = make_base_language(3);
  for (int i = 0; i < 2000; ++i) {
    const auto d = random_description(rng, 36);
    const auto s = rng() % 200;
    const auto e = static_cast<std::size_t>(rng() % 10);
    const auto out = run(*r0, d, s, e);
    CHECK(out.emitted.size() <= e);
    CHECK(out.steps_used <= s);
    if (out.status == RunStatus::EmitBudgetReached) CHECK(out.emitted.size() == e);
    // Determinism.
    CHECK(run(*r0, d, s, e) == out);
    // Prefix stability under larger budgets.
    const auto bigger = run(*r0, d, s + rng() % 100, e + rng() % 5);
    CHECK(bigger.emitted.compare(0, out.emitted.size(), out.emitted) == 0);
  }
}

TEST_CASE("dictionary wrapper") {
  const auto r0 = make_base_language(2);
  const auto p = bits("100 111");          // "0"
  const auto q = bits("000 100 101 100 110");  // "1111..."
  CHECK_THROWS_AS(make_dictionary_wrapper(r0, {}), ValidationError);

  SUBCASE("single entry needs no index bits") {
    const auto w = make_dictionary_wrapper(r0, {q});
    CHECK(run(*w, bits("0"), 100, 3).emitted == "111");
  }
  SUBCASE("index selects the entry") {
    const auto w = make_dictionary_wrapper(r0, {p, q});
    CHECK(run(*w, bits("01"), 100, 3).emitted == "111");
    CHECK(run(*w, bits("00"), 100, 3).emitted == "0");
    // A truncated index is the empty program.
    CHECK(run(*w, bits("0"), 100, 3).emitted.empty());
    CHECK(run(*w, Description(), 100, 3).emitted.empty());
  }
  SUBCASE("out-of-range index clamps to the last entry") {
    const auto w = make_dictionary_wrapper(r0, {p, p, q});
    CHECK(run(*w, bits("011"), 100, 3).emitted == "111");
  }
  SUBCASE("escape bit simulates the base language exactly") {
    const auto w = make_dictionary_wrapper(r0, {p, q});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
      const auto d = random_description(rng, 30);
      const auto s = rng() % 200;
      const auto e = static_cast<std::size_t>(rng() % 10);
      CHECK(run(*w, bits("1") + d, s, e) == run(*r0, d, s, e));
    }
  }
  CHECK(simulation_overhead(*make_dictionary_wrapper(r0, {p})) == 1);
}

TEST_CASE("permutation wrapper") {
  const auto r0 = make_base_language(2);
  CHECK_THROWS_AS(make_permutation_wrapper(r0, {0, 0, 2, 3, 4, 5, 6, 7}), ValidationError);
  CHECK_THROWS_AS(make_permutation_wrapper(r0, {0, 1, 2, 3, 4, 5, 6, 8}), ValidationError);

  const auto identity = make_permutation_wrapper(r0, {0, 1, 2, 3, 4, 5, 6, 7});
  const auto swap = make_permutation_wrapper(r0, {4, 1, 2, 3, 0, 5, 6, 7});
  CHECK(run(*swap, bits("000"), 10, 4).emitted == "0");  // 000 acts as EMIT
  CHECK(simulation_overhead(*swap) == 0);

  std::mt19937_64 rng(9);
  OpcodePermutation perm{0, 1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < 500; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto w = make_permutation_wrapper(r0, perm);
    const auto d = random_description(rng, 30);
    const auto s = rng() % 200;
    const auto e = static_cast<std::size_t>(rng() % 10);
    CHECK(run(*identity, d, s, e) == run(*r0, d, s, e));
    const auto remapped = remap_for_permutation(*w, d);
    CHECK(remapped.size() == d.size());
    CHECK(run(*w, remapped, s, e) == run(*r0, d, s, e));
  }
}

TEST_CASE("simulation overhead of base language is an error") {
  CHECK_THROWS_AS(simulation_overhead(*make_base_language(2)), ValidationError);
}

TEST_CASE("language JSON and ids") {
  const auto r0 = make_base_language(2);
  const auto dict = make_dictionary_wrapper(r0, {bits("100 111")});
  const auto perm = make_permutation_wrapper(dict, {1, 0, 2, 3, 4, 5, 6, 7});
  CHECK(r0->to_json_line() == R"({"kind":"base-r0","k":2})");
  CHECK(dict->to_json_line() ==
        R"({"kind":"dictionary-wrapper","k":2,"table":["6:9c"],"inner":{"kind":"base-r0","k":2}})");
  CHECK(perm->depth() == 2);

  for (const auto& lang : {r0, dict, perm}) {
    const auto back = Language::parse(lang->to_json_line());
    CHECK(back->id() == lang->id());
    CHECK(back->to_json_line() == lang->to_json_line());
  }
  // Any field change changes the id.
  CHECK(make_base_language(3)->id() != r0->id());
  CHECK(make_dictionary_wrapper(r0, {bits("100 110")})->id() != dict->id());
  CHECK(make_permutation_wrapper(dict, {0, 1, 2, 3, 4, 5, 7, 6})->id() != perm->id());
  CHECK(make_base_language(2)->id() == r0->id());

  CHECK_THROWS_AS(Language::parse("{"), ValidationError);
  CHECK_THROWS_AS(Language::parse(R"({"kind":"turing","k":2})"), ValidationError);
  CHECK_THROWS_AS(Language::parse(R"({"kind":"dictionary-wrapper","k":3,"table":["0:"],"inner":{"kind":"base-r0","k":2}})"),
                  ValidationError);
}
