#include <algorithm>
#include <random>

#include "doctest.h"
#include "occamlab/relativity.hpp"
#include "reference_r0.hpp"

using namespace occamlab;

namespace {

const HypothesisSpace& space18() {
  static const HypothesisSpace space = enumerate_space(make_base_language(2), 18, 512, 8);
  return space;
}

std::string expected_stream(const std::string& o, const std::string& s, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += i < o.size() ? o[i] : s[(i - o.size()) % s.size()];
  return out;
}

}  // namespace

TEST_CASE("invariance demo") {
  const auto& base = space18();
  SUBCASE("permutation wrapper has zero gap") {
    const auto report = demo_invariance(base, make_permutation_wrapper(base.language, {2, 7, 0, 1, 4, 3, 6, 5}));
    CHECK(report.pass);
    CHECK(report.summary["max_gap"] == 0);
  }
  SUBCASE("dictionary wrapper stays within one bit and is tight somewhere") {
    const auto report = demo_invariance(base, make_dictionary_wrapper(base.language, {Description()}));
    CHECK(report.pass);
    CHECK(report.summary["max_gap"] == 1);
    CHECK(report.summary["classes_at_bound"].get<int>() >= 1);
  }
  SUBCASE("two-entry table gives table classes 2-bit codes") {
    const auto& a = base.classes.at("00000000");
    const auto& b = base.classes.at("00111111");
    const auto report = demo_invariance(base, make_dictionary_wrapper(base.language, {a.representative, b.representative}));
    CHECK(report.pass);
    for (const auto& row : report.rows) {
      if (row["prefix"] == "00000000" || row["prefix"] == "00111111") CHECK(row["mdl_wrapper"] == 2);
    }
  }
  SUBCASE("wrapper of another language is rejected") {
    CHECK_THROWS_AS(demo_invariance(base, make_dictionary_wrapper(make_base_language(3), {Description()})),
                    ValidationError);
    CHECK_THROWS_AS(demo_invariance(base, base.language), ValidationError);
  }
}

TEST_CASE("reorder demo") {
  const auto& base = space18();
  const auto report = demo_reorder(base, "11111111", "00000000");
  CHECK(report.pass);
  CHECK(report.summary["base_log2_ratio"] == 6);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0]["favors"] == "hA");
  CHECK(report.rows[1]["favors"] == "hB");
  CHECK(report.rows[1]["mdl_hB"] == 1);
  CHECK(report.rows[2]["favors"] == "hA");  // permutation control
  CHECK(report.rows[2]["mdl_hB"] == 18);

  CHECK_THROWS_AS(demo_reorder(base, "11111111", "11111111"), ValidationError);
  CHECK_THROWS_AS(demo_reorder(base, "00000000", "11111111"), ValidationError);
  CHECK_THROWS_AS(demo_reorder(base, "00000000", "00111111"), ValidationError);  // equal MDL
  CHECK_THROWS_AS(demo_reorder(base, "11111111", "10101010"), ValidationError);
}

TEST_CASE("overwhelm demo") {
  const auto& base = space18();
  SUBCASE("no data reduces to reordering the prior") {
    const auto report = demo_overwhelm(base, "");
    CHECK(report.pass);
    CHECK(report.summary["hA"] == "11111111");
    CHECK(report.summary["rival_source"] == "enumerated");
  }
  SUBCASE("every proper prefix of the all-zeros process") {
    for (int n = 1; n < 8; ++n) {
      const auto o = std::string(static_cast<std::size_t>(n), '0');
      const auto report = demo_overwhelm(base, o);
      CAPTURE(o);
      CHECK(report.pass);
      // One zero still leaves 01111111 (weight 8) in front; from two on the
      // all-zeros class leads, tied with 00111111 at n=2 and broken by prefix.
      CHECK(report.summary["hA"] == (n == 1 ? "01111111" : "00000000"));
      const auto hb = report.summary["hB"].get<std::string>();
      CHECK(hb.compare(0, o.size(), o) == 0);
      CHECK(hb != "00000000");
    }
  }
  SUBCASE("a rival tied with hA is not a rival") {
    const auto report = demo_overwhelm(base, "00");
    CHECK(report.summary["rival_source"] == "post-hoc");
    CHECK(report.summary["hB"] == "00101010");
  }
  SUBCASE("first four zeros use a post-hoc rival") {
    const auto report = demo_overwhelm(base, "0000");
    CHECK(report.summary["rival_source"] == "post-hoc");
    CHECK(report.summary["hB"] == "00001111");
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(demo_overwhelm(base, "00000000"), ValidationError);
    CHECK_THROWS_AS(demo_overwhelm(base, "10"), ValidationError);  // nothing consistent
    CHECK_THROWS_AS(demo_overwhelm(base, "2"), ValidationError);
  }
}

TEST_CASE("post-hoc construction") {
  SUBCASE("examples") {
    const auto r0 = make_base_language(2);
    CHECK(run(*r0, construct_posthoc("", "0"), 1 << 20, 16).emitted == std::string(16, '0'));
    CHECK(run(*r0, construct_posthoc("0110", "1"), 1 << 20, 12).emitted == "011011111111");
    CHECK(run(*r0, construct_posthoc("1", "10"), 1 << 20, 9).emitted == "110101010");
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(construct_posthoc("01", ""), ValidationError);
    CHECK_THROWS_AS(construct_posthoc("2", "1"), ValidationError);
    CHECK_THROWS_AS(construct_posthoc("0", "1", 1), ValidationError);
  }
  SUBCASE("random strings over larger alphabets, checked by the reference interpreter") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
      const int k = 2 + static_cast<int>(rng() % 15);
      std::string o;
      std::string s;
      for (auto n = rng() % 9; n > 0; --n) o += symbol_char(static_cast<Symbol>(rng() % static_cast<unsigned>(k)));
      for (auto n = 1 + rng() % 5; n > 0; --n) s += symbol_char(static_cast<Symbol>(rng() % static_cast<unsigned>(k)));
      const auto d = construct_posthoc(o, s, k);
      const auto budget = o.size() + 5 * s.size() + 3;
      const auto r = reference::run(d.to_bit_string(), k, 1 << 20, budget);
      CAPTURE(o);
      CAPTURE(s);
      CHECK(r.emitted == expected_stream(o, s, budget));
      CHECK(verify_posthoc(d, o, s, k, budget));
    }
  }
  CHECK_FALSE(verify_posthoc(construct_posthoc("01", "1"), "01", "0", 2, 10));
  CHECK(posthoc_verification_budget("0110", "1") == 24);

  const auto report = demo_posthoc("0110", "1");
  CHECK(report.pass);
  CHECK(report.rows[0]["emitted"] == "011011111111111111111111");
}

TEST_CASE("prior-posterior symmetry demo") {
  CHECK(demo_prior_posterior_symmetry("", {"0", "1"}).pass);
  const auto period3 = all_periods(2, 3);
  std::vector<SymbolString> only3(period3.end() - 8, period3.end());
  const auto report = demo_prior_posterior_symmetry("0101", only3);
  CHECK(report.pass);
  CHECK(report.rows.size() == 8);
  CHECK(demo_prior_posterior_symmetry("0110100", all_periods(2, 2)).pass);
  CHECK(all_periods(2, 2) == std::vector<SymbolString>{"0", "1", "00", "01", "10", "11"});
  CHECK_THROWS_AS(demo_prior_posterior_symmetry("0", {}), ValidationError);
}

TEST_CASE("no-privilege demo") {
  const auto& base = space18();
  const SweepBounds bounds{18, 512, 8};
  const auto& hb = base.classes.at("00000000");
  const auto wrapper = make_dictionary_wrapper(base.language, {hb.representative});

  SUBCASE("base and hB-favoring wrapper each win their own probe") {
    const auto report = demo_no_privilege({{base.language, {"11111111"}}, {wrapper, {"00000000"}}},
                                          {"11111111", "00000000"}, bounds);
    CHECK(report.pass);
    CHECK(report.rows[0]["mdl_11111111"] == 12);
    CHECK(report.rows[1]["mdl_11111111"] == 13);
    CHECK(report.rows[0]["mdl_00000000"] == 18);
    CHECK(report.rows[1]["mdl_00000000"] == 1);
    CHECK(report.summary["universally_minimal_language_exists"] == false);
  }
  SUBCASE("single language is a vacuous pass with a warning") {
    set_warnings_enabled(false);
    const auto report = demo_no_privilege({{base.language, {}}}, {"11111111"}, bounds);
    set_warnings_enabled(true);
    CHECK(report.pass);
    CHECK(report.warnings.size() == 1);
  }
  SUBCASE("permutation wrappers tie everywhere") {
    const auto p1 = make_permutation_wrapper(base.language, {1, 0, 2, 3, 4, 5, 6, 7});
    const auto p2 = make_permutation_wrapper(base.language, {0, 1, 3, 2, 4, 5, 7, 6});
    const auto report = demo_no_privilege({{p1, {}}, {p2, {}}}, {"11111111", "00000000", "01111111"}, bounds);
    CHECK(report.summary["tie_matrix"] == true);
    CHECK_FALSE(report.pass);
  }
  SUBCASE("absent probe") {
    CHECK_THROWS_AS(demo_no_privilege({{base.language, {}}, {wrapper, {}}}, {"10101010"}, bounds), ValidationError);
  }
}

TEST_CASE("confidence trade-off demo") {
  const auto& space = space18();
  const auto proc = Process::periodic("0");
  auto is_truth = [](std::string_view p) { return p == "00000000"; };
  auto is_decoy = [](std::string_view p) { return p == "00111111"; };

  SUBCASE("gamma = 1 changes nothing") {
    const auto report = demo_confidence_tradeoff(space, proc, is_truth, is_decoy, 1.0, 0.9);
    CHECK(report.pass);
    CHECK(report.rows[0]["steps"] == report.rows[1]["steps"]);
    CHECK(report.rows[1]["steps"] == report.rows[2]["steps"]);
  }
  SUBCASE("gamma = 8, theta = 0.9") {
    const auto report = demo_confidence_tradeoff(space, proc, is_truth, is_decoy, 8.0, 0.9);
    CHECK(report.pass);
    CHECK(report.rows[0]["steps"].get<int>() <= report.rows[1]["steps"].get<int>());
    CHECK(report.rows[3]["variant"] == "special-zero-truth");
    CHECK(report.rows[3]["steps"].is_null());
  }
  SUBCASE("a lower threshold separates the three priors") {
    // theta = 0.3: plain prior needs 2 symbols (0.5), boosted truth 1 (8/17), boosted decoy 3.
    const auto report = demo_confidence_tradeoff(space, proc, is_truth, is_decoy, 8.0, 0.3);
    CHECK(report.pass);
    CHECK(report.rows[0]["steps"] == 1);
    CHECK(report.rows[1]["steps"] == 2);
    CHECK(report.rows[2]["steps"] == 3);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(demo_confidence_tradeoff(space, proc, is_decoy, is_decoy, 8.0, 0.9), ValidationError);
    CHECK_THROWS_AS(demo_confidence_tradeoff(space, proc, is_truth, is_truth, 8.0, 0.9), ValidationError);
    CHECK_THROWS_AS(demo_confidence_tradeoff(space, proc, is_truth, is_decoy, 0.5, 0.9), ValidationError);
  }
}

TEST_CASE("reports are deterministic and serialize") {
  const auto& base = space18();
  const auto a = demo_reorder(base, "11111111", "00000000");
  const auto b = demo_reorder(base, "11111111", "00000000");
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_csv() == b.to_csv());
  const auto csv = a.to_csv();
  CHECK(csv.rfind("language,role,mdl_hA,mdl_hB,p_hA,p_hB,favors,expected,ok\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(a.to_json()["verdict"] == "pass");

  CHECK(pick_ordered_pair(base, 3, 42) == pick_ordered_pair(base, 3, 42));
  const auto [ha, hb] = pick_ordered_pair(base, 3, 7);
  CHECK(*mdl_of(base, hb) - *mdl_of(base, ha) >= 3);
  CHECK_THROWS_AS(pick_ordered_pair(base, 7, 0), ValidationError);
}
