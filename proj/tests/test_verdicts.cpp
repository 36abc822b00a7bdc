#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "propp/errors.hpp"
#include "propp/verdicts.hpp"

using namespace propp;

namespace {

const char* rule_of(Conclusion c) {
  switch (c) {
    case Conclusion::AbelianHenceFiniteIfPowerful: return "rank_zero_abelian";
    case Conclusion::FiniteIfPowerful: return "finiteness_criterion";
    case Conclusion::NotUniformIfInfinite: return "non_uniformity_criterion";
    case Conclusion::FiniteIfPowerfulAtHighLayers: return "high_layer_criterion";
    case Conclusion::Inconclusive: return "";
  }
  return "";
}

// Premises of each conclusion, restated directly from the input.
bool premises_hold(Conclusion c, const FmInput& in) {
  const std::size_t dm = in.d_minus.value_or(0);
  switch (c) {
    case Conclusion::AbelianHenceFiniteIfPowerful: return in.d_plus == 0;
    case Conclusion::FiniteIfPowerful: return in.d_plus != 1 && (in.mu_p_in_k || dm != 0);
    case Conclusion::NotUniformIfInfinite:
      return in.mu_p_in_k && (in.d_plus != 1 || in.first_layer_unramified == std::optional<bool>(false));
    case Conclusion::FiniteIfPowerfulAtHighLayers:
      return in.mu_p_in_k && in.mu_invariant_zero.value_or(false) && in.n_at_least_n0.value_or(false);
    case Conclusion::Inconclusive: return true;
  }
  return false;
}

std::vector<FmInput> all_inputs() {
  std::vector<FmInput> out;
  const std::optional<bool> tri[] = {std::nullopt, true, false};
  for (std::size_t dp = 0; dp <= 4; ++dp)
    for (std::optional<std::size_t> dm : {std::optional<std::size_t>(), std::optional<std::size_t>(0),
                                          std::optional<std::size_t>(1), std::optional<std::size_t>(3)})
      for (bool mu : {true, false})
        for (auto unram : tri)
          for (auto miz : tri)
            for (auto n0 : tri) {
              FmInput in;
              in.d_plus = dp;
              in.d_minus = dm;
              in.mu_p_in_k = mu;
              in.first_layer_unramified = unram;
              in.mu_invariant_zero = miz;
              in.n_at_least_n0 = n0;
              out.push_back(in);
            }
  return out;
}

}  // namespace

TEST(RankZeroRule, Examples) {
  EXPECT_EQ(prop21_rule(0, true, true), Prop21Conclusion::AbelianHenceFinite);
  EXPECT_EQ(prop21_rule(0, true, false), Prop21Conclusion::Abelian);
  EXPECT_EQ(prop21_rule(1, true, true), Prop21Conclusion::NotApplicable);
  EXPECT_EQ(prop21_rule(0, false, true), Prop21Conclusion::NotApplicable);
}

TEST(RankInequalities, Examples) {
  auto r = prop22_check(1, 1, 0, 1);
  EXPECT_TRUE(r.ineq_i);
  EXPECT_TRUE(r.ineq_ii);
  r = prop22_check(2, 1, 5, 0);
  EXPECT_FALSE(r.ineq_i);
  EXPECT_FALSE(r.both());
  for (std::size_t dm = 0; dm < 6; ++dm) EXPECT_TRUE(prop22_check(0, dm, 0, 0).ineq_i);
  // (ii) with d+ = 0, d- = 3: 3 <= 0 + h+ needs h+ >= 3.
  EXPECT_FALSE(prop22_check(0, 3, 2, 0).ineq_ii);
  EXPECT_TRUE(prop22_check(0, 3, 3, 0).ineq_ii);
}

TEST(PoincarePairs, AllowedPairs) {
  const auto a = prop23_allowed_pairs();
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.count({1, 2}));
  EXPECT_TRUE(a.count({3, 0}));
  EXPECT_FALSE(a.count({2, 1}));
}

TEST(Solver, Examples) {
  EXPECT_EQ(thm31_deduction_solver({0, 10}, {0, 10}, 1), (std::set<RankPair>{{2, 1}}));
  EXPECT_TRUE(thm31_deduction_solver({0, 10}, {0, 10}, 0).empty());
  EXPECT_TRUE(thm31_deduction_solver({0, 2}, {0, 0}, 1).empty());
}

TEST(Solver, MatchesBruteEnumerationAndIsMonotoneInDelta) {
  for (std::size_t delta = 0; delta <= 4; ++delta) {
    const auto s = thm31_deduction_solver({0, 12}, {0, 12}, delta);
    std::set<RankPair> brute;
    for (std::size_t a = 0; a <= 12; ++a)
      for (std::size_t b = 0; b <= 12; ++b)
        if (a >= 2 && b >= 1 && a * b <= b + delta) brute.insert({a, b});
    EXPECT_EQ(s, brute);
    if (delta > 0) {
      const auto prev = thm31_deduction_solver({0, 12}, {0, 12}, delta - 1);
      for (const auto& pr : prev) EXPECT_TRUE(s.count(pr));
    }
  }
}

TEST(Solver, SurvivorIsExcludedByPoincarePairs) {
  const auto allowed = prop23_allowed_pairs();
  for (const auto& pr : thm31_deduction_solver({0, 10}, {0, 10}, 1)) EXPECT_FALSE(allowed.count(pr));
}

TEST(Verdict, Examples) {
  FmInput in;
  in.d_plus = 2;
  in.d_minus = 1;
  in.mu_p_in_k = true;
  auto v = fm_verdict(in);
  EXPECT_EQ(v.conclusion, Conclusion::FiniteIfPowerful);
  EXPECT_TRUE(std::find(v.also_applicable.begin(), v.also_applicable.end(), Conclusion::NotUniformIfInfinite) !=
              v.also_applicable.end());

  in = {};
  in.d_plus = 1;
  in.mu_p_in_k = true;
  in.first_layer_unramified = false;
  EXPECT_EQ(fm_verdict(in).conclusion, Conclusion::NotUniformIfInfinite);
  in.first_layer_unramified = true;
  EXPECT_EQ(fm_verdict(in).conclusion, Conclusion::Inconclusive);
  in.mu_invariant_zero = true;
  in.n_at_least_n0 = true;
  EXPECT_EQ(fm_verdict(in).conclusion, Conclusion::FiniteIfPowerfulAtHighLayers);

  in = {};
  in.d_plus = 1;
  in.mu_p_in_k = true;
  v = fm_verdict(in);
  EXPECT_EQ(v.conclusion, Conclusion::Inconclusive);
  EXPECT_FALSE(v.warnings.empty());
}

TEST(Verdict, SVariantChangesOnlyLabels) {
  for (const auto& base : all_inputs()) {
    FmInput s = base;
    s.s_variant = true;
    const auto a = fm_verdict(base), b = fm_verdict(s);
    EXPECT_EQ(a.conclusion, b.conclusion);
    EXPECT_EQ(a.also_applicable, b.also_applicable);
    ASSERT_EQ(a.reasoning_chain.size(), b.reasoning_chain.size());
    for (std::size_t i = 0; i < a.reasoning_chain.size(); ++i)
      EXPECT_EQ(a.reasoning_chain[i].holds, b.reasoning_chain[i].holds);
    EXPECT_EQ(b.group_label, "G(L_S(p)|k)");
    EXPECT_EQ(b.class_group_label, "Cl_S(k)");
    EXPECT_EQ(a.group_label, "G(L(p)|k)");
  }
}

TEST(Verdict, SoundnessAudit) {
  for (const auto& in : all_inputs()) {
    const auto v = fm_verdict(in);
    std::vector<Conclusion> emitted{v.conclusion};
    emitted.insert(emitted.end(), v.also_applicable.begin(), v.also_applicable.end());
    for (Conclusion c : emitted) {
      EXPECT_TRUE(premises_hold(c, in)) << to_string(c) << " d+=" << in.d_plus;
      if (c == Conclusion::Inconclusive) continue;
      bool seen = false;
      for (const auto& s : v.reasoning_chain)
        if (s.rule == rule_of(c)) {
          seen = true;
          EXPECT_TRUE(s.holds) << s.rule << ": " << s.premise;
          EXPECT_FALSE(s.anchor.empty());
        }
      EXPECT_TRUE(seen);
    }
    // Completeness: every rule whose premises hold is reported.
    for (Conclusion c : {Conclusion::AbelianHenceFiniteIfPowerful, Conclusion::FiniteIfPowerful,
                         Conclusion::NotUniformIfInfinite, Conclusion::FiniteIfPowerfulAtHighLayers}) {
      const bool listed = std::find(emitted.begin(), emitted.end(), c) != emitted.end();
      // d+ = 0 reports the abelian conclusion in place of the plain finiteness one.
      const bool expected = premises_hold(c, in) && !(c == Conclusion::FiniteIfPowerful && in.d_plus == 0);
      EXPECT_EQ(listed, expected) << to_string(c) << " d+=" << in.d_plus;
    }
    if (v.conclusion == Conclusion::Inconclusive) {
      EXPECT_TRUE(v.also_applicable.empty());
    }
    // The deduction steps run exactly when the finiteness rule applies with d+ >= 2.
    for (const auto& s : v.reasoning_chain)
      if (s.rule == "poincare_exclusion" || s.rule == "rank_inequality") {
        EXPECT_GE(in.d_plus, 2u);
        EXPECT_TRUE(s.holds);
      }
  }
}

TEST(Verdict, ConclusionNamesRoundTrip) {
  for (Conclusion c : {Conclusion::FiniteIfPowerful, Conclusion::AbelianHenceFiniteIfPowerful,
                       Conclusion::NotUniformIfInfinite, Conclusion::FiniteIfPowerfulAtHighLayers,
                       Conclusion::Inconclusive})
    EXPECT_EQ(conclusion_from_string(to_string(c)), c);
  EXPECT_THROW(conclusion_from_string("finite"), InputError);
}

TEST(Verdict, GoldenTable) {
  std::ifstream f(std::string(PROPP_TEST_FIXTURES) + "/golden_verdicts.json");
  ASSERT_TRUE(f.good());
  const auto j = nlohmann::json::parse(f);
  ASSERT_EQ(j["cases"].size(), 48u);
  for (const auto& c : j["cases"]) {
    FmInput in;
    in.d_plus = c["d_plus"].get<std::size_t>();
    in.d_minus = c["d_minus"].get<std::size_t>();
    in.mu_p_in_k = c["mu_p_in_k"].get<bool>();
    in.first_layer_unramified = c["first_layer_unramified"].get<bool>();
    EXPECT_EQ(to_string(fm_verdict(in).conclusion), c["conclusion"].get<std::string>()) << c.dump();
  }
}
