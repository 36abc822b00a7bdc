#include "propp/verdicts.hpp"

#include "propp/errors.hpp"

namespace propp {

namespace {

std::size_t choose2(std::size_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

constexpr const char* kRankZero = "rank_zero_abelian";
constexpr const char* kFiniteness = "finiteness_criterion";
constexpr const char* kNonUniform = "non_uniformity_criterion";
constexpr const char* kHighLayer = "high_layer_criterion";

}  // namespace

std::string to_string(Prop21Conclusion c) {
  switch (c) {
    case Prop21Conclusion::AbelianHenceFinite: return "abelian_hence_finite";
    case Prop21Conclusion::Abelian: return "abelian";
    case Prop21Conclusion::NotApplicable: return "not_applicable";
  }
  return "?";
}

Prop21Conclusion prop21_rule(std::size_t d_plus, bool is_powerful, bool ab_finite) {
  if (d_plus != 0 || !is_powerful) return Prop21Conclusion::NotApplicable;
  return ab_finite ? Prop21Conclusion::AbelianHenceFinite : Prop21Conclusion::Abelian;
}

Prop22Result prop22_check(std::size_t d_plus, std::size_t d_minus, std::size_t h2qp_plus,
                          std::size_t h2qp_minus) {
  return {d_plus * d_minus <= d_minus + h2qp_minus, choose2(d_plus) + choose2(d_minus) <= d_plus + h2qp_plus};
}

std::set<RankPair> prop23_allowed_pairs() { return {{1, 2}, {3, 0}}; }

std::set<RankPair> thm31_deduction_solver(RankPair d_plus_range, RankPair d_minus_range, std::size_t delta) {
  std::set<RankPair> out;
  for (std::size_t a = std::max<std::size_t>(d_plus_range.first, 2); a <= d_plus_range.second; ++a)
    for (std::size_t b = std::max<std::size_t>(d_minus_range.first, 1); b <= d_minus_range.second; ++b)
      if (a * b <= b + delta) out.insert({a, b});
  return out;
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::FiniteIfPowerful: return "finite_if_powerful";
    case Conclusion::AbelianHenceFiniteIfPowerful: return "abelian_hence_finite_if_powerful";
    case Conclusion::NotUniformIfInfinite: return "not_uniform_if_infinite";
    case Conclusion::FiniteIfPowerfulAtHighLayers: return "finite_if_powerful_at_high_layers";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "?";
}

Conclusion conclusion_from_string(const std::string& s) {
  for (auto c : {Conclusion::FiniteIfPowerful, Conclusion::AbelianHenceFiniteIfPowerful,
                 Conclusion::NotUniformIfInfinite, Conclusion::FiniteIfPowerfulAtHighLayers,
                 Conclusion::Inconclusive})
    if (to_string(c) == s) return c;
  throw InputError("unknown verdict conclusion '" + s + "'");
}

FmVerdict fm_verdict(const FmInput& in) {
  FmVerdict v;
  v.group_label = in.s_variant ? "G(L_S(p)|k)" : "G(L(p)|k)";
  v.class_group_label = in.s_variant ? "Cl_S(k)" : "Cl(k)";
  auto step = [&](const char* rule, std::string anchor, std::string premise, bool holds) {
    v.reasoning_chain.push_back({rule, std::move(anchor), std::move(premise), holds});
    return holds;
  };
  const std::size_t delta = in.mu_p_in_k ? 1 : 0;
  std::vector<Conclusion> fired;

  // A powerful group with no plus part is abelian; its abelianization is the
  // finite p-class group.
  if (step(kRankZero, "powerful with d+ = 0 implies abelian, and G^ab = " + v.class_group_label + "(p) is finite",
           "d+ = 0", in.d_plus == 0))
    fired.push_back(Conclusion::AbelianHenceFiniteIfPowerful);

  {
    const std::string anchor = "d+ != 1 and (mu_p in k or d- != 0): " + v.group_label + " powerful implies finite";
    bool ok = step(kFiniteness, anchor, "d+ != 1", in.d_plus != 1);
    bool cond_minus = in.mu_p_in_k || (in.d_minus && *in.d_minus != 0);
    ok = step(kFiniteness, anchor, "mu_p in k or d- != 0", cond_minus) && ok;
    if (ok && in.d_plus >= 2) {
      // Reflection gives d- >= 1 when mu_p is in k; then the rank inequality
      // leaves only (2, 1), which no three-dimensional Poincare group has.
      const bool d_minus_pos = in.mu_p_in_k || (in.d_minus && *in.d_minus >= 1);
      step("reflection", "mu_p in k forces d- >= 1", "d- >= 1", d_minus_pos);
      if (in.mu_p_in_k && in.d_minus && *in.d_minus == 0)
        v.warnings.push_back("declared d- = 0 contradicts the reflection bound d- >= 1 for mu_p in k");
      const auto survivors = thm31_deduction_solver({0, std::max<std::size_t>(in.d_plus, 10)},
                                                    {0, std::max<std::size_t>(in.d_minus.value_or(0), 10)}, delta);
      const bool only_21 = survivors == std::set<RankPair>{{2, 1}};
      step("rank_inequality",
           "an infinite powerful quotient is Poincare of dimension 3 with d+ d- <= d- + delta, delta = " +
               std::to_string(delta),
           delta == 1 ? "solutions with d+ >= 2, d- >= 1 are exactly {(2,1)}"
                      : "no solutions with d+ >= 2, d- >= 1",
           delta == 1 ? only_21 : survivors.empty());
      bool excluded = true;
      for (const auto& pr : survivors) excluded = excluded && !prop23_allowed_pairs().count(pr);
      step("poincare_exclusion", "allowed rank splits are (1,2) and (3,0)", "surviving pairs are not allowed",
           excluded);
    }
    if (ok && in.d_plus != 0) fired.push_back(Conclusion::FiniteIfPowerful);
  }

  {
    const std::string anchor = "mu_p in k, and k_1|k not unramified when d+ = 1: " + v.group_label +
                               " infinite implies not uniform";
    bool ok = step(kNonUniform, anchor, "mu_p in k", in.mu_p_in_k);
    if (in.d_plus == 1) {
      const bool ramified = in.first_layer_unramified.has_value() && !*in.first_layer_unramified;
      ok = step(kNonUniform, anchor, "d+ = 1 implies k_1|k not unramified", ramified) && ok;
      if (!in.first_layer_unramified)
        v.warnings.push_back("first layer ramification undeclared; the d+ = 1 case cannot be decided");
    }
    if (ok) fired.push_back(Conclusion::NotUniformIfInfinite);
  }

  {
    const std::string anchor = "mu_p in k, mu = 0 and n >= n0: powerful layer groups are finite";
    bool ok = step(kHighLayer, anchor, "mu_p in k", in.mu_p_in_k);
    ok = step(kHighLayer, anchor, "mu-invariant zero", in.mu_invariant_zero.value_or(false)) && ok;
    ok = step(kHighLayer, anchor, "n >= n0", in.n_at_least_n0.value_or(false)) && ok;
    if (ok) fired.push_back(Conclusion::FiniteIfPowerfulAtHighLayers);
  }

  if (fired.empty()) {
    v.conclusion = Conclusion::Inconclusive;
  } else {
    v.conclusion = fired.front();
    v.also_applicable.assign(fired.begin() + 1, fired.end());
  }
  return v;
}

}  // namespace propp
