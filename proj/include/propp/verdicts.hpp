#pragma once

// Decision rules relating the plus/minus ranks of a class group to the
// structure of the maximal unramified p-extension's Galois group. The
// arithmetic premises are declared inputs and are never computed here.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace propp {

enum class Prop21Conclusion { AbelianHenceFinite, Abelian, NotApplicable };
std::string to_string(Prop21Conclusion c);

// G powerful with d(G)^+ = 0 forces G abelian; finite when G^ab is.
Prop21Conclusion prop21_rule(std::size_t d_plus, bool is_powerful, bool ab_finite);

struct Prop22Result {
  bool ineq_i = false;   // d+ d- <= d- + h-
  bool ineq_ii = false;  // C(d+,2) + C(d-,2) <= d+ + h+
  bool both() const { return ineq_i && ineq_ii; }
};
Prop22Result prop22_check(std::size_t d_plus, std::size_t d_minus, std::size_t h2qp_plus,
                          std::size_t h2qp_minus);

using RankPair = std::pair<std::size_t, std::size_t>;

// Rank splits a three-dimensional Poincare group with finite abelianization
// can have.
std::set<RankPair> prop23_allowed_pairs();

// All (d+, d-) in the ranges with d+ >= 2, d- >= 1 and d+ d- <= d- + delta.
std::set<RankPair> thm31_deduction_solver(RankPair d_plus_range, RankPair d_minus_range, std::size_t delta);

enum class Conclusion {
  FiniteIfPowerful,
  AbelianHenceFiniteIfPowerful,
  NotUniformIfInfinite,
  FiniteIfPowerfulAtHighLayers,
  Inconclusive
};
std::string to_string(Conclusion c);
// Throws InputError on unknown names.
Conclusion conclusion_from_string(const std::string& s);

struct FmInput {
  std::size_t d_plus = 0;
  std::optional<std::size_t> d_minus;
  bool mu_p_in_k = false;
  std::optional<bool> first_layer_unramified;
  std::optional<bool> mu_invariant_zero;
  std::optional<bool> n_at_least_n0;
  bool s_variant = false;
};

struct ChainStep {
  std::string rule;
  std::string anchor;
  std::string premise;
  bool holds = false;
};

struct FmVerdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<ChainStep> reasoning_chain;
  // Conclusions of further rules whose premises also hold.
  std::vector<Conclusion> also_applicable;
  std::vector<std::string> warnings;
  // Names of the group and class group in the report (S-variant relabels).
  std::string group_label;
  std::string class_group_label;
};

FmVerdict fm_verdict(const FmInput& in);

}  // namespace propp
