#pragma once

// Descending p-central series, Frattini and derived subgroups, powerfulness
// and layer regularity, all computed elementwise on a GroupTable.

#include <cstddef>
#include <optional>
#include <vector>

#include "propp/fp_linalg.hpp"
#include "propp/group_table.hpp"

namespace propp {

// G_1 = G, G_{i+1} = (G_i)^p [G_i, G]. terms[0] = G and the last term is the
// trivial subgroup; layer_ranks[i] = dim G_{i+1}/G_{i+2} (0-based: layer i is
// terms[i] / terms[i+1]).
struct CentralSeries {
  std::vector<Subgroup> terms;
  std::vector<std::size_t> layer_ranks;

  std::size_t length() const { return layer_ranks.size(); }
};

CentralSeries p_central_series(const GroupTable& t);

// Subgroup generated by {x^p : x in h}.
Subgroup power_subgroup(const GroupTable& t, const Subgroup& h);
// The set {x^p : x in h} itself, not closed.
std::vector<ElemId> power_set(const GroupTable& t, const Subgroup& h);
// Subgroup generated by {[a, b] : a in a_set, b in b_set}.
Subgroup commutator_subgroup(const GroupTable& t, const Subgroup& a_set, const Subgroup& b_set);
Subgroup derived_subgroup(const GroupTable& t);
// Phi(G) = G^p [G, G], elementwise.
Subgroup frattini_subgroup(const GroupTable& t);
// Normal closure of {g_i^p} and {[g_i, g_j]} over the table's generators.
Subgroup frattini_from_generators(const GroupTable& t);

bool is_abelian(const GroupTable& t);

struct PowerfulResult {
  bool powerful = false;
  // A commutator [x, g] outside G^p when not powerful.
  std::optional<ElemId> witness;
  ElemId witness_x = 0;
  ElemId witness_g = 0;
};

// [G, G] <= G^p (the criterion for odd p).
PowerfulResult is_powerful(const GroupTable& t);

// dim G/Phi(G).
std::size_t generator_rank(const GroupTable& t);

// F_p coordinates on an elementary abelian section top/bottom, bottom normal
// in G and top/bottom central in G/bottom.
class LayerCoordinates {
 public:
  LayerCoordinates(const GroupTable& t, const Subgroup& top, const Subgroup& bottom);

  std::size_t rank() const { return basis_.size(); }
  // Elements of top whose images form the basis.
  const std::vector<ElemId>& basis() const { return basis_; }
  bool in_top(ElemId x) const { return coset_of_[x] != kOutside; }
  // Coordinates of x (must lie in top).
  VecFp coords(ElemId x) const;

 private:
  static constexpr std::uint32_t kOutside = ~std::uint32_t{0};
  std::vector<std::uint32_t> coset_of_;
  std::vector<VecFp> coords_of_coset_;
  std::vector<ElemId> basis_;
};

std::vector<LayerCoordinates> layer_coordinates(const GroupTable& t, const CentralSeries& s);

// Matrix of x -> x^p from layer i to layer i+1 (columns are images of the
// layer-i basis). Meaningful when the map is a homomorphism, e.g. G powerful.
MatFp p_power_layer_map(const GroupTable& t, const std::vector<LayerCoordinates>& layers,
                        std::size_t i);

// Largest m such that for all i < m (1-based layers) the p-power map
// G_i/G_{i+1} -> G_{i+1}/G_{i+2} is surjective between layers of equal rank.
// Throws InputError when the group is not powerful.
std::size_t layer_regular_depth(const CentralSeries& s, const GroupTable& t);

struct StructureReport {
  std::size_t order_exponent = 0;
  std::size_t d = 0;
  bool abelian = false;
  bool powerful = false;
  std::optional<ElemId> powerful_witness;
  // Only computed for powerful groups.
  std::optional<std::size_t> layer_regular_depth;
  // Powerful with all observed layers of equal rank. Uniformity itself is a
  // property of infinite groups and is not decided here.
  bool uniform_quotient_candidate = false;
  CentralSeries central_series;
};

StructureReport analyze_structure(const GroupTable& t);

}  // namespace propp
