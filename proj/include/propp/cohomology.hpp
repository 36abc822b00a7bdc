#pragma once

// Mod-p cohomology of finite p-groups with trivial coefficients: H^1, H^2 by
// cocycle linear algebra, sigma-eigensplits, closed-form Kunneth counts and
// the dimensions of pH^2(G, Q_p/Z_p) read off the Bockstein sequence
//   0 -> (pG^ab)^dual -> H^2(G, Z/p) -> pH^2(G, Q_p/Z_p) -> 0.

#include <cstddef>
#include <utility>
#include <vector>

#include "propp/fp_linalg.hpp"
#include "propp/group_table.hpp"
#include "propp/involution.hpp"

namespace propp {

inline constexpr std::size_t kDefaultBruteCap = 256;

// Normalized 2-cochain as a |G| x |G| table, f[x * |G| + y] = f(x, y).
using Cochain2 = std::vector<Residue>;

// H^2(G, F_p) for a materialized group.
//
// Method: a normalized f is a cocycle iff
//   f(s y, z) = f(y, z) + f(s, y z) - f(s, y)
// for s in a minimal generating set S and all y, z (the coboundary of the
// defect vanishes, so the identity propagates from S to all of G). Fix a
// breadth-first spanning tree of G under left multiplication by S; every
// class has a unique representative with f(s, y) = 0 on tree edges s*y
// (y != 1), because the remaining gauge freedom consists of homomorphisms.
// The representative is then determined by the values f(s, z), and the
// identities on non-tree edges cut out exactly H^2.
class SecondCohomology {
 public:
  explicit SecondCohomology(const GroupTable& t, std::size_t cap = kDefaultBruteCap);

  std::size_t dim() const { return basis_.size(); }
  std::size_t dim_cocycles() const { return dim() + dim_coboundaries(); }
  std::size_t dim_coboundaries() const { return order_ - 1 - gens_.size(); }
  std::size_t generator_rank() const { return gens_.size(); }
  // Cocycle representatives of a basis of H^2.
  const std::vector<Cochain2>& basis() const { return basis_; }

  // Coordinates of the class of a normalized cocycle in the basis above.
  // Throws InputError when f is not a normalized cocycle.
  VecFp class_of(const Cochain2& f) const;
  // Matrix of (sigma . f)(x, y) = f(sigma x, sigma y) on H^2.
  MatFp action_matrix(const std::vector<ElemId>& sigma) const;

 private:
  Cochain2 materialize(const VecFp& params) const;
  bool satisfies_cocycle_identity(const Cochain2& f, ElemId& s, ElemId& y, ElemId& z) const;
  VecFp constraint(std::size_t s, ElemId y, ElemId z) const;
  void add_tree_sum(VecFp& v, ElemId g, ElemId z, Residue coeff) const;

  const GroupTable* t_;
  PrimeField field_;
  std::size_t order_;
  std::vector<ElemId> gens_;
  std::vector<ElemId> bfs_order_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<ElemId> parent_node_;
  std::vector<std::int64_t> param_;  // index s * |G| + z, -1 when fixed to 0
  std::size_t nparams_ = 0;
  std::vector<std::size_t> free_cols_;
  std::vector<Cochain2> basis_;
};

struct H2Splits {
  std::size_t plus = 0;
  std::size_t minus = 0;
  friend bool operator==(const H2Splits&, const H2Splits&) = default;
};

// dim H^2(G, F_p) with cocycle representatives; CapExceeded above `cap`.
SecondCohomology h2_dim_brute(const GroupTable& t, std::size_t cap = kDefaultBruteCap);

H2Splits h2_eigensplit(const SecondCohomology& h2, const InvolutionAction& act);
H2Splits h2_eigensplit(const GroupTable& t, const InvolutionAction& act,
                       std::size_t cap = kDefaultBruteCap);

// Split of H^2 of an elementary abelian group with d+ fixed and d- negated
// basis vectors: (d+ + C(d+,2) + C(d-,2), d- + d+ d-).
H2Splits kunneth_dims(std::size_t d_plus, std::size_t d_minus);

struct QpZpDims {
  std::size_t total = 0;
  std::size_t plus = 0;
  std::size_t minus = 0;
};

// (h2 - d, h2+ - d+, h2- - d-); throws InconsistencyFault on a negative entry.
QpZpDims p_h2_qpzp_dims(std::size_t h2, H2Splits h2_split, std::size_t d, EigenSplit h1_split);

struct CohomologyReport {
  std::size_t h1 = 0, h1_plus = 0, h1_minus = 0;
  std::size_t h2 = 0, h2_plus = 0, h2_minus = 0;
  std::size_t p_h2_qpzp = 0, p_h2_qpzp_plus = 0, p_h2_qpzp_minus = 0;
  std::size_t dim_z2 = 0, dim_b2 = 0;
};

// sigma acts on H^1 = Hom(G/Phi, F_p) by precomposition, i.e. by the
// transpose of the Frattini-quotient matrix.
EigenSplit h1_eigensplit(const InvolutionAction& act);

CohomologyReport cohomology_report(const GroupTable& t, const InvolutionAction& act,
                                   std::size_t cap = kDefaultBruteCap);
CohomologyReport cohomology_report(const SecondCohomology& h2, const InvolutionAction& act);

}  // namespace propp
