#include "propp/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "propp/errors.hpp"
#include "propp/structure.hpp"

namespace propp {

namespace {

constexpr std::size_t kStallBeforeCertify = 64;

}  // namespace

SecondCohomology::SecondCohomology(const GroupTable& t, std::size_t cap)
    : t_(&t), field_(t.prime()), order_(t.order()) {
  if (order_ > cap)
    throw CapExceeded("cocycle computation needs |G| <= " + std::to_string(cap) + ", group has " +
                      std::to_string(order_) + " elements");
  const std::size_t n = order_;
  const ElemId one = t.identity();
  if (n == 1) return;

  LayerCoordinates frattini_quotient(t, whole_group(t), frattini_subgroup(t));
  gens_ = frattini_quotient.basis();
  const std::size_t d = gens_.size();

  parent_gen_.assign(n, 0);
  parent_node_.assign(n, one);
  std::vector<bool> seen(n, false);
  seen[one] = true;
  bfs_order_.push_back(one);
  for (std::size_t k = 0; k < bfs_order_.size(); ++k) {
    const ElemId y = bfs_order_[k];
    for (std::size_t s = 0; s < d; ++s) {
      const ElemId g = t.mul(gens_[s], y);
      if (seen[g]) continue;
      seen[g] = true;
      parent_gen_[g] = static_cast<std::uint32_t>(s);
      parent_node_[g] = y;
      bfs_order_.push_back(g);
    }
  }
  if (bfs_order_.size() != n) throw InconsistencyFault("generating set does not reach every element");

  std::vector<bool> fixed(d * n, false);
  for (ElemId g = 0; g < n; ++g)
    if (g != one && parent_node_[g] != one) fixed[parent_gen_[g] * n + parent_node_[g]] = true;
  param_.assign(d * n, -1);
  for (std::size_t s = 0; s < d; ++s)
    for (ElemId z = 0; z < n; ++z)
      if (z != one && !fixed[s * n + z]) param_[s * n + z] = static_cast<std::int64_t>(nparams_++);

  // Identities on non-tree edges, in a fixed pseudo-random order so that
  // independent rows show up early; the kernel is certified against every
  // identity before the scan is cut short.
  std::vector<std::uint64_t> constraints;
  for (std::size_t s = 0; s < d; ++s) {
    for (ElemId y = 0; y < n; ++y) {
      const ElemId g = t.mul(gens_[s], y);
      const bool tree_edge = g != one && parent_gen_[g] == s && parent_node_[g] == y;
      if (tree_edge) continue;
      for (ElemId z = 0; z < n; ++z)
        if (z != one) constraints.push_back((std::uint64_t(s) * n + y) * n + z);
    }
  }
  std::mt19937_64 rng(0x5eed2c0c1c1eull);
  std::shuffle(constraints.begin(), constraints.end(), rng);

  EchelonBasis system(t.prime(), nparams_);
  // True when the current kernel already satisfied every identity. Violated
  // identities are added and the kernel recomputed until it is clean.
  auto certify = [&]() {
    bool clean = true;
    while (true) {
      bool added = false;
      for (const VecFp& v : system.kernel()) {
        ElemId s = 0, y = 0, z = 0;
        if (satisfies_cocycle_identity(materialize(v), s, y, z)) continue;
        const auto sidx = static_cast<std::size_t>(std::find(gens_.begin(), gens_.end(), s) - gens_.begin());
        if (system.insert(constraint(sidx, y, z)))
          added = true;
        else if (!added)
          throw InconsistencyFault("violated cocycle identity is already implied");
      }
      if (!added) return clean;
      clean = false;
    }
  };

  std::size_t stall = 0;
  bool certified = false;
  for (std::uint64_t code : constraints) {
    const ElemId z = static_cast<ElemId>(code % n);
    const ElemId y = static_cast<ElemId>((code / n) % n);
    const std::size_t s = static_cast<std::size_t>(code / (std::uint64_t(n) * n));
    if (system.insert(constraint(s, y, z))) {
      stall = 0;
    } else if (++stall == kStallBeforeCertify) {
      stall = 0;
      if (certify()) {
        certified = true;
        break;
      }
    }
  }
  if (!certified) certify();

  free_cols_ = system.free_columns();
  for (const VecFp& v : system.kernel()) basis_.push_back(materialize(v));
}

void SecondCohomology::add_tree_sum(VecFp& v, ElemId g, ElemId z, Residue coeff) const {
  // f(g, z) = sum over the tree path g = s_1 y_1, y_1 = s_2 y_2, ... of f(s_k, y_k z).
  const ElemId one = t_->identity();
  while (g != one) {
    const std::size_t s = parent_gen_[g];
    const ElemId y = parent_node_[g];
    const std::int64_t idx = param_[s * order_ + t_->mul(y, z)];
    if (idx >= 0) v[static_cast<std::size_t>(idx)] = field_.add(v[static_cast<std::size_t>(idx)], coeff);
    g = y;
  }
}

VecFp SecondCohomology::constraint(std::size_t s, ElemId y, ElemId z) const {
  VecFp v(nparams_, 0);
  const Residue minus_one = field_.neg(1);
  const ElemId gen = gens_[s];
  add_tree_sum(v, t_->mul(gen, y), z, 1);
  add_tree_sum(v, y, z, minus_one);
  add_tree_sum(v, gen, t_->mul(y, z), minus_one);
  add_tree_sum(v, gen, y, 1);
  return v;
}

Cochain2 SecondCohomology::materialize(const VecFp& params) const {
  const std::size_t n = order_;
  const ElemId one = t_->identity();
  Cochain2 f(n * n, 0);
  for (std::size_t s = 0; s < gens_.size(); ++s)
    for (ElemId z = 0; z < n; ++z) {
      const std::int64_t idx = param_[s * n + z];
      if (idx >= 0) f[std::size_t(gens_[s]) * n + z] = params[static_cast<std::size_t>(idx)];
    }
  for (ElemId g : bfs_order_) {
    if (g == one || parent_node_[g] == one) continue;
    const ElemId gen = gens_[parent_gen_[g]], y = parent_node_[g];
    const Residue fy = f[std::size_t(gen) * n + y];
    for (ElemId z = 0; z < n; ++z) {
      Residue val = field_.add(f[std::size_t(y) * n + z], f[std::size_t(gen) * n + t_->mul(y, z)]);
      f[std::size_t(g) * n + z] = field_.sub(val, fy);
    }
  }
  return f;
}

bool SecondCohomology::satisfies_cocycle_identity(const Cochain2& f, ElemId& s_out, ElemId& y_out,
                                                  ElemId& z_out) const {
  const std::size_t n = order_;
  for (ElemId s : gens_) {
    for (ElemId y = 0; y < n; ++y) {
      const ElemId sy = t_->mul(s, y);
      const Residue fsy = f[std::size_t(s) * n + y];
      for (ElemId z = 0; z < n; ++z) {
        Residue rhs = field_.sub(field_.add(f[std::size_t(y) * n + z], f[std::size_t(s) * n + t_->mul(y, z)]), fsy);
        if (f[std::size_t(sy) * n + z] != rhs) {
          s_out = s;
          y_out = y;
          z_out = z;
          return false;
        }
      }
    }
  }
  return true;
}

VecFp SecondCohomology::class_of(const Cochain2& f) const {
  const std::size_t n = order_;
  const ElemId one = t_->identity();
  if (f.size() != n * n) throw InputError("cochain has the wrong size");
  for (ElemId x = 0; x < n; ++x)
    if (f[std::size_t(one) * n + x] != 0 || f[std::size_t(x) * n + one] != 0)
      throw InputError("cochain is not normalized");
  ElemId s = 0, y = 0, z = 0;
  if (!satisfies_cocycle_identity(f, s, y, z)) throw InputError("cochain is not a cocycle");
  if (n == 1) return {};

  // phi along the tree so that f + d(phi) vanishes on tree edges.
  std::vector<Residue> phi(n, 0);
  for (ElemId g : bfs_order_) {
    if (g == one || parent_node_[g] == one) continue;
    const ElemId gen = gens_[parent_gen_[g]], yy = parent_node_[g];
    phi[g] = field_.add(f[std::size_t(gen) * n + yy], phi[yy]);
  }
  Cochain2 fixed(n * n);
  for (ElemId a = 0; a < n; ++a)
    for (ElemId b = 0; b < n; ++b)
      fixed[std::size_t(a) * n + b] =
          field_.add(field_.sub(field_.add(f[std::size_t(a) * n + b], phi[b]), phi[t_->mul(a, b)]), phi[a]);
  VecFp params(nparams_, 0);
  for (std::size_t si = 0; si < gens_.size(); ++si)
    for (ElemId zz = 0; zz < n; ++zz) {
      const std::int64_t idx = param_[si * n + zz];
      if (idx >= 0) params[static_cast<std::size_t>(idx)] = fixed[std::size_t(gens_[si]) * n + zz];
    }
  if (materialize(params) != fixed) throw InconsistencyFault("gauge-fixed cocycle does not match its parameters");
  VecFp coords;
  for (std::size_t c : free_cols_) coords.push_back(params[c]);
  return coords;
}

MatFp SecondCohomology::action_matrix(const std::vector<ElemId>& sigma) const {
  const std::size_t n = order_;
  if (sigma.size() != n) throw InputError("sigma permutation has the wrong size");
  MatFp m(t_->prime(), dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const Cochain2& f = basis_[k];
    Cochain2 g(n * n);
    for (ElemId x = 0; x < n; ++x)
      for (ElemId y = 0; y < n; ++y) g[std::size_t(x) * n + y] = f[std::size_t(sigma[x]) * n + sigma[y]];
    VecFp c = class_of(g);
    for (std::size_t r = 0; r < dim(); ++r) m.set(r, k, c[r]);
  }
  return m;
}

SecondCohomology h2_dim_brute(const GroupTable& t, std::size_t cap) { return SecondCohomology(t, cap); }

H2Splits h2_eigensplit(const SecondCohomology& h2, const InvolutionAction& act) {
  if (act.permutation().empty())
    throw InputError("cohomology eigensplit needs an exhaustively validated involution");
  auto split = eigensplit_involution(h2.action_matrix(act.permutation()));
  return {split.dim_plus, split.dim_minus};
}

H2Splits h2_eigensplit(const GroupTable& t, const InvolutionAction& act, std::size_t cap) {
  return h2_eigensplit(SecondCohomology(t, cap), act);
}

H2Splits kunneth_dims(std::size_t d_plus, std::size_t d_minus) {
  auto choose2 = [](std::size_t x) { return x < 2 ? 0 : x * (x - 1) / 2; };
  return {d_plus + choose2(d_plus) + choose2(d_minus), d_minus + d_plus * d_minus};
}

QpZpDims p_h2_qpzp_dims(std::size_t h2, H2Splits h2_split, std::size_t d, EigenSplit h1_split) {
  if (h2 < d || h2_split.plus < h1_split.d_plus || h2_split.minus < h1_split.d_minus)
    throw InconsistencyFault("H^2 dimension below the Bockstein image: h2 = " + std::to_string(h2) +
                             " (" + std::to_string(h2_split.plus) + "+, " + std::to_string(h2_split.minus) +
                             "-), d = " + std::to_string(d) + " (" + std::to_string(h1_split.d_plus) +
                             "+, " + std::to_string(h1_split.d_minus) + "-)");
  return {h2 - d, h2_split.plus - h1_split.d_plus, h2_split.minus - h1_split.d_minus};
}

EigenSplit h1_eigensplit(const InvolutionAction& act) {
  if (act.matrices_on_layers().empty()) return {0, 0};
  auto split = eigensplit_involution(act.matrix_on_frattini().transpose());
  return {split.dim_plus, split.dim_minus};
}

CohomologyReport cohomology_report(const SecondCohomology& h2, const InvolutionAction& act) {
  CohomologyReport r;
  const EigenSplit h1 = h1_eigensplit(act);
  r.h1 = h2.generator_rank();
  if (h1.d_plus + h1.d_minus != r.h1) throw InconsistencyFault("H^1 split does not add up to d(G)");
  r.h1_plus = h1.d_plus;
  r.h1_minus = h1.d_minus;
  const H2Splits split = h2.dim() ? h2_eigensplit(h2, act) : H2Splits{};
  r.h2 = h2.dim();
  r.h2_plus = split.plus;
  r.h2_minus = split.minus;
  const QpZpDims q = p_h2_qpzp_dims(r.h2, split, r.h1, h1);
  r.p_h2_qpzp = q.total;
  r.p_h2_qpzp_plus = q.plus;
  r.p_h2_qpzp_minus = q.minus;
  r.dim_z2 = h2.dim_cocycles();
  r.dim_b2 = h2.dim_coboundaries();
  return r;
}

CohomologyReport cohomology_report(const GroupTable& t, const InvolutionAction& act, std::size_t cap) {
  return cohomology_report(SecondCohomology(t, cap), act);
}

}  // namespace propp
