#include "propp/structure.hpp"

#include <algorithm>
#include <set>

#include "propp/errors.hpp"

namespace propp {

namespace {

// Subgroup generated by elements fed one at a time; only elements outside the
// current subgroup trigger a re-closure, so at most log_p |G| closures run.
class ClosureBuilder {
 public:
  explicit ClosureBuilder(const GroupTable& t) : t_(t), mask_(t.order(), false) {
    elements_.push_back(t.identity());
    mask_[t.identity()] = true;
  }

  void add(ElemId s) {
    if (mask_[s]) return;
    gens_.push_back(s);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      for (ElemId g : gens_) {
        ElemId y = t_.mul(elements_[k], g);
        if (!mask_[y]) {
          mask_[y] = true;
          elements_.push_back(y);
        }
      }
    }
  }

  Subgroup finish() const { return Subgroup(t_.order(), elements_); }

 private:
  const GroupTable& t_;
  std::vector<bool> mask_;
  std::vector<ElemId> elements_;
  std::vector<ElemId> gens_;
};

std::size_t log_index(std::size_t big, std::size_t small, unsigned p) {
  std::size_t q = big / small, k = 0;
  while (q > 1) {
    q /= p;
    ++k;
  }
  return k;
}

}  // namespace

Subgroup power_subgroup(const GroupTable& t, const Subgroup& h) {
  ClosureBuilder b(t);
  for (ElemId x : h.elements()) b.add(t.power(x, t.prime()));
  return b.finish();
}

std::vector<ElemId> power_set(const GroupTable& t, const Subgroup& h) {
  std::vector<ElemId> out;
  for (ElemId x : h.elements()) out.push_back(t.power(x, t.prime()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subgroup commutator_subgroup(const GroupTable& t, const Subgroup& a_set, const Subgroup& b_set) {
  ClosureBuilder b(t);
  for (ElemId x : a_set.elements())
    for (ElemId g : b_set.elements()) b.add(t.commutator(x, g));
  return b.finish();
}

Subgroup derived_subgroup(const GroupTable& t) {
  Subgroup g = whole_group(t);
  return commutator_subgroup(t, g, g);
}

Subgroup frattini_subgroup(const GroupTable& t) {
  ClosureBuilder b(t);
  for (ElemId x = 0; x < t.order(); ++x) b.add(t.power(x, t.prime()));
  for (ElemId x = 0; x < t.order(); ++x)
    for (ElemId g = 0; g < t.order(); ++g) b.add(t.commutator(x, g));
  return b.finish();
}

Subgroup frattini_from_generators(const GroupTable& t) {
  std::vector<ElemId> seed;
  const auto& gens = t.generators();
  for (ElemId g : gens) seed.push_back(t.power(g, t.prime()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) seed.push_back(t.commutator(gens[j], gens[i]));
  return normal_closure(t, seed);
}

CentralSeries p_central_series(const GroupTable& t) {
  CentralSeries s;
  s.terms.push_back(whole_group(t));
  while (s.terms.back().size() > 1) {
    const Subgroup& cur = s.terms.back();
    ClosureBuilder b(t);
    for (ElemId x : cur.elements()) b.add(t.power(x, t.prime()));
    for (ElemId x : cur.elements())
      for (ElemId g = 0; g < t.order(); ++g) b.add(t.commutator(x, g));
    Subgroup next = b.finish();
    if (next.size() == cur.size())
      throw InconsistencyFault("p-central series stalled; the group is not a p-group");
    s.layer_ranks.push_back(log_index(cur.size(), next.size(), t.prime()));
    s.terms.push_back(std::move(next));
  }
  return s;
}

bool is_abelian(const GroupTable& t) {
  const auto& gens = t.generators();
  for (ElemId a : gens)
    for (ElemId b : gens)
      if (t.mul(a, b) != t.mul(b, a)) return false;
  return true;
}

PowerfulResult is_powerful(const GroupTable& t) {
  if (t.prime() == 2) throw InputError("p must be odd");
  Subgroup powers = power_subgroup(t, whole_group(t));
  PowerfulResult r;
  for (ElemId x = 0; x < t.order(); ++x) {
    for (ElemId g = 0; g < t.order(); ++g) {
      ElemId c = t.commutator(x, g);
      if (!powers.contains(c)) {
        r.witness = c;
        r.witness_x = x;
        r.witness_g = g;
        return r;
      }
    }
  }
  r.powerful = true;
  return r;
}

std::size_t generator_rank(const GroupTable& t) {
  return log_index(t.order(), frattini_subgroup(t).size(), t.prime());
}

LayerCoordinates::LayerCoordinates(const GroupTable& t, const Subgroup& top, const Subgroup& bottom)
    : coset_of_(t.order(), kOutside) {
  for (ElemId x : top.elements()) {
    if (coset_of_[x] != kOutside) continue;
    const auto id = static_cast<std::uint32_t>(coords_of_coset_.size());
    coords_of_coset_.emplace_back();
    for (ElemId h : bottom.elements()) coset_of_[t.mul(x, h)] = id;
  }
  const std::size_t ncosets = coords_of_coset_.size();
  std::vector<bool> known(ncosets, false);
  std::vector<std::pair<ElemId, VecFp>> entries{{t.identity(), {}}};
  known[coset_of_[t.identity()]] = true;
  for (ElemId x : top.elements()) {
    if (known[coset_of_[x]]) continue;
    const std::size_t k = basis_.size();
    basis_.push_back(x);
    const std::size_t snapshot = entries.size();
    ElemId xt = t.identity();
    for (unsigned step = 1; step < t.prime(); ++step) {
      xt = t.mul(xt, x);
      for (std::size_t e = 0; e < snapshot; ++e) {
        ElemId z = t.mul(entries[e].first, xt);
        VecFp v = entries[e].second;
        v.resize(k + 1, 0);
        v[k] = static_cast<Residue>(step);
        const std::uint32_t c = coset_of_[z];
        if (c == kOutside || known[c])
          throw InconsistencyFault("section is not elementary abelian");
        known[c] = true;
        coords_of_coset_[c] = v;
        entries.emplace_back(z, std::move(v));
      }
    }
  }
  if (entries.size() != ncosets) throw InconsistencyFault("layer coordinates do not cover the section");
}

VecFp LayerCoordinates::coords(ElemId x) const {
  if (coset_of_[x] == kOutside) throw InputError("element outside the layer");
  VecFp v = coords_of_coset_[coset_of_[x]];
  v.resize(rank(), 0);
  return v;
}

std::vector<LayerCoordinates> layer_coordinates(const GroupTable& t, const CentralSeries& s) {
  std::vector<LayerCoordinates> out;
  for (std::size_t i = 0; i < s.length(); ++i) out.emplace_back(t, s.terms[i], s.terms[i + 1]);
  return out;
}

MatFp p_power_layer_map(const GroupTable& t, const std::vector<LayerCoordinates>& layers,
                        std::size_t i) {
  const auto& src = layers.at(i);
  const std::size_t target_rank = i + 1 < layers.size() ? layers[i + 1].rank() : 0;
  MatFp m(t.prime(), target_rank, src.rank());
  if (target_rank == 0) return m;
  for (std::size_t c = 0; c < src.rank(); ++c) {
    VecFp v = layers[i + 1].coords(t.power(src.basis()[c], t.prime()));
    for (std::size_t r = 0; r < target_rank; ++r) m.set(r, c, v[r]);
  }
  return m;
}

std::size_t layer_regular_depth(const CentralSeries& s, const GroupTable& t) {
  if (!is_powerful(t).powerful)
    throw InputError("layer regularity is only defined here for powerful groups");
  if (s.length() == 0) return 0;
  auto layers = layer_coordinates(t, s);
  std::size_t depth = 1;
  for (std::size_t i = 0; i < s.length(); ++i) {
    const std::size_t next_rank = i + 1 < s.length() ? s.layer_ranks[i + 1] : 0;
    if (s.layer_ranks[i] != next_rank || next_rank == 0) break;
    // Surjectivity by enumerating p-th powers of G_i modulo G_{i+2}.
    std::set<VecFp> image;
    for (ElemId x : s.terms[i].elements()) image.insert(layers[i + 1].coords(t.power(x, t.prime())));
    std::size_t expected = 1;
    for (std::size_t k = 0; k < next_rank; ++k) expected *= t.prime();
    if (image.size() != expected) break;
    ++depth;
  }
  return depth;
}

StructureReport analyze_structure(const GroupTable& t) {
  StructureReport r;
  r.order_exponent = t.log_order();
  r.central_series = p_central_series(t);
  r.d = r.central_series.length() ? r.central_series.layer_ranks[0] : 0;
  r.abelian = is_abelian(t);
  auto pw = is_powerful(t);
  r.powerful = pw.powerful;
  r.powerful_witness = pw.witness;
  if (r.powerful) {
    r.layer_regular_depth = layer_regular_depth(r.central_series, t);
    const auto& ranks = r.central_series.layer_ranks;
    r.uniform_quotient_candidate =
        !ranks.empty() && std::all_of(ranks.begin(), ranks.end(), [&](std::size_t x) { return x == ranks[0]; });
  }
  return r;
}

}  // namespace propp
