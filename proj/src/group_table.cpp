#include "propp/group_table.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "propp/errors.hpp"

namespace propp {

GroupTable::GroupTable(unsigned p, std::vector<ElemId> mult, std::vector<Element> labels,
                       std::vector<ElemId> generators)
    : p_(p), mult_(std::move(mult)), labels_(std::move(labels)), generators_(std::move(generators)) {
  std::size_t n = 0;
  while (n * n < mult_.size()) ++n;
  if (n * n != mult_.size() || n == 0) throw InputError("multiplication table is not square");
  order_ = n;
  if (!labels_.empty() && labels_.size() != n) throw InputError("label count does not match order");

  // Latin square: every row and column is a permutation.
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t a = 0; a < n; ++a) {
    ++stamp;
    for (std::size_t b = 0; b < n; ++b) {
      ElemId x = mult_[a * n + b];
      if (x >= n || seen[x] == stamp) throw InputError("table row is not a permutation");
      seen[x] = stamp;
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mult_[e * n + x] == x && mult_[x * n + e] == x;
    if (ok) {
      identity_ = static_cast<ElemId>(e);
      found = true;
    }
  }
  if (!found) throw InputError("table has no identity element");
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (mult_[a * n + b] == identity_) {
        if (mult_[b * n + a] != identity_) throw InputError("left and right inverses differ");
        inverse_[a] = static_cast<ElemId>(b);
        break;
      }
    }
  }
  for (ElemId g : generators_)
    if (g >= n) throw InputError("generator index out of range");
}

ElemId GroupTable::power(ElemId a, unsigned long long k) const {
  ElemId result = identity_, base = a;
  for (; k; k >>= 1) {
    if (k & 1ull) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::size_t GroupTable::log_order() const {
  std::size_t k = 0, q = 1;
  while (q < order_) {
    q *= p_;
    ++k;
  }
  if (q != order_) throw InconsistencyFault("group order is not a power of p");
  return k;
}

ElemId GroupTable::index_of(const Element& e, unsigned p) {
  std::size_t idx = 0, scale = 1;
  for (Exponent x : e.exps) {
    idx += x * scale;
    scale *= p;
  }
  return static_cast<ElemId>(idx);
}

GroupTable build_table(const PcPresentation& pres, std::size_t cap, AssociativityReport* report) {
  const unsigned p = pres.prime();
  const std::size_t n = pres.ngens();
  std::size_t order = 1;
  for (std::size_t k = 0; k < n; ++k) {
    order *= p;
    if (order > cap)
      throw CapExceeded("group order " + std::to_string(p) + "^" + std::to_string(n) +
                        " exceeds the table cap of " + std::to_string(cap) + " elements");
  }

  std::vector<Element> labels(order, Element(n));
  std::vector<std::size_t> place(n, 1);
  for (std::size_t k = 1; k < n; ++k) place[k] = place[k - 1] * p;
  for (std::size_t idx = 0; idx < order; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < n; ++k) {
      labels[idx].exps[k] = static_cast<Exponent>(rest % p);
      rest /= p;
    }
  }

  // a * g_k by rewriting the letter sequence of a followed by g_k.
  std::vector<ElemId> right_gen(order * n);
  for (std::size_t a = 0; a < order; ++a) {
    std::vector<std::size_t> letters;
    for (std::size_t k = 0; k < n; ++k) letters.insert(letters.end(), labels[a].exps[k], k);
    for (std::size_t k = 0; k < n; ++k) {
      auto word = letters;
      word.push_back(k);
      right_gen[a * n + k] = GroupTable::index_of(rewrite_normal_form(pres, std::move(word)), p);
    }
  }

  // b = b' * g_m with m the last generator occurring in b.
  std::vector<ElemId> mult(order * order);
  for (std::size_t a = 0; a < order; ++a) mult[a * order] = static_cast<ElemId>(a);
  for (std::size_t b = 1; b < order; ++b) {
    std::size_t m = n;
    while (labels[b].exps[m - 1] == 0) --m;
    const std::size_t last = m - 1, prev = b - place[last];
    for (std::size_t a = 0; a < order; ++a)
      mult[a * order + b] = right_gen[std::size_t(mult[a * order + prev]) * n + last];
  }

  std::vector<ElemId> gens;
  for (std::size_t k = 0; k < n; ++k) gens.push_back(static_cast<ElemId>(place[k]));
  GroupTable table(p, std::move(mult), std::move(labels), std::move(gens));

  AssociativityReport local;
  auto check = [&](ElemId x, ElemId y, ElemId z) {
    if (table.mul(table.mul(x, y), z) != table.mul(x, table.mul(y, z)))
      throw InputError("multiplication table is not associative: the presentation is inconsistent");
    ++local.triples_checked;
  };
  if (order <= 625) {
    local.exhaustive = true;
    for (ElemId x = 0; x < order; ++x)
      for (ElemId y = 0; y < order; ++y)
        for (ElemId z = 0; z < order; ++z) check(x, y, z);
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(order - 1));
    for (int s = 0; s < 200000; ++s) check(pick(rng), pick(rng), pick(rng));
  }
  if (report) *report = local;
  return table;
}

Subgroup::Subgroup(std::size_t group_order, std::vector<ElemId> elements)
    : elements_(std::move(elements)), mask_(group_order, false) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (ElemId x : elements_) mask_.at(x) = true;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](ElemId x) { return other.contains(x); });
}

namespace {

// Closure of a fixed generator list: all products, which in a finite group
// is the generated subgroup.
std::vector<bool> close_mask(const GroupTable& t, const std::vector<ElemId>& gens,
                             std::vector<ElemId>& elements) {
  std::vector<bool> mask(t.order(), false);
  elements.assign(1, t.identity());
  mask[t.identity()] = true;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (ElemId g : gens) {
      ElemId y = t.mul(elements[k], g);
      if (!mask[y]) {
        mask[y] = true;
        elements.push_back(y);
      }
    }
  }
  return mask;
}

}  // namespace

Subgroup subgroup_closure(const GroupTable& t, std::span<const ElemId> seed) {
  std::vector<ElemId> gens, elements;
  std::vector<bool> mask = close_mask(t, gens, elements);
  for (ElemId s : seed) {
    if (s >= t.order()) throw InputError("seed element out of range");
    if (mask[s]) continue;
    gens.push_back(s);
    mask = close_mask(t, gens, elements);
  }
  return Subgroup(t.order(), std::move(elements));
}

Subgroup trivial_subgroup(const GroupTable& t) { return Subgroup(t.order(), {t.identity()}); }

Subgroup whole_group(const GroupTable& t) {
  std::vector<ElemId> all(t.order());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<ElemId>(k);
  return Subgroup(t.order(), std::move(all));
}

Subgroup normal_closure(const GroupTable& t, std::span<const ElemId> seed) {
  std::vector<ElemId> gens(seed.begin(), seed.end());
  while (true) {
    Subgroup h = subgroup_closure(t, gens);
    bool grew = false;
    const std::size_t count = gens.size();
    for (std::size_t k = 0; k < count; ++k) {
      for (ElemId g : t.generators()) {
        ElemId c = t.conjugate(gens[k], g);
        if (!h.contains(c)) {
          gens.push_back(c);
          grew = true;
        }
      }
    }
    if (!grew) return h;
  }
}

std::optional<NormalityWitness> normality_violation(const GroupTable& t, const Subgroup& n) {
  for (ElemId x : n.elements())
    for (ElemId g : t.generators())
      if (!n.contains(t.conjugate(x, g))) return NormalityWitness{x, g};
  return std::nullopt;
}

CosetMap cosets(const GroupTable& t, const Subgroup& n) {
  CosetMap map;
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  map.coset_of.assign(t.order(), kUnset);
  for (ElemId x = 0; x < t.order(); ++x) {
    if (map.coset_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(map.representatives.size());
    map.representatives.push_back(x);
    for (ElemId h : n.elements()) map.coset_of[t.mul(x, h)] = id;
  }
  return map;
}

GroupTable quotient_table(const GroupTable& t, const Subgroup& n) {
  if (auto w = normality_violation(t, n)) {
    throw InputError("subgroup is not normal: conjugating element " + std::to_string(w->element) +
                     " by generator " + std::to_string(w->conjugator) + " leaves the subgroup");
  }
  CosetMap map = cosets(t, n);
  const std::size_t q = map.representatives.size();
  std::vector<ElemId> mult(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      mult[a * q + b] = map.coset_of[t.mul(map.representatives[a], map.representatives[b])];
  std::vector<Element> labels;
  if (!t.labels().empty())
    for (ElemId r : map.representatives) labels.push_back(t.labels()[r]);
  std::vector<ElemId> gens;
  const std::uint32_t identity_coset = map.coset_of[t.identity()];
  for (ElemId g : t.generators()) {
    ElemId c = map.coset_of[g];
    if (c != identity_coset && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  return GroupTable(t.prime(), std::move(mult), std::move(labels), std::move(gens));
}

}  // namespace propp
