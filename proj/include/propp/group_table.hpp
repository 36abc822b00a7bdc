#pragma once

// Fully materialized finite groups: multiplication tables, subgroups and
// quotients computed elementwise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "propp/pc_presentation.hpp"

namespace propp {

using ElemId = std::uint32_t;

// Default bound on the number of elements of a materialized table (3^7).
inline constexpr std::size_t kDefaultTableCap = 2187;

class GroupTable {
 public:
  // Takes ownership of a complete Cayley table; checks identity and inverse
  // laws. `labels` may be empty; `generators` must generate the group.
  GroupTable(unsigned p, std::vector<ElemId> mult, std::vector<Element> labels,
             std::vector<ElemId> generators);

  unsigned prime() const { return p_; }
  std::size_t order() const { return order_; }
  ElemId identity() const { return identity_; }

  ElemId mul(ElemId a, ElemId b) const { return mult_[std::size_t(a) * order_ + b]; }
  ElemId inv(ElemId a) const { return inverse_[a]; }
  ElemId power(ElemId a, unsigned long long k) const;
  // [a, b] = a^-1 b^-1 a b
  ElemId commutator(ElemId a, ElemId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  // a^g = g^-1 a g
  ElemId conjugate(ElemId a, ElemId g) const { return mul(mul(inv(g), a), g); }

  const std::vector<Element>& labels() const { return labels_; }
  const std::vector<ElemId>& generators() const { return generators_; }
  // Exponent of p in the order.
  std::size_t log_order() const;

  // Table index of an exponent vector, for tables built from presentations.
  static ElemId index_of(const Element& e, unsigned p);

 private:
  unsigned p_;
  std::size_t order_;
  std::vector<ElemId> mult_;
  std::vector<ElemId> inverse_;
  ElemId identity_ = 0;
  std::vector<Element> labels_;
  std::vector<ElemId> generators_;
};

struct AssociativityReport {
  bool exhaustive = false;
  std::size_t triples_checked = 0;
};

// Builds the table by closure: right multiplication by each generator is
// obtained from rewrite_normal_form, every other product by extending along
// the normal word of the right factor. Associativity is re-verified on all
// triples up to 625 elements and on seeded samples above that.
// Throws CapExceeded when p^n > cap and InputError when a law fails.
GroupTable build_table(const PcPresentation& pres, std::size_t cap = kDefaultTableCap,
                       AssociativityReport* report = nullptr);

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t group_order, std::vector<ElemId> elements);

  std::size_t size() const { return elements_.size(); }
  bool contains(ElemId x) const { return mask_[x]; }
  const std::vector<ElemId>& elements() const { return elements_; }
  bool is_subset_of(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<ElemId> elements_;  // sorted
  std::vector<bool> mask_;
};

// Smallest subgroup containing the seed elements.
Subgroup subgroup_closure(const GroupTable& t, std::span<const ElemId> seed);
Subgroup trivial_subgroup(const GroupTable& t);
Subgroup whole_group(const GroupTable& t);

// Smallest normal subgroup containing the seed.
Subgroup normal_closure(const GroupTable& t, std::span<const ElemId> seed);

struct NormalityWitness {
  ElemId element;    // n in N
  ElemId conjugator; // g with n^g outside N
};
std::optional<NormalityWitness> normality_violation(const GroupTable& t, const Subgroup& n);

// Coset labelling of G by a normal subgroup: coset_of[x] in [0, |G|/|N|),
// representatives[c] is the smallest element of coset c.
struct CosetMap {
  std::vector<std::uint32_t> coset_of;
  std::vector<ElemId> representatives;
};
CosetMap cosets(const GroupTable& t, const Subgroup& n);

// Table on the cosets of a normal subgroup. Representatives' labels are kept
// and generators are mapped to their cosets. Throws InputError naming a
// conjugation witness when n is not normal.
GroupTable quotient_table(const GroupTable& t, const Subgroup& n);

}  // namespace propp
