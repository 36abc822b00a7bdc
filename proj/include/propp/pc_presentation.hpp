#pragma once

// Consistent polycyclic presentations of finite p-groups and element
// arithmetic by collection.
//
// Generators are 0-based here and 1-based in files and reports. Relations:
//   g_i^p      = power_word(i)          (word in generators > i)
//   [g_j, g_i] = commutator_word(j, i)  (j > i, word in generators > j)
// with [x, y] = x^-1 y^-1 x y. Missing relations are the identity.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace propp {

using Exponent = std::uint16_t;

struct Letter {
  std::size_t gen = 0;
  Exponent exp = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Normal word: strictly increasing generator indices, exponents in [1, p).
using Word = std::vector<Letter>;

// Exponent vector of a normal word; the identity is the zero vector.
struct Element {
  std::vector<Exponent> exps;

  Element() = default;
  explicit Element(std::size_t n) : exps(n, 0) {}
  explicit Element(std::vector<Exponent> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  bool is_identity() const;
  friend auto operator<=>(const Element&, const Element&) = default;
};

class PcPresentation {
 public:
  // Validates syntax only: generator indices in range, exponents in [0, p),
  // relation words in strictly higher generators. Throws InputError.
  PcPresentation(unsigned p, std::size_t ngens, std::vector<Word> powers,
                 std::map<std::pair<std::size_t, std::size_t>, Word> commutators);

  unsigned prime() const { return p_; }
  std::size_t ngens() const { return n_; }
  const Word& power_word(std::size_t i) const { return powers_.at(i); }
  // Identity word when the relation was omitted.
  const Word& commutator_word(std::size_t j, std::size_t i) const;
  const std::map<std::pair<std::size_t, std::size_t>, Word>& commutators() const {
    return commutators_;
  }
  bool has_commutator_relations() const;

  Element identity() const { return Element(n_); }
  Element generator(std::size_t i) const;
  Element from_word(const Word& w) const;
  Word to_word(const Element& e) const;
  bool is_valid(const Element& e) const;

  // Collection from the left with an explicit work stack.
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, unsigned long long k) const;
  Element commutator(const Element& a, const Element& b) const;
  // Product of an arbitrary (not necessarily normal) letter sequence.
  Element evaluate(const Word& w) const;

  friend bool operator==(const PcPresentation& a, const PcPresentation& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.powers_ == b.powers_ &&
           a.commutators_ == b.commutators_;
  }

 private:
  void multiply_in_place(Element& acc, const Element& rhs) const;
  void push_element(std::vector<std::size_t>& stack, const Element& e) const;

  unsigned p_;
  std::size_t n_;
  std::vector<Word> powers_;
  std::map<std::pair<std::size_t, std::size_t>, Word> commutators_;
  // conj_[j][i] = g_i^-1 g_j g_i = g_j [g_j, g_i] for i < j, in normal form.
  std::vector<std::vector<Element>> conj_;
  std::vector<Element> power_elems_;
};

// Normal form of a letter sequence by naive leftmost rewriting
// (g_j g_i -> g_i g_j [g_j,g_i], g_i^p -> power word). Shares no code with
// the collector above; used to build the table oracle.
Element rewrite_normal_form(const PcPresentation& pres, std::vector<std::size_t> letters);

struct ConsistencyViolation {
  std::string test;  // e.g. "g3 (g2 g1) = (g3 g2) g1"
  Element lhs;
  Element rhs;
};

struct ConsistencyResult {
  std::vector<ConsistencyViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Runs the standard overlap tests for pc-presentations of p-groups:
//   g_k (g_j g_i) = (g_k g_j) g_i        k > j > i
//   (g_j^p) g_i   = g_j^(p-1) (g_j g_i)  j > i
//   g_j (g_i^p)   = (g_j g_i) g_i^(p-1)  j > i
//   g_i (g_i^p)   = (g_i^p) g_i
ConsistencyResult consistency_check(const PcPresentation& pres);

// Throws InputError listing the first violations if the check fails.
void require_consistent(const PcPresentation& pres);

std::string format_word(const Word& w);
std::string format_element(const PcPresentation& pres, const Element& e);

}  // namespace propp
