#include "propp/pc_presentation.hpp"

#include <algorithm>
#include <sstream>

#include "propp/errors.hpp"
#include "propp/fp_linalg.hpp"

namespace propp {

namespace {

const Word kEmptyWord{};

void check_word(const Word& w, std::size_t lowest_allowed, std::size_t ngens, unsigned p,
                const std::string& what) {
  std::size_t prev = 0;
  bool first = true;
  for (const Letter& l : w) {
    if (l.gen >= ngens)
      throw InputError(what + ": generator g" + std::to_string(l.gen + 1) +
                       " is not in the generator list (ngens = " + std::to_string(ngens) + ")");
    if (l.gen < lowest_allowed)
      throw InputError(what + ": uses g" + std::to_string(l.gen + 1) +
                       " but only generators from g" + std::to_string(lowest_allowed + 1) +
                       " on are allowed");
    if (l.exp >= p)
      throw InputError(what + ": exponent " + std::to_string(l.exp) + " not in [0, p)");
    if (!first && l.gen <= prev)
      throw InputError(what + ": generator indices must be strictly increasing");
    prev = l.gen;
    first = false;
  }
}

}  // namespace

bool Element::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](Exponent e) { return e == 0; });
}

PcPresentation::PcPresentation(unsigned p, std::size_t ngens, std::vector<Word> powers,
                               std::map<std::pair<std::size_t, std::size_t>, Word> commutators)
    : p_(p), n_(ngens), powers_(std::move(powers)), commutators_(std::move(commutators)) {
  if (!is_prime(p)) throw InputError("prime: " + std::to_string(p) + " is not prime");
  if (p == 2) throw InputError("p must be odd");
  if (p >= (1u << 16)) throw InputError("prime must be below 2^16");
  if (powers_.size() < n_) powers_.resize(n_);
  if (powers_.size() > n_) throw InputError("more power relations than generators");
  for (std::size_t i = 0; i < n_; ++i) {
    // Drop zero-exponent letters so equal groups compare equal.
    std::erase_if(powers_[i], [](const Letter& l) { return l.exp == 0; });
    check_word(powers_[i], i + 1, n_, p_, "power relation for g" + std::to_string(i + 1));
  }
  for (auto it = commutators_.begin(); it != commutators_.end();) {
    auto [j, i] = it->first;
    if (j >= n_ || i >= n_)
      throw InputError("commutator relation [g" + std::to_string(j + 1) + ", g" +
                       std::to_string(i + 1) + "] names a generator outside the list");
    if (j <= i)
      throw InputError("commutator relation [g" + std::to_string(j + 1) + ", g" +
                       std::to_string(i + 1) + "] must have j > i");
    std::erase_if(it->second, [](const Letter& l) { return l.exp == 0; });
    check_word(it->second, j + 1, n_, p_,
               "commutator relation [g" + std::to_string(j + 1) + ", g" + std::to_string(i + 1) + "]");
    if (it->second.empty())
      it = commutators_.erase(it);
    else
      ++it;
  }

  power_elems_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) power_elems_.push_back(from_word(powers_[i]));
  conj_.assign(n_, {});
  for (std::size_t j = 0; j < n_; ++j) {
    conj_[j].resize(j);
    for (std::size_t i = 0; i < j; ++i) {
      Element c = from_word(commutator_word(j, i));
      c.exps[j] = 1;
      conj_[j][i] = std::move(c);
    }
  }
}

const Word& PcPresentation::commutator_word(std::size_t j, std::size_t i) const {
  auto it = commutators_.find({j, i});
  return it == commutators_.end() ? kEmptyWord : it->second;
}

bool PcPresentation::has_commutator_relations() const { return !commutators_.empty(); }

Element PcPresentation::generator(std::size_t i) const {
  Element e(n_);
  e.exps.at(i) = 1;
  return e;
}

Element PcPresentation::from_word(const Word& w) const {
  Element e(n_);
  for (const Letter& l : w) e.exps.at(l.gen) = l.exp;
  return e;
}

Word PcPresentation::to_word(const Element& e) const {
  Word w;
  for (std::size_t i = 0; i < e.exps.size(); ++i)
    if (e.exps[i] != 0) w.push_back({i, e.exps[i]});
  return w;
}

bool PcPresentation::is_valid(const Element& e) const {
  return e.size() == n_ &&
         std::all_of(e.exps.begin(), e.exps.end(), [this](Exponent x) { return x < p_; });
}

void PcPresentation::push_element(std::vector<std::size_t>& stack, const Element& e) const {
  for (std::size_t k = n_; k-- > 0;)
    for (Exponent t = 0; t < e.exps[k]; ++t) stack.push_back(k);
}

void PcPresentation::multiply_in_place(Element& acc, const Element& rhs) const {
  std::vector<std::size_t> stack;
  push_element(stack, rhs);
  std::vector<Exponent> tail(n_);
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    // acc = prefix * g_i^a * T with T the part above i; acc * g_i equals
    // prefix * g_i^(a+1) * T^(g_i), and T^(g_i) is a product of conj_[j][i].
    bool tail_empty = true;
    for (std::size_t j = i + 1; j < n_; ++j) {
      tail[j] = acc.exps[j];
      acc.exps[j] = 0;
      tail_empty = tail_empty && tail[j] == 0;
    }
    bool overflow = ++acc.exps[i] == p_;
    if (overflow) acc.exps[i] = 0;
    if (!tail_empty)
      for (std::size_t j = n_; j-- > i + 1;)
        for (Exponent t = 0; t < tail[j]; ++t) push_element(stack, conj_[j][i]);
    if (overflow) push_element(stack, power_elems_[i]);
  }
}

Element PcPresentation::multiply(const Element& a, const Element& b) const {
  Element acc = a;
  multiply_in_place(acc, b);
  return acc;
}

Element PcPresentation::inverse(const Element& a) const {
  // Cancel exponents generator by generator; multiplying by g_i^e only
  // disturbs positions >= i.
  Element rest = a;
  Element inv(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Exponent e = static_cast<Exponent>((p_ - rest.exps[i]) % p_);
    inv.exps[i] = e;
    if (e == 0) continue;
    Element step(n_);
    step.exps[i] = e;
    multiply_in_place(rest, step);
  }
  return inv;
}

Element PcPresentation::power(const Element& a, unsigned long long k) const {
  Element result = identity(), base = a;
  for (; k; k >>= 1) {
    if (k & 1ull) result = multiply(result, base);
    base = multiply(base, base);
  }
  return result;
}

Element PcPresentation::commutator(const Element& a, const Element& b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Element PcPresentation::evaluate(const Word& w) const {
  Element acc = identity();
  for (const Letter& l : w) {
    if (l.gen >= n_) throw InputError("word uses generator outside the list");
    Element step(n_);
    for (unsigned long long t = 0; t < l.exp; ++t) {
      step.exps.assign(n_, 0);
      step.exps[l.gen] = 1;
      multiply_in_place(acc, step);
    }
  }
  return acc;
}

Element rewrite_normal_form(const PcPresentation& pres, std::vector<std::size_t> letters) {
  const unsigned p = pres.prime();
  std::size_t pos = 0;
  while (true) {
    bool rewrote = false;
    std::size_t run = 0;
    for (std::size_t k = pos; k < letters.size(); ++k) {
      run = (k > 0 && letters[k] == letters[k - 1] && k > pos) ? run + 1 : 1;
      if (k + 1 < letters.size() && letters[k] > letters[k + 1]) {
        const std::size_t j = letters[k], i = letters[k + 1];
        std::vector<std::size_t> rep{i, j};
        for (const Letter& l : pres.commutator_word(j, i))
          rep.insert(rep.end(), l.exp, l.gen);
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(k),
                      letters.begin() + static_cast<std::ptrdiff_t>(k + 2));
        letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(k), rep.begin(), rep.end());
        pos = k >= p ? k - p : 0;
        rewrote = true;
        break;
      }
      if (run == p) {
        const std::size_t start = k + 1 - p, g = letters[k];
        std::vector<std::size_t> rep;
        for (const Letter& l : pres.power_word(g)) rep.insert(rep.end(), l.exp, l.gen);
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(start),
                      letters.begin() + static_cast<std::ptrdiff_t>(k + 1));
        letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(start), rep.begin(), rep.end());
        pos = start >= p ? start - p : 0;
        rewrote = true;
        break;
      }
    }
    if (!rewrote) break;
  }
  Element e(pres.ngens());
  for (std::size_t g : letters) ++e.exps[g];
  return e;
}

ConsistencyResult consistency_check(const PcPresentation& pres) {
  ConsistencyResult result;
  const std::size_t n = pres.ngens();
  const unsigned p = pres.prime();
  auto g = [&](std::size_t i) { return pres.generator(i); };
  auto gpow = [&](std::size_t i, Exponent e) {
    Element x(n);
    x.exps[i] = e;
    return x;
  };
  auto name = [](std::size_t i) { return "g" + std::to_string(i + 1); };
  auto record = [&](std::string test, Element lhs, Element rhs) {
    if (lhs != rhs) result.violations.push_back({std::move(test), std::move(lhs), std::move(rhs)});
  };

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        record(name(k) + " (" + name(j) + " " + name(i) + ") = (" + name(k) + " " + name(j) +
                   ") " + name(i),
               pres.multiply(g(k), pres.multiply(g(j), g(i))),
               pres.multiply(pres.multiply(g(k), g(j)), g(i)));

  for (std::size_t j = 0; j < n; ++j) {
    const Element pw_j = pres.from_word(pres.power_word(j));
    for (std::size_t i = 0; i < j; ++i) {
      record("(" + name(j) + "^p) " + name(i) + " = " + name(j) + "^(p-1) (" + name(j) + " " +
                 name(i) + ")",
             pres.multiply(pw_j, g(i)),
             pres.multiply(gpow(j, static_cast<Exponent>(p - 1)), pres.multiply(g(j), g(i))));
      const Element pw_i = pres.from_word(pres.power_word(i));
      record(name(j) + " (" + name(i) + "^p) = (" + name(j) + " " + name(i) + ") " + name(i) +
                 "^(p-1)",
             pres.multiply(g(j), pw_i),
             pres.multiply(pres.multiply(g(j), g(i)), gpow(i, static_cast<Exponent>(p - 1))));
    }
    record(name(j) + " (" + name(j) + "^p) = (" + name(j) + "^p) " + name(j),
           pres.multiply(g(j), pw_j), pres.multiply(pw_j, g(j)));
  }
  return result;
}

void require_consistent(const PcPresentation& pres) {
  auto result = consistency_check(pres);
  if (result.passed()) return;
  std::ostringstream msg;
  msg << "inconsistent presentation: " << result.violations.size() << " overlap test(s) fail";
  for (std::size_t k = 0; k < std::min<std::size_t>(3, result.violations.size()); ++k) {
    const auto& v = result.violations[k];
    msg << "; " << v.test << " gives " << format_element(pres, v.lhs) << " vs "
        << format_element(pres, v.rhs);
  }
  throw InputError(msg.str());
}

std::string format_word(const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(l.gen + 1) + "^" + std::to_string(l.exp);
  }
  return out;
}

std::string format_element(const PcPresentation& pres, const Element& e) {
  std::string s = format_word(pres.to_word(e));
  return s.empty() ? "1" : s;
}

}  // namespace propp
