#include "propp/tate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "propp/errors.hpp"

namespace propp {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d) continue;
    out.push_back(d);
    while (x % d == 0) x /= d;
  }
  if (x > 1) out.push_back(x);
  return out;
}

// Elementary divisors of A/B for subgroups B <= A of m, A and B given as
// membership masks. For each prime l the number of cyclic factors of order
// at least l^k is log_l(c_k / c_{k-1}) with c_k = #{a in A : l^k a in B}/|B|.
FiniteAbelianGroup section_structure(const TateModule& m, const std::vector<bool>& a,
                                     const std::vector<bool>& b) {
  const std::uint64_t size_a = std::count(a.begin(), a.end(), true);
  const std::uint64_t size_b = std::count(b.begin(), b.end(), true);
  if (size_b == 0 || size_a % size_b) throw InconsistencyFault("section is not a quotient of subgroups");
  FiniteAbelianGroup g;
  const std::uint64_t q = size_a / size_b;
  for (std::uint64_t l : prime_factors(q)) {
    std::vector<std::uint64_t> counts{1};
    std::uint64_t lk = 1;
    while (true) {
      lk *= l;
      std::uint64_t c = 0;
      for (std::uint64_t x = 0; x < m.module_order(); ++x)
        if (a[x] && b[m.scale(x, lk)]) ++c;
      c /= size_b;
      if (c == counts.back()) break;
      counts.push_back(c);
    }
    // at_least[k] = number of factors of order >= l^k, k >= 1.
    std::vector<std::size_t> at_least(counts.size(), 0);
    for (std::size_t k = 1; k < counts.size(); ++k) {
      std::uint64_t ratio = counts[k] / counts[k - 1];
      std::size_t e = 0;
      while (ratio > 1) {
        ratio /= l;
        ++e;
      }
      at_least[k] = e;
    }
    std::uint64_t power = 1;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      power *= l;
      const std::size_t next = k + 1 < counts.size() ? at_least[k + 1] : 0;
      for (std::size_t r = 0; r < at_least[k] - next; ++r) g.elementary_divisors.push_back(power);
    }
  }
  std::sort(g.elementary_divisors.begin(), g.elementary_divisors.end());
  if (g.order() != q) throw InconsistencyFault("elementary divisors do not multiply to the order");
  return g;
}

}  // namespace

std::uint64_t FiniteAbelianGroup::order() const {
  std::uint64_t o = 1;
  for (auto d : elementary_divisors) o *= d;
  return o;
}

std::size_t FiniteAbelianGroup::p_rank(unsigned p) const {
  return static_cast<std::size_t>(
      std::count_if(elementary_divisors.begin(), elementary_divisors.end(),
                    [p](std::uint64_t d) { return d % p == 0; }));
}

TateModule::TateModule(std::vector<std::uint64_t> orders, std::vector<std::vector<std::int64_t>> action,
                       std::uint64_t cyclic_order)
    : orders_(std::move(orders)), action_(std::move(action)), n_(cyclic_order) {
  const std::size_t k = orders_.size();
  if (n_ == 0) throw InputError("cyclic group order must be positive");
  if (action_.size() != k) throw InputError("action matrix must be square of the module rank");
  for (const auto& row : action_)
    if (row.size() != k) throw InputError("action matrix must be square of the module rank");
  for (auto m : orders_) {
    if (m < 2) throw InputError("cyclic factor orders must be at least 2");
    if (size_ > kMaxTateModuleOrder / m) throw CapExceeded("module too large to enumerate");
    size_ *= m;
  }
  // sigma(e_j) must have order dividing m_j.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto mi = static_cast<std::int64_t>(orders_[i]);
      std::int64_t v = ((action_[i][j] % mi) + mi) % mi;
      action_[i][j] = v;
      if ((static_cast<unsigned __int128>(v) * orders_[j]) % orders_[i] != 0)
        throw InputError("action matrix does not define a homomorphism of the module");
    }
  std::vector<bool> hit(size_, false);
  for (std::uint64_t x = 0; x < size_; ++x) {
    const std::uint64_t y = act(x);
    if (hit[y]) throw InputError("action is not invertible");
    hit[y] = true;
  }
  for (std::uint64_t x = 0; x < size_; ++x) {
    std::uint64_t y = x;
    for (std::uint64_t t = 0; t < n_; ++t) y = act(y);
    if (y != x) throw InputError("action order does not divide the cyclic group order");
  }
}

std::vector<std::uint64_t> TateModule::decode(std::uint64_t idx) const {
  std::vector<std::uint64_t> x(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    x[i] = idx % orders_[i];
    idx /= orders_[i];
  }
  return x;
}

std::uint64_t TateModule::encode(const std::vector<std::uint64_t>& x) const {
  std::uint64_t idx = 0, place = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    idx += (x[i] % orders_[i]) * place;
    place *= orders_[i];
  }
  return idx;
}

std::uint64_t TateModule::act(std::uint64_t idx) const {
  const auto x = decode(idx);
  std::vector<std::uint64_t> y(orders_.size(), 0);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j)
      acc += static_cast<unsigned __int128>(action_[i][j]) * x[j];
    y[i] = static_cast<std::uint64_t>(acc % orders_[i]);
  }
  return encode(y);
}

std::uint64_t TateModule::add(std::uint64_t a, std::uint64_t b) const {
  auto x = decode(a), y = decode(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders_[i];
  return encode(x);
}

std::uint64_t TateModule::sub(std::uint64_t a, std::uint64_t b) const {
  auto x = decode(a), y = decode(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + orders_[i] - y[i]) % orders_[i];
  return encode(x);
}

std::uint64_t TateModule::scale(std::uint64_t a, std::uint64_t k) const {
  auto x = decode(a);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x[i]) * k) % orders_[i]);
  return encode(x);
}

TateResult tate_h0_h1(const TateModule& m, unsigned p) {
  const std::uint64_t size = m.module_order();
  std::vector<bool> fixed(size, false), norms(size, false), norm_kernel(size, false), augmentation(size, false);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t sx = m.act(x);
    if (sx == x) fixed[x] = true;
    augmentation[m.sub(sx, x)] = true;
    std::uint64_t total = 0, y = x;
    for (std::uint64_t t = 0; t < m.cyclic_order(); ++t) {
      total = m.add(total, y);
      y = m.act(y);
    }
    norms[total] = true;
    if (total == 0) norm_kernel[x] = true;
  }
  TateResult r;
  r.h0 = section_structure(m, fixed, norms);
  r.h_minus1 = section_structure(m, norm_kernel, augmentation);
  r.p_rank_h0 = r.h0.p_rank(p);
  return r;
}

TateModule random_tate_module(std::mt19937_64& rng, std::uint64_t max_order) {
  static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7};
  while (true) {
    const std::size_t rank = 1 + rng() % 3;
    std::vector<std::uint64_t> orders;
    std::uint64_t size = 1;
    const bool single_prime = rng() % 4 != 0;
    const std::uint64_t base = kPrimes[rng() % 4];
    for (std::size_t i = 0; i < rank; ++i) {
      std::uint64_t l = single_prime ? base : kPrimes[rng() % 4];
      std::uint64_t m = l;
      if (rng() % 3 == 0) m *= l;
      orders.push_back(m);
      size *= m;
    }
    if (size > max_order) continue;
    std::vector<std::vector<std::int64_t>> a(rank, std::vector<std::int64_t>(rank));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) {
        const std::uint64_t step = orders[i] / std::gcd(orders[i], orders[j]);
        a[i][j] = static_cast<std::int64_t>((rng() % orders[i]) * step % orders[i]);
      }
    std::vector<std::uint64_t> elem(size);
    std::vector<bool> hit(size, false);
    bool invertible = true;
    auto apply = [&](std::uint64_t idx) {
      std::vector<std::uint64_t> x(rank), y(rank, 0);
      for (std::size_t i = 0; i < rank; ++i) {
        x[i] = idx % orders[i];
        idx /= orders[i];
      }
      for (std::size_t i = 0; i < rank; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 0; j < rank; ++j) acc += static_cast<unsigned __int128>(a[i][j]) * x[j];
        y[i] = static_cast<std::uint64_t>(acc % orders[i]);
      }
      std::uint64_t out = 0, place = 1;
      for (std::size_t i = 0; i < rank; ++i) {
        out += y[i] * place;
        place *= orders[i];
      }
      return out;
    };
    for (std::uint64_t x = 0; x < size; ++x) {
      elem[x] = apply(x);
      if (hit[elem[x]]) {
        invertible = false;
        break;
      }
      hit[elem[x]] = true;
    }
    if (!invertible) continue;
    std::uint64_t order = 1;
    for (std::uint64_t x = 0; x < size; ++x) {
      std::uint64_t t = 1, y = elem[x];
      while (y != x) {
        y = elem[y];
        ++t;
      }
      order = std::lcm(order, t);
    }
    if (order > 64) continue;
    return TateModule(std::move(orders), std::move(a), order * (1 + rng() % 3));
  }
}

}  // namespace propp
