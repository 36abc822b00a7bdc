#pragma once

// Tate cohomology of a finite cyclic group acting on a finite abelian group.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace propp {

// Finite abelian group by its elementary divisors (prime powers, sorted).
struct FiniteAbelianGroup {
  std::vector<std::uint64_t> elementary_divisors;

  std::uint64_t order() const;
  // Number of cyclic factors of order divisible by p.
  std::size_t p_rank(unsigned p) const;
  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

// M = Z/m_1 + ... + Z/m_k with a generator of C_n acting by an integer
// matrix: sigma(e_j) = sum_i action[i][j] e_i.
class TateModule {
 public:
  // Throws InputError unless the matrix defines an automorphism of M whose
  // order divides n.
  TateModule(std::vector<std::uint64_t> orders, std::vector<std::vector<std::int64_t>> action,
             std::uint64_t cyclic_order);

  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::uint64_t cyclic_order() const { return n_; }
  std::uint64_t module_order() const { return size_; }

  // Mixed-radix element index <-> coordinates.
  std::vector<std::uint64_t> decode(std::uint64_t idx) const;
  std::uint64_t encode(const std::vector<std::uint64_t>& x) const;
  std::uint64_t act(std::uint64_t idx) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t scale(std::uint64_t a, std::uint64_t k) const;

 private:
  std::vector<std::uint64_t> orders_;
  std::vector<std::vector<std::int64_t>> action_;
  std::uint64_t n_;
  std::uint64_t size_ = 1;
};

// Largest module we enumerate elementwise.
inline constexpr std::uint64_t kMaxTateModuleOrder = 1u << 20;

struct TateResult {
  FiniteAbelianGroup h0;        // M^C / N M
  FiniteAbelianGroup h_minus1;  // ker N / (sigma - 1) M
  std::size_t p_rank_h0 = 0;
};

TateResult tate_h0_h1(const TateModule& m, unsigned p);

// A random valid module with at most `max_order` elements and a multiple of
// the action's order as the cyclic group order.
TateModule random_tate_module(std::mt19937_64& rng, std::uint64_t max_order = 512);

}  // namespace propp
