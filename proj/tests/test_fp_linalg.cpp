#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "propp/errors.hpp"
#include "propp/fp_linalg.hpp"

using namespace propp;

namespace {

MatFp random_matrix(std::mt19937_64& rng, unsigned p, std::size_t r, std::size_t c, unsigned density = 2) {
  MatFp m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % density == 0) m.set(i, j, static_cast<long long>(rng() % p));
  return m;
}

std::vector<oracle::Row> rows_of(const MatFp& m) {
  std::vector<oracle::Row> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

// Inverse by the oracle's elimination on [A | I].
MatFp invert(const MatFp& a) {
  const std::size_t n = a.rows();
  const std::int64_t p = a.prime();
  std::vector<oracle::Row> aug;
  for (std::size_t r = 0; r < n; ++r) {
    oracle::Row row(a.row(r).begin(), a.row(r).end());
    for (std::size_t c = 0; c < n; ++c) row.push_back(r == c);
    aug.push_back(row);
  }
  std::vector<oracle::Row> ech;
  EXPECT_EQ(oracle::rank_mod_p(aug, p, &ech), n);
  MatFp inv(a.prime(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, ech[r][n + c]);
  return inv;
}

}  // namespace

TEST(PrimeField, RejectsEvenAndComposite) {
  EXPECT_THROW(PrimeField(2), InputError);
  EXPECT_THROW(PrimeField(9), InputError);
  EXPECT_THROW(PrimeField(65537), InputError);
  EXPECT_NO_THROW(PrimeField(3));
  EXPECT_NO_THROW(PrimeField(65521));
}

TEST(PrimeField, ReductionMatchesRemainder) {
  for (unsigned p : {3u, 5u, 7u, 251u, 65521u}) {
    PrimeField f(p);
    const std::uint64_t top = std::uint64_t(p) * (p + 1);
    std::mt19937_64 rng(p);
    for (int k = 0; k < 20000; ++k) {
      const std::uint64_t x = rng() % top;
      ASSERT_EQ(f.reduce(x), x % p) << "p=" << p << " x=" << x;
    }
    for (std::uint64_t x = 0; x < std::min<std::uint64_t>(top, 70000); ++x) ASSERT_EQ(f.reduce(x), x % p);
    for (unsigned a = 1; a < std::min(p, 500u); ++a) ASSERT_EQ(f.mul(a, f.inv(a)), 1);
  }
}

TEST(Rank, SpecExamples) {
  EXPECT_EQ(rank(MatFp(3, 0, 0)), 0u);
  EXPECT_EQ(rank(MatFp::identity(3, 3)), 3u);
  EXPECT_EQ(rank(MatFp::from_rows(5, {{1, 2}, {2, 4}})), 1u);
}

TEST(Rank, RowSpanEnumeration) {
  // [[1,2],[2,4]] over F_5 spans exactly 5 vectors.
  const auto m = MatFp::from_rows(5, {{1, 2}, {2, 4}});
  std::set<std::pair<int, int>> span;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) span.insert({(a * 1 + b * 2) % 5, (a * 2 + b * 4) % 5});
  EXPECT_EQ(span.size(), 5u);
  EXPECT_EQ(span.size(), std::size_t(std::pow(5, rank(m))));
}

TEST(Kernel, SpecExamples) {
  EXPECT_TRUE(kernel_basis(MatFp::identity(3, 2)).empty());
  EXPECT_EQ(kernel_basis(MatFp(3, 2, 3)).size(), 3u);
  const auto k = kernel_basis(MatFp::from_rows(3, {{1, 1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (VecFp{2, 1}));
}

TEST(Kernel, RankNullityAndAnnihilation) {
  std::mt19937_64 rng(42);
  for (unsigned p : {3u, 5u, 7u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = rng() % 9, c = rng() % 9;
      const MatFp m = random_matrix(rng, p, r, c, 1 + trial % 3);
      const auto k = kernel_basis(m);
      const std::size_t rk = rank(m);
      EXPECT_EQ(rk + k.size(), c);
      EXPECT_EQ(rk, oracle::rank_mod_p(rows_of(m), p));
      for (const auto& v : k)
        for (Residue x : m.apply(v)) EXPECT_EQ(x, 0);
      std::vector<oracle::Row> kr;
      for (const auto& v : k) kr.emplace_back(v.begin(), v.end());
      EXPECT_EQ(oracle::rank_mod_p(kr, p), k.size());
    }
  }
}

TEST(Rref, Deterministic) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MatFp m = random_matrix(rng, 5, 6, 7);
    EXPECT_EQ(rref(m), rref(m));
    EXPECT_EQ(rref(rref(m)), rref(m));
  }
}

TEST(EchelonBasis, InsertAndContains) {
  EchelonBasis b(3, 3);
  EXPECT_TRUE(b.insert({1, 1, 0}));
  EXPECT_TRUE(b.insert({0, 1, 1}));
  EXPECT_FALSE(b.insert({1, 0, 2}));  // first + 2 * second
  EXPECT_TRUE(b.contains({2, 0, 1}));
  EXPECT_FALSE(b.contains({0, 0, 1}));
  EXPECT_EQ(b.free_columns(), (std::vector<std::size_t>{2}));
  ASSERT_EQ(b.kernel().size(), 1u);
  const VecFp k = b.kernel()[0];
  EXPECT_EQ((k[0] + k[1]) % 3, 0);
  EXPECT_EQ((k[1] + k[2]) % 3, 0);
}

TEST(Eigensplit, SpecExamples) {
  auto s = eigensplit_involution(MatFp::identity(3, 3));
  EXPECT_EQ(s.dim_plus, 3u);
  EXPECT_EQ(s.dim_minus, 0u);
  s = eigensplit_involution(MatFp::diagonal(5, {-1, -1}));
  EXPECT_EQ(s.dim_plus, 0u);
  EXPECT_EQ(s.dim_minus, 2u);
  s = eigensplit_involution(MatFp::diagonal(3, {1, -1, -1}));
  EXPECT_EQ(s.dim_plus, 1u);
  EXPECT_EQ(s.dim_minus, 2u);
}

TEST(Eigensplit, RejectsNonInvolutions) {
  EXPECT_THROW(eigensplit_involution(MatFp::from_rows(3, {{1, 1}, {0, 1}})), InputError);
  EXPECT_THROW(eigensplit_involution(MatFp(3, 2, 3)), InputError);
}

TEST(Eigensplit, ConjugatedDiagonalsAndBases) {
  std::mt19937_64 rng(11);
  for (unsigned p : {3u, 5u, 7u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + rng() % 6;
      MatFp q = random_matrix(rng, p, n, n, 1);
      if (rank(q) != n) continue;
      std::vector<long long> diag(n);
      std::size_t plus = 0;
      for (auto& x : diag) {
        x = rng() % 2 ? 1 : -1;
        plus += x == 1;
      }
      const MatFp m = q * MatFp::diagonal(p, diag) * invert(q);
      ASSERT_TRUE((m * m).is_identity());
      const auto s = eigensplit_involution(m);
      EXPECT_EQ(s.dim_plus, plus);
      EXPECT_EQ(s.dim_minus, n - plus);
      PrimeField f(p);
      std::vector<oracle::Row> all;
      for (const auto& v : s.basis_plus) {
        EXPECT_EQ(m.apply(v), v);
        all.emplace_back(v.begin(), v.end());
      }
      for (const auto& v : s.basis_minus) {
        VecFp neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = f.neg(v[i]);
        EXPECT_EQ(m.apply(v), neg);
        all.emplace_back(v.begin(), v.end());
      }
      EXPECT_EQ(oracle::rank_mod_p(all, p), n);
      // Dual invariance: the transpose has the same split.
      const auto st = eigensplit_involution(m.transpose());
      EXPECT_EQ(st.dim_plus, s.dim_plus);
    }
  }
}
