#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "propp/cohomology.hpp"
#include "propp/corpus.hpp"
#include "propp/errors.hpp"
#include "propp/tate.hpp"
#include "support.hpp"

using namespace propp;
using testing_support::corpus;

namespace {

struct Built {
  PcPresentation pres;
  GroupTable table;
  CentralSeries series;
  InvolutionAction act;
  Built(PcPresentation p, const std::vector<int>& signs)
      : pres(std::move(p)),
        table(build_table(pres)),
        series(p_central_series(table)),
        act(validate_involution(pres, sign_pattern_images(pres, signs), &table, &series)) {}
};

std::vector<int> split_signs(std::size_t a, std::size_t b) {
  std::vector<int> s(a, 1);
  s.insert(s.end(), b, -1);
  return s;
}

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

TEST(H2, Examples) {
  EXPECT_EQ(h2_dim_brute(build_table(elementary_abelian(3, 0))).dim(), 0u);
  EXPECT_EQ(h2_dim_brute(build_table(elementary_abelian(3, 1))).dim(), 1u);
  EXPECT_EQ(h2_dim_brute(build_table(elementary_abelian(3, 2))).dim(), 3u);
  EXPECT_EQ(h2_dim_brute(build_table(elementary_abelian(5, 1))).dim(), 1u);
}

TEST(H2, SplitExamples) {
  EXPECT_EQ(h2_eigensplit(Built(elementary_abelian(3, 2), {1, 1}).table, Built(elementary_abelian(3, 2), {1, 1}).act),
            (H2Splits{3, 0}));
  const Built z3(elementary_abelian(3, 1), {-1});
  EXPECT_EQ(h2_eigensplit(z3.table, z3.act), (H2Splits{0, 1}));
  const Built ea2(elementary_abelian(3, 2), {1, -1});
  EXPECT_EQ(h2_eigensplit(ea2.table, ea2.act), (H2Splits{1, 2}));
}

TEST(H2, CapExceeded) {
  EXPECT_THROW(h2_dim_brute(build_table(elementary_abelian(3, 6))), CapExceeded);
  const auto t = build_table(elementary_abelian(3, 5));
  EXPECT_THROW(h2_dim_brute(t, 100), CapExceeded);
}

TEST(Kunneth, ClosedFormExamples) {
  EXPECT_EQ(kunneth_dims(0, 0), (H2Splits{0, 0}));
  EXPECT_EQ(kunneth_dims(1, 1), (H2Splits{1, 2}));
  EXPECT_EQ(kunneth_dims(2, 1), (H2Splits{3, 3}));
  EXPECT_EQ(kunneth_dims(0, 1), (H2Splits{0, 1}));
}

TEST(Kunneth, BruteForceUpToRankFour) {
  for (std::size_t r = 0; r <= 4; ++r)
    for (std::size_t a = 0; a <= r; ++a) {
      const std::size_t b = r - a;
      const Built g(elementary_abelian(3, r), split_signs(a, b));
      const auto h2 = h2_dim_brute(g.table);
      const auto s = h2_eigensplit(h2, g.act);
      EXPECT_EQ(s.plus, a + choose2(a) + choose2(b)) << "a=" << a << " b=" << b;
      EXPECT_EQ(s.minus, b + a * b) << "a=" << a << " b=" << b;
      EXPECT_EQ(s, kunneth_dims(a, b));
      EXPECT_EQ(h2.dim(), r + choose2(r));
    }
}

TEST(Kunneth, HomocyclicSplitsMatchClosedForm) {
  // For (Z/p^k)^r with sigma = +-1 per cyclic factor the same count applies.
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; a + b <= 2; ++b) {
      std::vector<int> signs = split_signs(a, b);
      signs.insert(signs.end(), signs.begin(), signs.end());
      const Built g(homocyclic(3, 2, a + b), signs);
      EXPECT_EQ(h2_eigensplit(g.table, g.act), kunneth_dims(a, b)) << a << "," << b;
    }
}

TEST(H2, MatchesFullSystemOracleOnSmallGroups) {
  std::size_t checked = 0;
  std::map<const GroupTable*, std::unique_ptr<oracle::FullCocycleSystem>> systems;
  CorpusSpec spec;
  spec.max_order_exponent = 3;
  spec.random_attempts = 40;
  const auto small = generate(spec);
  for (const auto& m : small.members) {
    const auto& t = *m.table;
    auto& sys = systems[&t];
    if (!sys) sys = std::make_unique<oracle::FullCocycleSystem>(t);
    const auto o = sys->result(&m.action.permutation());
    const auto rep = cohomology_report(t, m.action);
    EXPECT_EQ(rep.h2, o.h2) << m.tag;
    EXPECT_EQ(rep.dim_z2, o.z2) << m.tag;
    EXPECT_EQ(rep.dim_b2, o.b2) << m.tag;
    EXPECT_EQ(rep.h2_plus, o.plus) << m.tag;
    EXPECT_EQ(rep.h2_minus, o.minus) << m.tag;
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(H2, ReportInvariantsOnCorpus) {
  for (const auto& m : corpus(4, InvolutionPolicy::AllDiagonal).members) {
    const auto rep = cohomology_report(*m.table, m.action);
    const auto top = eigen_ranks(m.action, 0);
    EXPECT_EQ(rep.h1, generator_rank(*m.table)) << m.tag;
    EXPECT_EQ(rep.h1_plus, top.d_plus) << m.tag;
    EXPECT_EQ(rep.h1_minus, top.d_minus) << m.tag;
    EXPECT_EQ(rep.h2_plus + rep.h2_minus, rep.h2) << m.tag;
    EXPECT_GE(rep.h2, rep.h1) << m.tag;
    EXPECT_EQ(rep.p_h2_qpzp, rep.h2 - rep.h1);
    EXPECT_EQ(rep.p_h2_qpzp_plus, rep.h2_plus - rep.h1_plus);
    EXPECT_EQ(rep.p_h2_qpzp_minus, rep.h2_minus - rep.h1_minus);
  }
}

TEST(H2, ClassesAndActionMatrix) {
  const Built g(extraspecial(3, 1, false), {-1, -1, 1});
  const auto h2 = h2_dim_brute(g.table);
  ASSERT_EQ(h2.dim(), 4u);
  const std::size_t n = g.table.order();
  for (std::size_t i = 0; i < h2.dim(); ++i) {
    VecFp e(h2.dim(), 0);
    e[i] = 1;
    EXPECT_EQ(h2.class_of(h2.basis()[i]), e);
  }
  // A normalized coboundary has class zero.
  std::mt19937_64 rng(4);
  std::vector<Residue> phi(n);
  for (auto& v : phi) v = static_cast<Residue>(rng() % 3);
  phi[g.table.identity()] = 0;
  Cochain2 f(n * n);
  for (ElemId x = 0; x < n; ++x)
    for (ElemId y = 0; y < n; ++y) f[x * n + y] = static_cast<Residue>((phi[y] + 3 - phi[g.table.mul(x, y)] + phi[x]) % 3);
  EXPECT_EQ(h2.class_of(f), VecFp(h2.dim(), 0));
  // Perturbing one value breaks the cocycle identity.
  Cochain2 bad = h2.basis()[0];
  const ElemId a = g.table.generators()[0], b = g.table.generators()[1];
  bad[a * n + b] = static_cast<Residue>((bad[a * n + b] + 1) % 3);
  EXPECT_THROW(h2.class_of(bad), InputError);

  const MatFp s = h2.action_matrix(g.act.permutation());
  EXPECT_TRUE((s * s).is_identity());
  const auto split = eigensplit_involution(s);
  EXPECT_EQ(H2Splits(split.dim_plus, split.dim_minus), h2_eigensplit(h2, g.act));
}

TEST(QpZp, Examples) {
  auto d = p_h2_qpzp_dims(3, {3, 0}, 2, {2, 0});
  EXPECT_EQ(d.total, 1u);
  d = p_h2_qpzp_dims(1, {0, 1}, 1, {0, 1});
  EXPECT_EQ(d.total, 0u);
  EXPECT_EQ(d.minus, 0u);
  // d+ = 1 with h2- = d-: the minus part vanishes.
  d = p_h2_qpzp_dims(4, {2, 2}, 3, {1, 2});
  EXPECT_EQ(d.minus, 0u);
  EXPECT_EQ(d.plus, 1u);
  EXPECT_THROW(p_h2_qpzp_dims(1, {1, 0}, 2, {2, 0}), InconsistencyFault);
  EXPECT_THROW(p_h2_qpzp_dims(3, {0, 3}, 2, {1, 1}), InconsistencyFault);
}

TEST(Tate, Examples) {
  // Z/2 trivially on Z/3.
  auto r = tate_h0_h1(TateModule({3}, {{1}}, 2), 3);
  EXPECT_EQ(r.h0.order(), 1u);
  EXPECT_EQ(r.h_minus1.order(), 1u);
  // Z/3 trivially on Z/3.
  r = tate_h0_h1(TateModule({3}, {{1}}, 3), 3);
  EXPECT_EQ(r.h0, (FiniteAbelianGroup{{3}}));
  EXPECT_EQ(r.p_rank_h0, 1u);
  // Z/2 by inversion on Z/3.
  r = tate_h0_h1(TateModule({3}, {{-1}}, 2), 3);
  EXPECT_EQ(r.h0.order(), 1u);
  // Z/4 trivially on Z/8: order 4.
  r = tate_h0_h1(TateModule({8}, {{1}}, 4), 2);
  EXPECT_EQ(r.h0, (FiniteAbelianGroup{{4}}));
  EXPECT_EQ(r.h_minus1, (FiniteAbelianGroup{{4}}));
  // Z/2 swapping two copies of Z/3: induced module, cohomologically trivial.
  r = tate_h0_h1(TateModule({3, 3}, {{0, 1}, {1, 0}}, 2), 3);
  EXPECT_EQ(r.h0.order(), 1u);
  EXPECT_EQ(r.h_minus1.order(), 1u);
}

TEST(Tate, RejectsInvalidActions) {
  EXPECT_THROW(TateModule({3}, {{0}}, 2), InputError);                   // not bijective
  EXPECT_THROW(TateModule({3, 3}, {{1, 1}, {0, 1}}, 2), InputError);     // order 3
  EXPECT_THROW(TateModule({9, 3}, {{1, 1}, {0, 1}}, 3), InputError);     // Z/3 -> Z/9 not well defined
  EXPECT_THROW(TateModule({3}, {{1, 0}}, 1), InputError);                // shape
}

TEST(Tate, HerbrandQuotientIsOne) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 300; ++k) {
    const auto m = random_tate_module(rng);
    std::uint64_t l = m.orders().empty() ? 2 : m.orders()[0];
    for (unsigned q : {2u, 3u, 5u, 7u})
      if (l % q == 0) l = q;
    const auto r = tate_h0_h1(m, static_cast<unsigned>(l));
    ASSERT_EQ(r.h0.order(), r.h_minus1.order());
    EXPECT_EQ(r.p_rank_h0, r.h0.p_rank(static_cast<unsigned>(l)));
  }
}
