#include <gtest/gtest.h>

#include "propp/corpus.hpp"
#include "propp/involution.hpp"
#include "support.hpp"

using namespace propp;
using testing_support::corpus;

namespace {

struct Built {
  PcPresentation pres;
  GroupTable table;
  CentralSeries series;
  explicit Built(PcPresentation p) : pres(std::move(p)), table(build_table(pres)), series(p_central_series(table)) {}
  InvolutionAction validate(std::vector<Element> images) const {
    return validate_involution(pres, std::move(images), &table, &series);
  }
};

InvolutionError::Kind kind_of(const Built& b, std::vector<Element> images) {
  try {
    b.validate(std::move(images));
  } catch (const InvolutionError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an involution error";
  return InvolutionError::Kind::RelationMismatch;
}

}  // namespace

TEST(Involution, IdentityIsValid) {
  const Built b(extraspecial(3, 1, false));
  std::vector<Element> id;
  for (std::size_t i = 0; i < 3; ++i) id.push_back(b.pres.generator(i));
  const auto act = b.validate(id);
  EXPECT_TRUE(act.is_identity());
  EXPECT_EQ(act.level(), ValidationLevel::Exhaustive);
  for (const auto& m : act.matrices_on_layers()) EXPECT_TRUE(m.is_identity());
  EXPECT_EQ(eigen_ranks(act, 0), (EigenSplit{2, 0}));
}

TEST(Involution, InversionOnElementaryAbelian) {
  const Built b(elementary_abelian(3, 2));
  const auto act = b.validate(sign_pattern_images(b.pres, {-1, -1}));
  EXPECT_EQ(act.matrix_on_frattini(), MatFp::diagonal(3, {-1, -1}));
  EXPECT_EQ(eigen_ranks(act, 0), (EigenSplit{0, 2}));
  const Built c(elementary_abelian(3, 3));
  EXPECT_EQ(eigen_ranks(c.validate(sign_pattern_images(c.pres, {1, 1, 1})), 0), (EigenSplit{3, 0}));
}

TEST(Involution, ExtraspecialInversionOnTop) {
  const Built b(extraspecial(3, 1, false));
  const auto act = b.validate(sign_pattern_images(b.pres, {-1, -1, 1}));
  EXPECT_EQ(eigen_ranks(act, 0), (EigenSplit{0, 2}));
  EXPECT_EQ(eigen_ranks(act, 1), (EigenSplit{1, 0}));
  // The table permutation agrees with the collected images.
  for (ElemId x = 0; x < b.table.order(); ++x)
    EXPECT_EQ(b.table.labels()[act.permutation()[x]], apply_images(b.pres, act.images(), b.table.labels()[x]));
}

TEST(Involution, DistinctErrorKinds) {
  const Built x(extraspecial(3, 1, false));
  // Negating the center is incompatible with [g2, g1] = g3 when g1, g2 are fixed.
  EXPECT_EQ(kind_of(x, sign_pattern_images(x.pres, {1, 1, -1})), InvolutionError::Kind::RelationMismatch);

  const Built ea(elementary_abelian(3, 2));
  // g1 -> g1, g2 -> g1: a homomorphism but not bijective.
  EXPECT_EQ(kind_of(ea, {ea.pres.generator(0), ea.pres.generator(0)}), InvolutionError::Kind::NotBijective);
  // g1 -> g1 g2, g2 -> g2: an automorphism of order 3.
  EXPECT_EQ(kind_of(ea, {ea.pres.multiply(ea.pres.generator(0), ea.pres.generator(1)), ea.pres.generator(1)}),
            InvolutionError::Kind::OrderExceedsTwo);
  // Swapping the generators is a valid involution with split (1, 1).
  EXPECT_EQ(eigen_ranks(ea.validate({ea.pres.generator(1), ea.pres.generator(0)}), 0), (EigenSplit{1, 1}));
}

TEST(Involution, RelationsOnlyWithoutTable) {
  const auto pres = extraspecial(3, 1, false);
  const auto act = validate_involution(pres, sign_pattern_images(pres, {-1, -1, 1}), nullptr, nullptr);
  EXPECT_EQ(act.level(), ValidationLevel::RelationsOnly);
  EXPECT_TRUE(act.permutation().empty());
}

TEST(Involution, LayerSplitsSumToRanksAndDualize) {
  for (const auto& m : corpus(5, InvolutionPolicy::AllDiagonal).members) {
    const auto& mats = m.action.matrices_on_layers();
    ASSERT_EQ(mats.size(), std::max<std::size_t>(1, m.series->length()));
    for (std::size_t i = 0; i < m.series->length(); ++i) {
      EXPECT_TRUE((mats[i] * mats[i]).is_identity()) << m.tag;
      const auto s = eigen_ranks(m.action, i);
      EXPECT_EQ(s.d_plus + s.d_minus, m.series->layer_ranks[i]) << m.tag;
      const auto st = eigensplit_involution(mats[i].transpose());
      EXPECT_EQ(st.dim_plus, s.d_plus);
      EXPECT_EQ(st.dim_minus, s.d_minus);
    }
  }
}

TEST(Involution, CommutesWithPowerMapOnPowerfulGroups) {
  std::size_t checked = 0;
  for (const auto& m : corpus(5, InvolutionPolicy::AllDiagonal).members) {
    const auto& t = *m.table;
    if (!is_powerful(t).powerful) continue;
    const auto layers = layer_coordinates(t, *m.series);
    const auto& mats = m.action.matrices_on_layers();
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
      const MatFp pm = p_power_layer_map(t, layers, i);
      EXPECT_EQ(mats[i + 1] * pm, pm * mats[i]) << m.tag << " layer " << i;
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
}
