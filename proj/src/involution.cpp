#include "propp/involution.hpp"

#include <algorithm>

namespace propp {

namespace {

std::string gname(std::size_t i) { return "g" + std::to_string(i + 1); }

}  // namespace

bool InvolutionAction::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    for (std::size_t k = 0; k < images_[i].size(); ++k)
      if (images_[i].exps[k] != (k == i ? 1 : 0)) return false;
  }
  return true;
}

Element apply_images(const PcPresentation& pres, const std::vector<Element>& images, const Element& x) {
  Element acc = pres.identity();
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x.exps[k] != 0) acc = pres.multiply(acc, pres.power(images[k], x.exps[k]));
  return acc;
}

InvolutionAction validate_involution(const PcPresentation& pres, std::vector<Element> images,
                                     const GroupTable* table, const CentralSeries* series) {
  const std::size_t n = pres.ngens();
  const unsigned p = pres.prime();
  using Kind = InvolutionError::Kind;
  if (images.size() != n)
    throw InputError("sigma must give one image per generator (" + std::to_string(n) + " expected, " +
                     std::to_string(images.size()) + " given)");
  for (const auto& img : images)
    if (!pres.is_valid(img)) throw InputError("sigma image is not a valid element");

  for (std::size_t i = 0; i < n; ++i) {
    Element lhs = pres.power(images[i], p);
    Element rhs = apply_images(pres, images, pres.from_word(pres.power_word(i)));
    if (lhs != rhs)
      throw InvolutionError(Kind::RelationMismatch,
                            "sigma does not respect the power relation " + gname(i) + "^p = " +
                                format_element(pres, pres.from_word(pres.power_word(i))) + ": " +
                                format_element(pres, lhs) + " vs " + format_element(pres, rhs));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Element lhs = pres.commutator(images[j], images[i]);
      Element rhs = apply_images(pres, images, pres.from_word(pres.commutator_word(j, i)));
      if (lhs != rhs)
        throw InvolutionError(Kind::RelationMismatch,
                              "sigma does not respect the commutator relation [" + gname(j) + ", " +
                                  gname(i) + "]: " + format_element(pres, lhs) + " vs " +
                                  format_element(pres, rhs));
    }
  }

  InvolutionAction act;
  act.images_ = std::move(images);
  if (!table) {
    for (std::size_t i = 0; i < n; ++i)
      if (apply_images(pres, act.images_, act.images_[i]) != pres.generator(i))
        throw InvolutionError(Kind::OrderExceedsTwo, "sigma^2 moves generator " + gname(i));
    act.level_ = ValidationLevel::RelationsOnly;
    return act;
  }

  const std::size_t order = table->order();
  if (table->labels().size() != order) throw InputError("involution validation needs a labelled table");
  std::vector<ElemId> perm(order);
  std::vector<bool> hit(order, false);
  for (ElemId x = 0; x < order; ++x) {
    perm[x] = GroupTable::index_of(apply_images(pres, act.images_, table->labels()[x]), p);
    if (hit[perm[x]])
      throw InvolutionError(Kind::NotBijective,
                            "sigma is not bijective: " + format_element(pres, table->labels()[perm[x]]) +
                                " has two preimages");
    hit[perm[x]] = true;
  }
  for (ElemId a = 0; a < order; ++a)
    for (ElemId b = 0; b < order; ++b)
      if (perm[table->mul(a, b)] != table->mul(perm[a], perm[b]))
        throw InvolutionError(Kind::RelationMismatch, "sigma is not multiplicative on the table");
  for (ElemId x = 0; x < order; ++x)
    if (perm[perm[x]] != x)
      throw InvolutionError(Kind::OrderExceedsTwo,
                            "sigma has order greater than 2: sigma^2 moves " +
                                format_element(pres, table->labels()[x]));
  act.permutation_ = std::move(perm);
  act.level_ = ValidationLevel::Exhaustive;

  if (series) {
    auto layers = layer_coordinates(*table, *series);
    for (const auto& layer : layers) {
      MatFp m(p, layer.rank(), layer.rank());
      for (std::size_t c = 0; c < layer.rank(); ++c) {
        VecFp v = layer.coords(act.permutation_[layer.basis()[c]]);
        for (std::size_t r = 0; r < layer.rank(); ++r) m.set(r, c, v[r]);
      }
      if (!(m * m).is_identity()) throw InconsistencyFault("induced layer action is not an involution");
      act.layer_matrices_.push_back(std::move(m));
    }
    // The trivial group still has a (zero-dimensional) Frattini quotient.
    if (layers.empty()) act.layer_matrices_.emplace_back(p, 0, 0);
  }
  return act;
}

EigenSplit eigen_ranks(const InvolutionAction& act, std::size_t layer) {
  if (layer >= act.matrices_on_layers().size())
    throw InputError("layer " + std::to_string(layer + 1) + " has no induced action matrix");
  auto split = eigensplit_involution(act.matrices_on_layers()[layer]);
  return {split.dim_plus, split.dim_minus};
}

std::vector<Element> sign_pattern_images(const PcPresentation& pres, const std::vector<int>& signs) {
  std::vector<Element> images;
  for (std::size_t i = 0; i < pres.ngens(); ++i) {
    Element g = pres.generator(i);
    images.push_back(signs.at(i) < 0 ? pres.inverse(g) : g);
  }
  return images;
}

}  // namespace propp
