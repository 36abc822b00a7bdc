#pragma once

// Order-two automorphisms given on generators and their linear action on the
// layers of the p-central series.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "propp/errors.hpp"
#include "propp/fp_linalg.hpp"
#include "propp/group_table.hpp"
#include "propp/pc_presentation.hpp"
#include "propp/structure.hpp"

namespace propp {

class InvolutionError : public InputError {
 public:
  enum class Kind { RelationMismatch, NotBijective, OrderExceedsTwo };
  InvolutionError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class ValidationLevel { Exhaustive, RelationsOnly };

struct EigenSplit {
  std::size_t d_plus = 0;
  std::size_t d_minus = 0;
  friend bool operator==(const EigenSplit&, const EigenSplit&) = default;
};

class InvolutionAction {
 public:
  const std::vector<Element>& images() const { return images_; }
  ValidationLevel level() const { return level_; }
  // sigma as a permutation of table indices (empty at RelationsOnly level).
  const std::vector<ElemId>& permutation() const { return permutation_; }
  // Matrix on G/Phi(G) = layer 0 (columns are images of basis vectors).
  const MatFp& matrix_on_frattini() const { return layer_matrices_.at(0); }
  const std::vector<MatFp>& matrices_on_layers() const { return layer_matrices_; }
  bool is_identity() const;

 private:
  friend InvolutionAction validate_involution(const PcPresentation&, std::vector<Element>,
                                              const GroupTable*, const CentralSeries*);
  std::vector<Element> images_;
  ValidationLevel level_ = ValidationLevel::RelationsOnly;
  std::vector<ElemId> permutation_;
  std::vector<MatFp> layer_matrices_;
};

// sigma(w) for a word given by its exponent vector.
Element apply_images(const PcPresentation& pres, const std::vector<Element>& images, const Element& x);

// Checks sigma(g_i)^p = sigma(g_i^p) and [sigma g_j, sigma g_i] = sigma([g_j, g_i])
// by collection, then (given a table) bijectivity and sigma^2 = 1 on every
// element, and computes the induced layer matrices. Without a table only
// the relation check and sigma^2 = 1 on generators run; since sigma^2 is an
// endomorphism fixing the generators this still certifies an involution.
InvolutionAction validate_involution(const PcPresentation& pres, std::vector<Element> images,
                                     const GroupTable* table, const CentralSeries* series);

// +-1 eigenspace dimensions on layer `layer` (0-based).
EigenSplit eigen_ranks(const InvolutionAction& act, std::size_t layer);

// Generator-wise image maps x -> x^(+-1), one sign per generator.
std::vector<Element> sign_pattern_images(const PcPresentation& pres, const std::vector<int>& signs);

}  // namespace propp
