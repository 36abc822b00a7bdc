#pragma once

// Text format for pc-presentations:
//
//   # comment
//   prime: 3
//   ngens: 3
//   power 1: g3^1
//   comm 2 1: g3
//   sigma: g1^-1, g2^-1, g3
//
// Generators are 1-based. Relation words are normal words in higher
// generators; sigma words may use any letters and negative exponents.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propp/pc_presentation.hpp"

namespace propp {

struct PresentationFile {
  PcPresentation pres;
  std::optional<std::vector<Element>> sigma;
};

// Throws InputError with "line L, col C:" diagnostics.
PresentationFile parse_presentation(std::string_view text);
PresentationFile read_presentation_file(const std::string& path);

std::string write_presentation(const PcPresentation& pres, const std::vector<Element>* sigma = nullptr);

}  // namespace propp
