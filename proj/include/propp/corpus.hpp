#pragma once

// Finite p-groups with validated involutions, used as the test population
// for the structural propositions.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "propp/group_table.hpp"
#include "propp/involution.hpp"
#include "propp/pc_presentation.hpp"
#include "propp/structure.hpp"

namespace propp {

enum class Family { ElementaryAbelian, Homocyclic, Extraspecial, MetacyclicPowerful, RandomPc };
enum class InvolutionPolicy { AllDiagonal, Inversion, Supplied };

std::string to_string(Family f);
std::string to_string(InvolutionPolicy p);
// Throws InputError on unknown names.
Family family_from_string(const std::string& s);
InvolutionPolicy policy_from_string(const std::string& s);
const std::vector<Family>& all_families();

struct CorpusSpec {
  unsigned p = 3;
  std::size_t max_order_exponent = 4;
  std::vector<Family> families = all_families();
  InvolutionPolicy involution_policy = InvolutionPolicy::AllDiagonal;
  std::uint64_t seed = 1;
  std::size_t random_attempts = 200;
  std::size_t table_cap = kDefaultTableCap;
};

struct CorpusMember {
  std::string tag;
  Family family;
  std::shared_ptr<const PcPresentation> pres;
  std::shared_ptr<const GroupTable> table;
  std::shared_ptr<const CentralSeries> series;
  // +1 / -1 per generator: sigma(g_i) = g_i^sign.
  std::vector<int> signs;
  InvolutionAction action;
};

struct CorpusStats {
  std::size_t groups = 0;
  std::size_t random_attempts = 0;
  std::size_t random_rejected_inconsistent = 0;
  std::size_t random_rejected_duplicate = 0;
  std::size_t random_accepted = 0;
  std::size_t sign_patterns_tried = 0;
  std::size_t sign_patterns_rejected = 0;
};

struct Corpus {
  std::vector<CorpusMember> members;
  CorpusStats stats;
};

// Deterministic in the spec. Every member passed consistency_check and
// exhaustive validate_involution.
Corpus generate(const CorpusSpec& spec);

// Presentations of the individual families (no involutions).
PcPresentation elementary_abelian(unsigned p, std::size_t rank);
PcPresentation homocyclic(unsigned p, std::size_t exponent, std::size_t rank);
// p^(1+2m); exponent p, or exponent p^2 with x1^p = z.
PcPresentation extraspecial(unsigned p, std::size_t m, bool exponent_p_squared);
// <a, b | a^(p^m), b^(p^n), b^-1 a b = a^(1+p^k)>, 1 <= k < m <= n + k.
PcPresentation metacyclic_powerful(unsigned p, std::size_t m, std::size_t n, std::size_t k);

std::string format_signs(const std::vector<int>& signs);

}  // namespace propp
