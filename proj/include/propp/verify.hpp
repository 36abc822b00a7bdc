#pragma once

// Executable checks of the structural statements over the corpus. Each suite
// returns a pass flag and a JSON summary whose content does not depend on the
// number of worker threads.

#include <cstddef>
#include <cstdint>
#include <string>

#include "propp/cohomology.hpp"
#include "propp/corpus.hpp"
#include "propp/report.hpp"

namespace propp {

struct VerifyOptions {
  CorpusSpec corpus;
  std::size_t max_rank = 3;             // kunneth
  std::size_t samples = 100;            // herbrand
  std::uint64_t seed = 7;               // herbrand
  std::size_t oracle_max_exponent = 5;  // oracle: products checked up to p^this
  std::size_t brute_cap = kDefaultBruteCap;
  std::size_t jobs = 1;
};

struct VerifyResult {
  bool passed = false;
  Json summary;
};

VerifyResult verify_kunneth(const VerifyOptions& o);
VerifyResult verify_prop21(const VerifyOptions& o);
VerifyResult verify_prop22(const VerifyOptions& o);
VerifyResult verify_oracle(const VerifyOptions& o);
VerifyResult verify_herbrand(const VerifyOptions& o);

// Dispatch by suite name; throws InputError on an unknown suite.
VerifyResult run_suite(const std::string& suite, const VerifyOptions& o);

}  // namespace propp
