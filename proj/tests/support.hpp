#pragma once

#include <map>

#include "propp/corpus.hpp"

namespace testing_support {

// Small corpora shared by several test files; built once per process.
inline const propp::Corpus& corpus(std::size_t max_exponent, propp::InvolutionPolicy policy) {
  static std::map<std::pair<std::size_t, int>, propp::Corpus> cache;
  const auto key = std::make_pair(max_exponent, static_cast<int>(policy));
  auto it = cache.find(key);
  if (it == cache.end()) {
    propp::CorpusSpec spec;
    spec.max_order_exponent = max_exponent;
    spec.involution_policy = policy;
    spec.random_attempts = 120;
    it = cache.emplace(key, propp::generate(spec)).first;
  }
  return it->second;
}

}  // namespace testing_support
