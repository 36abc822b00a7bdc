#include "propp/report.hpp"

#include "propp/presentation_io.hpp"

namespace propp {

Json report_header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json structure_block(const StructureReport& s, const GroupTable& t, const std::optional<EigenSplit>& split) {
  Json j;
  j["order"] = t.order();
  j["order_exponent"] = s.order_exponent;
  j["d"] = s.d;
  if (split) {
    j["d_plus"] = split->d_plus;
    j["d_minus"] = split->d_minus;
  } else {
    j["d_plus"] = nullptr;
    j["d_minus"] = nullptr;
  }
  j["powerful"] = s.powerful;
  j["abelian"] = s.abelian;
  j["layer_ranks"] = s.central_series.layer_ranks;
  if (s.layer_regular_depth)
    j["layer_regular_depth"] = *s.layer_regular_depth;
  else
    j["layer_regular_depth"] = nullptr;
  j["uniform_quotient_candidate"] = s.uniform_quotient_candidate;
  if (s.powerful_witness && t.labels().size() == t.order())
    j["powerful_witness_exponents"] = t.labels()[*s.powerful_witness].exps;
  return j;
}

Json cohomology_block(const CohomologyReport& c) {
  Json j;
  j["h1"] = c.h1;
  j["h1_plus"] = c.h1_plus;
  j["h1_minus"] = c.h1_minus;
  j["h2"] = c.h2;
  j["h2_plus"] = c.h2_plus;
  j["h2_minus"] = c.h2_minus;
  j["p_h2_qpzp"] = c.p_h2_qpzp;
  j["p_h2_qpzp_plus"] = c.p_h2_qpzp_plus;
  j["p_h2_qpzp_minus"] = c.p_h2_qpzp_minus;
  j["dim_z2"] = c.dim_z2;
  j["dim_b2"] = c.dim_b2;
  return j;
}

Json verdict_block(const FmVerdict& v, bool verbose) {
  Json j;
  j["conclusion"] = to_string(v.conclusion);
  Json also = Json::array();
  for (auto c : v.also_applicable) also.push_back(to_string(c));
  j["also_applicable"] = also;
  Json chain = Json::array();
  for (const auto& s : v.reasoning_chain) {
    Json step;
    step["rule"] = s.rule;
    if (verbose) step["anchor"] = s.anchor;
    step["premise"] = s.premise;
    step["holds"] = s.holds;
    chain.push_back(step);
  }
  j["reasoning_chain"] = chain;
  j["warnings"] = v.warnings;
  j["group"] = v.group_label;
  j["class_group"] = v.class_group_label;
  return j;
}

Json echo_block(const PcPresentation& pres, const std::vector<Element>* sigma) {
  Json j;
  j["presentation"] = write_presentation(pres, sigma);
  return j;
}

Json member_block(const CorpusMember& m) {
  Json j;
  j["tag"] = m.tag;
  j["family"] = to_string(m.family);
  j["order"] = m.table->order();
  j["sigma_signs"] = format_signs(m.signs);
  j["presentation"] = write_presentation(*m.pres, &m.action.images());
  return j;
}

Json corpus_stats_block(const CorpusStats& s) {
  Json j;
  j["groups"] = s.groups;
  j["random_attempts"] = s.random_attempts;
  j["random_rejected_inconsistent"] = s.random_rejected_inconsistent;
  j["random_rejected_duplicate"] = s.random_rejected_duplicate;
  j["random_accepted"] = s.random_accepted;
  j["sign_patterns_tried"] = s.sign_patterns_tried;
  j["sign_patterns_rejected"] = s.sign_patterns_rejected;
  return j;
}

}  // namespace propp
