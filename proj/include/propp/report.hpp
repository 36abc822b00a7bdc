#pragma once

// JSON report blocks. Key order is fixed and every number is an exact
// integer, so reports are byte-stable for fixed inputs.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "propp/cohomology.hpp"
#include "propp/corpus.hpp"
#include "propp/structure.hpp"
#include "propp/verdicts.hpp"

namespace propp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json structure_block(const StructureReport& s, const GroupTable& t, const std::optional<EigenSplit>& split);
Json cohomology_block(const CohomologyReport& c);
Json verdict_block(const FmVerdict& v, bool verbose);
Json echo_block(const PcPresentation& pres, const std::vector<Element>* sigma);
// Full description of a corpus member, used for counterexample witnesses.
Json member_block(const CorpusMember& m);
Json corpus_stats_block(const CorpusStats& s);

// {"schema_version": 1, "command": ...} to which blocks are appended.
Json report_header(const std::string& command);

}  // namespace propp
