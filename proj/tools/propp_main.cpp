// propp: command-line front end.
//
// Exit codes: 0 success, 1 property violation found, 2 invalid input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "propp/cohomology.hpp"
#include "propp/corpus.hpp"
#include "propp/errors.hpp"
#include "propp/presentation_io.hpp"
#include "propp/report.hpp"
#include "propp/structure.hpp"
#include "propp/verdicts.hpp"
#include "propp/verify.hpp"

namespace {

using namespace propp;
using Clock = std::chrono::steady_clock;

bool parse_bool(const std::string& flag, const std::string& v) {
  if (v == "true" || v == "t" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "f" || v == "0" || v == "no") return false;
  throw InputError(flag + " expects true or false, got '" + v + "'");
}

std::optional<bool> parse_tristate(const std::string& flag, const std::string& v) {
  if (v.empty()) return std::nullopt;
  return parse_bool(flag, v);
}

std::size_t resolve_table_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PROPP_MAX_TABLE")) {
    std::size_t v = 0;
    std::istringstream is(env);
    if (!(is >> v) || !is.eof() || v == 0) throw InputError("PROPP_MAX_TABLE must be a positive integer");
    return v;
  }
  return kDefaultTableCap;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct Common {
  std::optional<std::size_t> table_cap;
  bool timings = false;
};

struct Loaded {
  PresentationFile file;
  GroupTable table;
  StructureReport structure;
  std::optional<InvolutionAction> action;
};

Loaded load(const std::string& path, std::size_t table_cap, bool need_sigma) {
  PresentationFile f = read_presentation_file(path);
  require_consistent(f.pres);
  GroupTable t = build_table(f.pres, table_cap);
  StructureReport s = analyze_structure(t);
  std::optional<InvolutionAction> act;
  std::vector<Element> images;
  if (f.sigma)
    images = *f.sigma;
  else if (need_sigma)
    for (std::size_t i = 0; i < f.pres.ngens(); ++i) images.push_back(f.pres.generator(i));
  if (f.sigma || need_sigma) act = validate_involution(f.pres, images, &t, &s.central_series);
  return {std::move(f), std::move(t), std::move(s), std::move(act)};
}

Json meta_block(std::size_t table_cap, std::optional<std::size_t> brute_cap, std::optional<std::uint64_t> seed,
                bool timings, Clock::time_point start) {
  Json j;
  j["table_cap"] = table_cap;
  if (brute_cap) j["cohomology_cap"] = *brute_cap;
  if (seed) j["seed"] = *seed;
  if (timings)
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return j;
}

int run(int argc, char** argv) {
  const auto start = Clock::now();
  CLI::App app{"Structure, cohomology and decision checks for finite p-groups with involution", "propp"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--table-cap", common.table_cap, "maximum group order to materialize (default 2187)");
  app.add_flag("--timings", common.timings, "add wall-clock timings to the meta block");

  // classify
  auto* classify = app.add_subcommand("classify", "structure of a presentation file");
  std::string classify_file;
  classify->add_option("file", classify_file, "presentation file")->required();

  // cohomology
  auto* coh = app.add_subcommand("cohomology", "H^1, H^2 and their sigma-eigensplits");
  std::string coh_file;
  std::size_t coh_max_order = kDefaultBruteCap;
  coh->add_option("file", coh_file, "presentation file")->required();
  coh->add_option("--max-order", coh_max_order, "largest group order for cocycle linear algebra");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite over the corpus");
  std::string suite;
  VerifyOptions vo;
  std::string families, policy = "all_diagonal", config;
  std::optional<std::uint64_t> seed;
  verify->add_option("suite", suite, "kunneth | prop21 | prop22 | oracle | herbrand")->required();
  verify->add_option("--p", vo.corpus.p, "odd prime (default 3)");
  verify->add_option("--max-order-exp", vo.corpus.max_order_exponent, "corpus order bound p^e (default 4)");
  verify->add_option("--max-rank", vo.max_rank, "kunneth: largest elementary abelian rank (default 3)");
  verify->add_option("--samples", vo.samples, "herbrand: number of random modules (default 100)");
  verify->add_option("--seed", seed, "RNG seed (herbrand sampling; corpus random_pc)");
  verify->add_option("--families", families, "comma-separated corpus families");
  verify->add_option("--policy", policy, "all_diagonal | inversion | supplied");
  verify->add_option("--random-attempts", vo.corpus.random_attempts, "random_pc candidates to sample");
  verify->add_option("--oracle-max-exp", vo.oracle_max_exponent, "oracle: product check up to p^e (default 5)");
  verify->add_option("--max-order", vo.brute_cap, "cohomology cap for prop22/kunneth (default 256)");
  verify->add_option("--jobs", vo.jobs, "worker threads");
  verify->add_option("--config", config, "JSON corpus spec (flags override)");

  // verdict
  auto* verdict = app.add_subcommand("verdict", "decision calculus over declared arithmetic inputs");
  std::size_t d_plus = 0;
  std::optional<std::size_t> d_minus;
  std::string mu_p, unram, mu_zero, n_large;
  bool s_variant = false, verbose = false;
  verdict->add_option("--d-plus", d_plus, "dim (Cl(k)/p)^+")->required();
  verdict->add_option("--d-minus", d_minus, "dim (Cl(k)/p)^-");
  verdict->add_option("--mu-p", mu_p, "whether mu_p lies in k")->required();
  verdict->add_option("--first-layer-unramified", unram, "whether k_1|k is unramified");
  verdict->add_option("--mu-invariant-zero", mu_zero, "declared vanishing of the mu-invariant");
  verdict->add_option("--n-large", n_large, "declared n >= n0");
  verdict->add_flag("--s-variant", s_variant, "label the report for the S-ramified variant");
  verdict->add_flag("--verbose", verbose, "include rule anchors in the reasoning chain");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "list the generated corpus");
  CorpusSpec cs;
  std::string corpus_families, corpus_policy = "all_diagonal";
  corpus->add_option("--p", cs.p, "odd prime (default 3)");
  corpus->add_option("--max-order-exp", cs.max_order_exponent, "order bound p^e (default 4)");
  corpus->add_option("--families", corpus_families, "comma-separated families");
  corpus->add_option("--policy", corpus_policy, "all_diagonal | inversion | supplied");
  corpus->add_option("--seed", cs.seed, "random_pc seed (default 1)");
  corpus->add_option("--random-attempts", cs.random_attempts, "random_pc candidates to sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::size_t table_cap = resolve_table_cap(common.table_cap);
  auto parse_families = [](const std::string& s) {
    std::vector<Family> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(family_from_string(item));
    return out;
  };

  if (*classify) {
    Loaded l = load(classify_file, table_cap, false);
    Json j = report_header("classify");
    std::optional<EigenSplit> split;
    if (l.action) split = eigen_ranks(*l.action, 0);
    j["structure"] = structure_block(l.structure, l.table, split);
    j["meta"] = meta_block(table_cap, std::nullopt, std::nullopt, common.timings, start);
    j["echo"] = echo_block(l.file.pres, l.action ? &l.action->images() : nullptr);
    emit(j);
    return 0;
  }
  if (*coh) {
    Loaded l = load(coh_file, table_cap, true);
    if (l.table.order() > coh_max_order)
      throw CapExceeded("group order " + std::to_string(l.table.order()) + " exceeds --max-order " +
                        std::to_string(coh_max_order));
    const CohomologyReport rep = cohomology_report(l.table, *l.action, coh_max_order);
    Json j = report_header("cohomology");
    j["structure"] = structure_block(l.structure, l.table, eigen_ranks(*l.action, 0));
    j["cohomology"] = cohomology_block(rep);
    j["meta"] = meta_block(table_cap, coh_max_order, std::nullopt, common.timings, start);
    j["echo"] = echo_block(l.file.pres, &l.action->images());
    emit(j);
    return 0;
  }
  if (*verify) {
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw InputError("cannot read config '" + config + "'");
      Json c;
      try {
        c = Json::parse(in);
      } catch (const Json::exception& e) {
        throw InputError("config '" + config + "': " + e.what());
      }
      // Explicit flags win over the file.
      if (c.contains("p") && verify->count("--p") == 0) vo.corpus.p = c["p"].get<unsigned>();
      if (c.contains("max_order_exponent") && verify->count("--max-order-exp") == 0)
        vo.corpus.max_order_exponent = c["max_order_exponent"].get<std::size_t>();
      if (c.contains("families") && families.empty()) {
        vo.corpus.families.clear();
        for (const auto& f : c["families"]) vo.corpus.families.push_back(family_from_string(f.get<std::string>()));
      }
      if (c.contains("involution_policy") && verify->count("--policy") == 0)
        policy = c["involution_policy"].get<std::string>();
      if (c.contains("seed") && !seed) vo.corpus.seed = c["seed"].get<std::uint64_t>();
    }
    if (!families.empty()) vo.corpus.families = parse_families(families);
    vo.corpus.involution_policy = policy_from_string(policy);
    vo.corpus.table_cap = table_cap;
    if (seed) {
      vo.seed = *seed;
      vo.corpus.seed = *seed;
    }
    if (vo.corpus.p < 3 || !is_prime(vo.corpus.p)) throw InputError("--p must be an odd prime");
    if (vo.jobs == 0) throw InputError("--jobs must be positive");
    VerifyResult r = run_suite(suite, vo);
    r.summary["meta"] = meta_block(table_cap, vo.brute_cap, suite == "herbrand" ? vo.seed : vo.corpus.seed,
                                   common.timings, start);
    emit(r.summary);
    std::cerr << "verify " << suite << ": " << (r.passed ? "pass" : "FAIL") << " ("
              << r.summary["instances"].get<std::size_t>() << " instances, "
              << r.summary["violations"].get<std::size_t>() << " violations)\n";
    return r.passed ? 0 : 1;
  }
  if (*verdict) {
    FmInput in;
    in.d_plus = d_plus;
    in.d_minus = d_minus;
    in.mu_p_in_k = parse_bool("--mu-p", mu_p);
    in.first_layer_unramified = parse_tristate("--first-layer-unramified", unram);
    in.mu_invariant_zero = parse_tristate("--mu-invariant-zero", mu_zero);
    in.n_at_least_n0 = parse_tristate("--n-large", n_large);
    in.s_variant = s_variant;
    // n0 is only defined once the mu-invariant vanishes.
    if (in.n_at_least_n0 && in.mu_invariant_zero == false)
      throw InputError("--n-large is meaningless with --mu-invariant-zero false");
    const FmVerdict v = fm_verdict(in);
    Json j = report_header("verdict");
    Json input;
    input["d_plus"] = in.d_plus;
    input["d_minus"] = in.d_minus ? Json(*in.d_minus) : Json(nullptr);
    input["mu_p_in_k"] = in.mu_p_in_k;
    input["first_layer_unramified"] = in.first_layer_unramified ? Json(*in.first_layer_unramified) : Json(nullptr);
    input["mu_invariant_zero"] = in.mu_invariant_zero ? Json(*in.mu_invariant_zero) : Json(nullptr);
    input["n_at_least_n0"] = in.n_at_least_n0 ? Json(*in.n_at_least_n0) : Json(nullptr);
    input["s_variant"] = in.s_variant;
    j["input"] = input;
    j["verdict"] = verdict_block(v, verbose);
    if (common.timings) j["meta"] = meta_block(table_cap, std::nullopt, std::nullopt, true, start);
    emit(j);
    return 0;
  }
  if (*corpus) {
    if (!corpus_families.empty()) cs.families = parse_families(corpus_families);
    cs.involution_policy = policy_from_string(corpus_policy);
    cs.table_cap = table_cap;
    const Corpus c = generate(cs);
    Json j = report_header("corpus");
    Json members = Json::array();
    for (const auto& m : c.members) {
      Json mj = member_block(m);
      const auto split = eigen_ranks(m.action, 0);
      mj["d_plus"] = split.d_plus;
      mj["d_minus"] = split.d_minus;
      mj["powerful"] = is_powerful(*m.table).powerful;
      mj["abelian"] = is_abelian(*m.table);
      members.push_back(mj);
    }
    j["stats"] = corpus_stats_block(c.stats);
    j["members"] = members;
    j["meta"] = meta_block(table_cap, std::nullopt, cs.seed, common.timings, start);
    emit(j);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const propp::InputError& e) {
    std::cerr << "propp: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "propp: internal error: " << e.what() << "\n";
    return 3;
  }
}
