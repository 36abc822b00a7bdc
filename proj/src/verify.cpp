#include "propp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <thread>

#include "propp/errors.hpp"
#include "propp/presentation_io.hpp"
#include "propp/tate.hpp"
#include "propp/verdicts.hpp"

namespace propp {

namespace {

struct Outcome {
  Json record;
  bool violation = false;
  bool counted = true;
};

// Runs f(i) for i < n on up to `jobs` threads and returns results in index
// order.
std::vector<Outcome> fan_out(std::size_t n, std::size_t jobs, const std::function<Outcome(std::size_t)>& f) {
  std::vector<Outcome> out(n);
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next++) < n;) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

VerifyResult summarize(const std::string& suite, std::vector<Outcome> outcomes, Json extra = Json::object()) {
  VerifyResult r;
  r.summary = report_header("verify");
  r.summary["suite"] = suite;
  std::size_t instances = 0, violations = 0;
  Json results = Json::array(), witnesses = Json::array();
  for (auto& o : outcomes) {
    if (!o.counted) {
      results.push_back(std::move(o.record));
      continue;
    }
    ++instances;
    if (o.violation) {
      ++violations;
      witnesses.push_back(o.record);
    }
    results.push_back(std::move(o.record));
  }
  r.passed = violations == 0;
  r.summary["passed"] = r.passed;
  r.summary["instances"] = instances;
  r.summary["violations"] = violations;
  for (auto& [k, v] : extra.items()) r.summary[k] = v;
  r.summary["counterexamples"] = witnesses;
  r.summary["results"] = results;
  return r;
}

Json corpus_meta(const VerifyOptions& o, const Corpus& c) {
  Json j;
  j["p"] = o.corpus.p;
  j["max_order_exponent"] = o.corpus.max_order_exponent;
  Json fams = Json::array();
  for (auto f : o.corpus.families) fams.push_back(to_string(f));
  j["families"] = fams;
  j["involution_policy"] = to_string(o.corpus.involution_policy);
  j["seed"] = o.corpus.seed;
  j["table_cap"] = o.corpus.table_cap;
  j["members"] = c.members.size();
  j["stats"] = corpus_stats_block(c.stats);
  return j;
}

}  // namespace

VerifyResult verify_kunneth(const VerifyOptions& o) {
  std::vector<std::pair<std::size_t, std::size_t>> splits;
  for (std::size_t r = 0; r <= o.max_rank; ++r)
    for (std::size_t a = 0; a <= r; ++a) splits.push_back({a, r - a});
  const unsigned p = o.corpus.p;
  auto outcomes = fan_out(splits.size(), o.jobs, [&](std::size_t i) {
    const auto [a, b] = splits[i];
    const PcPresentation pres = elementary_abelian(p, a + b);
    std::vector<int> signs(a + b, -1);
    std::fill(signs.begin(), signs.begin() + a, 1);
    const GroupTable t = build_table(pres, o.corpus.table_cap);
    const CentralSeries s = p_central_series(t);
    const auto act = validate_involution(pres, sign_pattern_images(pres, signs), &t, &s);
    const H2Splits brute = h2_eigensplit(t, act, o.brute_cap);
    const H2Splits formula = kunneth_dims(a, b);
    Outcome out;
    out.record["d_plus"] = a;
    out.record["d_minus"] = b;
    out.record["h2_plus"] = brute.plus;
    out.record["h2_minus"] = brute.minus;
    out.record["formula_plus"] = formula.plus;
    out.record["formula_minus"] = formula.minus;
    out.violation = !(brute == formula);
    if (out.violation) out.record["presentation"] = write_presentation(pres, &act.images());
    return out;
  });
  Json extra;
  extra["p"] = p;
  extra["max_rank"] = o.max_rank;
  return summarize("kunneth", std::move(outcomes), extra);
}

VerifyResult verify_prop21(const VerifyOptions& o) {
  const Corpus c = generate(o.corpus);
  auto outcomes = fan_out(c.members.size(), o.jobs, [&](std::size_t i) {
    const auto& m = c.members[i];
    const auto split = eigen_ranks(m.action, 0);
    const bool powerful = is_powerful(*m.table).powerful;
    const bool abelian = is_abelian(*m.table);
    Outcome out;
    out.record["tag"] = m.tag;
    out.record["d_plus"] = split.d_plus;
    out.record["d_minus"] = split.d_minus;
    out.record["powerful"] = powerful;
    out.record["abelian"] = abelian;
    const auto rule = prop21_rule(split.d_plus, powerful, true);
    out.record["rule"] = to_string(rule);
    out.counted = powerful && split.d_plus == 0;
    out.violation = out.counted && !abelian;
    if (out.violation) out.record["member"] = member_block(m);
    if (!powerful && split.d_plus == 0 && !abelian) out.record["hypothesis_witness"] = true;
    return out;
  });
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < c.members.size(); ++i)
    if (outcomes[i].record.contains("hypothesis_witness")) witnesses.push_back(c.members[i].tag);
  Json extra;
  extra["corpus"] = corpus_meta(o, c);
  extra["non_powerful_nonabelian_d_plus_zero"] = witnesses;
  return summarize("prop21", std::move(outcomes), extra);
}

VerifyResult verify_prop22(const VerifyOptions& o) {
  const Corpus c = generate(o.corpus);
  auto outcomes = fan_out(c.members.size(), o.jobs, [&](std::size_t i) {
    const auto& m = c.members[i];
    Outcome out;
    out.record["tag"] = m.tag;
    const bool powerful = is_powerful(*m.table).powerful;
    out.record["powerful"] = powerful;
    if (!powerful) {
      out.counted = false;
      return out;
    }
    if (m.table->order() > o.brute_cap) {
      out.counted = false;
      out.record["skipped"] = "order exceeds the cohomology cap";
      return out;
    }
    const auto split = eigen_ranks(m.action, 0);
    const CohomologyReport rep = cohomology_report(*m.table, m.action, o.brute_cap);
    const auto res = prop22_check(split.d_plus, split.d_minus, rep.p_h2_qpzp_plus, rep.p_h2_qpzp_minus);
    out.record["d_plus"] = split.d_plus;
    out.record["d_minus"] = split.d_minus;
    out.record["h2_plus"] = rep.h2_plus;
    out.record["h2_minus"] = rep.h2_minus;
    out.record["p_h2_qpzp_plus"] = rep.p_h2_qpzp_plus;
    out.record["p_h2_qpzp_minus"] = rep.p_h2_qpzp_minus;
    out.record["ineq_i"] = res.ineq_i;
    out.record["ineq_ii"] = res.ineq_ii;
    out.violation = !res.both();
    if (out.violation) out.record["member"] = member_block(m);
    return out;
  });
  std::size_t skipped = 0;
  for (const auto& out : outcomes) skipped += out.record.contains("skipped");
  Json extra;
  extra["corpus"] = corpus_meta(o, c);
  extra["brute_cap"] = o.brute_cap;
  extra["skipped_over_cap"] = skipped;
  return summarize("prop22", std::move(outcomes), extra);
}

VerifyResult verify_oracle(const VerifyOptions& o) {
  const Corpus c = generate(o.corpus);
  std::vector<const CorpusMember*> groups;
  for (const auto& m : c.members)
    if (groups.empty() || groups.back()->pres != m.pres) groups.push_back(&m);
  std::uint64_t product_cap = 1;
  for (std::size_t k = 0; k < o.oracle_max_exponent; ++k) product_cap *= o.corpus.p;
  auto outcomes = fan_out(groups.size(), o.jobs, [&](std::size_t i) {
    const auto& m = *groups[i];
    const GroupTable& t = *m.table;
    Outcome out;
    out.record["tag"] = m.tag;
    bool products_ok = true;
    std::size_t pairs = 0;
    if (t.order() <= product_cap) {
      for (ElemId a = 0; a < t.order() && products_ok; ++a)
        for (ElemId b = 0; b < t.order(); ++b) {
          ++pairs;
          if (m.pres->multiply(t.labels()[a], t.labels()[b]) != t.labels()[t.mul(a, b)]) {
            products_ok = false;
            out.record["product_mismatch"] = {format_element(*m.pres, t.labels()[a]),
                                              format_element(*m.pres, t.labels()[b])};
            break;
          }
        }
    }
    const bool phi_ok = frattini_from_generators(t) == frattini_subgroup(t);
    bool power_set_ok = true;
    if (is_powerful(t).powerful) {
      auto whole = whole_group(t);
      auto set = power_set(t, whole);
      power_set_ok = Subgroup(t.order(), set) == power_subgroup(t, whole);
    }
    out.record["pairs_checked"] = pairs;
    out.record["products_agree"] = products_ok;
    out.record["frattini_agree"] = phi_ok;
    out.record["power_set_is_subgroup"] = power_set_ok;
    out.violation = !(products_ok && phi_ok && power_set_ok);
    if (out.violation) out.record["member"] = member_block(m);
    return out;
  });
  Json extra;
  extra["corpus"] = corpus_meta(o, c);
  extra["product_check_max_order"] = product_cap;
  return summarize("oracle", std::move(outcomes), extra);
}

VerifyResult verify_herbrand(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<TateModule> modules;
  for (std::size_t i = 0; i < o.samples; ++i) modules.push_back(random_tate_module(rng));
  const unsigned p = o.corpus.p;
  auto outcomes = fan_out(modules.size(), o.jobs, [&](std::size_t i) {
    const auto& m = modules[i];
    const TateResult r = tate_h0_h1(m, p);
    Outcome out;
    out.record["module_orders"] = m.orders();
    out.record["cyclic_order"] = m.cyclic_order();
    out.record["h0"] = r.h0.elementary_divisors;
    out.record["h_minus1"] = r.h_minus1.elementary_divisors;
    out.violation = r.h0.order() != r.h_minus1.order();
    return out;
  });
  // Trivial action of C_p on Z/p: both groups are Z/p.
  const TateResult trivial = tate_h0_h1(TateModule({p}, {{1}}, p), p);
  Json extra;
  extra["seed"] = o.seed;
  extra["samples"] = o.samples;
  extra["trivial_cyclic_p_rank_h0"] = trivial.p_rank_h0;
  auto r = summarize("herbrand", std::move(outcomes), extra);
  if (trivial.p_rank_h0 != 1) {
    r.passed = false;
    r.summary["passed"] = false;
  }
  return r;
}

VerifyResult run_suite(const std::string& suite, const VerifyOptions& o) {
  if (suite == "kunneth") return verify_kunneth(o);
  if (suite == "prop21") return verify_prop21(o);
  if (suite == "prop22") return verify_prop22(o);
  if (suite == "oracle") return verify_oracle(o);
  if (suite == "herbrand") return verify_herbrand(o);
  throw InputError("unknown suite '" + suite + "' (expected kunneth, prop21, prop22, oracle or herbrand)");
}

}  // namespace propp
