#include "propp/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "propp/errors.hpp"

namespace propp {

namespace {

using CommMap = std::map<std::pair<std::size_t, std::size_t>, Word>;

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

struct Candidate {
  std::string tag;
  Family family;
  PcPresentation pres;
  // Involutions the family designates, for the supplied policy; empty means
  // fall back to the inversion-style choice.
  std::vector<std::vector<int>> designated;
};

std::string serialize(const PcPresentation& pres) {
  std::string s = std::to_string(pres.ngens()) + ";";
  for (std::size_t i = 0; i < pres.ngens(); ++i) s += format_word(pres.power_word(i)) + ";";
  for (const auto& [ji, w] : pres.commutators())
    s += std::to_string(ji.first) + "," + std::to_string(ji.second) + ":" + format_word(w) + ";";
  return s;
}

Word random_word(std::mt19937_64& rng, unsigned p, std::size_t first, std::size_t n) {
  Word w;
  if (first >= n || rng() % 2 == 0) return w;
  const std::size_t letters = 1 + rng() % 2;
  std::set<std::size_t> gens;
  for (std::size_t k = 0; k < letters; ++k) gens.insert(first + rng() % (n - first));
  for (std::size_t g : gens) w.push_back({g, static_cast<Exponent>(1 + rng() % (p - 1))});
  return w;
}

std::vector<Candidate> candidates(const CorpusSpec& spec, CorpusStats& stats) {
  const unsigned p = spec.p;
  const std::size_t e = spec.max_order_exponent;
  std::vector<Candidate> out;
  std::vector<Family> fams = spec.families;
  std::sort(fams.begin(), fams.end());
  fams.erase(std::unique(fams.begin(), fams.end()), fams.end());
  for (Family f : fams) {
    switch (f) {
      case Family::ElementaryAbelian:
        for (std::size_t r = 0; r <= e; ++r) {
          Candidate c{"elementary_abelian(r=" + std::to_string(r) + ")", f, elementary_abelian(p, r), {}};
          for (std::size_t a = 0; a <= r; ++a) {
            std::vector<int> s(r, -1);
            std::fill(s.begin(), s.begin() + a, 1);
            c.designated.push_back(s);
          }
          out.push_back(std::move(c));
        }
        break;
      case Family::Homocyclic:
        for (std::size_t k = 2; k <= e; ++k)
          for (std::size_t r = 1; r * k <= e; ++r) {
            Candidate c{"homocyclic(k=" + std::to_string(k) + ",r=" + std::to_string(r) + ")", f,
                        homocyclic(p, k, r), {}};
            for (std::size_t a = 0; a <= r; ++a) {
              std::vector<int> s(r * k);
              for (std::size_t i = 0; i < r * k; ++i) s[i] = i % r < a ? 1 : -1;
              c.designated.push_back(s);
            }
            out.push_back(std::move(c));
          }
        break;
      case Family::Extraspecial:
        for (std::size_t m = 1; 2 * m + 1 <= e; ++m)
          for (bool sq : {false, true}) {
            Candidate c{"extraspecial(m=" + std::to_string(m) + (sq ? ",exp=p^2)" : ",exp=p)"), f,
                        extraspecial(p, m, sq), {}};
            if (!sq) {
              std::vector<int> s(2 * m + 1, -1);
              s.back() = 1;
              c.designated.push_back(s);
            }
            out.push_back(std::move(c));
          }
        break;
      case Family::MetacyclicPowerful:
        for (std::size_t m = 2; m < e; ++m)
          for (std::size_t n = 1; m + n <= e; ++n)
            for (std::size_t k = 1; k < m; ++k) {
              if (m > n + k) continue;
              out.push_back({"metacyclic_powerful(m=" + std::to_string(m) + ",n=" + std::to_string(n) +
                                 ",k=" + std::to_string(k) + ")",
                             f, metacyclic_powerful(p, m, n, k), {}});
            }
        break;
      case Family::RandomPc: {
        if (e < 2) break;
        std::mt19937_64 rng(spec.seed);
        std::set<std::string> seen;
        for (std::size_t attempt = 0; attempt < spec.random_attempts; ++attempt) {
          ++stats.random_attempts;
          const std::size_t n = 2 + rng() % (e - 1);
          std::vector<Word> powers(n);
          for (std::size_t i = 0; i < n; ++i) powers[i] = random_word(rng, p, i + 1, n);
          CommMap comms;
          for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) {
              Word w = random_word(rng, p, j + 1, n);
              if (!w.empty()) comms[{j, i}] = std::move(w);
            }
          PcPresentation pres(p, n, std::move(powers), std::move(comms));
          if (!consistency_check(pres).passed()) {
            ++stats.random_rejected_inconsistent;
            continue;
          }
          if (!seen.insert(serialize(pres)).second) {
            ++stats.random_rejected_duplicate;
            continue;
          }
          ++stats.random_accepted;
          out.push_back({"random_pc(seed=" + std::to_string(spec.seed) + ",attempt=" + std::to_string(attempt) + ")",
                         f, std::move(pres), {}});
        }
        break;
      }
    }
  }
  return out;
}

std::vector<int> mask_signs(std::size_t n, std::size_t mask) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
  return s;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::ElementaryAbelian: return "elementary_abelian";
    case Family::Homocyclic: return "homocyclic";
    case Family::Extraspecial: return "extraspecial";
    case Family::MetacyclicPowerful: return "metacyclic_powerful";
    case Family::RandomPc: return "random_pc";
  }
  return "?";
}

std::string to_string(InvolutionPolicy p) {
  switch (p) {
    case InvolutionPolicy::AllDiagonal: return "all_diagonal";
    case InvolutionPolicy::Inversion: return "inversion";
    case InvolutionPolicy::Supplied: return "supplied";
  }
  return "?";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> all{Family::ElementaryAbelian, Family::Homocyclic, Family::Extraspecial,
                                       Family::MetacyclicPowerful, Family::RandomPc};
  return all;
}

Family family_from_string(const std::string& s) {
  for (Family f : all_families())
    if (to_string(f) == s) return f;
  throw InputError("unknown corpus family '" + s + "'");
}

InvolutionPolicy policy_from_string(const std::string& s) {
  for (auto p : {InvolutionPolicy::AllDiagonal, InvolutionPolicy::Inversion, InvolutionPolicy::Supplied})
    if (to_string(p) == s) return p;
  throw InputError("unknown involution policy '" + s + "'");
}

std::string format_signs(const std::vector<int>& signs) {
  std::string s;
  for (int x : signs) s += x < 0 ? '-' : '+';
  return s;
}

PcPresentation elementary_abelian(unsigned p, std::size_t rank) {
  return PcPresentation(p, rank, std::vector<Word>(rank), {});
}

PcPresentation homocyclic(unsigned p, std::size_t exponent, std::size_t rank) {
  const std::size_t n = exponent * rank;
  std::vector<Word> powers(n);
  for (std::size_t i = 0; i + rank < n; ++i) powers[i] = {{i + rank, 1}};
  return PcPresentation(p, n, std::move(powers), {});
}

PcPresentation extraspecial(unsigned p, std::size_t m, bool exponent_p_squared) {
  const std::size_t n = 2 * m + 1, z = 2 * m;
  std::vector<Word> powers(n);
  if (exponent_p_squared) powers[0] = {{z, 1}};
  CommMap comms;
  for (std::size_t i = 0; i < m; ++i) comms[{2 * i + 1, 2 * i}] = {{z, 1}};
  return PcPresentation(p, n, std::move(powers), std::move(comms));
}

PcPresentation metacyclic_powerful(unsigned p, std::size_t m, std::size_t n, std::size_t k) {
  if (!(1 <= k && k < m && m <= n + k)) throw InputError("metacyclic parameters need 1 <= k < m <= n + k");
  // Generators a_i = a^(p^i), b_j = b^(p^j), interleaved level by level.
  std::vector<std::size_t> pos_a(m), pos_b(n);
  std::size_t next = 0;
  for (std::size_t l = 0; l < std::max(m, n); ++l) {
    if (l < n) pos_b[l] = next++;
    if (l < m) pos_a[l] = next++;
  }
  const std::uint64_t mod_a = ipow(p, m);
  // a^x as a normal word.
  auto a_power = [&](std::uint64_t x) {
    Word w;
    x %= mod_a;
    for (std::size_t l = 0; l < m; ++l, x /= p)
      if (x % p) w.push_back({pos_a[l], static_cast<Exponent>(x % p)});
    return w;
  };
  std::vector<Word> powers(next);
  for (std::size_t i = 0; i + 1 < m; ++i) powers[pos_a[i]] = {{pos_a[i + 1], 1}};
  for (std::size_t j = 0; j + 1 < n; ++j) powers[pos_b[j]] = {{pos_b[j + 1], 1}};
  CommMap comms;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // [a_i, b_j] = a_i^-1 a_i^(b_j) = a^(p^i ((1 + p^k)^(p^j) - 1)).
      std::uint64_t t = 1;
      for (std::uint64_t r = 0; r < ipow(p, j); ++r) t = t * (1 + ipow(p, k)) % mod_a;
      const std::uint64_t x = ipow(p, i) % mod_a * ((t + mod_a - 1) % mod_a) % mod_a;
      if (x == 0) continue;
      if (pos_a[i] > pos_b[j])
        comms[{pos_a[i], pos_b[j]}] = a_power(x);
      else
        comms[{pos_b[j], pos_a[i]}] = a_power(mod_a - x);
    }
  return PcPresentation(p, next, std::move(powers), std::move(comms));
}

Corpus generate(const CorpusSpec& spec) {
  if (spec.p < 3 || !is_prime(spec.p)) throw InputError("p must be an odd prime");
  if (ipow(spec.p, spec.max_order_exponent) > spec.table_cap)
    throw CapExceeded("corpus order bound " + std::to_string(spec.p) + "^" +
                      std::to_string(spec.max_order_exponent) + " exceeds the table cap " +
                      std::to_string(spec.table_cap));
  Corpus corpus;
  auto& stats = corpus.stats;
  for (auto& cand : candidates(spec, stats)) {
    require_consistent(cand.pres);
    ++stats.groups;
    auto pres = std::make_shared<const PcPresentation>(std::move(cand.pres));
    auto table = std::make_shared<const GroupTable>(build_table(*pres, spec.table_cap));
    auto series = std::make_shared<const CentralSeries>(p_central_series(*table));
    const std::size_t n = pres->ngens();
    const Subgroup phi = frattini_subgroup(*table);

    struct Valid {
      std::vector<int> signs;
      InvolutionAction act;
    };
    std::vector<Valid> valid;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      auto signs = mask_signs(n, mask);
      ++stats.sign_patterns_tried;
      try {
        valid.push_back({signs, validate_involution(*pres, sign_pattern_images(*pres, signs), table.get(),
                                                   series.get())});
      } catch (const InvolutionError&) {
        ++stats.sign_patterns_rejected;
      }
    }

    auto inversion_choice = [&]() -> const Valid& {
      auto score = [&](const Valid& v) {
        std::size_t top = 0, total = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (v.signs[i] > 0) continue;
          ++total;
          if (!phi.contains(table->generators()[i])) ++top;
        }
        return std::pair{top, total};
      };
      const Valid* best = &valid.front();
      for (const auto& v : valid)
        if (score(v) > score(*best)) best = &v;
      return *best;
    };

    std::vector<const Valid*> chosen;
    switch (spec.involution_policy) {
      case InvolutionPolicy::AllDiagonal:
        for (const auto& v : valid) chosen.push_back(&v);
        break;
      case InvolutionPolicy::Inversion:
        chosen.push_back(&inversion_choice());
        break;
      case InvolutionPolicy::Supplied:
        for (const auto& want : cand.designated)
          for (const auto& v : valid)
            if (v.signs == want) chosen.push_back(&v);
        if (chosen.empty()) chosen.push_back(&inversion_choice());
        break;
    }
    for (const Valid* v : chosen)
      corpus.members.push_back(
          {cand.tag + "[sigma=" + format_signs(v->signs) + "]", cand.family, pres, table, series, v->signs, v->act});
  }
  return corpus;
}

}  // namespace propp
