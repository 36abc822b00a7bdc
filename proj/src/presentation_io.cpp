#include "propp/presentation_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "propp/errors.hpp"
#include "propp/fp_linalg.hpp"

namespace propp {

namespace {

struct Pos {
  std::size_t line = 0, col = 0;
};

[[noreturn]] void fail(Pos at, const std::string& what) {
  throw InputError("line " + std::to_string(at.line) + ", col " + std::to_string(at.col) + ": " + what);
}

struct Token {
  std::string text;
  Pos at;
};

std::vector<Token> split_tokens(std::string_view s, Pos start) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back({std::string(s.substr(i, j - i)), {start.line, start.col + i}});
    i = j;
  }
  return out;
}

long long parse_int(const std::string& s, Pos at, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(at, "expected " + what + ", got '" + s + "'");
  return v;
}

struct RawLetter {
  long long gen = 0;  // 1-based
  long long exp = 0;
  Pos at;
};

std::vector<RawLetter> parse_word(std::string_view s, Pos start) {
  std::vector<RawLetter> w;
  for (const auto& tok : split_tokens(s, start)) {
    if (tok.text == "1") continue;
    if (tok.text.size() < 2 || tok.text[0] != 'g') fail(tok.at, "expected a letter g<k>^<e>, got '" + tok.text + "'");
    const auto caret = tok.text.find('^');
    RawLetter l;
    l.at = tok.at;
    l.gen = parse_int(tok.text.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), tok.at,
                      "a generator index");
    l.exp = caret == std::string::npos ? 1 : parse_int(tok.text.substr(caret + 1), tok.at, "an exponent");
    w.push_back(l);
  }
  return w;
}

struct RawWord {
  std::vector<RawLetter> letters;
  Pos at;
};

Word to_relation_word(const RawWord& raw, unsigned p, std::size_t n) {
  Word w;
  for (const auto& l : raw.letters) {
    if (l.gen < 1 || static_cast<std::size_t>(l.gen) > n)
      fail(l.at, "generator g" + std::to_string(l.gen) + " is not in the generator list");
    if (l.exp < 0 || l.exp >= static_cast<long long>(p))
      fail(l.at, "relation exponent " + std::to_string(l.exp) + " not in [0, p)");
    if (!w.empty() && w.back().gen >= static_cast<std::size_t>(l.gen - 1))
      fail(l.at, "relation words must list generators in increasing order");
    if (l.exp != 0) w.push_back({static_cast<std::size_t>(l.gen - 1), static_cast<Exponent>(l.exp)});
  }
  return w;
}

Element evaluate_raw(const PcPresentation& pres, const RawWord& raw) {
  Element acc = pres.identity();
  for (const auto& l : raw.letters) {
    if (l.gen < 1 || static_cast<std::size_t>(l.gen) > pres.ngens())
      fail(l.at, "generator g" + std::to_string(l.gen) + " is not in the generator list");
    Element g = pres.generator(static_cast<std::size_t>(l.gen - 1));
    if (l.exp < 0) g = pres.inverse(g);
    const unsigned long long e = l.exp < 0 ? static_cast<unsigned long long>(-l.exp) : l.exp;
    acc = pres.multiply(acc, pres.power(g, e));
  }
  return acc;
}

}  // namespace

PresentationFile parse_presentation(std::string_view text) {
  std::optional<long long> prime, ngens;
  Pos prime_at, ngens_at;
  std::map<long long, RawWord> powers;
  std::map<std::pair<long long, long long>, RawWord> comms;
  std::optional<std::vector<RawWord>> sigma;
  Pos sigma_at;

  std::size_t line_no = 0, begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    const std::size_t next = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      begin = next;
      continue;
    }
    const Pos line_at{line_no, first + 1};
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) fail(line_at, "expected 'key: value'");
    const auto head = split_tokens(line.substr(0, colon), {line_no, 1});
    const std::string_view body = line.substr(colon + 1);
    const Pos body_at{line_no, colon + 2};
    if (head.empty()) fail(line_at, "missing key before ':'");
    const std::string& key = head[0].text;

    auto single_value = [&](const char* what) {
      const auto toks = split_tokens(body, body_at);
      if (head.size() != 1) fail(head[1].at, std::string("unexpected token after '") + key + "'");
      if (toks.size() != 1) fail(toks.empty() ? body_at : toks[1].at, std::string("expected a single ") + what);
      return parse_int(toks[0].text, toks[0].at, what);
    };

    if (key == "prime") {
      if (prime) fail(head[0].at, "duplicate 'prime'");
      prime = single_value("prime");
      prime_at = head[0].at;
    } else if (key == "ngens") {
      if (ngens) fail(head[0].at, "duplicate 'ngens'");
      ngens = single_value("generator count");
      ngens_at = head[0].at;
    } else if (key == "power") {
      if (head.size() != 2) fail(head[0].at, "expected 'power <i>: <word>'");
      const long long i = parse_int(head[1].text, head[1].at, "a generator index");
      if (powers.count(i)) fail(head[0].at, "duplicate power relation for g" + std::to_string(i));
      powers[i] = {parse_word(body, body_at), head[1].at};
    } else if (key == "comm") {
      if (head.size() != 3) fail(head[0].at, "expected 'comm <j> <i>: <word>'");
      const long long j = parse_int(head[1].text, head[1].at, "a generator index");
      const long long i = parse_int(head[2].text, head[2].at, "a generator index");
      if (j <= i) fail(head[1].at, "commutator relations need j > i");
      if (comms.count({j, i}))
        fail(head[0].at, "duplicate commutator relation for [g" + std::to_string(j) + ", g" + std::to_string(i) + "]");
      comms[{j, i}] = {parse_word(body, body_at), head[1].at};
    } else if (key == "sigma") {
      if (sigma) fail(head[0].at, "duplicate 'sigma'");
      if (head.size() != 1) fail(head[1].at, "unexpected token after 'sigma'");
      sigma.emplace();
      sigma_at = head[0].at;
      std::size_t s = 0;
      while (true) {
        std::size_t comma = body.find(',', s);
        std::size_t stop = comma == std::string_view::npos ? body.size() : comma;
        sigma->push_back({parse_word(body.substr(s, stop - s), {line_no, body_at.col + s}),
                          {line_no, body_at.col + s}});
        if (comma == std::string_view::npos) break;
        s = comma + 1;
      }
    } else {
      fail(head[0].at, "unknown key '" + key + "'");
    }
    begin = next;
  }

  const Pos eof{line_no, 1};
  if (!prime) fail(eof, "missing 'prime:'");
  if (!ngens) fail(eof, "missing 'ngens:'");
  if (*prime < 2 || *prime >= (1 << 16)) fail(prime_at, "prime out of range");
  if (!is_prime(static_cast<unsigned>(*prime))) fail(prime_at, std::to_string(*prime) + " is not prime");
  if (*prime == 2) fail(prime_at, "p must be odd");
  if (*ngens < 0 || *ngens > 64) fail(ngens_at, "generator count must be in [0, 64]");
  const unsigned p = static_cast<unsigned>(*prime);
  const std::size_t n = static_cast<std::size_t>(*ngens);

  std::vector<Word> pw(n);
  for (const auto& [i, raw] : powers) {
    if (i < 1 || static_cast<std::size_t>(i) > n) fail(raw.at, "generator g" + std::to_string(i) + " is not in the generator list");
    pw[i - 1] = to_relation_word(raw, p, n);
    if (!pw[i - 1].empty() && pw[i - 1].front().gen <= static_cast<std::size_t>(i - 1))
      fail(raw.at, "power relation of g" + std::to_string(i) + " must use higher generators");
  }
  std::map<std::pair<std::size_t, std::size_t>, Word> cw;
  for (const auto& [ji, raw] : comms) {
    const auto [j, i] = ji;
    if (i < 1 || static_cast<std::size_t>(j) > n)
      fail(raw.at, "commutator relation uses a generator that is not in the generator list");
    Word w = to_relation_word(raw, p, n);
    if (!w.empty() && w.front().gen <= static_cast<std::size_t>(j - 1))
      fail(raw.at, "commutator relation [g" + std::to_string(j) + ", g" + std::to_string(i) +
                       "] must use generators above g" + std::to_string(j));
    cw[{static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)}] = std::move(w);
  }
  PresentationFile out{PcPresentation(p, n, std::move(pw), std::move(cw)), std::nullopt};
  if (sigma) {
    if (sigma->size() == 1 && sigma->front().letters.empty() && n != 1) sigma->clear();
    if (sigma->size() != n)
      fail(sigma_at, "sigma must give one image per generator (" + std::to_string(n) + " expected, " +
                         std::to_string(sigma->size()) + " given)");
    std::vector<Element> images;
    for (const auto& raw : *sigma) images.push_back(evaluate_raw(out.pres, raw));
    out.sigma = std::move(images);
  }
  return out;
}

PresentationFile read_presentation_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string write_presentation(const PcPresentation& pres, const std::vector<Element>* sigma) {
  std::ostringstream os;
  os << "prime: " << pres.prime() << "\n";
  os << "ngens: " << pres.ngens() << "\n";
  for (std::size_t i = 0; i < pres.ngens(); ++i)
    if (!pres.power_word(i).empty()) os << "power " << i + 1 << ": " << format_word(pres.power_word(i)) << "\n";
  for (const auto& [ji, w] : pres.commutators())
    if (!w.empty()) os << "comm " << ji.first + 1 << " " << ji.second + 1 << ": " << format_word(w) << "\n";
  if (sigma) {
    os << "sigma:";
    for (std::size_t i = 0; i < sigma->size(); ++i) {
      const std::string w = format_word(pres.to_word((*sigma)[i]));
      os << (i ? ", " : " ") << (w.empty() ? "1" : w);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace propp
