#include "padicl/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "padicl/errors.hpp"

namespace padicl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

i64 to_i64(const std::string& key, const std::string& v) {
  i64 x = 0;
  const auto t = trim(v);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ParseError("'" + key + "': expected an integer, got '" + v + "'");
  return x;
}

const std::set<std::string> kKeys{"field", "modulus", "character", "m",      "p",         "M",          "s",
                                  "L",     "height",  "aux",       "bench.N", "oracle.k", "oracle.kind"};

void read_line(std::map<std::string, std::string>& raw, const std::string& line0, std::size_t lineno) {
  std::string line = line0;
  if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
  const std::string key = trim(line.substr(0, eq));
  const std::string val = trim(line.substr(eq + 1));
  if (!kKeys.count(key)) throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  raw[key] = val;
}

}  // namespace

LJob JobConfig::job() const {
  LJob j;
  j.F = F;
  j.f = f;
  j.chi = chi;
  j.m = m;
  j.p = p;
  j.M = M;
  j.aux_c = aux_c;
  return j;
}

PAdicInt JobConfig::s() const {
  if (!s_text) throw ParseError("missing key 's'");
  const std::string& t = *s_text;
  if (t.rfind("digits:", 0) == 0) {
    try {
      return PAdicInt::from_digits(p, M, t.substr(7));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("'s': ") + e.what());
    }
  }
  return PAdicInt::from_signed(p, M, to_i64("s", t));
}

int JobConfig::series_length() const {
  if (L) return *L;
  const int e = compute_e(F, p).first;
  return (M + e - 1) / e;
}

std::string JobConfig::character_text() const {
  std::string out = std::to_string(chi.n);
  if (chi.exps.empty()) return out;
  out += ":";
  for (std::size_t i = 0; i < chi.exps.size(); ++i) out += (i ? "," : "") + std::to_string(chi.exps[i]);
  return out;
}

JobConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  JobConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) read_line(c.raw, line, ++lineno);
  for (const auto& o : overrides) read_line(c.raw, o, 0);

  auto need = [&](const std::string& k) -> const std::string& {
    auto it = c.raw.find(k);
    if (it == c.raw.end()) throw ParseError("missing key '" + k + "'");
    return it->second;
  };

  // field
  {
    const auto parts = split(need("field"), ' ');
    std::vector<std::string> w;
    for (const auto& x : parts)
      if (!x.empty()) w.push_back(x);
    if (w.size() == 1 && w[0] == "rational") {
      c.F = Field::rational();
    } else if (w.size() == 2 && w[0] == "quadratic") {
      try {
        c.F = Field::quadratic(to_i64("field", w[1]));
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("'field': ") + e.what());
      }
    } else {
      throw ParseError("'field': expected 'rational' or 'quadratic <D>'");
    }
    c.field_text = c.F.name();
  }

  c.p = static_cast<u64>(to_i64("p", need("p")));
  if (c.p < 2 || !is_prime(c.p)) throw ParseError("'p' must be prime");
  c.M = static_cast<int>(to_i64("M", need("M")));
  if (c.M < 1) throw ParseError("'M' must be positive");

  // modulus
  {
    std::vector<FieldElem> gens;
    for (const auto& g : split(need("modulus"), ';')) {
      const auto ab = split(g, ',');
      if (ab.size() == 1)
        gens.push_back(FieldElem::of(to_i64("modulus", ab[0])));
      else if (ab.size() == 2 && !c.F.is_rational())
        gens.push_back(FieldElem::of(to_i64("modulus", ab[0]), to_i64("modulus", ab[1])));
      else
        throw ParseError("'modulus': bad generator '" + g + "'");
    }
    for (const auto& g : gens)
      if (g == FieldElem()) throw ParseError("'modulus': zero generator");
    c.f = ideal_from_generators(c.F, gens);
    c.modulus_text = c.raw["modulus"];
    if (!modulus_divisible_by_q(c.F, make_modulus(c.F, c.f), c.p))
      throw ParseError("'modulus' must be divisible by q = " + std::to_string(q_of(c.p)));
  }

  if (auto it = c.raw.find("character"); it != c.raw.end()) {
    const auto colon = it->second.find(':');
    const i64 n = to_i64("character", it->second.substr(0, colon));
    if (n < 1) throw ParseError("'character': order must be positive");
    c.chi.n = static_cast<u64>(n);
    c.chi.exps.clear();
    if (colon != std::string::npos)
      for (const auto& e : split(it->second.substr(colon + 1), ',')) c.chi.exps.push_back(to_i64("character", e));
    if (c.chi.n % c.p == 0) throw ParseError("'character': order divisible by p is not supported");
  }
  if (auto it = c.raw.find("m"); it != c.raw.end()) c.m = static_cast<int>(to_i64("m", it->second));
  if (auto it = c.raw.find("s"); it != c.raw.end()) c.s_text = it->second;
  if (auto it = c.raw.find("L"); it != c.raw.end()) {
    c.L = static_cast<int>(to_i64("L", it->second));
    if (*c.L < 1) throw ParseError("'L' must be positive");
  }
  if (auto it = c.raw.find("height"); it != c.raw.end()) c.height = to_i64("height", it->second);
  if (auto it = c.raw.find("aux"); it != c.raw.end()) c.aux_c = static_cast<u64>(to_i64("aux", it->second));
  if (auto it = c.raw.find("bench.N"); it != c.raw.end()) {
    c.bench_N.clear();
    for (const auto& x : split(it->second, ',')) {
      const i64 n = to_i64("bench.N", x);
      if (n < 1) throw ParseError("'bench.N' entries must be positive");
      c.bench_N.push_back(static_cast<std::size_t>(n));
    }
  }
  if (auto it = c.raw.find("oracle.k"); it != c.raw.end()) c.oracle_k = static_cast<int>(to_i64("oracle.k", it->second));
  if (auto it = c.raw.find("oracle.kind"); it != c.raw.end()) c.oracle_kind = it->second;
  if (c.s_text) (void)c.s();
  return c;
}

JobConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace padicl
