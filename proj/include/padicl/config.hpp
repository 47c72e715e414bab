#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicl/lfunction.hpp"

namespace padicl {

// Flat key=value job description. Grammar, one entry per line, '#' starts a comment:
//   field     = rational | quadratic <D>
//   modulus   = <gen> [; <gen>]...      gen is an integer n or a pair "a,b" for a + b*theta
//   character = <n> : <e_1>,<e_2>,...   exponents of zeta_n on the cyclic generators; "1" is trivial
//   m         = <int>                    twist, default 1
//   p         = <prime>
//   M         = <int>
//   s         = <int> | digits:<d_0>,<d_1>,...   base-p digits, least significant first
//   L         = <int>                    Iwasawa series length, default ceil(M / e)
//   height    = <int>                    coverage bound for verify, default 1000
//   aux       = <prime>                  auxiliary prime override
//   bench.N   = <int>,<int>,...          measure sizes for bench
//   oracle.k  = <int>                    exponent for oracle queries
//   oracle.kind = cone | hurwitz | classical | bernoulli
struct JobConfig {
  std::map<std::string, std::string> raw;

  Field F = Field::rational();
  Ideal f;
  std::string field_text;
  std::string modulus_text;
  Character chi{1, {}};
  int m = 1;
  u64 p = 0;
  int M = 0;
  std::optional<std::string> s_text;
  std::optional<int> L;
  i64 height = 1000;
  std::optional<u64> aux_c;
  std::vector<std::size_t> bench_N{8, 16, 32, 64};
  int oracle_k = 0;
  std::string oracle_kind = "cone";

  LJob job() const;
  PAdicInt s() const;
  // ceil(M / e) unless given.
  int series_length() const;
  std::string character_text() const;
};

// Throws ParseError on malformed input or a violated parse-time hypothesis.
JobConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
JobConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace padicl
