#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "padicl/config.hpp"
#include "padicl/errors.hpp"

using namespace padicl;

namespace {
const char* kQ5 =
    "# quadratic character mod 5\n"
    "field = rational\n"
    "modulus = 5\n"
    "character = 2:1\n"
    "p = 5\n"
    "M = 8\n"
    "s = -3\n";
}

TEST_CASE("basic job") {
  const JobConfig c = parse_config(kQ5);
  CHECK(c.F.is_rational());
  CHECK(c.f == integer_ideal(c.F, 5));
  CHECK(c.chi.n == 2);
  CHECK(c.chi.exps == std::vector<i64>{1});
  CHECK(c.p == 5);
  CHECK(c.M == 8);
  CHECK(c.s() == PAdicInt::from_signed(5, 8, -3));
  CHECK(c.series_length() == 8);
  CHECK(c.height == 1000);
  CHECK(c.bench_N == std::vector<std::size_t>{8, 16, 32, 64});
  CHECK_FALSE(c.aux_c.has_value());
  const LJob j = c.job();
  CHECK(j.p == 5);
  CHECK(j.M == 8);
}

TEST_CASE("overrides and digits") {
  const JobConfig c = parse_config(kQ5, {"M=4", "s=digits:2,4,4,4", "aux=3", "L=6", "bench.N=4,8"});
  CHECK(c.M == 4);
  CHECK(c.s() == PAdicInt::from_signed(5, 4, -3));
  CHECK(c.aux_c == 3u);
  CHECK(c.series_length() == 6);
  CHECK(c.bench_N == std::vector<std::size_t>{4, 8});
}

TEST_CASE("quadratic fields and element generators") {
  const JobConfig c = parse_config("field = quadratic 5\nmodulus = 7\ncharacter = 1\np = 7\nM = 6\n");
  CHECK(c.F.D() == 5);
  CHECK(c.chi.is_trivial());
  const JobConfig d = parse_config("field = quadratic 5\nmodulus = 7; 14,7\ncharacter = 1\np = 7\nM = 6\n");
  CHECK(d.f == integer_ideal(d.F, 7));
  const JobConfig e = parse_config("field = quadratic 2\nmodulus = 4\ncharacter = 1\np = 2\nM = 6\n");
  CHECK(e.series_length() == 2);
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_config(kQ5, {"colour=blue"}), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"M=eight"}), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"modulus=3"}), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"character=5:1"}), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"p=6"}), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"field=quadratic 4"}), ParseError);
  CHECK_THROWS_AS(parse_config("field = rational\nmodulus\n"), ParseError);
  CHECK_THROWS_AS(parse_config(kQ5, {"s=digits:1,9"}), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/job.cfg"), ParseError);
}
