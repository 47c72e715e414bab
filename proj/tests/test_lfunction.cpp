#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "padicl/errors.hpp"
#include "padicl/lfunction.hpp"

using namespace padicl;

namespace {

LJob q5_job(Character chi, int M) {
  LJob j;
  j.F = Field::rational();
  j.f = integer_ideal(j.F, 5);
  j.chi = std::move(chi);
  j.p = 5;
  j.M = M;
  return j;
}

}  // namespace

TEST_CASE("quadratic character mod 5 at s = -3") {
  LFunction Lf(q5_job(Character{2, {1}}, 6));
  CHECK(Lf.aux().c == 2);
  const PAdicInt s = PAdicInt::from_signed(5, 6, -3);
  const LValueCertificate c = Lf.l_value(s);
  // L(chi, -3) = 2
  CHECK(c.beta == c.gamma.scalar_mul(2));
  const auto v = c.quotient();
  REQUIRE(v.has_value());
  CHECK(*v == CycElem::scalar(c.beta.ring(), 2));
  CHECK(certificates_agree(c, Lf.l_value(s, EvalPath::Measure)));
  CHECK(certificates_agree(c, evaluate_iwasawa(Lf.iwasawa_series(6), s)));
  CHECK(Lf.measure_cache_misses() == Lf.representatives().size());
  Lf.l_value(PAdicInt::from_signed(5, 6, 7), EvalPath::Measure);
  CHECK(Lf.measure_cache_hits() == Lf.representatives().size());
}

TEST_CASE("trivial character mod 5") {
  LFunction Lf(q5_job(Character{1, {0}}, 8));
  CHECK(Lf.trivial());
  const LValueCertificate c = Lf.l_value(PAdicInt::from_signed(5, 8, -3));
  // (1 - 5^3) zeta(-3) = -31/30
  CHECK((c.beta.scalar_mul(30) + c.gamma.scalar_mul(31)).is_zero());
  CHECK(c.gamma.valuation() == 1);
  CHECK_FALSE(c.quotient().has_value());
  CHECK_THROWS_AS(Lf.l_value(PAdicInt(5, 8, 1)), PoleError);
  CHECK_THROWS_AS(lambda_mu_invariants(Lf.iwasawa_series(8)), SingularElementError);
}

TEST_CASE("series evaluation needs e L >= M") {
  LFunction Lf(q5_job(Character{2, {1}}, 6));
  const IwasawaSeriesCert I = Lf.iwasawa_series(3);
  CHECK_THROWS_AS(evaluate_iwasawa(I, PAdicInt(5, 6, 2)), PrecisionError);
  const Invariants inv = lambda_mu_invariants(Lf.iwasawa_series(6));
  CHECK(inv.determined);
  CHECK(inv.lambda == 0);
  CHECK(inv.mu == 0);
}

TEST_CASE("aux prime override") {
  LJob j = q5_job(Character{2, {1}}, 6);
  j.aux_c = 3;
  LFunction L3(j);
  CHECK(L3.aux().c == 3);
  LFunction L2(q5_job(Character{2, {1}}, 6));
  const PAdicInt s = PAdicInt::from_signed(5, 6, 11);
  CHECK(certificates_agree(L2.l_value(s), L3.l_value(s)));
  j.aux_c = 5;
  CHECK_THROWS_AS(LFunction{j}, AdmissibilityError);
  j.aux_c = 4;
  CHECK_THROWS_AS(LFunction{j}, AdmissibilityError);
}

TEST_CASE("input hypotheses") {
  LJob j = q5_job(Character{2, {1}}, 6);
  j.f = integer_ideal(j.F, 3);
  CHECK_THROWS_AS(LFunction{j}, HypothesisError);
  j = q5_job(Character{5, {1}}, 6);
  CHECK_THROWS_AS(LFunction{j}, Error);
}

TEST_CASE("lambda at an irregular pair") {
  // 37 | B_32: the branch omega^32 has lambda = 1, omega^30 has lambda = 0
  for (auto [m, lambda] : {std::pair{-31, 1}, std::pair{-29, 0}}) {
    LJob j;
    j.F = Field::rational();
    j.f = integer_ideal(j.F, 37);
    j.chi = Character{1, {0}};
    j.m = m;
    j.p = 37;
    j.M = 3;
    LFunction Lf(j);
    const Invariants inv = lambda_mu_invariants(Lf.iwasawa_series(3));
    CAPTURE(m);
    CHECK(inv.determined);
    CHECK(inv.mu == 0);
    CHECK(inv.lambda == lambda);
  }
}

TEST_CASE("real quadratic field, small precision") {
  LJob j;
  j.F = Field::quadratic(5);
  j.f = integer_ideal(j.F, 7);
  j.chi = Character{1, {0}};
  j.p = 7;
  j.M = 2;
  LFunction Lf(j);
  CHECK(Lf.aux().c == 11);
  CHECK(Lf.representatives().size() == 6);
  const IwasawaSeriesCert I = Lf.iwasawa_series(2);
  for (i64 s : {-1, 4, 1000}) {
    const PAdicInt ps = PAdicInt::from_signed(7, 2, s);
    const LValueCertificate c = Lf.l_value(ps);
    CHECK(certificates_agree(c, Lf.l_value(ps, EvalPath::Measure)));
    CHECK(certificates_agree(c, evaluate_iwasawa(I, ps)));
  }
}
