#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicl/cone_zeta.hpp"
#include "padicl/errors.hpp"
#include "padicl/oracle.hpp"

using namespace padicl;
using namespace padicl::oracle;

TEST_CASE("bernoulli") {
  CHECK(bernoulli_polynomial(2) == std::vector<mpq_class>{mpq_class(1, 6), -1, 1});
  CHECK(bernoulli_number(4) == mpq_class(-1, 30));
  CHECK(bernoulli_number(1) == mpq_class(-1, 2));
  CHECK(bernoulli_number(13) == 0);
  // sum_{j<10} j^3 = (B_4(10) - B_4) / 4
  CHECK((eval_poly(bernoulli_polynomial(4), 10) - bernoulli_number(4)) / 4 == 2025);
  CHECK_THROWS(bernoulli_polynomial(41));
}

TEST_CASE("hurwitz partial zeta") {
  CHECK(hurwitz_partial_zeta(1, 5, 1) == mpq_class(-1, 60));
  CHECK(hurwitz_partial_zeta(3, 5, 1) == mpq_class(11, 60));
  CHECK(hurwitz_partial_zeta(1, 1, 1) == mpq_class(-1, 12));
  // the residue classes mod f add up to zeta(-k)
  for (int k = 0; k <= 6; ++k)
    for (i64 f : {3, 5, 8}) {
      mpq_class acc = 0;
      for (i64 b = 1; b <= f; ++b) acc += hurwitz_partial_zeta(b, f, k);
      CHECK(acc == hurwitz_partial_zeta(1, 1, k));
    }
}

TEST_CASE("twisted partial zeta over Q") {
  CHECK(exact_twisted_partial_zeta_Q(1, 5, 2, 0) == mpq_class(-1, 2));
  CHECK(exact_twisted_partial_zeta_Q(1, 5, 2, 1) == mpq_class(3, 4));
  CHECK(exact_twisted_partial_zeta_Q(1, 5, 2, 3) == mpq_class(-99, 8));
}

TEST_CASE("classical L-values") {
  // chi(2) = -1: exponent 1 of zeta_2
  const std::vector<i64> quad{-1, 0, 1, 1, 0};
  CHECK(classical_L_value(quad, 2, 4).coeffs()[0] == 2);
  CHECK(classical_L_value({-1, 0, 0, 0, 0}, 1, 4).coeffs()[0] == mpq_class(-31, 30));
  CHECK(classical_L_value(quad, 2, 3).is_zero());
  // odd quartic character mod 5, 2 -> i
  const std::vector<i64> quart{-1, 0, 1, 3, 2};
  CHECK(classical_L_value(quart, 4, 2).is_zero());
  CHECK_FALSE(classical_L_value(quart, 4, 1).is_zero());
}

TEST_CASE("exact cyclotomic arithmetic") {
  std::mt19937_64 rng(31);
  for (u64 c : {2ull, 3ull, 7ull}) {
    const ExactCyc z = ExactCyc::aux_zero(c);
    auto R = CycRing::aux(11, 5, c);
    for (int it = 0; it < 20; ++it) {
      ExactCyc a = z;
      for (std::size_t i = 0; i < z.degree(); ++i)
        {
        mpq_class r(static_cast<long>(rng() % 17) - 8, 1 + rng() % 3);
        r.canonicalize();
        a = a + ExactCyc::x_pow(z, static_cast<i64>(i)).scaled(r);
      }
      if (a.is_zero()) continue;
      const ExactCyc inv = a.invert();
      CHECK((a * inv) == ExactCyc::scalar(z, 1));
      if (a.denominator() % 11 != 0 && inv.denominator() % 11 != 0)
        CHECK(a.reduce(R) * inv.reduce(R) == CycElem::one(R));
    }
  }
  CHECK_THROWS_AS(ExactCyc::aux_zero(5).invert(), SingularElementError);
  // 1 + x is a zero divisor modulo Phi_2 = 1 + x
  const ExactCyc w = ExactCyc::character_zero(2);
  CHECK_THROWS_AS((ExactCyc::scalar(w, 1) + ExactCyc::x_pow(w, 1)).invert(), SingularElementError);
}

TEST_CASE("B tables: defining sum and recurrence agree") {
  for (u64 c : {2ull, 3ull, 7ull})
    for (i64 a = 1; a < static_cast<i64>(c); ++a)
      for (std::size_t K = 0; K <= 8; ++K) {
        const auto x = exact_b_direct(c, a, K), y = exact_b_recurrence(c, a, K);
        for (std::size_t k = 0; k <= K; ++k) CHECK(x[k] == y[k]);
      }
}

TEST_CASE("exact cone series over Q matches the twisted partial zeta") {
  const Field Q = Field::rational();
  const Modulus m = make_modulus(Q, integer_ideal(Q, 5));
  const AuxPrime c2 = *aux_prime_candidate(Q, m, 2);
  const Cone C{FieldElem::of(1), {FieldElem::of(5)}};
  for (int k : {0, 1, 3}) CHECK(exact_cone_series_value(Q, C, c2, k) == exact_twisted_partial_zeta_Q(1, 5, 2, k));
  // C(6; 10) covers the class of 2^-1 inside (2); the cone variable carries a factor 2^k
  const AuxPrime c3 = *aux_prime_candidate(Q, m, 3);
  const Cone C2{FieldElem::of(6), {FieldElem::of(10)}};
  const std::vector<mpq_class> want{1, mpq_class(-1, 3), -11, mpq_class(61, 3), 721};
  for (int k = 0; k <= 4; ++k) {
    const mpq_class v = exact_cone_series_value(Q, C2, c3, k) / mpq_class(mpz_class(1) << k);
    CHECK(v == exact_twisted_partial_zeta_Q(2, 5, 3, k));
    CHECK(v == want[static_cast<std::size_t>(k)]);
  }
  CHECK_THROWS(exact_cone_series_value(Q, C, c2, 7));
}

TEST_CASE("aux exponents by ideal membership") {
  const Field F = Field::quadratic(5);
  const Modulus m = make_modulus(F, integer_ideal(F, 7));
  const AuxPrime aux = *aux_prime_candidate(F, m, 11);
  for (i64 x = -12; x <= 12; x += 3)
    for (i64 y = -7; y <= 9; y += 2) {
      const i64 e = exact_aux_exponent(F, aux, FieldElem::of(x, y));
      CHECK(e == residue_mod_aux(F, aux, x, y));
      CHECK(ideal_contains(F, aux.ideal, FieldElem::of(x - e, y)));
    }
}

TEST_CASE("omega commutes with delta") {
  std::mt19937_64 rng(41);
  const ExactCyc z = ExactCyc::aux_zero(3);
  for (int it = 0; it < 20; ++it) {
    MultiPoly A;
    for (int t = 0; t < 4; ++t) {
      const std::vector<int> e{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
      if (e[0] + e[1] > 4) continue;
      A.add(e, ExactCyc::x_pow(z, static_cast<i64>(rng() % 3)).scaled(static_cast<long>(rng() % 7) - 3));
    }
    CHECK(omega_commutation_check(A));
  }
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) CHECK(omega_monomial_divisible({a, b}));
  const UniPoly f{ExactCyc::scalar(z, 1), ExactCyc::scalar(z, 1)};
  // (1+T) d/dT (1 + T) = 1 + T
  CHECK(uni_equal(delta_uni(f), f));
}
