#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicl/errors.hpp"
#include "padicl/padic.hpp"

using namespace padicl;

namespace {
PAdicInt P(u64 p, int M, i64 v) { return PAdicInt::from_signed(p, M, v); }
}  // namespace

TEST_CASE("teichmuller") {
  CHECK(teichmuller(P(5, 3, 2)).residue() == 57);
  CHECK(teichmuller(P(5, 3, 1)).residue() == 1);
  CHECK(teichmuller(P(2, 4, 7)).residue() == 15);
  CHECK_THROWS_AS(teichmuller(P(5, 3, 10)), UnitRequiredError);
  // omega(x)^(p-1) = 1 and omega(x) = x mod p
  for (i64 x = 1; x < 50; ++x) {
    if (x % 7 == 0) continue;
    const PAdicInt w = teichmuller(P(7, 6, x));
    CHECK(w.pow(6).residue() == 1);
    CHECK(w.residue() % 7 == static_cast<u64>(x % 7));
  }
}

TEST_CASE("angle") {
  CHECK(angle(P(5, 3, 7)).residue() == 101);
  CHECK(angle(P(5, 3, 6)).residue() == 6);
  CHECK(angle(P(2, 4, 7)).residue() == 9);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const i64 a = static_cast<i64>(rng() % 100000) * 5 + 1 + static_cast<i64>(rng() % 4);
    const i64 b = static_cast<i64>(rng() % 100000) * 5 + 1 + static_cast<i64>(rng() % 4);
    const PAdicInt x = P(5, 8, a), y = P(5, 8, b);
    CHECK(teichmuller(x) * angle(x) == x);
    CHECK(teichmuller(x * y) == teichmuller(x) * teichmuller(y));
    CHECK(angle(x * y) == angle(x) * angle(y));
    CHECK(angle(x).residue() % 5 == 1);
  }
}

TEST_CASE("plog") {
  CHECK(plog(P(5, 3, 1)).is_zero());
  CHECK(plog(P(5, 3, 26)).valuation() == 2);
  CHECK_THROWS(plog(P(5, 3, 2)));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const PAdicInt x = P(5, 6, 1 + 5 * static_cast<i64>(rng() % 3000));
    const PAdicInt y = P(5, 6, 1 + 5 * static_cast<i64>(rng() % 3000));
    CHECK(plog(x * y) == plog(x) + plog(y));
  }
  // p = 2 works on 1 + 4Z_2
  for (i64 a = 1; a < 200; a += 4)
    for (i64 b = 5; b < 100; b += 8) CHECK(plog(P(2, 12, a) * P(2, 12, b)) == plog(P(2, 12, a)) + plog(P(2, 12, b)));
}

TEST_CASE("pow1q") {
  const PAdicInt x = P(5, 3, 6);
  CHECK(pow1q(x, P(5, 3, 0)).residue() == 1);
  CHECK(pow1q(x, P(5, 3, 1)) == x);
  CHECK(pow1q(x, P(5, 3, 2)).residue() == 36);
  const PAdicInt r = pow1q(x, P(5, 3, 63));
  CHECK(r * r == x);
  for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
    const int M = 10;
    const PAdicInt y = P(p, M, static_cast<i64>(1 + q_of(p) * 3));
    PAdicInt acc = P(p, M, 1);
    for (int k = 0; k < 12; ++k) {
      CHECK(pow1q(y, P(p, M, k)) == acc);
      acc = acc * y;
    }
  }
  // log(x^s) = s log(x)
  for (i64 s : {3, -7, 1234, 99}) CHECK(plog(pow1q(P(5, 8, 6), P(5, 8, s))) == P(5, 8, s) * plog(P(5, 8, 6)));
}

TEST_CASE("binomial rows") {
  const int V = binomial_row_extra_digits(5, 10);
  CHECK(V == 1);
  const ModRing big(5, 3 + V);
  const auto neg = binomial_row(5, 3, big.from_signed(-1), 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(neg[n] == (n % 2 ? 124u : 1u));
  const auto three = binomial_row(5, 3, 3, 6);
  CHECK(three == std::vector<u64>{1, 3, 3, 1, 0, 0});
  const int V3 = binomial_row_extra_digits(5, 3);
  const ModRing b3(5, 3 + V3);
  // 63 = 1/2 mod 125; lift 1/2 to the wider ring
  const u64 half = b3.inv(2);
  CHECK(binomial_row(5, 3, half, 3)[2] == 78);

  SUBCASE("vandermonde") {
    std::mt19937_64 rng(5);
    const std::size_t N = 40;
    const int M = 6;
    const ModRing R(7, M);
    const ModRing B(7, M + binomial_row_extra_digits(7, N));
    for (int it = 0; it < 20; ++it) {
      const u64 s = rng() % B.mod, t = rng() % B.mod;
      const auto rs = binomial_row(7, M, s, N), rt = binomial_row(7, M, t, N), rst = binomial_row(7, M, B.add(s, t), N);
      for (std::size_t n = 0; n < N; ++n) {
        u64 acc = 0;
        for (std::size_t k = 0; k <= n; ++k) acc = R.add(acc, R.mul(rs[k], rt[n - k]));
        CHECK(acc == rst[n]);
      }
    }
  }
  SUBCASE("exact integers") {
    const auto row = binomial_row_of(3, 5, mpz_class(20), 22);
    mpz_class c;
    for (unsigned long n = 0; n < 22; ++n) {
      mpz_bin_uiui(c.get_mpz_t(), 20, n);
      CHECK(row[n] == mpz_class(c % 243).get_ui());
    }
  }
}

TEST_CASE("Lu") {
  const int M = 4, e = 1;
  const PAdicInt u = default_u(5, M + e, e);
  CHECK(Lu(u, u, e).residue() == 1);
  CHECK(Lu(P(5, M + e, 1), u, e).is_zero());
  const PAdicInt u6 = P(5, 7, 6);
  CHECK(Lu(u6.pow(3), u6, 1).residue() == 3);
  const LuEvaluator ev(5, M, e, u);
  CHECK(ev(u.residue()) == 1);
  CHECK_THROWS_AS(Lu(P(2, 8, 5), default_u(2, 8, 3), 3), SupportError);
  // u^Lu(x) = <x>
  for (i64 x : {11, 21, 7, 13, 1234}) {
    const PAdicInt l = Lu(P(5, M + e, x), u, e);
    CHECK(pow1q(u.reduce(M), l) == angle(P(5, M, x)));
  }
}

TEST_CASE("valued rationals") {
  const ValuedPAdic v = ValuedPAdic::from_rational(5, 6, mpq_class(-31, 30));
  CHECK(v.valuation == -1);
  CHECK_FALSE(v.zero);
  const ValuedPAdic w = ValuedPAdic::from_rational(5, 6, mpq_class(50, 3));
  CHECK(w.valuation == 2);
  CHECK(w.to_padic() == P(5, 6, 50) * P(5, 6, 3).inverse());
  CHECK(ValuedPAdic::from_rational(5, 6, 0).zero);
}

TEST_CASE("digits and precision") {
  const PAdicInt x = PAdicInt::from_digits(5, 4, "1,2,3,4");
  CHECK(x.residue() == 1 + 2 * 5 + 3 * 25 + 4 * 125);
  CHECK(x.digits() == "1,2,3,4");
  CHECK(x.reduce(2).residue() == 11);
  CHECK_THROWS(x + P(5, 3, 1));
  CHECK_THROWS_AS(ipow(2, 70), PrecisionError);
}
