#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicl/errors.hpp"
#include "padicl/mahler.hpp"

using namespace padicl;

namespace {

int vp_u(u64 p, u64 x, int M) { return x == 0 ? M : vp(p, static_cast<u128>(x)); }

// v_p(n!)
int vp_fact(u64 p, u64 n) {
  int v = 0;
  for (u64 q = p; q <= n; q *= p) v += static_cast<int>(n / q);
  return v;
}

}  // namespace

TEST_CASE("mahler coefficients of polynomials") {
  const ModRing R(5, 4);
  const MahlerFn sq = mahler_coeffs([&](u64 n) { return R.mul(n, n); }, 6, 5, 4);
  CHECK(sq.coeffs == std::vector<u64>{0, 1, 2, 0, 0, 0});
  const MahlerFn c3 = mahler_coeffs([&](u64 n) { return n < 3 ? 0 : static_cast<u64>(n * (n - 1) * (n - 2) / 6); }, 7, 5, 4);
  CHECK(c3.coeffs == std::vector<u64>{0, 0, 0, 1, 0, 0, 0});
  const MahlerFn ind = mahler_coeffs([](u64 n) { return n % 5 ? 1u : 0u; }, 4, 5, 4);
  CHECK(ind.coeffs[0] == 0);
  CHECK(ind.coeffs[1] == 1);
  CHECK(ind.coeffs[2] == R.neg(1));
  // round trip: x -> C(x, k) gives e_k
  for (std::size_t k = 0; k < 8; ++k) {
    const MahlerFn f = mahler_coeffs(
        [&](u64 n) {
          mpz_class c;
          mpz_bin_uiui(c.get_mpz_t(), n, k);
          return R.from_mpz(c);
        },
        12, 5, 4);
    for (std::size_t i = 0; i < 12; ++i) CHECK(f.coeffs[i] == (i == k ? 1u : 0u));
  }
}

TEST_CASE("norm from coefficients") {
  // sup |f(n)| over n equals max |f_n| for polynomial functions
  std::mt19937_64 rng(4);
  const ModRing R(3, 6);
  for (int it = 0; it < 20; ++it) {
    std::vector<u64> poly(4);
    for (auto& a : poly) a = (rng() % 9) * (it % 3 == 0 ? 3 : 1);
    auto ev = [&](u64 n) {
      u64 acc = 0;
      for (std::size_t i = poly.size(); i-- > 0;) acc = R.add(R.mul(acc, n % R.mod), poly[i]);
      return acc;
    };
    const MahlerFn f = mahler_coeffs(ev, 40, 3, 6);
    int vmin_c = 6, vmin_v = 6;
    for (u64 x : f.coeffs) vmin_c = std::min(vmin_c, vp_u(3, x, 6));
    for (u64 n = 0; n < 200; ++n) vmin_v = std::min(vmin_v, vp_u(3, ev(n), 6));
    CHECK(vmin_c == vmin_v);
  }
}

TEST_CASE("phi_s") {
  const PAdicInt s4(5, 4, 4);
  const MahlerFn f = phi_s_fn(s4, 4);
  CHECK(f.declared_N == phi_s_length(5, 4));
  CHECK(integrate(f, dirac(5, 4, 2, f.declared_N)).residue() == 16);
  const MahlerFn f0 = phi_s_fn(PAdicInt(5, 4, 0), 4);
  CHECK(f0.value_at(0) == 0);
  CHECK(f0.value_at(3) == 1);
  CHECK(f0.value_at(10) == 0);
}

TEST_CASE("phi_s coefficient decay") {
  std::mt19937_64 rng(17);
  for (u64 p : {2ull, 3ull, 5ull}) {
    const int M = p == 2 ? 40 : 20;
    const std::size_t N = 201;
    const ModRing R(p, M);
    for (int it = 0; it < 10; ++it) {
      const PAdicInt s(p, M, rng() % R.mod);
      const MahlerFn f = mahler_coeffs(
          [&](u64 n) { return n % p ? pow1q(angle(PAdicInt(p, M, n)), s).residue() : 0; }, N, p, M);
      for (u64 n = 0; n < N; ++n) {
        const int v = vp_u(p, f.coeffs[n], M);
        if (p == 2)
          CHECK(v >= std::min(M, static_cast<int>(n / 2) - 1));
        else
          CHECK(v >= std::min(M, vp_fact(p, n)));
      }
    }
  }
}

TEST_CASE("psi_ell") {
  const int M = 4, e = 1;
  const u64 p = 5;
  const PAdicInt u = default_u(p, M + e + 2, e);
  const MahlerFn psi0 = psi_ell_fn(0, u, e, M);
  const ModRing R(p, M);
  CHECK(psi0.value_at(6) == R.inv(6));
  for (int ell = 0; ell <= 3; ++ell) {
    const MahlerFn f = psi_ell_fn(ell, u, e, M);
    CHECK(f.declared_N == psi_length(p, e, M, ell));
    CHECK(f.value_at(5) == 0);
    CHECK(f.value_at(10) == 0);
  }
  // sum_l psi_l(x) (u^s - 1)^l = x^-1 <x>^s
  const int L = 8;
  std::vector<MahlerFn> psis;
  for (int ell = 0; ell < L; ++ell) psis.push_back(psi_ell_fn(ell, u, e, M));
  for (u64 x : {6ull, 11ull, 31ull, 56ull}) {
    for (i64 s : {2, -3, 17}) {
      const PAdicInt t = pow1q(u.reduce(M), PAdicInt::from_signed(p, M, s)) - PAdicInt(p, M, 1);
      PAdicInt acc(p, M, 0), tp(p, M, 1);
      for (int ell = 0; ell < L; ++ell) {
        acc = acc + PAdicInt(p, M, psis[static_cast<std::size_t>(ell)].value_at(x)) * tp;
        tp = tp * t;
      }
      const PAdicInt X(p, M, x);
      CHECK(acc == X.inverse() * pow1q(angle(X), PAdicInt::from_signed(p, M, s)));
    }
  }
}

TEST_CASE("psi_ell coefficient bound") {
  // coefficients past p^e (pM + l) vanish mod p^M
  const u64 p = 3;
  const int M = 3, e = 1;
  const PAdicInt u = default_u(p, 12, e);
  for (int ell = 0; ell <= 5; ++ell) {
    const std::size_t N = psi_length(p, e, M, ell);
    const ModRing R(p, M);
    const LuEvaluator lu(p, 9, e, u.reduce(9 + e));
    const ModRing In = lu.in_ring();
    auto ev = [&](u64 x) -> u64 {
      if (x % p == 0) return 0;
      const u64 xi = In.from_signed(static_cast<i128>(x));
      if (!lu.in_support(xi)) return 0;
      const auto row = binomial_row(p, M, lu(xi) % ipow(p, M + binomial_row_extra_digits(p, ell + 1)), static_cast<std::size_t>(ell) + 1);
      return R.mul(R.inv(x % R.mod), row.back());
    };
    const MahlerFn f = mahler_coeffs(ev, N + 60, p, M);
    for (std::size_t n = N; n < f.coeffs.size(); ++n) CHECK(f.coeffs[n] == 0);
  }
}

TEST_CASE("measures") {
  const Measure d0 = dirac(5, 3, 0, 5);
  CHECK(d0.coeffs == std::vector<u64>{1, 0, 0, 0, 0});
  const Measure d1 = dirac(5, 3, 1, 5);
  CHECK(d1.coeffs == std::vector<u64>{1, 1, 0, 0, 0});
  const Measure d7 = dirac(5, 3, 7, 12);
  for (int k = 0; k < 5; ++k) CHECK(moment(d7, k).residue() == ModRing(5, 3).pow(7, static_cast<u64>(k)));
  CHECK(moment(d7, 0).residue() == d7.coeffs[0]);
  const Measure dd = delta(d7);
  CHECK(dd.size() == d7.size() - 1);
  for (std::size_t n = 0; n < dd.size(); ++n) CHECK(dd.coeffs[n] == ModRing(5, 3).mul(7, d7.coeffs[n]));
  Measure c{5, 3, {9, 0, 0, 0}};
  for (u64 x : delta(c).coeffs) CHECK(x == 0);
  const MahlerFn one = mahler_coeffs([](u64) { return 1u; }, 4, 5, 3);
  CHECK(integrate(one, d7).residue() == 1);
  const MahlerFn big = phi_s_fn(PAdicInt(5, 3, 1), 3);
  CHECK_THROWS_AS(integrate(big, dirac(5, 3, 2, 3)), PrecisionError);
}

TEST_CASE("indicator and pointwise product") {
  const MahlerFn ind = indicator_fn(5, 1, 4);
  CHECK(ind.value_at(1) == 1);
  CHECK(ind.value_at(0) == 0);
  CHECK(ind.value_at(6) == 1);
  CHECK(ind.value_at(7) == 0);
  const ModRing R(5, 4);
  const MahlerFn sq = mahler_coeffs([&](u64 n) { return R.mul(n, n); }, 6, 5, 4);
  const MahlerFn prod = pointwise_product(sq, ind);
  for (u64 x = 0; x < 60; ++x) CHECK(prod.value_at(x) == (x % 5 == 1 ? R.mul(x, x) : 0));
}
