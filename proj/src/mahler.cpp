#include "padicl/mahler.hpp"

#include "padicl/errors.hpp"

namespace padicl {

u64 MahlerFn::value_at(u64 n) const {
  ModRing R(p, M);
  std::size_t top = std::min<std::size_t>(coeffs.size(), n + 1);
  std::vector<u64> row = binomial_row(p, M, n, top);
  u64 s = 0;
  for (std::size_t j = 0; j < top; ++j) s = R.add(s, R.mul(coeffs[j], row[j]));
  return s;
}

MahlerFn mahler_coeffs(const std::function<u64(u64)>& evaluate, std::size_t N, u64 p, int M) {
  ModRing R(p, M);
  MahlerFn f;
  f.p = p;
  f.M = M;
  f.declared_N = N;
  f.coeffs.resize(N);
  for (std::size_t n = 0; n < N; ++n) f.coeffs[n] = evaluate(n) % R.mod;
  for (std::size_t j = 1; j < N; ++j)
    for (std::size_t n = N - 1; n >= j; --n) f.coeffs[n] = R.sub(f.coeffs[n], f.coeffs[n - 1]);
  return f;
}

std::size_t phi_s_length(u64 p, int M) {
  if (p == 2) return static_cast<std::size_t>(2 * M + 2);
  return static_cast<std::size_t>(p * M + 2);
}

std::size_t psi_length(u64 p, int e, int M, int ell) {
  return static_cast<std::size_t>(ipow(p, e) * (p * static_cast<u64>(M) + static_cast<u64>(ell)));
}

std::size_t indicator_length(u64 p, int e, int M) {
  // least k with v_p(k!) >= M, scaled by p^e
  u64 k = 0;
  int v = 0;
  while (v < M) {
    ++k;
    u64 t = k;
    while (t % p == 0) {
      t /= p;
      ++v;
    }
  }
  return static_cast<std::size_t>(ipow(p, e) * k);
}

MahlerFn phi_s_fn(const PAdicInt& s, int M) {
  const u64 p = s.p();
  if (s.precision() < M) throw std::invalid_argument("phi_s_fn: exponent precision below M");
  PAdicInt sM = s.reduce(M);
  ModRing R(p, M);
  return mahler_coeffs(
      [&](u64 n) -> u64 {
        if (n % p == 0) return 0;
        return pow1q(angle(PAdicInt(p, M, n)), sM).residue();
      },
      phi_s_length(p, M), p, M);
}

MahlerFn psi_ell_fn(int ell, const PAdicInt& u, int e, int M) {
  if (ell < 0) throw std::invalid_argument("psi_ell_fn: negative ell");
  const u64 p = u.p();
  BinomialRows rows(p, M, static_cast<std::size_t>(ell) + 1);
  const int out = M + rows.extra_digits();
  LuEvaluator L(p, out, e, u);
  ModRing R(p, M);
  std::vector<u64> row(static_cast<std::size_t>(ell) + 1);
  return mahler_coeffs(
      [&](u64 n) -> u64 {
        if (n % p == 0) return 0;
        u64 x = n % L.in_ring().mod;
        if (!L.in_support(x)) return 0;
        rows.fill(L(x) % rows.input_modulus(), row.data());
        return R.mul(R.inv(n % R.mod), row[ell]);
      },
      psi_length(p, e, M, ell), p, M);
}

MahlerFn psi_ell_fn(u64 p, int ell, int e, int M) {
  const int out = M + binomial_row_extra_digits(p, static_cast<std::size_t>(ell) + 1);
  return psi_ell_fn(ell, default_u(p, out + e, e), e, M);
}

MahlerFn indicator_fn(u64 p, int e, int M) {
  const u64 pe = ipow(p, e);
  return mahler_coeffs([&](u64 n) -> u64 { return n % pe == 1 % pe ? 1 : 0; }, indicator_length(p, e, M), p, M);
}

MahlerFn pointwise_product(const MahlerFn& f, const MahlerFn& g) {
  if (f.p != g.p || f.M != g.M) throw std::invalid_argument("pointwise_product: mixed prime or precision");
  const std::size_t N = f.declared_N + g.declared_N - 1;
  ModRing R(f.p, f.M);
  // values by cumulative sums: f(n) = sum_j f_j C(n,j)
  auto values = [&](const MahlerFn& h) {
    std::vector<u64> v(h.coeffs);
    v.resize(N, 0);
    for (std::size_t j = N - 1; j >= 1; --j)
      for (std::size_t n = j; n < N; ++n) v[n] = R.add(v[n], v[n - 1]);
    return v;
  };
  std::vector<u64> fv = values(f), gv = values(g);
  return mahler_coeffs([&](u64 n) { return R.mul(fv[n], gv[n]); }, N, f.p, f.M);
}

PAdicInt integrate(const MahlerFn& f, const Measure& mu) {
  if (f.p != mu.p || f.M > mu.M) throw std::invalid_argument("integrate: mixed prime or precision");
  if (mu.size() < f.declared_N)
    throw PrecisionError("integrate: measure has " + std::to_string(mu.size()) + " coefficients, function needs " +
                         std::to_string(f.declared_N));
  ModRing R(f.p, f.M);
  u64 s = 0;
  for (std::size_t n = 0; n < f.declared_N && n < f.coeffs.size(); ++n)
    s = R.add(s, R.mul(f.coeffs[n], mu.coeffs[n] % R.mod));
  return PAdicInt(f.p, f.M, s);
}

Measure delta(const Measure& F) {
  if (F.size() == 0) throw PrecisionError("delta: empty series");
  ModRing R(F.p, F.M);
  Measure D{F.p, F.M, std::vector<u64>(F.size() - 1)};
  for (std::size_t n = 0; n + 1 < F.size(); ++n)
    D.coeffs[n] = R.add(R.mul((n + 1) % R.mod, F.coeffs[n + 1]), R.mul(n % R.mod, F.coeffs[n]));
  return D;
}

PAdicInt moment(const Measure& mu, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= mu.size())
    throw PrecisionError("moment: need more than k series coefficients");
  Measure cur = mu;
  cur.coeffs.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i < k; ++i) cur = delta(cur);
  return PAdicInt(mu.p, mu.M, cur.coeffs[0]);
}

Measure dirac(u64 p, int M, const mpz_class& a, std::size_t N) {
  return Measure{p, M, binomial_row_of(p, M, a, N)};
}

Measure dirac(const PAdicInt& a, int M, std::size_t N) {
  if (a.precision() < M + binomial_row_extra_digits(a.p(), N))
    throw PrecisionError("dirac: point known to too few digits");
  return Measure{a.p(), M, binomial_row(a.p(), M, a.residue(), N)};
}

}  // namespace padicl
