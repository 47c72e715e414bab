#pragma once

#include <functional>
#include <vector>

#include "padicl/padic.hpp"

namespace padicl {

// f = sum f_n C(x,n) with coefficients beyond declared_N bounded by p^-M.
struct MahlerFn {
  u64 p = 0;
  int M = 0;
  std::vector<u64> coeffs;
  std::size_t declared_N = 0;

  // f(n) mod p^M from the stored coefficients.
  u64 value_at(u64 n) const;
};

// Truncated series F_0 + F_1 T + ... with F_n = int C(x,n) dmu.
struct Measure {
  u64 p = 0;
  int M = 0;
  std::vector<u64> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

// Finite-difference triangle on evaluate(0..N-1).
MahlerFn mahler_coeffs(const std::function<u64(u64)>& evaluate, std::size_t N, u64 p, int M);

// Certified lengths.
std::size_t phi_s_length(u64 p, int M);
std::size_t psi_length(u64 p, int e, int M, int ell);
std::size_t indicator_length(u64 p, int e, int M);

// phi_s(x) = 0 on pZ_p, <x>^s on units.
MahlerFn phi_s_fn(const PAdicInt& s, int M);
// x^-1 C(Lu(x), ell) on <x> in 1 + p^e Z_p, 0 elsewhere.
MahlerFn psi_ell_fn(int ell, const PAdicInt& u, int e, int M);
MahlerFn psi_ell_fn(u64 p, int ell, int e, int M);
// Characteristic function of 1 + p^e Z_p.
MahlerFn indicator_fn(u64 p, int e, int M);
// Re-expanded from pointwise values; length Nf + Ng - 1.
MahlerFn pointwise_product(const MahlerFn& f, const MahlerFn& g);

PAdicInt integrate(const MahlerFn& f, const Measure& mu);
Measure delta(const Measure& F);
// Uses k coefficients of mu.
PAdicInt moment(const Measure& mu, int k);
Measure dirac(u64 p, int M, const mpz_class& a, std::size_t N);
// a must carry at least M + V digits.
Measure dirac(const PAdicInt& a, int M, std::size_t N);

}  // namespace padicl
