#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "padicl/cyclotomic.hpp"
#include "padicl/shintani.hpp"

namespace padicl::oracle {

// Q[x]/Phi(x) with exact rational coefficients; Phi is 1 + ... + x^(c-1) or the n-th cyclotomic polynomial.
class ExactCyc {
 public:
  ExactCyc() = default;
  static ExactCyc aux_zero(u64 c);
  static ExactCyc character_zero(u64 n);
  static ExactCyc x_pow(const ExactCyc& like, i64 a);
  static ExactCyc scalar(const ExactCyc& like, const mpq_class& v);

  RingKind kind() const { return kind_; }
  u64 index() const { return index_; }
  std::size_t degree() const { return c_.size(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  ExactCyc operator+(const ExactCyc& o) const;
  ExactCyc operator-(const ExactCyc& o) const;
  ExactCyc operator*(const ExactCyc& o) const;
  ExactCyc operator-() const;
  ExactCyc scaled(const mpq_class& s) const;
  bool operator==(const ExactCyc& o) const { return index_ == o.index_ && kind_ == o.kind_ && c_ == o.c_; }
  bool is_zero() const;
  // Throws SingularElementError when z is a zero divisor.
  ExactCyc invert() const;
  // Aux ring only: (c-1) z_0 - sum_{i>0} z_i.
  mpq_class trace() const;
  // Coefficientwise reduction; every denominator must be prime to p.
  CycElem reduce(const CycRingPtr& ring) const;
  // Least common denominator of the coefficients.
  mpz_class denominator() const;

 private:
  ExactCyc(RingKind kind, u64 index, std::vector<i64> phi);
  void reduce_poly(std::vector<mpq_class>& v) const;
  RingKind kind_ = RingKind::AuxPrime;
  u64 index_ = 0;
  std::vector<i64> phi_;
  std::vector<mpq_class> c_;
};

// B_k(x), low degree first.
std::vector<mpq_class> bernoulli_polynomial(int k);
mpq_class bernoulli_number(int k);
mpq_class eval_poly(const std::vector<mpq_class>& f, const mpq_class& x);

// f^k (-B_{k+1}(b/f) / (k+1)): sum over n = b mod f, n > 0, of n^k, regularized.
mpq_class hurwitz_partial_zeta(i64 b, i64 f, int k);

// L_f(chi, 1-k) = -B_{k,chi}/k over the period f. chi_exp[a] for a in [0, f) is the exponent of zeta_n,
// or -1 when gcd(a, f) > 1.
ExactCyc classical_L_value(const std::vector<i64>& chi_exp, u64 n, int k);

// alpha mod the aux prime, found by ideal membership.
i64 exact_aux_exponent(const Field& F, const AuxPrime& aux, const FieldElem& alpha);

// B_{k,K}(eta^a) by the defining sum.
std::vector<ExactCyc> exact_b_direct(u64 c, i64 a, std::size_t K);
// Same by the three-term recurrence.
std::vector<ExactCyc> exact_b_recurrence(u64 c, i64 a, std::size_t K);

// Delta^k F_{k+1}(C, c; T) at T = 0, traced: Z(C, c; -k).
mpq_class exact_cone_series_value(const Field& F, const Cone& C, const AuxPrime& aux, int k);

// c^(1+k) Z((ac)^-1; -k) - Z(a^-1; -k) over Q with modulus f.
mpq_class exact_twisted_partial_zeta_Q(i64 a, i64 f, i64 c, int k);

// Polynomial in T_1..T_d with ExactCyc coefficients.
struct MultiPoly {
  int d = 2;
  std::map<std::vector<int>, ExactCyc> terms;

  static constexpr int kMaxDegree = 6;
  void add(const std::vector<int>& exps, const ExactCyc& v);
};

// Single-variable polynomial in T.
using UniPoly = std::vector<ExactCyc>;

// prod (1+T_i) d/dT_i.
MultiPoly delta_multi(const MultiPoly& A);
// (1+T_i)^n_i products go to (1+T)^(n_1...n_d).
UniPoly omega(const MultiPoly& A);
// (1+T) d/dT.
UniPoly delta_uni(const UniPoly& f);
bool uni_equal(const UniPoly& a, const UniPoly& b);

// Omega(Delta A) == Delta(Omega A).
bool omega_commutation_check(const MultiPoly& A);
// T^max(a_i) divides Omega of the monomial.
bool omega_monomial_divisible(const std::vector<int>& exps, u64 c = 3);

}  // namespace padicl::oracle
