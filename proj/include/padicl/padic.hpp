#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace padicl {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Residues must stay below this bound so sums never overflow a u64.
inline constexpr u64 kMaxModulus = u64{1} << 62;

bool is_prime(u64 n);

// p^e, throws PrecisionError if it reaches kMaxModulus.
u64 ipow(u64 p, int e);

// Largest V with p^V <= n (0 when n < p).
int floor_log(u64 p, u64 n);

// v_p(x) for x != 0.
int vp(u64 p, u128 x);
int vp(u64 p, const mpz_class& x);

// q = 4 for p = 2, else p.
u64 q_of(u64 p);
// v_p(q).
int vq_of(u64 p);

// Arithmetic in Z/p^M on raw residues.
struct ModRing {
  u64 p = 0;
  int M = 0;
  u64 mod = 1;

  ModRing() = default;
  ModRing(u64 p, int M);

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod ? s - mod : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : mod - a; }
  u64 mul(u64 a, u64 b) const {
    if (mod <= (u64{1} << 32)) return (a * b) % mod;
    return static_cast<u64>((static_cast<u128>(a) * b) % mod);
  }
  u64 pow(u64 a, u64 e) const;
  // Inverse of a unit; throws UnitRequiredError otherwise.
  u64 inv(u64 a) const;
  u64 from_signed(i128 v) const;
  u64 from_mpz(const mpz_class& v) const;
  // Symmetric lift into (-mod/2, mod/2].
  i64 centered(u64 a) const;
};

class PAdicInt {
 public:
  PAdicInt() = default;
  PAdicInt(u64 p, int M, u64 residue = 0);
  static PAdicInt from_signed(u64 p, int M, i128 v);
  static PAdicInt from_mpz(u64 p, int M, const mpz_class& v);
  // Parses base-p digits, least significant first, separated by commas or spaces.
  static PAdicInt from_digits(u64 p, int M, const std::string& digits);

  u64 p() const { return ring_.p; }
  int precision() const { return ring_.M; }
  u64 residue() const { return r_; }
  u64 modulus() const { return ring_.mod; }
  const ModRing& ring() const { return ring_; }

  bool is_zero() const { return r_ == 0; }
  bool is_unit() const { return r_ % ring_.p != 0; }
  // Returns precision() for zero.
  int valuation() const;

  PAdicInt operator+(const PAdicInt& o) const;
  PAdicInt operator-(const PAdicInt& o) const;
  PAdicInt operator*(const PAdicInt& o) const;
  PAdicInt operator-() const;
  bool operator==(const PAdicInt& o) const;
  bool operator!=(const PAdicInt& o) const { return !(*this == o); }

  PAdicInt inverse() const;
  PAdicInt pow(u64 e) const;
  // Explicit downward coercion.
  PAdicInt reduce(int M) const;
  i64 centered() const { return ring_.centered(r_); }
  std::string digits() const;

 private:
  void check_same(const PAdicInt& o) const;
  ModRing ring_;
  u64 r_ = 0;
};

// p^valuation * unit, or zero.
struct ValuedPAdic {
  bool zero = true;
  int valuation = 0;
  PAdicInt unit;

  static ValuedPAdic from_rational(u64 p, int M, const mpq_class& q);
  // p^valuation * unit mod p^M; requires valuation >= 0.
  PAdicInt to_padic() const;
};

PAdicInt teichmuller(const PAdicInt& x);
PAdicInt angle(const PAdicInt& x);
PAdicInt plog(const PAdicInt& x);
PAdicInt pow1q(const PAdicInt& x, const PAdicInt& s);

// V for a row of N binomials.
int binomial_row_extra_digits(u64 p, std::size_t N);

// C(s,0..N-1) mod p^M for s given mod p^(M+V).
std::vector<u64> binomial_row(u64 p, int M, u64 s, std::size_t N);
// Same with s an exact integer.
std::vector<u64> binomial_row_of(u64 p, int M, const mpz_class& s, std::size_t N);

// Reusable row generator for fixed (p, M, N); the hot path of the cone sums.
class BinomialRows {
 public:
  BinomialRows(u64 p, int M, std::size_t N);
  std::size_t size() const { return N_; }
  int extra_digits() const { return V_; }
  // Modulus p^(M+V) that inputs are reduced by.
  u64 input_modulus() const { return big_.mod; }
  const ModRing& ring() const { return ring_; }
  // s must already be reduced mod input_modulus().
  void fill(u64 s, u64* out) const;
  u64 reduce_signed(i128 s) const { return big_.from_signed(s); }

 private:
  std::size_t N_;
  int V_;
  ModRing ring_;
  ModRing big_;
  std::vector<u64> unit_inv_;
  std::vector<int> val_;
  std::vector<u64> ppow_;
};

// log_p<x>/log_p(u); the result has precision x.precision() - e.
PAdicInt Lu(const PAdicInt& x, const PAdicInt& u, int e);
// 1 + p^e at precision P.
PAdicInt default_u(u64 p, int P, int e);

// Lu on raw residues with the division constant precomputed.
class LuEvaluator {
 public:
  // out_precision digits are returned; u is given at precision out_precision + e.
  LuEvaluator(u64 p, int out_precision, int e, const PAdicInt& u);
  LuEvaluator(u64 p, int out_precision, int e);
  const ModRing& in_ring() const { return in_; }
  const ModRing& out_ring() const { return out_; }
  // x must be a unit residue mod p^(out_precision + e); returns Lu(x) mod p^out_precision.
  u64 operator()(u64 x) const;
  // True when <x> lies in 1 + p^e Z_p.
  bool in_support(u64 x) const;

 private:
  u64 p_;
  int e_;
  ModRing in_;
  ModRing out_;
  u64 inv_log_u_;
};

}  // namespace padicl
