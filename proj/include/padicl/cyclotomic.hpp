#pragma once

#include <memory>
#include <string>
#include <vector>

#include "padicl/padic.hpp"

namespace padicl {

enum class RingKind { AuxPrime, Character };

// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
std::vector<i64> cyclotomic_polynomial(u64 n);

class CycRing;
using CycRingPtr = std::shared_ptr<const CycRing>;

// (Z/p^M)[x]/Phi(x) with Phi monic and separable mod p.
class CycRing {
 public:
  // Phi = 1 + x + ... + x^(c-1), c prime and c != p.
  static CycRingPtr aux(u64 p, int M, u64 c);
  // Phi = Phi_n, gcd(n, p) = 1.
  static CycRingPtr character(u64 p, int M, u64 n);

  RingKind kind() const { return kind_; }
  u64 index() const { return index_; }
  int degree() const { return deg_; }
  const ModRing& base() const { return base_; }
  u64 p() const { return base_.p; }
  int precision() const { return base_.M; }
  // Monic modulus, low degree first, length degree()+1.
  const std::vector<i64>& modulus_poly() const { return phi_int_; }
  bool same_as(const CycRing& o) const;

  // out = a*b reduced; out may alias neither input.
  void mul_raw(const u64* a, const u64* b, u64* out) const;
  // In-place reduction of a product of length 2*degree()-1.
  void reduce_raw(u64* prod) const;

 private:
  CycRing(RingKind kind, u64 p, int M, u64 index, std::vector<i64> phi);
  RingKind kind_;
  u64 index_;
  int deg_;
  ModRing base_;
  std::vector<i64> phi_int_;
  std::vector<u64> phi_;
};

class CycElem {
 public:
  CycElem() = default;
  CycElem(CycRingPtr ring, std::vector<u64> coeffs);

  static CycElem zero(const CycRingPtr& ring);
  static CycElem one(const CycRingPtr& ring);
  static CycElem scalar(const CycRingPtr& ring, u64 residue);
  // Class of x^a; a may be negative.
  static CycElem x_pow(const CycRingPtr& ring, i64 a);

  const CycRingPtr& ring() const { return ring_; }
  const std::vector<u64>& coeffs() const { return c_; }
  std::vector<u64>& coeffs() { return c_; }
  u64 operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  bool is_one() const;
  // Minimum coefficient valuation; precision() for zero.
  int valuation() const;

  CycElem operator+(const CycElem& o) const;
  CycElem operator-(const CycElem& o) const;
  CycElem operator*(const CycElem& o) const;
  CycElem operator-() const;
  CycElem& operator+=(const CycElem& o);
  CycElem& operator-=(const CycElem& o);
  bool operator==(const CycElem& o) const;
  bool operator!=(const CycElem& o) const { return !(*this == o); }

  CycElem scalar_mul(u64 s) const;
  CycElem pow(u64 e) const;
  // x -> x^k; an automorphism when gcd(k, index) = 1.
  CycElem substitute_power(i64 k) const;
  // Throws SingularElementError when not a unit mod p.
  CycElem invert() const;
  // Lower precision of every coefficient into another ring of the same shape.
  CycElem reduce_to(const CycRingPtr& target) const;

  std::string to_string() const;

 private:
  void check(const CycElem& o) const;
  CycRingPtr ring_;
  std::vector<u64> c_;
};

// Aux-prime ring only.
CycElem eta_pow(const CycRingPtr& ring, i64 a);
PAdicInt trace(const CycElem& z);
CycElem invert(const CycElem& z);

}  // namespace padicl
