#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padicl/cyclotomic.hpp"
#include "padicl/padic.hpp"

namespace padicl {

using Rational = mpq_class;
using Integer = mpz_class;

// Q, or Q(sqrt D) with integral basis (1, theta).
class Field {
 public:
  static Field rational();
  static Field quadratic(i64 D);

  bool is_rational() const { return D_ == 1; }
  int degree() const { return is_rational() ? 1 : 2; }
  i64 D() const { return D_; }
  i64 discriminant() const;
  // theta^2 = tr*theta - nm
  i64 tr() const { return tr_; }
  i64 nm() const { return nm_; }
  std::string name() const;
  bool operator==(const Field& o) const { return D_ == o.D_; }

 private:
  i64 D_ = 1;
  i64 tr_ = 0;
  i64 nm_ = 0;
};

// a + b*theta.
struct FieldElem {
  Rational a = 0;
  Rational b = 0;

  FieldElem() = default;
  FieldElem(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  static FieldElem of(i64 a, i64 b = 0) { return FieldElem(Rational(static_cast<long>(a)), Rational(static_cast<long>(b))); }

  bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
  bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  FieldElem operator+(const FieldElem& o) const { return FieldElem(a + o.a, b + o.b); }
  FieldElem operator-(const FieldElem& o) const { return FieldElem(a - o.a, b - o.b); }
  FieldElem operator-() const { return FieldElem(-a, -b); }
  FieldElem scaled(const Rational& r) const { return FieldElem(a * r, b * r); }
  std::string to_string() const;
};

// Integral coordinates for hot loops.
struct IntElem {
  i64 x = 0;
  i64 y = 0;
};
IntElem to_int(const FieldElem& e);

FieldElem mul(const Field& F, const FieldElem& x, const FieldElem& y);
FieldElem conj(const Field& F, const FieldElem& x);
Rational norm(const Field& F, const FieldElem& x);
FieldElem inverse(const Field& F, const FieldElem& x);
FieldElem power(const Field& F, const FieldElem& x, u64 e);
i128 norm_int(const Field& F, i128 x, i128 y);

// Embedding i in {1, 2}: theta^(1) uses -sqrt D, theta^(2) uses +sqrt D. Q has only i = 1.
int sign_at(const Field& F, const FieldElem& x, int i);
bool totally_positive(const Field& F, const FieldElem& x);
double embed(const Field& F, const FieldElem& x, int i);
Integer floor_at(const Field& F, const FieldElem& x, int i);
Integer ceil_at(const Field& F, const FieldElem& x, int i);
// ceil(x^(i) / y^(i)).
Integer ceil_ratio_at(const Field& F, const FieldElem& x, const FieldElem& y, int i);

// Z-lattice a*Z + (b + c*theta)*Z in HNF: a, c > 0, 0 <= b < a. For Q: (a, 0, 1).
struct Ideal {
  i64 a = 1;
  i64 b = 0;
  i64 c = 1;

  i64 norm() const { return a * c; }
  FieldElem basis0() const { return FieldElem::of(a, 0); }
  FieldElem basis1() const { return FieldElem::of(b, c); }
  bool operator==(const Ideal& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
  bool operator<(const Ideal& o) const;
  std::string to_string() const;
};

Ideal unit_ideal();
// Ideal generated by integral elements.
Ideal ideal_from_generators(const Field& F, const std::vector<FieldElem>& gens);
Ideal principal_ideal(const Field& F, const FieldElem& x);
Ideal integer_ideal(const Field& F, i64 n);
Ideal ideal_mul(const Field& F, const Ideal& I, const Ideal& J);
Ideal ideal_add(const Field& F, const Ideal& I, const Ideal& J);
Ideal ideal_conj(const Field& F, const Ideal& I);
bool ideal_contains(const Field& F, const Ideal& I, const FieldElem& x);
bool ideal_contains(const Ideal& I, i128 x, i128 y);
bool ideals_coprime(const Field& F, const Ideal& I, const Ideal& J);
// Prime ideals above a rational prime, with residue degree.
std::vector<std::pair<Ideal, int>> primes_above(const Field& F, u64 ell);
std::vector<Ideal> ideals_of_norm(const Field& F, i64 n);
// Generator with |N| = N(I), if principal.
std::optional<FieldElem> principal_generator(const Field& F, const Ideal& I);

// Fundamental unit eps with eps^(2) > 1.
FieldElem fundamental_unit(const Field& F);
// eps_+ with eps_+^(2) > 1 > eps_+^(1) > 0.
FieldElem fundamental_totally_positive_unit(const Field& F);

// Finite part of a modulus; every real place is included.
struct Modulus {
  Ideal f;
  std::string to_string(const Field& F) const;
};
Modulus make_modulus(const Field& F, const Ideal& f);
// q divides f.
bool modulus_divisible_by_q(const Field& F, const Modulus& m, u64 p);

// Z_E / f with elements encoded as integers in [0, N(f)).
class ResidueRing {
 public:
  ResidueRing(const Field& F, const Ideal& f);
  i64 size() const { return f_.norm(); }
  i64 encode(i128 x, i128 y) const;
  i64 encode(const FieldElem& x) const;
  IntElem decode(i64 idx) const;
  i64 mul(i64 i, i64 j) const;
  i64 one() const { return encode(1, 0); }
  bool is_unit(i64 idx) const;

 private:
  Field F_;
  Ideal f_;
};

// Least i >= 1 with eps_+^i = 1 mod f.
u64 unit_index(const Field& F, const Modulus& m);
FieldElem unit_eps_m(const Field& F, const Modulus& m);

class RayClassGroup {
 public:
  RayClassGroup(const Field& F, const Modulus& m, i64 residue_bound = 200000);

  const Field& field() const { return F_; }
  const Modulus& modulus() const { return m_; }
  // Invariant factors d_1 | d_2 | ..., all > 1.
  const std::vector<i64>& cyclic_orders() const { return orders_; }
  i64 order() const;
  i64 class_number_field() const { return static_cast<i64>(cl_reps_.size()); }

  // Coordinates in the cyclic decomposition; I must be coprime to f.
  std::vector<i64> dlog(const Ideal& I) const;
  i64 class_index(const std::vector<i64>& coords) const;
  // One integral ideal per class, coprime to f, norm not divisible by avoid (0 = none).
  std::vector<Ideal> representatives(u64 avoid = 0) const;

 private:
  std::vector<Integer> raw_log(const Ideal& I) const;
  std::vector<Integer> phi_log(const FieldElem& gamma, const Integer& denom) const;

  Field F_;
  Modulus m_;
  ResidueRing R_;
  // (Z_E/f)^* generators and a discrete-log table
  std::vector<i64> unit_gens_;
  std::map<i64, std::vector<i64>> unit_log_;
  // class group representatives with norms prime to N(f)
  std::vector<Ideal> cl_reps_;
  std::size_t ngens_ = 0;
  std::vector<std::vector<Integer>> Q_;
  std::vector<i64> diag_;
  std::vector<std::size_t> keep_;
  std::vector<i64> orders_;
};

// chi(g_i) = zeta_n^{exps[i]} on the cyclic generators.
struct Character {
  u64 n = 1;
  std::vector<i64> exps;

  bool is_trivial() const;
  std::string to_string() const;
};

void validate_character(const RayClassGroup& G, const Character& chi);
i64 character_exponent(const RayClassGroup& G, const Character& chi, const Ideal& I);
std::vector<Character> characters_of_order_dividing(const RayClassGroup& G, u64 n);

// chi * kappa^(1-m), kappa(a) = omega(N a).
struct TwistedCharacter {
  Character chi;
  int m = 1;

  CycElem value(const RayClassGroup& G, const CycRingPtr& ring, const Ideal& I) const;
  CycElem value_inverse(const RayClassGroup& G, const CycRingPtr& ring, const Ideal& I) const;
  bool is_trivial(const RayClassGroup& G, const CycRingPtr& ring) const;
};
TwistedCharacter kappa_twist(const Character& chi, int m);

// (e, m_0)
std::pair<int, int> compute_e(const Field& F, u64 p);

struct AuxPrime {
  u64 c = 0;
  Ideal ideal;
  // theta = t mod the prime
  i64 t = 0;
};

// Exponent a with alpha = a mod the aux prime.
i64 residue_mod_aux(const Field& F, const AuxPrime& aux, i128 x, i128 y);
// Degree-one primes above c; empty when c is inert or ramified.
std::vector<AuxPrime> degree_one_primes(const Field& F, u64 c);
std::optional<AuxPrime> aux_prime_candidate(const Field& F, const Modulus& m, u64 c);

AuxPrime choose_aux_prime(const Field& F, const RayClassGroup& G, const TwistedCharacter& chi, u64 p, int M,
                          const std::vector<u64>& exclude = {}, u64 ceiling = 10000);
// Degree one, prime to p f disc(E), and chi(c) != 1; for trivial chi, <N c> != 1 mod p^(e+1).
bool aux_prime_admissible(const Field& F, const RayClassGroup& G, const TwistedCharacter& chi, u64 p, int M,
                          const AuxPrime& aux);

}  // namespace padicl
