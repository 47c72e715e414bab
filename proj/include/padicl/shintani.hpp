#pragma once

#include <string>
#include <vector>

#include "padicl/number_field.hpp"

namespace padicl {

// C(beta; lambda_1..lambda_g) = { beta + sum n_i lambda_i : n_i >= 0 }.
struct Cone {
  FieldElem base;
  std::vector<FieldElem> gens;
};

struct ConeDecomposition {
  Ideal a;
  Modulus m;
  AuxPrime aux;
  std::vector<Cone> cones;
  // First polygon point of the walk; the cones cover the sector from start to start * eps_m.
  FieldElem start;
  // Walk statistics (quadratic case).
  std::size_t rational_cones = 0;
  std::size_t merged_steps = 0;
};

// Single cone C(b; af) with b = a (a^-1 mod f).
ConeDecomposition decompose_rational(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux);
// Convexity-polygon walk with c-avoidance.
ConeDecomposition decompose_quadratic(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux);
ConeDecomposition decompose(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux);

// Elements s b0 + t b1 of a with 0 < s <= 1, 0 <= t < 1 and = 1 mod f.
std::vector<FieldElem> pc_points(const Field& F, const FieldElem& b0, const FieldElem& b1, const Ideal& a,
                                 const Modulus& m);

// Cone membership of an integral element, solved exactly.
bool cone_contains(const Field& F, const Cone& C, const FieldElem& alpha);

struct CoverageReport {
  std::size_t points = 0;
  std::size_t covered_once = 0;
  std::vector<FieldElem> duplicates;
  std::vector<FieldElem> misses;
  bool clean() const { return duplicates.empty() && misses.empty(); }
};

// Every alpha in a, totally positive, = 1 mod f, with both embeddings <= height must meet the cones
// exactly once up to multiplication by powers of eps_m.
CoverageReport verify_decomposition(const Field& F, const ConeDecomposition& dec, i64 height);

// Structural checks on every cone: base = 1 mod f, generators in af and outside c, totally positive.
void check_cone_invariants(const Field& F, const ConeDecomposition& dec);

}  // namespace padicl
