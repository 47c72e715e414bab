#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "padicl/cone_zeta.hpp"
#include "padicl/mahler.hpp"
#include "padicl/number_field.hpp"
#include "padicl/shintani.hpp"

namespace padicl {

struct LJob {
  Field F = Field::rational();
  Ideal f;
  Character chi;
  int m = 1;
  u64 p = 0;
  int M = 0;
  // Force this rational prime as N(c); the first admissible prime above it is used.
  std::optional<u64> aux_c;
};

struct ConeStats {
  std::size_t count = 0;
  std::size_t max_K = 0;
};

// gamma * L_p(chi; s) = beta mod p^M.
struct LValueCertificate {
  CycElem beta;
  CycElem gamma;
  u64 p = 0;
  int M = 0;
  PAdicInt s;
  u64 aux_c = 0;
  ConeStats stats;

  // beta / gamma when gamma is a unit.
  std::optional<CycElem> quotient() const;
};

// gamma * L_p(chi; s) = beta with beta = B(t), gamma = C(t), t = u^(1-s) - 1.
struct IwasawaSeriesCert {
  std::vector<CycElem> B;
  std::vector<CycElem> C;
  PAdicInt u;
  int e = 1;
  int L = 0;
  u64 p = 0;
  int M = 0;
  u64 aux_c = 0;
  ConeStats stats;
};

enum class EvalPath { Direct, Measure };

class LFunction {
 public:
  explicit LFunction(const LJob& job);

  const Field& field() const { return F_; }
  const Modulus& modulus() const { return m_; }
  const RayClassGroup& group() const { return *G_; }
  const TwistedCharacter& character() const { return chi_; }
  const CycRingPtr& chi_ring() const { return chi_ring_; }
  u64 p() const { return p_; }
  int M() const { return M_; }
  int e() const { return e_; }
  const AuxPrime& aux() const { return aux_; }
  const AuxContext& aux_context() const { return ctx_; }
  const std::vector<Ideal>& representatives() const { return reps_; }
  const ConeDecomposition& decomposition(std::size_t i) const { return decs_.at(i); }
  bool trivial() const { return trivial_; }

  // Sum of cone measures over the decomposition of a_i, N coefficients.
  Measure partial_zeta_measure(std::size_t i, std::size_t N);
  // omega(N a_i) <N a_i>^s int phi_{-s} dmu^{a_i, c}.
  PAdicInt twisted_partial_zeta_value(std::size_t i, const PAdicInt& s, EvalPath path = EvalPath::Direct);

  LValueCertificate l_value(const PAdicInt& s, EvalPath path = EvalPath::Direct);
  IwasawaSeriesCert iwasawa_series(int L);

  ConeStats cone_stats(std::size_t K) const;
  std::size_t measure_cache_hits() const { return measure_hits_; }
  std::size_t measure_cache_misses() const { return measure_misses_; }
  const BTableCache& b_cache() const { return *bcache_; }

 private:
  PAdicInt norm_factor(std::size_t i, const PAdicInt& s) const;

  Field F_;
  Modulus m_;
  std::shared_ptr<RayClassGroup> G_;
  TwistedCharacter chi_;
  u64 p_;
  int M_;
  int e_;
  bool trivial_ = false;
  CycRingPtr chi_ring_;
  AuxPrime aux_;
  std::vector<Ideal> reps_;
  std::vector<ConeDecomposition> decs_;
  AuxContext ctx_;
  std::unique_ptr<BTableCache> bcache_;
  std::mutex mu_;
  std::map<std::pair<std::size_t, std::size_t>, Measure> measures_;
  std::size_t measure_hits_ = 0;
  std::size_t measure_misses_ = 0;
};

// Requires e * L >= M.
LValueCertificate evaluate_iwasawa(const IwasawaSeriesCert& cert, const PAdicInt& s);

struct Invariants {
  bool determined = false;
  int lambda = 0;
  int mu = 0;
  // I = B / C mod (p^M, X^L)
  std::vector<CycElem> series;
};

// Throws SingularElementError when C(0) is not a unit.
Invariants lambda_mu_invariants(const IwasawaSeriesCert& cert);

// beta gamma' = beta' gamma.
bool certificates_agree(const LValueCertificate& a, const LValueCertificate& b);

}  // namespace padicl
