#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "padicl/cyclotomic.hpp"
#include "padicl/mahler.hpp"
#include "padicl/shintani.hpp"

namespace padicl {

// Aux-prime ring (Z/p^M)[x]/(1 + ... + x^(c-1)) and the map alpha -> alpha mod c.
struct AuxContext {
  Field F;
  AuxPrime aux;
  u64 p = 0;
  int M = 0;
  CycRingPtr ring;

  i64 exponent(const FieldElem& alpha) const;
};

AuxContext make_aux_context(const Field& F, const AuxPrime& aux, u64 p, int M);

// a with Xi(alpha) = eta^a, 0 <= a < c.
i64 additive_char(const FieldElem& alpha, const AuxContext& ctx);

struct BTable {
  i64 a = 0;
  std::size_t K = 0;
  // B_{0,K}(eta^a) .. B_{K,K}(eta^a)
  std::vector<CycElem> values;
};

BTable b_values(i64 a, std::size_t K, const CycRingPtr& ring);

// Memoized tables keyed by (a, K); safe to share between threads.
class BTableCache {
 public:
  std::shared_ptr<const BTable> get(i64 a, std::size_t K, const CycRingPtr& ring);
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::mutex mu_;
  std::map<std::pair<i64, std::size_t>, std::shared_ptr<const BTable>> tables_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// A(C, Xi) = eta^Xi(beta) / prod (1 - eta^Xi(lambda_i)).
CycElem cone_prefactor(const Cone& C, const AuxContext& ctx);

// F_N(C, c; T) mod (p^M, T^N).
Measure cone_measure(const Cone& C, const AuxContext& ctx, std::size_t N, BTableCache* cache = nullptr);

// Z_p(C, c; s) mod p^M by the direct sum.
PAdicInt cone_value(const Cone& C, const AuxContext& ctx, const PAdicInt& s, BTableCache* cache = nullptr);

// Extra digits the Iwasawa sum needs on u beyond M + e.
int iwasawa_extra_digits(u64 p, int L);

// Coefficients of X^0..X^(L-1); u must carry M + e + iwasawa_extra_digits(p, L) digits.
std::vector<u64> cone_iwasawa(const Cone& C, const AuxContext& ctx, const PAdicInt& u, int e, int L,
                              BTableCache* cache = nullptr);

// Truncation indices.
std::size_t measure_K(const Field& F, std::size_t N);
std::size_t value_K(const Field& F, u64 p, int M);
std::size_t iwasawa_K(const Field& F, u64 p, int e, int M, int L);

// Worker count from PADICL_THREADS (default 1).
unsigned worker_threads();

}  // namespace padicl
