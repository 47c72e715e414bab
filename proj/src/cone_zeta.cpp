#include "padicl/cone_zeta.hpp"

#include <cstdlib>
#include <thread>

#include "padicl/errors.hpp"

namespace padicl {

i64 AuxContext::exponent(const FieldElem& alpha) const {
  if (!alpha.is_integral()) throw std::invalid_argument("additive character of a non-integral element");
  IntElem v = to_int(alpha);
  return residue_mod_aux(F, aux, v.x, v.y);
}

AuxContext make_aux_context(const Field& F, const AuxPrime& aux, u64 p, int M) {
  AuxContext ctx;
  ctx.F = F;
  ctx.aux = aux;
  ctx.p = p;
  ctx.M = M;
  ctx.ring = CycRing::aux(p, M, aux.c);
  return ctx;
}

i64 additive_char(const FieldElem& alpha, const AuxContext& ctx) { return ctx.exponent(alpha); }

BTable b_values(i64 a, std::size_t K, const CycRingPtr& ring) {
  const i64 c = static_cast<i64>(ring->index());
  if (((a % c) + c) % c == 0) throw AdmissibilityError("B table for a generator in c");
  const u64 p = ring->p();
  const int M = ring->precision();
  const CycElem x = CycElem::x_pow(ring, a);
  const CycElem one = CycElem::one(ring);
  const CycElem r = x * (x - one).invert();
  const CycElem rK = r.pow(K);
  // C(K+1, k+1) for k = 0..K-1
  const std::vector<u64> binom = binomial_row_of(p, M, mpz_class(static_cast<unsigned long>(K + 1)), K + 2);
  BTable t;
  t.a = a;
  t.K = K;
  t.values.reserve(K + 1);
  t.values.push_back(x * rK - x + one);
  for (std::size_t k = 0; k < K; ++k) {
    CycElem term = rK.scalar_mul(binom[k + 1]);
    if ((k + 1) % 2 == 1) term = -term;
    t.values.push_back(x * (term + t.values.back()));
  }
  return t;
}

std::shared_ptr<const BTable> BTableCache::get(i64 a, std::size_t K, const CycRingPtr& ring) {
  const i64 c = static_cast<i64>(ring->index());
  a = ((a % c) + c) % c;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find({a, K});
    if (it != tables_.end() && it->second->values.front().ring()->same_as(*ring)) {
      ++hits_;
      return it->second;
    }
  }
  auto t = std::make_shared<const BTable>(b_values(a, K, ring));
  std::lock_guard<std::mutex> lock(mu_);
  ++misses_;
  tables_[{a, K}] = t;
  return t;
}

CycElem cone_prefactor(const Cone& C, const AuxContext& ctx) {
  CycElem A = CycElem::x_pow(ctx.ring, ctx.exponent(C.base));
  const CycElem one = CycElem::one(ctx.ring);
  for (const auto& l : C.gens) {
    const i64 a = ctx.exponent(l);
    if (a == 0) throw AdmissibilityError("cone generator lies in the auxiliary prime");
    A = A * (one - CycElem::x_pow(ctx.ring, a)).invert();
  }
  return A;
}

std::size_t measure_K(const Field& F, std::size_t N) { return (N - 1) * static_cast<std::size_t>(F.degree()); }

std::size_t value_K(const Field& F, u64 p, int M) {
  const std::size_t n = p == 2 ? static_cast<std::size_t>(2 * M + 3) : static_cast<std::size_t>(p * M + 1);
  return n * static_cast<std::size_t>(F.degree());
}

std::size_t iwasawa_K(const Field& F, u64 p, int e, int M, int L) {
  return static_cast<std::size_t>(ipow(p, e) * (p * static_cast<u64>(M) + static_cast<u64>(L)) - 1) *
         static_cast<std::size_t>(F.degree());
}

unsigned worker_threads() {
  static const unsigned n = [] {
    const char* v = std::getenv("PADICL_THREADS");
    if (!v) return 1u;
    long k = std::strtol(v, nullptr, 10);
    return k >= 1 && k <= 256 ? static_cast<unsigned>(k) : 1u;
  }();
  return n;
}

namespace {

// Sum over k in {0..K}^g of term(N(beta + k.lambda)) * prod B_{k_i,K}, times A, traced.
// term writes W residues mod p^M.
template <class MakeTerm>
std::vector<u64> cone_sum(const Cone& C, const AuxContext& ctx, std::size_t K, std::size_t W, MakeTerm make_term,
                          BTableCache* cache) {
  const CycRingPtr& ring = ctx.ring;
  const ModRing& R = ring->base();
  const std::size_t D = static_cast<std::size_t>(ring->degree());
  const std::size_t g = C.gens.size();
  if (g > 2) throw std::invalid_argument("cone_sum: at most two generators");
  const CycElem A = cone_prefactor(C, ctx);

  std::vector<std::shared_ptr<const BTable>> B;
  for (const auto& l : C.gens) {
    const i64 a = ctx.exponent(l);
    B.push_back(cache ? cache->get(a, K, ring) : std::make_shared<const BTable>(b_values(a, K, ring)));
  }
  const IntElem beta = to_int(C.base);
  std::vector<IntElem> lam;
  for (const auto& l : C.gens) lam.push_back(to_int(l));
  const Field& F = ctx.F;

  auto run = [&](std::size_t k1_lo, std::size_t k1_hi, std::vector<u64>& S) {
    S.assign(W * D, 0);
    auto term = make_term();
    std::vector<u64> vals(W), T(W * D), tmp(D);
    if (g == 0) {
      term(norm_int(F, beta.x, beta.y), vals.data());
      for (std::size_t w = 0; w < W; ++w) S[w * D] = vals[w];
      return;
    }
    for (std::size_t k1 = k1_lo; k1 < k1_hi; ++k1) {
      const i128 x1 = beta.x + static_cast<i128>(k1) * lam[0].x;
      const i128 y1 = beta.y + static_cast<i128>(k1) * lam[0].y;
      const u64* b1 = B[0]->values[k1].coeffs().data();
      if (g == 1) {
        term(norm_int(F, x1, y1), vals.data());
        for (std::size_t w = 0; w < W; ++w)
          for (std::size_t j = 0; j < D; ++j) S[w * D + j] = R.add(S[w * D + j], R.mul(vals[w], b1[j]));
        continue;
      }
      std::fill(T.begin(), T.end(), 0);
      for (std::size_t k2 = 0; k2 <= K; ++k2) {
        const i128 x = x1 + static_cast<i128>(k2) * lam[1].x;
        const i128 y = y1 + static_cast<i128>(k2) * lam[1].y;
        term(norm_int(F, x, y), vals.data());
        const u64* b2 = B[1]->values[k2].coeffs().data();
        for (std::size_t w = 0; w < W; ++w) {
          const u64 v = vals[w];
          if (!v) continue;
          u64* t = &T[w * D];
          for (std::size_t j = 0; j < D; ++j) t[j] = R.add(t[j], R.mul(v, b2[j]));
        }
      }
      for (std::size_t w = 0; w < W; ++w) {
        ring->mul_raw(b1, &T[w * D], tmp.data());
        for (std::size_t j = 0; j < D; ++j) S[w * D + j] = R.add(S[w * D + j], tmp[j]);
      }
    }
  };

  std::vector<u64> S;
  const std::size_t outer = g == 0 ? 1 : K + 1;
  const unsigned nt = std::min<unsigned>(worker_threads(), static_cast<unsigned>(outer));
  if (nt <= 1) {
    run(0, outer, S);
  } else {
    std::vector<std::vector<u64>> parts(nt);
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nt; ++i)
      pool.emplace_back(run, outer * i / nt, outer * (i + 1) / nt, std::ref(parts[i]));
    for (auto& th : pool) th.join();
    S.assign(W * D, 0);
    for (const auto& part : parts)
      for (std::size_t i = 0; i < S.size(); ++i) S[i] = R.add(S[i], part[i]);
  }

  std::vector<u64> out(W);
  std::vector<u64> tmp(D);
  for (std::size_t w = 0; w < W; ++w) {
    ring->mul_raw(A.coeffs().data(), &S[w * D], tmp.data());
    out[w] = trace(CycElem(ring, tmp)).residue();
  }
  return out;
}

void require_norm_one_mod_q(u64 p, i128 n) {
  const i128 q = static_cast<i128>(q_of(p));
  if (((n % q) + q) % q != 1 % q)
    throw HypothesisError("cone norm not congruent to 1 mod q; the cone is not inside E_m");
}

}  // namespace

Measure cone_measure(const Cone& C, const AuxContext& ctx, std::size_t N, BTableCache* cache) {
  if (N == 0) throw std::invalid_argument("cone_measure: N must be positive");
  const std::size_t K = measure_K(ctx.F, N);
  BinomialRows rows(ctx.p, ctx.M, N);
  auto make = [&] {
    return [&rows](i128 n, u64* out) { rows.fill(rows.reduce_signed(n), out); };
  };
  return Measure{ctx.p, ctx.M, cone_sum(C, ctx, K, N, make, cache)};
}

PAdicInt cone_value(const Cone& C, const AuxContext& ctx, const PAdicInt& s, BTableCache* cache) {
  const u64 p = ctx.p;
  const int M = ctx.M;
  if (s.p() != p) throw std::invalid_argument("cone_value: mixed primes");
  if (s.precision() < M) throw PrecisionError("cone_value: s known to fewer than M digits");
  const std::size_t K = value_K(ctx.F, p, M);
  // C(-s, n) for the series sum (x-1)^n C(-s,n), valid for x = 1 mod q
  const std::size_t Nt = p == 2 ? static_cast<std::size_t>((M + 1) / 2 + 1) : static_cast<std::size_t>(M);
  BinomialRows rows(p, M, Nt);
  std::vector<u64> coef(Nt);
  rows.fill((-s.reduce(M)).residue() % rows.input_modulus(), coef.data());
  const ModRing R(p, M);
  auto make = [&] {
    return [&R, &coef, p](i128 n, u64* out) {
      require_norm_one_mod_q(p, n);
      const u64 y = R.sub(R.from_signed(n), 1 % R.mod);
      u64 acc = 0;
      for (std::size_t i = coef.size(); i-- > 0;) acc = R.add(R.mul(acc, y), coef[i]);
      out[0] = acc;
    };
  };
  return PAdicInt(p, M, cone_sum(C, ctx, K, 1, make, cache)[0]);
}

int iwasawa_extra_digits(u64 p, int L) { return binomial_row_extra_digits(p, static_cast<std::size_t>(L)); }

std::vector<u64> cone_iwasawa(const Cone& C, const AuxContext& ctx, const PAdicInt& u, int e, int L,
                              BTableCache* cache) {
  const u64 p = ctx.p;
  const int M = ctx.M;
  if (L <= 0) throw std::invalid_argument("cone_iwasawa: L must be positive");
  const int V = iwasawa_extra_digits(p, L);
  if (u.precision() < M + V + e) throw PrecisionError("cone_iwasawa: u known to too few digits");
  const std::size_t K = iwasawa_K(ctx.F, p, e, M, L);
  const LuEvaluator Lu(p, M + V, e, u.reduce(M + V + e));
  BinomialRows rows(p, M, static_cast<std::size_t>(L));
  const ModRing R(p, M);
  const ModRing In = Lu.in_ring();
  auto make = [&] {
    return [&, row = std::vector<u64>(static_cast<std::size_t>(L))](i128 n, u64* out) mutable {
      require_norm_one_mod_q(p, n);
      const u64 l = Lu(In.from_signed(n));
      rows.fill(l % rows.input_modulus(), row.data());
      const u64 inv = R.inv(R.from_signed(n));
      for (int i = 0; i < L; ++i) out[i] = R.mul(inv, row[static_cast<std::size_t>(i)]);
    };
  };
  return cone_sum(C, ctx, K, static_cast<std::size_t>(L), make, cache);
}

}  // namespace padicl
