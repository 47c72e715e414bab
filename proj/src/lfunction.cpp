#include "padicl/lfunction.hpp"

#include "padicl/errors.hpp"

namespace padicl {

namespace {

CycElem scalar_of(const CycRingPtr& ring, const PAdicInt& v) { return CycElem::scalar(ring, v.residue()); }

std::vector<u64> add_rows(std::vector<u64> a, const std::vector<u64>& b, const ModRing& R) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = R.add(a[i], b[i]);
  return a;
}

}  // namespace

std::optional<CycElem> LValueCertificate::quotient() const {
  try {
    return beta * gamma.invert();
  } catch (const SingularElementError&) {
    return std::nullopt;
  }
}

LFunction::LFunction(const LJob& job)
    : F_(job.F), m_(make_modulus(job.F, job.f)), chi_(kappa_twist(job.chi, job.m)), p_(job.p), M_(job.M) {
  if (!is_prime(p_)) throw HypothesisError("p must be prime");
  if (M_ < 1) throw PrecisionError("M must be at least 1");
  if (!modulus_divisible_by_q(F_, m_, p_)) throw HypothesisError("modulus is not divisible by q");
  if (job.chi.n % p_ == 0) throw UnsupportedCharacterError("character order divisible by p");
  e_ = compute_e(F_, p_).first;
  G_ = std::make_shared<RayClassGroup>(F_, m_);
  if (chi_.chi.exps.empty() && chi_.chi.n == 1) chi_.chi.exps.assign(G_->cyclic_orders().size(), 0);
  validate_character(*G_, chi_.chi);
  chi_ring_ = CycRing::character(p_, M_, job.chi.n);
  trivial_ = chi_.is_trivial(*G_, chi_ring_);
  if (job.aux_c) {
    bool found = false;
    for (const auto& cand : degree_one_primes(F_, *job.aux_c)) {
      if (aux_prime_admissible(F_, *G_, chi_, p_, M_, cand)) {
        aux_ = cand;
        found = true;
        break;
      }
    }
    if (!found) throw AdmissibilityError("requested auxiliary prime " + std::to_string(*job.aux_c) + " is not admissible");
  } else {
    aux_ = choose_aux_prime(F_, *G_, chi_, p_, M_);
  }
  reps_ = G_->representatives(aux_.c);
  for (const auto& a : reps_) decs_.push_back(decompose(F_, a, m_, aux_));
  ctx_ = make_aux_context(F_, aux_, p_, M_);
  bcache_ = std::make_unique<BTableCache>();
}

ConeStats LFunction::cone_stats(std::size_t K) const {
  ConeStats st;
  for (const auto& d : decs_) st.count += d.cones.size();
  st.max_K = K;
  return st;
}

Measure LFunction::partial_zeta_measure(std::size_t i, std::size_t N) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = measures_.find({i, N});
    if (it != measures_.end()) {
      ++measure_hits_;
      return it->second;
    }
  }
  const ModRing R(p_, M_);
  Measure mu{p_, M_, std::vector<u64>(N, 0)};
  for (const auto& C : decs_.at(i).cones) mu.coeffs = add_rows(mu.coeffs, cone_measure(C, ctx_, N, bcache_.get()).coeffs, R);
  std::lock_guard<std::mutex> lock(mu_);
  ++measure_misses_;
  measures_[{i, N}] = mu;
  return mu;
}

PAdicInt LFunction::norm_factor(std::size_t i, const PAdicInt& s) const {
  const PAdicInt n = PAdicInt::from_signed(p_, M_, reps_.at(i).norm());
  return teichmuller(n) * pow1q(angle(n), s.reduce(M_));
}

PAdicInt LFunction::twisted_partial_zeta_value(std::size_t i, const PAdicInt& s, EvalPath path) {
  if (s.precision() < M_) throw PrecisionError("s known to fewer than M digits");
  PAdicInt integral(p_, M_, 0);
  if (path == EvalPath::Direct) {
    for (const auto& C : decs_.at(i).cones) integral = integral + cone_value(C, ctx_, s, bcache_.get());
  } else {
    const Measure mu = partial_zeta_measure(i, phi_s_length(p_, M_));
    integral = integrate(phi_s_fn(-s.reduce(M_), M_), mu);
  }
  return norm_factor(i, s) * integral;
}

LValueCertificate LFunction::l_value(const PAdicInt& s_in, EvalPath path) {
  if (s_in.p() != p_) throw std::invalid_argument("s has the wrong prime");
  if (s_in.precision() < M_) throw PrecisionError("s known to fewer than M digits");
  const PAdicInt s = s_in.reduce(M_);
  const PAdicInt one(p_, M_, 1 % ipow(p_, M_));
  if (trivial_ && s == one) throw PoleError("trivial character has a pole at s = 1");

  CycElem beta = CycElem::zero(chi_ring_);
  for (std::size_t i = 0; i < reps_.size(); ++i)
    beta += chi_.value_inverse(*G_, chi_ring_, reps_[i]) * scalar_of(chi_ring_, twisted_partial_zeta_value(i, s, path));

  const PAdicInt c = PAdicInt::from_signed(p_, M_, static_cast<i64>(aux_.c));
  const PAdicInt cs = pow1q(angle(c), one - s);
  CycElem gamma = chi_.value(*G_, chi_ring_, aux_.ideal) * scalar_of(chi_ring_, cs) - CycElem::one(chi_ring_);
  if (gamma.is_zero()) throw PrecisionError("gamma vanishes mod p^M; s is too close to 1");

  LValueCertificate cert;
  cert.beta = beta;
  cert.gamma = gamma;
  cert.p = p_;
  cert.M = M_;
  cert.s = s;
  cert.aux_c = aux_.c;
  cert.stats = cone_stats(path == EvalPath::Direct ? value_K(F_, p_, M_) : measure_K(F_, phi_s_length(p_, M_)));
  return cert;
}

IwasawaSeriesCert LFunction::iwasawa_series(int L) {
  if (L < 1) throw std::invalid_argument("L must be positive");
  const int V = iwasawa_extra_digits(p_, L);
  const PAdicInt u = default_u(p_, M_ + V + e_, e_);
  const LuEvaluator Lu(p_, M_ + V, e_, u);
  const ModRing R(p_, M_);
  const ModRing In = Lu.in_ring();
  const std::size_t Ls = static_cast<std::size_t>(L);

  auto lu_row = [&](i64 x, bool negate) {
    u64 l = Lu(In.from_signed(x));
    if (negate) l = Lu.out_ring().neg(l);
    return binomial_row(p_, M_, l, Ls);
  };

  IwasawaSeriesCert cert;
  cert.u = u;
  cert.e = e_;
  cert.L = L;
  cert.p = p_;
  cert.M = M_;
  cert.aux_c = aux_.c;
  cert.stats = cone_stats(iwasawa_K(F_, p_, e_, M_, L));

  // C(X) = chi(c)(1+X)^Lu(c) - 1
  const CycElem chic = chi_.value(*G_, chi_ring_, aux_.ideal);
  const std::vector<u64> crow = lu_row(static_cast<i64>(aux_.c), false);
  for (std::size_t l = 0; l < Ls; ++l) cert.C.push_back(chic.scalar_mul(crow[l]));
  cert.C[0] -= CycElem::one(chi_ring_);

  cert.B.assign(Ls, CycElem::zero(chi_ring_));
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    std::vector<u64> A(Ls, 0);
    for (const auto& C : decs_[i].cones) A = add_rows(A, cone_iwasawa(C, ctx_, u, e_, L, bcache_.get()), R);
    // N(a; X) = N a (1+X)^(-Lu(N a))
    const i64 n = reps_[i].norm();
    std::vector<u64> nrow = lu_row(n, true);
    const u64 nres = R.from_signed(n);
    for (auto& v : nrow) v = R.mul(v, nres);
    const CycElem w = chi_.value_inverse(*G_, chi_ring_, reps_[i]);
    for (std::size_t l = 0; l < Ls; ++l) {
      u64 acc = 0;
      for (std::size_t j = 0; j <= l; ++j) acc = R.add(acc, R.mul(nrow[j], A[l - j]));
      cert.B[l] += w.scalar_mul(acc);
    }
  }
  return cert;
}

LValueCertificate evaluate_iwasawa(const IwasawaSeriesCert& cert, const PAdicInt& s_in) {
  if (static_cast<long>(cert.e) * cert.L < cert.M)
    throw PrecisionError("series too short: need e * L >= M");
  const PAdicInt s = s_in.reduce(cert.M);
  const PAdicInt one(cert.p, cert.M, 1 % ipow(cert.p, cert.M));
  const PAdicInt t = pow1q(cert.u.reduce(cert.M), one - s) - one;
  const CycRingPtr& ring = cert.B.at(0).ring();
  CycElem beta = CycElem::zero(ring), gamma = CycElem::zero(ring);
  for (std::size_t l = cert.B.size(); l-- > 0;) {
    beta = beta.scalar_mul(t.residue()) + cert.B[l];
    gamma = gamma.scalar_mul(t.residue()) + cert.C[l];
  }
  if (gamma.is_zero()) throw PoleError("gamma vanishes: pole of the trivial character at s = 1");
  LValueCertificate out;
  out.beta = beta;
  out.gamma = gamma;
  out.p = cert.p;
  out.M = cert.M;
  out.s = s;
  out.aux_c = cert.aux_c;
  out.stats = cert.stats;
  return out;
}

Invariants lambda_mu_invariants(const IwasawaSeriesCert& cert) {
  const std::size_t L = cert.C.size();
  const CycElem c0inv = cert.C.at(0).invert();
  std::vector<CycElem> inv(L);
  inv[0] = c0inv;
  for (std::size_t n = 1; n < L; ++n) {
    CycElem acc = CycElem::zero(c0inv.ring());
    for (std::size_t j = 1; j <= n; ++j) acc += cert.C[j] * inv[n - j];
    inv[n] = -(c0inv * acc);
  }
  Invariants r;
  for (std::size_t n = 0; n < L; ++n) {
    CycElem acc = CycElem::zero(c0inv.ring());
    for (std::size_t j = 0; j <= n; ++j) acc += cert.B[j] * inv[n - j];
    r.series.push_back(acc);
  }
  int mu = cert.M;
  int lambda = -1;
  for (std::size_t n = 0; n < L; ++n) {
    const int v = r.series[n].valuation();
    if (v < mu) {
      mu = v;
      lambda = static_cast<int>(n);
    }
  }
  if (lambda < 0) return r;
  r.mu = mu;
  r.lambda = lambda;
  // a positive minimum inside the window could be undercut by a later coefficient
  r.determined = mu == 0;
  return r;
}

bool certificates_agree(const LValueCertificate& a, const LValueCertificate& b) {
  return a.beta * b.gamma == b.beta * a.gamma;
}

}  // namespace padicl
