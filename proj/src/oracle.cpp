#include "padicl/oracle.hpp"

#include <stdexcept>

#include "padicl/errors.hpp"

namespace padicl::oracle {

namespace {

mpq_class reduced(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

mpz_class binom(const mpz_class& n, unsigned long k) {
  // C(n, k) for any integer n
  mpz_class num = 1, den = 1;
  for (unsigned long i = 0; i < k; ++i) {
    num *= n - static_cast<long>(i);
    den *= static_cast<long>(i + 1);
  }
  return num / den;
}

mpq_class norm_of(const Field& F, const FieldElem& x) { return norm(F, x); }

}  // namespace

ExactCyc::ExactCyc(RingKind kind, u64 index, std::vector<i64> phi)
    : kind_(kind), index_(index), phi_(std::move(phi)), c_(phi_.size() - 1, mpq_class(0)) {}

ExactCyc ExactCyc::aux_zero(u64 c) {
  if (c < 2) throw std::invalid_argument("ExactCyc: c must be at least 2");
  return ExactCyc(RingKind::AuxPrime, c, std::vector<i64>(c, 1));
}

ExactCyc ExactCyc::character_zero(u64 n) { return ExactCyc(RingKind::Character, n, cyclotomic_polynomial(n)); }

void ExactCyc::reduce_poly(std::vector<mpq_class>& v) const {
  const std::size_t d = phi_.size() - 1;
  for (std::size_t k = v.size(); k-- > d;) {
    if (v[k] == 0) continue;
    const mpq_class t = v[k];
    for (std::size_t j = 0; j <= d; ++j) v[k - d + j] -= t * static_cast<long>(phi_[j]);
  }
  v.resize(d);
}

ExactCyc ExactCyc::x_pow(const ExactCyc& like, i64 a) {
  ExactCyc r = like;
  const i64 n = static_cast<i64>(like.index_);
  a = ((a % n) + n) % n;
  std::vector<mpq_class> v(static_cast<std::size_t>(a) + 1, mpq_class(0));
  v[static_cast<std::size_t>(a)] = 1;
  if (v.size() < r.c_.size()) v.resize(r.c_.size(), mpq_class(0));
  r.reduce_poly(v);
  r.c_ = std::move(v);
  return r;
}

ExactCyc ExactCyc::scalar(const ExactCyc& like, const mpq_class& v) {
  ExactCyc r = like;
  for (auto& x : r.c_) x = 0;
  r.c_[0] = v;
  return r;
}

ExactCyc ExactCyc::operator+(const ExactCyc& o) const {
  ExactCyc r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

ExactCyc ExactCyc::operator-(const ExactCyc& o) const {
  ExactCyc r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

ExactCyc ExactCyc::operator-() const {
  ExactCyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ExactCyc ExactCyc::scaled(const mpq_class& s) const {
  ExactCyc r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

ExactCyc ExactCyc::operator*(const ExactCyc& o) const {
  if (index_ != o.index_ || kind_ != o.kind_) throw std::invalid_argument("ExactCyc: ring mismatch");
  const std::size_t d = c_.size();
  std::vector<mpq_class> v(d == 0 ? 0 : 2 * d - 1, mpq_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) v[i + j] += c_[i] * o.c_[j];
  }
  ExactCyc r = *this;
  reduce_poly(v);
  r.c_ = std::move(v);
  return r;
}

bool ExactCyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

ExactCyc ExactCyc::invert() const {
  // Solve (mult-by-z) y = 1 by Gaussian elimination.
  const std::size_t d = c_.size();
  std::vector<std::vector<mpq_class>> A(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
  for (std::size_t j = 0; j < d; ++j) {
    const ExactCyc col = *this * x_pow(*this, static_cast<i64>(j));
    for (std::size_t i = 0; i < d; ++i) A[i][j] = col.c_[i];
  }
  A[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && A[piv][col] == 0) ++piv;
    if (piv == d) throw SingularElementError("ExactCyc: element is a zero divisor");
    std::swap(A[piv], A[col]);
    const mpq_class inv = 1 / A[col][col];
    for (std::size_t j = col; j <= d; ++j) A[col][j] *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || A[i][col] == 0) continue;
      const mpq_class f = A[i][col];
      for (std::size_t j = col; j <= d; ++j) A[i][j] -= f * A[col][j];
    }
  }
  ExactCyc r = *this;
  for (std::size_t i = 0; i < d; ++i) r.c_[i] = A[i][d];
  return r;
}

mpq_class ExactCyc::trace() const {
  if (kind_ != RingKind::AuxPrime) throw std::invalid_argument("ExactCyc::trace: aux ring only");
  mpq_class t = c_[0] * static_cast<long>(index_ - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) t -= c_[i];
  return t;
}

CycElem ExactCyc::reduce(const CycRingPtr& ring) const {
  if (ring->index() != index_ || static_cast<std::size_t>(ring->degree()) != c_.size())
    throw std::invalid_argument("ExactCyc::reduce: ring shape mismatch");
  const ModRing& R = ring->base();
  std::vector<u64> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const u64 den = R.from_mpz(c_[i].get_den());
    v[i] = R.mul(R.from_mpz(c_[i].get_num()), R.inv(den));
  }
  return CycElem(ring, std::move(v));
}

mpz_class ExactCyc::denominator() const {
  mpz_class l = 1;
  for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  return l;
}

mpq_class bernoulli_number(int k) {
  if (k < 0 || k > 200) throw std::invalid_argument("bernoulli_number: k out of range");
  static std::vector<mpq_class> B{mpq_class(1)};
  while (static_cast<int>(B.size()) <= k) {
    // sum_{j<=m} C(m+1, j) B_j = 0
    const long m = static_cast<long>(B.size());
    mpq_class s = 0;
    for (long j = 0; j < m; ++j) s += mpq_class(binom(m + 1, static_cast<unsigned long>(j))) * B[static_cast<std::size_t>(j)];
    B.push_back(-s / (m + 1));
  }
  return B[static_cast<std::size_t>(k)];
}

std::vector<mpq_class> bernoulli_polynomial(int k) {
  if (k < 0 || k > 40) throw std::invalid_argument("bernoulli_polynomial: 0 <= k <= 40");
  std::vector<mpq_class> f(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j)
    f[static_cast<std::size_t>(k - j)] = mpq_class(binom(k, static_cast<unsigned long>(j))) * bernoulli_number(j);
  return f;
}

mpq_class eval_poly(const std::vector<mpq_class>& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

mpq_class hurwitz_partial_zeta(i64 b, i64 f, int k) {
  if (f <= 0 || b <= 0 || b > f) throw std::invalid_argument("hurwitz_partial_zeta: need 0 < b <= f");
  mpz_class fk;
  mpz_pow_ui(fk.get_mpz_t(), mpz_class(static_cast<long>(f)).get_mpz_t(), static_cast<unsigned long>(k));
  const mpq_class x = reduced(static_cast<long>(b), static_cast<long>(f));
  const mpq_class v = eval_poly(bernoulli_polynomial(k + 1), x);
  return mpq_class(fk) * (-v / (k + 1));
}

ExactCyc classical_L_value(const std::vector<i64>& chi_exp, u64 n, int k) {
  if (k < 1) throw std::invalid_argument("classical_L_value: k >= 1");
  const long f = static_cast<long>(chi_exp.size());
  const ExactCyc zero = ExactCyc::character_zero(n);
  const auto Bk = bernoulli_polynomial(k);
  ExactCyc sum = zero;
  for (long a = 1; a <= f; ++a) {
    const i64 e = chi_exp[static_cast<std::size_t>(a % f)];
    if (e < 0) continue;
    sum = sum + ExactCyc::x_pow(zero, e).scaled(eval_poly(Bk, reduced(a, f)));
  }
  mpz_class fk;
  mpz_pow_ui(fk.get_mpz_t(), mpz_class(f).get_mpz_t(), static_cast<unsigned long>(k - 1));
  // B_{k,chi} = f^(k-1) sum chi(a) B_k(a/f)
  return sum.scaled(mpq_class(fk) * mpq_class(-1, k));
}

i64 exact_aux_exponent(const Field& F, const AuxPrime& aux, const FieldElem& alpha) {
  for (u64 a = 0; a < aux.c; ++a)
    if (ideal_contains(F, aux.ideal, alpha - FieldElem::of(static_cast<i64>(a)))) return static_cast<i64>(a);
  throw std::logic_error("exact_aux_exponent: no residue found");
}

std::vector<ExactCyc> exact_b_direct(u64 c, i64 a, std::size_t K) {
  const ExactCyc zero = ExactCyc::aux_zero(c);
  const ExactCyc x = ExactCyc::x_pow(zero, a);
  const ExactCyc one = ExactCyc::scalar(zero, 1);
  const ExactCyc r = x * (x - one).invert();
  std::vector<ExactCyc> rp{one};
  for (std::size_t n = 1; n <= K; ++n) rp.push_back(rp.back() * r);
  std::vector<ExactCyc> out;
  for (std::size_t k = 0; k <= K; ++k) {
    ExactCyc s = zero;
    for (std::size_t n = k; n <= K; ++n) s = s + rp[n].scaled(mpq_class(binom(static_cast<long>(n), k)));
    out.push_back(k % 2 ? -s : s);
  }
  return out;
}

std::vector<ExactCyc> exact_b_recurrence(u64 c, i64 a, std::size_t K) {
  const ExactCyc zero = ExactCyc::aux_zero(c);
  const ExactCyc x = ExactCyc::x_pow(zero, a);
  const ExactCyc one = ExactCyc::scalar(zero, 1);
  const ExactCyc r = x * (x - one).invert();
  ExactCyc rK = one;
  for (std::size_t n = 0; n < K; ++n) rK = rK * r;
  std::vector<ExactCyc> out{x * rK - x + one};
  for (std::size_t k = 0; k < K; ++k) {
    ExactCyc t = rK.scaled(mpq_class(binom(static_cast<long>(K + 1), k + 1)));
    if ((k + 1) % 2) t = -t;
    out.push_back(x * (t + out.back()));
  }
  return out;
}

mpq_class exact_cone_series_value(const Field& F, const Cone& C, const AuxPrime& aux, int k) {
  if (k < 0 || k > 6) throw std::invalid_argument("exact_cone_series_value: 0 <= k <= 6");
  const std::size_t N = static_cast<std::size_t>(k) + 1;
  const std::size_t K = static_cast<std::size_t>(k) * static_cast<std::size_t>(F.degree());
  const u64 c = aux.c;
  const ExactCyc zero = ExactCyc::aux_zero(c);
  const ExactCyc one = ExactCyc::scalar(zero, 1);
  const std::size_t g = C.gens.size();
  if (g > 2) throw std::invalid_argument("exact_cone_series_value: at most two generators");

  ExactCyc A = ExactCyc::x_pow(zero, exact_aux_exponent(F, aux, C.base));
  std::vector<std::vector<ExactCyc>> B;
  for (const auto& l : C.gens) {
    const i64 a = exact_aux_exponent(F, aux, l);
    if (a == 0) throw AdmissibilityError("cone generator lies in the auxiliary prime");
    A = A * (one - ExactCyc::x_pow(zero, a)).invert();
    B.push_back(exact_b_direct(c, a, K));
  }

  // series coefficients in T, ExactCyc-valued
  std::vector<ExactCyc> S(N, zero);
  std::vector<std::size_t> idx(g, 0);
  while (true) {
    FieldElem pt = C.base;
    ExactCyc w = one;
    for (std::size_t i = 0; i < g; ++i) {
      pt = pt + C.gens[i].scaled(mpq_class(static_cast<long>(idx[i])));
      w = w * B[i][idx[i]];
    }
    const mpq_class nq = norm_of(F, pt);
    if (nq.get_den() != 1) throw std::logic_error("exact_cone_series_value: non-integral norm");
    for (std::size_t j = 0; j < N; ++j)
      S[j] = S[j] + w.scaled(mpq_class(binom(nq.get_num(), j)));
    std::size_t i = 0;
    while (i < g && ++idx[i] > K) idx[i++] = 0;
    if (i == g) break;
  }
  // Delta = (1+T) d/dT applied k times
  std::vector<ExactCyc> cur = S;
  for (int it = 0; it < k; ++it) {
    std::vector<ExactCyc> nxt(cur.size() - 1, zero);
    for (std::size_t n = 0; n + 1 < cur.size(); ++n)
      nxt[n] = cur[n + 1].scaled(mpq_class(static_cast<long>(n + 1))) + cur[n].scaled(mpq_class(static_cast<long>(n)));
    cur = std::move(nxt);
  }
  return (A * cur[0]).trace();
}

mpq_class exact_twisted_partial_zeta_Q(i64 a, i64 f, i64 c, int k) {
  auto inv_mod = [](i64 x, i64 m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), mpz_class(static_cast<long>(x)).get_mpz_t(), mpz_class(static_cast<long>(m)).get_mpz_t())) {
      if (m == 1) return i64{1};
      throw std::invalid_argument("exact_twisted_partial_zeta_Q: not coprime to f");
    }
    const i64 v = r.get_si();
    return v == 0 ? m : v;
  };
  const i64 b1 = inv_mod(a, f);
  const i64 b2 = inv_mod(static_cast<i64>((static_cast<i128>(a) * c) % f), f);
  mpz_class ck;
  mpz_pow_ui(ck.get_mpz_t(), mpz_class(static_cast<long>(c)).get_mpz_t(), static_cast<unsigned long>(k + 1));
  return mpq_class(ck) * hurwitz_partial_zeta(b2, f, k) - hurwitz_partial_zeta(b1, f, k);
}

void MultiPoly::add(const std::vector<int>& exps, const ExactCyc& v) {
  if (static_cast<int>(exps.size()) != d) throw std::invalid_argument("MultiPoly: wrong arity");
  for (int e : exps)
    if (e < 0 || e > kMaxDegree) throw std::invalid_argument("MultiPoly: degree cap exceeded");
  auto it = terms.find(exps);
  if (it == terms.end())
    terms.emplace(exps, v);
  else
    it->second = it->second + v;
}

MultiPoly delta_multi(const MultiPoly& A) {
  // apply (1+T_i) d/dT_i one variable at a time; T^a -> a T^(a-1) + a T^a
  std::map<std::vector<int>, ExactCyc> cur = A.terms;
  for (int i = 0; i < A.d; ++i) {
    std::map<std::vector<int>, ExactCyc> nxt;
    auto put = [&](std::vector<int> e, const ExactCyc& v) {
      auto it = nxt.find(e);
      if (it == nxt.end())
        nxt.emplace(std::move(e), v);
      else
        it->second = it->second + v;
    };
    for (const auto& [e, v] : cur) {
      const int a = e[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      put(e, v.scaled(a));
      auto lo = e;
      lo[static_cast<std::size_t>(i)] = a - 1;
      put(lo, v.scaled(a));
    }
    cur = std::move(nxt);
  }
  MultiPoly r;
  r.d = A.d;
  r.terms = std::move(cur);
  return r;
}

UniPoly omega(const MultiPoly& A) {
  if (A.terms.empty()) return {};
  const ExactCyc zero = ExactCyc::scalar(A.terms.begin()->second, 0);
  // first collect coefficients on (1+T)^m
  std::map<long, ExactCyc> shifted;
  for (const auto& [e, v] : A.terms) {
    // T_i^a = sum_n C(a,n) (-1)^(a-n) (1+T_i)^n
    std::vector<std::pair<long, mpq_class>> acc{{1, mpq_class(1)}};
    for (int a : e) {
      std::vector<std::pair<long, mpq_class>> nxt;
      for (const auto& [m, w] : acc)
        for (int n = 0; n <= a; ++n) {
          mpq_class s = w * mpq_class(binom(a, static_cast<unsigned long>(n)));
          if ((a - n) % 2) s = -s;
          nxt.emplace_back(m * n, s);
        }
      acc = std::move(nxt);
    }
    for (const auto& [m, w] : acc) {
      auto it = shifted.find(m);
      if (it == shifted.end())
        shifted.emplace(m, v.scaled(w));
      else
        it->second = it->second + v.scaled(w);
    }
  }
  long top = 0;
  for (const auto& kv : shifted) top = std::max(top, kv.first);
  UniPoly out(static_cast<std::size_t>(top) + 1, zero);
  for (const auto& [m, v] : shifted)
    for (long j = 0; j <= m; ++j)
      out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + v.scaled(mpq_class(binom(m, static_cast<unsigned long>(j))));
  return out;
}

UniPoly delta_uni(const UniPoly& f) {
  if (f.empty()) return {};
  UniPoly out(f.size(), ExactCyc::scalar(f[0], 0));
  for (std::size_t a = 1; a < f.size(); ++a) {
    out[a] = out[a] + f[a].scaled(static_cast<long>(a));
    out[a - 1] = out[a - 1] + f[a].scaled(static_cast<long>(a));
  }
  return out;
}

bool uni_equal(const UniPoly& a, const UniPoly& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool za = i >= a.size() || a[i].is_zero();
    const bool zb = i >= b.size() || b[i].is_zero();
    if (za && zb) continue;
    if (za != zb || !(a[i] == b[i])) return false;
  }
  return true;
}

bool omega_commutation_check(const MultiPoly& A) { return uni_equal(omega(delta_multi(A)), delta_uni(omega(A))); }

bool omega_monomial_divisible(const std::vector<int>& exps, u64 c) {
  MultiPoly A;
  A.d = static_cast<int>(exps.size());
  A.add(exps, ExactCyc::scalar(ExactCyc::aux_zero(c), 1));
  const UniPoly w = omega(A);
  int mx = 0;
  for (int e : exps) mx = std::max(mx, e);
  for (std::size_t i = 0; i < w.size() && static_cast<int>(i) < mx; ++i)
    if (!w[i].is_zero()) return false;
  return true;
}

}  // namespace padicl::oracle
