#include "padicl/padic.hpp"

#include <sstream>

#include "padicl/errors.hpp"

namespace padicl {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 ipow(u64 p, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  u64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r >= kMaxModulus / p) throw PrecisionError("p^M exceeds the 62-bit residue range");
    r *= p;
  }
  return r;
}

int floor_log(u64 p, u64 n) {
  int v = 0;
  u64 t = p;
  while (t <= n) {
    ++v;
    if (t > n / p) break;
    t *= p;
  }
  return v;
}

int vp(u64 p, u128 x) {
  if (x == 0) throw std::invalid_argument("vp: zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int vp(u64 p, const mpz_class& x) {
  if (x == 0) throw std::invalid_argument("vp: zero");
  mpz_class t = abs(x);
  mpz_class P = static_cast<unsigned long>(p);
  int v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), P.get_mpz_t())) {
    t /= P;
    ++v;
  }
  return v;
}

u64 q_of(u64 p) { return p == 2 ? 4 : p; }
int vq_of(u64 p) { return p == 2 ? 2 : 1; }

ModRing::ModRing(u64 p_, int M_) : p(p_), M(M_), mod(ipow(p_, M_)) {
  if (M_ < 0) throw std::invalid_argument("ModRing: negative precision");
}

u64 ModRing::pow(u64 a, u64 e) const {
  u64 r = 1 % mod;
  a %= mod;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 ModRing::inv(u64 a) const {
  a %= mod;
  if (a % p == 0) throw UnitRequiredError("inverse of a non-unit mod p^M");
  i128 t = 0, nt = 1, r = mod, nr = a;
  while (nr != 0) {
    i128 qq = r / nr;
    i128 tmp = t - qq * nt;
    t = nt;
    nt = tmp;
    tmp = r - qq * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += mod;
  return static_cast<u64>(t);
}

u64 ModRing::from_signed(i128 v) const {
  i128 m = static_cast<i128>(mod);
  i128 r = v % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 ModRing::from_mpz(const mpz_class& v) const {
  mpz_class m;
  mpz_class md;
  mpz_import(md.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &mod);
  mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(), md.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(u64), 0, 0, m.get_mpz_t());
  return out;
}

i64 ModRing::centered(u64 a) const {
  if (a > mod / 2) return -static_cast<i64>(mod - a);
  return static_cast<i64>(a);
}

PAdicInt::PAdicInt(u64 p, int M, u64 residue) : ring_(p, M), r_(residue % ring_.mod) {
  if (!is_prime(p)) throw std::invalid_argument("PAdicInt: p must be prime");
  if (M < 1) throw std::invalid_argument("PAdicInt: precision must be >= 1");
}

PAdicInt PAdicInt::from_signed(u64 p, int M, i128 v) {
  PAdicInt r(p, M, 0);
  r.r_ = r.ring_.from_signed(v);
  return r;
}

PAdicInt PAdicInt::from_mpz(u64 p, int M, const mpz_class& v) {
  PAdicInt r(p, M, 0);
  r.r_ = r.ring_.from_mpz(v);
  return r;
}

PAdicInt PAdicInt::from_digits(u64 p, int M, const std::string& digits) {
  PAdicInt r(p, M, 0);
  std::string s = digits;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  u64 place = 1;
  int count = 0;
  while (in >> tok) {
    u64 d = 0;
    try {
      std::size_t used = 0;
      d = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("bad p-adic digit '" + tok + "'");
    }
    if (d >= p) throw ParseError("p-adic digit " + tok + " is not below p");
    if (count < M) {
      r.r_ = r.ring_.add(r.r_, r.ring_.mul(d % r.ring_.mod, place));
      place = r.ring_.mul(place, p);
    }
    ++count;
  }
  if (count == 0) throw ParseError("empty p-adic digit string");
  return r;
}

int PAdicInt::valuation() const { return r_ == 0 ? ring_.M : vp(ring_.p, r_); }

void PAdicInt::check_same(const PAdicInt& o) const {
  if (ring_.p != o.ring_.p || ring_.M != o.ring_.M)
    throw std::invalid_argument("PAdicInt: mixed prime or precision");
}

PAdicInt PAdicInt::operator+(const PAdicInt& o) const {
  check_same(o);
  PAdicInt r = *this;
  r.r_ = ring_.add(r_, o.r_);
  return r;
}

PAdicInt PAdicInt::operator-(const PAdicInt& o) const {
  check_same(o);
  PAdicInt r = *this;
  r.r_ = ring_.sub(r_, o.r_);
  return r;
}

PAdicInt PAdicInt::operator*(const PAdicInt& o) const {
  check_same(o);
  PAdicInt r = *this;
  r.r_ = ring_.mul(r_, o.r_);
  return r;
}

PAdicInt PAdicInt::operator-() const {
  PAdicInt r = *this;
  r.r_ = ring_.neg(r_);
  return r;
}

bool PAdicInt::operator==(const PAdicInt& o) const {
  return ring_.p == o.ring_.p && ring_.M == o.ring_.M && r_ == o.r_;
}

PAdicInt PAdicInt::inverse() const {
  PAdicInt r = *this;
  r.r_ = ring_.inv(r_);
  return r;
}

PAdicInt PAdicInt::pow(u64 e) const {
  PAdicInt r = *this;
  r.r_ = ring_.pow(r_, e);
  return r;
}

PAdicInt PAdicInt::reduce(int M) const {
  if (M > ring_.M) throw std::invalid_argument("PAdicInt: precision can only be lowered");
  return PAdicInt(ring_.p, M, r_);
}

std::string PAdicInt::digits() const {
  std::string out;
  u64 v = r_;
  for (int i = 0; i < ring_.M; ++i) {
    if (i) out += ',';
    out += std::to_string(v % ring_.p);
    v /= ring_.p;
  }
  return out;
}

ValuedPAdic ValuedPAdic::from_rational(u64 p, int M, const mpq_class& q) {
  ValuedPAdic out;
  out.unit = PAdicInt(p, M, 0);
  if (q == 0) return out;
  mpz_class num = q.get_num(), den = q.get_den();
  int a = vp(p, num), b = vp(p, den);
  mpz_class P = static_cast<unsigned long>(p);
  mpz_class pa, pb;
  mpz_pow_ui(pa.get_mpz_t(), P.get_mpz_t(), a);
  mpz_pow_ui(pb.get_mpz_t(), P.get_mpz_t(), b);
  num /= pa;
  den /= pb;
  PAdicInt n = PAdicInt::from_mpz(p, M, num), d = PAdicInt::from_mpz(p, M, den);
  out.zero = false;
  out.valuation = a - b;
  out.unit = n * d.inverse();
  return out;
}

PAdicInt ValuedPAdic::to_padic() const {
  if (zero) return unit;
  if (valuation < 0) throw PrecisionError("value is not p-integral");
  const ModRing& R = unit.ring();
  if (valuation >= R.M) return PAdicInt(R.p, R.M, 0);
  return unit * PAdicInt(R.p, R.M, ipow(R.p, valuation));
}

namespace {

u64 teichmuller_raw(const ModRing& R, u64 x) {
  if (R.p == 2) return (x % 4 == 1) ? 1 % R.mod : R.mod - 1;
  if (x % R.p == 1) return 1 % R.mod;
  u64 y = x;
  for (int i = 0; i <= R.M + 1; ++i) {
    u64 z = R.pow(y, R.p);
    if (z == y) return y;
    y = z;
  }
  return y;
}

u64 angle_raw(const ModRing& R, u64 x) {
  u64 w = teichmuller_raw(R, x);
  if (w == 1 % R.mod) return x;
  if (R.p == 2) return R.neg(x);
  return R.mul(x, R.inv(w));
}

// log_p(x) mod p^P for x = 1 mod q.
u64 plog_raw(u64 p, int P, u64 x) {
  ModRing R(p, P);
  u64 y = R.sub(x % R.mod, 1);
  if (y == 0) return 0;
  int v = vp(p, y);
  u64 n0 = 1;
  while (static_cast<i64>(n0) * v - floor_log(p, n0) < P) ++n0;
  int W = floor_log(p, n0);
  ModRing B(p, P + W);
  u64 sum = 0, ypow = 1;
  for (u64 n = 1; n < n0; ++n) {
    ypow = B.mul(ypow, y);
    int vn = vp(p, n);
    u64 unit_n = n;
    u64 t = ypow;
    for (int i = 0; i < vn; ++i) {
      unit_n /= p;
      t /= p;
    }
    u64 term = R.mul(t % R.mod, R.inv(unit_n % R.mod));
    sum = (n & 1) ? R.add(sum, term) : R.sub(sum, term);
  }
  return sum;
}

void require_one_mod_q(const PAdicInt& x, const char* what) {
  u64 q = q_of(x.p());
  if (x.precision() >= vq_of(x.p()) && x.residue() % q != 1 % q)
    throw SupportError(std::string(what) + ": argument not in 1 + qZ_p");
}

}  // namespace

PAdicInt teichmuller(const PAdicInt& x) {
  if (!x.is_unit()) throw UnitRequiredError("teichmuller: argument divisible by p");
  return PAdicInt(x.p(), x.precision(), teichmuller_raw(x.ring(), x.residue()));
}

PAdicInt angle(const PAdicInt& x) {
  if (!x.is_unit()) throw UnitRequiredError("angle: argument divisible by p");
  return PAdicInt(x.p(), x.precision(), angle_raw(x.ring(), x.residue()));
}

PAdicInt plog(const PAdicInt& x) {
  require_one_mod_q(x, "plog");
  return PAdicInt(x.p(), x.precision(), plog_raw(x.p(), x.precision(), x.residue()));
}

PAdicInt pow1q(const PAdicInt& x, const PAdicInt& s) {
  require_one_mod_q(x, "pow1q");
  if (s.p() != x.p()) throw std::invalid_argument("pow1q: mixed primes");
  if (s.precision() < x.precision()) throw std::invalid_argument("pow1q: exponent precision below M");
  const u64 p = x.p();
  const int M = x.precision();
  std::size_t N = p == 2 ? static_cast<std::size_t>((M + 1) / 2 + 1) : static_cast<std::size_t>(M);
  BinomialRows rows(p, M, N);
  std::vector<u64> c(N);
  rows.fill(s.residue() % rows.input_modulus(), c.data());
  const ModRing& R = x.ring();
  u64 y = R.sub(x.residue(), 1), yp = 1 % R.mod, sum = 0;
  for (std::size_t n = 0; n < N; ++n) {
    sum = R.add(sum, R.mul(yp, c[n]));
    yp = R.mul(yp, y);
  }
  return PAdicInt(p, M, sum);
}

int binomial_row_extra_digits(u64 p, std::size_t N) {
  if (N <= 1) return 0;
  return floor_log(p, N - 1);
}

BinomialRows::BinomialRows(u64 p, int M, std::size_t N)
    : N_(N), V_(binomial_row_extra_digits(p, N)), ring_(p, M), big_(p, M + V_) {
  unit_inv_.assign(N, 0);
  val_.assign(N, 0);
  for (std::size_t n = 1; n < N; ++n) {
    u64 m = n;
    int v = 0;
    while (m % p == 0) {
      m /= p;
      ++v;
    }
    val_[n] = v;
    unit_inv_[n] = ring_.inv(m % ring_.mod);
  }
  ppow_.assign(static_cast<std::size_t>(M) + 1, 0);
  u64 t = 1 % ring_.mod;
  for (int i = 0; i < M; ++i) {
    ppow_[i] = t;
    t = ring_.mul(t, p);
  }
  ppow_[M] = 0;
}

void BinomialRows::fill(u64 s, u64* out) const {
  if (N_ == 0) return;
  const u64 p = ring_.p;
  const int M = ring_.M;
  out[0] = 1 % ring_.mod;
  u64 A = 1 % ring_.mod;
  int B = 0;
  for (std::size_t n = 1; n < N_; ++n) {
    u64 t = s - (n - 1);
    if (s < n - 1 || t == 0) {
      for (std::size_t k = n; k < N_; ++k) out[k] = 0;
      return;
    }
    int b = 0;
    while (t % p == 0) {
      t /= p;
      ++b;
    }
    A = ring_.mul(ring_.mul(t % ring_.mod, unit_inv_[n]), A);
    B += b - val_[n];
    out[n] = B >= M ? 0 : ring_.mul(A, ppow_[B]);
  }
}

std::vector<u64> binomial_row(u64 p, int M, u64 s, std::size_t N) {
  BinomialRows rows(p, M, N);
  std::vector<u64> out(N);
  rows.fill(s % rows.input_modulus(), out.data());
  return out;
}

std::vector<u64> binomial_row_of(u64 p, int M, const mpz_class& s, std::size_t N) {
  BinomialRows rows(p, M, N);
  std::vector<u64> out(N);
  ModRing big(p, M + rows.extra_digits());
  rows.fill(big.from_mpz(s), out.data());
  return out;
}

PAdicInt default_u(u64 p, int P, int e) { return PAdicInt(p, P, 1 + ipow(p, e)); }

namespace {

// log_p(u)/p^e inverted mod p^out.
u64 inverse_scaled_log(u64 p, int out, int e, const PAdicInt& u) {
  if (u.precision() < out + e) throw std::invalid_argument("Lu: generator precision too low");
  ModRing in(p, out + e);
  u64 ur = u.residue() % in.mod;
  if (ur % ipow(p, e) != 1 % ipow(p, e)) throw std::invalid_argument("Lu: u not in 1 + p^e Z_p");
  u64 lu = plog_raw(p, out + e, ur);
  if (lu == 0 || vp(p, lu) != e) throw std::invalid_argument("Lu: u is not a topological generator of 1 + p^e Z_p");
  ModRing o(p, out);
  return o.inv((lu / ipow(p, e)) % o.mod);
}

}  // namespace

PAdicInt Lu(const PAdicInt& x, const PAdicInt& u, int e) {
  if (x.p() != u.p() || x.precision() != u.precision())
    throw std::invalid_argument("Lu: mixed prime or precision");
  const int out = x.precision() - e;
  if (out < 1) throw PrecisionError("Lu: precision must exceed e");
  LuEvaluator ev(x.p(), out, e, u);
  if (!x.is_unit()) throw UnitRequiredError("Lu: argument divisible by p");
  return PAdicInt(x.p(), out, ev(x.residue()));
}

LuEvaluator::LuEvaluator(u64 p, int out_precision, int e, const PAdicInt& u)
    : p_(p), e_(e), in_(p, out_precision + e), out_(p, out_precision) {
  if (e < vq_of(p)) throw std::invalid_argument("Lu: e below v_p(q)");
  inv_log_u_ = inverse_scaled_log(p, out_precision, e, u.reduce(out_precision + e));
}

LuEvaluator::LuEvaluator(u64 p, int out_precision, int e)
    : LuEvaluator(p, out_precision, e, default_u(p, out_precision + e, e)) {}

bool LuEvaluator::in_support(u64 x) const {
  u64 a = angle_raw(in_, x % in_.mod);
  u64 pe = ipow(p_, e_);
  return a % pe == 1 % pe;
}

u64 LuEvaluator::operator()(u64 x) const {
  u64 a = angle_raw(in_, x % in_.mod);
  u64 pe = ipow(p_, e_);
  if (a % pe != 1 % pe) throw SupportError("Lu: <x> not in 1 + p^e Z_p");
  u64 l = plog_raw(p_, in_.M, a);
  return out_.mul((l / pe) % out_.mod, inv_log_u_);
}

}  // namespace padicl
