#include "padicl/cyclotomic.hpp"

#include <map>
#include <sstream>

#include "padicl/errors.hpp"

namespace padicl {

namespace {

using Poly = std::vector<i64>;

Poly poly_divexact(Poly a, const Poly& b) {
  // b monic
  int db = static_cast<int>(b.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  Poly q(da - db + 1, 0);
  for (int k = da; k >= db; --k) {
    i64 t = a[k];
    q[k - db] = t;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= t * b[j];
  }
  for (int k = 0; k < db; ++k)
    if (a[k] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

// Polynomials over F_p, low degree first, trimmed.
using FpPoly = std::vector<u64>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod_p(u64 a, u64 p) { return ModRing(p, 1).inv(a); }

FpPoly fp_sub_mul(const FpPoly& a, const FpPoly& q, const FpPoly& b, u64 p) {
  // a - q*b
  FpPoly r(std::max(a.size(), q.size() + b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + p - (q[i] * b[j]) % p) % p;
  trim(r);
  return r;
}

void fp_divmod(FpPoly a, const FpPoly& b, u64 p, FpPoly& q, FpPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u64 lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    u64 t = (a.back() * lead_inv) % p;
    q[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - (t * b[j]) % p) % p;
    trim(a);
  }
  r = a;
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(u64 n) {
  static std::map<u64, Poly> cache;
  if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n = 0");
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (u64 d = 1; d < n; ++d)
    if (n % d == 0) num = poly_divexact(num, cyclotomic_polynomial(d));
  cache[n] = num;
  return num;
}

CycRing::CycRing(RingKind kind, u64 p, int M, u64 index, std::vector<i64> phi)
    : kind_(kind), index_(index), deg_(static_cast<int>(phi.size()) - 1), base_(p, M), phi_int_(std::move(phi)) {
  phi_.resize(phi_int_.size());
  for (std::size_t i = 0; i < phi_int_.size(); ++i) phi_[i] = base_.from_signed(phi_int_[i]);
}

CycRingPtr CycRing::aux(u64 p, int M, u64 c) {
  if (!is_prime(c)) throw std::invalid_argument("aux ring: c must be prime");
  if (c == p) throw std::invalid_argument("aux ring: c must differ from p");
  if (!is_prime(p)) throw std::invalid_argument("aux ring: p must be prime");
  std::vector<i64> phi(c, 1);
  return CycRingPtr(new CycRing(RingKind::AuxPrime, p, M, c, std::move(phi)));
}

CycRingPtr CycRing::character(u64 p, int M, u64 n) {
  if (!is_prime(p)) throw std::invalid_argument("character ring: p must be prime");
  if (n % p == 0) throw UnsupportedCharacterError("character order divisible by p is not supported");
  return CycRingPtr(new CycRing(RingKind::Character, p, M, n, cyclotomic_polynomial(n)));
}

bool CycRing::same_as(const CycRing& o) const {
  return this == &o || (kind_ == o.kind_ && index_ == o.index_ && base_.p == o.base_.p && base_.M == o.base_.M);
}

void CycRing::reduce_raw(u64* prod) const {
  const int d = deg_;
  for (int k = 2 * d - 2; k >= d; --k) {
    u64 t = prod[k];
    if (t == 0) continue;
    prod[k] = 0;
    for (int j = 0; j < d; ++j)
      if (phi_[j]) prod[k - d + j] = base_.sub(prod[k - d + j], base_.mul(t, phi_[j]));
  }
}

void CycRing::mul_raw(const u64* a, const u64* b, u64* out) const {
  const int d = deg_;
  if (d == 1) {
    out[0] = base_.mul(a[0], b[0]);
    return;
  }
  u64 buf[128];
  std::vector<u64> heap;
  u64* prod = buf;
  if (2 * d - 1 > 128) {
    heap.assign(2 * d - 1, 0);
    prod = heap.data();
  } else {
    for (int i = 0; i < 2 * d - 1; ++i) buf[i] = 0;
  }
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
  }
  reduce_raw(prod);
  for (int i = 0; i < d; ++i) out[i] = prod[i];
}

CycElem::CycElem(CycRingPtr ring, std::vector<u64> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  const int d = ring_->degree();
  if (static_cast<int>(c_.size()) > d) {
    std::vector<u64> prod(std::max<std::size_t>(c_.size(), 2 * d - 1), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) prod[i] = c_[i] % ring_->base().mod;
    // fold any length down by repeated reduction of the top block
    for (std::size_t top = prod.size(); top > static_cast<std::size_t>(d);) {
      std::size_t k = top - 1;
      u64 t = prod[k];
      prod[k] = 0;
      if (t) {
        const auto& phi = ring_->modulus_poly();
        for (int j = 0; j < d; ++j)
          prod[k - d + j] = ring_->base().sub(prod[k - d + j], ring_->base().mul(t, ring_->base().from_signed(phi[j])));
      }
      --top;
    }
    prod.resize(d);
    c_ = std::move(prod);
  } else {
    c_.resize(d, 0);
    for (auto& v : c_) v %= ring_->base().mod;
  }
}

CycElem CycElem::zero(const CycRingPtr& ring) { return CycElem(ring, std::vector<u64>(ring->degree(), 0)); }

CycElem CycElem::one(const CycRingPtr& ring) { return scalar(ring, 1); }

CycElem CycElem::scalar(const CycRingPtr& ring, u64 residue) {
  std::vector<u64> c(ring->degree(), 0);
  c[0] = residue % ring->base().mod;
  return CycElem(ring, std::move(c));
}

CycElem CycElem::x_pow(const CycRingPtr& ring, i64 a) {
  // x has multiplicative order index() in the ring
  i64 n = static_cast<i64>(ring->index());
  i64 r = ((a % n) + n) % n;
  std::vector<u64> c(static_cast<std::size_t>(r) + 1, 0);
  c[r] = 1 % ring->base().mod;
  return CycElem(ring, std::move(c));
}

bool CycElem::is_zero() const {
  for (u64 v : c_)
    if (v) return false;
  return true;
}

bool CycElem::is_one() const { return *this == one(ring_); }

int CycElem::valuation() const {
  int best = ring_->precision();
  for (u64 v : c_)
    if (v) best = std::min(best, vp(ring_->p(), v));
  return best;
}

void CycElem::check(const CycElem& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_)) throw std::invalid_argument("CycElem: ring mismatch");
}

CycElem CycElem::operator+(const CycElem& o) const {
  CycElem r = *this;
  r += o;
  return r;
}

CycElem CycElem::operator-(const CycElem& o) const {
  CycElem r = *this;
  r -= o;
  return r;
}

CycElem& CycElem::operator+=(const CycElem& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ring_->base().add(c_[i], o.c_[i]);
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = ring_->base().sub(c_[i], o.c_[i]);
  return *this;
}

CycElem CycElem::operator*(const CycElem& o) const {
  check(o);
  CycElem r = *this;
  ring_->mul_raw(c_.data(), o.c_.data(), r.c_.data());
  return r;
}

CycElem CycElem::operator-() const {
  CycElem r = *this;
  for (auto& v : r.c_) v = ring_->base().neg(v);
  return r;
}

bool CycElem::operator==(const CycElem& o) const {
  return ring_ && o.ring_ && ring_->same_as(*o.ring_) && c_ == o.c_;
}

CycElem CycElem::scalar_mul(u64 s) const {
  CycElem r = *this;
  s %= ring_->base().mod;
  for (auto& v : r.c_) v = ring_->base().mul(v, s);
  return r;
}

CycElem CycElem::pow(u64 e) const {
  CycElem r = one(ring_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

CycElem CycElem::substitute_power(i64 k) const {
  CycElem r = zero(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) r += x_pow(ring_, k * static_cast<i64>(i)).scalar_mul(c_[i]);
  return r;
}

CycElem CycElem::invert() const {
  const u64 p = ring_->p();
  const int d = ring_->degree();
  // extended gcd over F_p
  FpPoly a(d), b(ring_->modulus_poly().size());
  for (int i = 0; i < d; ++i) a[i] = c_[i] % p;
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = ModRing(p, 1).from_signed(ring_->modulus_poly()[i]);
  trim(a);
  trim(b);
  if (a.empty()) throw SingularElementError("element is not invertible mod p");
  FpPoly r0 = b, r1 = a, s0, s1 = {1};
  while (!r1.empty()) {
    FpPoly q, r;
    fp_divmod(r0, r1, p, q, r);
    FpPoly s2 = fp_sub_mul(s0, q, s1, p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r0.size() != 1) throw SingularElementError("element is not invertible mod p");
  u64 g = inv_mod_p(r0[0], p);
  std::vector<u64> y0(d, 0);
  for (std::size_t i = 0; i < s0.size() && i < static_cast<std::size_t>(d); ++i) y0[i] = (s0[i] * g) % p;
  // Newton: y <- y (2 - z y)
  CycElem y(ring_, y0);
  const CycElem two = scalar(ring_, 2);
  for (int it = 0; it < 80; ++it) {
    CycElem zy = (*this) * y;
    if (zy.is_one()) return y;
    y = y * (two - zy);
  }
  throw std::logic_error("CycElem::invert: Hensel lifting did not converge");
}

CycElem CycElem::reduce_to(const CycRingPtr& target) const {
  if (target->kind() != ring_->kind() || target->index() != ring_->index() || target->p() != ring_->p() ||
      target->precision() > ring_->precision())
    throw std::invalid_argument("CycElem::reduce_to: incompatible target");
  std::vector<u64> c(c_);
  for (auto& v : c) v %= target->base().mod;
  return CycElem(target, std::move(c));
}

std::string CycElem::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) out << (i ? "," : "") << c_[i];
  out << ']';
  return out.str();
}

CycElem eta_pow(const CycRingPtr& ring, i64 a) {
  if (ring->kind() != RingKind::AuxPrime) throw std::invalid_argument("eta_pow: aux-prime ring required");
  return CycElem::x_pow(ring, a);
}

PAdicInt trace(const CycElem& z) {
  const auto& R = *z.ring();
  if (R.kind() != RingKind::AuxPrime) throw std::invalid_argument("trace: aux-prime ring required");
  const ModRing& B = R.base();
  u64 t = B.mul(z[0], (R.index() - 1) % B.mod);
  for (int i = 1; i < R.degree(); ++i) t = B.sub(t, z[i]);
  return PAdicInt(B.p, B.M, t);
}

CycElem invert(const CycElem& z) { return z.invert(); }

}  // namespace padicl
