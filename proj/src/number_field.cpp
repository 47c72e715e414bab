#include "padicl/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "padicl/errors.hpp"

namespace padicl {

namespace {

Integer to_integer(i128 v) {
  bool neg = v < 0;
  u128 m = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  u64 parts[2] = {static_cast<u64>(m), static_cast<u64>(m >> 64)};
  Integer r;
  mpz_import(r.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, parts);
  if (neg) r = -r;
  return r;
}

i128 to_i128(const Integer& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 120) throw ResourceError("integer exceeds 120 bits");
  u64 parts[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(parts, &count, -1, sizeof(u64), 0, 0, v.get_mpz_t());
  u128 m = (static_cast<u128>(parts[1]) << 64) | parts[0];
  i128 r = static_cast<i128>(m);
  return v < 0 ? -r : r;
}

i64 to_i64(const Integer& v) {
  if (!v.fits_slong_p()) throw ResourceError("integer exceeds 64 bits");
  return v.get_si();
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// g = s*a + t*b
i128 ext_gcd(i128 a, i128 b, i128& s, i128& t) {
  i128 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    i128 q = a / b;
    i128 r = a - q * b;
    a = b;
    b = r;
    i128 ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    i128 nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

bool squarefree(i64 n) {
  for (i64 d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

// X + Y sqrt(D) for embedding i.
void parts(const Field& F, const FieldElem& x, int i, Rational& X, Rational& Y) {
  if (F.is_rational()) {
    X = x.a;
    Y = 0;
    return;
  }
  const int s = i == 1 ? -1 : 1;
  if (F.tr() == 1) {
    X = x.a + x.b / 2;
    Y = s * x.b / 2;
  } else {
    X = x.a;
    Y = s * x.b;
  }
}

int sign_surd(const Rational& X, const Rational& Y, i64 D) {
  int sx = sgn(X), sy = sgn(Y);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  Rational lhs = X * X, rhs = Y * Y * D;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sx : sy;
}

using Lattice = std::vector<std::pair<i128, i128>>;

Ideal hnf(const Field& F, const Lattice& v) {
  if (F.is_rational()) {
    i128 g = 0;
    for (auto& e : v) g = gcd128(g, e.first);
    if (g == 0) throw std::invalid_argument("zero ideal");
    Ideal I;
    I.a = static_cast<i64>(g);
    return I;
  }
  i128 c = 0, wx = 0;
  bool first = true;
  for (auto& e : v) {
    if (e.second == 0) continue;
    if (first) {
      c = e.second;
      wx = e.first;
      first = false;
      continue;
    }
    i128 s, t;
    i128 g = ext_gcd(c, e.second, s, t);
    wx = s * wx + t * e.first;
    c = g;
  }
  if (c < 0) {
    c = -c;
    wx = -wx;
  }
  if (c == 0) throw std::invalid_argument("degenerate lattice");
  i128 a = 0;
  for (auto& e : v) {
    i128 k = e.second / c;
    a = gcd128(a, e.first - k * wx);
  }
  if (a == 0) throw std::invalid_argument("degenerate lattice");
  Ideal I;
  I.a = static_cast<i64>(a);
  I.c = static_cast<i64>(c);
  I.b = static_cast<i64>(mod_floor(wx, a));
  return I;
}

std::pair<i128, i128> times_theta(const Field& F, i128 x, i128 y) { return {-F.nm() * y, x + F.tr() * y}; }

std::pair<i128, i128> mul_int(const Field& F, i128 x1, i128 y1, i128 x2, i128 y2) {
  return {x1 * x2 - F.nm() * y1 * y2, x1 * y2 + x2 * y1 + F.tr() * y1 * y2};
}

std::pair<i128, i128> ints(const FieldElem& e) {
  if (!e.is_integral()) throw std::invalid_argument("element is not integral");
  return {to_i128(e.a.get_num()), to_i128(e.b.get_num())};
}

}  // namespace

Field Field::rational() { return Field(); }

Field Field::quadratic(i64 D) {
  if (D <= 1 || !squarefree(D)) throw ParseError("D must be a square-free integer > 1");
  Field F;
  F.D_ = D;
  if (D % 4 == 1) {
    F.tr_ = 1;
    F.nm_ = (1 - D) / 4;
  } else {
    F.tr_ = 0;
    F.nm_ = -D;
  }
  return F;
}

i64 Field::discriminant() const {
  if (is_rational()) return 1;
  return D_ % 4 == 1 ? D_ : 4 * D_;
}

std::string Field::name() const { return is_rational() ? "Q" : "Q(sqrt(" + std::to_string(D_) + "))"; }

std::string FieldElem::to_string() const {
  std::ostringstream o;
  o << a.get_str() << "," << b.get_str();
  return o.str();
}

IntElem to_int(const FieldElem& e) {
  if (!e.is_integral()) throw std::invalid_argument("element is not integral");
  return {to_i64(e.a.get_num()), to_i64(e.b.get_num())};
}

FieldElem mul(const Field& F, const FieldElem& x, const FieldElem& y) {
  Rational bd = x.b * y.b;
  return FieldElem(x.a * y.a - F.nm() * bd, x.a * y.b + x.b * y.a + F.tr() * bd);
}

FieldElem conj(const Field& F, const FieldElem& x) {
  if (F.is_rational()) return x;
  return FieldElem(x.a + x.b * F.tr(), -x.b);
}

Rational norm(const Field& F, const FieldElem& x) {
  if (F.is_rational()) return x.a;
  return x.a * x.a + F.tr() * x.a * x.b + F.nm() * x.b * x.b;
}

i128 norm_int(const Field& F, i128 x, i128 y) {
  if (F.is_rational()) return x;
  return x * x + static_cast<i128>(F.tr()) * x * y + static_cast<i128>(F.nm()) * y * y;
}

FieldElem inverse(const Field& F, const FieldElem& x) {
  Rational n = norm(F, x);
  if (n == 0) throw std::invalid_argument("inverse of zero");
  return conj(F, x).scaled(1 / n);
}

FieldElem power(const Field& F, const FieldElem& x, u64 e) {
  FieldElem r = FieldElem::of(1), b = x;
  while (e) {
    if (e & 1) r = mul(F, r, b);
    b = mul(F, b, b);
    e >>= 1;
  }
  return r;
}

int sign_at(const Field& F, const FieldElem& x, int i) {
  Rational X, Y;
  parts(F, x, i, X, Y);
  return sign_surd(X, Y, F.D());
}

bool totally_positive(const Field& F, const FieldElem& x) {
  for (int i = 1; i <= F.degree(); ++i)
    if (sign_at(F, x, i) <= 0) return false;
  return true;
}

double embed(const Field& F, const FieldElem& x, int i) {
  Rational X, Y;
  parts(F, x, i, X, Y);
  return X.get_d() + Y.get_d() * std::sqrt(static_cast<double>(F.D()));
}

Integer floor_at(const Field& F, const FieldElem& x, int i) {
  Rational X, Y;
  parts(F, x, i, X, Y);
  if (Y == 0) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), X.get_num_mpz_t(), X.get_den_mpz_t());
    return r;
  }
  Integer n(std::floor(embed(F, x, i)));
  while (sign_surd(X - n, Y, F.D()) < 0) n -= 1;
  while (sign_surd(X - n - 1, Y, F.D()) >= 0) n += 1;
  return n;
}

Integer ceil_at(const Field& F, const FieldElem& x, int i) { return -floor_at(F, -x, i); }

Integer ceil_ratio_at(const Field& F, const FieldElem& x, const FieldElem& y, int i) {
  Rational n = norm(F, y);
  if (n == 0) throw std::invalid_argument("ratio by zero");
  return ceil_at(F, mul(F, x, conj(F, y)).scaled(1 / n), i);
}

bool Ideal::operator<(const Ideal& o) const {
  if (norm() != o.norm()) return norm() < o.norm();
  if (a != o.a) return a < o.a;
  if (c != o.c) return c < o.c;
  return b < o.b;
}

std::string Ideal::to_string() const {
  std::ostringstream o;
  o << "[" << a << "," << b << "," << c << "]";
  return o.str();
}

Ideal unit_ideal() { return Ideal{}; }

Ideal ideal_from_generators(const Field& F, const std::vector<FieldElem>& gens) {
  Lattice v;
  for (const auto& g : gens) {
    auto [x, y] = ints(g);
    v.push_back({x, y});
    if (!F.is_rational()) v.push_back(times_theta(F, x, y));
  }
  return hnf(F, v);
}

Ideal principal_ideal(const Field& F, const FieldElem& x) { return ideal_from_generators(F, {x}); }

Ideal integer_ideal(const Field& F, i64 n) { return principal_ideal(F, FieldElem::of(n)); }

Ideal ideal_mul(const Field& F, const Ideal& I, const Ideal& J) {
  if (F.is_rational()) return Ideal{I.a * J.a, 0, 1};
  Lattice v;
  const std::pair<i128, i128> bi[2] = {{I.a, 0}, {I.b, I.c}};
  const std::pair<i128, i128> bj[2] = {{J.a, 0}, {J.b, J.c}};
  for (auto& x : bi)
    for (auto& y : bj) v.push_back(mul_int(F, x.first, x.second, y.first, y.second));
  return hnf(F, v);
}

Ideal ideal_add(const Field& F, const Ideal& I, const Ideal& J) {
  if (F.is_rational()) return Ideal{static_cast<i64>(std::gcd(I.a, J.a)), 0, 1};
  return hnf(F, {{I.a, 0}, {I.b, I.c}, {J.a, 0}, {J.b, J.c}});
}

Ideal ideal_conj(const Field& F, const Ideal& I) {
  if (F.is_rational()) return I;
  return hnf(F, {{I.a, 0}, {I.b + static_cast<i128>(I.c) * F.tr(), -I.c}});
}

bool ideal_contains(const Ideal& I, i128 x, i128 y) {
  if (y % I.c != 0) return false;
  i128 k = y / I.c;
  return (x - k * I.b) % I.a == 0;
}

bool ideal_contains(const Field& F, const Ideal& I, const FieldElem& x) {
  if (!x.is_integral()) return false;
  auto [a, b] = ints(x);
  if (F.is_rational() && b != 0) return false;
  return ideal_contains(I, a, b);
}

bool ideals_coprime(const Field& F, const Ideal& I, const Ideal& J) { return ideal_add(F, I, J).norm() == 1; }

std::vector<std::pair<Ideal, int>> primes_above(const Field& F, u64 ell) {
  std::vector<std::pair<Ideal, int>> out;
  const i64 l = static_cast<i64>(ell);
  if (F.is_rational()) {
    out.push_back({Ideal{l, 0, 1}, 1});
    return out;
  }
  std::vector<i64> roots;
  for (i64 r = 0; r < l; ++r) {
    i128 v = static_cast<i128>(r) * r - static_cast<i128>(F.tr()) * r + F.nm();
    if (mod_floor(v, l) == 0) roots.push_back(r);
  }
  if (roots.empty()) {
    out.push_back({Ideal{l, 0, l}, 2});
    return out;
  }
  for (i64 r : roots) out.push_back({ideal_from_generators(F, {FieldElem::of(l), FieldElem::of(-r, 1)}), 1});
  return out;
}

std::vector<Ideal> ideals_of_norm(const Field& F, i64 n) {
  std::vector<Ideal> out;
  if (F.is_rational()) {
    out.push_back(Ideal{n, 0, 1});
    return out;
  }
  for (i64 c = 1; c * c <= n; ++c) {
    if (n % (c * c) != 0) continue;
    i64 a = n / c;
    for (i64 b = 0; b < a; ++b) {
      Ideal I{a, b, c};
      auto t0 = times_theta(F, a, 0);
      auto t1 = times_theta(F, b, c);
      if (ideal_contains(I, t0.first, t0.second) && ideal_contains(I, t1.first, t1.second)) out.push_back(I);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldElem fundamental_unit(const Field& F) {
  if (F.is_rational()) throw std::invalid_argument("fundamental_unit: quadratic field required");
  static std::map<i64, FieldElem> cache;
  auto hit = cache.find(F.D());
  if (hit != cache.end()) return hit->second;
  // continued fraction of theta^(2) = (P + sqrt D)/Q
  Integer P = F.tr() == 1 ? 1 : 0, Q = F.tr() == 1 ? 2 : 1;
  Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  const Integer D = static_cast<long>(F.D());
  for (int it = 0; it < 2000000; ++it) {
    Integer a = floor_at(F, FieldElem(Rational(P, Q) - (F.tr() == 1 ? Rational(1, 2) : Rational(0)),
                                      F.tr() == 1 ? Rational(2, Q) : Rational(1, Q)),
                         2);
    Integer pn = a * p1 + p2, qn = a * q1 + q2;
    p2 = p1;
    p1 = pn;
    q2 = q1;
    q1 = qn;
    FieldElem u(Rational(pn), Rational(-qn));
    Rational nu = norm(F, u);
    if (nu == 1 || nu == -1) {
      FieldElem eps = conj(F, u);
      if (sign_at(F, eps, 2) < 0) eps = -eps;
      cache[F.D()] = eps;
      return eps;
    }
    Integer Pn = a * Q - P;
    Integer Qn = (D - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
  }
  throw ResourceError("fundamental unit: continued fraction period too long");
}

FieldElem fundamental_totally_positive_unit(const Field& F) {
  FieldElem eps = fundamental_unit(F);
  if (norm(F, eps) == -1) eps = mul(F, eps, eps);
  return eps;
}

std::optional<FieldElem> principal_generator(const Field& F, const Ideal& I) {
  if (F.is_rational()) return FieldElem::of(I.a);
  const double eps = embed(F, fundamental_unit(F), 2);
  if (eps > 1e7) throw ResourceError("principality search: fundamental unit too large");
  const i64 n = I.norm();
  const double sq = std::sqrt(static_cast<double>(n));
  const double B1 = sq * (1 + 1e-9) + 1e-6, B2 = sq * eps * (1 + 1e-9) + 1e-6;
  const double w = F.tr() == 1 ? 0.5 : 1.0;
  const double rd = std::sqrt(static_cast<double>(F.D()));
  const double th1 = F.tr() / 2.0 - w * rd;
  const double ymax = (B1 + B2) / (2 * w * rd);
  const i64 vmax = static_cast<i64>(std::floor(ymax / I.c)) + 1;
  for (i64 v = -vmax; v <= vmax; ++v) {
    const double y = static_cast<double>(v) * I.c;
    const double xlo = -B1 - y * th1, xhi = B1 - y * th1;
    // x = u*a + v*b
    i64 ulo = static_cast<i64>(std::floor((xlo - static_cast<double>(v) * I.b) / I.a)) - 1;
    i64 uhi = static_cast<i64>(std::ceil((xhi - static_cast<double>(v) * I.b) / I.a)) + 1;
    for (i64 u = ulo; u <= uhi; ++u) {
      i128 x = static_cast<i128>(u) * I.a + static_cast<i128>(v) * I.b;
      i128 yy = static_cast<i128>(v) * I.c;
      i128 nn = norm_int(F, x, yy);
      if (nn == n || nn == -n) return FieldElem(Rational(to_integer(x)), Rational(to_integer(yy)));
    }
  }
  return std::nullopt;
}

std::string Modulus::to_string(const Field& F) const {
  if (F.is_rational()) return std::to_string(f.a) + "*inf";
  return f.to_string() + "*inf1*inf2";
}

Modulus make_modulus(const Field& F, const Ideal& f) {
  (void)F;
  if (f.a <= 0 || f.c <= 0) throw std::invalid_argument("modulus must be a nonzero integral ideal");
  return Modulus{f};
}

bool modulus_divisible_by_q(const Field& F, const Modulus& m, u64 p) {
  Ideal qO = integer_ideal(F, static_cast<i64>(q_of(p)));
  return ideal_contains(F, qO, m.f.basis0()) && (F.is_rational() || ideal_contains(F, qO, m.f.basis1()));
}

ResidueRing::ResidueRing(const Field& F, const Ideal& f) : F_(F), f_(f) {}

i64 ResidueRing::encode(i128 x, i128 y) const {
  if (F_.is_rational()) return static_cast<i64>(mod_floor(x, f_.a));
  i128 yr = mod_floor(y, f_.c);
  i128 k = (y - yr) / f_.c;
  i128 xr = mod_floor(x - k * f_.b, f_.a);
  return static_cast<i64>(yr * f_.a + xr);
}

i64 ResidueRing::encode(const FieldElem& x) const {
  auto [a, b] = ints(x);
  return encode(a, b);
}

IntElem ResidueRing::decode(i64 idx) const {
  if (F_.is_rational()) return {idx, 0};
  return {idx % f_.a, idx / f_.a};
}

i64 ResidueRing::mul(i64 i, i64 j) const {
  IntElem u = decode(i), v = decode(j);
  auto [x, y] = mul_int(F_, u.x, u.y, v.x, v.y);
  return encode(x, y);
}

bool ResidueRing::is_unit(i64 idx) const {
  IntElem u = decode(idx);
  if (u.x == 0 && u.y == 0) return f_.norm() == 1;
  Ideal g = ideal_from_generators(F_, {FieldElem::of(u.x, u.y)});
  return ideals_coprime(F_, g, f_);
}

u64 unit_index(const Field& F, const Modulus& m) {
  if (F.is_rational()) return 1;
  ResidueRing R(F, m.f);
  const i64 e = R.encode(fundamental_totally_positive_unit(F));
  i64 x = e;
  for (u64 i = 1; i <= static_cast<u64>(R.size()) + 1; ++i) {
    if (x == R.one()) return i;
    x = R.mul(x, e);
  }
  throw std::logic_error("unit_index: no finite order");
}

FieldElem unit_eps_m(const Field& F, const Modulus& m) {
  if (F.is_rational()) return FieldElem::of(1);
  return power(F, fundamental_totally_positive_unit(F), unit_index(F, m));
}

namespace {

using IMatrix = std::vector<std::vector<Integer>>;

// Smith normal form; returns diagonal and column transform Q with P*A*Q = diag.
void smith(IMatrix A, std::size_t k, std::vector<Integer>& diag, IMatrix& Q) {
  const std::size_t m = A.size();
  Q.assign(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i) Q[i][i] = 1;
  diag.assign(k, 0);
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : Q) std::swap(row[a], row[b]);
  };
  auto col_sub = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (auto& row : A) row[j] -= q * row[t];
    for (auto& row : Q) row[j] -= q * row[t];
  };
  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    for (;;) {
      std::size_t bi = m, bj = k;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (A[i][j] != 0 && (best == 0 || abs(A[i][j]) < best)) {
            best = abs(A[i][j]);
            bi = i;
            bj = j;
          }
      if (bi == m) return;
      std::swap(A[t], A[bi]);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        Integer q = A[i][t] / A[t][t];
        for (std::size_t j = t; j < k; ++j) A[i][j] -= q * A[t][j];
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (A[t][j] == 0) continue;
        Integer q = A[t][j] / A[t][t];
        col_sub(j, t, q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t jj = t; jj < k; ++jj) A[t][jj] += A[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag[t] = abs(A[t][t]);
  }
}

bool equivalent_to(const Field& F, const Ideal& I, const Ideal& R, FieldElem* gamma) {
  auto g = principal_generator(F, ideal_mul(F, I, ideal_conj(F, R)));
  if (!g) return false;
  if (gamma) *gamma = *g;
  return true;
}

}  // namespace

RayClassGroup::RayClassGroup(const Field& F, const Modulus& m, i64 residue_bound) : F_(F), m_(m), R_(F, m.f) {
  const i64 Nf = m.f.norm();
  if (Nf > residue_bound) throw ResourceError("ray class group: N(f) = " + std::to_string(Nf) + " exceeds the bound");
  const int d = F.degree();

  // (Z_E/f)^*: greedy generators, triangular relations, log table
  std::vector<i64> units;
  for (i64 i = 0; i < Nf; ++i)
    if (R_.is_unit(i)) units.push_back(i);
  std::vector<std::vector<i64>> table(Nf);
  std::vector<bool> known(Nf, false);
  std::vector<i64> members{R_.one()};
  table[R_.one()] = {};
  known[R_.one()] = true;
  std::vector<std::vector<i64>> unit_rels;
  for (i64 g : units) {
    if (known[g]) continue;
    const std::size_t gi = unit_gens_.size();
    unit_gens_.push_back(g);
    i64 h = g;
    i64 k = 1;
    while (!known[h]) {
      h = R_.mul(h, g);
      ++k;
    }
    std::vector<i64> rel = table[h];
    rel.resize(gi + 1, 0);
    for (auto& v : rel) v = -v;
    rel[gi] += k;
    unit_rels.push_back(rel);
    std::vector<i64> old = members;
    i64 gp = 1 % Nf == 0 ? 0 : R_.one();
    for (i64 j = 1; j < k; ++j) {
      gp = R_.mul(gp, g);
      for (i64 s : old) {
        i64 e = R_.mul(gp, s);
        std::vector<i64> ex = table[s];
        ex.resize(gi + 1, 0);
        ex[gi] += j;
        table[e] = ex;
        known[e] = true;
        members.push_back(e);
      }
    }
  }
  const std::size_t t = unit_gens_.size();
  for (i64 u : units) {
    auto ex = table[u];
    ex.resize(t, 0);
    unit_log_[u] = ex;
  }

  // class group of E
  cl_reps_.push_back(unit_ideal());
  if (!F.is_rational()) {
    const double mink = std::sqrt(static_cast<double>(F.discriminant())) / 2;
    std::vector<Ideal> gens;
    for (u64 ell = 2; static_cast<double>(ell) <= mink; ++ell)
      if (is_prime(ell))
        for (auto& pr : primes_above(F, ell))
          if (static_cast<double>(pr.first.norm()) <= mink) gens.push_back(pr.first);
    std::vector<Ideal> reps{unit_ideal()};
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (const auto& P : gens) {
        Ideal J = ideal_mul(F, reps[i], P);
        bool found = false;
        for (const auto& R : reps)
          if (equivalent_to(F, J, R, nullptr)) {
            found = true;
            break;
          }
        if (!found) reps.push_back(J);
      }
    // equivalent representatives with norm prime to N(f)
    std::vector<std::optional<Ideal>> chosen(reps.size());
    chosen[0] = unit_ideal();
    std::size_t filled = 1;
    for (i64 n = 2; filled < reps.size(); ++n) {
      if (n > 100000) throw ResourceError("class group: no small representatives");
      if (std::gcd(n, Nf) != 1) continue;
      for (const auto& I : ideals_of_norm(F, n))
        for (std::size_t j = 1; j < reps.size(); ++j)
          if (!chosen[j] && equivalent_to(F, I, reps[j], nullptr)) {
            chosen[j] = I;
            ++filled;
            break;
          }
    }
    cl_reps_.clear();
    for (auto& c : chosen) cl_reps_.push_back(*c);
  }
  const std::size_t h = cl_reps_.size();
  ngens_ = t + static_cast<std::size_t>(d) + (h - 1);

  std::vector<std::vector<Integer>> rels;
  for (auto& r : unit_rels) {
    std::vector<Integer> row(ngens_, 0);
    for (std::size_t i = 0; i < r.size(); ++i) row[i] = static_cast<long>(r[i]);
    rels.push_back(row);
  }
  for (int i = 0; i < d; ++i) {
    std::vector<Integer> row(ngens_, 0);
    row[t + i] = 2;
    rels.push_back(row);
  }
  rels.push_back(phi_log(FieldElem::of(-1), 1));
  if (!F.is_rational()) rels.push_back(phi_log(fundamental_unit(F), 1));
  for (std::size_t i = 1; i < h; ++i)
    for (std::size_t j = i; j < h; ++j) {
      Ideal J = ideal_mul(F, cl_reps_[i], cl_reps_[j]);
      std::size_t k = h;
      FieldElem gamma;
      for (std::size_t r = 0; r < h; ++r)
        if (equivalent_to(F, J, cl_reps_[r], &gamma)) {
          k = r;
          break;
        }
      if (k == h) throw std::logic_error("class group table incomplete");
      std::vector<Integer> row = phi_log(gamma, Integer(static_cast<long>(cl_reps_[k].norm())));
      for (auto& v : row) v = -v;
      row[t + d + i - 1] += 1;
      row[t + d + j - 1] += 1;
      if (k > 0) row[t + d + k - 1] -= 1;
      rels.push_back(row);
    }

  std::vector<Integer> dg;
  smith(rels, ngens_, dg, Q_);
  for (std::size_t i = 0; i < ngens_; ++i) {
    if (dg[i] == 0) throw std::logic_error("ray class group presentation is not finite");
    diag_.push_back(dg[i].get_si());
    if (dg[i] > 1) {
      keep_.push_back(i);
      orders_.push_back(dg[i].get_si());
    }
  }
}

i64 RayClassGroup::order() const {
  i64 o = 1;
  for (i64 d : orders_) o *= d;
  return o;
}

std::vector<Integer> RayClassGroup::phi_log(const FieldElem& gamma, const Integer& denom) const {
  const std::size_t t = unit_gens_.size();
  std::vector<Integer> row(ngens_, 0);
  i64 idx = R_.encode(gamma);
  const i64 Nf = m_.f.norm();
  if (denom != 1) {
    Integer inv;
    Integer md = static_cast<long>(Nf);
    if (Nf > 1 && mpz_invert(inv.get_mpz_t(), denom.get_mpz_t(), md.get_mpz_t()) == 0)
      throw std::logic_error("denominator not prime to N(f)");
    if (Nf == 1) inv = 0;
    idx = R_.mul(idx, R_.encode(static_cast<i128>(inv.get_si()), 0));
  }
  auto it = unit_log_.find(idx);
  if (it == unit_log_.end()) throw HypothesisError("element is not a unit modulo f");
  for (std::size_t i = 0; i < t; ++i) row[i] = static_cast<long>(it->second[i]);
  for (int i = 1; i <= F_.degree(); ++i)
    if (sign_at(F_, gamma, i) * sgn(denom) < 0) row[t + i - 1] = 1;
  return row;
}

std::vector<Integer> RayClassGroup::raw_log(const Ideal& I) const {
  if (!ideals_coprime(F_, I, m_.f)) throw HypothesisError("ideal not coprime to the modulus");
  if (F_.is_rational()) return phi_log(FieldElem::of(I.a), 1);
  for (std::size_t j = 0; j < cl_reps_.size(); ++j) {
    FieldElem gamma;
    if (equivalent_to(F_, I, cl_reps_[j], &gamma)) {
      std::vector<Integer> row = phi_log(gamma, Integer(static_cast<long>(cl_reps_[j].norm())));
      if (j > 0) row[unit_gens_.size() + F_.degree() + j - 1] += 1;
      return row;
    }
  }
  throw std::logic_error("ideal class not found");
}

std::vector<i64> RayClassGroup::dlog(const Ideal& I) const {
  std::vector<Integer> x = raw_log(I);
  std::vector<i64> out;
  for (std::size_t j : keep_) {
    Integer s = 0;
    for (std::size_t i = 0; i < ngens_; ++i) s += x[i] * Q_[i][j];
    Integer r;
    Integer md = static_cast<long>(diag_[j]);
    mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), md.get_mpz_t());
    out.push_back(r.get_si());
  }
  return out;
}

i64 RayClassGroup::class_index(const std::vector<i64>& coords) const {
  i64 idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + coords[i];
  return idx;
}

std::vector<Ideal> RayClassGroup::representatives(u64 avoid) const {
  const i64 h = order();
  std::vector<std::optional<Ideal>> reps(h);
  i64 filled = 0;
  for (i64 n = 1; filled < h; ++n) {
    if (n > 1000000) throw ResourceError("ray class representatives: norm search exhausted");
    if (avoid && n % static_cast<i64>(avoid) == 0) continue;
    for (const auto& I : ideals_of_norm(F_, n)) {
      if (!ideals_coprime(F_, I, m_.f)) continue;
      i64 k = class_index(dlog(I));
      if (!reps[k]) {
        reps[k] = I;
        ++filled;
      }
    }
  }
  std::vector<Ideal> out;
  for (auto& r : reps) out.push_back(*r);
  return out;
}

bool Character::is_trivial() const {
  for (i64 e : exps)
    if (((e % static_cast<i64>(n)) + static_cast<i64>(n)) % static_cast<i64>(n) != 0) return false;
  return true;
}

std::string Character::to_string() const {
  std::ostringstream o;
  o << "order " << n << " exps [";
  for (std::size_t i = 0; i < exps.size(); ++i) o << (i ? "," : "") << exps[i];
  o << "]";
  return o.str();
}

void validate_character(const RayClassGroup& G, const Character& chi) {
  if (chi.n == 0) throw ParseError("character order must be positive");
  if (chi.exps.size() != G.cyclic_orders().size())
    throw ParseError("character needs " + std::to_string(G.cyclic_orders().size()) + " exponents");
  for (std::size_t i = 0; i < chi.exps.size(); ++i)
    if ((static_cast<i128>(chi.exps[i]) * G.cyclic_orders()[i]) % static_cast<i128>(chi.n) != 0)
      throw ParseError("character exponent " + std::to_string(chi.exps[i]) + " is not compatible with the relations");
}

i64 character_exponent(const RayClassGroup& G, const Character& chi, const Ideal& I) {
  std::vector<i64> x = G.dlog(I);
  const i64 n = static_cast<i64>(chi.n);
  i128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<i128>(chi.exps[i]) * x[i];
  return static_cast<i64>(mod_floor(s, n));
}

std::vector<Character> characters_of_order_dividing(const RayClassGroup& G, u64 n) {
  std::vector<Character> out{Character{n, std::vector<i64>(G.cyclic_orders().size(), 0)}};
  for (std::size_t i = 0; i < G.cyclic_orders().size(); ++i) {
    const i64 g = std::gcd(static_cast<i64>(n), G.cyclic_orders()[i]);
    const i64 step = static_cast<i64>(n) / g;
    std::vector<Character> next;
    for (const auto& c : out)
      for (i64 j = 0; j < g; ++j) {
        Character d = c;
        d.exps[i] = j * step;
        next.push_back(d);
      }
    out = next;
  }
  return out;
}

namespace {

CycElem omega_scalar(const CycRingPtr& ring, const Ideal& I, int power) {
  const u64 p = ring->p();
  const int M = ring->precision();
  PAdicInt w = teichmuller(PAdicInt(p, M, static_cast<u64>(I.norm())));
  PAdicInt v = power >= 0 ? w.pow(static_cast<u64>(power)) : w.inverse().pow(static_cast<u64>(-power));
  return CycElem::scalar(ring, v.residue());
}

}  // namespace

CycElem TwistedCharacter::value(const RayClassGroup& G, const CycRingPtr& ring, const Ideal& I) const {
  if (ring->index() != chi.n) throw std::invalid_argument("character ring order mismatch");
  CycElem v = CycElem::x_pow(ring, character_exponent(G, chi, I));
  if (m != 1) v = v * omega_scalar(ring, I, 1 - m);
  return v;
}

CycElem TwistedCharacter::value_inverse(const RayClassGroup& G, const CycRingPtr& ring, const Ideal& I) const {
  if (ring->index() != chi.n) throw std::invalid_argument("character ring order mismatch");
  CycElem v = CycElem::x_pow(ring, -character_exponent(G, chi, I));
  if (m != 1) v = v * omega_scalar(ring, I, m - 1);
  return v;
}

bool TwistedCharacter::is_trivial(const RayClassGroup& G, const CycRingPtr& ring) const {
  if (m == 1) return chi.is_trivial();
  for (const auto& I : G.representatives())
    if (!value(G, ring, I).is_one()) return false;
  return true;
}

TwistedCharacter kappa_twist(const Character& chi, int m) { return TwistedCharacter{chi, m}; }

std::pair<int, int> compute_e(const Field& F, u64 p) {
  const int m0 = (p == 2 && F.D() == 2) ? 1 : 0;
  return {m0 + vq_of(p), m0};
}

i64 residue_mod_aux(const Field& F, const AuxPrime& aux, i128 x, i128 y) {
  const i128 c = static_cast<i128>(aux.c);
  if (F.is_rational()) return static_cast<i64>(mod_floor(x, c));
  return static_cast<i64>(mod_floor(mod_floor(x, c) + mod_floor(y, c) * aux.t, c));
}

std::vector<AuxPrime> degree_one_primes(const Field& F, u64 c) {
  std::vector<AuxPrime> out;
  if (F.is_rational()) {
    out.push_back(AuxPrime{c, Ideal{static_cast<i64>(c), 0, 1}, 0});
    return out;
  }
  const i64 l = static_cast<i64>(c);
  for (i64 r = 0; r < l; ++r) {
    i128 v = static_cast<i128>(r) * r - static_cast<i128>(F.tr()) * r + F.nm();
    if (mod_floor(v, l) == 0)
      out.push_back(AuxPrime{c, ideal_from_generators(F, {FieldElem::of(l), FieldElem::of(-r, 1)}), r});
  }
  if (out.size() == 1) out.clear();  // ramified
  return out;
}

std::optional<AuxPrime> aux_prime_candidate(const Field& F, const Modulus& m, u64 c) {
  if (!is_prime(c) || m.f.norm() % static_cast<i64>(c) == 0 || F.discriminant() % static_cast<i64>(c) == 0)
    return std::nullopt;
  auto v = degree_one_primes(F, c);
  if (v.empty()) return std::nullopt;
  return v.front();
}

bool aux_prime_admissible(const Field& F, const RayClassGroup& G, const TwistedCharacter& chi, u64 p, int M,
                          const AuxPrime& aux) {
  const u64 c = aux.c;
  if (!is_prime(c) || c == p) return false;
  if (G.modulus().f.norm() % static_cast<i64>(c) == 0) return false;
  if (F.discriminant() % static_cast<i64>(c) == 0) return false;
  if (aux.ideal.norm() != static_cast<i64>(c)) return false;
  CycRingPtr ring = CycRing::character(p, M, chi.chi.n);
  if (chi.is_trivial(G, ring)) {
    const int e = compute_e(F, p).first;
    PAdicInt a = angle(PAdicInt(p, e + 1, c));
    return a.residue() != 1;
  }
  return !chi.value(G, ring, aux.ideal).is_one();
}

AuxPrime choose_aux_prime(const Field& F, const RayClassGroup& G, const TwistedCharacter& chi, u64 p, int M,
                          const std::vector<u64>& exclude, u64 ceiling) {
  for (u64 c = 2; c <= ceiling; ++c) {
    if (!is_prime(c) || c == p) continue;
    if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
    if (G.modulus().f.norm() % static_cast<i64>(c) == 0 || F.discriminant() % static_cast<i64>(c) == 0) continue;
    for (const auto& aux : degree_one_primes(F, c))
      if (aux_prime_admissible(F, G, chi, p, M, aux)) return aux;
  }
  throw NoAdmissiblePrimeError("no admissible auxiliary prime below " + std::to_string(ceiling));
}

}  // namespace padicl
