#include "padicl/shintani.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "padicl/errors.hpp"

namespace padicl {

namespace {

struct Int2 {
  i128 x = 0;
  i128 y = 0;
};

i128 to_i128(const Integer& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 100) throw ResourceError("element coordinates exceed 100 bits");
  u64 parts[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(parts, &count, -1, sizeof(u64), 0, 0, v.get_mpz_t());
  i128 r = static_cast<i128>((static_cast<u128>(parts[1]) << 64) | parts[0]);
  return v < 0 ? -r : r;
}

Int2 int2(const FieldElem& e) {
  if (!e.is_integral()) throw std::invalid_argument("expected an integral element");
  return {to_i128(e.a.get_num()), to_i128(e.b.get_num())};
}

FieldElem elem(i128 x, i128 y) {
  auto big = [](i128 v) {
    bool neg = v < 0;
    u128 m = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    u64 parts[2] = {static_cast<u64>(m), static_cast<u64>(m >> 64)};
    Integer r;
    mpz_import(r.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, parts);
    return neg ? Integer(-r) : r;
  };
  return FieldElem(Rational(big(x)), Rational(big(y)));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("cone walk invariant violated: ") + what);
}

bool is_one_mod(const Field& F, const Ideal& f, const FieldElem& alpha) {
  return ideal_contains(F, f, alpha - FieldElem::of(1));
}

FieldElem R_step(const Field& F, const FieldElem& g0, const FieldElem& g1) {
  Integer b = ceil_ratio_at(F, g0, g1, 1);
  return -g0 + g1.scaled(Rational(b));
}

// gamma_{n+1}^(2)/gamma_{n+1}^(1) > gamma_n^(2)/gamma_n^(1)
bool ratio_increases(const Field& F, const FieldElem& a, const FieldElem& b) {
  FieldElem x = mul(F, b, conj(F, a));
  return x.b > 0;
}

// HNF coordinates of an element of a in the basis (a.a, a.b + a.c theta).
Int2 coords_in(const Ideal& a, const Int2& v) {
  if (v.y % a.c != 0) throw std::logic_error("element not in ideal");
  i128 j = v.y / a.c;
  i128 r = v.x - j * a.b;
  if (r % a.a != 0) throw std::logic_error("element not in ideal");
  return {r / a.a, j};
}

i128 gcd_ext(i128 a, i128 b, i128& s, i128& t) {
  i128 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    i128 q = a / b, r = a - q * b;
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

i128 fdiv(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct FastCone {
  Int2 base;
  std::vector<Int2> gens;
  i128 det = 0;
};

FastCone fast(const Field& F, const Cone& C) {
  FastCone fc;
  fc.base = int2(C.base);
  for (const auto& g : C.gens) fc.gens.push_back(int2(g));
  if (!F.is_rational() && fc.gens.size() == 2)
    fc.det = fc.gens[0].x * fc.gens[1].y - fc.gens[0].y * fc.gens[1].x;
  return fc;
}

bool fast_contains(const FastCone& C, const Int2& a) {
  Int2 r{a.x - C.base.x, a.y - C.base.y};
  if (C.gens.empty()) return r.x == 0 && r.y == 0;
  if (C.gens.size() == 1) {
    const Int2& l = C.gens[0];
    // r = n l with n >= 0
    if (l.x != 0) {
      if (r.x % l.x != 0) return false;
      i128 n = r.x / l.x;
      return n >= 0 && r.y == n * l.y;
    }
    if (r.x != 0 || r.y % l.y != 0) return false;
    return r.y / l.y >= 0;
  }
  const Int2 &l1 = C.gens[0], &l2 = C.gens[1];
  i128 n1 = r.x * l2.y - r.y * l2.x;
  i128 n2 = l1.x * r.y - l1.y * r.x;
  if (n1 % C.det != 0 || n2 % C.det != 0) return false;
  return n1 / C.det >= 0 && n2 / C.det >= 0;
}

}  // namespace

ConeDecomposition decompose_rational(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux) {
  if (!F.is_rational()) throw std::invalid_argument("decompose_rational: field must be Q");
  const i64 f = m.f.a;
  if (std::gcd(a.a, f) != 1) throw HypothesisError("ideal not coprime to the modulus");
  if (aux.c && a.a % static_cast<i64>(aux.c) == 0) throw HypothesisError("ideal not coprime to the auxiliary prime");
  i64 inv = 0;
  if (f > 1) {
    Integer r, A = static_cast<long>(a.a), Fm = static_cast<long>(f);
    mpz_invert(r.get_mpz_t(), A.get_mpz_t(), Fm.get_mpz_t());
    inv = r.get_si();
  } else {
    inv = 1;
  }
  ConeDecomposition dec{a, m, aux, {}, FieldElem::of(a.a * f), 1, 0};
  dec.cones.push_back(Cone{FieldElem::of(a.a * inv), {FieldElem::of(a.a * f)}});
  return dec;
}

std::vector<FieldElem> pc_points(const Field& F, const FieldElem& b0, const FieldElem& b1, const Ideal& a,
                                 const Modulus& m) {
  Int2 v0 = coords_in(a, int2(b0)), v1 = coords_in(a, int2(b1));
  i128 det = v0.x * v1.y - v0.y * v1.x;
  if (det == 0) throw std::invalid_argument("pc_points: dependent basis");
  // sublattice HNF (A,0),(B,C) in a-coordinates
  i128 s, t;
  i128 C = gcd_ext(v0.y, v1.y, s, t);
  i128 A = (det < 0 ? -det : det) / C;
  const Int2 w0 = int2(a.basis0()), w1 = int2(a.basis1());
  const Int2 B0 = int2(b0), B1 = int2(b1);
  const i128 D = B0.x * B1.y - B0.y * B1.x;
  std::vector<FieldElem> out;
  for (i128 j = 0; j < C; ++j)
    for (i128 i = 0; i < A; ++i) {
      Int2 al{i * w0.x + j * w1.x, i * w0.y + j * w1.y};
      if (!ideal_contains(m.f, al.x - 1, al.y)) continue;
      // alpha = (sn/D) b0 + (tn/D) b1
      i128 sn = al.x * B1.y - al.y * B1.x;
      i128 tn = B0.x * al.y - B0.y * al.x;
      i128 sd = D, td = D;
      if (sd < 0) {
        sn = -sn;
        sd = -sd;
        tn = -tn;
        td = -td;
      }
      // s - ceil(s) + 1 in (0,1], t - floor(t) in [0,1)
      i128 sc = -fdiv(-sn, sd);
      i128 tf = fdiv(tn, td);
      i128 ks = 1 - sc, kt = -tf;
      Int2 r{al.x + ks * B0.x + kt * B1.x, al.y + ks * B0.y + kt * B1.y};
      out.push_back(elem(r.x, r.y));
    }
  const i64 expect = static_cast<i64>(A * C) / m.f.norm();
  if (F.degree() == 2 && static_cast<i64>(out.size()) != expect)
    throw std::logic_error("pc_points: unexpected number of points");
  return out;
}

ConeDecomposition decompose_quadratic(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux) {
  if (F.is_rational()) throw std::invalid_argument("decompose_quadratic: quadratic field required");
  if (!ideals_coprime(F, a, m.f)) throw HypothesisError("ideal not coprime to the modulus");
  if (!ideals_coprime(F, a, aux.ideal)) throw HypothesisError("ideal not coprime to the auxiliary prime");
  const Ideal af = ideal_mul(F, a, m.f);
  auto in_c = [&](const FieldElem& x) { return ideal_contains(F, aux.ideal, x); };
  auto check_pair = [&](const FieldElem& x, const FieldElem& y) {
    Int2 X = int2(x), Y = int2(y);
    i128 det = X.x * Y.y - X.y * Y.x;
    require((det < 0 ? -det : det) == static_cast<i128>(af.norm()), "consecutive points span af");
    require(ideal_contains(F, af, x) && ideal_contains(F, af, y), "points lie in af");
    require(sign_at(F, x - y, 1) > 0, "first embedding decreases");
    require(ratio_increases(F, x, y), "embedding ratio increases");
  };

  FieldElem g = af.basis0(), h = af.basis1();
  if (h.b < 0) h = -h;
  h = h + g.scaled(Rational(ceil_at(F, (-h).scaled(Rational(1, af.a)), 1)));
  FieldElem g0 = g, g1 = h;
  check_pair(g0, g1);
  auto advance = [&](FieldElem& x, FieldElem& y) {
    FieldElem z = R_step(F, x, y);
    check_pair(y, z);
    x = y;
    y = z;
  };
  std::size_t guard = 0;
  const std::size_t cap = 5000000;
  while (sign_at(F, g1 - g0, 2) < 0) {
    advance(g0, g1);
    if (++guard > cap) throw ResourceError("cone walk: step 3 did not terminate");
  }
  if (in_c(g0)) advance(g0, g1);
  require(!in_c(g0), "start point outside c");

  const FieldElem eps_m = unit_eps_m(F, m);
  const FieldElem g_last = mul(F, g0, eps_m);
  ConeDecomposition dec{a, m, aux, {}, g0, 0, 0};
  while (g0 != g_last) {
    if (++guard > cap) throw ResourceError("cone walk: too many polygon points");
    FieldElem b0, b1;
    if (!in_c(g1)) {
      b0 = g0;
      b1 = g1;
      advance(g0, g1);
    } else {
      FieldElem g2 = R_step(F, g0, g1);
      check_pair(g1, g2);
      b0 = g0;
      b1 = g2;
      FieldElem g3 = R_step(F, g1, g2);
      check_pair(g2, g3);
      g0 = g2;
      g1 = g3;
      ++dec.merged_steps;
    }
    require(sign_at(F, b0, 1) > 0 && sign_at(F, b0, 2) > 0, "polygon point totally positive");
    require(!in_c(b0) && !in_c(b1), "generators outside c");
    ++dec.rational_cones;
    for (const auto& alpha : pc_points(F, b0, b1, a, m)) dec.cones.push_back(Cone{alpha, {b0, b1}});
    if (ratio_increases(F, g_last, g0)) throw std::logic_error("cone walk: passed g_last");
  }
  return dec;
}

ConeDecomposition decompose(const Field& F, const Ideal& a, const Modulus& m, const AuxPrime& aux) {
  return F.is_rational() ? decompose_rational(F, a, m, aux) : decompose_quadratic(F, a, m, aux);
}

bool cone_contains(const Field& F, const Cone& C, const FieldElem& alpha) {
  return fast_contains(fast(F, C), int2(alpha));
}

void check_cone_invariants(const Field& F, const ConeDecomposition& dec) {
  const Ideal af = ideal_mul(F, dec.a, dec.m.f);
  for (const auto& C : dec.cones) {
    if (!totally_positive(F, C.base)) throw std::logic_error("cone base not totally positive");
    if (!ideal_contains(F, dec.a, C.base)) throw std::logic_error("cone base not in a");
    if (!is_one_mod(F, dec.m.f, C.base)) throw std::logic_error("cone base not 1 mod f");
    for (const auto& l : C.gens) {
      if (!totally_positive(F, l)) throw std::logic_error("cone generator not totally positive");
      if (!ideal_contains(F, af, l)) throw std::logic_error("cone generator not in af");
      if (dec.aux.c && ideal_contains(F, dec.aux.ideal, l)) throw std::logic_error("cone generator in c");
    }
  }
}

CoverageReport verify_decomposition(const Field& F, const ConeDecomposition& dec, i64 height) {
  CoverageReport rep;
  std::vector<FastCone> cones;
  for (const auto& C : dec.cones) cones.push_back(fast(F, C));
  auto count_at = [&](const Int2& v) {
    std::size_t n = 0;
    for (const auto& C : cones)
      if (fast_contains(C, v)) ++n;
    return n;
  };
  auto record = [&](const FieldElem& alpha, std::size_t n) {
    ++rep.points;
    if (n == 1)
      ++rep.covered_once;
    else if (n == 0)
      rep.misses.push_back(alpha);
    else
      rep.duplicates.push_back(alpha);
  };

  if (F.is_rational()) {
    const i64 a = dec.a.a, f = dec.m.f.a;
    for (i64 x = a; x <= height; x += a)
      if ((x - 1) % f == 0) record(FieldElem::of(x), count_at(Int2{x, 0}));
    return rep;
  }

  const FieldElem eps = unit_eps_m(F, dec.m);
  const FieldElem eps_inv = conj(F, eps);
  const double rd = std::sqrt(static_cast<double>(F.D()));
  const double w = F.tr() == 1 ? 0.5 : 1.0;
  const double th1 = F.tr() / 2.0 - w * rd, th2 = F.tr() / 2.0 + w * rd;
  const double log_rho = std::log(embed(F, eps, 2) / embed(F, eps, 1));
  const double l0 = std::log(embed(F, dec.start, 2) / embed(F, dec.start, 1));
  const double H = static_cast<double>(height);
  const Ideal& A = dec.a;
  const i64 vmax = static_cast<i64>(H / (2 * w * rd) / A.c) + 1;
  const FieldElem Hf = FieldElem::of(height);
  for (i64 v = -vmax; v <= vmax; ++v) {
    const double y = static_cast<double>(v) * A.c;
    const double xlo = std::max(-y * th1, -y * th2), xhi = std::min(H - y * th1, H - y * th2);
    if (xlo > xhi + 1) continue;
    const i64 ulo = static_cast<i64>(std::floor((xlo - static_cast<double>(v) * A.b) / A.a)) - 1;
    const i64 uhi = static_cast<i64>(std::ceil((xhi - static_cast<double>(v) * A.b) / A.a)) + 1;
    for (i64 u = ulo; u <= uhi; ++u) {
      const i128 x = static_cast<i128>(u) * A.a + static_cast<i128>(v) * A.b;
      const i128 yy = static_cast<i128>(v) * A.c;
      if (!ideal_contains(dec.m.f, x - 1, yy)) continue;
      const FieldElem alpha = elem(x, yy);
      if (!totally_positive(F, alpha)) continue;
      if (sign_at(F, Hf - alpha, 1) < 0 || sign_at(F, Hf - alpha, 2) < 0) continue;
      const double la = std::log(embed(F, alpha, 2) / embed(F, alpha, 1));
      const i64 j0 = static_cast<i64>(std::floor((l0 - la) / log_rho)) + 1;
      std::size_t n = 0;
      for (i64 j = j0 - 2; j <= j0 + 2; ++j) {
        FieldElem z = alpha;
        const FieldElem& step = j >= 0 ? eps : eps_inv;
        for (i64 k = 0; k < (j >= 0 ? j : -j); ++k) z = mul(F, z, step);
        n += count_at(int2(z));
      }
      record(alpha, n);
    }
  }
  return rep;
}

}  // namespace padicl
