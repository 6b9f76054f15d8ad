#include "adelic/ellcurve.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace adelic {

Curve curve_from_coeffs(const Elem& a1, const Elem& a2, const Elem& a3, const Elem& a4, const Elem& a6) {
  return Curve{a1, a2, a3, a4, a6, std::nullopt};
}

Curve curve_from_roots(const Elem& e1, const Elem& e2, const Elem& e3) {
  if (e1 == e2 || e1 == e3 || e2 == e3) throw std::invalid_argument("repeated 2-torsion abscissa");
  const NumberField& K = e1.field();
  Curve E{K.zero(), -(e1 + e2 + e3), K.zero(), e1 * e2 + e1 * e3 + e2 * e3, -(e1 * e2 * e3), std::array<Elem, 3>{e1, e2, e3}};
  return E;
}

Invariants invariants(const Curve& E) {
  Invariants I;
  const Elem &a1 = E.a1, &a2 = E.a2, &a3 = E.a3, &a4 = E.a4, &a6 = E.a6;
  I.b2 = a1 * a1 + 4 * a2;
  I.b4 = 2 * a4 + a1 * a3;
  I.b6 = a3 * a3 + 4 * a6;
  I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.c4 = I.b2 * I.b2 - 24 * I.b4;
  I.c6 = -(I.b2 * I.b2 * I.b2) + 36 * I.b2 * I.b4 - 216 * I.b6;
  I.disc = -(I.b2 * I.b2 * I.b8) - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
  if (I.disc.is_zero()) throw std::invalid_argument("singular model");
  if (I.c4 * I.c4 * I.c4 - I.c6 * I.c6 != 1728 * I.disc) throw std::logic_error("c4^3 - c6^2 != 1728 disc");
  I.j = I.c4 * I.c4 * I.c4 / I.disc;
  return I;
}

std::string to_string(RedType t) {
  switch (t) {
    case RedType::good: return "good";
    case RedType::multiplicative: return "multiplicative";
    case RedType::additive_pot_good: return "additive_pot_good";
    case RedType::additive_pot_mult: return "additive_pot_mult";
    default: return "unclassified";
  }
}

namespace {

int val(const PrimeIdeal& P, const Elem& x) { return x.is_zero() ? kInfiniteValuation : P.valuation(x); }

int floordiv(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Elem ipow_elem(const Elem& x, int n) { return n >= 0 ? x.pow(n) : x.inverse().pow(-n); }

// u-scaling: a_i -> a_i / u^i
Curve scale(const Curve& E, const Elem& u) {
  Elem u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  return Curve{E.a1 / u, E.a2 / u2, E.a3 / u3, E.a4 / u4, E.a6 / u6, std::nullopt};
}

// coset representatives of O / H
std::vector<Elem> coset_reps(const NumberField& K, const HNF& H) {
  std::vector<Elem> out;
  Int d0 = H.rows[0][0], d1 = H.rows[1][1], d2 = H.rows[2][2];
  for (Int x = 0; x < d0; ++x)
    for (Int y = 0; y < d1; ++y)
      for (Int z = 0; z < d2; ++z) out.push_back(K.from_ib({x, y, z}));
  return out;
}

struct Sub {
  Elem r, s, t;
};

std::optional<Sub> find_substitution(const Curve& E, const PrimeIdeal& P, const Elem& pi) {
  const NumberField& K = E.field();
  auto R1 = coset_reps(K, P.power(1));
  auto R2 = coset_reps(K, P.power(2));
  auto R3 = coset_reps(K, P.power(3));
  const Elem &a1 = E.a1, &a2 = E.a2, &a3 = E.a3, &a4 = E.a4, &a6 = E.a6;
  auto ge = [&](const Elem& x, int i) { return val(P, x) >= i; };
  (void)pi;
  for (auto& s : R1) {
    if (!ge(a1 + 2 * s, 1)) continue;
    for (auto& r : R2) {
      if (!ge(a2 - s * a1 + 3 * r - s * s, 2)) continue;
      for (auto& t : R3) {
        if (!ge(a3 + r * a1 + 2 * t, 3)) continue;
        if (!ge(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, 4)) continue;
        if (!ge(a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1, 6)) continue;
        return Sub{r, s, t};
      }
    }
  }
  return std::nullopt;
}

Curve apply_sub(const Curve& E, const Elem& u, const Sub& S) {
  const Elem &a1 = E.a1, &a2 = E.a2, &a3 = E.a3, &a4 = E.a4, &a6 = E.a6;
  const Elem &r = S.r, &s = S.s, &t = S.t;
  Curve N{a1 + 2 * s,
          a2 - s * a1 + 3 * r - s * s,
          a3 + r * a1 + 2 * t,
          a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
          a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
          std::nullopt};
  return scale(N, u);
}

constexpr std::uint64_t kSearchLimit = 1ull << 22;

}  // namespace

ReductionInfo classify_reduction(const Curve& E, const PrimeIdeal& P, std::optional<Elem> uniformizer) {
  const NumberField& K = E.field();
  Invariants I = invariants(E);
  ReductionInfo R;
  R.N = P.norm();
  int vc4 = val(P, I.c4), vc6 = val(P, I.c6), vd = val(P, I.disc);
  R.v_disc = vd;
  R.v_j = vc4 >= kInfiniteValuation ? kInfiniteValuation : 3 * vc4 - vd;
  Elem pi = uniformizer ? *uniformizer : P.uniformizer();
  if (val(P, pi) != 1) throw std::invalid_argument("uniformizer does not have valuation 1");

  int vmin, vc4min;
  if (P.p() > 3) {
    int k = std::min({vc4 >= kInfiniteValuation ? kInfiniteValuation : floordiv(vc4, 4),
                      vc6 >= kInfiniteValuation ? kInfiniteValuation : floordiv(vc6, 6), floordiv(vd, 12)});
    vmin = vd - 12 * k;
    vc4min = vc4 >= kInfiniteValuation ? vc4 : vc4 - 4 * k;
    bool integral = true;
    for (const Elem* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
      if (val(P, *a) < 0) integral = false;
    if (k == 0 && integral) {
      R.local_model = E;
    } else {
      Elem s4 = ipow_elem(pi, 4 * k), s6 = ipow_elem(pi, 6 * k);
      R.local_model = Curve{K.zero(), K.zero(), K.zero(), -27 * I.c4 / s4, -54 * I.c6 / s6, std::nullopt};
    }
  } else {
    Curve cur = E;
    // clear P-denominators first
    int m = 0;
    int idx[5] = {1, 2, 3, 4, 6};
    const Elem* as[5] = {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6};
    for (int i = 0; i < 5; ++i) {
      int v = val(P, *as[i]);
      if (v < 0) m = std::max(m, (-v + idx[i] - 1) / idx[i]);
    }
    if (m > 0) cur = scale(cur, ipow_elem(pi, -m));
    int vcur = vd + 12 * m;
    int steps = 0;
    Int space = P.norm() * P.norm() * P.norm();
    bool stalled = false;
    while (vcur >= 12) {
      if (space * space > Int(kSearchLimit) * Int(kSearchLimit)) {
        stalled = true;
        break;
      }
      auto sub = find_substitution(cur, P, pi);
      if (!sub) break;
      cur = apply_sub(cur, pi, *sub);
      vcur -= 12;
      ++steps;
    }
    R.local_model = cur;
    vmin = vcur;
    vc4min = vc4 >= kInfiniteValuation ? vc4 : vc4 + 4 * m - 4 * steps;
    if (stalled) {
      R.type = RedType::unclassified;
      R.v_disc_min = vmin;
      R.v_c4 = vc4min;
      return R;
    }
  }
  R.v_disc_min = vmin;
  R.v_c4 = vc4min;
  if (vmin == 0) R.type = RedType::good;
  else if (vc4min == 0) R.type = RedType::multiplicative;
  else R.type = R.v_j < 0 ? RedType::additive_pot_mult : RedType::additive_pot_good;
  return R;
}

ReducedCurve reduce_model(const Curve& M, const PrimeIdeal& P) {
  return ReducedCurve{P.residue_field(), P.residue(M.a1), P.residue(M.a2), P.residue(M.a3), P.residue(M.a4),
                      P.residue(M.a6)};
}

ReducedCurve reduce_at(const Curve& E, const PrimeIdeal& P) {
  ReductionInfo R = classify_reduction(E, P);
  if (R.type != RedType::good) throw std::invalid_argument("bad reduction at " + P.label());
  ReducedCurve C = reduce_model(R.local_model, P);
  if (C.F.is_zero(reduced_disc(C))) throw std::logic_error("reduced discriminant vanishes at a good prime");
  return C;
}

ReducedCurve reduce_rational(const std::array<Int, 5>& a, std::uint64_t p) {
  FiniteField F = FiniteField::prime_field(p);
  auto r = [&](const Int& x) { return F.from_int(static_cast<std::int64_t>(mod_u64(x, p))); };
  return ReducedCurve{F, r(a[0]), r(a[1]), r(a[2]), r(a[3]), r(a[4])};
}

namespace {

struct BInv {
  FqElem b2, b4, b6, b8;
};

BInv binv(const ReducedCurve& C) {
  const FiniteField& F = C.F;
  BInv b;
  b.b2 = F.add(F.mul(C.a1, C.a1), F.scale(C.a2, 4));
  b.b4 = F.add(F.scale(C.a4, 2), F.mul(C.a1, C.a3));
  b.b6 = F.add(F.mul(C.a3, C.a3), F.scale(C.a6, 4));
  FqElem t = F.add(F.mul(F.mul(C.a1, C.a1), C.a6), F.scale(F.mul(C.a2, C.a6), 4));
  t = F.sub(t, F.mul(F.mul(C.a1, C.a3), C.a4));
  t = F.add(t, F.mul(C.a2, F.mul(C.a3, C.a3)));
  b.b8 = F.sub(t, F.mul(C.a4, C.a4));
  return b;
}

// 4x^3 + b2 x^2 + 2 b4 x + b6
inline FqElem rhs(const FiniteField& F, const BInv& b, const FqElem& x) {
  FqElem v = F.add(F.scale(x, 4), b.b2);
  v = F.add(F.mul(v, x), F.scale(b.b4, 2));
  return F.add(F.mul(v, x), b.b6);
}

inline bool on_curve_xy(const ReducedCurve& C, const FqElem& x, const FqElem& y) {
  const FiniteField& F = C.F;
  FqElem lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(C.a1, x), y), F.mul(C.a3, y)));
  FqElem r = F.add(F.mul(F.add(F.mul(F.add(x, C.a2), x), C.a4), x), C.a6);
  return lhs == r;
}

void check_hasse(std::uint64_t q, std::uint64_t n) {
  long double t = static_cast<long double>(q) + 1 - static_cast<long double>(n);
  if (t * t > 4.0L * q + 1e-6L) throw std::logic_error("Hasse bound violated");
}

std::uint64_t count_char2(const ReducedCurve& C) {
  std::uint64_t q = C.F.q(), n = 1;
  for (std::uint64_t i = 0; i < q; ++i)
    for (std::uint64_t j = 0; j < q; ++j)
      if (on_curve_xy(C, C.F.element(i), C.F.element(j))) ++n;
  return n;
}

}  // namespace

FqElem reduced_disc(const ReducedCurve& C) {
  const FiniteField& F = C.F;
  BInv b = binv(C);
  FqElem d = F.neg(F.mul(F.mul(b.b2, b.b2), b.b8));
  d = F.sub(d, F.scale(F.mul(F.mul(b.b4, b.b4), b.b4), 8));
  d = F.sub(d, F.scale(F.mul(b.b6, b.b6), 27));
  return F.add(d, F.scale(F.mul(F.mul(b.b2, b.b4), b.b6), 9));
}

std::uint64_t count_points(const ReducedCurve& C, std::uint64_t ceiling) {
  const FiniteField& F = C.F;
  std::uint64_t q = F.q(), p = F.p();
  if (q > ceiling) throw std::invalid_argument("field too large for point counting");
  if (p == 2) {
    if (q > (1u << 12)) throw std::invalid_argument("characteristic 2 field too large");
    std::uint64_t n = count_char2(C);
    check_hasse(q, n);
    return n;
  }
  BInv b = binv(C);
  std::vector<signed char> leg;
  if (p <= (1u << 16)) {
    leg.assign(p, -1);
    leg[0] = 0;
    for (std::uint64_t y = 1; y <= p / 2; ++y) leg[mulmod(y, y, p)] = 1;
  }
  long long sum = 0;
  const long long qq = static_cast<long long>(q);
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (long long i = 0; i < qq; ++i) {
    FqElem v = rhs(F, b, F.element(static_cast<std::uint64_t>(i)));
    std::uint64_t n = F.f() == 1 ? v.c[0] : F.norm(v);
    sum += leg.empty() ? jacobi_u64(n, p) : leg[n];
  }
  std::uint64_t n = static_cast<std::uint64_t>(static_cast<long long>(q) + 1 + sum);
  check_hasse(q, n);
  return n;
}

std::uint64_t count_points_serial(const ReducedCurve& C, std::uint64_t ceiling) {
  const FiniteField& F = C.F;
  std::uint64_t q = F.q();
  if (q > ceiling) throw std::invalid_argument("field too large for point counting");
  if (F.p() == 2) return count_char2(C);
  BInv b = binv(C);
  long long sum = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    FqElem v = rhs(F, b, F.element(i));
    if (F.is_zero(v)) continue;
    sum += F.euler_is_square(v) ? 1 : -1;
  }
  std::uint64_t n = static_cast<std::uint64_t>(static_cast<long long>(q) + 1 + sum);
  check_hasse(q, n);
  return n;
}

std::uint64_t count_points_naive(const ReducedCurve& C) { return count_char2(C); }

FrobData frobenius(const Curve& E, const PrimeIdeal& P, std::uint64_t ceiling) {
  ReducedCurve C = reduce_at(E, P);
  Int N = P.norm();
  std::uint64_t n = count_points(C, ceiling);
  return FrobData{N, N + 1 - Int(n)};
}

bool on_curve(const ReducedCurve& C, const Point& P) { return P.inf || on_curve_xy(C, P.x, P.y); }

Point neg(const ReducedCurve& C, const Point& P) {
  if (P.inf) return P;
  const FiniteField& F = C.F;
  return Point{P.x, F.sub(F.neg(P.y), F.add(F.mul(C.a1, P.x), C.a3)), false};
}

Point add(const ReducedCurve& C, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const FiniteField& F = C.F;
  FqElem lam, nu;
  if (P.x == Q.x) {
    FqElem den = F.add(F.add(F.add(P.y, Q.y), F.mul(C.a1, Q.x)), C.a3);
    if (F.is_zero(den)) return Point{};
    FqElem x2 = F.mul(P.x, P.x);
    FqElem num = F.sub(F.add(F.add(F.scale(x2, 3), F.scale(F.mul(C.a2, P.x), 2)), C.a4), F.mul(C.a1, P.y));
    FqElem di = F.inv(den);
    lam = F.mul(num, di);
    FqElem num2 = F.sub(F.add(F.neg(F.mul(x2, P.x)), F.add(F.mul(C.a4, P.x), F.scale(C.a6, 2))), F.mul(C.a3, P.y));
    nu = F.mul(num2, di);
  } else {
    FqElem di = F.inv(F.sub(Q.x, P.x));
    lam = F.mul(F.sub(Q.y, P.y), di);
    nu = F.mul(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), di);
  }
  FqElem x3 = F.sub(F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(C.a1, lam)), C.a2), P.x), Q.x);
  FqElem y3 = F.sub(F.sub(F.neg(F.mul(F.add(lam, C.a1), x3)), nu), C.a3);
  return Point{x3, y3, false};
}

Point mul(const ReducedCurve& C, const Point& P, std::uint64_t n) {
  Point r, b = P;
  while (n) {
    if (n & 1) r = add(C, r, b);
    b = add(C, b, b);
    n >>= 1;
  }
  return r;
}

std::vector<Point> all_points(const ReducedCurve& C) {
  const FiniteField& F = C.F;
  std::vector<Point> out{Point{}};
  std::uint64_t q = F.q();
  if (F.p() == 2) {
    for (std::uint64_t i = 0; i < q; ++i)
      for (std::uint64_t j = 0; j < q; ++j)
        if (on_curve_xy(C, F.element(i), F.element(j))) out.push_back(Point{F.element(i), F.element(j), false});
    return out;
  }
  BInv b = binv(C);
  FqElem half = F.inv(F.from_int(2));
  for (std::uint64_t i = 0; i < q; ++i) {
    FqElem x = F.element(i);
    FqElem v = rhs(F, b, x);
    auto s = F.sqrt(v);
    if (!s) continue;
    FqElem base = F.add(F.mul(C.a1, x), C.a3);
    FqElem y1 = F.mul(F.sub(*s, base), half);
    out.push_back(Point{x, y1, false});
    if (!F.is_zero(*s)) out.push_back(Point{x, F.mul(F.sub(F.neg(*s), base), half), false});
  }
  return out;
}

bool full_four_torsion(const ReducedCurve& C) {
  const FiniteField& F = C.F;
  if (F.p() == 2) throw std::invalid_argument("full_four_torsion needs odd characteristic");
  BInv b = binv(C);
  FqElem i4 = F.inv(F.from_int(4));
  FqPoly g{F.mul(b.b6, i4), F.mul(F.scale(b.b4, 2), i4), F.mul(b.b2, i4), F.one()};
  auto r = roots_deg_le3(F, g);
  if (r.size() != 3 || r[0] == r[1] || r[1] == r[2] || r[0] == r[2]) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !F.euler_is_square(F.sub(r[i], r[j]))) return false;
  return true;
}

std::uint64_t torsion_count_exhaustive(const ReducedCurve& C, std::uint64_t n) {
  std::uint64_t c = 0;
  for (auto& P : all_points(C))
    if (mul(C, P, n).inf) ++c;
  return c;
}

bool full_l_torsion_exhaustive(const ReducedCurve& C, std::uint64_t l, std::uint64_t ceiling) {
  if (C.F.q() > ceiling) throw std::invalid_argument("field too large for enumeration");
  return torsion_count_exhaustive(C, l) == l * l;
}

}  // namespace adelic
