#include "adelic/seven.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace adelic {

Int qcurve_disc(const QCurve& E) {
  const Int &a1 = E[0], &a2 = E[1], &a3 = E[2], &a4 = E[3], &a6 = E[4];
  Int b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

FrobQDatum frob_q(const QCurve& E, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("frob_q: p must be prime");
  if (qcurve_disc(E) % p == 0) throw std::invalid_argument("frob_q: bad prime " + std::to_string(p));
  std::uint64_t n = count_points(reduce_rational(E, p));
  FrobQDatum d{p, static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(n)};
  if (static_cast<double>(d.a_p) * d.a_p > 4.0 * p) throw std::logic_error("Hasse bound violated");
  return d;
}

namespace {

std::uint64_t red(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

void need_coprime(const FrobQDatum& d, std::uint64_t l) {
  if (d.p % l == 0) throw std::invalid_argument("l divides p");
}

}  // namespace

std::optional<std::pair<std::uint64_t, std::uint64_t>> eigen_mod_l2(const FrobQDatum& d, std::uint64_t l) {
  need_coprime(d, l);
  const std::uint64_t m = l * l, a = red(d.a_p, m), p = d.p % m;
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t y = (a + m - x) % m;
    if (x % l != y % l && x * y % m == p) return std::make_pair(x, y);
  }
  return std::nullopt;
}

bool step1_witness(const FrobQDatum& d, std::uint64_t l) {
  auto e = eigen_mod_l2(d, l);
  if (!e) return false;
  const std::uint64_t m = l * l;
  return powmod(e->first, l - 1, m) != powmod(e->second, l - 1, m);
}

bool step2_witness(const FrobQDatum& d, std::uint64_t l) {
  auto e = eigen_mod_l2(d, l);
  if (!e) return false;
  const std::uint64_t m = l * l;
  return powmod(e->first, l - 1, m) == powmod(e->second, l - 1, m);
}

bool unipotent_pattern(const FrobQDatum& d, std::uint64_t l) {
  need_coprime(d, l);
  return red(d.a_p, l) == 2 % l && d.p % l == 1 % l;
}

bool cartan_discriminator(const FrobQDatum& d, std::uint64_t l) {
  if (!unipotent_pattern(d, l)) throw std::invalid_argument("Frobenius is not (T-1)^2 mod l");
  std::int64_t n = 1 + static_cast<std::int64_t>(d.p) - d.a_p;
  return n % static_cast<std::int64_t>(l * l) == 0;
}

bool step3_polynomial(const FrobQDatum& d, std::uint64_t l) {
  const std::int64_t L = static_cast<std::int64_t>(l);
  std::int64_t n = 1 + static_cast<std::int64_t>(d.p) - d.a_p;
  if ((d.a_p - 2) % L != 0 || n % (L * L) != 0) throw std::invalid_argument("step 3 divisibility fails");
  std::uint64_t s = red((d.a_p - 2) / L, l), c = red(n / (L * L), l);
  for (std::uint64_t t = 0; t < l; ++t)
    if ((t * t + (l - s) * t + c) % l == 0) return false;
  return true;
}

bool step3_witness(const FrobQDatum& d, std::uint64_t l, const QCurve& E) {
  if (!unipotent_pattern(d, l) || !cartan_discriminator(d, l)) return false;
  return step3_polynomial(d, l) && full_l_torsion_exhaustive(reduce_rational(E, d.p), l);
}

// ---------------------------------------------------------------- points over Q

bool on_curve(const QCurve& E, const QPoint& P) {
  if (P.inf) return true;
  Rat l = P.y * P.y + Rat(E[0]) * P.x * P.y + Rat(E[2]) * P.y;
  Rat r = P.x * P.x * P.x + Rat(E[1]) * P.x * P.x + Rat(E[3]) * P.x + Rat(E[4]);
  return l == r;
}

QPoint add(const QCurve& E, const QPoint& P, const QPoint& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const Rat a1 = E[0], a2 = E[1], a3 = E[2], a4 = E[3];
  Rat lam;
  if (P.x == Q.x) {
    Rat den = 2 * P.y + a1 * P.x + a3;
    if (P.y != Q.y || den == 0) return QPoint{};
    lam = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  Rat nu = P.y - lam * P.x;
  QPoint R;
  R.inf = false;
  R.x = lam * lam + a1 * lam - a2 - P.x - Q.x;
  R.y = -(lam + a1) * R.x - nu - a3;
  return R;
}

QPoint mul(const QCurve& E, const QPoint& P, unsigned n) {
  QPoint R, B = P;
  for (; n; n >>= 1) {
    if (n & 1) R = add(E, R, B);
    B = add(E, B, B);
  }
  return R;
}

std::optional<QPoint> rational_l_torsion(const QCurve& E, std::uint64_t l, std::int64_t bound) {
  // y = (-(a1 x + a3) +- sqrt(D)) / 2
  for (std::int64_t xi = -bound; xi <= bound; ++xi) {
    Int x = Int(static_cast<long>(xi));
    Int lin = E[0] * x + E[2];
    Int D = lin * lin + 4 * (x * x * x + E[1] * x * x + E[3] * x + E[4]);
    Int s;
    if (D < 0 || !is_perfect_square(D, &s)) continue;
    for (int sg : {1, -1}) {
      QPoint P{Rat(x), Rat(Int(sg * s - lin), Int(2)), false};
      P.y.canonicalize();
      if (!on_curve(E, P)) throw std::logic_error("torsion search produced an off-curve point");
      if (!mul(E, P, static_cast<unsigned>(l)).inf) continue;
      bool exact = true;
      for (unsigned k = 1; k < l; ++k)
        if (l % k == 0 && mul(E, P, k).inf) exact = false;
      if (exact) return P;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- certificate

namespace {

json datum_json(const FrobQDatum& d) { return json{{"p", d.p}, {"a_p", d.a_p}}; }

// order of P mod p is exactly l
bool reduction_compatible(const QCurve& E, const QPoint& P, std::uint64_t p, std::uint64_t l) {
  ReducedCurve C = reduce_rational(E, p);
  Point R;
  R.inf = false;
  R.x = C.F.from_int(static_cast<std::int64_t>(mod_u64(P.x, p)));
  R.y = C.F.from_int(static_cast<std::int64_t>(mod_u64(P.y, p)));
  if (!on_curve(C, R)) return false;
  return !mul(C, R, 1).inf && mul(C, R, l).inf;
}

}  // namespace

Certificate certify_half_borel(const QCurve& E, const HalfBorelParams& hp, bool transcript) {
  const std::uint64_t l = hp.l;
  if (l < 3 || !is_prime_u64(l)) throw std::invalid_argument("l must be an odd prime");
  Certificate cert;
  cert.curve = json{{"a", {to_dec(E[0]), to_dec(E[1]), to_dec(E[2]), to_dec(E[3]), to_dec(E[4])}},
                    {"disc", to_dec(qcurve_disc(E))},
                    {"l", l}};
  auto log = [&](const std::string& s) {
    if (transcript) cert.transcript.push_back(s);
  };
  const Int disc = qcurve_disc(E);
  if (disc == 0) throw std::invalid_argument("singular curve");

  Condition tors{"rational_l_torsion"};
  auto P = rational_l_torsion(E, l, hp.point_bound);
  if (P) {
    tors.values["x"] = to_dec(P->x);
    tors.values["y"] = to_dec(P->y);
    tors.status = Status::certified;
  } else {
    tors.status = Status::undetermined;
  }

  // candidates: hints, then primes up to the bound
  std::vector<std::uint64_t> cand;
  auto good = [&](std::uint64_t p) { return p != l && is_prime_u64(p) && disc % p != 0; };
  for (auto p : hp.hints)
    if (good(p)) cand.push_back(p);
  for (std::uint64_t p = 2; p <= hp.search_bound; ++p)
    if (good(p)) cand.push_back(p);

  std::optional<FrobQDatum> w1, w2, wc, w3;
  // batches keep the earliest-candidate choice deterministic
  const std::size_t batch = 64;
  for (std::size_t lo = 0; lo < cand.size() && !(w1 && w2 && wc && w3); lo += batch) {
    std::size_t hi = std::min(cand.size(), lo + batch);
    std::vector<FrobQDatum> ds(hi - lo);
    std::vector<char> f1(hi - lo), f2(hi - lo), fc(hi - lo), f3(hi - lo);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(hi - lo); ++i) {
      FrobQDatum d = frob_q(E, cand[lo + i]);
      ds[i] = d;
      f1[i] = step1_witness(d, l);
      f2[i] = step2_witness(d, l);
      if (unipotent_pattern(d, l)) {
        bool div = cartan_discriminator(d, l);
        fc[i] = !div;
        f3[i] = div && step3_polynomial(d, l) && d.p <= (1u << 20) && step3_witness(d, l, E);
      }
    }
    for (std::size_t i = 0; i < hi - lo; ++i) {
      const auto& d = ds[i];
      if (!w1 && f1[i]) w1 = d, log("step1 witness p=" + std::to_string(d.p) + " a_p=" + std::to_string(d.a_p));
      if (!w2 && f2[i]) w2 = d, log("step2 witness p=" + std::to_string(d.p) + " a_p=" + std::to_string(d.a_p));
      if (!wc && fc[i]) wc = d, log("cartan ruled out p=" + std::to_string(d.p) + " a_p=" + std::to_string(d.a_p));
      if (!w3 && f3[i]) w3 = d, log("step3 witness p=" + std::to_string(d.p) + " a_p=" + std::to_string(d.a_p));
    }
  }

  if (P) {
    json chk = json::array();
    bool all = true;
    for (auto* w : {&w1, &w2, &wc, &w3})
      if (*w) {
        bool okp = reduction_compatible(E, *P, (*w)->p, l);
        chk.push_back({{"p", (*w)->p}, {"order_l", okp}});
        all = all && okp;
      }
    tors.witnesses = chk;
    if (!all) tors.status = Status::failed;
  }
  cert.add(tors);

  auto witness_cond = [&](const std::string& id, const std::optional<FrobQDatum>& w) {
    Condition c{id};
    if (w) {
      c.witnesses.push_back(datum_json(*w));
      c.status = Status::certified;
    }
    return c;
  };
  Condition c1 = witness_cond("step1", w1);
  if (w1) {
    auto e = eigen_mod_l2(*w1, l);
    c1.values["lambda"] = {e->first, e->second};
  }
  cert.add(c1);
  cert.add(witness_cond("step2", w2));
  Condition cc = witness_cond("cartan_ruled_out", wc);
  if (wc) cc.values["1+p-a_p"] = 1 + static_cast<std::int64_t>(wc->p) - wc->a_p;
  cert.add(cc);
  Condition c3 = witness_cond("step3", w3);
  if (w3) c3.values["full_l_torsion"] = true;
  cert.add(c3);

  Condition c4{"step4"};
  // non-scalar diagonal from step 1 conjugated by (1 0; 0 u)
  c4.status = w1 && w2 && w3 && wc ? Status::certified : Status::undetermined;
  cert.add(c4);

  Condition ad{"adelic_assembly"};
  ad.required = false;
  ad.status = Status::per_reference;
  cert.add(ad);
  cert.finalize();
  return cert;
}

}  // namespace adelic
