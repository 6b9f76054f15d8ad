#include "adelic/squares.hpp"

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace adelic {

std::string to_string(SqStatus s) {
  switch (s) {
    case SqStatus::NonSquare: return "non_square";
    case SqStatus::Square: return "square";
    default: return "undetermined";
  }
}

WitnessPool::WitnessPool(const NumberField& K, int budget) : K_(&K), budget_(budget) {
  size_t want = static_cast<size_t>(2 * budget + 64);
  for (std::uint64_t p = 3; primes_.size() < want; p = next_prime(p)) {
    if (mpz_divisible_ui_p(K.index().get_mpz_t(), p)) continue;
    for (auto& P : split_prime(K, p)) {
      if (P.f() != 1 || P.e() != 1) continue;
      primes_.push_back(P);
      roots_.push_back((p - P.gen_poly()[0]) % p);
    }
  }
}

SquareVerdict WitnessPool::scan(const Elem& x) const {
  if (x.is_zero()) throw std::invalid_argument("squareness of zero");
  SquareVerdict v;
  Rat N = x.norm();
  Int D = x.denominator();
  for (size_t i = 0; i < primes_.size() && v.witnesses_tried < budget_; ++i) {
    std::uint64_t p = primes_[i].p();
    if (mpz_divisible_ui_p(N.get_num().get_mpz_t(), p) || mpz_divisible_ui_p(N.get_den().get_mpz_t(), p) ||
        mpz_divisible_ui_p(D.get_mpz_t(), p))
      continue;
    ++v.witnesses_tried;
    std::uint64_t r = roots_[i];
    std::uint64_t val = (mod_u64(x[0], p) + mulmod(mod_u64(x[1], p), r, p) + mulmod(mod_u64(x[2], p), mulmod(r, r, p), p)) % p;
    if (jacobi_u64(val, p) == -1) {
      v.status = SqStatus::NonSquare;
      v.witness = primes_[i];
      return v;
    }
  }
  return v;
}

bool nonsquare_at(const Elem& x, const PrimeIdeal& P) {
  if (P.p() == 2 || x.is_zero() || P.valuation(x) != 0) return false;
  return !P.residue_field().euler_is_square(P.residue(x));
}

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
  Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v, mpfr_get_prec(o.v));
      mpfr_set(v, o.v, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v); }
  mpfr_t v;
};

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
  mpfr_prec_t prec() const { return mpfr_get_prec(re.v); }
};

Cx cadd(const Cx& a, const Cx& b) {
  Cx r(a.prec());
  mpfr_add(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}
Cx csub(const Cx& a, const Cx& b) {
  Cx r(a.prec());
  mpfr_sub(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_sub(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}
Cx cmul(const Cx& a, const Cx& b) {
  mpfr_prec_t p = a.prec();
  Cx r(p);
  Real t(p);
  mpfr_mul(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(r.re.v, r.re.v, t.v, MPFR_RNDN);
  mpfr_mul(r.im.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, r.im.v, t.v, MPFR_RNDN);
  return r;
}
Cx cdiv(const Cx& a, const Cx& b) {
  mpfr_prec_t p = a.prec();
  Real d(p), t(p);
  mpfr_sqr(d.v, b.re.v, MPFR_RNDN);
  mpfr_sqr(t.v, b.im.v, MPFR_RNDN);
  mpfr_add(d.v, d.v, t.v, MPFR_RNDN);
  Cx conj(p);
  mpfr_set(conj.re.v, b.re.v, MPFR_RNDN);
  mpfr_neg(conj.im.v, b.im.v, MPFR_RNDN);
  Cx r = cmul(a, conj);
  mpfr_div(r.re.v, r.re.v, d.v, MPFR_RNDN);
  mpfr_div(r.im.v, r.im.v, d.v, MPFR_RNDN);
  return r;
}
Cx cfrom(const Rat& q, mpfr_prec_t p) {
  Cx r(p);
  mpfr_set_q(r.re.v, q.get_mpq_t(), MPFR_RNDN);
  return r;
}
// principal square root
Cx csqrt(const Cx& a) {
  mpfr_prec_t p = a.prec();
  Real m(p), t(p);
  mpfr_hypot(m.v, a.re.v, a.im.v, MPFR_RNDN);
  Cx r(p);
  mpfr_add(t.v, m.v, a.re.v, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  mpfr_sqrt(r.re.v, t.v, MPFR_RNDN);
  mpfr_sub(t.v, m.v, a.re.v, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  mpfr_sqrt(r.im.v, t.v, MPFR_RNDN);
  if (mpfr_sgn(a.im.v) < 0) mpfr_neg(r.im.v, r.im.v, MPFR_RNDN);
  return r;
}
Cx cneg(const Cx& a) {
  Cx r(a.prec());
  mpfr_neg(r.re.v, a.re.v, MPFR_RNDN);
  mpfr_neg(r.im.v, a.im.v, MPFR_RNDN);
  return r;
}

// roots of the defining cubic, Newton-polished at precision p
std::vector<Cx> cubic_roots(const NumberField& K, mpfr_prec_t p) {
  using C = std::complex<long double>;
  const auto& c = K.poly();
  long double a0 = c[0].get_d(), a1 = c[1].get_d(), a2 = c[2].get_d();
  auto f = [&](C x) { return ((x + a2) * x + a1) * x + a0; };
  std::array<C, 3> z{C(0.4L, 0.9L), C(-0.65L, 0.72L), C(-0.21L, -0.98L)};
  long double scale = 1 + std::max({std::fabs(a0), std::fabs(a1), std::fabs(a2)});
  for (auto& w : z) w *= scale;
  for (int it = 0; it < 2000; ++it)
    for (int i = 0; i < 3; ++i) {
      C d = 1;
      for (int j = 0; j < 3; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= f(z[i]) / d;
    }
  Cx A0 = cfrom(Rat(c[0]), p), A1 = cfrom(Rat(c[1]), p), A2 = cfrom(Rat(c[2]), p);
  Cx three = cfrom(Rat(3), p), two = cfrom(Rat(2), p);
  std::vector<Cx> out;
  for (auto& w : z) {
    Cx x(p);
    mpfr_set_ld(x.re.v, w.real(), MPFR_RNDN);
    mpfr_set_ld(x.im.v, w.imag(), MPFR_RNDN);
    int iters = 8;
    for (mpfr_prec_t q = 48; q < p; q *= 2) ++iters;
    for (int it = 0; it < iters; ++it) {
      Cx fx = cadd(cmul(cadd(cmul(cadd(x, A2), x), A1), x), A0);
      Cx dfx = cadd(cmul(cadd(cmul(three, x), cmul(two, A2)), x), A1);
      x = csub(x, cdiv(fx, dfx));
    }
    out.push_back(x);
  }
  return out;
}

std::optional<Elem> sqrt_at_precision(const Elem& y, mpfr_prec_t p) {
  const NumberField& K = y.field();
  auto th = cubic_roots(K, p);
  std::vector<Cx> w;
  for (auto& t : th) {
    Cx v = cadd(cadd(cfrom(y[0], p), cmul(cfrom(y[1], p), t)), cmul(cfrom(y[2], p), cmul(t, t)));
    w.push_back(csqrt(v));
  }
  // interpolation weights
  std::vector<Cx> dinv;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    dinv.push_back(cdiv(cfrom(Rat(1), p), cmul(csub(th[i], th[j]), csub(th[i], th[k]))));
  }
  Int idx = K.index();
  for (int mask = 0; mask < 8; mask += 1) {
    if (mask & 1) continue;  // global sign
    std::vector<Cx> ws;
    for (int i = 0; i < 3; ++i) ws.push_back((mask >> i) & 1 ? cneg(w[i]) : w[i]);
    Cx c0 = cfrom(Rat(0), p), c1 = cfrom(Rat(0), p), c2 = cfrom(Rat(0), p);
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      Cx a = cmul(ws[i], dinv[i]);
      c2 = cadd(c2, a);
      c1 = csub(c1, cmul(a, cadd(th[j], th[k])));
      c0 = cadd(c0, cmul(a, cmul(th[j], th[k])));
    }
    Vec3 cand;
    const Cx* cs[3] = {&c0, &c1, &c2};
    for (int k = 0; k < 3; ++k) {
      Real t(p);
      mpfr_mul_z(t.v, cs[k]->re.v, idx.get_mpz_t(), MPFR_RNDN);
      mpfr_round(t.v, t.v);
      Int z;
      mpfr_get_z(z.get_mpz_t(), t.v, MPFR_RNDN);
      cand[k] = Rat(z, idx);
      cand[k].canonicalize();
    }
    Elem r = K.from_pc(cand);
    if (r * r == y) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Elem> exact_sqrt(const Elem& x) {
  if (x.is_zero()) return x;
  Int D = x.denominator();
  Elem y = x * Rat(D * D);
  for (mpfr_prec_t p = 128; p <= 4096; p *= 2) {
    auto r = sqrt_at_precision(y, p);
    if (r) return *r * Rat(1, D);
  }
  return std::nullopt;
}

SquareVerdict is_square_in_K(const Elem& x, const WitnessPool& pool) {
  SquareVerdict v = pool.scan(x);
  if (v.status == SqStatus::NonSquare) return v;
  auto r = exact_sqrt(x);
  if (r) {
    v.status = SqStatus::Square;
    v.root = *r;
  }
  return v;
}

SquareVerdict is_square_in_K(const Elem& x, int witness_budget) {
  WitnessPool pool(x.field(), witness_budget);
  return is_square_in_K(x, pool);
}

}  // namespace adelic
