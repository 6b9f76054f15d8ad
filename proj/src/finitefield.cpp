#include "adelic/finitefield.hpp"

#include <algorithm>
#include <stdexcept>

namespace adelic {

FiniteField::FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus) : p_(p), mod_(std::move(modulus)) {
  if (p < 2 || p >= (1ull << 62) || !is_prime_u64(p)) throw std::invalid_argument("FiniteField: bad characteristic");
  if (mod_.size() < 2 || mod_.size() > 4 || mod_.back() % p != 1)
    throw std::invalid_argument("FiniteField: modulus must be monic of degree 1..3");
  for (auto& c : mod_) c %= p;
  f_ = static_cast<int>(mod_.size()) - 1;
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ = q_ > UINT64_MAX / p_ ? UINT64_MAX : q_ * p_;  // saturates
  if (f_ == 2 && p_ > 2) {
    std::uint64_t b = mod_[1], c = mod_[0];
    std::uint64_t disc = (mm(b, b) + p_ - mm(4 % p_, c)) % p_;
    if (disc == 0 || jacobi_u64(disc, p_) == 1) throw std::invalid_argument("FiniteField: modulus has a root");
  } else if (f_ >= 2 && p_ < (1ull << 24)) {
    // no roots means irreducible for degree <= 3
    for (std::uint64_t x = 0; x < p_; ++x) {
      std::uint64_t v = 0;
      for (int i = f_; i >= 0; --i) v = (mulmod(v, x, p_) + mod_[i]) % p_;
      if (v == 0) throw std::invalid_argument("FiniteField: modulus has a root");
    }
  }
}

FqElem FiniteField::from_int(std::int64_t v) const {
  FqElem r;
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  r.c[0] = static_cast<std::uint64_t>(m);
  return r;
}

FqElem FiniteField::from_coeffs(const std::vector<std::uint64_t>& c) const {
  // reduce an arbitrary-degree polynomial in x
  std::vector<std::uint64_t> t(c.begin(), c.end());
  for (auto& x : t) x %= p_;
  for (int k = static_cast<int>(t.size()) - 1; k >= f_; --k) {
    std::uint64_t lead = t[k];
    if (!lead) continue;
    for (int i = 0; i <= f_; ++i) t[k - f_ + i] = (t[k - f_ + i] + p_ - mulmod(lead, mod_[i], p_)) % p_;
  }
  FqElem r;
  for (int i = 0; i < f_ && i < static_cast<int>(t.size()); ++i) r.c[i] = t[i];
  return r;
}

FqElem FiniteField::generator() const { return from_coeffs({0, 1}); }

FqElem FiniteField::element(std::uint64_t index) const {
  FqElem r;
  for (int i = 0; i < f_; ++i) {
    r.c[i] = index % p_;
    index /= p_;
  }
  return r;
}

std::uint64_t FiniteField::index_of(const FqElem& a) const {
  std::uint64_t idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
  return idx;
}

FqElem FiniteField::add(const FqElem& a, const FqElem& b) const {
  FqElem r;
  for (int i = 0; i < f_; ++i) {
    r.c[i] = a.c[i] + b.c[i];
    if (r.c[i] >= p_) r.c[i] -= p_;
  }
  return r;
}

FqElem FiniteField::sub(const FqElem& a, const FqElem& b) const {
  FqElem r;
  for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  return r;
}

FqElem FiniteField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem FiniteField::scale(const FqElem& a, std::uint64_t s) const {
  FqElem r;
  s %= p_;
  for (int i = 0; i < f_; ++i) r.c[i] = mm(a.c[i], s);
  return r;
}

FqElem FiniteField::mul(const FqElem& a, const FqElem& b) const {
  FqElem r;
  if (f_ == 1) {
    r.c[0] = mm(a.c[0], b.c[0]);
    return r;
  }
  std::uint64_t t[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < f_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < f_; ++j) t[i + j] = (t[i + j] + mm(a.c[i], b.c[j])) % p_;
  }
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    std::uint64_t lead = t[k];
    if (!lead) continue;
    for (int i = 0; i < f_; ++i) t[k - f_ + i] = (t[k - f_ + i] + mm(p_ - lead, mod_[i])) % p_;
  }
  for (int i = 0; i < f_; ++i) r.c[i] = t[i];
  return r;
}

FqElem FiniteField::pow(const FqElem& a, std::uint64_t n) const {
  FqElem r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

FqElem FiniteField::pow(const FqElem& a, const Int& n) const {
  if (n < 0) return pow(inv(a), Int(-n));
  FqElem r = one(), b = a;
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) r = mul(r, b);
    b = mul(b, b);
  }
  return r;
}

FqElem FiniteField::inv(const FqElem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

std::uint64_t FiniteField::norm(const FqElem& a) const {
  if (f_ == 1) return a.c[0];
  // determinant of multiplication by a on the basis 1, x, ..
  std::uint64_t m[3][3] = {};
  FqElem col = a, x = generator();
  for (int j = 0; j < f_; ++j) {
    for (int i = 0; i < f_; ++i) m[i][j] = col.c[i];
    col = mul(col, x);
  }
  if (f_ == 2) return (mm(m[0][0], m[1][1]) + p_ - mm(m[0][1], m[1][0])) % p_;
  std::uint64_t d = mm(m[0][0], (mm(m[1][1], m[2][2]) + p_ - mm(m[1][2], m[2][1])) % p_);
  d = (d + p_ - mm(m[0][1], (mm(m[1][0], m[2][2]) + p_ - mm(m[1][2], m[2][0])) % p_)) % p_;
  d = (d + mm(m[0][2], (mm(m[1][0], m[2][1]) + p_ - mm(m[1][1], m[2][0])) % p_)) % p_;
  return d;
}

bool FiniteField::euler_is_square(const FqElem& a) const {
  if (is_zero(a)) throw std::domain_error("euler_is_square: zero");
  if (p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

std::optional<FqElem> FiniteField::sqrt(const FqElem& a) const {
  if (is_zero(a)) return zero();
  if (p_ == 2) return pow(a, q_ / 2);
  if (!euler_is_square(a)) return std::nullopt;
  if (!nonres_) {
    for (std::uint64_t i = 2; i < q_; ++i) {
      FqElem z = element(i);
      if (!euler_is_square(z)) {
        nonres_ = z;
        break;
      }
    }
  }
  // Tonelli-Shanks
  std::uint64_t Q = q_ - 1;
  int S = 0;
  while (!(Q & 1)) { Q >>= 1; ++S; }
  FqElem z = pow(*nonres_, Q), t = pow(a, Q), R = pow(a, (Q + 1) / 2);
  int M = S;
  while (t != one()) {
    int i = 0;
    FqElem tt = t;
    while (tt != one()) {
      tt = mul(tt, tt);
      ++i;
    }
    FqElem b = z;
    for (int k = 0; k < M - i - 1; ++k) b = mul(b, b);
    M = i;
    z = mul(b, b);
    t = mul(t, z);
    R = mul(R, b);
  }
  return R;
}

FqElem poly_eval(const FiniteField& F, const FqPoly& poly, const FqElem& x) {
  FqElem r = F.zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

namespace {

void ptrim(const FiniteField& F, FqPoly& a) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

FqPoly pmod(const FiniteField& F, FqPoly a, const FqPoly& b) {
  ptrim(F, a);
  FqElem li = F.inv(b.back());
  while (a.size() >= b.size()) {
    FqElem c = F.mul(a.back(), li);
    size_t s = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = F.sub(a[s + i], F.mul(c, b[i]));
    ptrim(F, a);
  }
  return a;
}

FqPoly pmul(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return r;
}

FqPoly pgcd(const FiniteField& F, FqPoly a, FqPoly b) {
  ptrim(F, a);
  ptrim(F, b);
  while (!b.empty()) {
    FqPoly r = pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FqElem li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

FqPoly ppowmod(const FiniteField& F, FqPoly base, Int e, const FqPoly& m) {
  FqPoly r{F.one()};
  base = pmod(F, base, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = pmod(F, pmul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = pmod(F, pmul(F, r, base), m);
  }
  return r;
}

// distinct roots of a squarefree split polynomial
void split_roots(const FiniteField& F, const FqPoly& g, std::vector<FqElem>& out, std::uint64_t& seed) {
  size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(F.neg(F.mul(g[0], F.inv(g[1]))));
    return;
  }
  if (deg == 2 && F.p() != 2) {
    FqElem a = g[2], b = g[1], c = g[0];
    FqElem disc = F.sub(F.mul(b, b), F.scale(F.mul(a, c), 4));
    auto s = F.sqrt(disc);
    if (!s) return;
    FqElem i2a = F.inv(F.scale(a, 2));
    out.push_back(F.mul(F.sub(*s, b), i2a));
    out.push_back(F.mul(F.sub(F.neg(*s), b), i2a));
    return;
  }
  Int half = (Int(F.q()) - 1) / 2;
  while (true) {
    FqElem delta = F.element(seed++ % F.q());
    FqPoly lin{delta, F.one()};
    FqPoly h = ppowmod(F, lin, half, g);
    if (h.empty()) continue;
    h[0] = F.sub(h[0], F.one());
    FqPoly d = pgcd(F, g, h);
    size_t dd = d.empty() ? 0 : d.size() - 1;
    if (dd == 0 || dd == deg) continue;
    split_roots(F, d, out, seed);
    // cofactor
    FqPoly q;
    {
      FqPoly a = g;
      FqPoly quo(a.size() - d.size() + 1, F.zero());
      while (a.size() >= d.size()) {
        FqElem c = a.back();
        size_t s = a.size() - d.size();
        quo[s] = c;
        for (size_t i = 0; i < d.size(); ++i) a[s + i] = F.sub(a[s + i], F.mul(c, d[i]));
        a.pop_back();
      }
      q = quo;
    }
    split_roots(F, q, out, seed);
    return;
  }
}

}  // namespace

std::vector<FqElem> roots_deg_le3(const FiniteField& F, FqPoly poly) {
  ptrim(F, poly);
  if (poly.size() > 4) throw std::invalid_argument("roots_deg_le3: degree > 3");
  std::vector<FqElem> distinct;
  if (poly.size() <= 1) return {};
  if (F.q() <= 4096) {
    for (std::uint64_t i = 0; i < F.q(); ++i) {
      FqElem x = F.element(i);
      if (F.is_zero(poly_eval(F, poly, x))) distinct.push_back(x);
    }
  } else {
    FqElem li = F.inv(poly.back());
    for (auto& c : poly) c = F.mul(c, li);
    FqPoly xq = ppowmod(F, {F.zero(), F.one()}, Int(F.q()), poly);
    xq.resize(std::max<size_t>(xq.size(), 2), F.zero());
    xq[1] = F.sub(xq[1], F.one());
    FqPoly g = pgcd(F, poly, xq);
    std::uint64_t seed = 1;
    if (g.size() > 1) split_roots(F, g, distinct, seed);
  }
  // multiplicities by repeated synthetic division
  std::vector<FqElem> out;
  for (auto& r : distinct) {
    FqPoly a = poly;
    while (a.size() > 1 && F.is_zero(poly_eval(F, a, r))) {
      out.push_back(r);
      FqPoly b(a.size() - 1, F.zero());
      FqElem carry = F.zero();
      for (size_t i = a.size() - 1; i >= 1; --i) {
        carry = F.add(F.mul(carry, r), a[i]);
        b[i - 1] = carry;
      }
      a = b;
    }
  }
  std::sort(out.begin(), out.end(), [&](const FqElem& x, const FqElem& y) { return F.index_of(x) < F.index_of(y); });
  return out;
}

Int trace_extend(const Int& t, const Int& q, unsigned n) {
  if (t * t > 4 * q) throw std::domain_error("trace_extend: Hasse bound violated");
  Int s0 = 2, s1 = t;
  if (n == 0) return s0;
  for (unsigned k = 2; k <= n; ++k) {
    Int s2 = t * s1 - q * s0;
    s0 = s1;
    s1 = s2;
  }
  return s1;
}

std::vector<std::pair<std::vector<std::uint64_t>, int>> factor_cubic_mod_p(const std::array<Int, 3>& poly,
                                                                          std::uint64_t p) {
  FiniteField Fp = FiniteField::prime_field(p);
  FqPoly f{Fp.from_int(static_cast<std::int64_t>(mod_u64(poly[0], p))),
           Fp.from_int(static_cast<std::int64_t>(mod_u64(poly[1], p))),
           Fp.from_int(static_cast<std::int64_t>(mod_u64(poly[2], p))), Fp.one()};
  auto roots = roots_deg_le3(Fp, f);
  std::vector<std::pair<std::vector<std::uint64_t>, int>> out;
  for (size_t i = 0; i < roots.size();) {
    size_t j = i;
    while (j < roots.size() && roots[j] == roots[i]) ++j;
    out.push_back({{(p - roots[i].c[0]) % p, 1}, static_cast<int>(j - i)});
    i = j;
  }
  if (roots.empty()) {
    out.push_back({{f[0].c[0], f[1].c[0], f[2].c[0], 1}, 1});
  } else if (roots.size() == 1) {
    // remaining irreducible quadratic: f / (x - r)
    std::uint64_t r = roots[0].c[0];
    std::uint64_t b1 = (f[2].c[0] + r) % p;               // x^2 + b1 x + b0
    std::uint64_t b0 = (f[1].c[0] + mulmod(b1, r, p)) % p;
    out.push_back({{b0, b1, 1}, 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adelic
