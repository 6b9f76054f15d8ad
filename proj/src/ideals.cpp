#include "adelic/ideals.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace adelic {

// ---------------------------------------------------------------- HNF

bool HNF::contains(IVec3 v) const {
  for (int i = 0; i < 3; ++i) {
    if (!mpz_divisible_p(v[i].get_mpz_t(), rows[i][i].get_mpz_t())) return false;
    Int q = v[i] / rows[i][i];
    for (int j = i; j < 3; ++j) v[j] -= q * rows[i][j];
  }
  return true;
}

IVec3 HNF::reduce(IVec3 v) const {
  for (int i = 0; i < 3; ++i) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), rows[i][i].get_mpz_t());
    if (q != 0)
      for (int j = i; j < 3; ++j) v[j] -= q * rows[i][j];
  }
  return v;
}

HNF hnf_from_rows(std::vector<IVec3> R) {
  HNF out;
  for (int c = 0; c < 3; ++c) {
    int piv = -1;
    while (true) {
      piv = -1;
      for (int i = 0; i < static_cast<int>(R.size()); ++i)
        if (R[i][c] != 0 && (piv < 0 || abs(R[i][c]) < abs(R[piv][c]))) piv = i;
      if (piv < 0) throw std::invalid_argument("lattice is not of full rank");
      bool done = true;
      for (int i = 0; i < static_cast<int>(R.size()); ++i) {
        if (i == piv || R[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), R[i][c].get_mpz_t(), R[piv][c].get_mpz_t());
        for (int j = c; j < 3; ++j) R[i][j] -= q * R[piv][j];
        if (R[i][c] != 0) done = false;
      }
      if (done) break;
    }
    IVec3 row = R[piv];
    if (row[c] < 0)
      for (auto& x : row) x = -x;
    out.rows[c] = row;
    R.erase(R.begin() + piv);
    R.erase(std::remove_if(R.begin(), R.end(), [](const IVec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }),
            R.end());
  }
  for (int c = 1; c < 3; ++c)
    for (int i = 0; i < c; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), out.rows[i][c].get_mpz_t(), out.rows[c][c].get_mpz_t());
      if (q != 0)
        for (int j = c; j < 3; ++j) out.rows[i][j] -= q * out.rows[c][j];
    }
  return out;
}

IVec3 ib_mul(const NumberField& K, const IVec3& a, const IVec3& b) {
  IVec3 r{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < 3; ++j) {
      if (b[j] == 0) continue;
      Int ab = a[i] * b[j];
      const IVec3& t = K.structure(i, j);
      for (int k = 0; k < 3; ++k)
        if (t[k] != 0) r[k] += ab * t[k];
    }
  }
  return r;
}

HNF ideal_hnf(const NumberField& K, const std::vector<IVec3>& gens) {
  std::vector<IVec3> rows;
  for (auto& g : gens)
    for (int j = 0; j < 3; ++j) {
      IVec3 e{0, 0, 0};
      e[j] = 1;
      rows.push_back(ib_mul(K, g, e));
    }
  return hnf_from_rows(rows);
}

HNF ideal_product(const NumberField& K, const HNF& a, const HNF& b) {
  std::vector<IVec3> rows;
  for (auto& x : a.rows)
    for (auto& y : b.rows) rows.push_back(ib_mul(K, x, y));
  return hnf_from_rows(rows);
}

// ---------------------------------------------------------------- PrimeIdeal

struct PrimeIdeal::Data {
  const NumberField* K = nullptr;
  std::uint64_t p = 0;
  int e = 1, f = 1;
  std::vector<Elem> gens;
  std::vector<std::uint64_t> gen_poly;
  HNF hnf;
  std::shared_ptr<FiniteField> F;
  // reduced echelon form of P/pO inside F_p^3
  std::vector<std::array<std::uint64_t, 3>> ech;
  std::vector<int> pivots, free_cols;
  std::vector<std::vector<std::uint64_t>> cinv;  // f x f
  std::mutex mu;
  std::vector<HNF> powers;
  Elem aux;
  bool aux_ready = false;
};

namespace {

std::array<std::uint64_t, 3> modp(const IVec3& v, std::uint64_t p) {
  return {mod_u64(v[0], p), mod_u64(v[1], p), mod_u64(v[2], p)};
}

// inverse of an n x n matrix over F_p (n <= 3); empty if singular
std::vector<std::vector<std::uint64_t>> inv_modp(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  size_t n = a.size();
  std::vector<std::vector<std::uint64_t>> r(n, std::vector<std::uint64_t>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return {};
    std::swap(a[c], a[piv]);
    std::swap(r[c], r[piv]);
    std::uint64_t iv = invmod(a[c][c], p);
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = mulmod(a[c][j], iv, p);
      r[c][j] = mulmod(r[c][j], iv, p);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      std::uint64_t m = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = (a[i][j] + p - mulmod(m, a[c][j], p)) % p;
        r[i][j] = (r[i][j] + p - mulmod(m, r[c][j], p)) % p;
      }
    }
  }
  return r;
}

}  // namespace

PrimeIdeal::PrimeIdeal(const NumberField& K, std::uint64_t p, std::vector<Elem> gens, int e, int f,
                       std::vector<std::uint64_t> gen_poly)
    : d_(std::make_shared<Data>()) {
  d_->K = &K;
  d_->p = p;
  d_->e = e;
  d_->f = f;
  d_->gens = std::move(gens);
  d_->gen_poly = std::move(gen_poly);
  std::vector<IVec3> g{{Int(p), 0, 0}};
  g[0] = K.from_rat(Rat(Int(p))).ib_int();
  for (auto& x : d_->gens) g.push_back(x.ib_int());
  d_->hnf = ideal_hnf(K, g);
  Int expect = ipow(Int(p), f);
  if (d_->hnf.det() != expect)
    throw std::invalid_argument("prime ideal over " + std::to_string(p) + " has norm " + to_dec(d_->hnf.det()) +
                                ", expected " + to_dec(expect));

  // echelon form of the rows mod p
  std::vector<std::array<std::uint64_t, 3>> rows;
  for (auto& r : d_->hnf.rows) rows.push_back(modp(r, p));
  rows.push_back(modp(K.from_rat(Rat(Int(p))).ib_int(), p));
  int r = 0;
  for (int c = 0; c < 3 && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) { piv = i; break; }
    if (piv < 0) {
      d_->free_cols.push_back(c);
      continue;
    }
    std::swap(rows[r], rows[piv]);
    std::uint64_t iv = invmod(rows[r][c], p);
    for (auto& x : rows[r]) x = mulmod(x, iv, p);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || !rows[i][c]) continue;
      std::uint64_t m = rows[i][c];
      for (int j = 0; j < 3; ++j) rows[i][j] = (rows[i][j] + p - mulmod(m, rows[r][j], p)) % p;
    }
    d_->pivots.push_back(c);
    ++r;
  }
  for (int c = static_cast<int>(d_->pivots.size() + d_->free_cols.size()); c < 3; ++c) d_->free_cols.push_back(c);
  rows.resize(r);
  d_->ech = rows;
  if (static_cast<int>(d_->free_cols.size()) != f) throw std::invalid_argument("inconsistent residue degree");

  // residue field: powers of a primitive element
  auto reduce_free = [&](std::array<std::uint64_t, 3> v) {
    for (size_t k = 0; k < d_->pivots.size(); ++k) {
      std::uint64_t m = v[d_->pivots[k]];
      if (!m) continue;
      for (int j = 0; j < 3; ++j) v[j] = (v[j] + p - mulmod(m, d_->ech[k][j], p)) % p;
    }
    std::vector<std::uint64_t> w;
    for (int c : d_->free_cols) w.push_back(v[c]);
    return w;
  };
  std::vector<IVec3> cands;
  cands.push_back(K.gen().ib_int());
  for (int i = 0; i < 3; ++i) {
    IVec3 e3{0, 0, 0};
    e3[i] = 1;
    cands.push_back(e3);
  }
  for (int s = 1; s < 50; ++s) cands.push_back({Int(s % 3), Int(1 + s / 3), Int(s)});
  for (auto& th : cands) {
    std::vector<std::vector<std::uint64_t>> pw;
    IVec3 cur = K.one().ib_int();
    for (int i = 0; i <= f; ++i) {
      pw.push_back(reduce_free(modp(cur, p)));
      cur = ib_mul(K, cur, th);
      for (auto& x : cur) x = Int(mod_u64(x, p));
    }
    std::vector<std::vector<std::uint64_t>> C(f, std::vector<std::uint64_t>(f));
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) C[i][j] = pw[j][i];
    auto Ci = inv_modp(C, p);
    if (Ci.empty()) continue;
    // th^f = sum m_i th^i
    std::vector<std::uint64_t> mco(f, 0);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) mco[i] = (mco[i] + mulmod(Ci[i][j], pw[f][j], p)) % p;
    std::vector<std::uint64_t> modulus(f + 1);
    for (int i = 0; i < f; ++i) modulus[i] = (p - mco[i]) % p;
    modulus[f] = 1;
    d_->F = std::make_shared<FiniteField>(p, modulus);
    d_->cinv = Ci;
    break;
  }
  if (!d_->F) throw std::runtime_error("no primitive element found for residue field");
}

const NumberField& PrimeIdeal::field() const { return *d_->K; }
std::uint64_t PrimeIdeal::p() const { return d_->p; }
int PrimeIdeal::e() const { return d_->e; }
int PrimeIdeal::f() const { return d_->f; }
Int PrimeIdeal::norm() const { return ipow(Int(d_->p), d_->f); }
const HNF& PrimeIdeal::hnf() const { return d_->hnf; }
const std::vector<Elem>& PrimeIdeal::generators() const { return d_->gens; }
const std::vector<std::uint64_t>& PrimeIdeal::gen_poly() const { return d_->gen_poly; }
const FiniteField& PrimeIdeal::residue_field() const { return *d_->F; }

std::string PrimeIdeal::label() const {
  std::ostringstream os;
  os << "(" << d_->p;
  for (auto& g : d_->gens)
    if (!g.is_zero()) os << ", " << g.str();
  os << ")";
  return os.str();
}

bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  return a.d_->K == b.d_->K && a.d_->p == b.d_->p && a.d_->hnf == b.d_->hnf;
}

bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
  Int na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.p() != b.p()) return a.p() < b.p();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a.hnf().rows[i][j] != b.hnf().rows[i][j]) return a.hnf().rows[i][j] < b.hnf().rows[i][j];
  return false;
}

const HNF& PrimeIdeal::power(int t) const {
  if (t < 1) throw std::invalid_argument("power(t) needs t >= 1");
  std::lock_guard<std::mutex> lk(d_->mu);
  if (d_->powers.empty()) d_->powers.push_back(d_->hnf);
  while (static_cast<int>(d_->powers.size()) < t)
    d_->powers.push_back(ideal_product(*d_->K, d_->powers.back(), d_->hnf));
  return d_->powers[t - 1];
}

bool PrimeIdeal::contains(const Elem& x) const { return d_->hnf.contains(x.ib_int()); }

int PrimeIdeal::valuation_integral(const IVec3& y0) const {
  Int c = 0;
  for (auto& v : y0) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
  if (c == 0) throw std::domain_error("valuation of zero");
  Int pp(d_->p);
  unsigned long a = mpz_divisible_p(c.get_mpz_t(), pp.get_mpz_t()) ? adelic::valuation(c, pp) : 0;
  IVec3 y = y0;
  if (a) {
    Int pa = ipow(pp, a);
    for (auto& v : y) v /= pa;
  }
  int t = 0;
  while (power(t + 1).contains(y)) ++t;
  return static_cast<int>(a) * d_->e + t;
}

int PrimeIdeal::valuation(const Elem& x) const {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  Int D = x.denominator();
  Elem y = x * Rat(D);
  // y lies in Z[a], hence in O_K
  IVec3 yi = y.ib_int();
  int v = valuation_integral(yi);
  Int pp(d_->p);
  if (mpz_divisible_p(D.get_mpz_t(), pp.get_mpz_t())) v -= static_cast<int>(adelic::valuation(D, pp)) * d_->e;
  return v;
}

const Elem& PrimeIdeal::aux() const {
  std::lock_guard<std::mutex> lk(d_->mu);
  if (d_->aux_ready) return d_->aux;
  const NumberField& K = *d_->K;
  std::uint64_t p = d_->p;
  // t with t * P^e inside pO and t not in P
  HNF Pe = d_->hnf;
  for (int i = 1; i < d_->e; ++i) Pe = ideal_product(K, Pe, d_->hnf);
  // linear map t -> (t h_1, t h_2, t h_3) mod p, 9 x 3
  std::vector<std::vector<std::uint64_t>> M(9, std::vector<std::uint64_t>(3));
  for (int j = 0; j < 3; ++j) {
    IVec3 ej{0, 0, 0};
    ej[j] = 1;
    for (int h = 0; h < 3; ++h) {
      IVec3 prod = ib_mul(K, ej, Pe.rows[h]);
      for (int k = 0; k < 3; ++k) M[3 * h + k][j] = mod_u64(prod[k], p);
    }
  }
  // nullspace of M over F_p
  std::vector<int> pivc;
  int r = 0;
  for (int c = 0; c < 3; ++c) {
    int piv = -1;
    for (int i = r; i < 9; ++i)
      if (M[i][c]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    std::uint64_t iv = invmod(M[r][c], p);
    for (auto& x : M[r]) x = mulmod(x, iv, p);
    for (int i = 0; i < 9; ++i) {
      if (i == r || !M[i][c]) continue;
      std::uint64_t m = M[i][c];
      for (int j = 0; j < 3; ++j) M[i][j] = (M[i][j] + p - mulmod(m, M[r][j], p)) % p;
    }
    pivc.push_back(c);
    ++r;
  }
  std::vector<IVec3> basis;
  for (int fc = 0; fc < 3; ++fc) {
    if (std::find(pivc.begin(), pivc.end(), fc) != pivc.end()) continue;
    IVec3 v{0, 0, 0};
    v[fc] = 1;
    for (size_t k = 0; k < pivc.size(); ++k) v[pivc[k]] = Int((p - M[k][fc]) % p);
    basis.push_back(v);
  }
  for (auto& v : basis)
    if (!d_->hnf.contains(v)) {
      d_->aux = K.from_ib(v);
      d_->aux_ready = true;
      return d_->aux;
    }
  throw std::logic_error("auxiliary element not found");
}

FqElem PrimeIdeal::residue_ib(const IVec3& v) const {
  std::uint64_t p = d_->p;
  auto w = modp(v, p);
  for (size_t k = 0; k < d_->pivots.size(); ++k) {
    std::uint64_t m = w[d_->pivots[k]];
    if (!m) continue;
    for (int j = 0; j < 3; ++j) w[j] = (w[j] + p - mulmod(m, d_->ech[k][j], p)) % p;
  }
  std::vector<std::uint64_t> fr;
  for (int c : d_->free_cols) fr.push_back(w[c]);
  std::vector<std::uint64_t> co(d_->f, 0);
  for (int i = 0; i < d_->f; ++i)
    for (int j = 0; j < d_->f; ++j) co[i] = (co[i] + mulmod(d_->cinv[i][j], fr[j], p)) % p;
  return d_->F->from_coeffs(co);
}

FqElem PrimeIdeal::residue(const Elem& x) const {
  const FiniteField& F = *d_->F;
  Int D = x.denominator();
  Int pp(d_->p);
  unsigned long k = mpz_divisible_p(D.get_mpz_t(), pp.get_mpz_t()) ? adelic::valuation(D, pp) : 0;
  Int Dp = D / ipow(pp, k);
  Elem y = x * Rat(D);
  FqElem inv_dp = F.inv(F.from_int(static_cast<std::int64_t>(mod_u64(Dp, d_->p))));
  if (k == 0) return F.mul(residue_ib(y.ib_int()), inv_dp);
  const Elem& t = aux();
  Elem z = y * t.pow(k) * Rat(1, ipow(pp, k));
  if (!z.integral()) throw std::domain_error("residue: element is not integral at " + label());
  FqElem rt = residue_ib(t.ib_int());
  return F.mul(F.mul(residue_ib(z.ib_int()), F.inv(F.pow(rt, static_cast<std::uint64_t>(k)))), inv_dp);
}

Elem PrimeIdeal::uniformizer() const {
  const NumberField& K = *d_->K;
  if (d_->e == 1) return K.from_rat(Rat(Int(d_->p)));
  const HNF& P2 = power(2);
  for (auto& r : d_->hnf.rows)
    if (!P2.contains(r)) return K.from_ib(r);
  for (auto& g : d_->gens)
    if (!P2.contains(g.ib_int())) return g;
  // sums of rows
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      IVec3 s;
      for (int k = 0; k < 3; ++k) s[k] = d_->hnf.rows[i][k] + d_->hnf.rows[j][k];
      if (!P2.contains(s)) return K.from_ib(s);
    }
  throw std::logic_error("no uniformizer found");
}

// ---------------------------------------------------------------- splitting

std::vector<PrimeIdeal> split_prime(const NumberField& K, std::uint64_t p) {
  std::vector<PrimeIdeal> out;
  if (mpz_divisible_ui_p(K.index().get_mpz_t(), p)) {
    for (auto& s : K.index_splittings()) {
      if (s.p != Int(p)) continue;
      std::vector<Elem> gens;
      for (auto& g : s.gens) gens.push_back(K.from_pc(g));
      out.emplace_back(K, p, gens, s.e, s.f);
    }
    if (out.empty())
      throw std::invalid_argument("index-divisor: supply splitting for p = " + std::to_string(p));
  } else {
    for (auto& [g, mult] : factor_cubic_mod_p(K.poly(), p)) {
      Elem a = K.gen(), ap = K.one(), val = K.zero();
      for (size_t i = 0; i < g.size(); ++i) {
        val += ap * Rat(Int(g[i]));
        ap *= a;
      }
      out.emplace_back(K, p, std::vector<Elem>{val}, mult, static_cast<int>(g.size()) - 1, g);
    }
  }
  int total = 0;
  for (auto& P : out) total += P.e() * P.f();
  if (total != 3) throw std::logic_error("sum of e*f over primes above " + std::to_string(p) + " is not 3");
  std::sort(out.begin(), out.end());
  return out;
}

PrimeIdeal prime_from_generator(const NumberField& K, const Elem& x) {
  if (!x.integral()) throw std::invalid_argument("prime generator must be integral");
  Rat n = abs(x.norm());
  auto fac = factor(n.get_num());
  if (fac.factors.size() != 1 || fac.factors[0].second > 3)
    throw std::invalid_argument("element " + x.str() + " does not generate a prime ideal");
  std::uint64_t p = fac.factors[0].first.get_ui();
  int f = static_cast<int>(fac.factors[0].second);
  for (auto& P : split_prime(K, p))
    if (P.f() == f && P.contains(x)) return P;
  throw std::invalid_argument("element " + x.str() + " does not generate a prime ideal");
}

std::vector<std::pair<PrimeIdeal, int>> valuations_above(const NumberField& K, const Elem& x, std::uint64_t p) {
  std::vector<std::pair<PrimeIdeal, int>> out;
  long total = 0;
  for (auto& P : split_prime(K, p)) {
    int v = P.valuation(x);
    total += static_cast<long>(v) * P.f();
    out.emplace_back(P, v);
  }
  Rat n = x.norm();
  Int pp(p);
  long expect = 0;
  if (mpz_divisible_p(n.get_num().get_mpz_t(), pp.get_mpz_t())) expect += valuation(n.get_num(), pp);
  if (mpz_divisible_p(n.get_den().get_mpz_t(), pp.get_mpz_t())) expect -= valuation(n.get_den(), pp);
  if (expect != total) throw std::logic_error("norm bookkeeping failed at p = " + std::to_string(p));
  return out;
}

std::vector<std::pair<PrimeIdeal, int>> factor_element(const NumberField& K, const Elem& x) {
  Rat n = x.norm();
  std::vector<Int> ps = prime_divisors(n.get_num());
  for (auto& q : prime_divisors(n.get_den())) ps.push_back(q);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<std::pair<PrimeIdeal, int>> out;
  for (auto& p : ps)
    for (auto& [P, v] : valuations_above(K, x, p.get_ui()))
      if (v != 0) out.emplace_back(P, v);
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

Int modulus_unit_count(const Modulus& m) {
  Int r = 1;
  for (auto& [P, k] : m) {
    if (k < 1) throw std::invalid_argument("modulus exponents must be >= 1");
    Int N = P.norm();
    r *= ipow(N, k - 1) * (N - 1);
  }
  return r;
}

Int unit_order_mod(const Elem& u, const Modulus& m) {
  const NumberField& K = u.field();
  IVec3 uv = u.ib_int();
  Int total = 1;
  for (auto& [P, k] : m) {
    if (P.contains(u)) throw std::invalid_argument("unit not coprime to modulus");
    const HNF& H = P.power(k);
    Int order = ipow(P.norm(), k - 1) * (P.norm() - 1);
    auto powmod_ideal = [&](const Int& n) {
      IVec3 r = K.one().ib_int(), b = H.reduce(uv);
      size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
      for (size_t i = bits; i-- > 0;) {
        r = H.reduce(ib_mul(K, r, r));
        if (mpz_tstbit(n.get_mpz_t(), i)) r = H.reduce(ib_mul(K, r, b));
      }
      return r;
    };
    IVec3 one = H.reduce(K.one().ib_int());
    if (powmod_ideal(order) != one) throw std::logic_error("group order check failed");
    for (auto& q : prime_divisors(order)) {
      while (mpz_divisible_p(order.get_mpz_t(), q.get_mpz_t()) && powmod_ideal(order / q) == one) order /= q;
    }
    total = lcm(total, order);
  }
  return total;
}

// ---------------------------------------------------------------- stream

PrimeStream::PrimeStream(const NumberField& K, std::uint64_t start_p) : K_(&K), next_p_(start_p) {
  if (!is_prime_u64(next_p_)) next_p_ = next_prime(next_p_);
}

PrimeIdeal PrimeStream::next() {
  while (pending_.empty() || pending_.front().norm() >= Int(next_p_)) {
    try {
      for (auto& P : split_prime(*K_, next_p_)) {
        auto it = std::upper_bound(pending_.begin(), pending_.end(), P);
        pending_.insert(it, P);
      }
    } catch (const std::invalid_argument&) {
      // index divisor without configured splitting
    }
    next_p_ = next_prime(next_p_);
  }
  PrimeIdeal P = pending_.front();
  pending_.erase(pending_.begin());
  return P;
}

}  // namespace adelic
