#include "adelic/family.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace adelic {

const NumberField& family_field() {
  static const NumberField K({1, 1, 0}, std::nullopt, "Q(a), a^3+a+1=0");
  return K;
}

Curve family_curve(const Int& b, const Int& c) {
  const NumberField& K = family_field();
  Elem a = K.gen();
  Elem A = a * a + Rat(b) * a + K.from_rat(c);
  Elem B = 16 * (a * a + a + 1);
  return curve_from_roots(K.zero(), A, B);
}

bool semistable_congruence(const Int& b, const Int& c) {
  auto m12 = [](const Int& x) -> long {
    Int r = x % 12;
    if (r < 0) r += 12;
    return r.get_si();
  };
  long bb = m12(b), cc = m12(c);
  return (bb == 5 && (cc == 4 || cc == 8)) || (bb == 9 && cc == 4);
}

// ---------------------------------------------------------------- exclusions

namespace {

// (Z/p)[a]/(a^3 + a + 1)
struct Zp3 {
  std::uint64_t p;
  using V = std::array<std::uint64_t, 3>;
  V mul(const V& x, const V& y) const {
    std::uint64_t t[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i + j] = (t[i + j] + mulmod(x[i], y[j], p)) % p;
    // a^4 = -a^2 - a, a^3 = -a - 1
    for (int k = 4; k >= 3; --k) {
      std::uint64_t h = t[k];
      t[k] = 0;
      t[k - 2] = (t[k - 2] + p - h) % p;
      t[k - 3] = (t[k - 3] + p - h) % p;
    }
    return {t[0], t[1], t[2]};
  }
  bool zero(const V& x) const { return x[0] == 0 && x[1] == 0 && x[2] == 0; }
};

bool disc_in_pO(const Zp3& R, std::uint64_t b, std::uint64_t c) {
  const std::uint64_t p = R.p;
  Zp3::V A{c % p, b % p, 1 % p};
  Zp3::V B{16 % p, 16 % p, 16 % p};
  Zp3::V C{(A[0] + p - B[0]) % p, (A[1] + p - B[1]) % p, (A[2] + p - B[2]) % p};
  Zp3::V abc = R.mul(R.mul(A, B), C);
  Zp3::V d = R.mul(abc, abc);
  for (auto& x : d) x = mulmod(x, 16 % p, p);
  return R.zero(d);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> scan(std::uint64_t p, bool parallel) {
  if (!is_prime_u64(p)) throw std::invalid_argument("family scan needs a prime");
  Zp3 R{p};
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> rows(p);
  const long n = static_cast<long>(p);
#pragma omp parallel for schedule(static) if (parallel)
  for (long b = 0; b < n; ++b)
    for (std::uint64_t c = 0; c < p; ++c)
      if (disc_in_pO(R, b, c)) rows[b].emplace_back(b, c);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> intersection_exclusions(std::uint64_t p) { return scan(p, true); }
std::vector<std::pair<std::uint64_t, std::uint64_t>> intersection_exclusions_serial(std::uint64_t p) {
  return scan(p, false);
}

// ---------------------------------------------------------------- symbolic

BCPoly BCPoly::constant(const Int& k) {
  BCPoly r;
  if (k != 0) r.terms[{0, 0}] = k;
  return r;
}
BCPoly BCPoly::b() {
  BCPoly r;
  r.terms[{1, 0}] = 1;
  return r;
}
BCPoly BCPoly::c() {
  BCPoly r;
  r.terms[{0, 1}] = 1;
  return r;
}

namespace {
void prune(BCPoly& p) {
  for (auto it = p.terms.begin(); it != p.terms.end();)
    it = it->second == 0 ? p.terms.erase(it) : std::next(it);
}
}  // namespace

BCPoly BCPoly::operator+(const BCPoly& o) const {
  BCPoly r = *this;
  for (auto& [k, v] : o.terms) r.terms[k] += v;
  prune(r);
  return r;
}
BCPoly BCPoly::operator-(const BCPoly& o) const {
  BCPoly r = *this;
  for (auto& [k, v] : o.terms) r.terms[k] -= v;
  prune(r);
  return r;
}
BCPoly BCPoly::operator*(const BCPoly& o) const {
  BCPoly r;
  for (auto& [k1, v1] : terms)
    for (auto& [k2, v2] : o.terms) r.terms[{k1.first + k2.first, k1.second + k2.second}] += v1 * v2;
  prune(r);
  return r;
}
bool BCPoly::operator==(const BCPoly& o) const { return terms == o.terms; }
Int BCPoly::coeff(int i, int j) const {
  auto it = terms.find({i, j});
  return it == terms.end() ? Int(0) : it->second;
}
bool BCPoly::linear() const {
  for (auto& [k, v] : terms)
    if (k.first + k.second > 1) return false;
  return true;
}
std::string BCPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms) {
    os << (first ? "" : " + ") << v;
    if (k.first) os << "*b" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second) os << "*c" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

bool LinearElimination::ok() const {
  if (!identities_hold || det == 0) return false;
  return stated % det == 0;
}

LinearElimination linear_elimination() {
  using P = BCPoly;
  auto K = [](long k) { return P::constant(Int(k)); };
  P b = P::b(), c = P::c();
  // d3 = x + y a + z a^2
  P x = K(16) + K(14) * b - K(16) * c + c * c;
  P y = K(31) - K(16) * c + K(2) * b * c - K(2) * b;
  P z = b * b - K(16) * b - K(14) * c - K(1);
  LinearElimination L;
  L.forms[0] = K(28) * x + (K(8) - b) * y + (K(-2) + K(2) * c) * z;
  L.forms[1] = (K(-2) * b + K(16)) * x + (c - K(15)) * y + K(28) * z;
  L.forms[2] = (K(-4) * z - K(56) * c - K(260)) * x + (y - K(28) * b + K(586)) * y + (K(56) * b + K(4)) * z;
  std::array<P, 3> want{K(698) + K(377) * b - K(550) * c, K(-237) - K(226) * b - K(377) * c,
                        K(15027) - K(4844) * b - K(6328) * c};
  L.identities_hold = L.forms == want;
  Mat3 m;
  for (int i = 0; i < 3; ++i) m[i] = {Rat(L.forms[i].coeff(0, 0)), Rat(L.forms[i].coeff(1, 0)), Rat(L.forms[i].coeff(0, 1))};
  // (1, b, c) spans the kernel mod p, so p | det
  L.det = det3(m).get_num();
  L.cofactor = L.det != 0 ? Int(L.stated / L.det) : Int(0);
  L.det_support = prime_divisors(Int(abs(L.det)));
  L.stated_support = prime_divisors(L.stated);
  return L;
}

bool linear_elimination_check() { return linear_elimination().ok(); }

// ---------------------------------------------------------------- CRT

namespace {
Int modn(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}
}  // namespace

CongruenceFamily crt_assemble(const std::vector<Component>& comps) {
  if (comps.empty()) throw std::invalid_argument("no components");
  struct Slot {
    Int pk, b, c;
    std::string id;
  };
  std::map<Int, Slot> slots;
  for (auto& comp : comps) {
    if (comp.modulus < 1) throw std::invalid_argument("component modulus must be positive: " + comp.id);
    for (auto& q : prime_divisors(comp.modulus)) {
      Int pk = ipow(q, valuation(comp.modulus, q));
      Slot s{pk, modn(comp.b, pk), modn(comp.c, pk), comp.id};
      auto it = slots.find(q);
      if (it == slots.end()) {
        slots[q] = s;
        continue;
      }
      Slot& old = it->second;
      Int lo = old.pk < pk ? old.pk : pk;
      if (modn(old.b, lo) != modn(s.b, lo) || modn(old.c, lo) != modn(s.c, lo))
        throw std::invalid_argument("components '" + old.id + "' and '" + comp.id + "' disagree mod " + to_dec(lo));
      if (pk > old.pk) old = s;
    }
  }
  CongruenceFamily f;
  f.components = comps;
  f.M = 1;
  f.b0 = 0;
  f.c0 = 0;
  for (auto& [q, s] : slots) {
    f.b0 = crt2(f.b0, f.M, s.b, s.pk);
    f.c0 = crt2(f.c0, f.M, s.c, s.pk);
    f.M *= s.pk;
  }
  for (auto& comp : comps)
    if (modn(f.b0, comp.modulus) != modn(comp.b, comp.modulus) || modn(f.c0, comp.modulus) != modn(comp.c, comp.modulus))
      throw std::logic_error("assembled residues miss component " + comp.id);
  return f;
}

std::vector<Component> family_table() {
  return {{"semistable", 12, 5, 4},       {"mod9", 47, 17, 4},        {"mod4", 7 * 13 * 31, 3699, 4183},
          {"mod31", 3 * 5 * 11, 17, 4},   {"mod8", 29, 17, 4},        {"l-adic", 3, 2, 1},
          {"cyc3", 3, 2, 1},              {"cyc5", 5, 2, 4},          {"cyc11", 11, 6, 4},
          {"cyc17", 17, 0, 0},            {"cyc31", 31, 10, 29},      {"cyc787", 787, 0, 0},
          {"cyc827", 827, 0, 0}};
}

// ---------------------------------------------------------------- spot check

std::array<Elem, 4> family_d(const Int& b, const Int& c) {
  const NumberField& K = family_field();
  Elem a = K.gen();
  Elem A = a * a + Rat(b) * a + K.from_rat(c);
  Elem X = Rat(b + c) * (a * a) + Rat(c - 2) * a + K.from_rat(c - b - 1);
  Elem w = a * a + a + 1;
  Elem d1 = 64 * X;
  Elem d2 = 64 * (16 * w * w - X);
  Elem d3 = 4 * A * A - 64 * X;
  Elem d4 = 64 * A * w * (15 * (a * a) + Rat(16 - b) * a + K.from_rat(16 - c));
  return {d1, d2, d3, d4};
}

std::array<unsigned, 4> mod4_symbol_rows(const Int& b, const Int& c, const std::vector<PrimeIdeal>& P) {
  if (P.size() != 4) throw std::invalid_argument("four witness primes expected");
  auto d = family_d(b, c);
  std::array<unsigned, 4> rows{};
  for (int i = 0; i < 4; ++i) {
    if (P[i].p() == 2) throw std::invalid_argument("witness primes must be odd");
    for (int j = 0; j < 4; ++j) {
      if (d[j].is_zero() || P[i].valuation(d[j]) != 0) return {};  // zero rows: rank drops
      if (!P[i].residue_field().euler_is_square(P[i].residue(d[j]))) rows[i] |= 1u << j;
    }
  }
  return rows;
}

bool mod4_witness_pattern(const Int& b, const Int& c, const std::vector<PrimeIdeal>& P) {
  auto rows = mod4_symbol_rows(b, c, P);
  // a subset mask S is a square everywhere iff popcount(row & S) is even for each row
  for (unsigned S = 1; S < 16; ++S) {
    bool seen = false;
    for (unsigned r : rows) seen = seen || (__builtin_popcount(r & S) & 1);
    if (!seen) return false;
  }
  return true;
}

bool MemberReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return passes(c.status); });
}

namespace {

const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cached_exclusions(std::uint64_t p) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, intersection_exclusions_serial(p)).first;
  return it->second;
}

Status ok(bool b) { return b ? Status::certified : Status::failed; }

// bad primes off 6 are multiplicative unless they divide the ideal (c4, disc)
Condition semistability(const Curve& E) {
  Condition cnd{"semistable"};
  const NumberField& K = E.field();
  Invariants I = invariants(E);
  HNF g = ideal_hnf(K, {I.c4.ib_int(), I.disc.ib_int()});
  std::vector<Int> ps = prime_divisors(g.det());
  for (Int q : {Int(2), Int(3)})
    if (std::find(ps.begin(), ps.end(), q) == ps.end()) ps.push_back(q);
  bool all = true;
  json checked = json::array();
  for (auto& q : ps)
    for (auto& P : split_prime(K, q.get_ui())) {
      if (P.valuation(I.disc) == 0) continue;
      ReductionInfo R = classify_reduction(E, P);
      checked.push_back({{"prime", P.label()}, {"type", to_string(R.type)}});
      if (!R.semistable()) all = false;
    }
  cnd.witnesses = checked;
  cnd.values["gcd_ideal_norm"] = to_dec(g.det());
  cnd.status = ok(all);
  return cnd;
}

}  // namespace

MemberReport check_member(const Int& b, const Int& c, const SpotCheckOptions& o) {
  const NumberField& K = family_field();
  MemberReport rep{b, c, {}};
  Curve E = family_curve(b, c);

  Condition cong{"semistable_congruence"};
  cong.status = ok(semistable_congruence(b, c));
  rep.conditions.push_back(cong);
  rep.conditions.push_back(semistability(E));

  Condition m4{"mod4_witness_primes"};
  auto P4 = hint_primes(K, o.mod4_primes);
  for (auto& P : P4) m4.witnesses.push_back(P.label());
  auto rows = mod4_symbol_rows(b, c, P4);
  for (int i = 0; i < 4; ++i) {
    std::string bits;
    for (int j = 0; j < 4; ++j) bits += rows[i] >> j & 1 ? 'N' : 'S';
    m4.values[P4[i].label()] = bits;
  }
  m4.status = ok(mod4_witness_pattern(b, c, P4));
  rep.conditions.push_back(m4);

  Condition cyc{"cyclotomic_congruences"};
  bool cyc_ok = mod_u64(b, 4) == 1 && mod_u64(c, 4) == 0;
  cyc.values["b_mod4"] = mod_u64(b, 4);
  cyc.values["c_mod4"] = mod_u64(c, 4);
  for (auto p : o.cyc_primes) {
    std::uint64_t bp = mod_u64(b, p), cp = mod_u64(c, p);
    auto& ex = cached_exclusions(p);
    bool hit = std::find(ex.begin(), ex.end(), std::make_pair(bp, cp)) != ex.end();
    cyc.witnesses.push_back({{"p", p}, {"b", bp}, {"c", cp}, {"excluded", hit}});
    if (hit) cyc_ok = false;
  }
  cyc.status = ok(cyc_ok);
  rep.conditions.push_back(cyc);

  SearchParams sp;
  sp.max_prime_norm = 1;  // hints only
  FrobSource src(E, sp);

  Condition cnt{"count_at_3"};
  PrimeIdeal P3 = prime_from_generator(K, K.parse(o.count_prime));
  auto fd = src.datum(P3);
  if (fd) {
    Int n = fd->N + 1 - fd->t;
    cnt.values["prime"] = P3.label();
    cnt.values["count"] = to_dec(n);
    cnt.status = ok(n == Int(o.expected_count));
  } else {
    cnt.status = Status::failed;
  }
  rep.conditions.push_back(cnt);

  Condition m8{"mod8_witness"};
  PrimeWitness w8 = mod8_certify(src, hint_primes(K, {o.mod8_prime}));
  m8.witnesses.push_back(o.mod8_prime);
  m8.status = ok(w8.found);
  rep.conditions.push_back(m8);

  Condition m9{"mod9_witness"};
  PrimeWitness w9 = mod9_certify(src, hint_primes(K, {o.mod9_prime}));
  m9.witnesses.push_back(o.mod9_prime);
  m9.status = w9.found ? Status::certified_per_reference : Status::failed;
  rep.conditions.push_back(m9);

  Condition m31{"mod31_witnesses"};
  auto W = hint_primes(K, o.mod31_primes);
  RoleResult p19 = role_witnesses(src, 31, RoleHints{W, W, W});
  for (auto* w : {&p19.s1, &p19.s2, &p19.t})
    if (*w) m31.witnesses.push_back({{"prime", (*w)->P.label()}, {"t2_minus_4N", (*w)->disc_res}, {"u", (*w)->u}});
  m31.status = ok(p19.found);
  rep.conditions.push_back(m31);
  return rep;
}

std::vector<MemberReport> family_spot_check(const CongruenceFamily& fam, int count, const SpotCheckOptions& o) {
  std::vector<MemberReport> out(count);
  family_field();
  for (auto p : o.cyc_primes) cached_exclusions(p);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) out[i] = check_member(fam.b0 + Int(i) * fam.M, fam.c0, o);
  return out;
}

json family_json(const CongruenceFamily& f) {
  json j{{"M", to_dec(f.M)}, {"b0", to_dec(f.b0)}, {"c0", to_dec(f.c0)}};
  j["components"] = json::array();
  for (auto& c : f.components)
    j["components"].push_back({{"id", c.id}, {"modulus", to_dec(c.modulus)}, {"b", to_dec(c.b)}, {"c", to_dec(c.c)}});
  return j;
}

json member_json(const MemberReport& r) {
  json j{{"b", to_dec(r.b)}, {"c", to_dec(r.c)}, {"pass", r.all_pass()}};
  j["conditions"] = json::array();
  for (auto& c : r.conditions)
    j["conditions"].push_back({{"id", c.id}, {"status", to_string(c.status)}, {"witnesses", c.witnesses}, {"values", c.values}});
  return j;
}

}  // namespace adelic
