#include "adelic/fourtorsion.hpp"

#include <omp.h>

#include <stdexcept>

namespace adelic {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "undetermined";
  }
}

HalvingData halving_discriminants(const Elem& e1, const Elem& e2, const Elem& e3) {
  if (e1 == e2 || e1 == e3 || e2 == e3) throw std::invalid_argument("repeated 2-torsion abscissa");
  HalvingData h{(e1 - e2) * (e1 - e3), (e2 - e1) * (e2 - e3), (e3 - e1) * (e3 - e2),
                4 * (e1 - e2) * (e1 - e3) * (e2 - e3)};
  Curve E = curve_from_roots(e1, e2, e3);
  if (h.d4 * h.d4 != invariants(E).disc) throw std::logic_error("d4^2 != disc");
  return h;
}

Elem d_product(const HalvingData& h, int mask) {
  auto d = h.all();
  Elem r = h.d1.field().one();
  for (int i = 0; i < 4; ++i)
    if (mask >> i & 1) r *= d[i];
  return r;
}

std::string d_label(int mask) {
  std::string s;
  for (int i = 0; i < 4; ++i)
    if (mask >> i & 1) {
      if (!s.empty()) s += "*";
      s += "d" + std::to_string(i + 1);
    }
  return s;
}

ProductSets product_sets(const Curve& E, const HalvingData& h) {
  ProductSets ps;
  Rat n = (2 * invariants(E).disc).norm();
  auto fac = factor(abs(n.get_num()));
  ps.factored = fac.complete();
  ps.S = fac.primes();
  for (auto& q : factor(n.get_den()).primes()) ps.S.push_back(q);
  std::sort(ps.S.begin(), ps.S.end());
  ps.S.erase(std::unique(ps.S.begin(), ps.S.end()), ps.S.end());
  size_t k = ps.S.size();
  for (size_t m = 1; m < (size_t(1) << k); ++m) {
    Int s = 1;
    for (size_t i = 0; i < k; ++i)
      if (m >> i & 1) s *= ps.S[i];
    ps.PS.push_back(s);
  }
  for (int m = 1; m < 16; ++m) ps.PT.push_back(d_product(h, m));
  return ps;
}

namespace {

HalvingData halving_of(const Curve& E) {
  if (!E.roots) throw std::invalid_argument("curve is not in factored full 2-torsion form");
  return halving_discriminants((*E.roots)[0], (*E.roots)[1], (*E.roots)[2]);
}

Tri fold(const std::vector<SqStatus>& st, SqStatus bad) {
  bool und = false;
  for (auto s : st) {
    if (s == bad) return Tri::no;
    if (s == SqStatus::Undetermined) und = true;
  }
  return und ? Tri::undetermined : Tri::yes;
}

CycResult scan_pairs(const Curve& E, const WitnessPool& pool, bool parallel) {
  HalvingData h = halving_of(E);
  ProductSets ps = product_sets(E, h);
  CycResult res;
  res.S = ps.S;
  const long np = static_cast<long>(ps.PS.size()), nt = 15;
  res.pairs = static_cast<size_t>(np * nt);
  res.evidence.resize(res.pairs);
  const long total = np * nt;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long i = 0; i < total; ++i) {
    long si = i / nt, ti = i % nt;
    Elem x = ps.PT[ti] * Rat(1, ps.PS[si]);
    res.evidence[i] = PairEvidence{ps.PS[si], static_cast<int>(ti + 1), is_square_in_K(x, pool)};
  }
  std::vector<SqStatus> st;
  for (auto& e : res.evidence) {
    st.push_back(e.verdict.status);
    if (e.verdict.status == SqStatus::Square) ++res.squares;
  }
  res.verdict = fold(st, SqStatus::Square);
  // a square ratio only means the criterion is inconclusive
  if (res.verdict == Tri::no) res.verdict = Tri::undetermined;
  if (!ps.factored) res.verdict = Tri::undetermined;
  return res;
}

}  // namespace

Mod4Result mod4_degree_is_16(const Curve& E, const WitnessPool& pool) {
  HalvingData h = halving_of(E);
  Mod4Result r;
  std::vector<SqStatus> st;
  for (int m = 1; m < 16; ++m) {
    SquareEvidence ev{d_label(m), is_square_in_K(d_product(h, m), pool)};
    st.push_back(ev.verdict.status);
    r.evidence.push_back(ev);
  }
  r.verdict = fold(st, SqStatus::Square);
  return r;
}

CycResult cyclotomic_intersection_ok(const Curve& E, const WitnessPool& pool) { return scan_pairs(E, pool, true); }

CycResult cyclotomic_intersection_ok_serial(const Curve& E, const WitnessPool& pool) {
  return scan_pairs(E, pool, false);
}

CycResult sqrt_disc_in_cyclotomic(const Curve& E, const WitnessPool& pool) {
  Invariants I = invariants(E);
  CycResult res;
  if (is_square_in_K(I.disc, pool).status == SqStatus::Square)
    throw std::invalid_argument("discriminant is a square in K");
  Rat n = (2 * I.disc).norm();
  auto fac = factor(abs(n.get_num()));
  res.S = fac.primes();
  for (auto& q : factor(n.get_den()).primes()) res.S.push_back(q);
  std::sort(res.S.begin(), res.S.end());
  res.S.erase(std::unique(res.S.begin(), res.S.end()), res.S.end());
  size_t k = res.S.size();
  std::vector<SqStatus> st;
  for (size_t m = 1; m < (size_t(1) << k); ++m) {
    Int s = 1;
    for (size_t i = 0; i < k; ++i)
      if (m >> i & 1) s *= res.S[i];
    PairEvidence ev{s, 0, is_square_in_K(I.disc * Rat(1, s), pool)};
    st.push_back(ev.verdict.status);
    if (ev.verdict.status == SqStatus::Square) ++res.squares;
    res.evidence.push_back(ev);
  }
  res.pairs = res.evidence.size();
  if (res.squares) res.verdict = Tri::yes;
  else if (!fac.complete() || fold(st, SqStatus::Square) == Tri::undetermined) res.verdict = Tri::undetermined;
  else res.verdict = Tri::no;
  return res;
}

}  // namespace adelic
