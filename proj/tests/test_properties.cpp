#include "doctest.h"

#include "adelic/ellcurve.hpp"
#include "adelic/squares.hpp"

#include <random>

using namespace adelic;

namespace {

// schoolbook product of coefficient vectors mod (p, m), in big integers
std::array<Int, 3> ref_mul(const std::array<Int, 3>& x, const std::array<Int, 3>& y, const std::vector<std::uint64_t>& m,
                           std::uint64_t p) {
  std::array<Int, 5> t{0, 0, 0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i + j] += x[i] * y[j];
  int f = static_cast<int>(m.size()) - 1;
  for (int k = 4; k >= f; --k) {
    Int h = t[k];
    t[k] = 0;
    for (int i = 0; i < f; ++i) t[k - f + i] -= h * Int(static_cast<unsigned long>(m[i]));
  }
  std::array<Int, 3> r;
  for (int i = 0; i < 3; ++i) {
    r[i] = t[i] % Int(static_cast<unsigned long>(p));
    if (r[i] < 0) r[i] += Int(static_cast<unsigned long>(p));
  }
  return r;
}

std::uint64_t first_irreducible_cubic_coeff(std::uint64_t p) {
  // x^3 - x - k has no root mod p for some k
  for (std::uint64_t k = 1;; ++k) {
    bool root = false;
    for (std::uint64_t x = 0; x < p && !root; ++x) root = (x * x % p * x + 2 * p - x - k % p) % p == 0;
    if (!root) return k;
  }
}

ReducedCurve random_curve(std::mt19937_64& g, const FiniteField& F) {
  for (;;) {
    auto r = [&] { return F.element(g() % F.q()); };
    ReducedCurve C{F, r(), r(), r(), r(), r()};
    if (!F.is_zero(reduced_disc(C))) return C;
  }
}

Elem random_elem(std::mt19937_64& g, const NumberField& K, int h) {
  std::uniform_int_distribution<int> d(-h, h);
  return K.from_pc({Rat(d(g)), Rat(d(g)), Rat(d(g))});
}

}  // namespace

TEST_CASE("F_q multiplication against big-integer schoolbook, 10^4 pairs") {
  std::mt19937_64 g(1);
  const std::uint64_t big = (1ull << 61) - 1;  // prime
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> fields{
      {big, {0, 1}}, {big, {1, 0, 1}}, {101, {101 - first_irreducible_cubic_coeff(101), 100, 0, 1}},
      {4294967311ull, {0, 1}}};
  int checked = 0;
  for (auto& [p, m] : fields) {
    FiniteField F(p, m);
    int f = F.f();
    for (int i = 0; i < 2600; ++i) {
      std::array<Int, 3> xa{0, 0, 0}, ya{0, 0, 0};
      std::vector<std::uint64_t> xv(f), yv(f);
      for (int k = 0; k < f; ++k) {
        xv[k] = g() % p;
        yv[k] = g() % p;
        xa[k] = Int(static_cast<unsigned long>(xv[k]));
        ya[k] = Int(static_cast<unsigned long>(yv[k]));
      }
      FqElem z = F.mul(F.from_coeffs(xv), F.from_coeffs(yv));
      auto r = ref_mul(xa, ya, m, p);
      for (int k = 0; k < f; ++k) CHECK(Int(static_cast<unsigned long>(z.c[k])) == r[k]);
      ++checked;
    }
  }
  CHECK(checked >= 10000);
}

TEST_CASE("point counts equal naive counts for every p <= 199 on 100+ curves") {
  std::mt19937_64 g(2);
  int curves = 0;
  for (auto p : primes_up_to(199)) {
    FiniteField F = FiniteField::prime_field(p);
    for (int i = 0; i < 3; ++i) {
      ReducedCurve C = random_curve(g, F);
      std::uint64_t n = count_points_naive(C);
      CHECK(count_points(C) == n);
      CHECK(count_points_serial(C) == n);
      ++curves;
    }
  }
  CHECK(curves >= 100);
}

TEST_CASE("point counts over F_{p^2} and F_{p^3} equal naive counts") {
  std::mt19937_64 g(3);
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>{
           {3, {1, 0, 1}}, {7, {1, 0, 1}}, {11, {1, 0, 1}}, {5, {2, 0, 1}}, {13, {2, 0, 1}}, {3, {1, 2, 0, 1}}}) {
    FiniteField F(p, m);
    for (int i = 0; i < 4; ++i) {
      ReducedCurve C = random_curve(g, F);
      CHECK(count_points(C) == count_points_naive(C));
    }
  }
}

TEST_CASE("full four-torsion agrees with exhaustive enumeration") {
  std::mt19937_64 g(4);
  int full = 0;
  for (std::uint64_t p : {5, 13, 17, 29, 37, 41}) {
    FiniteField F = FiniteField::prime_field(p);
    for (int i = 0; i < 30; ++i) {
      // split 2-torsion makes full 4-torsion reachable
      FqElem e1 = F.element(g() % p), e2 = F.element(g() % p), e3 = F.element(g() % p);
      FqElem s = F.add(F.add(e1, e2), e3);
      FqElem t = F.add(F.add(F.mul(e1, e2), F.mul(e1, e3)), F.mul(e2, e3));
      ReducedCurve C{F, F.zero(), F.neg(s), F.zero(), t, F.neg(F.mul(F.mul(e1, e2), e3))};
      if (F.is_zero(reduced_disc(C))) continue;
      bool ex = torsion_count_exhaustive(C, 4) == 16;
      CHECK(full_four_torsion(C) == ex);
      full += ex;
    }
  }
  CHECK(full > 0);
}

TEST_CASE("trace_extend matches a direct count over F_{q^2}") {
  std::mt19937_64 g(5);
  for (auto p : primes_up_to(47)) {
    if (p == 2) continue;
    // x^2 - r with r a non-residue
    std::uint64_t r = 2;
    while (jacobi_u64(r, p) != -1) ++r;
    FiniteField F1 = FiniteField::prime_field(p), F2(p, {p - r, 0, 1});
    for (int i = 0; i < 3; ++i) {
      ReducedCurve C = random_curve(g, F1);
      auto lift = [&](const FqElem& a) { return F2.from_int(static_cast<std::int64_t>(a.c[0])); };
      ReducedCurve D{F2, lift(C.a1), lift(C.a2), lift(C.a3), lift(C.a4), lift(C.a6)};
      Int t = Int(static_cast<long>(p + 1)) - Int(static_cast<unsigned long>(count_points_naive(C)));
      Int q(static_cast<unsigned long>(p));
      CHECK(Int(static_cast<unsigned long>(count_points_naive(D))) == q * q + 1 - trace_extend(t, q, 2));
      CHECK(trace_extend(t, q, 2) == t * t - 2 * q);
    }
  }
}

TEST_CASE("norm and valuation are multiplicative") {
  NumberField K({1, 1, 0});
  std::mt19937_64 g(6);
  auto P = split_prime(K, 3);
  auto Q = split_prime(K, 31);
  for (int i = 0; i < 500; ++i) {
    Elem x = random_elem(g, K, 40), y = random_elem(g, K, 40);
    if (x.is_zero() || y.is_zero()) continue;
    CHECK((x * y).norm() == x.norm() * y.norm());
    for (auto* S : {&P, &Q})
      for (auto& pr : *S) CHECK(pr.valuation(x * y) == pr.valuation(x) + pr.valuation(y));
  }
}

TEST_CASE("squared elements round trip, 10^4 samples") {
  NumberField K({1, -3, 8});
  WitnessPool pool(K);
  std::mt19937_64 g(7);
  int n = 0;
  while (n < 10000) {
    Elem x = random_elem(g, K, 60);
    if (x.is_zero()) continue;
    Elem s = x * x;
    auto r = exact_sqrt(s);
    REQUIRE(r);
    CHECK((*r == x || *r == -x));
    CHECK(pool.scan(s).status != SqStatus::NonSquare);
    if (n % 50 == 0) {
      // 7 is not a square in a cubic field
      SquareVerdict v = is_square_in_K(s * K.from_rat(7), pool);
      CHECK(v.status == SqStatus::NonSquare);
    }
    ++n;
  }
}
