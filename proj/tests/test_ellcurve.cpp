#include "doctest.h"

#include "adelic/ellcurve.hpp"

#include <map>
#include <random>

using namespace adelic;

namespace {

Curve disc31_curve(const NumberField& K) {
  return curve_from_roots(K.zero(), K.parse("2*a^2+7*a+19"), K.parse("18*a^2+7*a+3"));
}

PrimeIdeal gen(const NumberField& K, const char* s) { return prime_from_generator(K, K.parse(s)); }

ReducedCurve random_curve(std::mt19937& g, std::uint64_t p) {
  std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(p) - 1);
  for (;;) {
    std::array<Int, 5> a{Int(long(d(g))), Int(long(d(g))), Int(long(d(g))), Int(long(d(g))), Int(long(d(g)))};
    ReducedCurve C = reduce_rational(a, p);
    if (!C.F.is_zero(reduced_disc(C))) return C;
  }
}

}  // namespace

TEST_CASE("c4^3 - c6^2 = 1728 disc on random models") {
  NumberField K({1, 1, 0});
  std::mt19937 g(7);
  std::uniform_int_distribution<int> d(-9, 9);
  auto r = [&] { return K.from_pc({Rat(d(g)), Rat(d(g)), Rat(d(g), 1 + (d(g) & 3))}); };
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    Curve E{r(), r(), r(), r(), r(), std::nullopt};
    try {
      Invariants I = invariants(E);
      CHECK(I.c4 * I.c4 * I.c4 - I.c6 * I.c6 == 1728 * I.disc);
      ++checked;
    } catch (const std::invalid_argument&) {
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("y^2 = x^3 - x has discriminant 64") {
  NumberField K({1, 1, 0});
  Curve E = curve_from_coeffs(K.zero(), K.zero(), K.zero(), K.from_rat(-1), K.zero());
  CHECK(invariants(E).disc == K.from_rat(64));
  CHECK_THROWS_AS(invariants(curve_from_coeffs(K.zero(), K.zero(), K.zero(), K.zero(), K.zero())), std::invalid_argument);
}

TEST_CASE("discriminant of the x^3+x+1 example: (2)^12 times four squared primes") {
  NumberField K({1, 1, 0});
  Curve E = disc31_curve(K);
  auto fac = factor_element(K, invariants(E).disc);
  std::map<std::uint64_t, int> byp;
  for (auto& [P, v] : fac) {
    if (P.p() == 2) CHECK(v == 12);
    else CHECK(v == 2);
    byp[P.p()] += 1;
  }
  CHECK(byp == std::map<std::uint64_t, int>{{2, 1}, {3, 1}, {31, 1}, {167, 1}, {6857, 1}});
}

TEST_CASE("x^3+x+1 example: v(j) = -2 at the odd bad primes, multiplicative") {
  NumberField K({1, 1, 0});
  Curve E = disc31_curve(K);
  for (auto& [P, v] : factor_element(K, invariants(E).disc)) {
    if (P.p() == 2) continue;
    ReductionInfo R = classify_reduction(E, P);
    CHECK(R.type == RedType::multiplicative);
    CHECK(R.v_j == -2);
  }
  ReductionInfo R = classify_reduction(E, gen(K, "5*a^2+a+4"));
  CHECK(R.type == RedType::multiplicative);
  CHECK(R.v_j == -2);
}

TEST_CASE("x^3+x+1 example at (2): semistable after substitution") {
  NumberField K({1, 1, 0});
  ReductionInfo R = classify_reduction(disc31_curve(K), gen(K, "2"));
  CHECK(R.semistable());
  CHECK(R.v_disc == 12);
  // non-minimal: v(c4) = 4 and v(disc) = 12 give v(j) = 0
  CHECK(R.v_disc_min == 0);
  CHECK(R.type == RedType::good);
}

TEST_CASE("x^3+x+1 example at (2): type multiplicative as listed") {
  NumberField K({1, 1, 0});
  CHECK(classify_reduction(disc31_curve(K), gen(K, "2")).type == RedType::multiplicative);
}

TEST_CASE("good reduction at (1-2a): curve over F_13 with 16 points") {
  NumberField K({1, 1, 0});
  Curve E = disc31_curve(K);
  PrimeIdeal P = gen(K, "1-2*a");
  CHECK(classify_reduction(E, P).type == RedType::good);
  ReducedCurve C = reduce_at(E, P);
  CHECK(C.F.q() == 13);
  CHECK(count_points(C) == 16);
  CHECK(count_points_naive(C) == 16);
}

TEST_CASE("(3a^2+2): N = 29, t = 6") {
  NumberField K({1, 1, 0});
  FrobData fd = frobenius(disc31_curve(K), gen(K, "3*a^2+2"));
  CHECK(fd.N == 29);
  CHECK(fd.t == 6);
  CHECK(count_points_naive(reduce_at(disc31_curve(K), gen(K, "3*a^2+2"))) == 24);
}

TEST_CASE("reduction at (157): F_{157^3}, full four-torsion") {
  NumberField K({1, 1, 0});
  ReducedCurve C = reduce_at(disc31_curve(K), gen(K, "157"));
  CHECK(C.F.q() == 3869893);
  CHECK(C.F.f() == 3);
  CHECK(full_four_torsion(C));
  std::uint64_t n = count_points(C);
  CHECK(n % 16 == 0);
  CHECK(n == count_points_serial(C));
}

TEST_CASE("reduce_at rejects bad primes") {
  NumberField K({1, 1, 0});
  CHECK_THROWS(reduce_at(disc31_curve(K), gen(K, "5*a^2+a+4")));
}

TEST_CASE("y^2 = x^3 - x over F_5 has 8 points") {
  ReducedCurve C = reduce_rational({0, 0, 0, -1, 0}, 5);
  CHECK(count_points_naive(C) == 8);
  CHECK(count_points(C) == 8);
}

TEST_CASE("y^2 = x^3 - x keeps split 2-torsion at good odd primes") {
  NumberField K({1, 1, 0});
  Curve E = curve_from_roots(K.from_rat(-1), K.zero(), K.one());
  PrimeStream ps(K, 3);
  for (int i = 0; i < 20; ++i) {
    PrimeIdeal P = ps.next();
    ReducedCurve C = reduce_at(E, P);
    CHECK(torsion_count_exhaustive(C, 2) == 4);
  }
}

TEST_CASE("full four-torsion is false when q = 3 mod 4") {
  std::mt19937 g(3);
  for (std::uint64_t p : {3, 7, 11, 19, 23, 31, 43, 47})
    for (int i = 0; i < 5; ++i) CHECK_FALSE(full_four_torsion(random_curve(g, p)));
}

TEST_CASE("full four-torsion agrees with exhaustive 4-torsion on F_13") {
  NumberField K({1, 1, 0});
  std::mt19937 g(11);
  std::uniform_int_distribution<int> d(0, 12);
  for (int i = 0; i < 40; ++i) {
    std::array<Int, 5> a{0, Int(d(g)), 0, Int(d(g)), Int(d(g))};
    ReducedCurve C = reduce_rational(a, 13);
    if (C.F.is_zero(reduced_disc(C))) continue;
    CHECK(full_four_torsion(C) == (torsion_count_exhaustive(C, 4) == 16));
  }
}

TEST_CASE("full 7-torsion over F_19993 for the rational 7-torsion curve") {
  ReducedCurve C = reduce_rational({1, -1, 1, -19353, 958713}, 19993);
  CHECK(full_l_torsion_exhaustive(C, 7));
  CHECK(full_l_torsion_exhaustive(C, 1));
  ReducedCurve D = reduce_rational({1, -1, 1, -19353, 958713}, 61);
  std::uint64_t n = count_points(D);
  if (n % 49 != 0) CHECK_FALSE(full_l_torsion_exhaustive(D, 7));
}

TEST_CASE("Hasse bound on random curves") {
  std::mt19937 g(5);
  for (std::uint64_t p : {101, 499, 1009, 7919}) {
    for (int i = 0; i < 5; ++i) {
      ReducedCurve C = random_curve(g, p);
      double t = double(p + 1) - double(count_points(C));
      CHECK(t * t <= 4.0 * p);
    }
  }
}

TEST_CASE("scaling a model by a prime element raises v(disc) by 12 only") {
  NumberField K({1, 1, 0});
  Curve E = disc31_curve(K);
  PrimeIdeal P = gen(K, "5*a^2+a+4");
  Elem pi = K.parse("5*a^2+a+4");
  Curve S = curve_from_coeffs(E.a1 * pi, E.a2 * pi.pow(2), E.a3 * pi.pow(3), E.a4 * pi.pow(4), E.a6 * pi.pow(6));
  ReductionInfo a = classify_reduction(E, P), b = classify_reduction(S, P);
  CHECK(b.v_disc == a.v_disc + 12);
  CHECK(b.v_disc_min == a.v_disc_min);
  CHECK(b.type == a.type);
}

TEST_CASE("additive potentially good reduction at the conductor prime over 2") {
  auto K = std::make_unique<NumberField>(std::array<Int, 3>{-4, 7, 4},
                                         Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, Rat(1, 2), Rat(1, 2)}});
  std::vector<IndexPrimeSpec> s;
  for (auto [b1, b2] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}}) {
    IndexPrimeSpec sp;
    sp.p = 2;
    sp.gens = {Vec3{-b1, 1, 0}, Vec3{-b2, Rat(1, 2), Rat(1, 2)}};
    s.push_back(sp);
  }
  K->set_index_splittings(s);
  Elem b = K->gen();
  Curve E = curve_from_roots(K->zero(), -(10 * b * b - 3), b + 4);
  Elem g = K->parse("3/2*a^2+13/2*a+13");
  int additive = 0;
  for (auto& P : split_prime(*K, 2)) {
    ReductionInfo R = classify_reduction(E, P);
    if (P.valuation(g) > 0) {
      CHECK(R.type == RedType::additive_pot_good);
      ++additive;
    } else {
      CHECK(R.type == RedType::multiplicative);
    }
  }
  CHECK(additive == 1);
}
