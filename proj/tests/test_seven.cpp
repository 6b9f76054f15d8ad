#include "doctest.h"

#include "adelic/seven.hpp"

using namespace adelic;

namespace {

const QCurve E7{1, -1, 1, -19353, 958713};

FrobQDatum fq(std::uint64_t p) { return frob_q(E7, p); }

// a_p from the naive count: p + 1 - #E(F_p)
std::int64_t naive_ap(std::uint64_t p) {
  return static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(count_points_naive(reduce_rational(E7, p)));
}

}  // namespace

TEST_CASE("a_p against naive counts") {
  for (std::uint64_t p : {3, 5, 11, 13, 29, 61, 127, 971}) {
    if (qcurve_disc(E7) % Int(p) == 0) continue;
    CAPTURE(p);
    CHECK(fq(p).a_p == naive_ap(p));
  }
  CHECK(fq(61).a_p == 13);
  CHECK(fq(971).a_p == 13);
  CHECK(fq(127).a_p == 2);
  CHECK(fq(19993).a_p == 2);
}

TEST_CASE("eigenvalues mod 49 against a brute-force root scan") {
  for (std::uint64_t p : {3, 5, 29, 61, 971, 1933}) {
    FrobQDatum d = fq(p);
    std::vector<std::uint64_t> roots;
    for (std::uint64_t t = 0; t < 49; ++t) {
      std::int64_t v = static_cast<std::int64_t>(t * t) - d.a_p * static_cast<std::int64_t>(t) + static_cast<std::int64_t>(p);
      if (((v % 49) + 49) % 49 == 0) roots.push_back(t);
    }
    auto e = eigen_mod_l2(d, 7);
    CAPTURE(p);
    if (e) {
      CHECK(std::find(roots.begin(), roots.end(), e->first) != roots.end());
      CHECK(std::find(roots.begin(), roots.end(), e->second) != roots.end());
      CHECK(e->first % 7 != e->second % 7);
      CHECK((e->first + e->second) % 49 == static_cast<std::uint64_t>(((d.a_p % 49) + 49) % 49));
    } else {
      // no pair of roots distinct mod 7
      bool distinct = false;
      for (auto r : roots)
        for (auto s : roots) distinct = distinct || (r % 7 != s % 7);
      CHECK_FALSE(distinct);
    }
  }
}

TEST_CASE("step witnesses at 61, 971, 127, 19993") {
  CHECK(step1_witness(fq(61), 7));
  CHECK_FALSE(step2_witness(fq(61), 7));
  CHECK(step2_witness(fq(971), 7));
  CHECK_FALSE(step1_witness(fq(971), 7));
  FrobQDatum c = fq(127);
  CHECK(unipotent_pattern(c, 7));
  CHECK_FALSE(cartan_discriminator(c, 7));
  CHECK(1 + 127 - c.a_p == 126);
  FrobQDatum s = fq(19993);
  CHECK(unipotent_pattern(s, 7));
  CHECK(cartan_discriminator(s, 7));
  CHECK(step3_polynomial(s, 7));
  CHECK(step3_witness(s, 7, E7));
}

TEST_CASE("steps 1 and 2 never hold together") {
  for (std::uint64_t p = 3; p < 2000; p = next_prime(p)) {
    if (qcurve_disc(E7) % Int(p) == 0 || p == 7) continue;
    FrobQDatum d = fq(p);
    CHECK_FALSE((step1_witness(d, 7) && step2_witness(d, 7)));
  }
}

TEST_CASE("Cartan discriminator needs the unipotent pattern") {
  CHECK_THROWS_AS(cartan_discriminator(fq(61), 7), std::invalid_argument);
  CHECK_THROWS_AS(step3_polynomial(fq(61), 7), std::invalid_argument);
}

TEST_CASE("step 3 polynomial matches a root scan") {
  // synthetic data with a = 2 + 7 s, 1 + p - a = 49 c
  for (std::int64_t s = -3; s <= 3; ++s)
    for (std::int64_t c = 1; c < 7; ++c) {
      std::int64_t a = 2 + 7 * s, p = 49 * c + a - 1;
      if (p <= 7) continue;
      FrobQDatum d{static_cast<std::uint64_t>(p), a};
      bool root = false;
      for (std::int64_t t = 0; t < 7; ++t) root = root || ((t * t - s * t + c) % 7 + 7) % 7 == 0;
      CHECK(step3_polynomial(d, 7) == !root);
    }
}

TEST_CASE("rational 7-torsion point (103, 172)") {
  QPoint P{103, 172, false};
  CHECK(on_curve(E7, P));
  CHECK(mul(E7, P, 7).inf);
  for (unsigned k = 1; k < 7; ++k) CHECK_FALSE(mul(E7, P, k).inf);
  CHECK(on_curve(E7, add(E7, P, P)));
  auto T = rational_l_torsion(E7, 7, 1000);
  REQUIRE(T);
  CHECK(mul(E7, *T, 7).inf);
}

TEST_CASE("half-Borel certificate with hints") {
  HalfBorelParams hp;
  hp.hints = {61, 971, 127, 19993};
  Certificate C = certify_half_borel(E7, hp);
  CHECK(C.verdict == Status::certified);
  for (const char* id : {"rational_l_torsion", "step1", "step2", "cartan_ruled_out", "step3", "step4"}) {
    CAPTURE(id);
    REQUIRE(C.find(id));
    CHECK(C.find(id)->status == Status::certified);
  }
  CHECK(C.find("step1")->witnesses[0]["p"] == 61);
  CHECK(C.find("step3")->witnesses[0]["p"] == 19993);
  CHECK_FALSE(C.find("adelic_assembly")->required);
}

TEST_CASE("half-Borel scan without hints, and a bound too small to finish") {
  HalfBorelParams hp;
  Certificate C = certify_half_borel(E7, hp);
  CHECK(C.verdict == Status::certified);
  hp.search_bound = 100;
  Certificate D = certify_half_borel(E7, hp);
  CHECK(D.verdict == Status::undetermined);
}
