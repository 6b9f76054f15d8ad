#include "doctest.h"

#include "adelic/family.hpp"

#include <random>

using namespace adelic;

namespace {

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// disc(E_{b,c}) in p O_K via exact arithmetic; Z[a] is maximal here (disc -31)
Pairs oracle_exclusions(std::uint64_t p) {
  Pairs out;
  for (std::uint64_t b = 0; b < p; ++b)
    for (std::uint64_t c = 0; c < p; ++c) {
      Elem d = invariants(family_curve(Int(b), Int(c))).disc;
      bool in = true;
      for (int i = 0; i < 3; ++i) {
        Rat x = d[i] / Rat(Int(p));
        in = in && x.get_den() == 1;
      }
      if (in) out.emplace_back(b, c);
    }
  return out;
}

Int modn(const Int& x, const Int& m) {
  Int r = x % m;
  return r < 0 ? Int(r + m) : r;
}

const Condition* cond(const MemberReport& r, const std::string& id) {
  for (auto& c : r.conditions)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("semistable congruence classes") {
  CHECK(semistable_congruence(5, 4));
  CHECK(semistable_congruence(9, 4));
  CHECK(semistable_congruence(17, 16));
  CHECK_FALSE(semistable_congruence(0, 0));
  CHECK_FALSE(semistable_congruence(5, 5));
}

TEST_CASE("family curve has the stated 2-torsion") {
  const NumberField& K = family_field();
  Curve E = family_curve(2, 3);
  REQUIRE(E.roots);
  Elem a = K.gen();
  CHECK((*E.roots)[1] == a * a + 2 * a + 3);
  CHECK((*E.roots)[2] == 16 * (a * a + a + 1));
}

TEST_CASE("exclusion scans agree with an exact-arithmetic oracle up to 31") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 31}) {
    CAPTURE(p);
    CHECK(intersection_exclusions(p) == oracle_exclusions(p));
  }
}

TEST_CASE("exclusion table") {
  CHECK(intersection_exclusions(3) == Pairs{{1, 1}, {1, 2}});
  CHECK(intersection_exclusions(5) == Pairs{{1, 1}});
  CHECK(intersection_exclusions(11) == Pairs{{2, 5}});
  CHECK(intersection_exclusions(17) == Pairs{{4, 5}});
  CHECK(intersection_exclusions(31) == Pairs{{12, 8}, {14, 11}, {23, 6}, {25, 9}});
  CHECK(intersection_exclusions(787) == Pairs{{467, 91}});
  CHECK(intersection_exclusions(827) == Pairs{{626, 280}});
  CHECK(intersection_exclusions(113).empty());
}

TEST_CASE("exclusion table at 31 has exactly the three listed pairs") {
  CHECK(intersection_exclusions(31) == Pairs{{14, 11}, {23, 6}, {25, 9}});
}

TEST_CASE("parallel and serial scans agree") {
  for (std::uint64_t p : {3, 31, 113, 787}) CHECK(intersection_exclusions(p) == intersection_exclusions_serial(p));
  CHECK_THROWS_AS(intersection_exclusions(15), std::invalid_argument);
}

TEST_CASE("linear elimination identities and determinant") {
  LinearElimination L = linear_elimination();
  CHECK(L.identities_hold);
  for (auto& f : L.forms) CHECK(f.linear());
  CHECK(L.det == Int("-5476894335"));
  CHECK(L.cofactor == -113);
  CHECK(L.det * L.cofactor == L.stated);
  std::vector<Int> want{3, 5, 11, 17, 113, 787, 827};
  CHECK(L.stated_support == want);
  CHECK(L.ok());
  CHECK(linear_elimination_check());
}

TEST_CASE("excluded pairs kill the three linear forms mod p") {
  LinearElimination L = linear_elimination();
  // 3 splits as a degree-one times a degree-two prime; (1, 2) mod 3 comes from that split, not from d3
  for (std::uint64_t p : {5, 11, 17, 787, 827})
    for (auto [b, c] : intersection_exclusions(p))
      for (auto& f : L.forms) {
        Int v = f.coeff(0, 0) + f.coeff(1, 0) * Int(b) + f.coeff(0, 1) * Int(c);
        CHECK(modn(v, Int(p)) == 0);
      }
}

TEST_CASE("BCPoly arithmetic") {
  BCPoly b = BCPoly::b(), c = BCPoly::c(), one = BCPoly::constant(1);
  BCPoly s = (b + c) * (b - c);
  CHECK(s == b * b - c * c);
  CHECK(s.coeff(2, 0) == 1);
  CHECK(s.coeff(1, 1) == 0);
  CHECK_FALSE(s.linear());
  CHECK((b + one).linear());
  CHECK((b - b).str() == "0");
}

TEST_CASE("CRT assembly of the table") {
  CongruenceFamily f = crt_assemble(family_table());
  CHECK(f.M == Int("28078379582192940"));
  CHECK(f.b0 == Int("27258350736988157"));
  CHECK(f.c0 == Int("12901552513010704"));
  Int pb = Int(17) * 37 * 257 * 509 * 509 * 787 * 827;
  Int pc = Int(16) * 17 * 787 * 827 * 4657 * 15649;
  CHECK(modn(pb, f.M) == f.b0);
  CHECK(modn(pc, f.M) == f.c0);
  CHECK(modn(f.b0, 12) == 5);
  CHECK(modn(f.c0, 12) == 4);
  for (auto& comp : family_table()) {
    CAPTURE(comp.id);
    CHECK(modn(f.b0, comp.modulus) == modn(comp.b, comp.modulus));
    CHECK(modn(f.c0, comp.modulus) == modn(comp.c, comp.modulus));
  }
}

TEST_CASE("assembled residues avoid every exclusion list") {
  CongruenceFamily f = crt_assemble(family_table());
  for (std::uint64_t p : {3, 5, 11, 17, 31, 787, 827}) {
    auto ex = intersection_exclusions(p);
    std::pair<std::uint64_t, std::uint64_t> r{mod_u64(f.b0, p), mod_u64(f.c0, p)};
    CHECK(std::find(ex.begin(), ex.end(), r) == ex.end());
  }
}

TEST_CASE("CRT single component and clash detection") {
  CongruenceFamily f = crt_assemble({{"x", 35, 3, 4}});
  CHECK(f.M == 35);
  CHECK(f.b0 == 3);
  CHECK(f.c0 == 4);
  try {
    crt_assemble({{"first", 3, 1, 1}, {"second", 6, 2, 1}});
    FAIL("no clash reported");
  } catch (const std::invalid_argument& e) {
    std::string m = e.what();
    CHECK(m.find("first") != std::string::npos);
    CHECK(m.find("second") != std::string::npos);
  }
  CHECK_THROWS_AS(crt_assemble({}), std::invalid_argument);
  // 4 | 12 and 8: compatible refinement keeps the larger power
  CongruenceFamily g = crt_assemble({{"a", 12, 5, 4}, {"b", 8, 1, 4}});
  CHECK(g.M == 24);
  CHECK(modn(g.b0, 8) == 1);
  CHECK(modn(g.b0, 3) == 2);
}

TEST_CASE("mod-4 witness primes for (33645, 19156)") {
  auto P = hint_primes(family_field(), SpotCheckOptions{}.mod4_primes);
  CHECK(P[0].p() == 31);
  CHECK(P[1].p() == 7);
  CHECK(P[2].p() == 31);
  CHECK(P[3].p() == 13);
  CHECK(mod4_witness_pattern(33645, 19156, P));
  // direct oracle: Legendre symbols of the d_j at degree-one primes
  auto d = family_d(33645, 19156);
  auto rows = mod4_symbol_rows(33645, 19156, P);
  for (int i : {0, 2, 3}) {
    CHECK(P[i].f() == 1);
    for (int j = 0; j < 4; ++j) {
      std::uint64_t p = P[i].p();
      std::uint64_t r = 0;
      while (!P[i].contains(family_field().gen() - long(r))) ++r;
      std::uint64_t v = (mod_u64(d[j][0], p) + mulmod(mod_u64(d[j][1], p), r, p) +
                         mulmod(mod_u64(d[j][2], p), mulmod(r, r, p), p)) % p;
      CHECK(((rows[i] >> j & 1) == 1) == (jacobi_u64(v, p) == -1));
    }
  }
}

TEST_CASE("the fourth listed mod-4 prime lies over 23") {
  const NumberField& K = family_field();
  CHECK(abs(K.parse("a^2+4*a-3").norm()) == 23);
}

TEST_CASE("mod-4 witness pattern transfers along 2821") {
  auto P = hint_primes(family_field(), SpotCheckOptions{}.mod4_primes);
  std::mt19937 g(17);
  std::uniform_int_distribution<long> d(-400, 400);
  auto base = mod4_symbol_rows(33645, 19156, P);
  for (int i = 0; i < 24; ++i) {
    Int b = 33645 + Int(d(g)) * 2821, c = 19156 + Int(d(g)) * 2821;
    CHECK(mod4_symbol_rows(b, c, P) == base);
    CHECK(mod4_witness_pattern(b, c, P));
  }
}

TEST_CASE("smallest member passes every condition") {
  CongruenceFamily f = crt_assemble(family_table());
  MemberReport r = check_member(f.b0, f.c0);
  for (auto& c : r.conditions) {
    CAPTURE(c.id);
    CHECK(passes(c.status));
  }
  CHECK(r.all_pass());
  CHECK(cond(r, "count_at_3")->values["count"] == "8");
}

TEST_CASE("breaking the mod 29 congruence fails only the mod 8 witness") {
  CongruenceFamily f = crt_assemble(family_table());
  // shift c by a multiple of M / 29 so every other component is untouched
  Int step = f.M / 29;
  bool found = false;
  for (int k = 1; k < 29 && !found; ++k) {
    MemberReport r = check_member(f.b0, f.c0 + k * step);
    if (passes(cond(r, "mod8_witness")->status)) continue;
    found = true;
    for (auto& c : r.conditions) {
      CAPTURE(c.id);
      if (c.id != "mod8_witness") CHECK(passes(c.status));
    }
  }
  CHECK(found);
}

TEST_CASE("spot check in parallel matches per-member checks") {
  CongruenceFamily f = crt_assemble(family_table());
  auto reps = family_spot_check(f, 2);
  REQUIRE(reps.size() == 2);
  CHECK(reps[1].b == f.b0 + f.M);
  for (auto& r : reps) CHECK(r.all_pass());
  CHECK(member_json(reps[0]) == member_json(check_member(f.b0, f.c0)));
  json j = family_json(f);
  CHECK(j["M"] == "28078379582192940");
}
