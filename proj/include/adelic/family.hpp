#pragma once

#include "adelic/certify.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

// E_{b,c}: y^2 = x (x - (a^2 + b a + c)) (x - 16 (a^2 + a + 1)) over Q(a), a^3 + a + 1 = 0
const NumberField& family_field();
Curve family_curve(const Int& b, const Int& c);

bool semistable_congruence(const Int& b, const Int& c);

// pairs (b, c) mod p, 0 <= b, c < p, with disc(E_{b,c}) in p O_K
std::vector<std::pair<std::uint64_t, std::uint64_t>> intersection_exclusions(std::uint64_t p);
std::vector<std::pair<std::uint64_t, std::uint64_t>> intersection_exclusions_serial(std::uint64_t p);

// polynomials in b, c with integer coefficients
struct BCPoly {
  std::map<std::pair<int, int>, Int> terms;  // (deg b, deg c) -> coefficient
  static BCPoly constant(const Int& k);
  static BCPoly b();
  static BCPoly c();
  BCPoly operator+(const BCPoly& o) const;
  BCPoly operator-(const BCPoly& o) const;
  BCPoly operator*(const BCPoly& o) const;
  bool operator==(const BCPoly& o) const;
  Int coeff(int i, int j) const;
  bool linear() const;  // degree <= 1
  std::string str() const;
};

struct LinearElimination {
  bool identities_hold = false;
  std::array<BCPoly, 3> forms;           // the three combinations
  Int det;                               // of the coefficient matrix
  Int stated = Int("618889059855");
  Int cofactor;                          // stated / det
  std::vector<Int> det_support, stated_support;
  bool ok() const;
};
LinearElimination linear_elimination();
bool linear_elimination_check();

struct Component {
  std::string id;
  Int modulus, b, c;
};
struct CongruenceFamily {
  Int M, b0, c0;
  std::vector<Component> components;
};
// throws std::invalid_argument naming the clashing components
CongruenceFamily crt_assemble(const std::vector<Component>& comps);
std::vector<Component> family_table();  // the congruence table assembled into the family

struct MemberReport {
  Int b, c;
  std::vector<Condition> conditions;
  bool all_pass() const;
};
struct SpotCheckOptions {
  std::vector<std::string> mod4_primes{"a-3", "7", "-a^2+3*a-1", "2*a-1"};
  std::string count_prime = "a^2+a+2";
  std::uint64_t expected_count = 8;
  std::string mod8_prime = "3*a^2+2";
  std::string mod9_prime = "2*a^2+a+4";
  std::vector<std::string> mod31_primes{"-5*a^2+a-3", "5", "a^2+a+2"};
  std::vector<std::uint64_t> cyc_primes{3, 5, 11, 17, 31, 113, 787, 827};
};
// halving discriminants d1..d4 of E_{b,c}
std::array<Elem, 4> family_d(const Int& b, const Int& c);
// rows: primes, bit j set when d_{j+1} is a non-square unit there
std::array<unsigned, 4> mod4_symbol_rows(const Int& b, const Int& c, const std::vector<PrimeIdeal>& P);
// the rows span F_2^4, so no nonempty product of the d_j is a square at all four primes
bool mod4_witness_pattern(const Int& b, const Int& c, const std::vector<PrimeIdeal>& P);
MemberReport check_member(const Int& b, const Int& c, const SpotCheckOptions& o = {});
// members (b0 + i M, c0) for i < count, in parallel
std::vector<MemberReport> family_spot_check(const CongruenceFamily& fam, int count, const SpotCheckOptions& o = {});

json family_json(const CongruenceFamily& f);
json member_json(const MemberReport& r);

}  // namespace adelic
