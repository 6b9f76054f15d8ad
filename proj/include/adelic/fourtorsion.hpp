#pragma once

#include "adelic/ellcurve.hpp"
#include "adelic/squares.hpp"

#include <string>
#include <vector>

namespace adelic {

struct HalvingData {
  Elem d1, d2, d3, d4;  // d4^2 = disc
  std::array<Elem, 4> all() const { return {d1, d2, d3, d4}; }
};
HalvingData halving_discriminants(const Elem& e1, const Elem& e2, const Elem& e3);

enum class Tri { yes, no, undetermined };
std::string to_string(Tri t);

// product of the d_i selected by mask bits (1..15)
Elem d_product(const HalvingData& h, int mask);
std::string d_label(int mask);

struct ProductSets {
  std::vector<Int> S;       // rational primes under (2 disc)
  std::vector<Int> PS;      // subset products, index = bitmask - 1
  std::vector<Elem> PT;     // products of d1..d4, index = bitmask - 1
  bool factored = true;     // false if N(2 disc) could not be factored
};
ProductSets product_sets(const Curve& E, const HalvingData& h);

struct SquareEvidence {
  std::string label;
  SquareVerdict verdict;
};

struct Mod4Result {
  Tri verdict = Tri::undetermined;
  std::vector<SquareEvidence> evidence;  // 15 entries, by mask
};
Mod4Result mod4_degree_is_16(const Curve& E, const WitnessPool& pool);

struct PairEvidence {
  Int s;
  int tmask = 0;
  SquareVerdict verdict;
};
struct CycResult {
  Tri verdict = Tri::undetermined;
  size_t pairs = 0;
  size_t squares = 0;
  std::vector<Int> S;
  std::vector<PairEvidence> evidence;  // (s index, t mask) order
};
// all t/s with s in P_S, t in P_T must be non-squares
CycResult cyclotomic_intersection_ok(const Curve& E, const WitnessPool& pool);
CycResult cyclotomic_intersection_ok_serial(const Curve& E, const WitnessPool& pool);

// no-2-torsion variant: yes iff disc/s is a square for some s in P_S
CycResult sqrt_disc_in_cyclotomic(const Curve& E, const WitnessPool& pool);

}  // namespace adelic
