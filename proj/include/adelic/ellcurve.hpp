#pragma once

#include "adelic/finitefield.hpp"
#include "adelic/ideals.hpp"

#include <array>
#include <optional>
#include <string>

namespace adelic {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K
struct Curve {
  Elem a1, a2, a3, a4, a6;
  std::optional<std::array<Elem, 3>> roots;  // y^2 = (x-e1)(x-e2)(x-e3) when known

  const NumberField& field() const { return a1.field(); }
};

Curve curve_from_coeffs(const Elem& a1, const Elem& a2, const Elem& a3, const Elem& a4, const Elem& a6);
Curve curve_from_roots(const Elem& e1, const Elem& e2, const Elem& e3);

struct Invariants {
  Elem b2, b4, b6, b8, c4, c6, disc, j;
};
Invariants invariants(const Curve& E);  // throws on a singular model

enum class RedType { good, multiplicative, additive_pot_good, additive_pot_mult, unclassified };
std::string to_string(RedType t);

struct ReductionInfo {
  RedType type = RedType::unclassified;
  int v_disc = 0;      // of the input model
  int v_disc_min = 0;  // of a P-minimal model
  int v_c4 = 0;        // minimal model; large sentinel when c4 = 0
  int v_j = 0;         // sentinel when j = 0
  Int N;               // residue field size
  Curve local_model;   // P-minimal, P-integral
  bool semistable() const { return type == RedType::good || type == RedType::multiplicative; }
};

constexpr int kInfiniteValuation = 1 << 20;

// P | 6 runs a substitution search by powers of `uniformizer` (derived from P when absent).
ReductionInfo classify_reduction(const Curve& E, const PrimeIdeal& P, std::optional<Elem> uniformizer = {});

struct ReducedCurve {
  FiniteField F;
  FqElem a1, a2, a3, a4, a6;
};

ReducedCurve reduce_at(const Curve& E, const PrimeIdeal& P);  // throws unless good
ReducedCurve reduce_model(const Curve& model, const PrimeIdeal& P);  // coefficientwise, no checks
ReducedCurve reduce_rational(const std::array<Int, 5>& a, std::uint64_t p);
FqElem reduced_disc(const ReducedCurve& C);

constexpr std::uint64_t kDefaultCountCeiling = 1ull << 26;

// #C(F_q).  Character sum for odd p, enumeration for p = 2.
std::uint64_t count_points(const ReducedCurve& C, std::uint64_t ceiling = kDefaultCountCeiling);
// single-threaded reference: Euler criterion per abscissa
std::uint64_t count_points_serial(const ReducedCurve& C, std::uint64_t ceiling = kDefaultCountCeiling);
// all (x, y) pairs; q small
std::uint64_t count_points_naive(const ReducedCurve& C);

struct FrobData {
  Int N;
  Int t;
};
FrobData frobenius(const Curve& E, const PrimeIdeal& P, std::uint64_t ceiling = kDefaultCountCeiling);

struct Point {
  FqElem x, y;
  bool inf = true;
};
bool on_curve(const ReducedCurve& C, const Point& P);
Point add(const ReducedCurve& C, const Point& P, const Point& Q);
Point neg(const ReducedCurve& C, const Point& P);
Point mul(const ReducedCurve& C, const Point& P, std::uint64_t n);
std::vector<Point> all_points(const ReducedCurve& C);  // includes O

// E[4] rational, via the halving criterion; odd p only
bool full_four_torsion(const ReducedCurve& C);
// #{P : [n]P = O} by enumeration
std::uint64_t torsion_count_exhaustive(const ReducedCurve& C, std::uint64_t n);
bool full_l_torsion_exhaustive(const ReducedCurve& C, std::uint64_t l, std::uint64_t ceiling = 1ull << 20);

}  // namespace adelic
