#pragma once

#include "adelic/certify.hpp"

#include <array>
#include <optional>
#include <vector>

namespace adelic {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, integer coefficients
using QCurve = std::array<Int, 5>;

Int qcurve_disc(const QCurve& E);

struct FrobQDatum {
  std::uint64_t p = 0;
  std::int64_t a_p = 0;
};
FrobQDatum frob_q(const QCurve& E, std::uint64_t p);  // p good

// roots of T^2 - a T + p mod l^2 with l1 != l2 mod l, if any
std::optional<std::pair<std::uint64_t, std::uint64_t>> eigen_mod_l2(const FrobQDatum& d, std::uint64_t l);
bool step1_witness(const FrobQDatum& d, std::uint64_t l);
bool step2_witness(const FrobQDatum& d, std::uint64_t l);
// T^2 - a T + p = (T - 1)^2 mod l
bool unipotent_pattern(const FrobQDatum& d, std::uint64_t l);
// l^2 | 1 + p - a; throws unless unipotent_pattern
bool cartan_discriminator(const FrobQDatum& d, std::uint64_t l);
// T^2 - ((a-2)/l) T + (1+p-a)/l^2 irreducible mod l; throws on the divisibility preconditions
bool step3_polynomial(const FrobQDatum& d, std::uint64_t l);
bool step3_witness(const FrobQDatum& d, std::uint64_t l, const QCurve& E);

struct QPoint {
  Rat x, y;
  bool inf = true;
};
bool on_curve(const QCurve& E, const QPoint& P);
QPoint add(const QCurve& E, const QPoint& P, const QPoint& Q);
QPoint mul(const QCurve& E, const QPoint& P, unsigned n);
// integral point of exact order l with |x| <= bound
std::optional<QPoint> rational_l_torsion(const QCurve& E, std::uint64_t l, std::int64_t bound);

struct HalfBorelParams {
  std::uint64_t l = 7;
  std::uint64_t search_bound = 20000;  // primes p <= bound
  std::int64_t point_bound = 100000;   // |x| of the torsion point
  std::vector<std::uint64_t> hints;    // tried first, in order
};

Certificate certify_half_borel(const QCurve& E, const HalfBorelParams& hp, bool transcript = false);

}  // namespace adelic
