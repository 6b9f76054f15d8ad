#pragma once

#include "adelic/bigint.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace adelic {

struct FqElem {
  std::array<std::uint64_t, 3> c{0, 0, 0};
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.c == b.c; }
  friend bool operator!=(const FqElem& a, const FqElem& b) { return a.c != b.c; }
};

// F_p[x]/(m), deg m = f in {1,2,3}, p < 2^62.  q() saturates at 2^64 - 1.
// Cubic moduli are only checked for roots when p < 2^24.
class FiniteField {
 public:
  FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus);  // monic, low to high
  static FiniteField prime_field(std::uint64_t p) { return FiniteField(p, {0, 1}); }

  std::uint64_t p() const { return p_; }
  int f() const { return f_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return mod_; }

  FqElem zero() const { return {}; }
  FqElem one() const { return from_int(1); }
  FqElem from_int(std::int64_t v) const;
  FqElem from_coeffs(const std::vector<std::uint64_t>& c) const;
  FqElem generator() const;                 // class of x
  FqElem element(std::uint64_t index) const;  // enumeration 0..q-1 by base-p digits
  std::uint64_t index_of(const FqElem& a) const;

  bool is_zero(const FqElem& a) const { return a.c[0] == 0 && a.c[1] == 0 && a.c[2] == 0; }
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem scale(const FqElem& a, std::uint64_t s) const;
  FqElem inv(const FqElem& a) const;
  FqElem pow(const FqElem& a, const Int& n) const;
  FqElem pow(const FqElem& a, std::uint64_t n) const;

  std::uint64_t norm(const FqElem& a) const;  // to F_p
  bool euler_is_square(const FqElem& a) const;  // a != 0
  std::optional<FqElem> sqrt(const FqElem& a) const;

 private:
  std::uint64_t mm(std::uint64_t u, std::uint64_t v) const {
    return p_ < (1ull << 32) ? u * v % p_ : static_cast<std::uint64_t>(static_cast<unsigned __int128>(u) * v % p_);
  }
  std::uint64_t p_;
  int f_;
  std::uint64_t q_;
  std::vector<std::uint64_t> mod_;
  mutable std::optional<FqElem> nonres_;
};

using FqPoly = std::vector<FqElem>;  // low to high

FqElem poly_eval(const FiniteField& F, const FqPoly& poly, const FqElem& x);
// roots with multiplicity, sorted by enumeration index
std::vector<FqElem> roots_deg_le3(const FiniteField& F, FqPoly poly);

// s_n for the recurrence s_0 = 2, s_1 = t, s_k = t s_{k-1} - q s_{k-2}
Int trace_extend(const Int& t, const Int& q, unsigned n);

// irreducible factors of a monic integer cubic mod p: (factor low->high, multiplicity)
std::vector<std::pair<std::vector<std::uint64_t>, int>> factor_cubic_mod_p(const std::array<Int, 3>& poly,
                                                                          std::uint64_t p);

}  // namespace adelic
