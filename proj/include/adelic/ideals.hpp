#pragma once

#include "adelic/finitefield.hpp"
#include "adelic/numberfield.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace adelic {

// Upper-triangular Hermite normal form of a full-rank Z-lattice in Z^3 (rows span).
struct HNF {
  std::array<IVec3, 3> rows;
  Int det() const { return rows[0][0] * rows[1][1] * rows[2][2]; }
  bool contains(IVec3 v) const;
  IVec3 reduce(IVec3 v) const;  // canonical representative modulo the lattice
  friend bool operator==(const HNF& a, const HNF& b) { return a.rows == b.rows; }
};
HNF hnf_from_rows(std::vector<IVec3> rows);

// integral-basis product
IVec3 ib_mul(const NumberField& K, const IVec3& a, const IVec3& b);
// ideal generated (as O_K-ideal) by integral elements
HNF ideal_hnf(const NumberField& K, const std::vector<IVec3>& gens);
HNF ideal_product(const NumberField& K, const HNF& a, const HNF& b);

class PrimeIdeal {
 public:
  PrimeIdeal() = default;
  PrimeIdeal(const NumberField& K, std::uint64_t p, std::vector<Elem> gens, int e, int f,
             std::vector<std::uint64_t> gen_poly = {});

  const NumberField& field() const;
  std::uint64_t p() const;
  int e() const;
  int f() const;
  Int norm() const;
  const HNF& hnf() const;
  const std::vector<Elem>& generators() const;
  const std::vector<std::uint64_t>& gen_poly() const;  // empty for config-supplied primes
  const FiniteField& residue_field() const;
  std::string label() const;

  bool contains(const Elem& x) const;             // x integral
  int valuation(const Elem& x) const;              // x != 0
  FqElem residue(const Elem& x) const;             // v_P(x) >= 0
  FqElem residue_ib(const IVec3& v) const;         // integral-basis input
  const HNF& power(int t) const;                   // P^t, cached
  Elem uniformizer() const;                        // v_P = 1
  bool valid() const { return d_ != nullptr; }

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b);
  friend bool operator!=(const PrimeIdeal& a, const PrimeIdeal& b) { return !(a == b); }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b);  // norm, then p, then HNF

 private:
  struct Data;
  std::shared_ptr<Data> d_;
  int valuation_integral(const IVec3& y) const;
  const Elem& aux() const;
};

std::vector<PrimeIdeal> split_prime(const NumberField& K, std::uint64_t p);
// prime ideal generated by a single element (N(x) = +-p^f)
PrimeIdeal prime_from_generator(const NumberField& K, const Elem& x);
// valuations at every prime above p; asserts sum f_i v_i = v_p(N(x))
std::vector<std::pair<PrimeIdeal, int>> valuations_above(const NumberField& K, const Elem& x, std::uint64_t p);
// prime ideals P with v_P(x) != 0 (needs N(x) factored)
std::vector<std::pair<PrimeIdeal, int>> factor_element(const NumberField& K, const Elem& x);

using Modulus = std::vector<std::pair<PrimeIdeal, int>>;
Int modulus_unit_count(const Modulus& m);
Int unit_order_mod(const Elem& u, const Modulus& m);

// Prime ideals in increasing norm (ties: p, then HNF).  Primes dividing the
// basis index without configured splitting are skipped.
class PrimeStream {
 public:
  explicit PrimeStream(const NumberField& K, std::uint64_t start_p = 2);
  PrimeIdeal next();

 private:
  const NumberField* K_;
  std::uint64_t next_p_;
  std::vector<PrimeIdeal> pending_;
};

}  // namespace adelic
