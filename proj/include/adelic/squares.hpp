#pragma once

#include "adelic/ideals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

enum class SqStatus { NonSquare, Square, Undetermined };
std::string to_string(SqStatus s);

struct SquareVerdict {
  SqStatus status = SqStatus::Undetermined;
  std::optional<PrimeIdeal> witness;  // NonSquare
  std::optional<Elem> root;           // Square
  int witnesses_tried = 0;
};

// Degree-one primes of odd residue characteristic in increasing norm, with the
// root r of f mod p so that the residue map is evaluation at r.
class WitnessPool {
 public:
  explicit WitnessPool(const NumberField& K, int budget = 48);
  int budget() const { return budget_; }
  // non-residue witness among the first `budget` usable primes, in order
  SquareVerdict scan(const Elem& x) const;
  const std::vector<PrimeIdeal>& primes() const { return primes_; }

 private:
  const NumberField* K_;
  int budget_;
  std::vector<PrimeIdeal> primes_;
  std::vector<std::uint64_t> roots_;
};

// x != 0.  Witness scan first; exact confirmation when every witness is a residue.
SquareVerdict is_square_in_K(const Elem& x, int witness_budget = 48);
SquareVerdict is_square_in_K(const Elem& x, const WitnessPool& pool);

// replay: x is a P-unit whose residue is a non-square
bool nonsquare_at(const Elem& x, const PrimeIdeal& P);

// exact square root via high-precision embeddings (128 to 4096 bits)
std::optional<Elem> exact_sqrt(const Elem& x);

}  // namespace adelic
