#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adelic {

using Int = mpz_class;
using Rat = mpq_class;

std::string to_dec(const Int& n);
std::string to_dec(const Rat& q);
Int parse_int(std::string_view s);
Rat parse_rat(std::string_view s);

Int ipow(const Int& base, unsigned long e);
bool is_perfect_square(const Int& n, Int* root = nullptr);
unsigned long valuation(Int n, const Int& p);
Int lcm(const Int& a, const Int& b);
bool is_probable_prime(const Int& n);

// Prime factorization of |n|.  Anything that resists trial division and
// Pollard rho stays in `unfactored`.
struct Factorization {
  std::vector<std::pair<Int, unsigned>> factors;
  Int unfactored{1};
  bool complete() const { return unfactored == 1; }
  std::vector<Int> primes() const;
};
Factorization factor(const Int& n, unsigned long trial_bound = 1000000);
std::vector<Int> prime_divisors(const Int& n);  // throws if incomplete

// x = r1 mod m1, x = r2 mod m2 with coprime moduli; result in [0, m1 m2)
Int crt2(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

// word-size helpers; moduli below 2^63
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n
std::uint64_t mod_u64(const Int& a, std::uint64_t m);  // least nonnegative
std::uint64_t mod_u64(const Rat& a, std::uint64_t m);  // denominator must be a unit
int jacobi_u64(std::uint64_t a, std::uint64_t n);  // n odd

}  // namespace adelic
