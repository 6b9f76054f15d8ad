#pragma once

#include "adelic/fourtorsion.hpp"

#include "json.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace adelic {

using json = nlohmann::ordered_json;

enum class Status { certified, certified_per_reference, failed, undetermined, per_reference };
std::string to_string(Status s);
bool passes(Status s);  // certified or certified_per_reference
int exit_code(Status verdict);  // 0 / 1 / 2

struct Condition {
  std::string id;
  Status status = Status::undetermined;
  bool required = true;
  json witnesses = json::array();
  json values = json::object();
};

struct Certificate {
  json curve;
  std::vector<Condition> conditions;
  Status verdict = Status::undetermined;
  std::vector<std::string> transcript;

  Condition& add(Condition c);
  const Condition* find(const std::string& id) const;
  void finalize();  // verdict from the required conditions
  json to_json(bool with_transcript = false) const;
};

struct ClassData {
  Int d = 1;                        // narrow class number
  std::optional<Elem> u;            // totally positive fundamental unit
  std::optional<Int> k_override;
  std::map<std::string, Int> ray_class_orders;  // keyed by modulus label
  bool trivial_narrow_class = false;
  bool unit_u_minus_1_unit = false;
  void validate() const;
};

struct SearchParams {
  std::uint64_t max_prime_norm = 20000;
  int num_sample_primes = 8;
  int witness_budget = 48;
  std::uint64_t point_count_ceiling = kDefaultCountCeiling;
};

// preferred witnesses, tried before the norm-ordered scan; primes given by a generator
struct Hints {
  std::vector<std::string> exclusion;
  std::map<std::uint64_t, std::array<std::vector<std::string>, 3>> roles;  // l -> (s1, s2, t) candidates
  std::vector<std::string> mod9, mod8;
};

enum class Mode { full2tors, general };

struct Options {
  ClassData cd;
  SearchParams search;
  Hints hints;
  bool assume_ramified_in_L = true;
  bool transcript = false;
};

// Good primes of E in increasing norm with their Frobenius data; counts run in
// parallel batches, selection stays in norm order.
class FrobSource {
 public:
  struct Entry {
    PrimeIdeal P;
    FrobData fd;
  };
  FrobSource(const Curve& E, const SearchParams& sp);

  const Entry* at(std::size_t i);  // nullptr past max_prime_norm
  std::optional<FrobData> datum(const PrimeIdeal& P);  // nullopt unless good and countable
  const Curve& curve() const { return *E_; }
  const SearchParams& params() const { return sp_; }

 private:
  void extend();
  const Curve* E_;
  SearchParams sp_;
  PrimeStream stream_;
  std::vector<Entry> good_;
  bool done_ = false;
  std::map<std::string, std::optional<FrobData>> cache_;
  std::mutex mu_;
};

struct BadPrime {
  PrimeIdeal P;
  ReductionInfo info;
};
std::vector<BadPrime> bad_primes(const Curve& E);

struct ExclusionResult {
  Int g;                    // gcd of the sampled counts
  unsigned n = 1;           // extension degree of the counts
  std::vector<Int> special;  // primes needing individual treatment
  std::vector<Int> exception;  // general route: before the gcd
  std::vector<std::pair<std::string, Int>> samples;
  Int B = 1;
  Modulus m_f;
};

ExclusionResult exclusion_set_semistable(const Curve& E, const ClassData& cd, FrobSource& src,
                                         const std::vector<PrimeIdeal>& sample_hints, int num_samples);

struct ConductorModulus {
  Modulus m_f;
  bool includes_all_real_places = true;
  std::string label() const;
};
ConductorModulus conductor_modulus(const Curve& E, Mode mode, bool assume_ramified_in_L = true);
ConductorModulus conductor_modulus(const NumberField& K, const std::vector<BadPrime>& bad, Mode mode,
                                   bool assume_ramified_in_L = true);

struct UnitBound {
  Int B;
  Int k, r, count;  // count = d r / k factors
};
UnitBound unit_bound(const ClassData& cd, const Modulus& m_f);

ExclusionResult exclusion_set_general(const Curve& E, const ClassData& cd, Mode mode, FrobSource& src,
                                      const std::vector<PrimeIdeal>& sample_hints, int num_samples,
                                      bool assume_ramified_in_L = true);

struct FrobWitness {
  PrimeIdeal P;
  FrobData fd;
  std::uint64_t disc_res = 0, u = 0, u_poly = 0;  // residues mod l
  int symbol = 0;
};
FrobWitness frob_witness(const PrimeIdeal& P, const FrobData& fd, std::uint64_t l);
bool is_s1(const FrobWitness& w);
bool is_s2(const FrobWitness& w);
bool is_t(const FrobWitness& w);

struct RoleResult {
  bool found = false;
  std::optional<FrobWitness> s1, s2, t;
  std::size_t scanned = 0;
};
using RoleHints = std::array<std::vector<PrimeIdeal>, 3>;  // s1, s2, t
RoleResult role_witnesses(FrobSource& src, std::uint64_t l, const RoleHints& hints = {},
                            std::vector<std::string>* log = nullptr);

struct PrimeWitness {
  bool found = false;
  std::optional<PrimeIdeal> P;
  std::optional<FrobData> fd;
  std::size_t scanned = 0;
};
bool mod9_pattern(const FrobData& fd);  // t^2 - t_v t + N_v = (t-7)(t-8) mod 9
PrimeWitness mod9_certify(FrobSource& src, const std::vector<PrimeIdeal>& hints = {},
                          std::vector<std::string>* log = nullptr);
PrimeWitness mod8_certify(FrobSource& src, const std::vector<PrimeIdeal>& hints = {},
                          std::vector<std::string>* log = nullptr);

// primes for hint strings (single generator each)
std::vector<PrimeIdeal> hint_primes(const NumberField& K, const std::vector<std::string>& gens);

Certificate certify_full_2tors(const Curve& E, const Options& opts);
Certificate certify_all_mod_l(const Curve& E, const Options& opts);

json curve_json(const Curve& E);

}  // namespace adelic
