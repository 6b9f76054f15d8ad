#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adelic {

// 2x2 matrix over Z/m, row-major (a b; c d)
struct MatMod {
  std::uint32_t a = 1, b = 0, c = 0, d = 1;
  std::uint32_t m = 1;

  static MatMod make(long a, long b, long c, long d, std::uint32_t m);
  static MatMod identity(std::uint32_t m) { return make(1, 0, 0, 1, m); }
  std::uint64_t key() const { return ((std::uint64_t(a) * m + b) * m + c) * m + d; }
  std::uint32_t det() const;
  bool invertible() const;
  std::string str() const;
  friend bool operator==(const MatMod& x, const MatMod& y) { return x.key() == y.key() && x.m == y.m; }
  friend bool operator<(const MatMod& x, const MatMod& y) { return x.key() < y.key(); }
};

MatMod operator*(const MatMod& x, const MatMod& y);
MatMod inverse(const MatMod& x);
MatMod commutator(const MatMod& x, const MatMod& y);  // x y x^-1 y^-1

// subgroup generated; sorted; throws past `ceiling` elements
std::vector<MatMod> closure(const std::vector<MatMod>& gens, std::size_t ceiling = 1u << 20);
std::vector<MatMod> commutator_subgroup(const std::vector<MatMod>& G);

std::vector<MatMod> v1_mod8();                // I + 2S mod 8, order 256
std::vector<MatMod> v2_mod8();                // I + 4A mod 8, order 16
std::vector<MatMod> squares_of_v1_mod8();     // {(I+2S+4T)^2}
bool verify_square_identity_mod8();           // (I+2S+4T)^2 = I + 4(S+S^2)
bool verify_commutator_lemma_mod8();
bool verify_v2_generation_mod8();             // det = 5 element + squares give V2/V3

struct GlqReport {
  bool squares_five = false;
  bool commutator_identities = false;
  bool commutator_lemma = false;
  bool v2_generation = false;
  bool square_identity = false;
  bool squares_det_one = false;
  bool all() const {
    return squares_five && commutator_identities && commutator_lemma && v2_generation && square_identity &&
           squares_det_one;
  }
};
GlqReport glq_verify();

}  // namespace adelic
