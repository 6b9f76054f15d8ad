#pragma once

#include "adelic/bigint.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adelic {

using Vec3 = std::array<Rat, 3>;
using IVec3 = std::array<Int, 3>;
using Mat3 = std::array<Vec3, 3>;

class NumberField;

// Element of K = Q(a), stored by its power-basis coordinates.
class Elem {
 public:
  Elem() = default;
  Elem(const NumberField* K, Vec3 pc);

  const NumberField& field() const;
  bool valid() const { return K_ != nullptr; }
  const Vec3& pc() const { return pc_; }
  const Rat& operator[](int i) const { return pc_[i]; }

  Vec3 ib() const;           // integral-basis coordinates
  IVec3 ib_int() const;      // throws unless integral
  bool integral() const;
  Int denominator() const;   // lcm of power-coordinate denominators

  bool is_zero() const;
  Mat3 mult_matrix() const;  // column j = this * a^j
  Rat norm() const;
  Rat trace() const;
  Elem inverse() const;
  Elem pow(unsigned long n) const;
  std::string str() const;

  Elem operator-() const;
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Elem& o);
  Elem& operator/=(const Elem& o);
  Elem& operator*=(const Rat& r);

  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(Elem a, const Elem& b) { return a *= b; }
  friend Elem operator/(Elem a, const Elem& b) { return a /= b; }
  friend Elem operator*(Elem a, const Rat& r) { return a *= r; }
  friend Elem operator*(const Rat& r, Elem a) { return a *= r; }
  friend Elem operator*(long r, Elem a) { return a *= Rat(r); }
  friend Elem operator*(Elem a, long r) { return a *= Rat(r); }
  friend Elem operator+(Elem a, long r);
  friend Elem operator-(Elem a, long r);
  friend Elem operator+(long r, Elem a) { return a + r; }
  friend Elem operator-(long r, const Elem& a) { return -(a - r); }
  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  void same_field(const Elem& o) const;
  const NumberField* K_ = nullptr;
  Vec3 pc_;
};

// Config-supplied splitting of a prime dividing the basis index.
struct IndexPrimeSpec {
  Int p;
  std::vector<Vec3> gens;  // power-basis coordinates; the ideal is (p, gens...)
  int e = 1;
  int f = 1;
};

class NumberField {
 public:
  // f(x) = x^3 + c2 x^2 + c1 x + c0, poly = {c0, c1, c2}
  explicit NumberField(std::array<Int, 3> poly, std::optional<Mat3> integral_basis = {},
                       std::string label = "");
  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;

  const std::array<Int, 3>& poly() const { return poly_; }
  const Int& disc_f() const { return disc_f_; }
  const Int& disc_K() const { return disc_K_; }
  const Int& index() const { return index_; }
  const Mat3& basis() const { return basis_; }  // row i = omega_i in power coordinates
  const Mat3& basis_inv() const { return basis_inv_; }
  bool power_basis() const { return power_basis_; }
  const std::string& label() const { return label_; }
  // omega_i * omega_j in integral-basis coordinates
  const IVec3& structure(int i, int j) const { return struct_[i][j]; }

  Elem zero() const { return from_rat(0); }
  Elem one() const { return from_rat(1); }
  Elem gen() const { return Elem(this, {Rat(0), Rat(1), Rat(0)}); }
  Elem from_rat(const Rat& r) const { return Elem(this, {r, Rat(0), Rat(0)}); }
  Elem from_pc(const Vec3& pc) const { return Elem(this, pc); }
  Elem from_ib(const IVec3& v) const;
  Elem parse(std::string_view text) const;

  int real_embeddings() const { return static_cast<int>(roots_.size()); }
  std::vector<int> real_signs(const Elem& x) const;
  bool totally_positive(const Elem& x) const;
  bool galois_group_is_S3() const;

  void set_index_splittings(std::vector<IndexPrimeSpec> s) { index_splittings_ = std::move(s); }
  const std::vector<IndexPrimeSpec>& index_splittings() const { return index_splittings_; }

 private:
  std::array<Int, 3> poly_;
  Mat3 basis_, basis_inv_;
  bool power_basis_ = true;
  Int disc_f_, disc_K_, index_;
  std::string label_;
  std::array<std::array<IVec3, 3>, 3> struct_;
  std::vector<std::pair<Rat, Rat>> roots_;  // isolating intervals of the real roots
  std::vector<IndexPrimeSpec> index_splittings_;
};

Rat det3(const Mat3& m);
Mat3 inverse3(const Mat3& m);

}  // namespace adelic
