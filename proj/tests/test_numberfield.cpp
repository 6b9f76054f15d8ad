#include "doctest.h"

#include "adelic/numberfield.hpp"

#include <cmath>
#include <complex>

using namespace adelic;

namespace {

// Durand-Kerner in long double
std::array<std::complex<long double>, 3> croots(const std::array<Int, 3>& c) {
  using C = std::complex<long double>;
  long double a0 = c[0].get_d(), a1 = c[1].get_d(), a2 = c[2].get_d();
  auto f = [&](C x) { return ((x + a2) * x + a1) * x + a0; };
  std::array<C, 3> z{C(0.4L, 0.9L), C(0.4L, 0.9L) * C(0.4L, 0.9L), C(0.4L, 0.9L) * C(0.4L, 0.9L) * C(0.4L, 0.9L)};
  for (int it = 0; it < 500; ++it)
    for (int i = 0; i < 3; ++i) {
      C d = 1;
      for (int j = 0; j < 3; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= f(z[i]) / d;
    }
  return z;
}

long double numeric_norm(const Elem& x) {
  auto r = croots(x.field().poly());
  std::complex<long double> n = 1;
  for (auto& z : r) {
    long double c0 = x[0].get_d(), c1 = x[1].get_d(), c2 = x[2].get_d();
    n *= c0 + c1 * z + c2 * z * z;
  }
  return n.real();
}

}  // namespace

TEST_CASE("discriminant of x^3+x+1") {
  NumberField K({1, 1, 0});
  CHECK(K.disc_f() == -31);
  CHECK(K.disc_K() == -31);
  CHECK(K.index() == 1);
  CHECK(K.real_embeddings() == 1);
  CHECK(K.galois_group_is_S3());
}

TEST_CASE("discriminant formula agrees with root product") {
  for (auto poly : std::vector<std::array<Int, 3>>{{1, 1, 0}, {-4, 7, 4}, {1, -3, 8}, {-1, -3, 0}, {5, -2, 1}}) {
    NumberField K(poly);
    auto r = croots(poly);
    std::complex<long double> d = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) d *= (r[i] - r[j]) * (r[i] - r[j]);
    CHECK(std::fabs(static_cast<double>(d.real() - K.disc_f().get_d())) < 1e-6 * (1 + std::fabs(K.disc_f().get_d())));
  }
}

TEST_CASE("norm and trace against embeddings") {
  NumberField K({-4, 7, 4});
  for (auto s : {"2*a^2+7*a+19", "a-3", "5*a^2+9*a-5", "(1/2)*a^2 + 3", "-a^2+3*a-1"}) {
    Elem x = K.parse(s);
    long double nn = numeric_norm(x);
    CHECK(std::fabs(static_cast<double>(nn - x.norm().get_d())) < 1e-6 * (1 + std::fabs(x.norm().get_d())));
  }
}

TEST_CASE("field arithmetic") {
  NumberField K({1, 1, 0});
  Elem a = K.gen();
  CHECK(a.pow(3) == -a - 1);
  Elem x = K.parse("2*a^2+7*a+19");
  CHECK(x * x.inverse() == K.one());
  CHECK((x.norm() * x.inverse()).integral());
  CHECK(K.parse("[19,7,2]") == x);
  CHECK(K.parse("(a+1)^2 - a^2 - 2*a") == K.one());
  CHECK(x.trace() == Rat(57 - 4));
}

TEST_CASE("non-monogenic basis") {
  NumberField K({-4, 7, 4}, Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, Rat(1, 2), Rat(1, 2)}});
  CHECK(K.disc_f() == -2012);
  CHECK(K.index() == 2);
  CHECK(K.disc_K() == -503);
  CHECK(K.structure(1, 1) == IVec3{0, -1, 2});
  CHECK(K.structure(1, 2) == IVec3{2, -2, -3});
  CHECK(K.structure(2, 2) == IVec3{-2, 4, 1});
  Elem w = K.from_ib({0, 0, 1});
  CHECK(w.integral());
  CHECK(!(K.gen().pow(2) * Rat(1, 2)).integral());
}

TEST_CASE("reducible polynomial rejected") {
  CHECK_THROWS(NumberField({-6, 11, -6}));
  CHECK_THROWS(NumberField({0, 1, 0}));
}

TEST_CASE("real signs") {
  NumberField K({1, -3, 0});  // three real roots
  CHECK(K.real_embeddings() == 3);
  Elem a = K.gen();
  auto s = K.real_signs(a);
  int pos = 0;
  for (int v : s) pos += v > 0;
  CHECK(pos == 2);
  CHECK(K.totally_positive(a * a + 1));
  CHECK(!K.totally_positive(a));
}
