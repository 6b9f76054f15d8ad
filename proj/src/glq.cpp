#include "adelic/glq.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace adelic {

namespace {
std::uint32_t md(long x, std::uint32_t m) {
  long r = x % static_cast<long>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}
}  // namespace

MatMod MatMod::make(long a, long b, long c, long d, std::uint32_t m) {
  MatMod r;
  r.m = m;
  r.a = md(a, m);
  r.b = md(b, m);
  r.c = md(c, m);
  r.d = md(d, m);
  return r;
}

std::uint32_t MatMod::det() const {
  return md(static_cast<long>(a) * d - static_cast<long>(b) * c, m);
}

bool MatMod::invertible() const { return std::gcd(det(), m) == 1; }

std::string MatMod::str() const {
  std::ostringstream os;
  os << "(" << a << "," << b << ";" << c << "," << d << ")";
  return os.str();
}

MatMod operator*(const MatMod& x, const MatMod& y) {
  if (x.m != y.m) throw std::invalid_argument("modulus mismatch");
  long a = long(x.a) * y.a + long(x.b) * y.c, b = long(x.a) * y.b + long(x.b) * y.d;
  long c = long(x.c) * y.a + long(x.d) * y.c, d = long(x.c) * y.b + long(x.d) * y.d;
  return MatMod::make(a, b, c, d, x.m);
}

MatMod inverse(const MatMod& x) {
  if (!x.invertible()) throw std::invalid_argument("matrix not invertible");
  long dt = x.det(), inv = 1;
  while ((dt * inv) % x.m != 1 % x.m) ++inv;
  return MatMod::make(long(x.d) * inv, -long(x.b) * inv, -long(x.c) * inv, long(x.a) * inv, x.m);
}

MatMod commutator(const MatMod& x, const MatMod& y) { return x * y * inverse(x) * inverse(y); }

std::vector<MatMod> closure(const std::vector<MatMod>& gens, std::size_t ceiling) {
  if (gens.empty()) throw std::invalid_argument("closure of empty set");
  std::uint32_t m = gens[0].m;
  for (auto& g : gens)
    if (!g.invertible()) throw std::invalid_argument("closure: non-invertible generator");
  std::unordered_set<std::uint64_t> seen;
  std::vector<MatMod> out;
  std::deque<MatMod> todo;
  MatMod I = MatMod::identity(m);
  seen.insert(I.key());
  out.push_back(I);
  todo.push_back(I);
  while (!todo.empty()) {
    MatMod x = todo.front();
    todo.pop_front();
    for (auto& g : gens) {
      MatMod y = x * g;
      if (seen.insert(y.key()).second) {
        out.push_back(y);
        todo.push_back(y);
        if (out.size() > ceiling) throw std::runtime_error("closure exceeds size ceiling");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatMod> commutator_subgroup(const std::vector<MatMod>& G) {
  std::vector<MatMod> comms;
  std::unordered_set<std::uint64_t> seen;
  for (auto& x : G)
    for (auto& y : G) {
      MatMod c = commutator(x, y);
      if (seen.insert(c.key()).second) comms.push_back(c);
    }
  return closure(comms);
}

std::vector<MatMod> v1_mod8() {
  std::vector<MatMod> out;
  for (int s = 0; s < 256; ++s)
    out.push_back(MatMod::make(1 + 2 * (s & 3), 2 * (s >> 2 & 3), 2 * (s >> 4 & 3), 1 + 2 * (s >> 6 & 3), 8));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatMod> v2_mod8() {
  std::vector<MatMod> out;
  for (int s = 0; s < 16; ++s)
    out.push_back(MatMod::make(1 + 4 * (s & 1), 4 * (s >> 1 & 1), 4 * (s >> 2 & 1), 1 + 4 * (s >> 3 & 1), 8));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatMod> squares_of_v1_mod8() {
  std::vector<MatMod> out;
  std::unordered_set<std::uint64_t> seen;
  for (auto& g : v1_mod8()) {
    MatMod s = g * g;
    if (seen.insert(s.key()).second) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_square_identity_mod8() {
  for (int S = 0; S < 16; ++S)
    for (int T = 0; T < 16; ++T) {
      long s[4] = {S & 1, S >> 1 & 1, S >> 2 & 1, S >> 3 & 1};
      long t[4] = {T & 1, T >> 1 & 1, T >> 2 & 1, T >> 3 & 1};
      MatMod g = MatMod::make(1 + 2 * s[0] + 4 * t[0], 2 * s[1] + 4 * t[1], 2 * s[2] + 4 * t[2], 1 + 2 * s[3] + 4 * t[3], 8);
      // S + S^2
      long a = s[0] + s[0] * s[0] + s[1] * s[2], b = s[1] + s[0] * s[1] + s[1] * s[3];
      long c = s[2] + s[2] * s[0] + s[3] * s[2], d = s[3] + s[2] * s[1] + s[3] * s[3];
      if (!(g * g == MatMod::make(1 + 4 * a, 4 * b, 4 * c, 1 + 4 * d, 8))) return false;
    }
  return true;
}

bool verify_commutator_lemma_mod8() {
  auto C = commutator_subgroup(v1_mod8());
  std::vector<MatMod> want;
  for (auto& x : v2_mod8())
    if ((x.a + x.d) % 8 == 2) want.push_back(x);  // I + 4A with tr A even
  return C == want;
}

bool verify_v2_generation_mod8() {
  auto sq = squares_of_v1_mod8();
  auto v2 = v2_mod8();
  bool any = false;
  for (auto& g : v2) {
    if (g.det() != 5) continue;
    any = true;
    auto gens = sq;
    gens.push_back(g);
    if (closure(gens) != v2) return false;
  }
  return any;
}

GlqReport glq_verify() {
  GlqReport r;
  auto sq = squares_of_v1_mod8();
  std::vector<MatMod> listed{MatMod::identity(8), MatMod::make(1, 4, 0, 1, 8), MatMod::make(1, 0, 4, 1, 8),
                             MatMod::make(5, 4, 4, 5, 8), MatMod::make(5, 0, 0, 5, 8)};
  std::sort(listed.begin(), listed.end());
  r.squares_five = sq == listed;
  r.squares_det_one = std::all_of(sq.begin(), sq.end(), [](const MatMod& x) { return x.det() == 1; });
  r.commutator_identities =
      commutator(MatMod::make(3, 0, 2, 3, 8), MatMod::make(3, 0, 2, 1, 8)) == MatMod::make(1, 0, 4, 1, 8) &&
      commutator(MatMod::make(3, 0, 0, 1, 8), MatMod::make(1, 2, 2, 1, 8)) == MatMod::make(1, 4, 4, 1, 8);
  r.commutator_lemma = verify_commutator_lemma_mod8();
  r.v2_generation = verify_v2_generation_mod8();
  r.square_identity = verify_square_identity_mod8();
  return r;
}

}  // namespace adelic
