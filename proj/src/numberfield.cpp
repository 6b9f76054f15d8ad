#include "adelic/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace adelic {

Rat det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m) {
  Rat d = det3(m);
  if (d == 0) throw std::domain_error("singular 3x3 matrix");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
    }
  return r;
}

// ---------------------------------------------------------------- Elem

Elem::Elem(const NumberField* K, Vec3 pc) : K_(K), pc_(std::move(pc)) {
  for (auto& c : pc_) c.canonicalize();
}

const NumberField& Elem::field() const {
  if (!K_) throw std::logic_error("element without field");
  return *K_;
}

void Elem::same_field(const Elem& o) const {
  if (K_ != o.K_ || !K_) throw std::invalid_argument("elements of different fields");
}

Vec3 Elem::ib() const {
  const auto& K = field();
  if (K.power_basis()) return pc_;
  const auto& bi = K.basis_inv();
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = pc_[0] * bi[0][i] + pc_[1] * bi[1][i] + pc_[2] * bi[2][i];
  return r;
}

bool Elem::integral() const {
  for (auto& c : ib())
    if (c.get_den() != 1) return false;
  return true;
}

IVec3 Elem::ib_int() const {
  Vec3 v = ib();
  IVec3 r;
  for (int i = 0; i < 3; ++i) {
    if (v[i].get_den() != 1) throw std::domain_error("element is not integral: " + str());
    r[i] = v[i].get_num();
  }
  return r;
}

Int Elem::denominator() const {
  Int d = 1;
  for (auto& c : pc_) d = lcm(d, c.get_den());
  return d;
}

bool Elem::is_zero() const { return pc_[0] == 0 && pc_[1] == 0 && pc_[2] == 0; }

Elem Elem::operator-() const {
  Elem r = *this;
  for (auto& c : r.pc_) c = -c;
  return r;
}

Elem& Elem::operator+=(const Elem& o) {
  same_field(o);
  for (int i = 0; i < 3; ++i) pc_[i] += o.pc_[i];
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  same_field(o);
  for (int i = 0; i < 3; ++i) pc_[i] -= o.pc_[i];
  return *this;
}

Elem& Elem::operator*=(const Rat& r) {
  for (auto& c : pc_) c *= r;
  return *this;
}

Elem& Elem::operator*=(const Elem& o) {
  same_field(o);
  const auto& f = K_->poly();
  std::array<Rat, 5> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i + j] += pc_[i] * o.pc_[j];
  // a^3 = -c2 a^2 - c1 a - c0
  for (int k = 4; k >= 3; --k) {
    if (t[k] == 0) continue;
    t[k - 1] -= t[k] * f[2];
    t[k - 2] -= t[k] * f[1];
    t[k - 3] -= t[k] * f[0];
    t[k] = 0;
  }
  pc_ = {t[0], t[1], t[2]};
  return *this;
}

Elem& Elem::operator/=(const Elem& o) { return *this *= o.inverse(); }

Elem operator+(Elem a, long r) {
  Elem b = a;
  Vec3 pc = b.pc();
  pc[0] += r;
  return Elem(&a.field(), pc);
}

Elem operator-(Elem a, long r) { return a + (-r); }

bool operator==(const Elem& a, const Elem& b) { return a.K_ == b.K_ && a.pc_ == b.pc_; }

Mat3 Elem::mult_matrix() const {
  Elem col = *this;
  Mat3 m;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[i][j] = col.pc_[i];
    col *= field().gen();
  }
  return m;
}

Rat Elem::norm() const { return det3(mult_matrix()); }

Rat Elem::trace() const {
  Mat3 m = mult_matrix();
  return m[0][0] + m[1][1] + m[2][2];
}

Elem Elem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Mat3 inv = inverse3(mult_matrix());
  return Elem(K_, {inv[0][0], inv[1][0], inv[2][0]});
}

Elem Elem::pow(unsigned long n) const {
  Elem r = field().one(), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

std::string Elem::str() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 2; k >= 0; --k) {
    const Rat& c = pc_[k];
    if (c == 0) continue;
    Rat a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = (a == 1);
    if (k == 0 || !unit) {
      if (a.get_den() != 1 && k > 0) os << "(" << a.get_str() << ")";
      else os << a.get_str();
      if (k > 0) os << "*";
    }
    if (k >= 1) os << "a";
    if (k == 2) os << "^2";
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- field

namespace {

using Poly = std::vector<Rat>;  // low to high

Rat peval(const Poly& p, const Rat& x) {
  Rat r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly prem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat q = a.back() / b.back();
    size_t s = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[s + i] -= q * b[i];
    trim(a);
  }
  return a;
}

int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int sign_changes(const std::vector<Poly>& seq, const Rat& x) {
  int last = 0, n = 0;
  for (auto& p : seq) {
    int s = sgn(peval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++n;
    last = s;
  }
  return n;
}

// exact range of c0 + c1 x + c2 x^2 on [lo, hi]
std::pair<Rat, Rat> quad_range(const Vec3& c, const Rat& lo, const Rat& hi) {
  auto ev = [&](const Rat& x) -> Rat { return c[0] + c[1] * x + c[2] * x * x; };
  Rat a = ev(lo), b = ev(hi);
  Rat mn = a < b ? a : b, mx = a < b ? b : a;
  if (c[2] != 0) {
    Rat v = -c[1] / (2 * c[2]);
    if (v > lo && v < hi) {
      Rat w = ev(v);
      if (w < mn) mn = w;
      if (w > mx) mx = w;
    }
  }
  return {mn, mx};
}

}  // namespace

NumberField::NumberField(std::array<Int, 3> poly, std::optional<Mat3> integral_basis, std::string label)
    : poly_(std::move(poly)), label_(std::move(label)) {
  const Int &d = poly_[0], &c = poly_[1], &b = poly_[2];
  // irreducible iff no integer root dividing c0
  if (d == 0) throw std::invalid_argument("defining polynomial is reducible (root 0)");
  {
    Int ad = abs(d);
    auto fac = factor(ad);
    if (!fac.complete()) throw std::invalid_argument("cannot factor constant term for irreducibility test");
    std::vector<Int> divs{1};
    for (auto& [p, e] : fac.factors) {
      size_t n = divs.size();
      Int pk = 1;
      for (unsigned k = 1; k <= e; ++k) {
        pk *= p;
        for (size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
      }
    }
    for (auto& r : divs)
      for (const Int& x : {r, Int(-r)})
        if (x * x * x + b * x * x + c * x + d == 0)
          throw std::invalid_argument("defining polynomial is reducible (root " + to_dec(x) + ")");
  }
  disc_f_ = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;

  if (integral_basis) {
    basis_ = *integral_basis;
    for (auto& row : basis_)
      for (auto& x : row) x.canonicalize();
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) basis_[i][j] = (i == j) ? 1 : 0;
  }
  power_basis_ = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (basis_[i][j] != (i == j ? 1 : 0)) power_basis_ = false;
  basis_inv_ = inverse3(basis_);
  Rat det = abs(det3(basis_));
  Rat idx = 1 / det;
  if (idx.get_den() != 1) throw std::invalid_argument("integral basis does not contain Z[a]");
  index_ = idx.get_num();
  if (!mpz_divisible_p(disc_f_.get_mpz_t(), Int(index_ * index_).get_mpz_t()))
    throw std::invalid_argument("disc_f / index^2 is not an integer; integral basis rejected");
  disc_K_ = disc_f_ / (index_ * index_);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Elem w = from_pc(basis_[i]) * from_pc(basis_[j]);
      Vec3 v = w.ib();
      for (int k = 0; k < 3; ++k) {
        if (v[k].get_den() != 1) throw std::invalid_argument("integral basis is not closed under multiplication");
        struct_[i][j][k] = v[k].get_num();
      }
    }
  for (auto& x : one().ib())
    if (x.get_den() != 1) throw std::invalid_argument("integral basis does not contain 1");

  // Sturm chain and isolating intervals
  Poly f{Rat(d), Rat(c), Rat(b), Rat(1)};
  Poly df{Rat(c), Rat(2 * b), Rat(3)};
  std::vector<Poly> seq{f, df};
  while (true) {
    Poly r = prem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    seq.push_back(r);
  }
  Int bound = 1 + std::max({abs(b), abs(c), abs(d)});
  std::vector<std::pair<Rat, Rat>> todo{{Rat(-bound), Rat(bound)}};
  while (!todo.empty()) {
    auto [lo, hi] = todo.back();
    todo.pop_back();
    int n = sign_changes(seq, lo) - sign_changes(seq, hi);
    if (n == 0) continue;
    if (n == 1) {
      roots_.emplace_back(lo, hi);
      continue;
    }
    Rat mid = (lo + hi) / 2;
    todo.emplace_back(lo, mid);
    todo.emplace_back(mid, hi);
  }
  std::sort(roots_.begin(), roots_.end());
}

Elem NumberField::from_ib(const IVec3& v) const {
  Vec3 pc;
  for (int j = 0; j < 3; ++j) pc[j] = v[0] * basis_[0][j] + v[1] * basis_[1][j] + v[2] * basis_[2][j];
  return from_pc(pc);
}

std::vector<int> NumberField::real_signs(const Elem& x) const {
  if (x.is_zero()) throw std::invalid_argument("sign of zero");
  std::vector<int> out;
  Poly f{Rat(poly_[0]), Rat(poly_[1]), Rat(poly_[2]), Rat(1)};
  for (auto [lo, hi] : roots_) {
    int flo = sgn(peval(f, lo));
    while (true) {
      auto [mn, mx] = quad_range(x.pc(), lo, hi);
      if (mn > 0) { out.push_back(1); break; }
      if (mx < 0) { out.push_back(-1); break; }
      Rat mid = (lo + hi) / 2;
      int fm = sgn(peval(f, mid));
      if (fm == 0) throw std::logic_error("rational root of an irreducible cubic");
      if (fm == flo) lo = mid;
      else hi = mid;
    }
  }
  return out;
}

bool NumberField::totally_positive(const Elem& x) const {
  for (int s : real_signs(x))
    if (s < 0) return false;
  return true;
}

bool NumberField::galois_group_is_S3() const { return !is_perfect_square(disc_K_); }

// ---------------------------------------------------------------- parser

Elem NumberField::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s.front() == '[') {
    // "[a0,a1,a2]"
    Vec3 pc;
    std::string inner = s.substr(1, s.size() - 2);
    std::stringstream ss(inner);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
      if (i >= 3) throw std::invalid_argument("too many coordinates");
      if (tok.size() >= 2 && tok.front() == '"') tok = tok.substr(1, tok.size() - 2);
      pc[i++] = parse_rat(tok);
    }
    if (i != 3) throw std::invalid_argument("expected three coordinates");
    return from_pc(pc);
  }
  size_t pos = 0;
  auto fail = [&](const std::string& why) -> Elem {
    throw std::invalid_argument("cannot parse element '" + std::string(text) + "': " + why);
  };
  std::function<Elem()> expr, term, factor, primary;
  primary = [&]() -> Elem {
    if (pos >= s.size()) return fail("unexpected end");
    char ch = s[pos];
    if (ch == '(') {
      ++pos;
      Elem e = expr();
      if (pos >= s.size() || s[pos] != ')') return fail("missing )");
      ++pos;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t st = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return from_rat(Rat(parse_int(s.substr(st, pos - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t st = pos;
      while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
      if (s.compare(st, pos - st, "a") != 0) return fail("unknown variable '" + s.substr(st, pos - st) + "'");
      return gen();
    }
    return fail(std::string("unexpected '") + ch + "'");
  };
  factor = [&]() -> Elem {
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      bool neg = s[pos] == '-';
      ++pos;
      Elem e = factor();
      return neg ? -e : e;
    }
    Elem b = primary();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      size_t st = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (st == pos) return fail("bad exponent");
      b = b.pow(std::stoul(s.substr(st, pos - st)));
    }
    return b;
  };
  term = [&]() -> Elem {
    Elem e = factor();
    while (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
      char op = s[pos++];
      Elem r = factor();
      e = (op == '*') ? e * r : e / r;
    }
    return e;
  };
  expr = [&]() -> Elem {
    Elem e = term();
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      char op = s[pos++];
      Elem r = term();
      e = (op == '+') ? e + r : e - r;
    }
    return e;
  };
  if (s.empty()) return fail("empty");
  Elem e = expr();
  if (pos != s.size()) return fail("trailing characters");
  return e;
}

}  // namespace adelic
