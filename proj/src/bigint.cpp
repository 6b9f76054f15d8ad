#include "adelic/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace adelic {

std::string to_dec(const Int& n) { return n.get_str(10); }

std::string to_dec(const Rat& q) { return q.get_str(10); }

Int parse_int(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Int r;
  if (t.empty() || r.set_str(t, 10) != 0) throw std::invalid_argument("bad integer: " + std::string(s));
  return r;
}

Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash)), den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

unsigned long valuation(Int n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool is_probable_prime(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  for (auto& [p, e] : factors) out.push_back(p);
  return out;
}

namespace {

// Brent's variant; returns 0 on failure
Int rho(const Int& n, unsigned long c, unsigned long max_iter) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Int y = 2, x, g = 1, q = 1, ys, t;
  unsigned long r = 1, m = 128, it = 0;
  auto f = [&](Int& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        f(y);
        t = x - y;
        q = q * abs(t);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
    it += r;
    if (it > max_iter) return 0;
  }
  if (g == n) {
    do {
      f(ys);
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

void split_into(const Int& n, std::vector<Int>& primes, Int& rest) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  Int d = 0;
  for (unsigned long c = 1; c < 40 && d == 0; ++c) d = rho(n, c, 1ul << 26);
  if (d == 0) {
    rest *= n;
    return;
  }
  split_into(d, primes, rest);
  split_into(n / d, primes, rest);
}

}  // namespace

Factorization factor(const Int& n0, unsigned long trial_bound) {
  if (n0 == 0) throw std::invalid_argument("factor(0)");
  Factorization out;
  Int n = abs(n0);
  std::vector<Int> ps;
  for (unsigned long p = 2; p <= trial_bound; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ps.push_back(Int(p));
      }
    }
  }
  if (n > 1) split_into(n, ps, out.unfactored);
  std::sort(ps.begin(), ps.end());
  for (auto& p : ps) {
    if (!out.factors.empty() && out.factors.back().first == p)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(p, 1u);
  }
  return out;
}

std::vector<Int> prime_divisors(const Int& n) {
  auto f = factor(n);
  if (!f.complete()) throw std::runtime_error("could not factor " + to_dec(f.unfactored));
  return f.primes();
}

Int crt2(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  Int inv;
  if (!mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) && m2 != 1)
    throw std::invalid_argument("crt2: moduli not coprime");
  if (m2 == 1) inv = 0;
  Int m = m1 * m2;
  Int x = r1 + m1 * (((r2 - r1) * inv) % m2);
  x %= m;
  if (x < 0) x += m;
  return x;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr) {
    __int128 q = r / nr, tmp;
    tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

std::uint64_t mod_u64(const Int& a, std::uint64_t m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), Int(m).get_mpz_t());
  return r.get_ui();
}

std::uint64_t mod_u64(const Rat& a, std::uint64_t m) {
  std::uint64_t num = mod_u64(a.get_num(), m), den = mod_u64(a.get_den(), m);
  return mulmod(num, invmod(den, m), m);
}

}  // namespace adelic

namespace adelic {

int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int s = 1;
  while (a) {
    int tz = __builtin_ctzll(a);
    a >>= tz;
    if ((tz & 1) && (n % 8 == 3 || n % 8 == 5)) s = -s;
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    std::uint64_t t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? s : 0;
}

}  // namespace adelic
