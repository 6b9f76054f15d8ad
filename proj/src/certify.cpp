#include "adelic/certify.hpp"

#include <omp.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adelic {

std::string to_string(Status s) {
  switch (s) {
    case Status::certified: return "certified";
    case Status::certified_per_reference: return "certified_per_reference";
    case Status::failed: return "failed";
    case Status::per_reference: return "per_reference";
    default: return "undetermined";
  }
}

bool passes(Status s) { return s == Status::certified || s == Status::certified_per_reference; }

int exit_code(Status v) {
  if (passes(v)) return 0;
  return v == Status::failed ? 2 : 1;
}

Condition& Certificate::add(Condition c) {
  conditions.push_back(std::move(c));
  return conditions.back();
}

const Condition* Certificate::find(const std::string& id) const {
  for (auto& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

void Certificate::finalize() {
  bool und = false;
  for (auto& c : conditions) {
    if (!c.required) continue;
    if (c.status == Status::failed) {
      verdict = Status::failed;
      return;
    }
    if (!passes(c.status)) und = true;
  }
  verdict = und ? Status::undetermined : Status::certified;
}

json Certificate::to_json(bool with_transcript) const {
  json j;
  j["curve"] = curve;
  j["conditions"] = json::array();
  for (auto& c : conditions)
    j["conditions"].push_back({{"id", c.id},
                               {"status", to_string(c.status)},
                               {"required", c.required},
                               {"witnesses", c.witnesses},
                               {"values", c.values}});
  j["verdict"] = to_string(verdict);
  j["tool_version"] = "1.0.0";
  if (with_transcript) j["transcript"] = transcript;
  return j;
}

void ClassData::validate() const {
  if (d < 1) throw std::invalid_argument("narrow class number must be positive");
  if (!u) return;
  if (!u->field().totally_positive(*u)) throw std::invalid_argument("unit u is not totally positive");
  if (abs(u->norm()) != 1) throw std::invalid_argument("u is not a unit");
}

json curve_json(const Curve& E) {
  json j;
  j["field"] = {{"poly", {to_dec(E.field().poly()[0]), to_dec(E.field().poly()[1]), to_dec(E.field().poly()[2])}}};
  if (E.roots) {
    j["roots"] = json::array();
    for (auto& e : *E.roots) j["roots"].push_back(e.str());
  }
  j["a"] = {E.a1.str(), E.a2.str(), E.a3.str(), E.a4.str(), E.a6.str()};
  return j;
}

namespace {

json int_array(const std::vector<Int>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_dec(x));
  return a;
}

void add_sorted(std::vector<Int>& v, const Int& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  std::sort(v.begin(), v.end());
}

std::vector<Int> ramified_primes(const NumberField& K) { return prime_divisors(abs(K.disc_K())); }

std::uint64_t mod_l(const Int& x, std::uint64_t l) { return mod_u64(x, l); }

}  // namespace

// ---------------------------------------------------------------- primes

FrobSource::FrobSource(const Curve& E, const SearchParams& sp) : E_(&E), sp_(sp), stream_(E.field()) {}

void FrobSource::extend() {
  if (done_) return;
  std::vector<PrimeIdeal> batch;
  while (batch.size() < 32) {
    PrimeIdeal P = stream_.next();
    if (P.norm() > sp_.max_prime_norm || P.norm() > sp_.point_count_ceiling) {
      done_ = true;
      break;
    }
    batch.push_back(P);
  }
  std::vector<std::optional<FrobData>> res(batch.size());
  const long nb = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < nb; ++i) {
    ReductionInfo R = classify_reduction(*E_, batch[i]);
    if (R.type == RedType::good) res[i] = frobenius(*E_, batch[i], sp_.point_count_ceiling);
  }
  for (size_t i = 0; i < batch.size(); ++i)
    if (res[i]) good_.push_back(Entry{batch[i], *res[i]});
}

const FrobSource::Entry* FrobSource::at(std::size_t i) {
  std::lock_guard<std::mutex> lk(mu_);
  while (good_.size() <= i && !done_) extend();
  return i < good_.size() ? &good_[i] : nullptr;
}

std::optional<FrobData> FrobSource::datum(const PrimeIdeal& P) {
  std::string key = P.label();
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::optional<FrobData> fd;
  if (P.norm() <= sp_.point_count_ceiling && classify_reduction(*E_, P).type == RedType::good)
    fd = frobenius(*E_, P, sp_.point_count_ceiling);
  std::lock_guard<std::mutex> lk(mu_);
  cache_[key] = fd;
  return fd;
}

std::vector<PrimeIdeal> hint_primes(const NumberField& K, const std::vector<std::string>& gens) {
  std::vector<PrimeIdeal> out;
  for (auto& g : gens) out.push_back(prime_from_generator(K, K.parse(g)));
  return out;
}

std::vector<BadPrime> bad_primes(const Curve& E) {
  std::vector<BadPrime> out;
  for (auto& [P, v] : factor_element(E.field(), invariants(E).disc)) {
    ReductionInfo R = classify_reduction(E, P);
    if (R.type != RedType::good) out.push_back(BadPrime{P, R});
  }
  return out;
}

// ---------------------------------------------------------------- exclusion

namespace {

Int sample_gcd(FrobSource& src, const std::vector<PrimeIdeal>& hints, int num, unsigned n,
               std::vector<std::pair<std::string, Int>>& samples, const Modulus& avoid) {
  Int g = 0;
  auto take = [&](const PrimeIdeal& P, const FrobData& fd) {
    for (auto& [Q, e] : avoid)
      if (Q == P) return;
    for (auto& s : samples)
      if (s.first == P.label()) return;
    Int c = n == 1 ? Int(fd.N + 1 - fd.t) : Int(ipow(fd.N, n) + 1 - trace_extend(fd.t, fd.N, n));
    Int g2 = gcd(g, c);
    if (g != 0 && !mpz_divisible_p(g.get_mpz_t(), g2.get_mpz_t())) throw std::logic_error("gcd grew");
    g = g2;
    samples.emplace_back(P.label(), c);
  };
  for (auto& P : hints) {
    auto fd = src.datum(P);
    if (!fd) throw std::invalid_argument("sample prime " + P.label() + " is not a countable good prime");
    take(P, *fd);
  }
  int taken = 0;
  for (size_t i = 0; taken < num; ++i) {
    const FrobSource::Entry* e = src.at(i);
    if (!e) break;
    size_t before = samples.size();
    take(e->P, e->fd);
    if (samples.size() > before) ++taken;
  }
  if (samples.empty()) throw std::runtime_error("no good sample primes");
  return g;
}

}  // namespace

ExclusionResult exclusion_set_semistable(const Curve& E, const ClassData& cd, FrobSource& src,
                                         const std::vector<PrimeIdeal>& sample_hints, int num_samples) {
  const NumberField& K = E.field();
  if (K.real_embeddings() < 1) throw std::invalid_argument("field has no real embedding");
  if (!cd.trivial_narrow_class) throw std::invalid_argument("trivial narrow class group not flagged");
  if (!K.galois_group_is_S3()) throw std::invalid_argument("field meets the cyclotomic extension");
  auto bad = bad_primes(E);
  for (auto& b : bad)
    if (!b.info.semistable()) throw std::invalid_argument("curve is not semistable at " + b.P.label());
  ExclusionResult r;
  r.g = sample_gcd(src, sample_hints, num_samples, 1, r.samples, {});
  r.special = prime_divisors(r.g);
  for (auto& q : ramified_primes(K)) add_sorted(r.special, q);
  for (int l : {2, 3, 5}) {
    bool ok = false;
    for (auto& b : bad)
      if (b.info.v_j % l != 0) ok = true;
    if (!ok) add_sorted(r.special, Int(l));
  }
  r.exception = r.special;
  return r;
}

std::string ConductorModulus::label() const {
  if (m_f.empty()) return "1";
  std::string s;
  for (auto& [P, e] : m_f) s += (s.empty() ? "" : "*") + P.label() + "^" + std::to_string(e);
  return s;
}

ConductorModulus conductor_modulus(const NumberField& K, const std::vector<BadPrime>& bad, Mode mode,
                                   bool arl) {
  if (K.disc_K() % 2 == 0) throw std::invalid_argument("2 ramifies in K");
  if (mode == Mode::general && K.disc_K() % 3 == 0) throw std::invalid_argument("3 ramifies in K");
  ConductorModulus cm;
  for (auto& b : bad) {
    const ReductionInfo& R = b.info;
    if (R.semistable()) continue;
    if (R.type == RedType::unclassified) throw std::runtime_error("reduction type unknown at " + b.P.label());
    bool pot_mult = R.type == RedType::additive_pot_mult;
    int i = 0;
    if (mode == Mode::full2tors) {
      if (b.P.p() != 2) {
        i = (!pot_mult && !arl) ? 0 : 1;
      } else {
        int r = (arl || pot_mult) ? 3 : 0;
        int s = (b.P.f() == 1 && arl && pot_mult) ? 1 : 0;
        i = r + s;
      }
    } else {
      if (b.P.p() == 2) {
        int r = pot_mult ? 3 : 2;
        i = 2 + (r + b.P.f() - 1) / b.P.f();
      } else if (b.P.p() == 3) {
        i = 2;
      } else {
        i = 1;
      }
    }
    if (i > 0) cm.m_f.emplace_back(b.P, i);
  }
  std::sort(cm.m_f.begin(), cm.m_f.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return cm;
}

ConductorModulus conductor_modulus(const Curve& E, Mode mode, bool arl) {
  return conductor_modulus(E.field(), bad_primes(E), mode, arl);
}

UnitBound unit_bound(const ClassData& cd, const Modulus& m_f) {
  if (!cd.u) throw std::invalid_argument("class data has no unit");
  const Elem& u = *cd.u;
  UnitBound ub;
  ub.r = modulus_unit_count(m_f);
  ub.k = cd.k_override ? *cd.k_override : unit_order_mod(u, m_f);
  if (ub.k < 1 || (cd.d * ub.r) % ub.k != 0) throw std::invalid_argument("k must divide d r");
  ub.count = cd.d * ub.r / ub.k;
  ub.B = 1;
  Elem uk = u.pow(ub.k.get_ui()), p = uk;
  for (Int i = 1; i <= ub.count; ++i) {
    Elem f = p - 1;
    if (f.is_zero()) throw std::invalid_argument("u^(ik) = 1: u is a torsion unit");
    ub.B *= Rat(abs(f.norm())).get_num();
    p *= uk;
  }
  return ub;
}

ExclusionResult exclusion_set_general(const Curve& E, const ClassData& cd, Mode mode, FrobSource& src,
                                      const std::vector<PrimeIdeal>& sample_hints, int num_samples, bool arl) {
  const NumberField& K = E.field();
  if (!K.galois_group_is_S3()) throw std::invalid_argument("K is Galois over Q");
  auto bad = bad_primes(E);
  ConductorModulus cm = conductor_modulus(K, bad, mode, arl);
  UnitBound ub = unit_bound(cd, cm.m_f);
  ExclusionResult r;
  r.m_f = cm.m_f;
  r.B = ub.B;
  for (auto& q : ramified_primes(K)) add_sorted(r.exception, q);
  bool have_v = false;
  std::set<Int> vj;
  for (auto& b : bad) {
    if (!b.info.semistable()) {
      add_sorted(r.exception, Int(b.P.p()));
      continue;
    }
    if (b.info.v_j >= 0) continue;
    auto d = prime_divisors(Int(-b.info.v_j));
    std::set<Int> here(d.begin(), d.end());
    if (!have_v) {
      vj = here;
    } else {
      std::set<Int> keep;
      for (auto& x : vj)
        if (here.count(x)) keep.insert(x);
      vj = keep;
    }
    have_v = true;
  }
  if (!have_v) throw std::invalid_argument("no semistable prime with v(j) < 0");
  for (auto& x : vj) add_sorted(r.exception, x);
  for (auto& q : prime_divisors(ub.B)) add_sorted(r.exception, q);
  auto it = cd.ray_class_orders.find(cm.label());
  // #C^m = d r / [U+ : U+_{m,1}]; with one real place U+ = <u>, otherwise d r is a multiple
  Int n = cd.d * ub.r;
  if (it != cd.ray_class_orders.end()) n = it->second;
  else if (K.real_embeddings() == 1) n /= unit_order_mod(*cd.u, cm.m_f);
  if (n < 1 || n > 64) throw std::invalid_argument("ray class order out of range");
  r.n = static_cast<unsigned>(n.get_ui());
  r.g = sample_gcd(src, sample_hints, num_samples, r.n, r.samples, cm.m_f);
  r.special = r.exception;
  for (auto& q : prime_divisors(r.g)) add_sorted(r.special, q);
  return r;
}

// ---------------------------------------------------------------- witnesses

FrobWitness frob_witness(const PrimeIdeal& P, const FrobData& fd, std::uint64_t l) {
  FrobWitness w{P, fd};
  std::uint64_t t = mod_l(fd.t, l), N = mod_l(fd.N, l);
  w.disc_res = (mulmod(t, t, l) + l - mulmod(4 % l, N, l)) % l;
  w.symbol = w.disc_res == 0 ? 0 : jacobi_u64(w.disc_res, l);
  w.u = N == 0 ? 0 : mulmod(mulmod(t, t, l), invmod(N, l), l);
  w.u_poly = (mulmod(w.u, w.u, l) + l - mulmod(3, w.u, l) + 1) % l;
  return w;
}

namespace {
bool t_nonzero(const FrobWitness& w, std::uint64_t l) { return mod_l(w.fd.t, l) != 0; }
}  // namespace

bool is_s1(const FrobWitness& w) { return w.symbol == -1; }
bool is_s2(const FrobWitness& w) { return w.symbol == 1; }
bool is_t(const FrobWitness& w) { return w.u != 0 && w.u != 1 && w.u != 2 && w.u != 4 && w.u_poly != 0; }

RoleResult role_witnesses(FrobSource& src, std::uint64_t l, const RoleHints& hints, std::vector<std::string>* log) {
  if (l < 5) throw std::invalid_argument("role witnesses need l >= 5");
  RoleResult res;
  auto consider = [&](const PrimeIdeal& P, const FrobData& fd, int only_role) {
    if (mod_l(fd.N, l) == 0) return;
    ++res.scanned;
    FrobWitness w = frob_witness(P, fd, l);
    bool tz = t_nonzero(w, l);
    if (log) {
      std::ostringstream os;
      os << "l=" << l << " " << P.label() << " N=" << fd.N << " t=" << fd.t << " t^2-4N=" << w.disc_res
         << " u=" << w.u << " u^2-3u+1=" << w.u_poly;
      log->push_back(os.str());
    }
    if ((only_role < 0 || only_role == 0) && !res.s1 && tz && is_s1(w)) res.s1 = w;
    if ((only_role < 0 || only_role == 1) && !res.s2 && tz && is_s2(w)) res.s2 = w;
    if ((only_role < 0 || only_role == 2) && !res.t && is_t(w)) res.t = w;
  };
  for (int role = 0; role < 3; ++role)
    for (auto& P : hints[role])
      if (auto fd = src.datum(P)) consider(P, *fd, role);
  for (size_t i = 0; !(res.s1 && res.s2 && res.t); ++i) {
    const FrobSource::Entry* e = src.at(i);
    if (!e) break;
    consider(e->P, e->fd, -1);
  }
  res.found = res.s1 && res.s2 && res.t;
  return res;
}

bool mod9_pattern(const FrobData& fd) { return mod_l(fd.t, 9) == 6 && mod_l(fd.N, 9) == 2; }

PrimeWitness mod9_certify(FrobSource& src, const std::vector<PrimeIdeal>& hints, std::vector<std::string>* log) {
  PrimeWitness res;
  auto consider = [&](const PrimeIdeal& P, const FrobData& fd) {
    if (P.p() == 3) return false;
    ++res.scanned;
    bool ok = mod9_pattern(fd);
    if (log)
      log->push_back("mod9 " + P.label() + " N=" + to_dec(fd.N) + " t=" + to_dec(fd.t) + (ok ? " match" : ""));
    if (ok) {
      res.found = true;
      res.P = P;
      res.fd = fd;
    }
    return ok;
  };
  for (auto& P : hints)
    if (auto fd = src.datum(P))
      if (consider(P, *fd)) return res;
  for (size_t i = 0;; ++i) {
    const FrobSource::Entry* e = src.at(i);
    if (!e) break;
    if (consider(e->P, e->fd)) return res;
  }
  return res;
}

PrimeWitness mod8_certify(FrobSource& src, const std::vector<PrimeIdeal>& hints, std::vector<std::string>* log) {
  PrimeWitness res;
  const Curve& E = src.curve();
  auto consider = [&](const PrimeIdeal& P, const FrobData& fd) {
    if (P.norm() % 8 != 5) return false;
    ++res.scanned;
    Int count = fd.N + 1 - fd.t;
    bool ok = count % 16 == 0 && full_four_torsion(reduce_at(E, P));
    if (log) log->push_back("mod8 " + P.label() + " N=" + to_dec(fd.N) + " #=" + to_dec(count) + (ok ? " E[4] rational" : ""));
    if (ok) {
      res.found = true;
      res.P = P;
      res.fd = fd;
    }
    return ok;
  };
  for (auto& P : hints)
    if (auto fd = src.datum(P))
      if (consider(P, *fd)) return res;
  for (size_t i = 0;; ++i) {
    const FrobSource::Entry* e = src.at(i);
    if (!e) break;
    if (consider(e->P, e->fd)) return res;
  }
  return res;
}

// ---------------------------------------------------------------- pipelines

namespace {

json frob_json(const PrimeIdeal& P, const FrobData& fd) {
  return {{"prime", P.label()}, {"norm", to_dec(fd.N)}, {"trace", to_dec(fd.t)},
          {"count", to_dec(Int(fd.N + 1 - fd.t))}};
}

json witness_json(const FrobWitness& w, const std::string& role) {
  json j = frob_json(w.P, w.fd);
  j["role"] = role;
  j["t2_minus_4N"] = w.disc_res;
  j["u"] = w.u;
  j["u2_minus_3u_plus_1"] = w.u_poly;
  return j;
}

Status from_tri(Tri t) {
  if (t == Tri::yes) return Status::certified;
  if (t == Tri::no) return Status::failed;
  return Status::undetermined;
}

json exclusion_json(const ExclusionResult& r) {
  json v;
  v["gcd"] = to_dec(r.g);
  v["extension_degree"] = r.n;
  v["special"] = int_array(r.special);
  v["exception"] = int_array(r.exception);
  v["B"] = to_dec(r.B);
  json m = json::array();
  for (auto& [P, e] : r.m_f) m.push_back({{"prime", P.label()}, {"exponent", e}});
  v["m_f"] = m;
  return v;
}

json exclusion_witnesses(const ExclusionResult& r) {
  json w = json::array();
  for (auto& [lab, c] : r.samples) w.push_back({{"prime", lab}, {"count", to_dec(c)}});
  return w;
}

void add_roles(Certificate& C, FrobSource& src, std::uint64_t l, const Options& opts, std::vector<std::string>* log) {
  Condition c{"roles_l" + std::to_string(l)};
  RoleHints rh;
  auto it = opts.hints.roles.find(l);
  if (it != opts.hints.roles.end())
    for (int r = 0; r < 3; ++r) rh[r] = hint_primes(src.curve().field(), it->second[r]);
  RoleResult p = role_witnesses(src, l, rh, log);
  c.values["l"] = l;
  c.values["scanned"] = p.scanned;
  if (p.s1) c.witnesses.push_back(witness_json(*p.s1, "s1"));
  if (p.s2) c.witnesses.push_back(witness_json(*p.s2, "s2"));
  if (p.t) c.witnesses.push_back(witness_json(*p.t, "t"));
  c.status = p.found ? Status::certified : Status::undetermined;
  C.add(std::move(c));
}

template <class F>
void guarded(Condition& c, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    c.status = Status::undetermined;
    c.values["error"] = e.what();
  }
}

}  // namespace

Certificate certify_full_2tors(const Curve& E, const Options& opts) {
  if (!E.roots) throw std::invalid_argument("certify-2tors needs a curve given by its 2-torsion abscissae");
  opts.cd.validate();
  const NumberField& K = E.field();
  Certificate C;
  C.curve = curve_json(E);
  std::vector<std::string>* log = opts.transcript ? &C.transcript : nullptr;

  Condition gal{"galois_S3"};
  gal.status = K.galois_group_is_S3() ? Status::certified : Status::failed;
  gal.values["disc_K"] = to_dec(K.disc_K());
  C.add(gal);

  WitnessPool pool(K, opts.search.witness_budget);
  Condition m4{"mod4_degree_16"};
  Mod4Result mr = mod4_degree_is_16(E, pool);
  m4.status = from_tri(mr.verdict);
  for (auto& ev : mr.evidence) {
    json w{{"product", ev.label}, {"verdict", to_string(ev.verdict.status)}};
    if (ev.verdict.witness) w["witness"] = ev.verdict.witness->label();
    m4.witnesses.push_back(w);
    if (log) log->push_back("mod4 " + ev.label + " " + to_string(ev.verdict.status));
  }
  C.add(m4);

  Condition cyc{"cyclotomic_intersection"};
  CycResult cr = cyclotomic_intersection_ok(E, pool);
  cyc.status = from_tri(cr.verdict);
  cyc.values["pairs"] = cr.pairs;
  cyc.values["square_ratios"] = cr.squares;
  cyc.values["S"] = int_array(cr.S);
  for (auto& ev : cr.evidence) {
    json w{{"s", to_dec(ev.s)}, {"t", d_label(ev.tmask)}, {"verdict", to_string(ev.verdict.status)}};
    if (ev.verdict.witness) w["witness"] = ev.verdict.witness->label();
    cyc.witnesses.push_back(w);
    if (log)
      log->push_back("pair s=" + to_dec(ev.s) + " t=" + d_label(ev.tmask) + " " + to_string(ev.verdict.status) +
                     (ev.verdict.witness ? " at " + ev.verdict.witness->label() : ""));
  }
  C.add(cyc);

  FrobSource src(E, opts.search);
  auto bad = bad_primes(E);
  bool semistable = std::all_of(bad.begin(), bad.end(), [](const BadPrime& b) { return b.info.semistable(); });
  bool semi_route = semistable && opts.cd.trivial_narrow_class;
  Condition ex{semi_route ? "exclusion_semistable" : "exclusion_general"};
  std::vector<Int> residual;
  bool ex_ok = false;
  guarded(ex, [&] {
    auto hints = hint_primes(K, opts.hints.exclusion);
    ExclusionResult r = semi_route
                            ? exclusion_set_semistable(E, opts.cd, src, hints, opts.search.num_sample_primes)
                            : exclusion_set_general(E, opts.cd, Mode::full2tors, src, hints,
                                                    opts.search.num_sample_primes, opts.assume_ramified_in_L);
    ex.values = exclusion_json(r);
    ex.witnesses = exclusion_witnesses(r);
    if (log)
      for (auto& [lab, c] : r.samples) log->push_back("sample " + lab + " #=" + to_dec(c));
    residual = r.special;
    ex.status = Status::certified;
    ex_ok = true;
  });
  C.add(ex);

  if (ex_ok) {
    for (auto& l : residual)
      if (l >= 5) add_roles(C, src, l.get_ui(), opts, log);
    Condition m3{"mod3"};
    bool three = std::find(residual.begin(), residual.end(), Int(3)) != residual.end();
    m3.status = three ? Status::undetermined : Status::certified;
    m3.values["route"] = three ? "3 is residual; no witness route" : "exclusion";
    C.add(m3);
  }

  Condition m9{"mod9"};
  guarded(m9, [&] {
    PrimeWitness w = mod9_certify(src, hint_primes(K, opts.hints.mod9), log);
    m9.values["scanned"] = w.scanned;
    if (w.found) {
      json j = frob_json(*w.P, *w.fd);
      j["char_poly_mod9"] = "(t-7)(t-8)";
      m9.witnesses.push_back(j);
    }
    m9.status = w.found ? Status::certified_per_reference : Status::undetermined;
  });
  C.add(m9);

  Condition m8{"mod8"};
  guarded(m8, [&] {
    if (!passes(C.find("mod4_degree_16")->status)) {
      m8.values["note"] = "mod-4 image not certified";
      return;
    }
    PrimeWitness w = mod8_certify(src, hint_primes(K, opts.hints.mod8), log);
    m8.values["scanned"] = w.scanned;
    if (w.found) {
      json j = frob_json(*w.P, *w.fd);
      j["norm_mod8"] = mod_l(w.fd->N, 8);
      j["full_four_torsion"] = true;
      m8.witnesses.push_back(j);
    }
    m8.status = w.found ? Status::certified : Status::undetermined;
  });
  C.add(m8);

  C.finalize();
  return C;
}

namespace {

// x^3 + (b2/4) x^2 + (b4/2) x + b6/4 has no root in K: a prime where it has no root downstairs
std::optional<PrimeIdeal> two_division_irreducible(const Curve& E, const WitnessPool& pool, int budget) {
  Invariants I = invariants(E);
  std::array<Elem, 3> c{I.b6 * Rat(1, 4), I.b4 * Rat(1, 2), I.b2 * Rat(1, 4)};
  int tried = 0;
  for (auto& P : pool.primes()) {
    if (tried >= budget) break;
    bool integral = true;
    for (auto& x : c)
      if (!x.is_zero() && P.valuation(x) < 0) integral = false;
    if (!integral || P.valuation(I.disc) != 0) continue;
    ++tried;
    const FiniteField& F = P.residue_field();
    FqPoly poly{P.residue(c[0]), P.residue(c[1]), P.residue(c[2]), F.one()};
    if (roots_deg_le3(F, poly).empty()) return P;
  }
  return std::nullopt;
}

}  // namespace

Certificate certify_all_mod_l(const Curve& E, const Options& opts) {
  opts.cd.validate();
  const NumberField& K = E.field();
  Certificate C;
  C.curve = curve_json(E);
  std::vector<std::string>* log = opts.transcript ? &C.transcript : nullptr;

  Condition gal{"galois_S3"};
  gal.status = K.galois_group_is_S3() ? Status::certified : Status::failed;
  gal.values["disc_K"] = to_dec(K.disc_K());
  C.add(gal);

  WitnessPool pool(K, opts.search.witness_budget);
  Condition sd{"sqrt_disc_not_cyclotomic"};
  guarded(sd, [&] {
    CycResult r = sqrt_disc_in_cyclotomic(E, pool);
    sd.values["S"] = int_array(r.S);
    sd.values["ratios"] = r.pairs;
    for (auto& ev : r.evidence) {
      json w{{"s", to_dec(ev.s)}, {"verdict", to_string(ev.verdict.status)}};
      if (ev.verdict.witness) w["witness"] = ev.verdict.witness->label();
      sd.witnesses.push_back(w);
    }
    sd.status = r.verdict == Tri::no ? Status::certified
                : r.verdict == Tri::yes ? Status::failed
                                        : Status::undetermined;
  });
  C.add(sd);

  Condition m2{"mod2"};
  guarded(m2, [&] {
    auto irr = two_division_irreducible(E, pool, opts.search.witness_budget);
    SquareVerdict dv = is_square_in_K(invariants(E).disc, pool);
    if (irr) m2.witnesses.push_back({{"no_root_mod", irr->label()}});
    if (dv.witness) m2.witnesses.push_back({{"disc_nonsquare_at", dv.witness->label()}});
    if (dv.status == SqStatus::Square) m2.status = Status::failed;
    else m2.status = irr && dv.status == SqStatus::NonSquare ? Status::certified : Status::undetermined;
  });
  C.add(m2);

  FrobSource src(E, opts.search);
  Condition ex{"exclusion_general"};
  std::vector<Int> residual;
  bool ex_ok = false;
  guarded(ex, [&] {
    ExclusionResult r = exclusion_set_general(E, opts.cd, Mode::general, src, hint_primes(K, opts.hints.exclusion),
                                              opts.search.num_sample_primes, opts.assume_ramified_in_L);
    ex.values = exclusion_json(r);
    ex.witnesses = exclusion_witnesses(r);
    if (log)
      for (auto& [lab, c] : r.samples) log->push_back("sample " + lab + " #=" + to_dec(c));
    residual = r.special;
    ex.status = Status::certified;
    ex_ok = true;
  });
  C.add(ex);
  if (ex_ok) {
    for (auto& l : residual)
      if (l >= 5) add_roles(C, src, l.get_ui(), opts, log);
    if (std::find(residual.begin(), residual.end(), Int(3)) != residual.end()) {
      Condition m3{"mod3"};
      m3.values["route"] = "3 is residual; no witness route";
      C.add(m3);
    }
  }

  Condition adelic{"adelic_assembly"};
  adelic.required = false;
  adelic.status = Status::per_reference;
  adelic.values["note"] = "2-adic and 3-adic lifting for torsion-free curves is not machine-checked";
  C.add(adelic);

  C.finalize();
  return C;
}

}  // namespace adelic
