#include "adelic/config.hpp"
#include "adelic/glq.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace adelic;

namespace {

struct Globals {
  std::string config;
  bool transcript = false;
  bool pretty = false;
};

void emit(const json& j, const Globals& g) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << "\n"; }

Config need_config(const Globals& g) {
  if (g.config.empty()) throw ConfigError("--config is required for this command");
  return load_config(g.config);
}

const NumberField& need_field(const Config& c) {
  if (!c.field) throw ConfigError("config has no field section");
  return *c.field;
}

const Curve& need_curve(const Config& c) {
  if (!c.curve) throw ConfigError("config has no curve section");
  return *c.curve;
}

json fq_json(const FqElem& a, int f) {
  json j = json::array();
  for (int i = 0; i < f; ++i) j.push_back(a.c[i]);
  return j;
}

json prime_json(const PrimeIdeal& P) {
  json gens = json::array();
  for (auto& g : P.generators()) gens.push_back(g.str());
  return json{{"label", P.label()}, {"p", P.p()}, {"e", P.e()}, {"f", P.f()}, {"norm", to_dec(P.norm())}, {"generators", gens}};
}

PrimeIdeal named_prime(const NumberField& K, const std::string& s) { return prime_from_generator(K, K.parse(s)); }

int cmd_split(const Globals& g, std::uint64_t p) {
  Config c = need_config(g);
  json out = json::array();
  for (auto& P : split_prime(need_field(c), p)) out.push_back(prime_json(P));
  emit(json{{"p", p}, {"primes", out}}, g);
  return 0;
}

int cmd_reduce(const Globals& g, const std::string& prime) {
  Config c = need_config(g);
  const Curve& E = need_curve(c);
  PrimeIdeal P = named_prime(need_field(c), prime);
  ReductionInfo R = classify_reduction(E, P);
  json j{{"prime", prime_json(P)},
         {"type", to_string(R.type)},
         {"v_disc", R.v_disc},
         {"v_disc_min", R.v_disc_min},
         {"v_c4", R.v_c4},
         {"v_j", R.v_j},
         {"N", to_dec(R.N)}};
  if (R.type == RedType::good) {
    ReducedCurve C = reduce_at(E, P);
    int f = C.F.f();
    j["reduced"] = {fq_json(C.a1, f), fq_json(C.a2, f), fq_json(C.a3, f), fq_json(C.a4, f), fq_json(C.a6, f)};
    j["residue_modulus"] = C.F.modulus();
  }
  emit(j, g);
  return 0;
}

int cmd_count(const Globals& g, const std::string& prime, unsigned ext) {
  Config c = need_config(g);
  const Curve& E = need_curve(c);
  PrimeIdeal P = named_prime(need_field(c), prime);
  FrobData fd = frobenius(E, P, c.opts.search.point_count_ceiling);
  json j{{"prime", P.label()}, {"N", to_dec(fd.N)}, {"t", to_dec(fd.t)}, {"count", to_dec(Int(fd.N + 1 - fd.t))}};
  if (ext > 1) {
    Int qn = ipow(fd.N, ext);
    Int tn = trace_extend(fd.t, fd.N, ext);
    j["ext"] = ext;
    j["count_ext"] = to_dec(Int(qn + 1 - tn));
  }
  emit(j, g);
  return 0;
}

int cmd_certify(const Globals& g, bool two_torsion) {
  Config c = need_config(g);
  Options o = c.opts;
  o.transcript = g.transcript;
  Certificate cert = two_torsion ? certify_full_2tors(need_curve(c), o) : certify_all_mod_l(need_curve(c), o);
  emit(cert.to_json(g.transcript), g);
  return exit_code(cert.verdict);
}

FamilyConfig family_config(const Globals& g) { return g.config.empty() ? FamilyConfig{} : need_config(g).family; }

int cmd_family_assemble(const Globals& g) {
  FamilyConfig fc = family_config(g);
  emit(family_json(crt_assemble(fc.components)), g);
  return 0;
}

int cmd_family_scan(const Globals& g, std::uint64_t p) {
  json ex = json::array();
  for (auto [b, c] : intersection_exclusions(p)) ex.push_back({b, c});
  emit(json{{"p", p}, {"excluded", ex}}, g);
  return 0;
}

int cmd_family_spot(const Globals& g, int n) {
  if (n < 1) throw std::invalid_argument("spot-check count must be positive");
  FamilyConfig fc = family_config(g);
  CongruenceFamily fam = crt_assemble(fc.components);
  auto reps = family_spot_check(fam, n, fc.spot);
  json out = json::array();
  bool all = true;
  for (auto& r : reps) {
    out.push_back(member_json(r));
    all = all && r.all_pass();
  }
  emit(json{{"family", family_json(fam)}, {"members", out}, {"all_pass", all}}, g);
  return all ? 0 : 2;
}

int cmd_seven(const Globals& g) {
  Config c = need_config(g);
  if (!c.seven) throw ConfigError("config has no seven section");
  Certificate cert = certify_half_borel(c.seven->curve, c.seven->params, g.transcript);
  emit(cert.to_json(g.transcript), g);
  return exit_code(cert.verdict);
}

int cmd_glq(const Globals& g) {
  GlqReport r = glq_verify();
  json sq = json::array();
  for (auto& m : squares_of_v1_mod8()) sq.push_back(m.str());
  emit(json{{"squares_five", r.squares_five},
            {"commutator_identities", r.commutator_identities},
            {"commutator_lemma", r.commutator_lemma},
            {"v2_generation", r.v2_generation},
            {"square_identity", r.square_identity},
            {"squares_det_one", r.squares_det_one},
            {"squares", sq},
            {"verdict", r.all() ? "certified" : "failed"}},
       g);
  return r.all() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for maximal Galois images of elliptic curves over cubic fields"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON configuration")->check(CLI::ExistingFile);
  app.add_flag("--transcript", g.transcript, "include every witness check in the output");
  app.add_flag("--pretty", g.pretty, "indent the JSON output");

  std::function<int()> run;

  std::uint64_t p = 0;
  auto* split = app.add_subcommand("split", "prime ideals above p");
  split->add_option("p", p)->required();
  split->callback([&] { run = [&] { return cmd_split(g, p); }; });

  std::string prime;
  auto* reduce = app.add_subcommand("reduce", "reduction type at a prime given by a generator");
  reduce->add_option("prime", prime)->required();
  reduce->callback([&] { run = [&] { return cmd_reduce(g, prime); }; });

  unsigned ext = 1;
  auto* count = app.add_subcommand("count", "points on the reduction");
  count->add_option("prime", prime)->required();
  count->add_option("--ext", ext, "also count over the degree-n extension")->check(CLI::Range(1u, 64u));
  count->callback([&] { run = [&] { return cmd_count(g, prime, ext); }; });

  app.add_subcommand("certify-2tors", "full 2-torsion pipeline")->callback([&] {
    run = [&] { return cmd_certify(g, true); };
  });
  app.add_subcommand("certify-mod-l", "surjectivity mod every l")->callback([&] {
    run = [&] { return cmd_certify(g, false); };
  });

  auto* family = app.add_subcommand("family", "the E_{b,c} family");
  family->require_subcommand(1);
  family->add_subcommand("assemble", "CRT assembly of the congruence table")->callback([&] {
    run = [&] { return cmd_family_assemble(g); };
  });
  auto* scan = family->add_subcommand("scan", "residue pairs excluded mod p");
  scan->add_option("p", p)->required();
  scan->callback([&] { run = [&] { return cmd_family_scan(g, p); }; });
  int n = 1;
  auto* spot = family->add_subcommand("spot-check", "check the n smallest members");
  spot->add_option("n", n)->required();
  spot->callback([&] { run = [&] { return cmd_family_spot(g, n); }; });

  auto* seven = app.add_subcommand("seven", "half-Borel certification over Q");
  seven->require_subcommand(1);
  seven->add_subcommand("certify", "")->callback([&] { run = [&] { return cmd_seven(g); }; });

  auto* glq = app.add_subcommand("glq", "group-theory checks mod 8");
  glq->require_subcommand(1);
  glq->add_subcommand("verify", "")->callback([&] { run = [&] { return cmd_glq(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  try {
    return run ? run() : 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
