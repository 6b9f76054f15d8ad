#include "adelic/config.hpp"

#include <fstream>

namespace adelic {

Int parse_int_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("expected an integer or a decimal string, got " + j.dump());
}

namespace {

Rat parse_rat_json(const json& j) {
  if (j.is_number_integer()) return Rat(parse_int_json(j));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ConfigError("expected a rational, got " + j.dump());
}

std::uint64_t parse_u64(const json& j) {
  Int v = parse_int_json(j);
  if (v < 0 || !v.fits_ulong_p()) throw ConfigError("expected a non-negative machine integer, got " + j.dump());
  return v.get_ui();
}

std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (auto& x : j) {
    if (!x.is_string()) throw ConfigError(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::unique_ptr<NumberField> parse_field(const json& f) {
  if (!f.contains("poly") || !f["poly"].is_array() || f["poly"].size() != 3)
    throw ConfigError("field.poly must hold three coefficients c0, c1, c2");
  std::array<Int, 3> poly{parse_int_json(f["poly"][0]), parse_int_json(f["poly"][1]), parse_int_json(f["poly"][2])};
  std::optional<Mat3> basis;
  if (f.contains("integral_basis")) {
    const json& b = f["integral_basis"];
    if (!b.is_array() || b.size() != 3) throw ConfigError("integral_basis must be 3x3");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
      if (!b[i].is_array() || b[i].size() != 3) throw ConfigError("integral_basis must be 3x3");
      for (int k = 0; k < 3; ++k) m[i][k] = parse_rat_json(b[i][k]);
    }
    basis = m;
  }
  auto K = std::make_unique<NumberField>(poly, basis, f.value("label", std::string()));
  if (f.contains("index_splittings")) {
    std::vector<IndexPrimeSpec> specs;
    for (auto& s : f["index_splittings"]) {
      IndexPrimeSpec sp;
      sp.p = parse_int_json(s.at("p"));
      for (auto& g : s.at("gens")) sp.gens.push_back(parse_elem(*K, g).pc());
      sp.e = s.value("e", 1);
      sp.f = s.value("f", 1);
      specs.push_back(sp);
    }
    K->set_index_splittings(std::move(specs));
  }
  return K;
}

Curve parse_curve(const NumberField& K, const json& c) {
  if (c.contains("roots")) {
    auto& r = c["roots"];
    if (!r.is_array() || r.size() != 3) throw ConfigError("curve.roots must hold three elements");
    return curve_from_roots(parse_elem(K, r[0]), parse_elem(K, r[1]), parse_elem(K, r[2]));
  }
  if (c.contains("a")) {
    auto& a = c["a"];
    if (!a.is_array() || a.size() != 5) throw ConfigError("curve.a must hold a1, a2, a3, a4, a6");
    return curve_from_coeffs(parse_elem(K, a[0]), parse_elem(K, a[1]), parse_elem(K, a[2]), parse_elem(K, a[3]),
                             parse_elem(K, a[4]));
  }
  throw ConfigError("curve needs 'roots' or 'a'");
}

ClassData parse_class_data(const NumberField& K, const json& c) {
  ClassData cd;
  cd.d = parse_int_json(c.value("d", json(1)));
  if (c.contains("u")) cd.u = parse_elem(K, c["u"]);
  if (c.contains("k_override")) cd.k_override = parse_int_json(c["k_override"]);
  if (c.contains("ray_class_orders"))
    for (auto& [k, v] : c["ray_class_orders"].items()) cd.ray_class_orders[k] = parse_int_json(v);
  cd.trivial_narrow_class = c.value("trivial_narrow_class", false);
  cd.unit_u_minus_1_unit = c.value("unit_u_minus_1_unit", false);
  cd.validate();
  return cd;
}

SearchParams parse_search(const json& s) {
  SearchParams sp;
  if (s.contains("max_prime_norm")) sp.max_prime_norm = parse_u64(s["max_prime_norm"]);
  if (s.contains("num_sample_primes")) sp.num_sample_primes = static_cast<int>(parse_u64(s["num_sample_primes"]));
  if (s.contains("witness_budget")) sp.witness_budget = static_cast<int>(parse_u64(s["witness_budget"]));
  if (s.contains("point_count_ceiling")) sp.point_count_ceiling = parse_u64(s["point_count_ceiling"]);
  return sp;
}

Hints parse_hints(const NumberField& K, const json& h) {
  Hints H;
  if (h.contains("exclusion")) H.exclusion = strings(h["exclusion"], "hints.exclusion");
  if (h.contains("mod9")) H.mod9 = strings(h["mod9"], "hints.mod9");
  if (h.contains("mod8")) H.mod8 = strings(h["mod8"], "hints.mod8");
  if (h.contains("roles"))
    for (auto& [l, roles] : h["roles"].items()) {
      std::array<std::vector<std::string>, 3> r;
      const char* names[3] = {"s1", "s2", "t"};
      for (int i = 0; i < 3; ++i)
        if (roles.contains(names[i])) r[i] = strings(roles[names[i]], "hints.roles role");
      H.roles[parse_u64(json(l))] = r;
    }
  // every hint must name a prime
  auto check = [&](const std::vector<std::string>& v) { hint_primes(K, v); };
  check(H.exclusion);
  check(H.mod9);
  check(H.mod8);
  for (auto& [l, r] : H.roles)
    for (auto& v : r) check(v);
  return H;
}

FamilyConfig parse_family(const json& f) {
  FamilyConfig fc;
  if (f.contains("components")) {
    fc.components.clear();
    for (auto& c : f["components"])
      fc.components.push_back(Component{c.at("id").get<std::string>(), parse_int_json(c.at("modulus")),
                                        parse_int_json(c.at("b")), parse_int_json(c.at("c"))});
  }
  SpotCheckOptions& o = fc.spot;
  if (f.contains("mod4_primes")) o.mod4_primes = strings(f["mod4_primes"], "family.mod4_primes");
  if (f.contains("count_prime")) o.count_prime = f["count_prime"].get<std::string>();
  if (f.contains("expected_count")) o.expected_count = parse_u64(f["expected_count"]);
  if (f.contains("mod8_prime")) o.mod8_prime = f["mod8_prime"].get<std::string>();
  if (f.contains("mod9_prime")) o.mod9_prime = f["mod9_prime"].get<std::string>();
  if (f.contains("mod31_primes")) o.mod31_primes = strings(f["mod31_primes"], "family.mod31_primes");
  if (f.contains("cyc_primes")) {
    o.cyc_primes.clear();
    for (auto& p : f["cyc_primes"]) o.cyc_primes.push_back(parse_u64(p));
  }
  return fc;
}

SevenConfig parse_seven(const json& s) {
  SevenConfig sc;
  auto& a = s.at("a");
  if (!a.is_array() || a.size() != 5) throw ConfigError("seven.a must hold a1, a2, a3, a4, a6");
  for (int i = 0; i < 5; ++i) sc.curve[i] = parse_int_json(a[i]);
  if (qcurve_disc(sc.curve) == 0) throw ConfigError("seven curve is singular");
  if (s.contains("l")) sc.params.l = parse_u64(s["l"]);
  if (s.contains("search_bound")) sc.params.search_bound = parse_u64(s["search_bound"]);
  if (s.contains("point_bound")) sc.params.point_bound = static_cast<std::int64_t>(parse_u64(s["point_bound"]));
  if (s.contains("hints"))
    for (auto& p : s["hints"]) sc.params.hints.push_back(parse_u64(p));
  return sc;
}

}  // namespace

Elem parse_elem(const NumberField& K, const json& j) {
  if (j.is_string()) {
    try {
      return K.parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.is_number_integer()) return K.from_rat(Rat(parse_int_json(j)));
  if (j.is_array() && j.size() == 3) return K.from_pc({parse_rat_json(j[0]), parse_rat_json(j[1]), parse_rat_json(j[2])});
  throw ConfigError("cannot read a field element from " + j.dump());
}

Config parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  Config c;
  c.raw = j;
  try {
    if (j.contains("field")) {
      c.field = parse_field(j["field"]);
      if (j.contains("curve")) c.curve = parse_curve(*c.field, j["curve"]);
      if (j.contains("class_data")) c.opts.cd = parse_class_data(*c.field, j["class_data"]);
      if (j.contains("hints")) c.opts.hints = parse_hints(*c.field, j["hints"]);
    } else if (j.contains("curve") || j.contains("class_data") || j.contains("hints")) {
      throw ConfigError("curve, class_data and hints need a field");
    }
    if (j.contains("search")) c.opts.search = parse_search(j["search"]);
    if (j.contains("mode")) c.opts.assume_ramified_in_L = j["mode"].value("assume_ramified_in_L", true);
    if (j.contains("family")) c.family = parse_family(j["family"]);
    if (j.contains("seven")) c.seven = parse_seven(j["seven"]);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace adelic
