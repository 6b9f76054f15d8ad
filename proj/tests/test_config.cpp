#include "doctest.h"

#include "adelic/config.hpp"

#include <filesystem>

using namespace adelic;

namespace {

std::string dir() { return CONFIG_DIR; }

json base() {
  return json::parse(R"({"field": {"poly": ["1", "1", "0"]},
                         "curve": {"roots": ["0", "2*a^2+7*a+19", "18*a^2+7*a+3"]},
                         "class_data": {"d": 1, "u": "-a", "trivial_narrow_class": true}})");
}

}  // namespace

TEST_CASE("every shipped config parses") {
  int n = 0;
  for (auto& e : std::filesystem::directory_iterator(dir())) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_config(e.path().string()));
    ++n;
  }
  CHECK(n >= 6);
}

TEST_CASE("x^3+x+1 config contents") {
  Config c = load_config(dir() + "/disc31.json");
  REQUIRE(c.field);
  REQUIRE(c.curve);
  CHECK(c.field->disc_K() == -31);
  CHECK(c.curve->roots);
  CHECK(c.opts.cd.u == c.field->parse("-a"));
  CHECK(c.opts.hints.mod8 == std::vector<std::string>{"157"});
  REQUIRE(c.opts.hints.roles.count(31));
  CHECK(c.opts.hints.roles.at(31)[0] == std::vector<std::string>{"a-2"});
}

TEST_CASE("seven and family configs") {
  Config s = load_config(dir() + "/seven_torsion.json");
  REQUIRE(s.seven);
  CHECK(s.seven->curve[3] == -19353);
  CHECK(s.seven->params.l == 7);
  CHECK(s.seven->params.hints.size() == 4);
  Config f = load_config(dir() + "/family.json");
  CHECK(f.family.spot.mod4_primes.size() == 4);
  CHECK(crt_assemble(f.family.components).M == Int("28078379582192940"));
}

TEST_CASE("element formats") {
  NumberField K({1, 1, 0});
  Elem x = K.parse("3/2*a^2+13/2*a+13");
  CHECK(parse_elem(K, "3/2*a^2+13/2*a+13") == x);
  CHECK(parse_elem(K, json::array({"13", "13/2", "3/2"})) == x);
  CHECK(parse_elem(K, json::array({13, "13/2", "3/2"})) == x);
  CHECK(parse_elem(K, 5) == K.from_rat(5));
  CHECK_THROWS_AS(parse_elem(K, json::array({1, 2})), ConfigError);
  CHECK_THROWS_AS(parse_elem(K, "3*b"), ConfigError);
  CHECK(parse_int_json("123456789012345678901234567890") == Int("123456789012345678901234567890"));
  CHECK(parse_int_json(-7) == -7);
  CHECK_THROWS_AS(parse_int_json("12x"), ConfigError);
  CHECK_THROWS_AS(parse_int_json(1.5), ConfigError);
}

TEST_CASE("malformed configs are ConfigError") {
  CHECK_NOTHROW(parse_config(base()));
  auto broken = [](auto edit) {
    json j = base();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["field"]["poly"] = {"1", "1"}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["field"]["poly"] = {"1", "0", "0"}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["curve"]["roots"] = {"0", "1"}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["curve"]["roots"] = {"0", "0", "1"}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["class_data"]["d"] = 0; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["hints"]["mod8"] = {"6"}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["seven"] = {{"a", {1, 2, 3}}}; })), ConfigError);
  CHECK_THROWS_AS(load_config(dir() + "/does-not-exist.json"), ConfigError);
}

TEST_CASE("certificate JSON round trip and determinism") {
  Config c = parse_config(base());
  Certificate a = certify_full_2tors(*c.curve, c.opts);
  json j = a.to_json();
  CHECK(json::parse(j.dump()) == j);
  CHECK(j["verdict"] == to_string(a.verdict));
  CHECK(j["conditions"].size() == a.conditions.size());
  Certificate b = certify_full_2tors(*parse_config(base()).curve, c.opts);
  CHECK(b.to_json().dump() == j.dump());
  c.opts.transcript = true;
  Certificate t = certify_full_2tors(*c.curve, c.opts);
  CHECK_FALSE(t.transcript.empty());
  CHECK(t.to_json(true).contains("transcript"));
  CHECK_FALSE(t.to_json(false).contains("transcript"));
}
