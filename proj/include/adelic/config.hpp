#pragma once

#include "adelic/family.hpp"
#include "adelic/seven.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace adelic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SevenConfig {
  QCurve curve;
  HalfBorelParams params;
};

struct FamilyConfig {
  std::vector<Component> components = family_table();
  SpotCheckOptions spot;
};

struct Config {
  std::unique_ptr<NumberField> field;  // absent for pure seven / family configs
  std::optional<Curve> curve;
  Options opts;
  FamilyConfig family;
  std::optional<SevenConfig> seven;
  json raw;
};

// elements: "3/2*a^2+13/2*a+13" or ["3/2", "13/2", "13"] in power-basis coordinates
Elem parse_elem(const NumberField& K, const json& j);
Int parse_int_json(const json& j);  // decimal string or integer

Config parse_config(const json& j);
Config load_config(const std::string& path);

}  // namespace adelic
