#pragma once

#include <string>
#include <vector>

#include "catsim/config.hpp"

namespace catsim {

struct Preset {
  std::string name;
  std::string description;
  std::string text;  // config file body
};

const std::vector<Preset>& presets();

/// nullptr when unknown.
const Preset* find_preset(const std::string& name);

/// Parsed preset; throws ConfigError for unknown names.
Config preset_config(const std::string& name);

}  // namespace catsim
