#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mmv2i/model.hpp"
#include "mmv2i/simulator.hpp"

namespace mmv2i {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Scenario scenario;
  SimOptions sim;
};

// INI-style text: [section] headers, key = value pairs, # or ; comments.
// A [scenario] preset key (urban | rural, default urban) selects the base
// values; every other key overrides one field. Unknown sections or keys are
// rejected with the offending line number.
RunConfig parse_config(std::string_view text,
                       const std::string& name = "<config>");
RunConfig load_config(const std::string& path);

// full round-trippable dump of a configuration
std::string render_config(const RunConfig& cfg, const std::string& preset);

RunConfig preset_config(const std::string& preset);  // "urban" | "rural"

}  // namespace mmv2i
