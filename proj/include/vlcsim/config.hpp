#pragma once

#include <stdexcept>
#include <string>

#include "vlcsim/sweep.hpp"

namespace vlcsim {

/// Validation/parsing failure of a run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fully resolved CLI run: the sweep plus output destination and format.
/// Config files use display units (nm, mm, THz, degrees); SweepSpec is SI.
struct RunConfig {
  SweepSpec spec;
  std::string out_path;        // empty = stdout
  std::string format = "csv";  // csv | json
};

/// Parses the sectioned key=value config format. Unknown sections or keys
/// are rejected; all violations are reported together.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Applies one "section.key=value" override on top of an existing config.
void apply_override(RunConfig& config, const std::string& assignment);

/// Serializes a config back to the editable file format (display units).
std::string dump_config(const RunConfig& config);

}  // namespace vlcsim
