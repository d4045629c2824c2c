#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "signvote/bounds.hpp"
#include "signvote/errors.hpp"
#include "signvote/sim.hpp"

namespace signvote::cli {

// Malformed or unknown configuration content (exit code 2).
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kConfigFormat = 1;

// Parses a run config document. Every key is optional and defaults to the
// RunConfig defaults; unknown keys throw ConfigError naming the full path.
// A run manifest (top-level "config" object) is accepted as well.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);
// Config echo + seed + versions; feeding it back to load_run_config
// reproduces the run.
nlohmann::json run_manifest(const RunConfig& config);

// Flat object with BoundInputs field names.
BoundInputs parse_bound_inputs(const nlohmann::json& doc, BoundInputs defaults = {});

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace signvote::cli
