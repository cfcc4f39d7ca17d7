#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "intraday/model.hpp"

namespace intraday {

struct RunConfig {
    std::string name;
    ModelParams params;
    JumpParams jumps;     // lambda = 0 when the file has no jump block
    bool has_jumps = false;
    std::optional<double> delay; // seconds
    MarketState initial{0.0, 0.0, 50.0, 50000.0};
};

// Parameter files are flat JSON with hour/day inputs converted to seconds.
// Malformed input raises ParamError naming the offending key or line.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// A bare preset name (table13, sim-nojump, ...) resolves to the bundled file.
std::filesystem::path resolve_config(const std::string& name_or_path);
std::filesystem::path preset_directory();

} // namespace intraday
