#pragma once

// Command-line front end: presets, argument handling and the four subcommands.

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lagfpt/gbm.hpp"

namespace lagfpt::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

struct Preset {
    std::string_view name;
    GbmModel model;
};

inline constexpr std::array<Preset, 3> kPresets{{
    {"A", GbmModel{4.0, 1.4, 1.0, 10.0}},
    {"B", GbmModel{2.2, 1.4, 1.0, 10.0}},
    {"C", GbmModel{1.4, 1.4, 1.0, 10.0}},
}};

std::optional<GbmModel> find_preset(std::string_view name);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridSpec {
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 0;
};

/// Parses "t_min:t_max:points". Throws ConfigError.
GridSpec parse_grid(std::string_view text);

/// Writes through a temporary file in the target directory and renames it into
/// place; on failure the temporary is removed and nothing appears at `path`.
/// Throws SampleIoError when the file cannot be written.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// Runs the tool; args excludes the program name. Diagnostics go to `err`,
/// results without --out go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagfpt::cli
