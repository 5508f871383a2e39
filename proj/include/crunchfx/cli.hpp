#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crunchfx/pricing.hpp"

namespace crunchfx {

/// Raised when a config file is not well-formed. Exit code 2.
class ConfigSyntaxError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a config value (or an unknown key) is rejected. Exit code 3.
class ConfigValueError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Knobs shared by the subcommands, pre-loaded with these defaults, then
/// overridden by a config file and finally by command-line flags.
struct RunConfig {
    double spot = 1.0;
    double sigma = 0.2;
    double rd = 0.0;
    double rf = 0.0;
    double beta = 0.0;
    double strike = 1.0;
    double maturity = 1.0;
    OptionSide side = OptionSide::call;
    std::uint64_t n_paths = 100000;
    double dt = 0.001;
    std::uint64_t seed = 1;
    std::string output_path;  ///< empty: print to standard output
    std::string format;       ///< "csv" | "svg" | "json"; empty: subcommand default

    MarketParams market() const { return {spot, sigma, rd, rf, beta}; }
    OptionSpec option() const { return {strike, maturity, side}; }
};

/// Applies a flat JSON object of settings to `cfg`, overwriting only the
/// keys present (an all-whitespace document is a no-op). Throws
/// ConfigSyntaxError when the text is not a flat JSON object and
/// ConfigValueError for unknown keys or wrongly-typed values.
void apply_config_text(const std::string& text, RunConfig& cfg);

/// Runs one subcommand; `args` excludes the program name. Returns the
/// process exit code: 0 success, 2 usage or config syntax, 3 invalid
/// value or I/O failure, 4 numerical failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace crunchfx
