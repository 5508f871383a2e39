#include "crunchfx/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crunchfx/calibration.hpp"
#include "crunchfx/montecarlo.hpp"
#include "crunchfx/pricing.hpp"
#include "crunchfx/report.hpp"
#include "crunchfx/simulation.hpp"

namespace crunchfx {
namespace {

// Premium display: full-precision value rounded to 5 decimals (printf
// rounds to nearest, ties to even). "-0.00000" would only ever show a
// rounding artifact, so it is normalized.
std::string format5(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.5f", v);
    std::string s = buffer;
    return s == "-0.00000" ? "0.00000" : s;
}

std::string format_short(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigValueError("config: cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

double as_number(const std::string& key, const nlohmann::json& value) {
    if (!value.is_number()) {
        throw ConfigValueError("config: key '" + key + "' must be a number");
    }
    return value.get<double>();
}

std::uint64_t as_count(const std::string& key, const nlohmann::json& value) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    }
    throw ConfigValueError("config: key '" + key + "' must be a non-negative integer");
}

std::string as_text(const std::string& key, const nlohmann::json& value) {
    if (!value.is_string()) {
        throw ConfigValueError("config: key '" + key + "' must be a string");
    }
    return value.get<std::string>();
}

OptionSide parse_side(const std::string& text) {
    if (text == "call") return OptionSide::call;
    if (text == "put") return OptionSide::put;
    throw ConfigValueError("side must be 'call' or 'put', got '" + text + "'");
}

std::string parse_format(const std::string& text) {
    if (text == "csv" || text == "svg" || text == "json") return text;
    throw ConfigValueError("format must be 'csv', 'svg' or 'json', got '" + text + "'");
}

/// Resolves the output format for one subcommand: empty picks `fallback`,
/// anything outside `allowed` is rejected.
std::string effective_format(const RunConfig& cfg,
                             std::initializer_list<const char*> allowed,
                             const char* fallback, const char* subcommand) {
    if (cfg.format.empty()) return fallback;
    for (const char* candidate : allowed) {
        if (cfg.format == candidate) return cfg.format;
    }
    throw ConfigValueError("format '" + cfg.format + "' is not supported by '" +
                           subcommand + "'");
}

void write_payload(const std::string& path, const std::string& payload) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigValueError("output_path: cannot open '" + path + "' for writing");
    }
    file << payload;
    if (!file.good()) {
        throw ConfigValueError("output_path: failed while writing '" + path + "'");
    }
}

void emit(const std::string& payload, const RunConfig& cfg, std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << payload;
    } else {
        write_payload(cfg.output_path, payload);
    }
}

int run_price(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const MarketParams params = cfg.market();
    const PricingResult call =
        price_call(params, {cfg.strike, cfg.maturity, OptionSide::call});
    const PricingResult put =
        price_put(params, {cfg.strike, cfg.maturity, OptionSide::put});
    const std::string format = effective_format(cfg, {"json"}, "", "price");

    std::string payload;
    if (format == "json") {
        const PricingResult& chosen = cfg.side == OptionSide::call ? call : put;
        nlohmann::ordered_json doc{{"premium", chosen.premium},
                                   {"d1", chosen.d1},
                                   {"d2", chosen.d2}};
        payload = doc.dump() + "\n";
    } else {
        payload = "call " + format5(call.premium) + "\nput " + format5(put.premium) +
                  "\n";
    }
    emit(payload, cfg, out);
    if (cfg.beta > 0.0) {
        err << "note: beta > 0 premiums come from the closed form and agree with "
               "the Monte Carlo estimator; certain externally circulated reference "
               "values for this case are not reproducible from that formula.\n";
    }
    return 0;
}

int run_parity(const RunConfig& cfg, std::ostream& out) {
    effective_format(cfg, {}, "", "parity");
    const double gap = parity_gap(cfg.market(), cfg.strike, cfg.maturity);
    emit("gap " + format5(gap) + "\n", cfg, out);
    return 0;
}

int run_simulate(const RunConfig& cfg, double horizon, std::ostream& out) {
    const std::string format = effective_format(cfg, {"csv", "svg"}, "csv", "simulate");
    const TimeGrid grid = TimeGrid::regular(horizon, cfg.dt);
    RandomStream stream{cfg.seed, 0, 0};
    const std::vector<double> increments = brownian_increments(stream, grid);
    std::vector<Trajectory> series;
    series.push_back(exact_path(cfg.market(), grid, increments));
    series.push_back(euler_path(cfg.market(), grid, increments));

    std::ostringstream payload;
    if (format == "csv") {
        write_trajectories_csv(series, payload);
    } else {
        render_svg_chart(series, payload);
    }
    emit(payload.str(), cfg, out);
    return 0;
}

int run_mc(const RunConfig& cfg, std::ostream& out) {
    const std::string format = effective_format(cfg, {"json"}, "", "mc");
    const McEstimate estimate = mc_price(cfg.market(), cfg.option(), cfg.n_paths,
                                         RandomStream{cfg.seed, 0, 0});
    std::string payload;
    if (format == "json") {
        nlohmann::ordered_json doc{{"premium", estimate.mean},
                                   {"stderr", estimate.std_error},
                                   {"ci95_low", estimate.ci95_low},
                                   {"ci95_high", estimate.ci95_high},
                                   {"n", estimate.n}};
        payload = doc.dump() + "\n";
    } else {
        payload = "premium " + format5(estimate.mean) + "\nstderr " +
                  format_short(estimate.std_error) + "\nci95 [" +
                  format5(estimate.ci95_low) + ", " + format5(estimate.ci95_high) +
                  "]\nn " + std::to_string(estimate.n) + "\n";
    }
    emit(payload, cfg, out);
    return 0;
}

int run_calibrate(const RunConfig& cfg, double target, const std::string& param,
                  double bracket_low, double bracket_high, double tol,
                  std::ostream& out) {
    const std::string format = effective_format(cfg, {"json"}, "", "calibrate");
    CalibrationResult result;
    if (param == "sigma") {
        if (std::isnan(bracket_low)) bracket_low = 1e-4;
        if (std::isnan(bracket_high)) bracket_high = 5.0;
        result = implied_sigma(target, cfg.market(), cfg.option(), bracket_low,
                               bracket_high, tol);
    } else if (param == "beta") {
        if (std::isnan(bracket_low)) bracket_low = 0.0;
        if (std::isnan(bracket_high)) bracket_high = 10.0;
        result = implied_beta(target, cfg.market(), cfg.option(), bracket_low,
                              bracket_high, tol);
    } else {
        throw ConfigValueError("param must be 'sigma' or 'beta', got '" + param + "'");
    }

    std::string payload;
    if (format == "json") {
        nlohmann::ordered_json doc{{"parameter", result.parameter},
                                   {"residual", result.residual},
                                   {"iterations", result.iterations},
                                   {"bracket_low", result.bracket_low},
                                   {"bracket_high", result.bracket_high}};
        payload = doc.dump() + "\n";
    } else {
        char value[64];
        std::snprintf(value, sizeof(value), "%.10g", result.parameter);
        payload = param + " " + value + "\nresidual " +
                  format_short(result.residual) + "\niterations " +
                  std::to_string(result.iterations) + "\n";
    }
    emit(payload, cfg, out);
    return 0;
}

int run_figure(const RunConfig& cfg, std::vector<double> betas, double horizon,
               std::ostream& out) {
    const std::string format = effective_format(cfg, {"csv", "svg"}, "csv", "figure");
    if (betas.empty()) betas.push_back(cfg.beta);

    const TimeGrid grid = TimeGrid::regular(horizon, cfg.dt);
    RandomStream stream{cfg.seed, 0, 0};
    // One Brownian path drives every series so the beta effect is the
    // only difference between the curves.
    const std::vector<double> increments = brownian_increments(stream, grid);

    std::vector<Trajectory> series;
    series.reserve(betas.size());
    for (const double beta : betas) {
        MarketParams params = cfg.market();
        params.beta = beta;
        series.push_back(
            euler_path(params, grid, increments, "beta=" + format_short(beta)));
    }

    if (!cfg.output_path.empty()) {
        std::ostringstream csv;
        write_trajectories_csv(series, csv);
        write_payload(cfg.output_path + ".csv", csv.str());
        std::ostringstream svg;
        render_svg_chart(series, svg);
        write_payload(cfg.output_path + ".svg", svg.str());
        return 0;
    }
    std::ostringstream payload;
    if (format == "csv") {
        write_trajectories_csv(series, payload);
    } else {
        render_svg_chart(series, payload);
    }
    out << payload.str();
    return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;

    // The config file is applied before flag parsing so that flags bound
    // directly to cfg fields override it (flags > file > defaults).
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        }
    }
    if (!config_path.empty()) {
        apply_config_text(read_file(config_path), cfg);
    }

    CLI::App app{"European currency options under a crisis-augmented "
                 "Black-Scholes model"};
    app.name("crunch-fx");
    app.require_subcommand(1);

    std::string config_path_flag;  // consumed by the pre-scan above
    std::string side_text;
    std::string format_text;
    double horizon = 1.0;
    std::vector<double> figure_betas;
    double target = 0.0;
    std::string param_name = "sigma";
    double bracket_low = std::numeric_limits<double>::quiet_NaN();
    double bracket_high = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-10;

    const auto add_common = [&](CLI::App* sub, bool beta_per_series) {
        sub->add_option("--config", config_path_flag,
                        "Flat JSON settings file; flags override its values");
        sub->add_option("--spot", cfg.spot, "Spot exchange rate S0");
        sub->add_option("--sigma", cfg.sigma, "Volatility per sqrt(year)");
        sub->add_option("--rd", cfg.rd, "Domestic short rate");
        sub->add_option("--rf", cfg.rf, "Foreign short rate");
        if (beta_per_series) {
            sub->add_option("--beta", figure_betas,
                            "Crunch parameter; repeat for one series per value");
        } else {
            sub->add_option("--beta", cfg.beta,
                            "Crunch parameter (0 recovers Garman-Kohlhagen)");
        }
        sub->add_option("--strike", cfg.strike, "Strike K");
        sub->add_option("--maturity", cfg.maturity, "Maturity T in years");
        sub->add_option("--side", side_text, "call or put");
        sub->add_option("--n-paths", cfg.n_paths, "Monte Carlo path count");
        sub->add_option("--dt", cfg.dt, "Simulation time step in years");
        sub->add_option("--seed", cfg.seed,
                        "RNG seed (default 1; equal seeds reproduce runs exactly)");
        sub->add_option("--horizon", horizon,
                        "Simulated time span in years (simulate/figure)");
        sub->add_option("--out", cfg.output_path,
                        "Write results to this path instead of stdout "
                        "(figure appends .csv and .svg)");
        sub->add_option("--format", format_text,
                        "csv | svg | json, where the subcommand supports it");
    };

    CLI::App* price = app.add_subcommand("price", "Closed-form call and put premiums");
    CLI::App* parity =
        app.add_subcommand("parity", "Put-call parity residual of the closed forms");
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Exact and Euler trajectories sharing one Brownian path");
    CLI::App* mc = app.add_subcommand(
        "mc", "Monte Carlo premium with standard error and 95% interval");
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Implied sigma or beta matching a target premium");
    CLI::App* figure = app.add_subcommand(
        "figure", "Overlaid Euler trajectories across beta values");

    add_common(price, false);
    add_common(parity, false);
    add_common(simulate, false);
    add_common(mc, false);
    add_common(calibrate, false);
    add_common(figure, true);

    calibrate->add_option("--target", target, "Observed premium to invert")
        ->required();
    calibrate->add_option("--param", param_name,
                          "Parameter to solve for: sigma (default) or beta");
    calibrate->add_option("--bracket-low", bracket_low,
                          "Lower bisection bracket (default: 1e-4 sigma, 0 beta)");
    calibrate->add_option("--bracket-high", bracket_high,
                          "Upper bisection bracket (default: 5 sigma, 10 beta)");
    calibrate->add_option("--tol", tol, "Absolute residual tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);  // --help and friends
        }
        app.exit(e, out, err);
        return 2;
    }

    if (!side_text.empty()) cfg.side = parse_side(side_text);
    if (!format_text.empty()) cfg.format = parse_format(format_text);

    if (price->parsed()) return run_price(cfg, out, err);
    if (parity->parsed()) return run_parity(cfg, out);
    if (simulate->parsed()) return run_simulate(cfg, horizon, out);
    if (mc->parsed()) return run_mc(cfg, out);
    if (calibrate->parsed()) {
        return run_calibrate(cfg, target, param_name, bracket_low, bracket_high, tol,
                             out);
    }
    if (figure->parsed()) return run_figure(cfg, figure_betas, horizon, out);
    return 2;  // unreachable: require_subcommand(1) already enforced
}

}  // namespace

void apply_config_text(const std::string& text, RunConfig& cfg) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return;  // an empty settings file keeps every default
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigSyntaxError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigSyntaxError("config: document must be a flat object of settings");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "spot") {
            cfg.spot = as_number(key, value);
        } else if (key == "sigma") {
            cfg.sigma = as_number(key, value);
        } else if (key == "rd") {
            cfg.rd = as_number(key, value);
        } else if (key == "rf") {
            cfg.rf = as_number(key, value);
        } else if (key == "beta") {
            cfg.beta = as_number(key, value);
        } else if (key == "strike") {
            cfg.strike = as_number(key, value);
        } else if (key == "maturity") {
            cfg.maturity = as_number(key, value);
        } else if (key == "side") {
            cfg.side = parse_side(as_text(key, value));
        } else if (key == "n_paths") {
            cfg.n_paths = as_count(key, value);
        } else if (key == "dt") {
            cfg.dt = as_number(key, value);
        } else if (key == "seed") {
            cfg.seed = as_count(key, value);
        } else if (key == "output_path") {
            cfg.output_path = as_text(key, value);
        } else if (key == "format") {
            cfg.format = parse_format(as_text(key, value));
        } else {
            throw ConfigValueError("config: unknown key '" + key + "'");
        }
    }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const ConfigSyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BracketError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        // ConfigValueError, invalid_argument, domain_error, I/O failures:
        // every remaining failure is an input or environment problem.
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace crunchfx
