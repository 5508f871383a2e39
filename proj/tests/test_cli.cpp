#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "crunchfx/cli.hpp"
#include "crunchfx/mathutil.hpp"
#include "crunchfx/report.hpp"
#include "crunchfx/simulation.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinAbs;
using namespace crunchfx;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

const std::vector<std::string> kStandardFlags{
    "--spot", "2.2", "--sigma", "0.25", "--rd", "0.015",
    "--rf",   "0.01", "--strike", "2.3", "--maturity", "0.75"};

std::vector<std::string> with_flags(std::string subcommand,
                                    std::vector<std::string> extra = {}) {
    std::vector<std::string> args{std::move(subcommand)};
    args.insert(args.end(), kStandardFlags.begin(), kStandardFlags.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        if (c == '\n') ++n;
    }
    return n;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

std::string temp_path(const std::string& name) {
    return "/tmp/crunchfx_cli_test_" + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    file << text;
}

std::string read_text(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("price prints both premiums to five decimals") {
    const CliRun run = invoke(with_flags("price"));
    REQUIRE(run.code == 0);
    REQUIRE(run.out == "call 0.15016\nput 0.24087\n");
    REQUIRE(run.err.empty());
}

TEST_CASE("crunch pricing warns that circulated references diverge") {
    const CliRun run = invoke(with_flags("price", {"--beta", "0.5"}));
    REQUIRE(run.code == 0);
    REQUIRE(run.out == "call 0.31970\nput 0.41041\n");
    REQUIRE_THAT(run.err, StartsWith("note:"));
}

TEST_CASE("price emits machine-readable JSON on request") {
    const CliRun call = invoke(with_flags("price", {"--format", "json"}));
    REQUIRE(call.code == 0);
    const nlohmann::json call_doc = nlohmann::json::parse(call.out);
    REQUIRE_THAT(call_doc.at("premium").get<double>(),
                 WithinAbs(0.1501614324837139, 1e-12));
    REQUIRE_THAT(call_doc.at("d1").get<double>(),
                 WithinAbs(-0.0797402131410504, 1e-12));
    REQUIRE_THAT(call_doc.at("d2").get<double>(),
                 WithinAbs(-0.2962465640871600, 1e-12));

    const CliRun put =
        invoke(with_flags("price", {"--format", "json", "--side", "put"}));
    const nlohmann::json put_doc = nlohmann::json::parse(put.out);
    REQUIRE_THAT(put_doc.at("premium").get<double>(),
                 WithinAbs(0.2408697144874454, 1e-12));
}

TEST_CASE("parity reports a vanishing residual") {
    const CliRun run = invoke(with_flags("parity", {"--beta", "0.7"}));
    REQUIRE(run.code == 0);
    REQUIRE(run.out == "gap 0.00000\n");
}

TEST_CASE("settings file matches the equivalent flags") {
    const std::string path = temp_path("settings.json");
    write_text(path,
               R"({"spot": 2.2, "sigma": 0.25, "rd": 0.015, "rf": 0.01,)"
               R"( "strike": 2.3, "maturity": 0.75})");
    const CliRun from_file = invoke({"price", "--config", path});
    const CliRun from_flags = invoke(with_flags("price"));
    REQUIRE(from_file.code == 0);
    REQUIRE(from_file.out == from_flags.out);
    std::remove(path.c_str());
}

TEST_CASE("flags override the settings file") {
    const std::string path = temp_path("override.json");
    write_text(path,
               R"({"spot": 2.2, "sigma": 0.9, "rd": 0.015, "rf": 0.01,)"
               R"( "strike": 2.3, "maturity": 0.75})");
    const CliRun overridden = invoke({"price", "--config", path, "--sigma", "0.25"});
    REQUIRE(overridden.code == 0);
    REQUIRE(overridden.out == invoke(with_flags("price")).out);

    const CliRun file_only = invoke({"price", "--config", path});
    REQUIRE(file_only.out != overridden.out);
    std::remove(path.c_str());
}

TEST_CASE("an empty settings file keeps the defaults") {
    const std::string path = temp_path("empty.json");
    write_text(path, "  \n");
    const CliRun with_file = invoke({"price", "--config", path});
    const CliRun bare = invoke({"price"});
    REQUIRE(with_file.code == 0);
    REQUIRE(with_file.out == bare.out);
    std::remove(path.c_str());
}

TEST_CASE("malformed settings are a syntax failure") {
    const std::string path = temp_path("broken.json");
    write_text(path, R"({"spot": 2.2)");
    const CliRun run = invoke({"price", "--config", path});
    REQUIRE(run.code == 2);
    REQUIRE_THAT(run.err, StartsWith("error:"));

    write_text(path, "[1, 2]");
    const CliRun array = invoke({"price", "--config", path});
    REQUIRE(array.code == 2);
    REQUIRE_THAT(array.err, ContainsSubstring("object"));
    std::remove(path.c_str());
}

TEST_CASE("unknown or mistyped settings keys are named") {
    const std::string path = temp_path("badkey.json");
    write_text(path, R"({"sigmaa": 0.25})");
    const CliRun unknown = invoke({"price", "--config", path});
    REQUIRE(unknown.code == 3);
    REQUIRE_THAT(unknown.err, ContainsSubstring("sigmaa"));

    write_text(path, R"({"spot": "large"})");
    const CliRun mistyped = invoke({"price", "--config", path});
    REQUIRE(mistyped.code == 3);
    REQUIRE_THAT(mistyped.err, ContainsSubstring("spot"));
    std::remove(path.c_str());

    const CliRun missing = invoke({"price", "--config", temp_path("absent.json")});
    REQUIRE(missing.code == 3);
    REQUIRE_THAT(missing.err, ContainsSubstring("cannot read"));
}

TEST_CASE("invalid market inputs name the offending field") {
    const CliRun run = invoke({"price", "--sigma", "-0.1"});
    REQUIRE(run.code == 3);
    REQUIRE_THAT(run.err, ContainsSubstring("sigma"));
}

TEST_CASE("enumerated flag values are checked") {
    REQUIRE(invoke(with_flags("price", {"--side", "sideways"})).code == 3);
    REQUIRE(invoke(with_flags("price", {"--format", "yaml"})).code == 3);
    // structurally valid format, but not one this subcommand can produce
    REQUIRE(invoke(with_flags("price", {"--format", "svg"})).code == 3);
    REQUIRE(invoke(with_flags("parity", {"--format", "json"})).code == 3);
    REQUIRE(invoke(with_flags("simulate", {"--format", "json"})).code == 3);
}

TEST_CASE("usage errors exit with 2") {
    REQUIRE(invoke({"frobnicate"}).code == 2);
    REQUIRE(invoke({}).code == 2);
    REQUIRE(invoke({"price", "--no-such-flag", "1"}).code == 2);
    REQUIRE(invoke(with_flags("calibrate")).code == 2);  // --target is required
}

TEST_CASE("help prints usage and succeeds") {
    const CliRun top = invoke({"--help"});
    REQUIRE(top.code == 0);
    REQUIRE_THAT(top.out, ContainsSubstring("price"));
    REQUIRE_THAT(top.out, ContainsSubstring("calibrate"));

    const CliRun sub = invoke({"price", "--help"});
    REQUIRE(sub.code == 0);
    REQUIRE_THAT(sub.out, ContainsSubstring("--spot"));
}

TEST_CASE("simulate writes one CSV row per grid time") {
    const std::vector<std::string> args = with_flags(
        "simulate", {"--horizon", "1.0", "--dt", "0.25", "--seed", "3"});
    const CliRun run = invoke(args);
    REQUIRE(run.code == 0);
    REQUIRE_THAT(run.out, StartsWith("t,exact,euler\n"));
    REQUIRE(count_lines(run.out) == 6);  // header + five grid times
    REQUIRE_THAT(run.out, ContainsSubstring("\n0.25,"));
    REQUIRE_THAT(run.out, ContainsSubstring("\n1,"));

    const CliRun replay = invoke(args);
    REQUIRE(replay.out == run.out);

    const CliRun reseeded = invoke(
        with_flags("simulate", {"--horizon", "1.0", "--dt", "0.25", "--seed", "4"}));
    REQUIRE(reseeded.out != run.out);
}

TEST_CASE("simulate renders an SVG chart on request") {
    const CliRun run = invoke(with_flags(
        "simulate",
        {"--horizon", "1.0", "--dt", "0.25", "--seed", "3", "--format", "svg"}));
    REQUIRE(run.code == 0);
    REQUIRE_THAT(run.out, StartsWith("<svg "));
    REQUIRE(count_occurrences(run.out, "<polyline") == 2);
    REQUIRE_THAT(run.out, ContainsSubstring(">exact</text>"));
    REQUIRE_THAT(run.out, ContainsSubstring(">euler</text>"));
}

TEST_CASE("simulate can write straight to a file") {
    const std::string path = temp_path("sim.csv");
    const std::vector<std::string> base =
        with_flags("simulate", {"--horizon", "1.0", "--dt", "0.25", "--seed", "3"});
    std::vector<std::string> to_file = base;
    to_file.insert(to_file.end(), {"--out", path});
    const CliRun run = invoke(to_file);
    REQUIRE(run.code == 0);
    REQUIRE(run.out.empty());
    REQUIRE(read_text(path) == invoke(base).out);
    std::remove(path.c_str());

    const CliRun bad = invoke(with_flags(
        "simulate", {"--out", "/nonexistent-dir/sim.csv"}));
    REQUIRE(bad.code == 3);
    REQUIRE_THAT(bad.err, ContainsSubstring("cannot open"));
}

TEST_CASE("mc prints the estimate with its uncertainty") {
    const CliRun run =
        invoke(with_flags("mc", {"--n-paths", "1000", "--seed", "5"}));
    REQUIRE(run.code == 0);
    REQUIRE_THAT(run.out, StartsWith("premium "));
    REQUIRE_THAT(run.out, ContainsSubstring("\nstderr "));
    REQUIRE_THAT(run.out, ContainsSubstring("\nci95 ["));
    REQUIRE_THAT(run.out, ContainsSubstring("\nn 1000\n"));
}

TEST_CASE("mc JSON carries the full interval") {
    const CliRun run = invoke(with_flags(
        "mc", {"--n-paths", "2000", "--seed", "5", "--format", "json"}));
    REQUIRE(run.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(run.out);
    REQUIRE(doc.at("n").get<std::uint64_t>() == 2000);
    const double premium = doc.at("premium").get<double>();
    REQUIRE(doc.at("ci95_low").get<double>() < premium);
    REQUIRE(doc.at("ci95_high").get<double>() > premium);
    REQUIRE(doc.at("stderr").get<double>() > 0.0);

    REQUIRE(invoke(with_flags("mc", {"--n-paths", "50"})).code == 3);
}

TEST_CASE("calibrate recovers the volatility behind a premium") {
    const CliRun text = invoke(with_flags(
        "calibrate", {"--target", "0.1501614324837139", "--param", "sigma"}));
    REQUIRE(text.code == 0);
    REQUIRE_THAT(text.out, StartsWith("sigma "));
    REQUIRE_THAT(text.out, ContainsSubstring("\nresidual "));
    REQUIRE_THAT(text.out, ContainsSubstring("\niterations "));
    const double sigma = std::stod(text.out.substr(6));
    REQUIRE_THAT(sigma, WithinAbs(0.25, 1e-6));

    const CliRun json = invoke(with_flags(
        "calibrate",
        {"--target", "0.1501614324837139", "--format", "json"}));
    REQUIRE(json.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(json.out);
    const double parameter = doc.at("parameter").get<double>();
    REQUIRE_THAT(parameter, WithinAbs(0.25, 1e-6));
    // the result carries the final bracket the bisection narrowed to
    REQUIRE(doc.at("bracket_low").get<double>() <= parameter);
    REQUIRE(doc.at("bracket_high").get<double>() >= parameter);
    REQUIRE(doc.at("bracket_high").get<double>() -
                doc.at("bracket_low").get<double>() <
            1e-3);
    REQUIRE(doc.at("iterations").get<int>() > 0);
    REQUIRE(std::abs(doc.at("residual").get<double>()) <= 1e-10);
}

TEST_CASE("an unbracketable target exits with 4") {
    const CliRun run = invoke(with_flags(
        "calibrate",
        {"--target", "0.04940", "--param", "beta", "--bracket-high", "5"}));
    REQUIRE(run.code == 4);
    REQUIRE_THAT(run.err, StartsWith("error:"));

    REQUIRE(invoke(with_flags("calibrate", {"--target", "0.15", "--param",
                                            "gamma"})).code == 3);
}

TEST_CASE("figure writes paired CSV and SVG files") {
    const std::string base = temp_path("figure");
    const std::vector<std::string> args{
        "figure", "--spot", "7",    "--sigma",   "0.05", "--rd",  "0.02",
        "--rf",   "0",      "--dt", "0.25",      "--horizon", "1.0",
        "--seed", "9",      "--beta", "0",       "--beta", "0.5",
        "--out",  base};
    const CliRun run = invoke(args);
    REQUIRE(run.code == 0);
    REQUIRE(run.out.empty());

    const std::string csv = read_text(base + ".csv");
    REQUIRE_THAT(csv, StartsWith("t,beta=0,beta=0.5\n"));
    const std::string svg = read_text(base + ".svg");
    REQUIRE(count_occurrences(svg, "<polyline") == 2);
    REQUIRE_THAT(svg, ContainsSubstring(">beta=0</text>"));
    REQUIRE_THAT(svg, ContainsSubstring(">beta=0.5</text>"));

    const CliRun replay = invoke(args);
    REQUIRE(replay.code == 0);
    REQUIRE(read_text(base + ".csv") == csv);
    REQUIRE(read_text(base + ".svg") == svg);
    std::remove((base + ".csv").c_str());
    std::remove((base + ".svg").c_str());
}

TEST_CASE("figure output reproduces the discretized path library call") {
    const CliRun run = invoke({"figure", "--spot", "2.2", "--sigma", "0.25",
                               "--rd", "0.015", "--rf", "0.01", "--dt", "0.25",
                               "--horizon", "1.0", "--seed", "21", "--beta", "0"});
    REQUIRE(run.code == 0);

    const TimeGrid grid = TimeGrid::regular(1.0, 0.25);
    RandomStream stream{21, 0, 0};
    const std::vector<double> increments = brownian_increments(stream, grid);
    const MarketParams params{2.2, 0.25, 0.015, 0.01, 0.0};
    const Trajectory path = euler_path(params, grid, increments, "beta=0");
    std::ostringstream expected;
    write_trajectories_csv({path}, expected);
    REQUIRE(run.out == expected.str());
}

TEST_CASE("trajectory CSV has a labelled header and full precision") {
    const TimeGrid grid = TimeGrid::regular(0.3, 0.1);
    Trajectory a{grid, {1.0, 1.5, 2.25, 3.375}, "a"};
    Trajectory b{grid, {2.0, 2.0, 2.0, 0.1234567890123}, "b"};
    std::ostringstream sink;
    write_trajectories_csv({a, b}, sink);
    const std::string csv = sink.str();
    REQUIRE_THAT(csv, StartsWith("t,a,b\n"));
    REQUIRE(count_lines(csv) == 5);
    REQUIRE_THAT(csv, ContainsSubstring("0.123456789"));  // ten significant digits
    REQUIRE_THAT(csv, ContainsSubstring("3.375"));
}

TEST_CASE("chart renderers reject inconsistent series") {
    std::ostringstream sink;
    REQUIRE_THROWS_AS(write_trajectories_csv({}, sink), std::invalid_argument);
    REQUIRE_THROWS_AS(render_svg_chart({}, sink), std::invalid_argument);

    const TimeGrid grid = TimeGrid::regular(0.3, 0.1);
    const TimeGrid other = TimeGrid::regular(0.4, 0.1);
    Trajectory a{grid, {1.0, 1.0, 1.0, 1.0}, "a"};
    Trajectory c{other, {1.0, 1.0, 1.0, 1.0, 1.0}, "c"};
    REQUIRE_THROWS_AS(write_trajectories_csv({a, c}, sink), std::invalid_argument);

    Trajectory ragged{grid, {1.0, 1.0}, "ragged"};
    REQUIRE_THROWS_AS(write_trajectories_csv({ragged}, sink), std::invalid_argument);
    REQUIRE_THROWS_AS(render_svg_chart({ragged}, sink), std::invalid_argument);
}

TEST_CASE("a flat series is drawn mid-plot with a padded axis") {
    const TimeGrid grid = TimeGrid::regular(1.0, 0.5);
    Trajectory flat{grid, {5.0, 5.0, 5.0}, "flat"};
    std::ostringstream sink;
    render_svg_chart({flat}, sink);
    const std::string svg = sink.str();
    // plot rows span 18..458, so the centred value lands at y = 238
    REQUIRE_THAT(svg, ContainsSubstring(",238.00"));
    REQUIRE_THAT(svg, ContainsSubstring(">4</text>"));  // padded axis bounds
    REQUIRE_THAT(svg, ContainsSubstring(">6</text>"));
    REQUIRE(count_occurrences(svg, "<polyline") == 1);
    REQUIRE_THAT(svg, ContainsSubstring(">flat</text>"));
}
