#include "crunchfx/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crunchfx {

TimeGrid TimeGrid::regular(double t_end, double dt) {
    if (!(std::isfinite(t_end) && t_end > 0.0)) {
        throw std::invalid_argument("t_end must be a positive finite number");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw std::invalid_argument("dt must be a positive finite number");
    }
    // ceil with a small slack so t_end = k * dt does not round to k + 1
    // steps; the loop guard below keeps the grid strictly increasing
    // either way.
    const auto n_steps = std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9)), 1);
    std::vector<double> times;
    times.reserve(n_steps + 1);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        if (t >= t_end) break;
        times.push_back(t);
    }
    times.push_back(t_end);
    return TimeGrid(std::move(times), dt);
}

std::vector<double> brownian_increments(RandomStream& stream, const TimeGrid& grid) {
    std::vector<double> increments = gaussian_draws(stream, grid.steps());
    for (std::size_t i = 0; i < increments.size(); ++i) {
        increments[i] *= std::sqrt(grid.times()[i + 1] - grid.times()[i]);
    }
    return increments;
}

double exact_spot(const MarketParams& params, double t, double brownian_value) {
    const double shift = params.beta / params.sigma;
    const double drift = params.rd - params.rf;
    return (params.spot + shift) *
               std::exp((drift - 0.5 * params.sigma * params.sigma) * t +
                        params.sigma * brownian_value) -
           shift * std::exp(drift * t);
}

namespace {

void check_increments(const TimeGrid& grid, const std::vector<double>& increments) {
    if (increments.size() != grid.steps()) {
        throw std::invalid_argument("increments must supply one value per grid step");
    }
}

}  // namespace

Trajectory exact_path(const MarketParams& params, const TimeGrid& grid,
                      const std::vector<double>& increments, std::string label) {
    validate(params);
    check_increments(grid, increments);
    std::vector<double> values(grid.times().size());
    values[0] = params.spot;
    double w = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        w += increments[i];
        values[i + 1] = exact_spot(params, grid.times()[i + 1], w);
    }
    return {grid, std::move(values), std::move(label)};
}

Trajectory euler_path(const MarketParams& params, const TimeGrid& grid,
                      const std::vector<double>& increments, std::string label) {
    validate(params);
    check_increments(grid, increments);
    const double drift = params.rd - params.rf;
    std::vector<double> values(grid.times().size());
    values[0] = params.spot;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        const double t = grid.times()[i];
        const double step = grid.times()[i + 1] - t;
        const double s = values[i];
        values[i + 1] = s + drift * s * step +
                        (params.sigma * s + params.beta * std::exp(drift * t)) *
                            increments[i];
    }
    return {grid, std::move(values), std::move(label)};
}

std::vector<double> sample_terminal(const MarketParams& params, double maturity,
                                    std::size_t n, RandomStream& stream) {
    validate(params);
    if (!(std::isfinite(maturity) && maturity > 0.0)) {
        throw std::invalid_argument("maturity must be a positive finite number");
    }
    const double root_t = std::sqrt(maturity);
    std::vector<double> spots = gaussian_draws(stream, n);
    for (double& s : spots) {
        s = exact_spot(params, maturity, root_t * s);
    }
    return spots;
}

}  // namespace crunchfx
