#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crunchfx/mathutil.hpp"
#include "crunchfx/pricing.hpp"

namespace crunchfx {

/// Uniform grid 0 = t0 < t1 < ... < tN = t_end with step dt; the last
/// step is shortened when t_end is not a multiple of dt.
class TimeGrid {
  public:
    static TimeGrid regular(double t_end, double dt);

    const std::vector<double>& times() const { return times_; }
    std::size_t steps() const { return times_.size() - 1; }  ///< N >= 1
    double t_end() const { return times_.back(); }
    double dt() const { return dt_; }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.times_ == b.times_;
    }

  private:
    TimeGrid(std::vector<double> times, double dt)
        : times_(std::move(times)), dt_(dt) {}

    std::vector<double> times_;
    double dt_;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<double> values;  ///< one spot per grid time, values[0] = S0
    std::string label;
};

/// Brownian increments over the grid: element i is
/// sqrt(t_{i+1} - t_i) * Z_i with Z_i standard normal from the stream.
std::vector<double> brownian_increments(RandomStream& stream, const TimeGrid& grid);

/// Exact solution of the model SDE at time t given W_t = brownian_value:
///   (S0 + beta/sigma) exp[((rd-rf) - sigma^2/2) t + sigma W_t]
///     - (beta/sigma) exp[(rd-rf) t].
/// May be negative when beta > 0; callers clip where a payoff requires it.
double exact_spot(const MarketParams& params, double t, double brownian_value);

/// Path of exact_spot over the grid; values[0] is S0 exactly.
Trajectory exact_path(const MarketParams& params, const TimeGrid& grid,
                      const std::vector<double>& increments,
                      std::string label = "exact");

/// Explicit Euler-Maruyama discretization with left-endpoint coefficients:
///   S_{i+1} = S_i + (rd-rf) S_i dt_i
///             + (sigma S_i + beta e^{(rd-rf) t_i}) dW_i.
/// Negative values are emitted unmodified.
Trajectory euler_path(const MarketParams& params, const TimeGrid& grid,
                      const std::vector<double>& increments,
                      std::string label = "euler");

/// n independent terminal values S_T, one Gaussian per draw (W_T = sqrt(T) Z).
std::vector<double> sample_terminal(const MarketParams& params, double maturity,
                                    std::size_t n, RandomStream& stream);

}  // namespace crunchfx
