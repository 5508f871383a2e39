#pragma once

#include <cstdint>
#include <vector>

#include "crunchfx/mathutil.hpp"
#include "crunchfx/pricing.hpp"

namespace crunchfx {

struct McEstimate {
    double mean;
    double std_error;  ///< sample standard deviation (n-1 divisor) / sqrt(n)
    double ci95_low;   ///< mean - 1.96 * std_error
    double ci95_high;  ///< mean + 1.96 * std_error
    std::uint64_t n;
};

struct ConvergenceRow {
    double dt;
    double strong_error;  ///< mean over paths of |S_T^euler - S_T^exact|
    std::uint64_t n_paths;
};

/// Paths per stream_index block. Fixed regardless of worker count, so
/// estimates are identical for any parallel schedule.
inline constexpr std::uint64_t kPathsPerBlock = 1u << 16;

/// Discounted risk-neutral payoff expectation e^{-rd T} E[payoff(S_T)]
/// with S_T drawn from the exact terminal solution (no discretization
/// bias). Block b uses stream (seed, stream_index + b); results merge in
/// block order. workers = 0 picks a worker per hardware thread; the
/// estimate is bit-identical for every worker count. Requires n >= 100.
McEstimate mc_price(const MarketParams& params, const OptionSpec& spec,
                    std::uint64_t n, RandomStream stream, unsigned workers = 0);

/// Estimates e^{-(rd-rf) T} E[S_T]; its ci95 should contain S0 for every
/// beta (the beta terms cancel in expectation). Requires n >= 100.
McEstimate mc_forward_check(const MarketParams& params, double maturity,
                            std::uint64_t n, RandomStream stream,
                            unsigned workers = 0);

/// Strong error of the Euler scheme against the exact solution at
/// maturity, one row per dt level (levels strictly decreasing). Euler
/// and exact values share identical Brownian increments within a path;
/// path p uses stream (seed, stream_index + p). Requires n_paths >= 100.
std::vector<ConvergenceRow> convergence_study(const MarketParams& params,
                                              double maturity,
                                              const std::vector<double>& dt_levels,
                                              std::uint64_t n_paths,
                                              RandomStream stream);

}  // namespace crunchfx
