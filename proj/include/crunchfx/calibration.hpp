#pragma once

#include <stdexcept>

#include "crunchfx/pricing.hpp"

namespace crunchfx {

/// f(lo) and f(hi) have the same sign: no root is bracketed.
class BracketError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bisection failed to meet its stopping rule within the iteration cap.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CalibrationResult {
    double parameter;  ///< recovered sigma or beta
    double residual;   ///< model price - target price at the solution
    int iterations;
    double bracket_low;   ///< final enclosing bracket after bisection
    double bracket_high;  ///< (equals the inputs when an endpoint matched)
};

/// Volatility implied by target_price via bisection of the closed form
/// for spec.side; params.sigma is ignored (beta is held fixed).
/// Stops when |residual| <= tol or the bracket width falls below 1e-12.
/// Throws BracketError without a sign change on the bracket and
/// ConvergenceError after 200 iterations.
CalibrationResult implied_sigma(double target_price, const MarketParams& params,
                                const OptionSpec& spec, double bracket_low = 1e-4,
                                double bracket_high = 5.0, double tol = 1e-10);

/// Crunch parameter implied by target_price; params.beta is ignored
/// (sigma is held fixed). Same stopping and error contract.
CalibrationResult implied_beta(double target_price, const MarketParams& params,
                               const OptionSpec& spec, double bracket_low = 0.0,
                               double bracket_high = 10.0, double tol = 1e-10);

}  // namespace crunchfx
