#include "crunchfx/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace crunchfx {
namespace {

double model_price(const MarketParams& params, const OptionSpec& spec) {
    return spec.side == OptionSide::call ? price_call(params, spec).premium
                                         : price_put(params, spec).premium;
}

void check_inputs(double target_price, double bracket_low, double bracket_high,
                  double tol) {
    if (!std::isfinite(target_price)) {
        throw std::invalid_argument("target_price must be finite");
    }
    if (!(std::isfinite(bracket_low) && std::isfinite(bracket_high) &&
          bracket_low < bracket_high)) {
        throw std::invalid_argument("bracket_low must be less than bracket_high");
    }
    if (!(std::isfinite(tol) && tol > 0.0)) {
        throw std::invalid_argument("tol must be a positive finite number");
    }
}

// Plain bisection on f = model price - target. Monotone premiums make
// this slow but unconditionally safe; 200 halvings are far more than the
// ~52 a double-width bracket can need.
template <typename F>
CalibrationResult bisect(F f, double lo, double hi, double tol) {
    double f_lo = f(lo);
    if (std::fabs(f_lo) <= tol) return {lo, f_lo, 0, lo, hi};
    double f_hi = f(hi);
    if (std::fabs(f_hi) <= tol) return {hi, f_hi, 0, lo, hi};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw BracketError("target price is not bracketed: model price minus "
                           "target has the same sign at both bracket endpoints");
    }
    for (int iter = 1; iter <= 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (std::fabs(f_mid) <= tol) return {mid, f_mid, iter, lo, hi};
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12) return {mid, f_mid, iter, lo, hi};
    }
    throw ConvergenceError("bisection did not converge within 200 iterations");
}

}  // namespace

CalibrationResult implied_sigma(double target_price, const MarketParams& params,
                                const OptionSpec& spec, double bracket_low,
                                double bracket_high, double tol) {
    check_inputs(target_price, bracket_low, bracket_high, tol);
    if (bracket_low <= 0.0) {
        throw std::invalid_argument("bracket_low must be positive for sigma");
    }
    validate(spec);
    auto residual = [&](double sigma) {
        MarketParams candidate = params;
        candidate.sigma = sigma;
        return model_price(candidate, spec) - target_price;
    };
    return bisect(residual, bracket_low, bracket_high, tol);
}

CalibrationResult implied_beta(double target_price, const MarketParams& params,
                               const OptionSpec& spec, double bracket_low,
                               double bracket_high, double tol) {
    check_inputs(target_price, bracket_low, bracket_high, tol);
    if (bracket_low < 0.0) {
        throw std::invalid_argument("bracket_low must be non-negative for beta");
    }
    validate(spec);
    auto residual = [&](double beta) {
        MarketParams candidate = params;
        candidate.beta = beta;
        return model_price(candidate, spec) - target_price;
    };
    return bisect(residual, bracket_low, bracket_high, tol);
}

}  // namespace crunchfx
