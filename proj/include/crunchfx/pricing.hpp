#pragma once

namespace crunchfx {

enum class OptionSide { call, put };

/// Market state for the crisis-augmented ("crunch") currency model
///   dS = (rd - rf) S dt + (sigma S + beta e^{(rd - rf) t}) dW.
/// beta = 0 recovers the classical Garman-Kohlhagen dynamics.
struct MarketParams {
    double spot;   ///< S0 > 0, domestic units per unit of foreign currency
    double sigma;  ///< volatility per sqrt(year), > 0
    double rd;     ///< domestic short rate per year
    double rf;     ///< foreign short rate per year
    double beta;   ///< crunch parameter, >= 0, currency units per sqrt(year)
};

struct OptionSpec {
    double strike;    ///< K > 0
    double maturity;  ///< T in years, > 0
    OptionSide side;
};

struct PricingResult {
    double premium;
    double d1;
    double d2;                 ///< = d1 - sigma sqrt(T)
    double discount_domestic;  ///< e^{-rd T}
    double discount_foreign;   ///< e^{-rf T}
};

/// Throw std::invalid_argument (message names the offending field) if
/// the parameters violate their invariants.
void validate(const MarketParams& params);
void validate(const OptionSpec& spec);

/// Moneyness arguments of the closed forms.
double d1_beta(const MarketParams& params, const OptionSpec& spec);
double d2_beta(const MarketParams& params, const OptionSpec& spec);

/// Closed-form call premium:
///   (S0 + beta/sigma) e^{-rf T} Phi(d1)
///     - (K e^{-rd T} + (beta/sigma) e^{-rf T}) Phi(d2).
/// Requires spec.side == call.
PricingResult price_call(const MarketParams& params, const OptionSpec& spec);

/// Closed-form put premium, call premium + K e^{-rd T} - S0 e^{-rf T}.
/// Requires spec.side == put.
PricingResult price_put(const MarketParams& params, const OptionSpec& spec);

/// (call - put) - (S0 e^{-rf T} - K e^{-rd T}); zero up to rounding.
double parity_gap(const MarketParams& params, double strike, double maturity);

/// Classical Garman-Kohlhagen premium for spec.side, with beta forced
/// to zero regardless of params.beta. Independent reference route for
/// the beta = 0 reduction.
double garman_kohlhagen_reference(const MarketParams& params, const OptionSpec& spec);

}  // namespace crunchfx
