#include "crunchfx/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "crunchfx/simulation.hpp"

namespace crunchfx {
namespace {

// Welford running moments; numerically stable for long blocks.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
};

// Chan's pairwise combination; applied strictly in block order so the
// result does not depend on which worker produced which block.
Moments merge(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments out;
    out.n = a.n + b.n;
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * (static_cast<double>(b.n) / static_cast<double>(out.n));
    out.m2 = a.m2 + b.m2 +
             delta * delta *
                 (static_cast<double>(a.n) * static_cast<double>(b.n) /
                  static_cast<double>(out.n));
    return out;
}

McEstimate to_estimate(const Moments& total) {
    const double variance = total.m2 / static_cast<double>(total.n - 1);
    const double std_error = std::sqrt(variance / static_cast<double>(total.n));
    return {total.mean, std_error, total.mean - 1.96 * std_error,
            total.mean + 1.96 * std_error, total.n};
}

// Evaluates transform(S_T) over n paths split into fixed-size blocks.
// Block b always covers paths [b * kPathsPerBlock, ...) with its own
// stream (seed, stream_index + b), so the schedule cannot leak into the
// estimate.
template <typename Transform>
McEstimate run_blocks(const MarketParams& params, double maturity, std::uint64_t n,
                      const RandomStream& stream, unsigned workers,
                      Transform transform) {
    validate(params);
    if (n < 100) {
        throw std::invalid_argument("n must be at least 100 paths");
    }
    const std::uint64_t n_blocks = (n + kPathsPerBlock - 1) / kPathsPerBlock;
    std::vector<Moments> blocks(n_blocks);

    std::atomic<std::uint64_t> next{0};
    auto worker_loop = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            const std::uint64_t count =
                std::min<std::uint64_t>(kPathsPerBlock, n - b * kPathsPerBlock);
            RandomStream block_stream{stream.seed, stream.stream_index + b, 0};
            const std::vector<double> spots = sample_terminal(
                params, maturity, static_cast<std::size_t>(count), block_stream);
            Moments moments;
            for (const double s : spots) moments.add(transform(s));
            blocks[b] = moments;
        }
    };

    unsigned n_workers = workers != 0 ? workers : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(
                                                               std::min<std::uint64_t>(
                                                                   n_blocks, 256))));
    if (n_workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker_loop);
        for (std::thread& t : pool) t.join();
    }

    Moments total;
    for (const Moments& block : blocks) total = merge(total, block);
    return to_estimate(total);
}

}  // namespace

McEstimate mc_price(const MarketParams& params, const OptionSpec& spec,
                    std::uint64_t n, RandomStream stream, unsigned workers) {
    validate(spec);
    const double df_d = std::exp(-params.rd * spec.maturity);
    const double strike = spec.strike;
    if (spec.side == OptionSide::call) {
        return run_blocks(params, spec.maturity, n, stream, workers,
                          [=](double s) { return df_d * std::max(s - strike, 0.0); });
    }
    return run_blocks(params, spec.maturity, n, stream, workers,
                      [=](double s) { return df_d * std::max(strike - s, 0.0); });
}

McEstimate mc_forward_check(const MarketParams& params, double maturity,
                            std::uint64_t n, RandomStream stream, unsigned workers) {
    if (!(std::isfinite(maturity) && maturity > 0.0)) {
        throw std::invalid_argument("maturity must be a positive finite number");
    }
    // E[S_T] = S0 e^{(rd - rf) T} for every beta, so this deflated mean
    // should straddle S0.
    const double deflator = std::exp(-(params.rd - params.rf) * maturity);
    return run_blocks(params, maturity, n, stream, workers,
                      [=](double s) { return deflator * s; });
}

std::vector<ConvergenceRow> convergence_study(const MarketParams& params,
                                              double maturity,
                                              const std::vector<double>& dt_levels,
                                              std::uint64_t n_paths,
                                              RandomStream stream) {
    validate(params);
    if (!(std::isfinite(maturity) && maturity > 0.0)) {
        throw std::invalid_argument("maturity must be a positive finite number");
    }
    if (dt_levels.empty()) {
        throw std::invalid_argument("dt_levels must not be empty");
    }
    for (std::size_t i = 0; i < dt_levels.size(); ++i) {
        if (!(std::isfinite(dt_levels[i]) && dt_levels[i] > 0.0)) {
            throw std::invalid_argument("dt_levels must be positive finite numbers");
        }
        if (i > 0 && dt_levels[i] >= dt_levels[i - 1]) {
            throw std::invalid_argument("dt_levels must be strictly decreasing");
        }
    }
    if (n_paths < 100) {
        throw std::invalid_argument("n_paths must be at least 100");
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(dt_levels.size());
    for (const double dt : dt_levels) {
        const TimeGrid grid = TimeGrid::regular(maturity, dt);
        double error_sum = 0.0;
        for (std::uint64_t p = 0; p < n_paths; ++p) {
            RandomStream path_stream{stream.seed, stream.stream_index + p, 0};
            const std::vector<double> increments =
                brownian_increments(path_stream, grid);
            // One Brownian path drives both schemes; the exact endpoint
            // needs only W_T.
            double w = 0.0;
            double s = params.spot;
            const double drift = params.rd - params.rf;
            for (std::size_t i = 0; i < increments.size(); ++i) {
                const double t = grid.times()[i];
                const double step = grid.times()[i + 1] - t;
                s += drift * s * step +
                     (params.sigma * s + params.beta * std::exp(drift * t)) *
                         increments[i];
                w += increments[i];
            }
            error_sum += std::fabs(s - exact_spot(params, grid.t_end(), w));
        }
        rows.push_back({dt, error_sum / static_cast<double>(n_paths), n_paths});
    }
    return rows;
}

}  // namespace crunchfx
