#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace crunchfx {

/// Standard normal CDF, |error| <= 1e-12 over the full double range.
/// Throws std::domain_error for non-finite input.
double norm_cdf(double x);

/// Inverse standard normal CDF on (0, 1) (Wichura's AS241, double
/// precision). Throws std::domain_error outside the open interval.
double norm_ppf(double p);

/// Deterministic source of standard-normal draws.
///
/// Draw k of a stream is fully determined by (seed, stream_index, k):
/// a SplitMix64 counter sequence supplies 53-bit uniforms in (0, 1),
/// which are mapped through norm_ppf. The base state of a stream is
/// itself the stream_index-th SplitMix64 output for `seed`, so distinct
/// stream_index values give statistically independent sequences and
/// results never depend on scheduling. Single-owner: do not share one
/// stream between concurrent consumers.
struct RandomStream {
    std::uint64_t seed = 1;
    std::uint64_t stream_index = 0;
    std::uint64_t cursor = 0;  ///< draws consumed so far
};

/// Next n standard-normal draws; advances stream.cursor by n.
std::vector<double> gaussian_draws(RandomStream& stream, std::size_t n);

/// Single draw; equivalent to gaussian_draws(stream, 1)[0].
double gaussian_next(RandomStream& stream);

}  // namespace crunchfx
