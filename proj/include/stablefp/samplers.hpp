// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_SAMPLERS_HPP
#define STABLEFP_SAMPLERS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stablefp/types.hpp"

namespace stablefp {

/// A reproducible stream of random numbers identified by (seed, stream_id).
/// Distinct stream ids under one seed give independent sequences.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t counter() const noexcept { return counter_; }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  /// Unit-rate exponential.
  double exponential();
  /// Child stream keyed by (seed, stream_id, child). Does not touch this stream.
  RandomStream substream(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 engine_;
};

/// Uniform time grid on [0, horizon].
struct PathGridSpec {
  double horizon = 1.0;
  std::int64_t n_steps = 1;

  PathGridSpec() = default;
  PathGridSpec(double horizon, std::int64_t n_steps);
  double step() const noexcept { return horizon / static_cast<double>(n_steps); }
};

struct SampleBatch {
  std::vector<double> values;
  double alpha = 0.0;
  std::string distribution;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  /// Draws thrown away and redrawn (rejections, invalid paths).
  std::uint64_t redrawn = 0;

  std::size_t n() const noexcept { return values.size(); }
};

/// Positive stable S with E[exp(-lambda S)] = exp(-lambda^beta), by Kanter's
/// representation S = (a(U)/W)^((1-beta)/beta).
double sample_positive_stable(double beta, RandomStream& rng);
/// The 1/alpha-stable subordinator at time one.
double sample_That1(const StabilityIndex& idx, RandomStream& rng);

/// Inverse-CDF draws. T and Tbar use the shared tables; Ttilde is a shifted
/// and scaled Cauchy law restricted to (0, inf) and is inverted exactly.
double sample_T(const StabilityIndex& idx, RandomStream& rng);
double sample_Tbar(const StabilityIndex& idx, RandomStream& rng);
double sample_Ttilde(const StabilityIndex& idx, RandomStream& rng);

/// Spectrally positive alpha-stable X_1 with E[exp(-lambda X_1)] = exp(lambda^alpha),
/// by the Chambers-Mallows-Stuck formula.
double sample_X1(const StabilityIndex& idx, RandomStream& rng);

inline constexpr int kRejectionBudget = 10000;

/// X_1 given X_1 < 0, by rejection. Throws NumericalFailure after
/// kRejectionBudget consecutive rejections. The number of rejected draws is
/// added to *rejected when given.
double sample_X1_conditioned_negative(const StabilityIndex& idx, RandomStream& rng,
                                      std::uint64_t* rejected = nullptr);

enum class PathSide { X, Xhat };

/// Maximum of the random walk 0, Z_1, Z_1 + Z_2, ... with increments
/// step^(1/alpha) X_1 (negated for Xhat). Underestimates the supremum of the
/// continuous-time path.
double simulate_supremum(const StabilityIndex& idx, const PathGridSpec& grid, RandomStream& rng,
                         PathSide side);

/// Suprema of one path observed on the nested grids with 2^0, 2^1, ...,
/// 2^levels steps. Entry k uses every 2^(levels-k)-th point of the finest
/// grid, so the sequence is non-decreasing.
std::vector<double> simulate_supremum_nested(const StabilityIndex& idx, double horizon, int levels,
                                             RandomStream& rng, PathSide side);

/// Grid supremum of X on [0, tau], tau ~ Exp(q). The grid is
/// {0, h, 2h, ...} below tau plus the end point tau itself.
double sample_sup_at_exp_time(const StabilityIndex& idx, double q, double grid_step,
                              RandomStream& rng);

/// One path, suprema on the grids with steps finest_step * 2^(levels-k),
/// k = 0..levels, each grid completed by the end point tau.
std::vector<double> sample_sup_at_exp_time_nested(const StabilityIndex& idx, double q,
                                                  double finest_step, int levels,
                                                  RandomStream& rng);

// Batch samplers. Draws are cut into fixed blocks of kBlockSize, and block b
// uses base.substream(b), so the output depends on (base seed, stream_id, n)
// only and never on the number of workers.

inline constexpr std::size_t kBlockSize = 4096;

/// Runs body(block, begin, end) over the blocks of [0, n) on up to `workers`
/// threads. Exceptions are rethrown in block order.
void for_each_block(std::size_t n, int workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// n draws of T x That1 with independent factors, tagged "T1_product".
SampleBatch sample_product_T_That1(const StabilityIndex& idx, std::size_t n,
                                   const RandomStream& base, int workers = 1);

/// n draws of (grid supremum of X on [0, 1])^(-alpha), an upward biased
/// estimate of T_1. Paths whose grid supremum is zero are redrawn.
SampleBatch estimate_T1_samples(const StabilityIndex& idx, const PathGridSpec& grid,
                                std::size_t n, const RandomStream& base, int workers = 1);

/// n draws of -T^(-1/alpha) X_1 with X_1 conditioned negative. In law this is S_1.
SampleBatch sample_S1_via_conditioned(const StabilityIndex& idx, std::size_t n,
                                      const RandomStream& base, int workers = 1);

/// Generic batch of n draws from a single-draw sampler.
SampleBatch sample_batch(const StabilityIndex& idx, const std::string& name, std::size_t n,
                         const RandomStream& base, int workers,
                         const std::function<double(RandomStream&)>& draw);

}  // namespace stablefp

#endif  // STABLEFP_SAMPLERS_HPP
