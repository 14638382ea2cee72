// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "stablefp/densities.hpp"
#include "stablefp/positive_stable.hpp"
#include "stablefp/tabulated_cdf.hpp"

namespace stablefp {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

using DrawWithCount = std::function<double(RandomStream&, std::uint64_t&)>;

SampleBatch run_batch(const StabilityIndex& idx, const std::string& name, std::size_t n,
                      const RandomStream& base, int workers, const DrawWithCount& draw) {
  SampleBatch batch;
  batch.values.resize(n);
  batch.alpha = idx.alpha();
  batch.distribution = name;
  batch.seed = base.seed();
  batch.stream_id = base.stream_id();
  const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<std::uint64_t> redrawn(n_blocks, 0);
  for_each_block(n, workers, [&](std::size_t b, std::size_t begin, std::size_t end) {
    RandomStream rng = base.substream(b);
    for (std::size_t i = begin; i < end; ++i) batch.values[i] = draw(rng, redrawn[b]);
  });
  for (std::uint64_t r : redrawn) batch.redrawn += r;
  return batch;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RandomStream::uniform() {
  ++counter_;
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

RandomStream RandomStream::substream(std::uint64_t child) const {
  return RandomStream(seed_, splitmix64(stream_id_ ^ splitmix64(child + 1)));
}

PathGridSpec::PathGridSpec(double horizon_, std::int64_t n_steps_)
    : horizon(horizon_), n_steps(n_steps_) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("grid horizon must be > 0");
  if (n_steps < 1) throw DomainError("grid needs at least one step");
}

double sample_positive_stable(double beta, RandomStream& rng) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("positive stable: beta must be in (0, 1)");
  const double u = kPi * rng.uniform();
  const double w = rng.exponential();
  return std::exp((1.0 - beta) / beta * (kanter_log_a(beta, u) - std::log(w)));
}

double sample_That1(const StabilityIndex& idx, RandomStream& rng) {
  idx.require_interior("sample_That1");
  return sample_positive_stable(idx.beta(), rng);
}

double sample_T(const StabilityIndex& idx, RandomStream& rng) {
  idx.require_interior("sample_T");
  return tabulated_cdf(DensityName::T, idx).quantile(rng.uniform());
}

double sample_Tbar(const StabilityIndex& idx, RandomStream& rng) {
  idx.require_interior("sample_Tbar");
  return tabulated_cdf(DensityName::Tbar, idx).quantile(rng.uniform());
}

double sample_Ttilde(const StabilityIndex& idx, RandomStream& rng) {
  idx.require_interior("sample_Ttilde");
  return quantile_Ttilde(idx, rng.uniform());
}

double sample_X1(const StabilityIndex& idx, RandomStream& rng) {
  idx.require_interior("sample_X1");
  const double a = idx.alpha();
  // Skewness fully to the right; the usual scale factor |sec(pi a / 2)|^(1/a)
  // is absent because the target scale is |cos(pi a / 2)|^(1/a).
  const double b = 0.5 * kPi - kPi / a;
  const double v = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double av = a * (v + b);
  return std::sin(av) / std::pow(std::cos(v), 1.0 / a) *
         std::pow(std::cos(v - av) / w, (1.0 - a) / a);
}

double sample_X1_conditioned_negative(const StabilityIndex& idx, RandomStream& rng,
                                      std::uint64_t* rejected) {
  for (int i = 0; i < kRejectionBudget; ++i) {
    const double x = sample_X1(idx, rng);
    if (x < 0.0) return x;
    if (rejected) ++*rejected;
  }
  throw NumericalFailure("conditioned X_1: rejection budget exhausted", 0.0, 0.0);
}

double simulate_supremum(const StabilityIndex& idx, const PathGridSpec& grid, RandomStream& rng,
                         PathSide side) {
  const double scale =
      std::pow(grid.step(), idx.beta()) * (side == PathSide::X ? 1.0 : -1.0);
  double level = 0.0;
  double sup = 0.0;
  for (std::int64_t i = 0; i < grid.n_steps; ++i) {
    level += scale * sample_X1(idx, rng);
    sup = std::max(sup, level);
  }
  return sup;
}

std::vector<double> simulate_supremum_nested(const StabilityIndex& idx, double horizon, int levels,
                                             RandomStream& rng, PathSide side) {
  if (levels < 0 || levels > 40) throw DomainError("nested grid: levels must be in [0, 40]");
  const std::int64_t n = std::int64_t{1} << levels;
  const PathGridSpec grid(horizon, n);
  const double scale =
      std::pow(grid.step(), idx.beta()) * (side == PathSide::X ? 1.0 : -1.0);
  std::vector<double> sup(static_cast<std::size_t>(levels) + 1, 0.0);
  double level = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    level += scale * sample_X1(idx, rng);
    // Point i lies on grid k iff 2^(levels-k) divides i.
    const int tz = std::countr_zero(static_cast<std::uint64_t>(i));
    const int k_min = std::max(0, levels - tz);
    for (int k = k_min; k <= levels; ++k) sup[k] = std::max(sup[k], level);
  }
  return sup;
}

std::vector<double> sample_sup_at_exp_time_nested(const StabilityIndex& idx, double q,
                                                  double finest_step, int levels,
                                                  RandomStream& rng) {
  if (!(q > 0.0)) throw DomainError("exponential time: q must be > 0");
  if (!(finest_step > 0.0)) throw DomainError("exponential time: grid_step must be > 0");
  if (levels < 0 || levels > 40) throw DomainError("nested grid: levels must be in [0, 40]");
  const double tau = rng.exponential() / q;
  const auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(tau / finest_step)));
  const double scale = std::pow(finest_step, idx.beta());
  std::vector<double> sup(static_cast<std::size_t>(levels) + 1, 0.0);
  double level = 0.0;
  for (std::int64_t i = 1; i < n; ++i) {
    level += scale * sample_X1(idx, rng);
    const int tz = std::min(levels, std::countr_zero(static_cast<std::uint64_t>(i)));
    for (int k = levels - tz; k <= levels; ++k) sup[k] = std::max(sup[k], level);
  }
  const double last = tau - static_cast<double>(n - 1) * finest_step;
  level += std::pow(last, idx.beta()) * sample_X1(idx, rng);
  for (double& s : sup) s = std::max(s, level);
  return sup;
}

double sample_sup_at_exp_time(const StabilityIndex& idx, double q, double grid_step,
                              RandomStream& rng) {
  return sample_sup_at_exp_time_nested(idx, q, grid_step, 0, rng).front();
}

void for_each_block(std::size_t n, int workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<std::exception_ptr> errors(n_blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      try {
        body(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(std::max(1, workers), n_blocks);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SampleBatch sample_batch(const StabilityIndex& idx, const std::string& name, std::size_t n,
                         const RandomStream& base, int workers,
                         const std::function<double(RandomStream&)>& draw) {
  return run_batch(idx, name, n, base, workers,
                   [&](RandomStream& rng, std::uint64_t&) { return draw(rng); });
}

SampleBatch sample_product_T_That1(const StabilityIndex& idx, std::size_t n,
                                   const RandomStream& base, int workers) {
  idx.require_interior("sample_product_T_That1");
  if (n < 1) throw DomainError("sample size must be >= 1");
  tabulated_cdf(DensityName::T, idx);  // build once before the workers start
  return run_batch(idx, "T1_product", n, base, workers, [&](RandomStream& rng, std::uint64_t&) {
    const double t = sample_T(idx, rng);
    return t * sample_That1(idx, rng);
  });
}

SampleBatch estimate_T1_samples(const StabilityIndex& idx, const PathGridSpec& grid,
                                std::size_t n, const RandomStream& base, int workers) {
  idx.require_interior("estimate_T1_samples");
  if (n < 1) throw DomainError("sample size must be >= 1");
  return run_batch(idx, "T1_grid", n, base, workers, [&](RandomStream& rng, std::uint64_t& redo) {
    for (;;) {
      const double s = simulate_supremum(idx, grid, rng, PathSide::X);
      // S_h = h^(1/alpha) S_1 in law, so T_1 = h S_h^(-alpha).
      if (s > 0.0) return grid.horizon * std::pow(s, -idx.alpha());
      ++redo;
    }
  });
}

SampleBatch sample_S1_via_conditioned(const StabilityIndex& idx, std::size_t n,
                                      const RandomStream& base, int workers) {
  idx.require_interior("sample_S1_via_conditioned");
  if (n < 1) throw DomainError("sample size must be >= 1");
  tabulated_cdf(DensityName::T, idx);
  return run_batch(idx, "S1_conditioned", n, base, workers,
                   [&](RandomStream& rng, std::uint64_t& redo) {
                     const double t = sample_T(idx, rng);
                     const double x = sample_X1_conditioned_negative(idx, rng, &redo);
                     return -std::pow(t, -idx.beta()) * x;
                   });
}

}  // namespace stablefp
