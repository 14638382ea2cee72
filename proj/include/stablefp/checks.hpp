// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_CHECKS_HPP
#define STABLEFP_CHECKS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "stablefp/samplers.hpp"
#include "stablefp/types.hpp"

namespace stablefp {

/// Outcome of one named check at one alpha. Smaller statistic is better and
/// passed == (statistic <= threshold). details holds everything needed to
/// rerun the check: grids, tolerances, seeds, sample sizes, method tags.
struct CheckReport {
  std::string name;
  double alpha = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

/// Asymptotic Kolmogorov-Smirnov critical values c / sqrt(n).
inline constexpr double kKsCritical01 = 1.63;
inline constexpr double kKsCritical05 = 1.36;

/// sup |F_n - F| for the empirical distribution of the batch. Throws
/// DomainError on an empty batch, a value of cdf outside [0, 1], or a cdf
/// that decreases along the sorted sample.
double ks_statistic(const std::vector<double>& sample, const std::function<double(double)>& cdf);
double ks_statistic(const SampleBatch& batch, const std::function<double(double)>& cdf);
/// Two-sample statistic sup |F_n - G_m|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Completely monotone structure of D_alpha. alpha in (1, 2) checks the
/// Bernstein density (sign, mass, Laplace transform) and the signs of divided
/// differences up to order_max; alpha = 2 compares with exp(-x); alpha = 4
/// inspects the closed form, which is expected to fail.
CheckReport check_cm(double alpha, const std::vector<double>& x_grid, int order_max,
                     double tol = 1e-8);

/// Laplace transform identities for E_alpha(q x^alpha), for the law of T_1
/// and for the supremum at an exponential time.
CheckReport check_laplace_identities(const StabilityIndex& idx, const std::vector<double>& q_list,
                                     const std::vector<double>& lambda_grid,
                                     const std::vector<double>& y_grid, double tol = 1e-6);

/// E[exp(-lambda S_tau_q)] = q (lambda - q^(1/a)) / (q^(1/a) (lambda^a - q)),
/// continuous at lambda = q^(1/a) where it equals 1/a.
double wh_transform(const StabilityIndex& idx, double q, double lambda);

/// T_1 = T x That1: series against product density on t_grid, then KS of
/// n product draws against the tabulated T_1 distribution.
CheckReport check_thm3(const StabilityIndex& idx, const std::vector<double>& t_grid, std::size_t n,
                       const RandomStream& base, double tol = 1e-6, int workers = 1);

/// D_alpha(x) as the double integral over the law of the Mittag-Leffler
/// variable and the law of T.
CheckReport check_corollary4(const StabilityIndex& idx, const std::vector<double>& x_list,
                             double tol = 1e-5);
/// The double integral alone.
EvalResult corollary4_integral(const StabilityIndex& idx, double x, double tol = 1e-8);

/// -T^(-1/alpha) X_1 given X_1 < 0 against the S_1 distribution, one KS test
/// per seed; the statistic is the largest KS distance.
CheckReport check_corollary5(const StabilityIndex& idx, std::size_t n,
                             const std::vector<std::uint64_t>& seeds, int workers = 1);

struct TailConstant {
  double kappa;  // estimate at the largest probe
  double alpha;
};
/// 1 / (Gamma(a) Gamma(1/a)).
double tail_constant_exact(double alpha);

/// t^(1 - 1/a) P[T_1 >= t] at the probes against tail_constant_exact.
/// alpha = 2 is accepted and uses the closed form.
CheckReport estimate_tail_constant(const StabilityIndex& idx, const std::vector<double>& t_probes,
                                   TailConstant* out = nullptr, double tol = 0.01);

/// P[T_1 <= t] / t at the probes against -1/Gamma(1 - a), plus the reflection
/// identity between the two forms of that constant.
CheckReport check_small_time(const StabilityIndex& idx, const std::vector<double>& t_probes,
                             double tol = 0.02);

/// f_T1 = weight_g g + weight_h h pointwise on t_grid, g >= 0, and the share
/// of each part tending to one at its end of the axis.
CheckReport check_convex_decomposition(const StabilityIndex& idx, const std::vector<double>& t_grid,
                                       double tol = 1e-6);

/// Monte Carlo P[S_tau_q >= x] on nested grids against survival_S_tau.
/// grid_step is the finest step; `levels` coarser grids double it each time.
CheckReport check_wh_survival_mc(const StabilityIndex& idx, double q,
                                 const std::vector<double>& x_grid, std::size_t n,
                                 double grid_step, int levels, const RandomStream& base,
                                 double rel_tol = 0.02, int workers = 1);

/// Monte Carlo E[exp(-lambda Shat_1)] on nested grids with 2^steps_log2 steps
/// at the finest level, against E_(1/a)(-lambda).
CheckReport check_ml_law_mc(const StabilityIndex& idx, const std::vector<double>& lambdas,
                            std::size_t n, int steps_log2, int levels, const RandomStream& base,
                            double rel_tol = 0.02, int workers = 1);

/// Gates for the samplers: Kanter at beta = 1/2 against the Levy law, Laplace
/// transforms of positive stable draws and of X_1 within 3 standard errors.
CheckReport check_sampler_gates(const StabilityIndex& idx, std::size_t n_ks,
                                std::size_t n_laplace, const RandomStream& base, int workers = 1);

/// Canonical check names in suite order. "all" expands to every one of them
/// and "deterministic" to those drawing no random numbers.
const std::vector<std::string>& check_names();

struct SuiteOptions {
  std::uint64_t seed = 42;
  int workers = 1;
  /// Keys "param" or "check.param"; the scoped form wins. Recognized params
  /// are tol, n, paths, steps_log2, levels and grid_step.
  std::map<std::string, double> overrides;
};

/// Runs the named checks over the alpha list. Reports come back ordered by
/// name (in the order given) and then alpha. Unknown names throw
/// std::invalid_argument before anything runs.
std::vector<CheckReport> run_suite(const std::vector<std::string>& names,
                                   const std::vector<double>& alphas, const SuiteOptions& options);

nlohmann::ordered_json to_json(const CheckReport& report);

}  // namespace stablefp

#endif  // STABLEFP_CHECKS_HPP
