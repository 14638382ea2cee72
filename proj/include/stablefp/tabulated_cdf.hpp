// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_TABULATED_CDF_HPP
#define STABLEFP_TABULATED_CDF_HPP

#include <functional>
#include <memory>
#include <vector>

#include "stablefp/densities.hpp"
#include "stablefp/types.hpp"

namespace stablefp {

/// Behaviour of a distribution beyond its table.
struct TailModel {
  enum class Kind { power, zero };
  Kind kind = Kind::power;
  /// left: F(x) ~ C x^k as x -> 0; right: 1 - F(x) ~ C x^(-k) as x -> inf.
  double exponent = 1.0;
};

/// Distribution function of a positive variable, tabulated on a log grid and
/// interpolated by cubic Hermite splines in log x using exact slopes x f(x).
/// Beyond the table both tails follow power laws matched at the end nodes,
/// so quantiles of heavy-tailed laws are inverted analytically.
/// Immutable after construction; safe for concurrent readers.
class TabulatedCdf {
 public:
  struct Node {
    double x;
    double cdf;
    double survival;
    double density;
  };

  TabulatedCdf(std::vector<Node> nodes, TailModel left, TailModel right);

  /// Build from a node function on n log-spaced points in [x_lo, x_hi].
  static TabulatedCdf build(const std::function<Node(double)>& node, double x_lo, double x_hi,
                            int n, TailModel left, TailModel right);

  double cdf(double x) const;
  double survival(double x) const;
  double density(double x) const;
  /// Inverse of cdf on (0, 1); 0 and +inf at the end points. Throws
  /// DomainError for p outside [0, 1].
  double quantile(double p) const;

  double x_min() const noexcept { return nodes_.front().x; }
  double x_max() const noexcept { return nodes_.back().x; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  double hermite(double y, std::size_t i, bool derivative) const;
  std::size_t interval(double y) const;

  std::vector<Node> nodes_;
  std::vector<double> log_x_;
  std::vector<double> slope_;  // dF/dlog x
  TailModel left_;
  TailModel right_;
};

/// Shared tables for T, Tbar, That1 and T1, built on first use for each
/// alpha and kept for the life of the process.
const TabulatedCdf& tabulated_cdf(DensityName name, const StabilityIndex& idx);

/// P[S_1 <= x]: termwise-integrated series while its cancellation is
/// acceptable, and 1 - P[T_1 <= x^(-alpha)] from the T_1 table beyond.
struct S1Cdf {
  double value;
  bool from_series;
};
S1Cdf cdf_S1(const StabilityIndex& idx, double x);
/// Largest x (on a fine grid) for which the S_1 series is used.
double s1_series_limit(const StabilityIndex& idx);

}  // namespace stablefp

#endif  // STABLEFP_TABULATED_CDF_HPP
