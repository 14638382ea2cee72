// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/tabulated_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "stablefp/positive_stable.hpp"
#include "stablefp/quadrature.hpp"

namespace stablefp {

TabulatedCdf::TabulatedCdf(std::vector<Node> nodes, TailModel left, TailModel right)
    : nodes_(std::move(nodes)), left_(left), right_(right) {
  if (nodes_.size() < 2) throw DomainError("TabulatedCdf: need at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!(n.x > 0.0) || (i > 0 && !(n.x > nodes_[i - 1].x))) {
      throw DomainError("TabulatedCdf: abscissae must be positive and increasing");
    }
    log_x_.push_back(std::log(n.x));
    slope_.push_back(n.x * n.density);
  }
}

TabulatedCdf TabulatedCdf::build(const std::function<Node(double)>& node, double x_lo, double x_hi,
                                 int n, TailModel left, TailModel right) {
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  const double a = std::log(x_lo);
  const double b = std::log(x_hi);
  for (int i = 0; i < n; ++i) nodes.push_back(node(std::exp(a + (b - a) * i / (n - 1))));
  return TabulatedCdf(std::move(nodes), left, right);
}

std::size_t TabulatedCdf::interval(double y) const {
  const auto it = std::upper_bound(log_x_.begin(), log_x_.end(), y);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - log_x_.begin() - 1, 0));
  return std::min(i, log_x_.size() - 2);
}

// Hermite interpolant of F (derivative = false) or of dF/dy (true) on interval i.
double TabulatedCdf::hermite(double y, std::size_t i, bool derivative) const {
  const double h = log_x_[i + 1] - log_x_[i];
  const double s = (y - log_x_[i]) / h;
  const bool upper = nodes_[i].cdf > 0.5;
  // Near the right end interpolate the survival function to keep its digits.
  const double f0 = upper ? nodes_[i].survival : nodes_[i].cdf;
  const double f1 = upper ? nodes_[i + 1].survival : nodes_[i + 1].cdf;
  const double sign = upper ? -1.0 : 1.0;
  const double d0 = sign * slope_[i] * h;
  const double d1 = sign * slope_[i + 1] * h;
  if (derivative) {
    const double v = (6.0 * s * s - 6.0 * s) * f0 + (3.0 * s * s - 4.0 * s + 1.0) * d0 +
                     (-6.0 * s * s + 6.0 * s) * f1 + (3.0 * s * s - 2.0 * s) * d1;
    return sign * v / h;
  }
  const double s2 = s * s, s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * f0 + (s3 - 2.0 * s2 + s) * d0 + (-2.0 * s3 + 3.0 * s2) * f1 +
         (s3 - s2) * d1;
}

double TabulatedCdf::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const Node& lo = nodes_.front();
  const Node& hi = nodes_.back();
  if (x < lo.x) {
    return left_.kind == TailModel::Kind::zero ? 0.0 : lo.cdf * std::pow(x / lo.x, left_.exponent);
  }
  if (x > hi.x) return 1.0 - survival(x);
  const double y = std::log(x);
  const std::size_t i = interval(y);
  const double v = hermite(y, i, false);
  return std::clamp(nodes_[i].cdf > 0.5 ? 1.0 - v : v, 0.0, 1.0);
}

double TabulatedCdf::survival(double x) const {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const Node& hi = nodes_.back();
  if (x > hi.x) {
    return right_.kind == TailModel::Kind::zero ? 0.0
                                                : hi.survival * std::pow(x / hi.x, -right_.exponent);
  }
  if (x < nodes_.front().x) return 1.0 - cdf(x);
  const double y = std::log(x);
  const std::size_t i = interval(y);
  const double v = hermite(y, i, false);
  return std::clamp(nodes_[i].cdf > 0.5 ? v : 1.0 - v, 0.0, 1.0);
}

double TabulatedCdf::density(double x) const {
  if (!(x > 0.0) || std::isinf(x)) return 0.0;
  const Node& lo = nodes_.front();
  const Node& hi = nodes_.back();
  if (x < lo.x) {
    if (left_.kind == TailModel::Kind::zero) return 0.0;
    return left_.exponent * lo.cdf * std::pow(x / lo.x, left_.exponent) / x;
  }
  if (x > hi.x) {
    if (right_.kind == TailModel::Kind::zero) return 0.0;
    return right_.exponent * hi.survival * std::pow(x / hi.x, -right_.exponent) / x;
  }
  const double y = std::log(x);
  return std::max(0.0, hermite(y, interval(y), true) / x);
}

double TabulatedCdf::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: p must lie in [0,1]");
  if (!(p > 0.0)) return 0.0;
  if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
  const Node& lo = nodes_.front();
  const Node& hi = nodes_.back();
  if (p < lo.cdf) {
    if (left_.kind == TailModel::Kind::zero) return lo.x;
    return lo.x * std::pow(p / lo.cdf, 1.0 / left_.exponent);
  }
  const double q = 1.0 - p;
  if (q < hi.survival) {
    if (right_.kind == TailModel::Kind::zero) return hi.x;
    return hi.x * std::pow(q / hi.survival, -1.0 / right_.exponent);
  }
  // Bracket: last node with cdf <= p.
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), p,
                                   [](double v, const Node& n) { return v < n.cdf; });
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0));
  i = std::min(i, nodes_.size() - 2);
  const bool upper = nodes_[i].cdf > 0.5;
  const double target = upper ? q : p;
  // g(y) = interpolant - target is monotone on [a, b] (increasing for F,
  // decreasing for the survival branch).
  auto g = [&](double y) { return hermite(y, i, false) - target; };
  double a = log_x_[i], b = log_x_[i + 1];
  double ga = g(a);
  double y = 0.5 * (a + b);
  for (int it2 = 0; it2 < 100 && b - a > 1e-15 * std::max(1.0, std::abs(y)); ++it2) {
    const double gy = g(y);
    if (gy == 0.0) break;
    if ((gy > 0.0) == (ga > 0.0)) {
      a = y;
      ga = gy;
    } else {
      b = y;
    }
    // Newton step on F (dF/dy = slope), kept inside the bracket.
    const double d = hermite(y, i, true) * (upper ? -1.0 : 1.0);
    double next = d != 0.0 ? y - gy / d : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    y = next;
  }
  return std::exp(y);
}

namespace {

double clamp_hi(double x) { return std::min(x, 1e250); }

TabulatedCdf build_T(const StabilityIndex& idx) {
  const double a = idx.alpha();
  const double b = idx.beta();
  const double s = -idx.sin_pi_alpha();
  const double x_lo = 1e-7 * std::numbers::pi * a / s;
  const double x_hi = clamp_hi(std::pow(1e-7 * std::numbers::pi * (a - 1.0) / s, 1.0 / (b - 1.0)));
  return TabulatedCdf::build(
      [&](double x) {
        const double f = cdf_T(idx, x).value;
        const double sv = survival_T(idx, x).value;
        return TabulatedCdf::Node{x, f, sv, density_T(idx, x)};
      },
      x_lo, x_hi, 2048, {TailModel::Kind::power, 1.0}, {TailModel::Kind::power, 1.0 - b});
}

TabulatedCdf build_Tbar(const StabilityIndex& idx) {
  const double b = idx.beta();
  const double s = -idx.sin_pi_alpha();
  const double x_lo = std::pow(1e-7 * std::numbers::pi * (1.0 + b) / s, 1.0 / (1.0 + b));
  const double x_hi = clamp_hi(std::pow(1e-7 * std::numbers::pi * (1.0 - b) / s, 1.0 / (b - 1.0)));
  return TabulatedCdf::build(
      [&](double x) {
        return TabulatedCdf::Node{x, cdf_Tbar(idx, x).value, survival_Tbar(idx, x).value,
                                  density_Tbar(idx, x)};
      },
      x_lo, x_hi, 2048, {TailModel::Kind::power, 1.0 + b}, {TailModel::Kind::power, 1.0 - b});
}

TabulatedCdf build_That1(const StabilityIndex& idx) {
  const double b = idx.beta();
  const PositiveStableKernel kernel(b);
  const double g = b / (1.0 - b);
  const double a0 = kernel.kanter_a(0.0);
  const double x_lo = std::pow(a0 / 69.0, 1.0 / g);  // cdf near 1e-30
  const double x_hi = clamp_hi(std::pow(1e-10 * std::tgamma(1.0 - b), -1.0 / b));
  return TabulatedCdf::build(
      [&](double x) {
        return TabulatedCdf::Node{x, kernel.cdf(x, 1e-11).value, kernel.survival(x, 1e-11).value,
                                  kernel.density(x, 1e-11).value};
      },
      x_lo, x_hi, 1536, {TailModel::Kind::zero, 0.0}, {TailModel::Kind::power, b});
}

TabulatedCdf build_T1(const StabilityIndex& idx, const TabulatedCdf& that1) {
  const double a = idx.alpha();
  const double b = idx.beta();
  const double c0 = -1.0 / std::tgamma(1.0 - a);
  const double kappa = 1.0 / (std::tgamma(a) * std::tgamma(b));
  const double x_lo = 1e-7 / c0;
  const double x_hi = clamp_hi(std::pow(1e-7 / kappa, 1.0 / (b - 1.0)));
  quad::QuadOptions o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-10;
  auto product = [&](double t, auto&& kernel_fn, double p0, quad::Tail tail) {
    quad::Integrand f;
    f.fn = [&](double u) {
      const double fu = density_T(idx, u);
      return fu == 0.0 ? 0.0 : fu * kernel_fn(t, u);
    };
    f.zero_exponent = p0;
    f.tail = tail;
    f.breakpoints = product_breakpoints(t);
    return quad::integrate_semi_infinite(f, o).value;
  };
  return TabulatedCdf::build(
      [&](double t) {
        const double F = product(
            t, [&](double tt, double u) { return that1.cdf(tt / u); }, 0.0, quad::Tail::power(3.0));
        const double S = product(
            t, [&](double tt, double u) { return that1.survival(tt / u); }, b,
            quad::Tail::power(2.0 - b));
        const double f = product(
            t, [&](double tt, double u) { return that1.density(tt / u) / u; }, b,
            quad::Tail::power(3.0));
        return TabulatedCdf::Node{t, F, S, f};
      },
      x_lo, x_hi, 1024, {TailModel::Kind::power, 1.0}, {TailModel::Kind::power, 1.0 - b});
}

}  // namespace

const TabulatedCdf& tabulated_cdf(DensityName name, const StabilityIndex& idx) {
  idx.require_interior("tabulated_cdf");
  static std::recursive_mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<TabulatedCdf>> cache;
  std::lock_guard<std::recursive_mutex> lock(mutex);
  const auto key = std::make_pair(static_cast<int>(name), idx.alpha());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  std::unique_ptr<TabulatedCdf> table;
  switch (name) {
    case DensityName::T: table = std::make_unique<TabulatedCdf>(build_T(idx)); break;
    case DensityName::Tbar: table = std::make_unique<TabulatedCdf>(build_Tbar(idx)); break;
    case DensityName::That1: table = std::make_unique<TabulatedCdf>(build_That1(idx)); break;
    case DensityName::T1:
      table = std::make_unique<TabulatedCdf>(build_T1(idx, tabulated_cdf(DensityName::That1, idx)));
      break;
    default:
      throw DomainError("tabulated_cdf: no table for " + std::string(to_string(name)));
  }
  return *cache.emplace(key, std::move(table)).first->second;
}

double s1_series_limit(const StabilityIndex& idx) {
  static std::mutex mutex;
  static std::map<double, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(idx.alpha());
  if (it != cache.end()) return it->second;
  // Scan upward in small geometric steps until the series gives up.
  double limit = 0.0;
  for (double x = 0.01; x < 1e3; x *= 1.05) {
    try {
      cdf_S1_series(idx, x, 1e-10);
      limit = x;
    } catch (const NumericalFailure&) {
      break;
    }
  }
  cache.emplace(idx.alpha(), limit);
  return limit;
}

S1Cdf cdf_S1(const StabilityIndex& idx, double x) {
  idx.require_interior("cdf_S1");
  if (!(x > 0.0)) return {0.0, false};
  if (x <= s1_series_limit(idx)) return {cdf_S1_series(idx, x, 1e-10).value, true};
  const double t = std::pow(x, -idx.alpha());
  return {tabulated_cdf(DensityName::T1, idx).survival(t), false};
}

}  // namespace stablefp
