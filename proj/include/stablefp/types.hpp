// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_TYPES_HPP
#define STABLEFP_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stablefp {

/// Argument outside the domain of an operation (bad alpha, negative x, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not reach its tolerance. Carries the best
/// estimate obtained so far.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double partial_value, double abs_err)
      : std::runtime_error(what), partial_(partial_value), abs_err_(abs_err) {}
  double partial_value() const noexcept { return partial_; }
  double abs_err() const noexcept { return abs_err_; }

 private:
  double partial_;
  double abs_err_;
};

enum class Method : std::uint8_t {
  series,
  bernstein_quadrature,
  direct_formula,
  product_quadrature,
  convex_combination,
  pollard_integral,
  kanter_integral,
  transform,
  closed_form,
};

std::string_view to_string(Method m) noexcept;

/// A value with an absolute error estimate, the code path that produced it
/// and the amount of work spent (series terms or integrand evaluations).
struct EvalResult {
  double value = 0.0;
  double abs_err = 0.0;
  Method method = Method::direct_formula;
  std::int64_t n_work = 1;
};

/// Stability index alpha of the spectrally positive process, 1 < alpha <= 2.
/// beta = 1/alpha is the index of the first-passage subordinator.
class StabilityIndex {
 public:
  explicit StabilityIndex(double alpha);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// True for alpha == 2 (Brownian case, closed forms only).
  bool is_gaussian() const noexcept { return alpha_ == 2.0; }
  /// Throws DomainError unless 1 < alpha < 2.
  void require_interior(std::string_view what) const;

  double sin_pi_alpha() const noexcept { return sin_pa_; }
  double cos_pi_alpha() const noexcept { return cos_pa_; }

 private:
  double alpha_;
  double beta_;
  double sin_pa_;
  double cos_pa_;
};

/// Index of a Mittag-Leffler function E_order, order > 0.
class MLOrder {
 public:
  explicit MLOrder(double order);
  double order() const noexcept { return order_; }

 private:
  double order_;
};

/// sin(pi x) and cos(pi x) with exact zeros at integers and half-integers.
double sin_pi(double x) noexcept;
double cos_pi(double x) noexcept;

}  // namespace stablefp

#endif  // STABLEFP_TYPES_HPP
