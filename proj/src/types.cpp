// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/types.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace stablefp {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::series: return "series";
    case Method::bernstein_quadrature: return "bernstein_quadrature";
    case Method::direct_formula: return "direct_formula";
    case Method::product_quadrature: return "product_quadrature";
    case Method::convex_combination: return "convex_combination";
    case Method::pollard_integral: return "pollard_integral";
    case Method::kanter_integral: return "kanter_integral";
    case Method::transform: return "transform";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

double sin_pi(double x) noexcept {
  // reduce to [-1, 1) so that integers and half-integers are exact
  double r = std::remainder(x, 2.0);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double x) noexcept {
  double r = std::remainder(x, 2.0);
  if (std::abs(r) == 0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (std::abs(r) == 1.0) return -1.0;
  return std::cos(std::numbers::pi * r);
}

StabilityIndex::StabilityIndex(double alpha) : alpha_(alpha), beta_(1.0 / alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "stability index alpha=" << alpha << " outside (1, 2]";
    throw DomainError(os.str());
  }
  sin_pa_ = sin_pi(alpha);
  cos_pa_ = cos_pi(alpha);
}

void StabilityIndex::require_interior(std::string_view what) const {
  if (alpha_ >= 2.0) {
    std::ostringstream os;
    os << what << " requires 1 < alpha < 2 (got alpha=" << alpha_ << ")";
    throw DomainError(os.str());
  }
}

MLOrder::MLOrder(double order) : order_(order) {
  if (!(order > 0.0) || !std::isfinite(order)) {
    std::ostringstream os;
    os << "Mittag-Leffler order " << order << " must be > 0";
    throw DomainError(os.str());
  }
}

}  // namespace stablefp
