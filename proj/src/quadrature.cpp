// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stablefp/types.hpp"

namespace stablefp::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// A piece of the integration domain expressed in its own variable.
struct Piece {
  RealFn g;
  double a;
  double b;
};

struct Panel {
  std::size_t piece;
  double a;
  double b;
  double value;
  double err;
  bool splittable;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel gk21(const Piece& pc, std::size_t idx, double a, double b, std::int64_t& n_evals) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = pc.g(mid);
  double k = wk[0] * fc;
  double g = 0.0;
  double l1 = wk[0] * std::abs(fc);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double f1 = pc.g(mid - dx);
    const double f2 = pc.g(mid + dx);
    k += wk[i] * (f1 + f2);
    l1 += wk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) g += wg[i / 2] * (f1 + f2);
  }
  n_evals += 21;
  Panel p;
  p.piece = idx;
  p.a = a;
  p.b = b;
  p.value = k * half;
  p.err = std::max(std::abs((k - g) * half), 50.0 * kEps * l1 * std::abs(half));
  if (!std::isfinite(p.value)) p.err = std::numeric_limits<double>::infinity();
  // Stop splitting once the panel is at the resolution of doubles.
  const double scale = std::max(std::abs(a), std::abs(b));
  p.splittable = (b - a) > 64.0 * kEps * scale && (b - a) > 1e-300;
  // A panel whose error is already at the roundoff floor cannot improve.
  if (std::abs((k - g) * half) <= 50.0 * kEps * l1 * std::abs(half)) p.splittable = false;
  return p;
}

QuadResult adaptive(const std::vector<Piece>& pieces, const QuadOptions& opts) {
  QuadResult res;
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  std::vector<Panel> done;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Panel p = gk21(pieces[i], i, pieces[i].a, pieces[i].b, res.n_evals);
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }
  int n_panels = static_cast<int>(pieces.size());
  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (!heap.empty() && !(total_err <= target())) {
    Panel worst = heap.top();
    heap.pop();
    if (!worst.splittable || n_panels >= opts.max_panels || !std::isfinite(worst.err)) {
      done.push_back(worst);
      if (n_panels >= opts.max_panels || !std::isfinite(worst.err)) break;
      continue;
    }
    const double m = 0.5 * (worst.a + worst.b);
    Panel left = gk21(pieces[worst.piece], worst.piece, worst.a, m, res.n_evals);
    Panel right = gk21(pieces[worst.piece], worst.piece, m, worst.b, res.n_evals);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  // Sum in a fixed spatial order so results do not depend on heap history.
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) {
    return x.piece != y.piece ? x.piece < y.piece : x.a < y.a;
  });
  res.value = 0.0;
  res.abs_err = 0.0;
  for (const Panel& p : done) {
    res.value += p.value;
    res.abs_err += p.err;
  }
  res.converged = std::isfinite(res.value) &&
                  res.abs_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value));
  if (!std::isfinite(res.value)) {
    res.diagnostic = "integrand produced non-finite values";
  } else if (!res.converged) {
    res.diagnostic = n_panels >= opts.max_panels ? "panel budget exhausted"
                                                 : "error estimate limited by roundoff";
  }
  return res;
}

// Wraps f(t(w)) t'(w); points where the map leaves the reals contribute 0.
RealFn mapped(const RealFn& f, std::function<std::pair<double, double>(double)> map) {
  return [f, map = std::move(map)](double w) {
    const auto [t, dt] = map(w);
    if (!std::isfinite(t) || !std::isfinite(dt) || dt == 0.0) return 0.0;
    return f(t) * dt;
  };
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate: finite limits required");
  }
  if (a == b) {
    QuadResult r;
    r.converged = true;
    return r;
  }
  if (a > b) {
    QuadResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  return adaptive({Piece{f, a, b}}, opts);
}

QuadResult integrate(const RealFn& f, const std::vector<double>& points, const QuadOptions& opts) {
  std::vector<Piece> pieces;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] >= points[i - 1]) || !std::isfinite(points[i])) {
      throw DomainError("integrate: points must be finite and ascending");
    }
    if (points[i] > points[i - 1]) pieces.push_back({f, points[i - 1], points[i]});
  }
  if (pieces.empty()) {
    QuadResult r;
    r.converged = true;
    return r;
  }
  return adaptive(pieces, opts);
}

QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opts) {
  const double p = f.zero_exponent;
  if (!(p > -1.0)) throw DomainError("integrate_semi_infinite: zero exponent must exceed -1");
  if (f.tail.kind == Tail::Kind::power && !(f.tail.rate > 1.0)) {
    throw DomainError("integrate_semi_infinite: power tail exponent must exceed 1");
  }
  if (f.tail.kind == Tail::Kind::exponential && !(f.tail.rate > 0.0)) {
    throw DomainError("integrate_semi_infinite: exponential rate must be positive");
  }

  std::vector<double> bp;
  for (double b : f.breakpoints) {
    if (std::isfinite(b) && b > 0.0) bp.push_back(b);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  if (bp.empty()) bp.push_back(1.0);

  std::vector<Piece> pieces;
  const double b0 = bp.front();
  const double e0 = 1.0 / (p + 1.0);
  pieces.push_back({mapped(f.fn,
                           [b0, e0](double w) {
                             const double t = b0 * std::pow(w, e0);
                             return std::pair{t, b0 * e0 * std::pow(w, e0 - 1.0)};
                           }),
                    0.0, 1.0});
  for (std::size_t i = 1; i < bp.size(); ++i) pieces.push_back({f.fn, bp[i - 1], bp[i]});

  const double c = bp.back();
  if (f.tail.kind == Tail::Kind::exponential) {
    const double r = f.tail.rate;
    pieces.push_back({mapped(f.fn,
                             [c, r](double w) {
                               return std::pair{c - std::log(w) / r, 1.0 / (r * w)};
                             }),
                      0.0, 1.0});
  } else {
    const double q = f.tail.kind == Tail::Kind::power ? f.tail.rate : 2.0;
    const double e = -1.0 / (q - 1.0);
    pieces.push_back({mapped(f.fn,
                             [c, e](double w) {
                               const double t = c * std::pow(w, e);
                               return std::pair{t, -c * e * std::pow(w, e - 1.0)};
                             }),
                      0.0, 1.0});
  }
  return adaptive(pieces, opts);
}

QuadResult integrate_semi_infinite(const Integrand& f, double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  return integrate_semi_infinite(f, o);
}

QuadResult laplace_transform_numeric(const Integrand& f, double s, double tol) {
  if (!(s > 0.0)) throw DomainError("laplace_transform_numeric: s must be positive");
  Integrand g = f;
  const RealFn inner = f.fn;
  g.fn = [inner, s](double t) {
    const double e = std::exp(-s * t);
    return e == 0.0 ? 0.0 : e * inner(t);
  };
  switch (f.tail.kind) {
    case Tail::Kind::exponential:
      g.tail = Tail::exponential(f.tail.rate + s);
      break;
    case Tail::Kind::power:
      if (f.tail.rate > 1.0) break;
      [[fallthrough]];
    case Tail::Kind::unspecified:
      g.tail = Tail::exponential(s);
      break;
  }
  return integrate_semi_infinite(g, tol);
}

SeriesResult sum_series(const std::function<long double(std::int64_t)>& term, double rel_tol,
                        std::int64_t max_terms, std::int64_t first) {
  SeriesResult res;
  long double sum = 0.0L;
  long double abs_sum = 0.0L;
  long double max_partial = 0.0L;
  long double peak = 0.0L;
  long double recent = 0.0L;
  int small_run = 0;
  bool past_peak = false;
  std::int64_t n = 0;
  for (; n < max_terms; ++n) {
    const long double t = term(first + n);
    if (!std::isfinite(static_cast<double>(t))) {
      res.diagnostic = "series term is not finite";
      break;
    }
    sum += t;
    abs_sum += std::abs(t);
    max_partial = std::max(max_partial, std::abs(sum));
    const long double at = std::abs(t);
    if (at >= peak) {
      peak = at;
      past_peak = false;
    } else {
      past_peak = true;
    }
    if (at <= static_cast<long double>(rel_tol) * std::abs(sum)) {
      ++small_run;
      recent = std::max(recent, at);
    } else {
      small_run = 0;
      recent = 0.0L;
    }
    if (past_peak && small_run >= 3) {
      res.converged = true;
      ++n;
      break;
    }
  }
  res.n_terms = n;
  res.n_evals = n;
  res.value_ld = sum;
  res.value = static_cast<double>(sum);
  const long double eps_ld = std::numeric_limits<long double>::epsilon();
  const long double round = 64.0L * eps_ld * abs_sum;
  res.abs_err = static_cast<double>(2.0L * recent + round) + 0.5 * kEps * std::abs(res.value);
  res.cancellation_ratio =
      sum != 0.0L ? static_cast<double>(max_partial / std::abs(sum))
                  : (max_partial == 0.0L ? 1.0 : std::numeric_limits<double>::infinity());
  res.ill_conditioned = res.cancellation_ratio > kIllConditionedRatio;
  if (!res.converged && res.diagnostic.empty()) res.diagnostic = "term budget exhausted";
  return res;
}

}  // namespace stablefp::quad
