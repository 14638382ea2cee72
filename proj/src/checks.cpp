// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/checks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stablefp/densities.hpp"
#include "stablefp/mittag_leffler.hpp"
#include "stablefp/quadrature.hpp"
#include "stablefp/tabulated_cdf.hpp"

namespace stablefp {
namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  }
  return v;
}

CheckReport make_report(std::string name, double alpha, double statistic, Json details) {
  CheckReport r;
  r.name = std::move(name);
  r.alpha = alpha;
  r.statistic = std::isnan(statistic) ? std::numeric_limits<double>::infinity() : statistic;
  r.threshold = 1.0;
  r.passed = r.statistic <= r.threshold;
  r.details = std::move(details);
  r.details["statistic_meaning"] = "largest component residual divided by its tolerance";
  return r;
}

// Mean and standard error of fn over n draws, accumulated per block so that
// the reduction order is fixed.
struct Moments {
  double mean;
  double stderr_;
};

std::vector<Moments> mc_means(std::size_t n, const RandomStream& base, int workers, std::size_t k,
                              const std::function<void(RandomStream&, double*)>& draw) {
  const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<double> s1(n_blocks * k, 0.0), s2(n_blocks * k, 0.0);
  for_each_block(n, workers, [&](std::size_t b, std::size_t begin, std::size_t end) {
    RandomStream rng = base.substream(b);
    std::vector<double> v(k);
    for (std::size_t i = begin; i < end; ++i) {
      draw(rng, v.data());
      for (std::size_t j = 0; j < k; ++j) {
        s1[b * k + j] += v[j];
        s2[b * k + j] += v[j] * v[j];
      }
    }
  });
  std::vector<Moments> out(k);
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < k; ++j) {
    double a = 0.0, q = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      a += s1[b * k + j];
      q += s2[b * k + j];
    }
    const double mean = a / dn;
    const double var = std::max(0.0, q / dn - mean * mean) * dn / std::max(1.0, dn - 1.0);
    out[j] = {mean, std::sqrt(var / dn)};
  }
  return out;
}

Json seeds_json(const RandomStream& base) {
  return Json{{"seed", base.seed()}, {"stream_id", base.stream_id()}};
}

// Shared acceptance rule for the path-based checks: the finest grid must sit
// within rel_tol |exact| + 3 stderr, and each refinement may not move the
// estimate away from the exact value by more than 3 stderr.
double path_statistic(const std::vector<Moments>& by_level, double exact, double rel_tol,
                      Json& row) {
  Json levels = Json::array();
  double refine = 0.0;
  for (std::size_t k = 0; k < by_level.size(); ++k) {
    const double err = by_level[k].mean - exact;
    levels.push_back(Json{{"mean", by_level[k].mean}, {"stderr", by_level[k].stderr_},
                          {"error", err}});
    if (k > 0) {
      const double prev = std::abs(by_level[k - 1].mean - exact);
      const double se = std::max(by_level[k].stderr_, 1e-300);
      refine = std::max(refine, (std::abs(err) - prev) / (3.0 * se));
    }
  }
  const Moments& fine = by_level.back();
  const double allowed = rel_tol * std::abs(exact) + 3.0 * fine.stderr_;
  const double err = std::abs(fine.mean - exact);
  const double stat = allowed > 0.0 ? err / allowed : (err == 0.0 ? 0.0 : INFINITY);
  row["exact"] = exact;
  row["levels"] = std::move(levels);
  row["allowed"] = allowed;
  row["refinement_excess"] = refine;
  return std::max(stat, refine);
}

}  // namespace

double ks_statistic(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> v = sample;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("ks_statistic: cdf value outside [0, 1]");
    if (f < prev) throw DomainError("ks_statistic: cdf is not monotone on the sample");
    prev = f;
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_statistic(const SampleBatch& batch, const std::function<double(double)>& cdf) {
  return ks_statistic(batch.values, cdf);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

CheckReport check_cm(double alpha, const std::vector<double>& x_grid, int order_max, double tol) {
  Json d;
  d["x_grid"] = x_grid;
  d["order_max"] = order_max;
  d["tol"] = tol;
  if (alpha == 4.0) {
    // Closed form of D_4 from the same series; it is not even positive.
    double worst = INFINITY, at = 0.0;
    for (double x = 0.0; x <= 20.0; x += 1.0 / 64.0) {
      const double v = eval_D4_golden(x);
      if (v < worst) worst = v;
      if (v == worst) at = x;
    }
    d["method"] = "closed_form";
    d["min_value"] = worst;
    d["witness_x"] = at;
    return make_report("cm", alpha, worst < 0.0 ? 1.0 + (-worst) / tol : 0.0, d);
  }
  if (alpha == 2.0) {
    double worst = 0.0;
    for (double x : x_grid) worst = std::max(worst, std::abs(eval_D(2.0, x).value - std::exp(-x)));
    for (double x = 0.0; x <= 20.0; x += 0.125)
      worst = std::max(worst, std::abs(eval_D(2.0, x).value - std::exp(-x)));
    d["method"] = "closed_form";
    d["max_abs_diff_exp"] = worst;
    d["tol"] = 1e-12;
    return make_report("cm", alpha, worst / 1e-12, d);
  }
  const StabilityIndex idx(alpha);
  idx.require_interior("check_cm");

  // Sign of the Bernstein density.
  int negatives = 0;
  double min_mu = INFINITY;
  for (double t : logspace(1e-8, 1e8, 321)) {
    const double m = mu_density(idx, t);
    min_mu = std::min(min_mu, m);
    if (m < 0.0) ++negatives;
  }

  quad::Integrand mu;
  mu.fn = [&](double t) { return mu_density(idx, t); };
  mu.zero_exponent = alpha - 1.0;
  mu.tail = quad::Tail::power(alpha);
  mu.breakpoints = {1.0};
  quad::QuadOptions mass_opts;
  mass_opts.abs_tol = 0.01 * tol;
  const quad::QuadResult mass = quad::integrate_semi_infinite(mu, mass_opts);
  const double mass_err = std::abs(mass.value - 1.0);

  double lap_worst = 0.0;
  Json lap = Json::array();
  for (double x : x_grid) {
    // At x = 0 the transform is the mass itself.
    const quad::QuadResult l = x == 0.0 ? mass : quad::laplace_transform_numeric(mu, x, 0.01 * tol);
    const EvalResult dv = eval_D(idx, x, 1e-13);
    const double r = std::abs(l.value - dv.value);
    lap_worst = std::max(lap_worst, r);
    lap.push_back(Json{{"x", x}, {"D", dv.value}, {"method", to_string(dv.method)},
                       {"laplace_mu", l.value}, {"abs_diff", r}});
  }

  // Divided differences on the grid: (-1)^k f[x_j..x_j+k] >= 0 up to the
  // propagated evaluation error.
  std::vector<double> xs = x_grid;
  std::sort(xs.begin(), xs.end());
  std::vector<double> val(xs.size()), err(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const EvalResult e = eval_D(idx, xs[i], 1e-14);
    val[i] = e.value;
    err[i] = std::max(e.abs_err, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(e.value));
  }
  double dd_worst = 0.0;
  int dd_violations = 0;
  for (int k = 1; k <= order_max; ++k) {
    for (std::size_t j = 0; j + k < xs.size(); ++j) {
      double s = 0.0, bound = 0.0;
      for (int i = 0; i <= k; ++i) {
        double w = 1.0;
        for (int m = 0; m <= k; ++m)
          if (m != i) w /= xs[j + i] - xs[j + m];
        s += w * val[j + i];
        bound += std::abs(w) * err[j + i];
      }
      const double signed_dd = (k % 2 == 0 ? 1.0 : -1.0) * s;
      if (signed_dd < 0.0) {
        const double excess = -signed_dd / std::max(bound, 1e-300);
        dd_worst = std::max(dd_worst, excess);
        if (excess > 1.0) ++dd_violations;
      }
    }
  }

  d["min_mu"] = min_mu;
  d["negative_mu_points"] = negatives;
  d["mass"] = mass.value;
  d["mass_abs_err"] = mass_err;
  d["laplace"] = std::move(lap);
  d["laplace_max_abs_diff"] = lap_worst;
  d["divided_difference_worst_excess"] = dd_worst;
  d["divided_difference_violations"] = dd_violations;
  const double stat = std::max({mass_err / tol, lap_worst / tol, dd_worst,
                                negatives > 0 ? 1.0 + negatives : 0.0});
  return make_report("cm", alpha, stat, d);
}

double wh_transform(const StabilityIndex& idx, double q, double lambda) {
  if (!(q > 0.0) || !(lambda >= 0.0)) throw DomainError("wh_transform: need q > 0, lambda >= 0");
  const double d = lambda / std::pow(q, idx.beta()) - 1.0;
  if (d == 0.0) return idx.beta();
  return d / std::expm1(idx.alpha() * std::log1p(d));
}

CheckReport check_laplace_identities(const StabilityIndex& idx, const std::vector<double>& q_list,
                                     const std::vector<double>& lambda_grid,
                                     const std::vector<double>& y_grid, double tol) {
  idx.require_interior("check_laplace_identities");
  const double a = idx.alpha();
  double worst = 0.0;
  Json eq5 = Json::array(), wh = Json::array(), eq7 = Json::array();

  for (double q : q_list) {
    const double phi = std::pow(q, idx.beta());
    for (double lam : lambda_grid) {
      if (lam <= phi * (1.0 + 1e-3)) {
        eq5.push_back(Json{{"q", q}, {"lambda", lam}, {"skipped", "lambda <= q^(1/alpha)"}});
        continue;
      }
      quad::Integrand f;
      f.fn = [&](double x) {
        const double e = eval_mlf(MLOrder(a), q * std::pow(x, a), 1e-13).value;
        return e * std::exp(-lam * x);
      };
      f.tail = quad::Tail::exponential(lam - phi);
      f.breakpoints = {1.0 / (lam - phi)};
      const double rhs = std::pow(lam, a - 1.0) / (std::pow(lam, a) - q);
      quad::QuadOptions o;
      o.abs_tol = 1e-300;
      o.rel_tol = 0.01 * tol;
      const quad::QuadResult lhs = quad::integrate_semi_infinite(f, o);
      const double r = std::abs(lhs.value - rhs) / std::abs(rhs);
      worst = std::max(worst, r / tol);
      eq5.push_back(Json{{"q", q}, {"lambda", lam}, {"lhs", lhs.value}, {"rhs", rhs},
                         {"rel_residual", r}});
    }
  }

  // E[exp(-lambda S_tau)] = 1 - lambda int exp(-lambda x) P[S_tau >= x] dx.
  for (double q : q_list) {
    std::vector<double> lams = lambda_grid;
    lams.push_back(std::pow(q, idx.beta()));
    for (double lam : lams) {
      quad::Integrand s;
      s.fn = [&](double x) { return survival_S_tau({q, x, idx}, 1e-12).value; };
      s.tail = quad::Tail::power(a);
      s.breakpoints = {1.0, kDSwitch / std::pow(q, idx.beta())};
      const quad::QuadResult l = quad::laplace_transform_numeric(s, lam, 1e-3 * tol);
      const double lhs = 1.0 - lam * l.value;
      const double rhs = wh_transform(idx, q, lam);
      const double r = std::abs(lhs - rhs);
      const bool finite = std::isfinite(lhs) && std::isfinite(rhs);
      worst = std::max(worst, finite ? r / tol : INFINITY);
      wh.push_back(Json{{"q", q}, {"lambda", lam}, {"lhs", lhs}, {"rhs", rhs}, {"abs_residual", r},
                        {"removable_point", lam == lams.back()}});
    }
  }

  // E[exp(-y T_1)] = F_alpha(y), with the product form of the density.
  for (double y : y_grid) {
    quad::Integrand f;
    f.fn = [&](double t) { return density_T1(idx, t, T1Method::product, 1e-9).value; };
    f.tail = quad::Tail::power(2.0 - idx.beta());
    f.breakpoints = {0.1, 1.0};
    const quad::QuadResult lhs = quad::laplace_transform_numeric(f, y, 0.01 * tol);
    const double rhs = eval_F(idx, y, 1e-13).value;
    const double r = std::abs(lhs.value - rhs);
    worst = std::max(worst, r / tol);
    eq7.push_back(Json{{"y", y}, {"lhs", lhs.value}, {"rhs", rhs}, {"abs_residual", r},
                       {"density_method", "product"}, {"n_evals", lhs.n_evals}});
  }

  Json d;
  d["tol"] = tol;
  d["mlf_laplace"] = std::move(eq5);
  d["sup_exp_time_laplace"] = std::move(wh);
  d["first_passage_laplace"] = std::move(eq7);
  return make_report("laplace", a, worst, d);
}

CheckReport check_thm3(const StabilityIndex& idx, const std::vector<double>& t_grid, std::size_t n,
                       const RandomStream& base, double tol, int workers) {
  idx.require_interior("check_thm3");
  Json pts = Json::array();
  double det = 0.0;
  for (double t : t_grid) {
    const EvalResult s = density_T1(idx, t, T1Method::series, 1e-13);
    const EvalResult p = density_T1(idx, t, T1Method::product, 1e-11);
    const double r = std::abs(s.value - p.value) / p.value;
    det = std::max(det, r);
    pts.push_back(Json{{"t", t}, {"series", s.value}, {"product", p.value}, {"rel_diff", r}});
  }
  Json d;
  d["tol"] = tol;
  d["pointwise"] = std::move(pts);
  d["max_rel_diff"] = det;
  double stat = det / tol;
  if (n > 0) {
    const SampleBatch b = sample_product_T_That1(idx, n, base, workers);
    const TabulatedCdf& cdf = tabulated_cdf(DensityName::T1, idx);
    const double ks = ks_statistic(b, [&](double x) { return cdf.cdf(x); });
    const double crit = kKsCritical01 / std::sqrt(static_cast<double>(n));
    d["mc"] = Json{{"n", n}, {"rng", seeds_json(base)}, {"ks", ks}, {"critical_1pct", crit},
                   {"reference", "tabulated T1 cdf"}};
    stat = std::max(stat, ks / crit);
  }
  return make_report("thm3", idx.alpha(), stat, d);
}

EvalResult corollary4_integral(const StabilityIndex& idx, double x, double tol) {
  idx.require_interior("corollary4_integral");
  if (!(x >= 0.0)) throw DomainError("corollary4_integral: x must be non-negative");
  if (x == 0.0) return {1.0, 0.0, Method::product_quadrature, 1};
  const double a = idx.alpha();
  const MLOrder order(idx.beta());
  quad::Integrand ft;
  ft.fn = [&](double s) { return density_T(idx, s); };
  ft.tail = quad::Tail::power(2.0 - idx.beta());
  ft.breakpoints = {1.0};
  std::int64_t evals = 0;
  double inner_err = 0.0;
  quad::Integrand outer;
  outer.fn = [&](double u) {
    const double m = mlf_neg_bernstein_density(order, u);
    if (m == 0.0) return 0.0;
    const quad::QuadResult l = quad::laplace_transform_numeric(ft, std::pow(x / u, a), 0.1 * tol);
    evals += l.n_evals;
    inner_err = std::max(inner_err, l.abs_err);
    return m * l.value;
  };
  outer.tail = quad::Tail::exponential(1.0);
  outer.breakpoints = {0.25, 0.5, 1.0, 2.0, 4.0};
  const quad::QuadResult r = quad::integrate_semi_infinite(outer, 0.5 * tol);
  if (!r.converged) throw NumericalFailure("corollary4_integral: " + r.diagnostic, r.value, r.abs_err);
  return {r.value, r.abs_err + inner_err, Method::product_quadrature, evals + r.n_evals};
}

CheckReport check_corollary4(const StabilityIndex& idx, const std::vector<double>& x_list,
                             double tol) {
  Json pts = Json::array();
  double worst = 0.0;
  for (double x : x_list) {
    const EvalResult lhs = corollary4_integral(idx, x, 0.01 * tol);
    const EvalResult rhs = eval_D(idx, x, 1e-13);
    const double r = std::abs(lhs.value - rhs.value);
    worst = std::max(worst, r);
    pts.push_back(Json{{"x", x}, {"double_integral", lhs.value}, {"D", rhs.value},
                       {"abs_diff", r}, {"n_evals", lhs.n_work}});
  }
  Json d;
  d["tol"] = tol;
  d["points"] = std::move(pts);
  return make_report("corollary4", idx.alpha(), worst / tol, d);
}

CheckReport check_corollary5(const StabilityIndex& idx, std::size_t n,
                             const std::vector<std::uint64_t>& seeds, int workers) {
  idx.require_interior("check_corollary5");
  const double crit = kKsCritical01 / std::sqrt(static_cast<double>(n));
  Json runs = Json::array();
  double stat = 0.0;
  std::vector<double> rate, rate_se;
  bool positive = true;
  for (std::uint64_t seed : seeds) {
    const RandomStream base(seed, 5);
    const SampleBatch b = sample_S1_via_conditioned(idx, n, base, workers);
    for (double v : b.values) positive = positive && v > 0.0;
    const double ks = ks_statistic(b, [&](double x) { return cdf_S1(idx, x).value; });
    const double tries = static_cast<double>(n + b.redrawn);
    const double p = static_cast<double>(n) / tries;
    rate.push_back(p);
    rate_se.push_back(std::sqrt(p * (1.0 - p) / tries));
    stat = std::max(stat, ks / crit);
    runs.push_back(Json{{"rng", seeds_json(base)}, {"ks", ks}, {"acceptance_rate", p},
                        {"acceptance_stderr", rate_se.back()}});
  }
  // Acceptance rates must agree across seeds.
  double spread = 0.0;
  for (std::size_t i = 0; i < rate.size(); ++i)
    for (std::size_t j = i + 1; j < rate.size(); ++j)
      spread = std::max(spread, std::abs(rate[i] - rate[j]) /
                                    (3.0 * std::hypot(rate_se[i], rate_se[j])));
  Json d;
  d["n"] = n;
  d["critical_1pct"] = crit;
  d["runs"] = std::move(runs);
  d["acceptance_spread"] = spread;
  d["all_positive"] = positive;
  d["reference"] = "S1 cdf: series below the switch point, T1 table above";
  return make_report("corollary5", idx.alpha(), std::max({stat, spread, positive ? 0.0 : INFINITY}),
                     d);
}

double tail_constant_exact(double alpha) {
  return 1.0 / (std::tgamma(alpha) * std::tgamma(1.0 / alpha));
}

CheckReport estimate_tail_constant(const StabilityIndex& idx, const std::vector<double>& t_probes,
                                   TailConstant* out, double tol) {
  if (t_probes.empty()) throw DomainError("estimate_tail_constant: no probes");
  const double a = idx.alpha();
  const double kappa = tail_constant_exact(a);
  std::vector<double> probes = t_probes;
  std::sort(probes.begin(), probes.end());
  Json rows = Json::array();
  std::vector<double> errs;
  double last = 0.0;
  for (double t : probes) {
    const MixtureProbability s = survival_T1(idx, t);
    last = std::pow(t, 1.0 - idx.beta()) * s.total.value;
    errs.push_back(std::abs(last / kappa - 1.0));
    Json row{{"t", t}, {"scaled_survival", last}, {"rel_err", errs.back()}};
    if (!idx.is_gaussian()) row["h_share"] = s.h_part / s.total.value;
    rows.push_back(std::move(row));
  }
  bool trending = true;
  for (std::size_t i = 1; i < errs.size(); ++i) trending = trending && errs[i] <= errs[i - 1];
  if (out) *out = {last, a};
  Json d;
  d["kappa_exact"] = kappa;
  d["kappa_estimate"] = last;
  d["gamma_identity"] = kappa * std::tgamma(a) * std::tgamma(1.0 / a);
  d["probes"] = std::move(rows);
  d["tol"] = tol;
  d["inconclusive"] = !trending || probes.back() < 1e2;
  d["method"] = idx.is_gaussian() ? "closed_form" : "convex_combination";
  return make_report("tail_constant", a, errs.back() / tol, d);
}

CheckReport check_small_time(const StabilityIndex& idx, const std::vector<double>& t_probes,
                             double tol) {
  idx.require_interior("check_small_time");
  if (t_probes.empty()) throw DomainError("check_small_time: no probes");
  const double a = idx.alpha();
  const double target = -1.0 / std::tgamma(1.0 - a);
  const double other = -std::tgamma(a) * std::sin(kPi * a) / kPi;
  const double refl = std::abs(target - other);
  std::vector<double> probes = t_probes;
  std::sort(probes.begin(), probes.end(), std::greater<>());
  Json rows = Json::array();
  double err = 0.0;
  for (double t : probes) {
    const MixtureProbability c = cdf_T1(idx, t);
    const double ratio = c.total.value / t;
    err = std::abs(ratio / target - 1.0);
    rows.push_back(Json{{"t", t}, {"cdf_over_t", ratio}, {"rel_err", err}});
  }
  Json d;
  d["target"] = target;
  d["reflection_form"] = other;
  d["reflection_abs_diff"] = refl;
  d["probes"] = std::move(rows);
  d["tol"] = tol;
  return make_report("small_time", a, std::max(err / tol, refl / 1e-12), d);
}

CheckReport check_convex_decomposition(const StabilityIndex& idx, const std::vector<double>& t_grid,
                                       double tol) {
  idx.require_interior("check_convex_decomposition");
  const double wg = weight_g(idx), wh = weight_h(idx);
  auto g_at = [&](double t) {
    try {
      return density_g(idx, t, GMethod::integral, 1e-12);
    } catch (const NumericalFailure&) {
      return density_g(idx, t, GMethod::transform, 1e-12);
    }
  };
  Json pts = Json::array();
  double resid = 0.0;
  for (double t : t_grid) {
    const EvalResult f = density_T1(idx, t, T1Method::product, 1e-12);
    const EvalResult g = g_at(t);
    const EvalResult h = density_h(idx, t, 1e-12);
    const double mix = wg * g.value + wh * h.value;
    const double r = std::abs(f.value - mix) / f.value;
    resid = std::max(resid, r);
    pts.push_back(Json{{"t", t}, {"product", f.value}, {"mixture", mix}, {"rel_diff", r}});
  }
  double min_g = INFINITY;
  for (double t : logspace(1e-3, 1e4, 57)) min_g = std::min(min_g, g_at(t).value);

  // Each part takes over at its own end of the axis.
  auto shares = [&](const std::vector<double>& ts, bool g_side) {
    std::vector<double> out;
    for (double t : ts) {
      const double g = wg * g_at(t).value, h = wh * density_h(idx, t, 1e-12).value;
      out.push_back((g_side ? g : h) / (g + h));
    }
    return out;
  };
  const std::vector<double> t_small{1e-1, 1e-2, 1e-3}, t_large{1e1, 1e2, 1e3, 1e4};
  const std::vector<double> sg = shares(t_small, true), sh = shares(t_large, false);
  int breaks = 0;
  for (std::size_t i = 1; i < sg.size(); ++i) breaks += sg[i] < sg[i - 1];
  for (std::size_t i = 1; i < sh.size(); ++i) breaks += sh[i] < sh[i - 1];

  Json d;
  d["weights"] = Json{{"g", wg}, {"h", wh}, {"sum", wg + wh}};
  d["tol"] = tol;
  d["pointwise"] = std::move(pts);
  d["min_g"] = min_g;
  d["g_share_small_t"] = Json{{"t", t_small}, {"share", sg}};
  d["h_share_large_t"] = Json{{"t", t_large}, {"share", sh}};
  d["trend_breaks"] = breaks;
  const double stat =
      std::max({resid / tol, min_g < 0.0 ? INFINITY : 0.0, breaks > 0 ? 1.0 + breaks : 0.0});
  return make_report("convex", idx.alpha(), stat, d);
}

CheckReport check_wh_survival_mc(const StabilityIndex& idx, double q,
                                 const std::vector<double>& x_grid, std::size_t n,
                                 double grid_step, int levels, const RandomStream& base,
                                 double rel_tol, int workers) {
  idx.require_interior("check_wh_survival_mc");
  const std::size_t nx = x_grid.size(), nl = static_cast<std::size_t>(levels) + 1;
  const auto m = mc_means(n, base, workers, nx * nl, [&](RandomStream& rng, double* v) {
    const std::vector<double> sup = sample_sup_at_exp_time_nested(idx, q, grid_step, levels, rng);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t k = 0; k < nl; ++k) v[i * nl + k] = sup[k] >= x_grid[i] ? 1.0 : 0.0;
  });
  Json rows = Json::array();
  double stat = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double exact = survival_S_tau({q, x_grid[i], idx}, 1e-12).value;
    Json row{{"x", x_grid[i]}};
    stat = std::max(stat, path_statistic({m.begin() + i * nl, m.begin() + (i + 1) * nl}, exact,
                                         rel_tol, row));
    rows.push_back(std::move(row));
  }
  std::vector<double> steps;
  for (int k = 0; k <= levels; ++k) steps.push_back(std::ldexp(grid_step, levels - k));
  Json d;
  d["q"] = q;
  d["n"] = n;
  d["rng"] = seeds_json(base);
  d["grid_steps"] = steps;
  d["rel_tol"] = rel_tol;
  d["rule"] = "|mc - exact| <= rel_tol * exact + 3 stderr on the finest grid";
  d["points"] = std::move(rows);
  return make_report("wh_survival", idx.alpha(), stat, d);
}

CheckReport check_ml_law_mc(const StabilityIndex& idx, const std::vector<double>& lambdas,
                            std::size_t n, int steps_log2, int levels, const RandomStream& base,
                            double rel_tol, int workers) {
  idx.require_interior("check_ml_law_mc");
  if (levels > steps_log2) throw DomainError("check_ml_law_mc: levels exceed steps_log2");
  const std::size_t nlam = lambdas.size(), nl = static_cast<std::size_t>(levels) + 1;
  const auto m = mc_means(n, base, workers, nlam * nl, [&](RandomStream& rng, double* v) {
    const std::vector<double> sup =
        simulate_supremum_nested(idx, 1.0, steps_log2, rng, PathSide::Xhat);
    for (std::size_t i = 0; i < nlam; ++i)
      for (std::size_t k = 0; k < nl; ++k)
        v[i * nl + k] = std::exp(-lambdas[i] * sup[steps_log2 - levels + k]);
  });
  Json rows = Json::array();
  double stat = 0.0;
  for (std::size_t i = 0; i < nlam; ++i) {
    const double exact = eval_mlf(MLOrder(idx.beta()), -lambdas[i], 1e-13).value;
    Json row{{"lambda", lambdas[i]}};
    stat = std::max(stat, path_statistic({m.begin() + i * nl, m.begin() + (i + 1) * nl}, exact,
                                         rel_tol, row));
    rows.push_back(std::move(row));
  }
  std::vector<int> steps;
  for (int k = 0; k <= levels; ++k) steps.push_back(1 << (steps_log2 - levels + k));
  Json d;
  d["n"] = n;
  d["rng"] = seeds_json(base);
  d["grid_steps_per_unit_time"] = steps;
  d["rel_tol"] = rel_tol;
  d["rule"] = "|mc - exact| <= rel_tol * exact + 3 stderr on the finest grid";
  d["points"] = std::move(rows);
  return make_report("ml_law", idx.alpha(), stat, d);
}

CheckReport check_sampler_gates(const StabilityIndex& idx, std::size_t n_ks,
                                std::size_t n_laplace, const RandomStream& base, int workers) {
  idx.require_interior("check_sampler_gates");
  Json d;
  double stat = 0.0;

  const SampleBatch levy = sample_batch(idx, "positive_stable_half", n_ks, base.substream(0),
                                        workers, [](RandomStream& r) {
                                          return sample_positive_stable(0.5, r);
                                        });
  const double ks = ks_statistic(levy, [](double t) { return std::erfc(0.5 / std::sqrt(t)); });
  const double crit = kKsCritical05 / std::sqrt(static_cast<double>(n_ks));
  d["levy_ks"] = Json{{"n", n_ks}, {"ks", ks}, {"critical_5pct", crit}};
  stat = std::max(stat, ks / crit);

  Json lap = Json::array();
  auto gate = [&](const std::string& what, double beta_or_alpha, const std::vector<double>& lams,
                  const std::function<double(double)>& exact, std::uint64_t stream,
                  const std::function<double(RandomStream&)>& draw) {
    const auto m = mc_means(n_laplace, base.substream(stream), workers, lams.size(),
                            [&](RandomStream& r, double* v) {
                              const double x = draw(r);
                              for (std::size_t j = 0; j < lams.size(); ++j)
                                v[j] = std::exp(-lams[j] * x);
                            });
    for (std::size_t j = 0; j < lams.size(); ++j) {
      const double e = exact(lams[j]);
      const double z = std::abs(m[j].mean - e) / m[j].stderr_;
      stat = std::max(stat, z / 3.0);
      lap.push_back(Json{{"variable", what}, {"index", beta_or_alpha}, {"lambda", lams[j]},
                         {"mean", m[j].mean}, {"stderr", m[j].stderr_}, {"exact", e}, {"z", z}});
    }
  };
  const std::vector<double> lams{0.5, 1.0, 2.0};
  std::uint64_t stream = 1;
  for (double b : {0.5, 2.0 / 3.0, 0.8, idx.beta()}) {
    gate("positive_stable", b, lams, [b](double l) { return std::exp(-std::pow(l, b)); }, stream++,
         [b](RandomStream& r) { return sample_positive_stable(b, r); });
  }
  const double a = idx.alpha();
  gate("X1", a, {0.25, 0.5}, [a](double l) { return std::exp(std::pow(l, a)); }, stream++,
       [&](RandomStream& r) { return sample_X1(idx, r); });
  d["laplace"] = std::move(lap);
  d["n_laplace"] = n_laplace;
  d["rng"] = seeds_json(base);
  d["rule"] = "KS below the 5% critical value; |mean - exact| <= 3 stderr";
  return make_report("sampler_gates", a, stat, d);
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "cm",     "laplace",     "thm3",      "corollary4", "corollary5",   "tail_constant",
      "small_time", "convex", "wh_survival", "ml_law", "sampler_gates"};
  return names;
}

namespace {

bool is_deterministic(const std::string& name) {
  return name == "cm" || name == "laplace" || name == "corollary4" || name == "tail_constant" ||
         name == "small_time" || name == "convex";
}

std::uint64_t unit_stream(const std::string& name, double alpha) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return h ^ std::bit_cast<std::uint64_t>(alpha);
}

class Params {
 public:
  Params(const std::string& check, const std::map<std::string, double>& ov, Json& used)
      : check_(check), ov_(ov), used_(used) {}
  double get(const std::string& key, double fallback) {
    double v = fallback;
    if (auto it = ov_.find(check_ + "." + key); it != ov_.end()) {
      v = it->second;
    } else if (auto jt = ov_.find(key); jt != ov_.end()) {
      v = jt->second;
    }
    used_[key] = v;
    return v;
  }
  std::size_t count(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (!(v >= 1.0) || v > 1e12) throw std::invalid_argument(check_ + "." + key + " must be >= 1");
    return static_cast<std::size_t>(v);
  }

 private:
  const std::string& check_;
  const std::map<std::string, double>& ov_;
  Json& used_;
};

CheckReport run_one(const std::string& name, double alpha, const SuiteOptions& o) {
  Json used = Json::object();
  Params p(name, o.overrides, used);
  const RandomStream base(o.seed, unit_stream(name, alpha));
  CheckReport r;
  if (name == "cm") {
    r = check_cm(alpha, logspace(1e-2, 1e2, 25), static_cast<int>(p.get("order_max", 4)),
                 p.get("tol", 1e-8));
  } else {
    const StabilityIndex idx(alpha);
    if (name == "laplace") {
      r = check_laplace_identities(idx, {0.5, 1.0, 2.0}, {1.0, 2.0}, {0.1, 0.3, 1.0, 3.0, 10.0},
                                   p.get("tol", 1e-6));
    } else if (name == "thm3") {
      r = check_thm3(idx, {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}, p.count("n", 1e5), base,
                     p.get("tol", 1e-6), o.workers);
    } else if (name == "corollary4") {
      r = check_corollary4(idx, {0.5, 1.0, 2.0}, p.get("tol", 1e-5));
    } else if (name == "corollary5") {
      r = check_corollary5(idx, p.count("n", 1e4), {o.seed, o.seed + 1, o.seed + 2}, o.workers);
    } else if (name == "tail_constant") {
      r = estimate_tail_constant(idx, {1e2, 1e3, 1e4}, nullptr, p.get("tol", 0.01));
    } else if (name == "small_time") {
      r = check_small_time(idx, {1e-1, 1e-2, 1e-3}, p.get("tol", 0.02));
    } else if (name == "convex") {
      r = check_convex_decomposition(idx, {0.01, 0.1, 1.0, 10.0, 100.0}, p.get("tol", 1e-6));
    } else if (name == "wh_survival") {
      r = check_wh_survival_mc(idx, p.get("q", 1.0), {0.0, 0.5, 1.0, 2.0}, p.count("paths", 25000),
                               p.get("grid_step", 1.0 / 2048.0),
                               static_cast<int>(p.get("levels", 4)), base, p.get("tol", 0.02),
                               o.workers);
    } else if (name == "ml_law") {
      r = check_ml_law_mc(idx, {0.5, 1.0, 2.0}, p.count("paths", 2e4),
                          static_cast<int>(p.get("steps_log2", 10)),
                          static_cast<int>(p.get("levels", 4)), base, p.get("tol", 0.02),
                          o.workers);
    } else if (name == "sampler_gates") {
      r = check_sampler_gates(idx, p.count("n", 1e5), p.count("n_laplace", 1e6), base, o.workers);
    }
  }
  r.details["parameters"] = std::move(used);
  r.details["deterministic"] = is_deterministic(name);
  return r;
}

}  // namespace

std::vector<CheckReport> run_suite(const std::vector<std::string>& names,
                                   const std::vector<double>& alphas, const SuiteOptions& options) {
  std::vector<std::string> expanded;
  for (const std::string& n : names) {
    if (n == "all" || n == "deterministic") {
      for (const std::string& c : check_names())
        if (n == "all" || is_deterministic(c)) expanded.push_back(c);
    } else if (std::find(check_names().begin(), check_names().end(), n) != check_names().end()) {
      expanded.push_back(n);
    } else {
      throw std::invalid_argument("unknown check: " + n);
    }
  }
  std::vector<CheckReport> out;
  for (const std::string& name : expanded) {
    for (double alpha : alphas) {
      try {
        out.push_back(run_one(name, alpha, options));
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception& e) {
        CheckReport r;
        r.name = name;
        r.alpha = alpha;
        r.statistic = std::numeric_limits<double>::infinity();
        r.threshold = 1.0;
        r.passed = false;
        r.details["error"] = e.what();
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const CheckReport& report) {
  Json j;
  j["name"] = report.name;
  j["alpha"] = report.alpha;
  j["statistic"] = report.statistic;
  j["threshold"] = report.threshold;
  j["passed"] = report.passed;
  j["details"] = report.details;
  return j;
}

}  // namespace stablefp
