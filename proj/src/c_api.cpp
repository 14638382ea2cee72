// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/stablefp.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include "stablefp/checks.hpp"
#include "stablefp/densities.hpp"
#include "stablefp/mittag_leffler.hpp"
#include "stablefp/positive_stable.hpp"
#include "stablefp/samplers.hpp"
#include "stablefp/tabulated_cdf.hpp"

struct sfp_rng {
  std::uint64_t seed;
  std::uint64_t next_stream;
  stablefp::RandomStream scalar;
};

struct sfp_suite {
  std::vector<stablefp::CheckReport> reports;
  std::vector<std::string> json;
};

namespace {

using namespace stablefp;

thread_local std::string g_last_error;

sfp_status fail(sfp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

void fill(sfp_result* out, const EvalResult& r) {
  out->value = r.value;
  out->abs_err = r.abs_err;
  out->method = to_string(r.method).data();
  out->n_work = r.n_work;
}

// Runs body and maps exceptions to status codes. A NumericalFailure still
// writes its partial estimate through on_partial.
template <class Body, class Partial>
sfp_status guarded(Body&& body, Partial&& on_partial) {
  try {
    body();
    return SFP_OK;
  } catch (const DomainError& e) {
    return fail(SFP_ERR_DOMAIN, e.what());
  } catch (const NumericalFailure& e) {
    on_partial(e);
    return fail(SFP_ERR_NUMERICAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SFP_ERR_USAGE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SFP_ERR_USAGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SFP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SFP_ERR_INTERNAL, "unknown error");
  }
}

template <class Body>
sfp_status guarded(Body&& body) {
  return guarded(std::forward<Body>(body), [](const NumericalFailure&) {});
}

template <class Body>
sfp_status guarded_result(sfp_result* out, Body&& body) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  return guarded([&] { fill(out, body()); },
                 [&](const NumericalFailure& e) {
                   out->value = e.partial_value();
                   out->abs_err = e.abs_err();
                   out->method = "failed";
                   out->n_work = 0;
                 });
}

}  // namespace

extern "C" {

const char* sfp_last_error(void) { return g_last_error.c_str(); }

const char* sfp_version(void) { return "0.1.0"; }

sfp_status sfp_mlf(double order, double x, double tol, sfp_result* out) {
  return guarded_result(out, [&] { return eval_mlf(MLOrder(order), x, tol); });
}

sfp_status sfp_mlf_derivative(double order, double x, double tol, sfp_result* out) {
  return guarded_result(out, [&] { return eval_mlf_derivative(MLOrder(order), x, tol); });
}

sfp_status sfp_D(double alpha, double x, double tol, sfp_result* out) {
  return guarded_result(out, [&] { return eval_D(alpha, x, tol); });
}

sfp_status sfp_F(double alpha, double y, double tol, sfp_result* out) {
  return guarded_result(out, [&] { return eval_F(StabilityIndex(alpha), y, tol); });
}

sfp_status sfp_D4_golden(double x, double* out) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  if (!(x >= 0.0)) return fail(SFP_ERR_DOMAIN, "D4: x must be non-negative");
  *out = eval_D4_golden(x);
  return SFP_OK;
}

sfp_status sfp_mu_density(double alpha, double t, double* out) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  return guarded([&] { *out = mu_density(StabilityIndex(alpha), t); });
}

sfp_status sfp_mlf_law_density(double order, double u, double* out) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  return guarded([&] { *out = mlf_neg_bernstein_density(MLOrder(order), u); });
}

sfp_status sfp_survival_S_tau(double alpha, double q, double x, double tol, sfp_result* out) {
  return guarded_result(out, [&] {
    if (!(q > 0.0)) throw DomainError("survival_S_tau: q must be positive");
    return survival_S_tau({q, x, StabilityIndex(alpha)}, tol);
  });
}

sfp_status sfp_wh_transform(double alpha, double q, double lambda, double* out) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  return guarded([&] {
    const StabilityIndex idx(alpha);
    idx.require_interior("wh_transform");
    *out = wh_transform(idx, q, lambda);
  });
}

namespace {

// Unknown names are a usage error at this boundary, not a domain error.
DensityName density_name(const char* name) {
  try {
    return parse_density_name(name);
  } catch (const DomainError& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace

sfp_status sfp_density(const char* name, double alpha, double t, const char* method, double tol,
                       sfp_result* out) {
  if (!name) return fail(SFP_ERR_USAGE, "null density name");
  return guarded_result(out, [&] {
    const std::string_view m = method ? std::string_view(method) : std::string_view("auto");
    return density_by_name(density_name(name), StabilityIndex(alpha), t, m, tol);
  });
}

sfp_status sfp_cdf(const char* name, double alpha, double t, sfp_result* out) {
  if (!name) return fail(SFP_ERR_USAGE, "null distribution name");
  return guarded_result(out, [&]() -> EvalResult {
    const StabilityIndex idx(alpha);
    switch (density_name(name)) {
      case DensityName::T: return cdf_T(idx, t);
      case DensityName::Tbar: return cdf_Tbar(idx, t);
      case DensityName::Ttilde: return {cdf_Ttilde(idx, t), 1e-16, Method::closed_form, 1};
      case DensityName::That1:
        idx.require_interior("cdf That1");
        return PositiveStableKernel(idx.beta()).cdf(t);
      case DensityName::T1: return cdf_T1(idx, t).total;
      case DensityName::S1: {
        const S1Cdf c = cdf_S1(idx, t);
        return {c.value, 1e-9, c.from_series ? Method::series : Method::convex_combination, 1};
      }
      default: throw DomainError("cdf not available for " + std::string(name));
    }
  });
}

sfp_status sfp_quantile(const char* name, double alpha, double p, double* out) {
  if (!name || !out) return fail(SFP_ERR_USAGE, "null argument");
  return guarded([&] {
    const StabilityIndex idx(alpha);
    idx.require_interior("quantile");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must be in (0, 1)");
    const DensityName d = density_name(name);
    switch (d) {
      case DensityName::Ttilde: *out = quantile_Ttilde(idx, p); return;
      case DensityName::T:
      case DensityName::Tbar:
      case DensityName::That1:
      case DensityName::T1: *out = tabulated_cdf(d, idx).quantile(p); return;
      default: throw DomainError("quantile not available for " + std::string(name));
    }
  });
}

sfp_status sfp_rng_create(uint64_t seed, uint64_t stream_id, sfp_rng** out) {
  if (!out) return fail(SFP_ERR_USAGE, "null output pointer");
  return guarded([&] { *out = new sfp_rng{seed, stream_id, RandomStream(seed, stream_id)}; });
}

void sfp_rng_destroy(sfp_rng* rng) { delete rng; }

sfp_status sfp_rng_uniform(sfp_rng* rng, double* out) {
  if (!rng || !out) return fail(SFP_ERR_USAGE, "null argument");
  *out = rng->scalar.uniform();
  return SFP_OK;
}

sfp_status sfp_rng_stream_id(const sfp_rng* rng, uint64_t* out) {
  if (!rng || !out) return fail(SFP_ERR_USAGE, "null argument");
  *out = rng->next_stream;
  return SFP_OK;
}

void sfp_sample_params_default(sfp_sample_params* p) {
  if (!p) return;
  p->alpha = 1.5;
  p->n_steps = 1024;
  p->horizon = 1.0;
  p->q = 1.0;
  p->grid_step = 1.0 / 1024.0;
  p->workers = 1;
}

sfp_status sfp_sample(sfp_rng* rng, const char* distribution, const sfp_sample_params* params,
                      size_t n, double* out, uint64_t* redrawn) {
  if (!rng || !distribution || !params || (!out && n > 0)) return fail(SFP_ERR_USAGE, "null argument");
  if (n == 0) return fail(SFP_ERR_USAGE, "sample size must be >= 1");
  return guarded([&] {
    const StabilityIndex idx(params->alpha);
    const RandomStream base(rng->seed, rng->next_stream);
    const int w = params->workers;
    const std::string_view d(distribution);
    std::atomic<std::uint64_t> rejected{0};
    SampleBatch b;
    auto simple = [&](auto draw) {
      return sample_batch(idx, std::string(d), n, base, w, draw);
    };
    if (d == "That1") {
      b = simple([&](RandomStream& r) { return sample_That1(idx, r); });
    } else if (d == "T") {
      tabulated_cdf(DensityName::T, idx);
      b = simple([&](RandomStream& r) { return sample_T(idx, r); });
    } else if (d == "Tbar") {
      tabulated_cdf(DensityName::Tbar, idx);
      b = simple([&](RandomStream& r) { return sample_Tbar(idx, r); });
    } else if (d == "Ttilde") {
      b = simple([&](RandomStream& r) { return sample_Ttilde(idx, r); });
    } else if (d == "T1_product") {
      b = sample_product_T_That1(idx, n, base, w);
    } else if (d == "X1") {
      b = simple([&](RandomStream& r) { return sample_X1(idx, r); });
    } else if (d == "X1_negative") {
      b = simple([&](RandomStream& r) {
        std::uint64_t k = 0;
        const double x = sample_X1_conditioned_negative(idx, r, &k);
        rejected += k;
        return x;
      });
    } else if (d == "S1_conditioned") {
      b = sample_S1_via_conditioned(idx, n, base, w);
    } else if (d == "sup_X" || d == "sup_Xhat") {
      const PathGridSpec grid(params->horizon, params->n_steps);
      const PathSide side = d == "sup_X" ? PathSide::X : PathSide::Xhat;
      b = simple([&](RandomStream& r) { return simulate_supremum(idx, grid, r, side); });
    } else if (d == "sup_exp_time") {
      b = simple([&](RandomStream& r) {
        return sample_sup_at_exp_time(idx, params->q, params->grid_step, r);
      });
    } else if (d == "T1_grid") {
      b = estimate_T1_samples(idx, PathGridSpec(params->horizon, params->n_steps), n, base, w);
    } else {
      throw std::invalid_argument("unknown distribution: " + std::string(d));
    }
    std::copy(b.values.begin(), b.values.end(), out);
    if (redrawn) *redrawn = b.redrawn + rejected.load();
    ++rng->next_stream;
  });
}

sfp_status sfp_suite_run(const char* names, const double* alphas, size_t n_alphas, uint64_t seed,
                         int workers, const char* overrides_json, sfp_suite** out) {
  if (!names || !out || (!alphas && n_alphas > 0)) return fail(SFP_ERR_USAGE, "null argument");
  return guarded([&] {
    std::vector<std::string> list;
    std::string cur;
    for (const char* c = names;; ++c) {
      if (*c == ',' || *c == '\0') {
        if (!cur.empty()) list.push_back(cur);
        cur.clear();
        if (*c == '\0') break;
      } else if (*c != ' ') {
        cur.push_back(*c);
      }
    }
    if (list.empty()) throw std::invalid_argument("no check names given");
    SuiteOptions o;
    o.seed = seed;
    o.workers = workers;
    if (overrides_json && *overrides_json) {
      const auto j = nlohmann::json::parse(overrides_json);
      if (!j.is_object()) throw std::invalid_argument("overrides must be a JSON object");
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw std::invalid_argument("override " + k + " must be a number");
        o.overrides[k] = v.get<double>();
      }
    }
    for (std::size_t i = 0; i < n_alphas; ++i) {
      const double a = alphas[i];
      if (!(a > 1.0 && a <= 2.0) && a != 4.0) throw DomainError("alpha must be in (1, 2]");
    }
    auto suite = std::make_unique<sfp_suite>();
    suite->reports =
        run_suite(list, std::vector<double>(alphas, alphas + n_alphas), o);
    for (const CheckReport& r : suite->reports) suite->json.push_back(to_json(r).dump());
    *out = suite.release();
  });
}

void sfp_suite_destroy(sfp_suite* suite) { delete suite; }

sfp_status sfp_suite_size(const sfp_suite* suite, size_t* out) {
  if (!suite || !out) return fail(SFP_ERR_USAGE, "null argument");
  *out = suite->reports.size();
  return SFP_OK;
}

sfp_status sfp_suite_report(const sfp_suite* suite, size_t i, sfp_report_info* out) {
  if (!suite || !out) return fail(SFP_ERR_USAGE, "null argument");
  if (i >= suite->reports.size()) return fail(SFP_ERR_USAGE, "report index out of range");
  const CheckReport& r = suite->reports[i];
  out->name = r.name.c_str();
  out->alpha = r.alpha;
  out->statistic = r.statistic;
  out->threshold = r.threshold;
  out->passed = r.passed ? 1 : 0;
  return SFP_OK;
}

sfp_status sfp_suite_report_json(const sfp_suite* suite, size_t i, const char** out) {
  if (!suite || !out) return fail(SFP_ERR_USAGE, "null argument");
  if (i >= suite->json.size()) return fail(SFP_ERR_USAGE, "report index out of range");
  *out = suite->json[i].c_str();
  return SFP_OK;
}

const char* sfp_check_names(void) {
  static const std::string joined = [] {
    std::string s;
    for (const std::string& n : check_names()) s += (s.empty() ? "" : ",") + n;
    return s;
  }();
  return joined.c_str();
}

}  // extern "C"
