// Gaussian relay network with an orthogonal relay-to-destination link:
//
//   Y_D = X + Z_D,   Y_r = a X + Z_r,   Y_R = b X_r + Z_R
//
// with unit-variance independent noises, source power budget P and relay
// power P_r. The relay hosts the eavesdropper.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "relaysec/core.hpp"

namespace relaysec::model2 {

struct GaussianModel2Params {
  double a = 1.0;
  double b = 1.0;
  double p_max = 1.0;
  double p_relay = 1.0;

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("model2: gains must be finite");
    if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("model2: P must be > 0");
    if (!(p_relay > 0.0) || !std::isfinite(p_relay)) throw DomainError("model2: P_r must be > 0");
  }
};

/// Compress-and-forward at source power p with the smallest admissible
/// Wyner-Ziv quantization noise.
struct CfEvaluation {
  double p = 0.0;
  double sigma_q2 = 0.0;
  Rate r1_bound;
  Rate re_bound;
  double re_unclamped = 0.0;
};

/// Amplify-and-forward at source power p, X_r = beta Y_r.
struct AfEvaluation {
  double p = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  Rate re_bound;
  double re_unclamped = 0.0;
};

struct PowerOptimum {
  double p_star = 0.0;
  Rate re_star;
};

namespace detail {

inline void check_power(const GaussianModel2Params& params, double p) {
  params.validate();
  if (!(p >= 0.0 && p <= params.p_max))
    throw DomainError("model2: source power p=" + std::to_string(p) + " outside [0, P]");
}

inline double log2_ratio_half(double num_snr, double den_snr) {
  return 0.5 * (std::log1p(num_snr) - std::log1p(den_snr)) / std::log(2.0);
}

}  // namespace detail

/// sigma_Q^2 = ((a^2 + 1) p + 1) / (b^2 P_r (p + 1)).
inline double cf_quantization_noise(const GaussianModel2Params& params, double p) {
  if (params.b == 0.0) throw DomainError("model2: relay link absent (b = 0), CF undefined");
  return ((params.a * params.a + 1.0) * p + 1.0) / (params.b * params.b * params.p_relay * (p + 1.0));
}

/// Destination SNR under CF, p + a^2 p / (1 + sigma_Q^2). Defined for any
/// p >= 0; the power budget is not enforced here.
inline double cf_effective_snr(const GaussianModel2Params& params, double p) {
  const double sq = cf_quantization_noise(params, p);
  return p + params.a * params.a * p / (1.0 + sq);
}

inline CfEvaluation cf_rate(const GaussianModel2Params& params, double p) {
  detail::check_power(params, p);
  const double sq = cf_quantization_noise(params, p);
  const double snr = p + params.a * params.a * p / (1.0 + sq);
  const double pre = detail::log2_ratio_half(snr, params.a * params.a * p);
  return {p, sq, awgn_capacity(snr), Rate{clamp_plus(pre)}, pre};
}

inline AfEvaluation af_rate(const GaussianModel2Params& params, double p) {
  detail::check_power(params, p);
  const double a2 = params.a * params.a;
  const double beta2 = params.p_relay / (a2 * p + 1.0);
  const double gain2 = beta2 * params.b * params.b;
  const double xi = a2 * gain2 / (1.0 + gain2);
  const double pre = detail::log2_ratio_half((1.0 + xi) * p, a2 * p);
  return {p, std::sqrt(beta2), xi, Rate{clamp_plus(pre)}, pre};
}

namespace detail {

template <class Eval>
PowerOptimum grid_argmax(const GaussianModel2Params& params, GridSpec grid, Eval&& eval) {
  params.validate();
  PowerOptimum best{0.0, Rate{0.0}};
  for (std::size_t i = 0; i <= grid.resolution; ++i) {
    const double p = grid.at(i, params.p_max);
    const Rate re = eval(p);
    if (i == 0 || re > best.re_star) best = {p, re};
  }
  return best;
}

}  // namespace detail

/// Best CF secrecy rate over p in {0, P/res, ..., P}; ties go to the smaller
/// p. Accuracy is O(P/res).
inline PowerOptimum cf_optimize(const GaussianModel2Params& params, GridSpec grid = GridSpec{1024}) {
  return detail::grid_argmax(params, grid, [&](double p) { return cf_rate(params, p).re_bound; });
}

inline PowerOptimum af_optimize(const GaussianModel2Params& params, GridSpec grid = GridSpec{1024}) {
  return detail::grid_argmax(params, grid, [&](double p) { return af_rate(params, p).re_bound; });
}

/// Secrecy upper bound for independent noises:
///   min{ C(b^2 P_r) + [C(P) - C(a^2 P)]^+,  C(P / (1 + a^2 P)) }.
/// The first term is the relay-link capacity under the relay power budget.
inline Rate model2_upper_bound(const GaussianModel2Params& params) {
  params.validate();
  const double a2p = params.a * params.a * params.p_max;
  const double relay_link = awgn_capacity(params.b * params.b * params.p_relay);
  const double wiretap = clamp_plus(detail::log2_ratio_half(params.p_max, a2p));
  const double degraded = awgn_capacity(params.p_max / (1.0 + a2p));
  return Rate{std::min(relay_link + wiretap, degraded)};
}

struct PowerSweepRow {
  double p;
  Rate cf_re;
  Rate af_re;
};

inline std::vector<PowerSweepRow> power_sweep(const GaussianModel2Params& params,
                                              GridSpec grid = GridSpec{1024}) {
  params.validate();
  std::vector<PowerSweepRow> rows;
  rows.reserve(grid.resolution + 1);
  for (std::size_t i = 0; i <= grid.resolution; ++i) {
    const double p = grid.at(i, params.p_max);
    rows.push_back({p, cf_rate(params, p).re_bound, af_rate(params, p).re_bound});
  }
  return rows;
}

struct BSweepRow {
  double b;
  PowerOptimum cf;
  PowerOptimum af;
  Rate upper_bound;
};

/// One row per relay gain, sorted ascending in b. `base.b` is ignored.
inline std::vector<BSweepRow> b_sweep(GaussianModel2Params base, std::vector<double> b_values,
                                      GridSpec grid = GridSpec{1024}) {
  for (double b : b_values)
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("b_sweep: b values must be > 0");
  std::sort(b_values.begin(), b_values.end());
  std::vector<BSweepRow> rows;
  rows.reserve(b_values.size());
  for (double b : b_values) {
    base.b = b;
    rows.push_back({b, cf_optimize(base, grid), af_optimize(base, grid), model2_upper_bound(base)});
  }
  return rows;
}

}  // namespace relaysec::model2
