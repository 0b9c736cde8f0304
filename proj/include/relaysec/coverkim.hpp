// Gaussian Cover-Kim deterministic relay channel:
//
//   Y_D = X + Z,   Y_r = alpha X - Z
//
// (perfectly anticorrelated noises) plus a noiseless relay-to-destination
// link of rate R_0.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "relaysec/core.hpp"

namespace relaysec::coverkim {

struct CoverKimParams {
  double alpha = 1.0;
  double p_max = 1.0;
  double r0 = 0.0;

  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("coverkim: alpha must be >= 0");
    if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("coverkim: P must be > 0");
    if (!(r0 >= 0.0) || !std::isfinite(r0)) throw DomainError("coverkim: R_0 must be >= 0");
  }

  // C(P) - C(alpha^2 P)
  double direct_advantage() const {
    return 0.5 * (std::log1p(p_max) - std::log1p(alpha * alpha * p_max)) / std::log(2.0);
  }
};

/// [R_0 + C(P) - C(alpha^2 P)]^+
inline Rate ck_achievable(const CoverKimParams& params) {
  params.validate();
  return Rate{clamp_plus(params.r0 + params.direct_advantage())};
}

/// R_0 + [C(P) - C(alpha^2 P)]^+
inline Rate ck_upper(const CoverKimParams& params) {
  params.validate();
  return Rate{params.r0 + clamp_plus(params.direct_advantage())};
}

/// Secrecy capacity where it is known (alpha <= 1); nullopt otherwise.
inline std::optional<Rate> ck_capacity(const CoverKimParams& params) {
  params.validate();
  if (params.alpha > 1.0) return std::nullopt;
  return Rate{params.r0 + params.direct_advantage()};
}

struct CurveRow {
  double alpha;
  Rate achievable;
  Rate upper;
};

/// `base.alpha` is ignored; rows follow the order of `alpha_values`.
inline std::vector<CurveRow> ck_curve(CoverKimParams base, const std::vector<double>& alpha_values) {
  std::vector<CurveRow> rows;
  rows.reserve(alpha_values.size());
  for (double alpha : alpha_values) {
    base.alpha = alpha;
    rows.push_back({alpha, ck_achievable(base), ck_upper(base)});
  }
  return rows;
}

}  // namespace relaysec::coverkim
