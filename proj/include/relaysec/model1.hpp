// Gaussian relay network with an orthogonal source-to-relay link:
//
//   Y_r = a X_R + Z_1,   Y = b X_r + X_D + Z,   Var[Z_1] = Var[Z] = N
//
// with source power P split as (1 - v)P on X_R and vP on X_D, relay power
// gamma P, and correlation rho between X_r and X_D.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "relaysec/core.hpp"

namespace relaysec::model1 {

struct GaussianModel1Params {
  double a = 1.0;
  double b = 1.0;
  double gamma = 1.0;
  double p_total = 1.0;
  double noise = 1.0;

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("model1: gains must be finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("model1: gamma must be >= 0");
    if (!(p_total > 0.0) || !std::isfinite(p_total)) throw DomainError("model1: P must be > 0");
    if (!(noise > 0.0) || !std::isfinite(noise)) throw DomainError("model1: N must be > 0");
  }
};

struct Model1Split {
  double v = 0.0;
  double rho = 0.0;

  void validate() const {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("model1: v must lie in [0, 1]");
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("model1: rho must lie in [0, 1]");
  }
};

using Model1Region = RateRegion<Model1Split>;

inline RatePoint model1_point(const GaussianModel1Params& params, const Model1Split& split) {
  params.validate();
  split.validate();
  const double snr = params.p_total / params.noise;
  const auto [v, rho] = split;

  // v + b^2 gamma + 2 b rho sqrt(v gamma) rewritten as a sum of squares so
  // rounding can never push it below zero when b < 0.
  const double coherent = std::sqrt(v) + params.b * rho * std::sqrt(params.gamma);
  const double mac = coherent * coherent + params.b * params.b * params.gamma * (1.0 - rho * rho);

  const double private_snr = v * (1.0 - rho * rho) * snr;
  const double r1 = std::min(awgn_capacity(mac * snr).bits(),
                             awgn_capacity(params.a * params.a * (1.0 - v) * snr).bits() +
                                 awgn_capacity(private_snr).bits());
  const double re = std::min(awgn_capacity(private_snr).bits(), r1);
  return RatePoint{Rate{r1}, Rate{re}};
}

/// Evaluates the equivocation region on the uniform (v, rho) grid and keeps
/// the Pareto frontier. Grid points are indexed v-major.
inline Model1Region model1_region(const GaussianModel1Params& params, GridSpec grid = GridSpec{}) {
  params.validate();
  const std::size_t n = grid.resolution + 1;
  std::vector<RegionEntry<Model1Split>> pts;
  pts.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Model1Split split{grid.at(i), grid.at(j)};
      pts.push_back({model1_point(params, split), split, i * n + j});
    }
  }
  return pareto_reduce(std::move(pts));
}

struct Model1Capacity {
  Rate capacity;
  Model1Split argmax;
};

/// Largest secrecy rate (re = r1) on the grid. Accuracy is O(1/resolution);
/// ties keep the first grid point in v-major order.
inline Model1Capacity model1_secrecy_capacity(const GaussianModel1Params& params,
                                              GridSpec grid = GridSpec{}) {
  params.validate();
  const std::size_t n = grid.resolution + 1;
  Model1Capacity best{Rate{0.0}, Model1Split{0.0, 0.0}};
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Model1Split split{grid.at(i), grid.at(j)};
      const RatePoint pt = model1_point(params, split);
      if (first || pt.re > best.capacity) {
        best = {pt.re, split};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace relaysec::model1
