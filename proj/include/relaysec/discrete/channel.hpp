// Finite-alphabet relay channels p(y, y_r | x, x_r), input distributions, and
// the joint pmf p(x) p(x_r) p(y, y_r | x, x_r) p(yhat | y_r, x_r).
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "relaysec/core.hpp"
#include "relaysec/discrete/joint.hpp"

namespace relaysec::discrete {

inline constexpr double kStochasticTol = 1e-12;

namespace detail {

inline void check_rows(const std::vector<double>& table, std::size_t rows, std::size_t cols,
                       const std::string& what, double tol = kStochasticTol) {
  if (table.size() != rows * cols)
    throw StructuralError(what + ": expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(table.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = table[r * cols + c];
      if (!std::isfinite(v) || v < 0.0) throw DomainError(what + ": negative or non-finite entry");
      s += v;
    }
    if (std::abs(s - 1.0) > tol)
      throw DomainError(what + ": row " + std::to_string(r) + " sums to " + std::to_string(s));
  }
}

}  // namespace detail

/// Memoryless relay channel. `transition` is indexed
/// [((x * nxr + xr) * ny + y) * nyr + yr].
struct DiscreteRelayChannel {
  std::size_t nx = 0, nxr = 0, ny = 0, nyr = 0;
  std::vector<double> transition;

  double operator()(std::size_t y, std::size_t yr, std::size_t x, std::size_t xr) const {
    return transition[((x * nxr + xr) * ny + y) * nyr + yr];
  }

  void validate() const {
    if (nx == 0 || nxr == 0 || ny == 0 || nyr == 0) throw StructuralError("channel: empty alphabet");
    detail::check_rows(transition, nx * nxr, ny * nyr, "channel");
  }
};

/// Candidate input/quantizer distributions. `quantizer` is indexed
/// [(yr * nxr + xr) * nyhat + yhat].
struct DistributionTriple {
  std::vector<double> px;
  std::vector<double> pxr;
  std::size_t nyhat = 1;
  std::vector<double> quantizer;

  void validate(const DiscreteRelayChannel& ch) const {
    detail::check_rows(px, 1, ch.nx, "p(x)");
    detail::check_rows(pxr, 1, ch.nxr, "p(x_r)");
    if (nyhat == 0) throw StructuralError("quantizer: empty output alphabet");
    detail::check_rows(quantizer, ch.nyr * ch.nxr, nyhat, "p(yhat | y_r, x_r)");
  }

  /// Quantizer that outputs a constant symbol: no compression at all.
  static std::vector<double> constant_quantizer(const DiscreteRelayChannel& ch) {
    return std::vector<double>(ch.nyr * ch.nxr, 1.0);
  }

  /// yhat = y_r.
  static std::vector<double> identity_quantizer(const DiscreteRelayChannel& ch) {
    std::vector<double> q(ch.nyr * ch.nxr * ch.nyr, 0.0);
    for (std::size_t yr = 0; yr < ch.nyr; ++yr)
      for (std::size_t xr = 0; xr < ch.nxr; ++xr) q[(yr * ch.nxr + xr) * ch.nyr + yr] = 1.0;
    return q;
  }
};

/// Variable positions in the joint produced by build_joint.
enum RelayVar : std::size_t { kX = 0, kXr = 1, kY = 2, kYr = 3, kYhat = 4 };

inline JointPmf build_joint(const DiscreteRelayChannel& ch, const DistributionTriple& t) {
  ch.validate();
  t.validate(ch);
  JointPmf joint({"X", "X_r", "Y", "Y_r", "Yhat"}, {ch.nx, ch.nxr, ch.ny, ch.nyr, t.nyhat});
  auto p = joint.probabilities();
  std::size_t i = 0;
  for (std::size_t x = 0; x < ch.nx; ++x)
    for (std::size_t xr = 0; xr < ch.nxr; ++xr)
      for (std::size_t y = 0; y < ch.ny; ++y)
        for (std::size_t yr = 0; yr < ch.nyr; ++yr) {
          const double base = t.px[x] * t.pxr[xr] * ch(y, yr, x, xr);
          const double* q = &t.quantizer[(yr * ch.nxr + xr) * t.nyhat];
          for (std::size_t yh = 0; yh < t.nyhat; ++yh) p[i++] = base * q[yh];
        }
  return joint;
}

/// Composes p(x | u) (indexed [u * nx + x]) in front of the channel input.
inline DiscreteRelayChannel prefix_channel(const DiscreteRelayChannel& ch,
                                           const std::vector<double>& pxu, std::size_t u_size) {
  ch.validate();
  if (u_size == 0) throw StructuralError("prefix: empty U alphabet");
  detail::check_rows(pxu, u_size, ch.nx, "p(x | u)");
  DiscreteRelayChannel out{u_size, ch.nxr, ch.ny, ch.nyr, {}};
  out.transition.assign(u_size * ch.nxr * ch.ny * ch.nyr, 0.0);
  const std::size_t slice = ch.ny * ch.nyr;
  for (std::size_t u = 0; u < u_size; ++u)
    for (std::size_t xr = 0; xr < ch.nxr; ++xr)
      for (std::size_t x = 0; x < ch.nx; ++x) {
        const double w = pxu[u * ch.nx + x];
        const double* src = &ch.transition[(x * ch.nxr + xr) * slice];
        double* dst = &out.transition[(u * ch.nxr + xr) * slice];
        for (std::size_t k = 0; k < slice; ++k) dst[k] += w * src[k];
      }
  return out;
}

// ── Orthogonal-component models ───────────────────────────────────────────────

/// Orthogonal source-to-relay link: p(y | x_D, x_r) p(y_r | x_R, x_r).
/// `to_destination` is indexed [(xd * nxr + xr) * ny + y], `to_relay`
/// [(xs * nxr + xr) * nyr + yr] where xs ranges over the relay-bound input X_R.
struct Model1DiscreteChannel {
  std::size_t nxd = 0, nxs = 0, nxr = 0, ny = 0, nyr = 0;
  std::vector<double> to_destination;
  std::vector<double> to_relay;

  void validate() const {
    detail::check_rows(to_destination, nxd * nxr, ny, "p(y | x_D, x_r)");
    detail::check_rows(to_relay, nxs * nxr, nyr, "p(y_r | x_R, x_r)");
  }
};

/// Orthogonal relay-to-destination link: p(y_D | x) p(y_r | x, x_r, y_D) p(y_R | x_r).
struct Model2DiscreteChannel {
  std::size_t nx = 0, nxr = 0, nyd = 0, nyrd = 0, nyr = 0;
  std::vector<double> direct;     // [x * nyd + yd]
  std::vector<double> to_relay;   // [((x * nxr + xr) * nyd + yd) * nyr + yr]
  std::vector<double> relay_link; // [xr * nyrd + yR]

  void validate() const {
    detail::check_rows(direct, nx, nyd, "p(y_D | x)");
    detail::check_rows(to_relay, nx * nxr * nyd, nyr, "p(y_r | x, x_r, y_D)");
    detail::check_rows(relay_link, nxr, nyrd, "p(y_R | x_r)");
  }

  /// The same channel seen as a general relay channel with Y = (Y_D, Y_R),
  /// y = yd * nyrd + yR.
  DiscreteRelayChannel compose() const {
    validate();
    DiscreteRelayChannel ch{nx, nxr, nyd * nyrd, nyr, {}};
    ch.transition.resize(nx * nxr * nyd * nyrd * nyr);
    std::size_t i = 0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t xr = 0; xr < nxr; ++xr)
        for (std::size_t yd = 0; yd < nyd; ++yd)
          for (std::size_t yR = 0; yR < nyrd; ++yR)
            for (std::size_t yr = 0; yr < nyr; ++yr)
              ch.transition[i++] = direct[x * nyd + yd] *
                                   to_relay[((x * nxr + xr) * nyd + yd) * nyr + yr] *
                                   relay_link[xr * nyrd + yR];
    return ch;
  }
};

}  // namespace relaysec::discrete
