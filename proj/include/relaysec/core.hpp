// Scalar information-theoretic primitives and rate-region types shared by
// every analysis module. All rates are in bits per channel use.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaysec {

// ── Error types ───────────────────────────────────────────────────────────────

/// Numeric precondition violated (negative power, b = 0 for CF, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Shapes or alphabet sizes do not agree.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed the evaluation budget.
struct SearchSpaceError : std::length_error {
  SearchSpaceError(const std::string& what, double count)
      : std::length_error(what), evaluations(count) {}
  double evaluations;
};

// ── Rate ──────────────────────────────────────────────────────────────────────

/// Nonnegative, finite rate in bits per channel use.
class Rate {
 public:
  constexpr Rate() = default;
  explicit Rate(double bits) : bits_(bits) {
    if (!std::isfinite(bits) || bits < 0.0)
      throw DomainError("rate must be finite and nonnegative, got " + std::to_string(bits));
  }

  constexpr double bits() const { return bits_; }
  constexpr operator double() const { return bits_; }  // NOLINT(google-explicit-constructor)

 private:
  double bits_ = 0.0;
};

/// A reliable-rate / equivocation-rate pair.
struct RatePoint {
  Rate r1;
  Rate re;

  /// Clamps re to r1, which every emitted region point must satisfy.
  static RatePoint clamped(double r1, double re) {
    const Rate r{std::max(r1, 0.0)};
    return {r, Rate{std::clamp(re, 0.0, r.bits())}};
  }
};

struct GridSpec {
  std::size_t resolution = 256;

  GridSpec() = default;
  explicit GridSpec(std::size_t res) : resolution(res) {
    if (res < 2) throw DomainError("grid resolution must be >= 2");
  }

  /// i-th point of the uniform grid {0, 1/res, ..., 1} scaled by `span`.
  double at(std::size_t i, double span = 1.0) const {
    return span * static_cast<double>(i) / static_cast<double>(resolution);
  }
};

// ── Scalar primitives ─────────────────────────────────────────────────────────

inline constexpr double kDominanceTol = 1e-12;

/// C(x) = 1/2 log2(1 + x).
inline Rate awgn_capacity(double snr) {
  if (!std::isfinite(snr) || snr < 0.0)
    throw DomainError("awgn_capacity: snr must be finite and >= 0, got " + std::to_string(snr));
  return Rate{0.5 * std::log1p(snr) / std::log(2.0)};
}

/// [x]^+
inline double clamp_plus(double x) {
  if (!std::isfinite(x)) throw DomainError("clamp_plus: non-finite input");
  return x > 0.0 ? x : 0.0;
}

// ── Rate regions ──────────────────────────────────────────────────────────────

/// One region point together with the parameters that produced it and its
/// generation index (used as the deterministic tie-break).
template <class Provenance>
struct RegionEntry {
  RatePoint point;
  Provenance provenance{};
  std::size_t index = 0;
};

/// Pareto-nondominated set of rate points, ascending in r1 (ties: smaller re
/// first).
template <class Provenance>
struct RateRegion {
  std::vector<RegionEntry<Provenance>> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  double max_re() const {
    double best = 0.0;
    for (const auto& e : entries) best = std::max(best, e.point.re.bits());
    return best;
  }

  /// True when some point of this region is >= q in both coordinates (within tol).
  bool covers(const RatePoint& q, double tol = 1e-12) const {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
      return e.point.r1 >= q.r1 - tol && e.point.re >= q.re - tol;
    });
  }
};

namespace detail {

// q is eliminated by p: p is at least as good in both coordinates (within
// tol) and either strictly better somewhere or an earlier tie.
template <class P>
bool eliminates(const RegionEntry<P>& p, const RegionEntry<P>& q, double tol) {
  if (p.point.r1 < q.point.r1 - tol || p.point.re < q.point.re - tol) return false;
  if (p.point.r1 > q.point.r1 + tol || p.point.re > q.point.re + tol) return true;
  return p.index < q.index;
}

}  // namespace detail

/// Removes dominated points. Idempotent; the result does not depend on the
/// input order, only on the entries' generation indices.
template <class Provenance>
RateRegion<Provenance> pareto_reduce(std::vector<RegionEntry<Provenance>> points,
                                     double tol = kDominanceTol) {
  // Sweep in r1-descending order and drop only points that are beaten in re
  // by more than tol (or exact repeats of an earlier point). What survives is
  // a small candidate set for the quadratic tolerance pass.
  std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) {
    if (x.point.r1 != y.point.r1) return x.point.r1 > y.point.r1;
    if (x.point.re != y.point.re) return x.point.re > y.point.re;
    return x.index < y.index;
  });
  std::vector<RegionEntry<Provenance>> frontier;
  double best_re = -1.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& e = points[k];
    if (k > 0 && e.point.r1 == points[k - 1].point.r1 && e.point.re == points[k - 1].point.re)
      continue;
    if (e.point.re < best_re - tol) continue;
    best_re = std::max(best_re, e.point.re.bits());
    frontier.push_back(e);
  }

  RateRegion<Provenance> region;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < frontier.size() && !dominated; ++j)
      dominated = j != i && detail::eliminates(frontier[j], frontier[i], tol);
    if (!dominated) region.entries.push_back(frontier[i]);
  }
  std::sort(region.entries.begin(), region.entries.end(), [](const auto& x, const auto& y) {
    if (x.point.r1 != y.point.r1) return x.point.r1 < y.point.r1;
    if (x.point.re != y.point.re) return x.point.re < y.point.re;
    return x.index < y.index;
  });
  return region;
}

}  // namespace relaysec
