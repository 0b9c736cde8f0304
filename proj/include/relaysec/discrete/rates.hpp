// Rate expressions for the relay channel with a co-located eavesdropper,
// evaluated exactly on finite alphabets:
//
//   general channel, compress-and-forward:
//     R_1 <= I(X; Y Yhat | X_r)
//     R_e <= [I(X; Y Yhat | X_r) - I(X; Y_r | X_r)]^+
//     subject to I(X_r; Y) >= I(Yhat; Y_r | Y X_r)
//
//   orthogonal source-to-relay link (equivocation capacity region):
//     R_1 <= min{ I(X_D X_r; Y), I(X_R; Y_r | X_r) + I(X_D; Y | X_r) }
//     R_e <= min{ I(X_D; Y | X_r), R_1 }
//
//   orthogonal relay-to-destination link, compress-and-forward:
//     R_1 <= I(X; Y_D Yhat | X_r Y_R)
//     R_e <= [I(X; Y_D Yhat | X_r Y_R) - I(X; Y_r | X_r)]^+
//     subject to I(X_r; Y_R) >= I(Yhat; Y_r | Y_D Y_R X_r)
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaysec/core.hpp"
#include "relaysec/discrete/channel.hpp"
#include "relaysec/discrete/joint.hpp"
#include "relaysec/discrete/simplex.hpp"

namespace relaysec::discrete {

/// Slack on the compression-rate constraint. A constant quantizer (no
/// compression) makes both sides zero and must stay admissible.
inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kMaxSearchEvaluations = 1e8;

/// All information terms of one compress-and-forward evaluation.
struct CfTerms {
  double r1 = 0.0;          // I(X; Y Yhat | X_r)
  double leakage = 0.0;     // I(X; Y_r | X_r)
  double relay_link = 0.0;  // I(X_r; Y)
  double compression = 0.0; // I(Yhat; Y_r | Y X_r)

  bool feasible() const { return relay_link >= compression - kFeasibilityTol; }
  RatePoint point() const { return RatePoint::clamped(r1, clamp_plus(r1 - leakage)); }
};

inline CfTerms thm1_terms(const JointPmf& joint) {
  const VarSet x{kX}, xr{kXr}, y{kY}, yr{kYr}, yh{kYhat};
  return {mutual_info(joint, x, y | yh, xr), mutual_info(joint, x, yr, xr),
          mutual_info(joint, xr, y), mutual_info(joint, yh, yr, y | xr)};
}

inline CfTerms thm1_terms(const DiscreteRelayChannel& ch, const DistributionTriple& t) {
  return thm1_terms(build_joint(ch, t));
}

/// Rate point for one distribution triple, or nullopt when the relay link
/// cannot carry the compression index.
inline std::optional<RatePoint> thm1_point(const DiscreteRelayChannel& ch, const DistributionTriple& t) {
  const CfTerms terms = thm1_terms(ch, t);
  if (!terms.feasible()) return std::nullopt;
  return terms.point();
}

// ── Exhaustive search ─────────────────────────────────────────────────────────

/// Mixed-radix enumeration of (p(x), p(x_r), quantizer rows) over simplex
/// grids. Index order: p(x) slowest, then p(x_r), then quantizer rows
/// (row 0 most significant), each in lexicographic simplex order.
class TripleGrid {
 public:
  TripleGrid(const DiscreteRelayChannel& ch, std::size_t resolution, std::size_t nyhat)
      : nyhat_(nyhat), rows_(ch.nyr * ch.nxr) {
    if (nyhat == 0) throw StructuralError("triple grid: empty Yhat alphabet");
    count_ = simplex_grid_size(resolution, ch.nx) * simplex_grid_size(resolution, ch.nxr) *
             std::pow(simplex_grid_size(resolution, nyhat), static_cast<double>(rows_));
    if (count_ > kMaxSearchEvaluations)
      throw SearchSpaceError("search space of " + std::to_string(count_) +
                                 " evaluations exceeds the limit of 1e8",
                             count_);
    px_ = simplex_grid(resolution, ch.nx);
    pxr_ = simplex_grid(resolution, ch.nxr);
    q_ = simplex_grid(resolution, nyhat);
  }

  double count() const { return count_; }
  std::size_t px_count() const { return px_.size(); }
  std::size_t pxr_count() const { return pxr_.size(); }
  std::size_t row_count() const { return rows_; }
  std::size_t row_choices() const { return q_.size(); }
  const std::vector<double>& px(std::size_t i) const { return px_[i]; }
  const std::vector<double>& pxr(std::size_t i) const { return pxr_[i]; }
  const std::vector<double>& row(std::size_t i) const { return q_[i]; }

  std::uint64_t quantizer_count() const {
    std::uint64_t n = 1;
    for (std::size_t r = 0; r < rows_; ++r) n *= q_.size();
    return n;
  }

  /// Reconstructs the triple that the search visited at `index`.
  DistributionTriple decode(std::uint64_t index) const {
    const std::uint64_t nq = quantizer_count();
    std::uint64_t qi = index % nq;
    index /= nq;
    const std::uint64_t ixr = index % pxr_.size();
    const std::uint64_t ix = index / pxr_.size();
    DistributionTriple t{px_.at(ix), pxr_.at(ixr), nyhat_, std::vector<double>(rows_ * nyhat_)};
    for (std::size_t r = rows_; r-- > 0;) {
      const auto& row = q_[qi % q_.size()];
      qi /= q_.size();
      std::copy(row.begin(), row.end(), t.quantizer.begin() + static_cast<std::ptrdiff_t>(r * nyhat_));
    }
    return t;
  }

 private:
  std::size_t nyhat_;
  std::size_t rows_;
  double count_ = 0.0;
  std::vector<std::vector<double>> px_, pxr_, q_;
};

using DiscreteRegion = RateRegion<std::uint64_t>;

/// Visits every triple of the grid in index order with its information terms.
/// Terms that do not involve the quantizer are computed once per (p(x), p(x_r)).
template <class Visitor>
void thm1_enumerate(const DiscreteRelayChannel& ch, const TripleGrid& grid, Visitor&& visit) {
  ch.validate();
  const std::size_t nyhat = grid.row(0).size();
  const std::size_t rows = grid.row_count();
  const std::uint64_t nq = grid.quantizer_count();
  DistributionTriple t{{}, {}, nyhat, std::vector<double>(rows * nyhat)};
  std::vector<std::size_t> digit(rows, 0);
  std::uint64_t index = 0;

  for (std::size_t ix = 0; ix < grid.px_count(); ++ix) {
    for (std::size_t ixr = 0; ixr < grid.pxr_count(); ++ixr) {
      t.px = grid.px(ix);
      t.pxr = grid.pxr(ixr);
      t.quantizer = DistributionTriple::constant_quantizer(ch);
      t.nyhat = 1;
      const JointPmf base = build_joint(ch, t);
      const double leakage = mutual_info(base, VarSet{kX}, VarSet{kYr}, VarSet{kXr});
      const double relay_link = mutual_info(base, VarSet{kXr}, VarSet{kY});
      t.nyhat = nyhat;
      t.quantizer.assign(rows * nyhat, 0.0);

      std::fill(digit.begin(), digit.end(), 0);
      for (std::uint64_t qi = 0; qi < nq; ++qi, ++index) {
        for (std::size_t r = 0; r < rows; ++r) {
          const auto& row = grid.row(digit[r]);
          std::copy(row.begin(), row.end(), t.quantizer.begin() + static_cast<std::ptrdiff_t>(r * nyhat));
        }
        const JointPmf joint = build_joint(ch, t);
        CfTerms terms;
        terms.leakage = leakage;
        terms.relay_link = relay_link;
        terms.r1 = mutual_info(joint, VarSet{kX}, VarSet{kY, kYhat}, VarSet{kXr});
        terms.compression = mutual_info(joint, VarSet{kYhat}, VarSet{kYr}, VarSet{kY, kXr});
        visit(index, terms);
        // Odometer over quantizer rows, last row fastest.
        for (std::size_t r = rows; r-- > 0;) {
          if (++digit[r] < grid.row_choices()) break;
          digit[r] = 0;
        }
      }
    }
  }
}

/// Pareto region of all feasible grid points. Provenance is the enumeration
/// index (see TripleGrid::decode).
inline DiscreteRegion thm1_search(const DiscreteRelayChannel& ch, GridSpec grid, std::size_t yhat_size) {
  const TripleGrid triples(ch, grid.resolution, yhat_size);
  constexpr std::size_t kFlushAt = 1 << 16;
  std::vector<RegionEntry<std::uint64_t>> buffer;
  DiscreteRegion region;
  auto flush = [&] {
    buffer.insert(buffer.end(), region.entries.begin(), region.entries.end());
    region = pareto_reduce(std::move(buffer));
    buffer.clear();
  };
  thm1_enumerate(ch, triples, [&](std::uint64_t index, const CfTerms& terms) {
    if (!terms.feasible()) return;
    buffer.push_back({terms.point(), index, static_cast<std::size_t>(index)});
    if (buffer.size() >= kFlushAt) flush();
  });
  flush();
  return region;
}

/// Default Yhat alphabet size |Y_r| + 1.
inline DiscreteRegion thm1_search(const DiscreteRelayChannel& ch, GridSpec grid) {
  return thm1_search(ch, grid, ch.nyr + 1);
}

// ── Orthogonal source-to-relay link ───────────────────────────────────────────

/// p_xd_given_xr is indexed [xr * nxd + xd], p_xs_given_xr [xr * nxs + xs].
inline JointPmf build_model1_joint(const Model1DiscreteChannel& ch, const std::vector<double>& p_xr,
                                   const std::vector<double>& p_xd_given_xr,
                                   const std::vector<double>& p_xs_given_xr) {
  ch.validate();
  detail::check_rows(p_xr, 1, ch.nxr, "p(x_r)");
  detail::check_rows(p_xd_given_xr, ch.nxr, ch.nxd, "p(x_D | x_r)");
  detail::check_rows(p_xs_given_xr, ch.nxr, ch.nxs, "p(x_R | x_r)");
  JointPmf joint({"X_r", "X_D", "X_R", "Y", "Y_r"}, {ch.nxr, ch.nxd, ch.nxs, ch.ny, ch.nyr});
  for (std::size_t xr = 0; xr < ch.nxr; ++xr)
    for (std::size_t xd = 0; xd < ch.nxd; ++xd)
      for (std::size_t xs = 0; xs < ch.nxs; ++xs)
        for (std::size_t y = 0; y < ch.ny; ++y)
          for (std::size_t yr = 0; yr < ch.nyr; ++yr)
            joint({xr, xd, xs, y, yr}) = p_xr[xr] * p_xd_given_xr[xr * ch.nxd + xd] *
                                         p_xs_given_xr[xr * ch.nxs + xs] *
                                         ch.to_destination[(xd * ch.nxr + xr) * ch.ny + y] *
                                         ch.to_relay[(xs * ch.nxr + xr) * ch.nyr + yr];
  return joint;
}

inline RatePoint thm2_point(const Model1DiscreteChannel& ch, const std::vector<double>& p_xr,
                            const std::vector<double>& p_xd_given_xr,
                            const std::vector<double>& p_xs_given_xr) {
  const JointPmf j = build_model1_joint(ch, p_xr, p_xd_given_xr, p_xs_given_xr);
  const VarSet xr{0}, xd{1}, xs{2}, y{3}, yr{4};
  const double private_rate = mutual_info(j, xd, y, xr);
  const double r1 = std::min(mutual_info(j, xd | xr, y), mutual_info(j, xs, yr, xr) + private_rate);
  return RatePoint::clamped(r1, std::min(private_rate, r1));
}

// ── Orthogonal relay-to-destination link ──────────────────────────────────────

inline constexpr double kFactorizationTol = 1e-9;

/// Checks that a composite channel with Y = (Y_D, Y_R), y = yd * nyrd + yR,
/// factorizes as p(y_D | x) p(y_r | x, x_r, y_D) p(y_R | x_r). Throws
/// DomainError("not a Model 2 channel ...") otherwise.
inline void check_model2_factorization(const DiscreteRelayChannel& ch, std::size_t nyd, std::size_t nyrd) {
  ch.validate();
  if (nyd * nyrd != ch.ny) throw StructuralError("model 2: |Y_D| * |Y_R| must equal |Y|");
  auto fail = [](const std::string& why) { throw DomainError("not a Model 2 channel: " + why); };
  auto t = [&](std::size_t x, std::size_t xr, std::size_t yd, std::size_t yR, std::size_t yr) {
    return ch(yd * nyrd + yR, yr, x, xr);
  };
  for (std::size_t x = 0; x < ch.nx; ++x) {
    for (std::size_t xr = 0; xr < ch.nxr; ++xr) {
      std::vector<double> pyd(nyd, 0.0), pyR(nyrd, 0.0), pyd_yr(nyd * ch.nyr, 0.0);
      for (std::size_t yd = 0; yd < nyd; ++yd)
        for (std::size_t yR = 0; yR < nyrd; ++yR)
          for (std::size_t yr = 0; yr < ch.nyr; ++yr) {
            const double v = t(x, xr, yd, yR, yr);
            pyd[yd] += v;
            pyR[yR] += v;
            pyd_yr[yd * ch.nyr + yr] += v;
          }
      for (std::size_t yd = 0; yd < nyd; ++yd)
        for (std::size_t yR = 0; yR < nyrd; ++yR)
          for (std::size_t yr = 0; yr < ch.nyr; ++yr)
            if (std::abs(t(x, xr, yd, yR, yr) - pyd_yr[yd * ch.nyr + yr] * pyR[yR]) > kFactorizationTol)
              fail("Y_R is not independent of (Y_D, Y_r) given the inputs");
      // p(y_D | x, x_r) must not depend on x_r; p(y_R | x, x_r) must not depend on x.
      for (std::size_t yd = 0; yd < nyd; ++yd) {
        double ref = 0.0;
        for (std::size_t yR = 0; yR < nyrd; ++yR)
          for (std::size_t yr = 0; yr < ch.nyr; ++yr) ref += t(x, 0, yd, yR, yr);
        if (std::abs(pyd[yd] - ref) > kFactorizationTol) fail("Y_D depends on X_r");
      }
      for (std::size_t yR = 0; yR < nyrd; ++yR) {
        double ref = 0.0;
        for (std::size_t yd = 0; yd < nyd; ++yd)
          for (std::size_t yr = 0; yr < ch.nyr; ++yr) ref += t(0, xr, yd, yR, yr);
        if (std::abs(pyR[yR] - ref) > kFactorizationTol) fail("Y_R depends on X");
      }
    }
  }
}

/// Evaluates the orthogonal relay-to-destination expressions directly on the
/// joint of (X, X_r, Y_D, Y_R, Y_r, Yhat), keeping Y_D and Y_R separate.
inline std::optional<RatePoint> thm3_point(const DiscreteRelayChannel& composite, std::size_t nyd,
                                           std::size_t nyrd, const DistributionTriple& t) {
  check_model2_factorization(composite, nyd, nyrd);
  const JointPmf five = build_joint(composite, t);
  JointPmf j({"X", "X_r", "Y_D", "Y_R", "Y_r", "Yhat"},
             {composite.nx, composite.nxr, nyd, nyrd, composite.nyr, t.nyhat});
  // Y = yd * nyrd + yR is the row-major split of the composite output, so the
  // flat layouts coincide.
  std::copy(five.probabilities().begin(), five.probabilities().end(), j.probabilities().begin());

  const VarSet x{0}, xr{1}, yd{2}, yR{3}, yr{4}, yh{5};
  const double relay_link = mutual_info(j, xr, yR);
  if (std::abs(mutual_info(j, xr, yR | yd) - relay_link) > kFactorizationTol)
    throw std::logic_error("thm3: I(X_r; Y_R Y_D) != I(X_r; Y_R) on a Model 2 channel");
  const double compression = mutual_info(j, yh, yr, yd | yR | xr);
  if (relay_link < compression - kFeasibilityTol) return std::nullopt;
  const double r1 = mutual_info(j, x, yd | yh, xr | yR);
  const double leakage = mutual_info(j, x, yr, xr);
  return RatePoint::clamped(r1, clamp_plus(r1 - leakage));
}

inline std::optional<RatePoint> thm3_point(const Model2DiscreteChannel& ch, const DistributionTriple& t) {
  return thm3_point(ch.compose(), ch.nyd, ch.nyrd, t);
}

}  // namespace relaysec::discrete
