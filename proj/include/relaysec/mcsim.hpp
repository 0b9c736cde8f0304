// Monte-Carlo check of the amplify-and-forward equivalent wiretap channel.
//
// Random numbers: each partition of kPartitionSize samples owns a
// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(partition)).
// Uniforms take the top 53 bits of a draw; normals come from the Box-Muller
// transform below (std::normal_distribution is not specified bit-exactly).
// Partition statistics are merged in partition order, so the report does not
// depend on the number of worker threads.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "relaysec/core.hpp"
#include "relaysec/model2.hpp"

namespace relaysec::mcsim {

struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  model2::GaussianModel2Params params;
  double p = 1.0;
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: hardware concurrency. Never changes the result.

  void validate() const {
    params.validate();
    if (n_samples < 1) throw DomainError("af_simulate: n_samples must be >= 1");
    if (!(p > 0.0 && p <= params.p_max)) throw DomainError("af_simulate: p must lie in (0, P]");
  }
};

struct SimReport {
  double xi_hat = 0.0;
  double relay_power_hat = 0.0;
  double re_hat = 0.0;  // before [.]^+, may be slightly negative
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kPartitionSize = 1 << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Pair of independent standard normals per call.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1], u2 in [0, 1)
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

// Variables tracked: X, Y_D, Y_R, Y_r. Raw sums of values and products.
constexpr std::size_t kVars = 4;

struct Moments {
  std::array<double, kVars> sum{};
  std::array<double, kVars * kVars> cross{};
  double relay_power = 0.0;  // sum of X_r^2

  void merge(const Moments& o) {
    for (std::size_t i = 0; i < kVars; ++i) sum[i] += o.sum[i];
    for (std::size_t i = 0; i < kVars * kVars; ++i) cross[i] += o.cross[i];
    relay_power += o.relay_power;
  }
};

inline Moments simulate_partition(const SimConfig& cfg, std::uint64_t part) {
  const std::uint64_t begin = part * kPartitionSize;
  const std::uint64_t count = std::min(kPartitionSize, cfg.n_samples - begin);
  NormalSource rng(splitmix64(cfg.seed ^ splitmix64(part)));
  const auto& prm = cfg.params;
  const double beta = std::sqrt(prm.p_relay / (prm.a * prm.a * cfg.p + 1.0));
  const double sx = std::sqrt(cfg.p);

  Moments m;
  for (std::uint64_t k = 0; k < count; ++k) {
    const double x = sx * rng.next();
    const double z_r = rng.next();
    const double z_d = rng.next();
    const double z_rd = rng.next();
    const double y_r = prm.a * x + z_r;
    const double x_r = beta * y_r;
    const std::array<double, kVars> v{x, x + z_d, prm.b * x_r + z_rd, y_r};
    for (std::size_t i = 0; i < kVars; ++i) {
      m.sum[i] += v[i];
      for (std::size_t j = i; j < kVars; ++j) m.cross[i * kVars + j] += v[i] * v[j];
    }
    m.relay_power += x_r * x_r;
  }
  return m;
}

inline double det(const std::vector<std::vector<double>>& a) {
  // Gaussian elimination with partial pivoting; matrices here are at most 3x3.
  auto m = a;
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

}  // namespace detail

/// Sample covariance of (X, Y_D, Y_R, Y_r) plus the mean relay power.
struct SampleStatistics {
  std::array<std::array<double, detail::kVars>, detail::kVars> cov{};
  double relay_power = 0.0;
  std::uint64_t n = 0;

  /// Gaussian I(A; B) from the covariance, 1/2 log2(|S_A| |S_B| / |S_AB|).
  double gaussian_mi(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    auto sub = [&](const std::vector<std::size_t>& idx) {
      std::vector<std::vector<double>> m(idx.size(), std::vector<double>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = cov[idx[i]][idx[j]];
      return detail::det(m);
    };
    std::vector<std::size_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const double da = sub(a), db = sub(b), dab = sub(ab);
    if (!(da > 0.0) || !(db > 0.0) || !(dab > 0.0))
      throw EstimationError("sample covariance is singular; increase n_samples");
    return 0.5 * std::log2(da * db / dab);
  }
};

inline SampleStatistics collect_statistics(const SimConfig& cfg) {
  cfg.validate();
  const std::uint64_t parts = (cfg.n_samples + kPartitionSize - 1) / kPartitionSize;
  unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, parts));

  std::vector<detail::Moments> partial(parts);
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < parts; ++k) partial[k] = detail::simulate_partition(cfg, k);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t k = w; k < parts; k += workers) partial[k] = detail::simulate_partition(cfg, k);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  detail::Moments total;
  for (const auto& m : partial) total.merge(m);

  SampleStatistics st;
  st.n = cfg.n_samples;
  const double n = static_cast<double>(cfg.n_samples);
  const double denom = cfg.n_samples > 1 ? n - 1.0 : 1.0;
  for (std::size_t i = 0; i < detail::kVars; ++i)
    for (std::size_t j = i; j < detail::kVars; ++j) {
      const double c = (total.cross[i * detail::kVars + j] - total.sum[i] * total.sum[j] / n) / denom;
      st.cov[i][j] = st.cov[j][i] = c;
    }
  st.relay_power = total.relay_power / n;
  return st;
}

/// Simulates X ~ N(0, p), Y_r = aX + Z_r, X_r = beta Y_r, Y_R = b X_r + Z_R,
/// Y_D = X + Z_D and estimates the relay-path SNR factor xi, the relay power
/// and the secrecy rate I(X; Y_D Y_R) - I(X; Y_r) from sample covariances.
inline SimReport af_simulate(const SimConfig& cfg) {
  const SampleStatistics st = collect_statistics(cfg);
  enum : std::size_t { X = 0, YD = 1, YR = 2, YRELAY = 3 };
  const double main_mi = st.gaussian_mi({X}, {YD, YR});
  const double eve_mi = st.gaussian_mi({X}, {YRELAY});
  const double snr_total = std::exp2(2.0 * main_mi) - 1.0;
  return {(snr_total - cfg.p) / cfg.p, st.relay_power, main_mi - eve_mi, cfg.n_samples, cfg.seed};
}

}  // namespace relaysec::mcsim
