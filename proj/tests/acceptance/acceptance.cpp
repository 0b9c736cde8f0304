// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All tolerances and time limits are below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relaysec/cli.hpp"
#include "relaysec/relaysec.hpp"

using namespace relaysec;

namespace {

// ── Pinned tolerances and limits ──────────────────────────────────────────────
constexpr double kExactTol = 1e-12;          // closed-form identities
constexpr double kTightnessTol = 0.01;       // cf at large b vs the bound (bits)
constexpr double kWeakLinkRate = 0.005;      // cf at b = 0.01 (bits)
constexpr double kBoundSlack = 1e-9;         // achievable <= bound
constexpr double kCapacityAgreeTol = 1e-9;   // model 1 across (b, gamma)
constexpr double kSearchTol = 0.02;          // discrete search vs h2(0.1)
constexpr double kDelegationTol = 1e-12;     // thm3 vs thm1
constexpr double kXiRelTol = 0.02;           // Monte-Carlo xi, relative
constexpr double kPowerTol = 0.01;           // Monte-Carlo relay power
constexpr double kMcRateTol = 0.01;          // Monte-Carlo secrecy rate (bits)
constexpr std::size_t kRandomTuples = 1000;
constexpr std::size_t kMonotoneTuples = 100;
constexpr std::size_t kMonotonePoints = 1000;
constexpr std::uint64_t kRandomSeed = 20240917;

const std::string kData = RELAYSEC_DATA_DIR;
const std::string kGolden = RELAYSEC_GOLDEN_DIR;

double cap(double x) { return 0.5 * std::log2(1.0 + x); }

double h2(double q) { return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || secs < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s  %2d  %-34s %.3fs%s  %s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              limit_s > 0.0 ? (" (limit " + std::to_string(static_cast<int>(limit_s)) + "s)").c_str() : "",
              o.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string cli_out(const std::vector<std::string>& args, int* status = nullptr) {
  std::ostringstream out, err;
  const int s = cli::run(args, out, err);
  if (status) *status = s;
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Tuple {
  model2::GaussianModel2Params prm;
  double p;
};

// (a, b, P_r, P) uniform on (0, 5], p uniform on (0, P].
std::vector<Tuple> random_tuples() {
  std::mt19937_64 rng(kRandomSeed);
  auto u = [&](double hi) {
    double v = 0.0;
    while (v == 0.0) v = std::uniform_real_distribution<double>(0.0, hi)(rng);
    return v;
  };
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < kRandomTuples; ++i) {
    model2::GaussianModel2Params prm{u(5), u(5), u(5), u(5)};
    out.push_back({prm, u(prm.p_max)});
  }
  return out;
}

std::vector<double> bsc(double d) { return {1 - d, d, d, 1 - d}; }

// Three orthogonal relay-to-destination channels with binary alphabets.
std::vector<discrete::Model2DiscreteChannel> model2_channels() {
  using discrete::Model2DiscreteChannel;
  std::vector<Model2DiscreteChannel> out;
  // Clean links, relay observes pure noise.
  out.push_back({2, 2, 2, 2, 2, {1, 0, 0, 1}, std::vector<double>(16, 0.5), {1, 0, 0, 1}});
  // Noisy direct link, relay observes X through a BSC(0.1), noiseless relay link.
  Model2DiscreteChannel b{2, 2, 2, 2, 2, bsc(0.2), {}, {1, 0, 0, 1}};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t k = 0; k < 4; ++k) {
      b.to_relay.push_back(x == 0 ? 0.9 : 0.1);
      b.to_relay.push_back(x == 0 ? 0.1 : 0.9);
    }
  out.push_back(b);
  // Relay observation depends on X, X_r and Y_D; noisy relay link.
  Model2DiscreteChannel c{2, 2, 2, 2, 2, bsc(0.15), {}, bsc(0.05)};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t xr = 0; xr < 2; ++xr)
      for (std::size_t yd = 0; yd < 2; ++yd) {
        const double flip = 0.05 + 0.1 * static_cast<double>(xr) + 0.2 * static_cast<double>(yd);
        c.to_relay.push_back(x == 0 ? 1 - flip : flip);
        c.to_relay.push_back(x == 0 ? flip : 1 - flip);
      }
  out.push_back(c);
  return out;
}

}  // namespace

int main() {
  criterion(1, "cover-kim curve", 1.0, [] {
    const auto rows = coverkim::ck_curve({0.0, 1.0, 0.5}, io::parse_value_list("0:3:0.05"));
    bool ok = rows.size() == 61;
    double at_one_a = -1, at_one_u = -1;
    for (const auto& r : rows) {
      ok = ok && r.achievable <= r.upper;
      if (r.alpha <= 1.0) ok = ok && r.achievable.bits() == r.upper.bits();
      if (r.alpha == 1.0) {
        at_one_a = r.achievable;
        at_one_u = r.upper;
      }
    }
    ok = ok && std::abs(at_one_a - 0.5) <= kExactTol && std::abs(at_one_u - 0.5) <= kExactTol;
    return Outcome{ok, fmt("alpha=1: achievable %.12g upper %.12g", at_one_a, at_one_u)};
  });

  criterion(2, "relay gain sweep tightness", 5.0, [] {
    const auto strong = model2::cf_optimize({1, 100, 1, 1}, GridSpec{1024}).re_star;
    const auto weak = model2::cf_optimize({1, 0.01, 1, 1}, GridSpec{1024}).re_star;
    const double ub = model2::model2_upper_bound({1, 100, 1, 1});
    const bool ok = std::abs(strong - ub) <= kTightnessTol && std::abs(ub - cap(0.5)) <= kExactTol &&
                    weak <= kWeakLinkRate;
    return Outcome{ok, fmt("b=100: cf %.6f bound %.6f; b=0.01: cf %.2e", strong, ub, weak)};
  });

  criterion(3, "source power control", 5.0, [] {
    const model2::GaussianModel2Params prm{1.2, 0.8, 1.0, 1.0};
    const auto cf = model2::cf_optimize(prm, GridSpec{1024});
    const auto af = model2::af_optimize(prm, GridSpec{1024});
    const double cf_gain = cf.re_star - model2::cf_rate(prm, prm.p_max).re_bound;
    const double af_gain = af.re_star - model2::af_rate(prm, prm.p_max).re_bound;
    const bool interior = cf.p_star < prm.p_max && af.p_star < prm.p_max;
    const bool ok = interior && af_gain > cf_gain;
    return Outcome{ok, fmt("p*: cf %.4f af %.4f; ", cf.p_star, af.p_star) +
                           fmt("gain: af %.6f vs cf %.6f", af_gain, cf_gain)};
  });

  criterion(4, "cf exceeds af", 1.0, [] {
    std::size_t bad = 0;
    for (const auto& [prm, p] : random_tuples())
      if (!(model2::cf_rate(prm, p).re_unclamped > model2::af_rate(prm, p).re_unclamped)) ++bad;
    return Outcome{bad == 0, fmt("%.0f of 1000 tuples violate", static_cast<double>(bad))};
  });

  criterion(5, "cf destination snr monotone", 1.0, [] {
    std::mt19937_64 rng(kRandomSeed + 1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kMonotoneTuples; ++t) {
      const model2::GaussianModel2Params prm{5.0 - u(rng), 5.0 - u(rng), 10.0, 5.0 - u(rng)};
      double prev = 0.0;
      for (std::size_t i = 1; i <= kMonotonePoints; ++i) {
        const double s = model2::cf_effective_snr(prm, 10.0 * static_cast<double>(i) / kMonotonePoints);
        if (!(s > prev)) ++bad;
        prev = s;
      }
    }
    return Outcome{bad == 0, fmt("%.0f non-increasing steps", static_cast<double>(bad))};
  });

  criterion(6, "bound ordering", 10.0, [] {
    std::size_t bad = 0;
    double worst = -1e300;
    for (const auto& [prm, p] : random_tuples()) {
      const double ub = model2::model2_upper_bound(prm);
      const double cf = model2::cf_optimize(prm, GridSpec{1024}).re_star;
      worst = std::max(worst, cf - ub);
      if (cf > ub + kBoundSlack || ub > cap(prm.p_max)) ++bad;
    }
    return Outcome{bad == 0, fmt("%.0f violations; max cf - bound %.3g", static_cast<double>(bad), worst)};
  });

  criterion(7, "model 1 relay uselessness", 10.0, [] {
    constexpr std::size_t res = 256;
    std::vector<double> caps;
    for (double b : {0.0, 1.0, 10.0})
      for (double gamma : {0.0, 1.0, 4.0})
        caps.push_back(model1::model1_secrecy_capacity({1.0, b, gamma, 1.0, 1.0}, GridSpec{res}).capacity);
    bool ok = true;
    double spread = 0.0;
    for (double c : caps) {
      ok = ok && std::abs(c - 0.5) <= 2.0 / res;
      spread = std::max(spread, std::abs(c - caps.front()));
    }
    ok = ok && spread <= kCapacityAgreeTol;
    return Outcome{ok, fmt("capacity %.12g, spread %.2g", caps.front(), spread)};
  });

  criterion(8, "discrete engine", 60.0, [] {
    const auto bscch = io::load_discrete_channel(kData + "/channels/bsc01.txt");
    const double best = discrete::thm1_search(bscch, GridSpec{16}).max_re();
    const auto xr = io::load_discrete_channel(kData + "/channels/xor_relay.txt");
    const auto j = discrete::build_joint(
        xr, {{0.5, 0.5}, {0.5, 0.5}, 1, discrete::DistributionTriple::constant_quantizer(xr)});
    const double plain = discrete::mutual_info(j, {discrete::kX}, {discrete::kYr});
    const double cond = discrete::mutual_info(j, {discrete::kX}, {discrete::kYr}, {discrete::kXr});
    const bool ok = std::abs(best - h2(0.1)) <= kSearchTol && plain == 0.0 && cond == 1.0;
    return Outcome{ok, fmt("max re %.6f (h2 %.6f); ", best, h2(0.1)) + fmt("I(X;Yr) %.17g I(X;Yr|Xr) %.17g", plain, cond)};
  });

  criterion(9, "composite output identity", 0.0, [] {
    double worst = 0.0;
    std::size_t compared = 0, mismatched = 0;
    for (const auto& ch : model2_channels()) {
      const auto comp = ch.compose();
      const discrete::TripleGrid grid(comp, 2, 2);
      for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(grid.count()); ++i) {
        const auto t = grid.decode(i);
        const auto a = discrete::thm3_point(ch, t);
        const auto b = discrete::thm1_point(comp, t);
        if (a.has_value() != b.has_value()) {
          ++mismatched;
          continue;
        }
        if (!a) continue;
        ++compared;
        worst = std::max({worst, std::abs(a->r1 - b->r1), std::abs(a->re - b->re)});
      }
    }
    const bool ok = mismatched == 0 && compared > 0 && worst <= kDelegationTol;
    return Outcome{ok, fmt("%.0f feasible triples, max diff %.2g", static_cast<double>(compared), worst)};
  });

  criterion(10, "monte-carlo amplify-and-forward", 10.0, [] {
    const mcsim::SimConfig cfg{{1, 1, 1, 1}, 1.0, 1'000'000, 1, 0};
    const auto a = mcsim::af_simulate(cfg);
    const auto b = mcsim::af_simulate(cfg);
    const double re_ref = cap(4.0 / 3.0) - cap(1.0);
    const bool same = std::memcmp(&a.xi_hat, &b.xi_hat, sizeof(double)) == 0 &&
                      std::memcmp(&a.relay_power_hat, &b.relay_power_hat, sizeof(double)) == 0 &&
                      std::memcmp(&a.re_hat, &b.re_hat, sizeof(double)) == 0;
    const bool ok = std::abs(a.xi_hat - 1.0 / 3.0) <= kXiRelTol / 3.0 &&
                    std::abs(a.relay_power_hat - 1.0) <= kPowerTol && std::abs(a.re_hat - re_ref) <= kMcRateTol &&
                    same;
    return Outcome{ok, fmt("xi %.5f power %.5f re %.5f", a.xi_hat, a.relay_power_hat, a.re_hat) +
                           (same ? "; rerun identical" : "; rerun differs")};
  });

  criterion(11, "cli determinism and goldens", 0.0, [] {
    const std::vector<std::vector<std::string>> cmds = {
        {"model1-region", "--a", "0.8", "--b", "1.4", "--gamma", "2", "--p", "1.5", "--grid", "32"},
        {"model1-capacity", "--a", "0.8", "--b", "1.4", "--gamma", "2", "--p", "1.5"},
        {"model2-rates", "--a", "1.2", "--b", "0.8", "--p", "1", "--p_r", "1"},
        {"model2-power-sweep", "--config", kData + "/configs/power_sweep.cfg"},
        {"model2-b-sweep", "--config", kData + "/configs/b_sweep.cfg"},
        {"coverkim-curve", "--config", kData + "/configs/coverkim_curve.cfg"},
        {"discrete-eval", "--channel", kData + "/channels/bsc01.txt"},
        {"af-sim", "--a", "1", "--b", "1", "--p", "1", "--p_r", "1", "--samples", "100000"},
    };
    std::size_t bad = 0;
    std::string which;
    for (const auto& c : cmds) {
      int s1 = -1, s2 = -1;
      const auto a = cli_out(c, &s1), b = cli_out(c, &s2);
      if (s1 != 0 || s2 != 0 || a != b || a.empty()) {
        ++bad;
        which += " " + c[0];
      }
    }
    for (const auto& [cmd, name] : std::vector<std::pair<std::string, std::string>>{
             {"coverkim-curve", "coverkim_curve"}, {"model2-b-sweep", "b_sweep"}, {"model2-power-sweep", "power_sweep"}}) {
      const auto golden = slurp(kGolden + "/" + name + ".csv");
      if (golden.empty() || cli_out({cmd, "--config", kData + "/configs/" + name + ".cfg"}) != golden) {
        ++bad;
        which += " golden:" + name;
      }
    }
    return Outcome{bad == 0, "8 commands rerun, 3 golden files" + (which.empty() ? "" : "; failing:" + which)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
