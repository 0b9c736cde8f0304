// Test-only reference computations. Nothing here reuses library code paths:
// entropies are computed by brute-force aggregation over explicit outcome
// tuples, and C(x) straight from its definition.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

inline double cap(double x) { return 0.5 * std::log2(1.0 + x); }

inline double h2(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

/// Joint distribution as a list of (outcome tuple, probability).
struct Outcomes {
  std::vector<std::vector<int>> values;
  std::vector<double> probs;

  void add(std::vector<int> v, double p) {
    if (p > 0.0) {
      values.push_back(std::move(v));
      probs.push_back(p);
    }
  }

  double entropy(const std::vector<std::size_t>& vars) const {
    if (vars.empty()) return 0.0;
    std::map<std::vector<int>, double> agg;
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::vector<int> key;
      for (auto v : vars) key.push_back(values[i][v]);
      agg[key] += probs[i];
    }
    double h = 0.0;
    for (const auto& [k, p] : agg)
      if (p > 0.0) h -= p * std::log2(p);
    return h;
  }

  /// I(A; B | C) = H(AC) + H(BC) - H(ABC) - H(C).
  double mi(std::vector<std::size_t> a, std::vector<std::size_t> b, std::vector<std::size_t> c = {}) const {
    auto cat = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
      x.insert(x.end(), y.begin(), y.end());
      return x;
    };
    return entropy(cat(a, c)) + entropy(cat(b, c)) - entropy(cat(cat(a, b), c)) - entropy(c);
  }
};

}  // namespace oracle
