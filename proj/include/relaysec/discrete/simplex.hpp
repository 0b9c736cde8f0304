// Probability-simplex grids: all pmfs on k symbols whose entries are
// multiples of 1/resolution, in lexicographic order of the numerators.
#pragma once

#include <cstddef>
#include <vector>

#include "relaysec/core.hpp"

namespace relaysec::discrete {

/// Number of compositions of `resolution` into `parts` nonnegative parts,
/// C(resolution + parts - 1, parts - 1). Returned as double so huge search
/// spaces can be reported without overflow.
inline double simplex_grid_size(std::size_t resolution, std::size_t parts) {
  double c = 1.0;
  for (std::size_t i = 1; i < parts; ++i)
    c = c * static_cast<double>(resolution + i) / static_cast<double>(i);
  return c;
}

inline std::vector<std::vector<double>> simplex_grid(std::size_t resolution, std::size_t parts) {
  if (parts == 0) throw StructuralError("simplex_grid: zero parts");
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> num(parts, 0);
  const double scale = 1.0 / static_cast<double>(resolution);

  // Recursive fill: position k takes 0..remaining; the last part takes the rest.
  auto fill = [&](auto&& self, std::size_t k, std::size_t remaining) -> void {
    if (k + 1 == parts) {
      num[k] = remaining;
      std::vector<double> pmf(parts);
      for (std::size_t i = 0; i < parts; ++i) pmf[i] = static_cast<double>(num[i]) * scale;
      out.push_back(std::move(pmf));
      return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
      num[k] = v;
      self(self, k + 1, remaining - v);
    }
  };
  fill(fill, 0, resolution);
  return out;
}

}  // namespace relaysec::discrete
