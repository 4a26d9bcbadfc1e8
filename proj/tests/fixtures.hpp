#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ddcech/metric_space.hpp"

namespace fixtures {

using namespace ddcech;

// Points a, b, c on a line at 0, 1, 3.
inline FiniteMetricSpace line3() {
  return FiniteMetricSpace::from_points({{0, 0}, {1, 0}, {3, 0}}, {"a", "b", "c"});
}

// Unit square corners v1..v4 in cyclic order, indices 0..3.
inline FiniteMetricSpace square4() {
  return FiniteMetricSpace::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                        {"v1", "v2", "v3", "v4"});
}

inline std::vector<Point2> random_cloud(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
  return pts;
}

// Shortest-path metric of a random connected weighted graph.
inline FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || u(rng) < 0.8) d[i][j] = d[j][i] = std::round(u(rng) * 4.0) / 4.0 + 0.25;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return FiniteMetricSpace::from_matrix(d);
}

}  // namespace fixtures
