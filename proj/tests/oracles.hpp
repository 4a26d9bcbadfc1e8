#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. None of these call into the code they are checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ddcech/metric_space.hpp"
#include "ddcech/simplicial.hpp"

namespace oracles {

using namespace ddcech;

// Direct test of mu_i(B) <= mu_j(B^eps) + eps over every B inside the union of
// the supports, both directions.
inline bool prohorov_feasible(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                              const DiscreteMeasure& mu1, double eps) {
  std::vector<Index> u;
  for (Index i = 0; i < space.size(); ++i) {
    if (mu0[i] > 0 || mu1[i] > 0) u.push_back(i);
  }
  const std::uint32_t count = std::uint32_t{1} << u.size();
  for (std::uint32_t b = 1; b < count; ++b) {
    double m0 = 0, m1 = 0, o0 = 0, o1 = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (b >> k & 1U) {
        m0 += mu0[u[k]];
        m1 += mu1[u[k]];
      }
    }
    for (Index y = 0; y < space.size(); ++y) {
      bool near = false;
      for (std::size_t k = 0; k < u.size() && !near; ++k) {
        near = (b >> k & 1U) && space(u[k], y) <= eps;
      }
      if (near) {
        o0 += mu0[y];
        o1 += mu1[y];
      }
    }
    if (m0 > o1 + eps || m1 > o0 + eps) return false;
  }
  return true;
}

// Smallest feasible eps, found among 0, the pairwise distances and every
// difference mu_i(B) - mu_j(C) of subset masses. The feasible set is a closed
// ray, and its left end is one of these values.
inline double prohorov_brute(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                             const DiscreteMeasure& mu1) {
  std::vector<double> cand{0.0};
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = 0; j < space.size(); ++j) {
      if (std::isfinite(space(i, j))) cand.push_back(space(i, j));
    }
  }
  auto subset_masses = [](const DiscreteMeasure& mu) {
    std::vector<Index> s = mu.support();
    std::vector<double> out;
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << s.size()); ++b) {
      double m = 0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (b >> k & 1U) m += mu[s[k]];
      }
      out.push_back(m);
    }
    return out;
  };
  const auto a = subset_masses(mu0), b = subset_masses(mu1);
  for (double x : a) {
    for (double y : b) {
      if (x > y) cand.push_back(x - y);
      if (y > x) cand.push_back(y - x);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // Feasibility is monotone in eps, so bisect.
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (prohorov_feasible(space, mu0, mu1, cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cand[lo];
}

// Rank of a GF(2) matrix given as rows of bits.
inline std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols) {
  std::size_t rank = 0;
  const std::size_t words = (ncols + 63) / 64;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = rank;
    while (p < rows.size() && !(rows[p][w] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i][w] & bit)) {
        for (std::size_t k = 0; k < words; ++k) rows[i][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// Betti numbers from ranks of full boundary matrices: b_k = n_k - rk d_k - rk d_{k+1}.
inline std::vector<std::size_t> betti_by_rank(const std::vector<Simplex>& simplices,
                                              std::size_t max_degree) {
  std::vector<std::vector<Simplex>> by_dim(max_degree + 2);
  for (const Simplex& s : simplices) {
    if (s.dim() <= max_degree + 1) by_dim[s.dim()].push_back(s);
  }
  auto rank_of = [&](std::size_t k) -> std::size_t {
    if (k == 0 || k >= by_dim.size() || by_dim[k].empty()) return 0;
    const auto& faces = by_dim[k - 1];
    std::vector<std::vector<std::uint64_t>> rows;
    for (const Simplex& s : by_dim[k]) {
      std::vector<std::uint64_t> row((faces.size() + 63) / 64, 0);
      std::vector<Index> v(s.begin(), s.end());
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<Index> f;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i != drop) f.push_back(v[i]);
        }
        for (std::size_t j = 0; j < faces.size(); ++j) {
          if (std::equal(faces[j].begin(), faces[j].end(), f.begin(), f.end())) {
            row[j / 64] ^= std::uint64_t{1} << (j % 64);
          }
        }
      }
      rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows), faces.size());
  };
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    out.push_back(by_dim[k].size() - rank_of(k) - rank_of(k + 1));
  }
  return out;
}

struct Disk {
  Point2 c;
  double r = -1.0;  // empty
};

inline bool in_disk(const Disk& d, const Point2& p) {
  return d.r >= 0 && euclidean(d.c, p) <= d.r * (1 + 1e-12) + 1e-12;
}

inline Disk disk_two(const Point2& a, const Point2& b) {
  return {{(a.x + b.x) / 2, (a.y + b.y) / 2}, euclidean(a, b) / 2};
}

inline Disk disk_three(const Point2& a, const Point2& b, const Point2& c) {
  const double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-300) {
    Disk best = disk_two(a, b);
    for (const Disk& o : {disk_two(a, c), disk_two(b, c)}) {
      if (o.r > best.r) best = o;
    }
    return best;
  }
  const double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  const double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  Point2 center{a.x + ux, a.y + uy};
  return {center, euclidean(center, a)};
}

// Minimal enclosing disk by Welzl's recursion (small inputs only).
inline Disk welzl(std::vector<Point2> pts, std::vector<Point2> boundary = {}) {
  if (pts.empty() || boundary.size() == 3) {
    if (boundary.empty()) return {};
    if (boundary.size() == 1) return {boundary[0], 0.0};
    if (boundary.size() == 2) return disk_two(boundary[0], boundary[1]);
    return disk_three(boundary[0], boundary[1], boundary[2]);
  }
  const Point2 p = pts.back();
  pts.pop_back();
  Disk d = welzl(pts, boundary);
  if (in_disk(d, p)) return d;
  boundary.push_back(p);
  return welzl(pts, boundary);
}

}  // namespace oracles
