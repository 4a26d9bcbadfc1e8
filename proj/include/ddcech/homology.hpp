#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ddcech/bifiltered.hpp"
#include "ddcech/simplicial.hpp"

namespace ddcech {

// beta_0 .. beta_max_degree over the two-element field.
using BettiVector = std::vector<std::size_t>;

BettiVector betti(const SimplicialComplex& k, std::size_t max_degree);

struct BettiTable {
  std::vector<double> m_grid;
  std::vector<double> r_grid;
  std::size_t max_degree = 0;
  // cells[i][j] is the Betti vector at (m_grid[i], r_grid[j]).
  std::vector<std::vector<BettiVector>> cells;

  const BettiVector& at(std::size_t i, std::size_t j) const { return cells[i][j]; }
};

BettiTable betti_table(const BifilteredComplex& k, std::vector<double> m_grid,
                       std::vector<double> r_grid, std::size_t max_degree);
// Critical grid of k with midpoints.
BettiTable betti_table(const BifilteredComplex& k, std::size_t max_degree);

// Largest degree whose Betti number a complex truncated at dim_cap determines.
inline std::size_t default_max_degree(std::size_t dim_cap) {
  return dim_cap == 0 ? 0 : dim_cap - 1;
}

struct Interval {
  double birth = 0.0;
  double death = 0.0;  // may be inf

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct Barcode {
  // by_degree[k] lists the degree-k intervals sorted by (birth, death).
  std::vector<std::vector<Interval>> by_degree;

  const std::vector<Interval>& degree(std::size_t k) const { return by_degree.at(k); }
  // Number of degree-k intervals containing t.
  std::size_t rank_at(std::size_t k, double t) const;

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

// Persistence of a filtration given by an entry value per simplex. The set of
// simplices must be downward closed with faces entering no later than cofaces.
// Ties are ordered by (dimension, vertex order). Empty intervals are dropped.
Barcode filtration_persistence(const std::vector<std::pair<Simplex, double>>& entries,
                               std::size_t max_degree);

// t -> K at the t-th path point; intervals are reported in path labels and
// classes alive at the last point get death inf.
Barcode slice_persistence(const BifilteredComplex& k, const MonotonePath& path,
                          std::size_t max_degree);

// t -> K at (m0 - t, r0 + t), t >= 0, using exact entry times.
Barcode slice_persistence(const BifilteredComplex& k, const DiagonalSlice& slice,
                          std::size_t max_degree);

// Bottleneck distance between two interval multisets of one degree, with
// deletion cost (death - birth) / 2. Infinite intervals only match infinite
// intervals; different counts give inf.
double bottleneck_distance(const std::vector<Interval>& a, const std::vector<Interval>& b);

// Maximum over degrees present in both barcodes.
double bottleneck_distance(const Barcode& a, const Barcode& b);

// For each degree k <= max_degree, whether H_k(K) -> H_k(L) is an isomorphism.
// Throws NotAnInclusion unless K is a subcomplex of L.
std::vector<bool> inclusion_induces_iso(const SimplicialComplex& k, const SimplicialComplex& l,
                                        std::size_t max_degree);

}  // namespace ddcech
