#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddcech/simplicial.hpp"

namespace ddcech {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Global geometric tolerance. Used when validating metrics and when building
// planar witness candidates; combinatorial set operations compare exactly.
inline constexpr double kTolerance = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double euclidean(const Point2& a, const Point2& b);

// Indexed point set with a symmetric distance matrix. Infinite distances are
// allowed and model disconnected spaces.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  // Validates symmetry, zero diagonal, nonnegativity, the triangle inequality
  // (within kTolerance, with inf + x = inf) and agreement with coordinates.
  static FiniteMetricSpace from_matrix(const std::vector<std::vector<double>>& matrix,
                                       std::optional<std::vector<Point2>> coords = std::nullopt,
                                       std::vector<std::string> labels = {});

  static FiniteMetricSpace from_points(std::vector<Point2> coords,
                                       std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  double operator()(Index i, Index j) const { return dist_[i * n_ + j]; }
  double distance(Index i, Index j) const;  // bounds-checked

  const std::optional<std::vector<Point2>>& coords() const { return coords_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Index i) const;

  // Induced metric on the listed points, reindexed 0..k-1 in the given order.
  FiniteMetricSpace subspace(std::span<const Index> points) const;

  // Sorted distinct finite pairwise distances, including 0.
  std::vector<double> distinct_distances() const;

  double diameter() const;

  void check_index(Index i) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::optional<std::vector<Point2>> coords_;
  std::vector<std::string> labels_;
};

// Same as FiniteMetricSpace::from_matrix.
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::optional<std::vector<Point2>> coords = std::nullopt);

// Finitely supported measure: one nonnegative weight per point.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Throws InvalidMeasure for negative or non-finite weights and EmptySupport
  // if every weight is zero.
  explicit DiscreteMeasure(std::vector<double> weights);

  static DiscreteMeasure counting(std::size_t n);
  // Counting measure on `support` inside an n-point space.
  static DiscreteMeasure counting_on(std::size_t n, const PointSet& support);

  std::size_t size() const { return w_.size(); }
  double operator[](Index i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

  double mass(std::span<const Index> points) const;
  double total() const;
  PointSet support() const;

  // Weights of the listed points, in order.
  DiscreteMeasure restrict_to(std::span<const Index> points) const;

 private:
  std::vector<double> w_;
};

// Closed ball B(x, r) = { y : d(x, y) <= r }.
PointSet ball(const FiniteMetricSpace& space, Index x, double r);
double ball_mass(const FiniteMetricSpace& space, const DiscreteMeasure& mu, Index x, double r);

// Intersection of the closed balls B(x, r) for x in sigma.
PointSet common_ball(const FiniteMetricSpace& space, const Simplex& sigma, double r);

// r-offset: union of the closed balls B(x, r) for x in points.
PointSet offset(const FiniteMetricSpace& space, std::span<const Index> points, double r);

}  // namespace ddcech
