#include "ddcech/metric_space.hpp"

#include <algorithm>
#include <cmath>

#include "ddcech/errors.hpp"

namespace ddcech {

double euclidean(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

std::string fmt_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_matrix(const std::vector<std::vector<double>>& matrix,
                                                 std::optional<std::vector<Point2>> coords,
                                                 std::vector<std::string> labels) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw DimensionMismatch("distance matrix is not square: row " + std::to_string(i) +
                              " has " + std::to_string(matrix[i].size()) + " entries, expected " +
                              std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (std::isnan(d) || d < 0.0) {
        throw NegativeDistanceError("distance " + fmt_pair(i, j) + " is negative or NaN");
      }
    }
    if (matrix[i][i] != 0.0) {
      throw Error("diagonal entry " + fmt_pair(i, i) + " is not zero");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw AsymmetryError("distance " + fmt_pair(i, j) + " differs from " + fmt_pair(j, i));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double via = matrix[i][j] + matrix[j][k];  // inf + x = inf
        if (matrix[i][k] > via + kTolerance) {
          throw TriangleViolation(i, j, k,
                                  "triangle inequality fails for (" + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  if (coords) {
    if (coords->size() != n) {
      throw CoordMismatch("expected " + std::to_string(n) + " coordinate pairs, got " +
                          std::to_string(coords->size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(euclidean((*coords)[i], (*coords)[j]) - matrix[i][j]) > kTolerance) {
          throw CoordMismatch("distance " + fmt_pair(i, j) +
                              " disagrees with the Euclidean distance of the coordinates");
        }
      }
    }
  }
  if (!labels.empty() && labels.size() != n) {
    throw DimensionMismatch("expected " + std::to_string(n) + " labels");
  }

  FiniteMetricSpace out;
  out.n_ = n;
  out.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(matrix[i].begin(), matrix[i].end(), out.dist_.begin() + i * n);
  }
  out.coords_ = std::move(coords);
  out.labels_ = std::move(labels);
  return out;
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<Point2> coords,
                                                 std::vector<std::string> labels) {
  for (const Point2& p : coords) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw CoordMismatch("coordinates must be finite");
    }
  }
  const std::size_t n = coords.size();
  if (!labels.empty() && labels.size() != n) {
    throw DimensionMismatch("expected " + std::to_string(n) + " labels");
  }
  FiniteMetricSpace out;
  out.n_ = n;
  out.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.dist_[i * n + j] = i == j ? 0.0 : euclidean(coords[i], coords[j]);
    }
  }
  out.coords_ = std::move(coords);
  out.labels_ = std::move(labels);
  return out;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::optional<std::vector<Point2>> coords) {
  return FiniteMetricSpace::from_matrix(matrix, std::move(coords));
}

void FiniteMetricSpace::check_index(Index i) const {
  if (i >= n_) {
    throw IndexOutOfRange("point index " + std::to_string(i) + " out of range for a " +
                          std::to_string(n_) + "-point space");
  }
}

double FiniteMetricSpace::distance(Index i, Index j) const {
  check_index(i);
  check_index(j);
  return (*this)(i, j);
}

std::string FiniteMetricSpace::label(Index i) const {
  check_index(i);
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const Index> points) const {
  FiniteMetricSpace out;
  out.n_ = points.size();
  out.dist_.resize(out.n_ * out.n_);
  for (std::size_t a = 0; a < points.size(); ++a) {
    check_index(points[a]);
    for (std::size_t b = 0; b < points.size(); ++b) {
      out.dist_[a * out.n_ + b] = (*this)(points[a], points[b]);
    }
  }
  if (coords_) {
    std::vector<Point2> c;
    for (Index p : points) c.push_back((*coords_)[p]);
    out.coords_ = std::move(c);
  }
  if (!labels_.empty()) {
    for (Index p : points) out.labels_.push_back(labels_[p]);
  }
  return out;
}

std::vector<double> FiniteMetricSpace::distinct_distances() const {
  std::vector<double> out{0.0};
  for (double d : dist_) {
    if (std::isfinite(d)) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double FiniteMetricSpace::diameter() const {
  double d = 0.0;
  for (double x : dist_) d = std::max(d, x);
  return d;
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : w_(std::move(weights)) {
  bool any_positive = false;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] < 0.0) {
      throw InvalidMeasure("weight of point " + std::to_string(i) +
                           " must be finite and nonnegative");
    }
    any_positive = any_positive || w_[i] > 0.0;
  }
  if (!any_positive) throw EmptySupport("measure has empty support");
}

DiscreteMeasure DiscreteMeasure::counting(std::size_t n) {
  return DiscreteMeasure(std::vector<double>(n, 1.0));
}

DiscreteMeasure DiscreteMeasure::counting_on(std::size_t n, const PointSet& support) {
  std::vector<double> w(n, 0.0);
  for (Index i : support) {
    if (i >= n) throw IndexOutOfRange("support index out of range");
    w[i] = 1.0;
  }
  return DiscreteMeasure(std::move(w));
}

double DiscreteMeasure::mass(std::span<const Index> points) const {
  double m = 0.0;
  for (Index i : points) m += w_.at(i);
  return m;
}

double DiscreteMeasure::total() const {
  double m = 0.0;
  for (double w : w_) m += w;
  return m;
}

PointSet DiscreteMeasure::support() const {
  PointSet out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] > 0.0) out.push_back(static_cast<Index>(i));
  }
  return out;
}

DiscreteMeasure DiscreteMeasure::restrict_to(std::span<const Index> points) const {
  std::vector<double> w;
  w.reserve(points.size());
  for (Index p : points) w.push_back(w_.at(p));
  return DiscreteMeasure(std::move(w));
}

PointSet ball(const FiniteMetricSpace& space, Index x, double r) {
  space.check_index(x);
  PointSet out;
  for (Index y = 0; y < space.size(); ++y) {
    if (space(x, y) <= r) out.push_back(y);
  }
  return out;
}

double ball_mass(const FiniteMetricSpace& space, const DiscreteMeasure& mu, Index x, double r) {
  if (mu.size() != space.size()) throw DimensionMismatch("measure and space sizes differ");
  space.check_index(x);
  double m = 0.0;
  for (Index y = 0; y < space.size(); ++y) {
    if (space(x, y) <= r) m += mu[y];
  }
  return m;
}

PointSet common_ball(const FiniteMetricSpace& space, const Simplex& sigma, double r) {
  for (Index x : sigma) space.check_index(x);
  PointSet out;
  for (Index y = 0; y < space.size(); ++y) {
    bool inside = true;
    for (Index x : sigma) {
      if (!(space(x, y) <= r)) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(y);
  }
  return out;
}

PointSet offset(const FiniteMetricSpace& space, std::span<const Index> points, double r) {
  for (Index x : points) space.check_index(x);
  PointSet out;
  for (Index y = 0; y < space.size(); ++y) {
    for (Index x : points) {
      if (space(x, y) <= r) {
        out.push_back(y);
        break;
      }
    }
  }
  return out;
}

}  // namespace ddcech
