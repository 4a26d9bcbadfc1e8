#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddcech/bifiltered.hpp"
#include "ddcech/metric_space.hpp"
#include "ddcech/simplicial.hpp"

namespace ddcech {

// Arbitrary [0, inf]-valued function on X x Y, stored row-major.
class DowkerDissimilarity {
 public:
  DowkerDissimilarity() = default;
  // Throws DimensionMismatch on a size mismatch and NegativeDistanceError for
  // negative or NaN entries.
  DowkerDissimilarity(std::size_t nx, std::size_t ny, std::vector<double> values);

  static DowkerDissimilarity from_metric(const FiniteMetricSpace& space);
  // Rows are the points `rows` of the space, columns the points `cols`.
  static DowkerDissimilarity from_metric(const FiniteMetricSpace& space, const PointSet& rows,
                                         const PointSet& cols);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(Index x, Index y) const { return v_[x * ny_ + y]; }
  const std::vector<double>& values() const { return v_; }

  // B_Lambda(x, r) = { y : Lambda(x, y) <= r }.
  PointSet ball(Index x, double r) const;
  // Intersection of ball(x, r) over x in sigma.
  PointSet common_ball(const Simplex& sigma, double r) const;

  // Sorted distinct entries together with 0. Contains inf if some entry is inf.
  std::vector<double> distinct_values() const;

  DowkerDissimilarity transpose() const;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> v_;
};

// Order preserving f(sigma, r) on simplices over X = {0, .., x_size - 1}.
// f is a right-continuous step function of r that can only change at the
// listed breakpoints.
class SetBifiltration {
 public:
  using Fn = std::function<double(const Simplex&, double)>;

  SetBifiltration(std::size_t x_size, std::vector<double> breakpoints, Fn fn, std::string kind);

  std::size_t x_size() const { return x_size_; }
  // Sorted, distinct, starting at 0.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& kind() const { return kind_; }

  double operator()(const Simplex& sigma, double r) const { return fn_(sigma, r); }

 private:
  std::size_t x_size_ = 0;
  std::vector<double> breakpoints_;
  Fn fn_;
  std::string kind_;
};

// f(sigma, r) = mu(B_Lambda(sigma, r)), with mu a measure on Y.
SetBifiltration degree_bifiltration(const DowkerDissimilarity& lambda, const DiscreteMeasure& mu);

// f_p(sigma, r) = (sum over y in B_Lambda(sigma, r) of min_x Lambda(x, y)^p w_y)^(1/p),
// with 0^p = 0. Throws NonPositiveP unless p > 0.
SetBifiltration dtm_bifiltration(const DowkerDissimilarity& lambda, const DiscreteMeasure& mu,
                                 double p);

// f given by per-simplex staircases; simplices without an entry, and radii
// before the first step, evaluate to 0.
SetBifiltration table_bifiltration(std::size_t x_size, std::map<Simplex, Staircase> table);

// Looks for sigma' a facet of sigma and breakpoints r <= r' with
// f(sigma, r) > f(sigma', r'). Returns a description of the first violation.
std::optional<std::string> find_monotonicity_violation(const SetBifiltration& f,
                                                       std::size_t dim_cap);

// A Dowker dissimilarity with a set bifiltration on its X side such that
// f(sigma, r) > 0 implies B_Lambda(sigma, r) is nonempty. The condition is
// checked at every breakpoint for simplices up to dim_cap.
class DowkerBifiltrationPair {
 public:
  // Throws DowkerConditionViolation or DimensionMismatch.
  DowkerBifiltrationPair(DowkerDissimilarity lambda, SetBifiltration f,
                         std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

  const DowkerDissimilarity& lambda() const { return lambda_; }
  const SetBifiltration& f() const { return f_; }

 private:
  DowkerDissimilarity lambda_;
  SetBifiltration f_;
};

// Nf: sigma is present at (m, r) iff f(sigma, r) >= m. Every simplex is
// present from r = 0, so Nf at m <= 0 is the full simplex up to dim_cap.
BifilteredComplex nerve_bifiltration(const SetBifiltration& f,
                                     std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// D_Lambda Nf on Y: tau is present at (m, r) iff some x has f({x}, r) >= m and
// tau inside B_Lambda(x, r).
BifilteredComplex dowker_dual(const DowkerDissimilarity& lambda, const SetBifiltration& f,
                              std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// Witnesses restricted to the support. Vertex universe = support(mu), with the
// original point indices. Throws EmptySupport.
BifilteredComplex intrinsic_dc(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                               std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// Witnesses range over every point of the space.
BifilteredComplex ambient_dc_finite(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                    std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// Witnesses range over the whole plane. Staircases are sampled at 0, half the
// pairwise distances, triple circumradii and pairwise distances of the
// support, or at `r_grid` (plus 0) if given. Throws MissingCoordinates, and
// DegenerateConfiguration for support points closer than kTolerance.
BifilteredComplex ambient_dc_planar(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                    std::size_t dim_cap = BifilteredComplex::kDefaultDimCap,
                                    std::optional<std::vector<double>> r_grid = std::nullopt);

// Radii at which the planar witness structure can change.
std::vector<double> planar_breakpoints(const std::vector<Point2>& points);

// E(Lambda, f) at (m, r). The pair (x, y) is vertex x * ny + y.
SimplicialComplex rectangle_complex(const DowkerDissimilarity& lambda, const SetBifiltration& f,
                                    double m, double r,
                                    std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// M(d, mu) at (m, r) = { x : mu(B(x, r)) >= m }.
PointSet measure_bifiltration_points(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                     double m, double r);

// Nerve of the sets B(y, r) cap M(d, mu)_{m,r}, y in the r-offset of
// M(d, mu)_{m,r}. Vertex universe = every point of the space.
SimplicialComplex cover_nerve(const FiniteMetricSpace& space, const DiscreteMeasure& mu, double m,
                              double r, std::size_t dim_cap = BifilteredComplex::kDefaultDimCap);

// Simplices sigma' cap S, each taking the pointwise max of the staircases of
// its preimages. Throws IndexOutOfRange unless S is inside the universe.
BifilteredComplex restrict_to_support(const BifilteredComplex& k, const PointSet& s);

// (m, r) -> K_{m, 2r}: every breakpoint is halved.
BifilteredComplex measure_dowker_reindex(const BifilteredComplex& nf);

}  // namespace ddcech
