#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddcech/metric_space.hpp"
#include "ddcech/simplicial.hpp"

namespace ddcech {

// A parameter in R^op x [0, inf]: (m, r) <= (m', r') iff m >= m' and r <= r'.
struct Grade {
  double m = 0.0;
  double r = 0.0;

  friend bool operator==(const Grade&, const Grade&) = default;
};

// (m, r) <= (m', r') in the bifiltration order.
bool precedes(const Grade& a, const Grade& b);

struct Step {
  double r = 0.0;
  double m = 0.0;

  friend bool operator==(const Step&, const Step&) = default;
};

// Per-simplex presence function. The simplex is present at (m, r) iff
// value(r) >= m; value(r) is the m of the last step with r_k <= r, and the
// simplex is absent (as opposed to present at m = 0) before the first step.
class Staircase {
 public:
  Staircase() = default;  // never present
  // Throws InvalidStaircase unless r and m are both strictly increasing.
  explicit Staircase(std::vector<Step> steps);

  // Builds a staircase from values sampled at strictly increasing radii.
  // Values must be nondecreasing once present; equal values are merged.
  static Staircase from_samples(std::span<const double> radii,
                                std::span<const std::optional<double>> values);

  static Staircase pointwise_max(const Staircase& a, const Staircase& b);

  bool empty() const { return steps_.empty(); }
  const std::vector<Step>& steps() const { return steps_; }
  double start_r() const { return steps_.empty() ? kInf : steps_.front().r; }

  std::optional<double> value(double r) const;
  // value(r), or -inf when absent.
  double level(double r) const;
  bool present_at(double m, double r) const;

  // Multiplies every breakpoint by `factor` (> 0).
  Staircase scaled(double factor) const;

  friend bool operator==(const Staircase&, const Staircase&) = default;

 private:
  std::vector<Step> steps_;
};

struct CriticalGrid {
  std::vector<double> r;  // sorted distinct breakpoints
  std::vector<double> m;  // sorted distinct staircase values
};

// Map from simplices to staircases, truncated at dim_cap.
class BifilteredComplex {
 public:
  static constexpr std::size_t kDefaultDimCap = 3;

  BifilteredComplex() = default;
  // Drops never-present entries and simplices above dim_cap.
  BifilteredComplex(PointSet universe, std::size_t dim_cap,
                    std::map<Simplex, Staircase> entries);

  const PointSet& universe() const { return universe_; }
  std::size_t dim_cap() const { return dim_cap_; }
  const std::map<Simplex, Staircase>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Staircase* staircase(const Simplex& s) const;

  SimplicialComplex complex_at(double m, double r) const;
  SimplicialComplex complex_at(const Grade& g) const { return complex_at(g.m, g.r); }

  CriticalGrid critical_grid() const;

  // Checks that every face has a staircase dominating its cofaces.
  // Throws NotDownwardClosed with the offending pair.
  void validate() const;

  friend bool operator==(const BifilteredComplex&, const BifilteredComplex&) = default;

 private:
  PointSet universe_;
  std::size_t dim_cap_ = kDefaultDimCap;
  std::map<Simplex, Staircase> entries_;
};

// Renames vertices through `relabel` (old index -> new index, injective).
BifilteredComplex relabel(const BifilteredComplex& k, std::span<const Index> relabel);

// Sorted grid values with the midpoints of consecutive finite values inserted.
std::vector<double> with_midpoints(std::span<const double> values);

// Order preserving self map of R^op x [0, inf] with alpha(g) >= g.
class ForwardShift {
 public:
  using Map = std::function<Grade(const Grade&)>;

  // (m - eps, r + eps)
  static ForwardShift additive(double eps);
  // (m - eps, 2 (r + eps))
  static ForwardShift doubling(double eps);
  static ForwardShift custom(std::string name, Map map);

  Grade operator()(const Grade& g) const { return map_(g); }
  const std::string& name() const { return name_; }

  // The shift g -> next(this(g)).
  ForwardShift then(const ForwardShift& next) const;

  // Checks alpha(g) >= g for every sample and order preservation for every
  // comparable pair of samples. Throws InvalidShift.
  void validate_on(std::span<const Grade> samples) const;

 private:
  ForwardShift(std::string name, Map map) : name_(std::move(name)), map_(std::move(map)) {}

  std::string name_;
  Map map_;
};

struct PathPoint {
  Grade grade;
  double t = 0.0;  // label reported in barcodes
};

// Finite sequence of grades with m nonincreasing, r nondecreasing and labels t
// strictly increasing.
class MonotonePath {
 public:
  // Throws NonMonotonePath.
  explicit MonotonePath(std::vector<PathPoint> points);

  // Labels default to 0, 1, 2, ...
  static MonotonePath from_grades(const std::vector<Grade>& grades);

  const std::vector<PathPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<PathPoint> points_;
};

// m fixed, r running over 0 and every critical radius of k; t = r.
MonotonePath horizontal_path(const BifilteredComplex& k, double m);

// The line t -> (m0 - t, r0 + t) for t >= 0.
struct DiagonalSlice {
  double m0 = 0.0;
  double r0 = 0.0;
};

// First t >= 0 at which the staircase is present on the slice (inf if never).
// Computed from the steps directly, so slice barcodes are exact in t.
double entry_time(const Staircase& s, const DiagonalSlice& slice);

}  // namespace ddcech
