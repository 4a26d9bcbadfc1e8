#include "ddcech/bifiltrations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "ddcech/errors.hpp"

namespace ddcech {

namespace {

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void warn_if_large(std::size_t n, const char* what) {
  if (n > 20) {
    std::clog << "warning: " << what << " on " << n
              << " points enumerates exponentially many simplices\n";
  }
}

std::vector<double> with_zero(std::vector<double> v) {
  v.push_back(0.0);
  sort_unique(v);
  return v;
}

PointSet require_support(const FiniteMetricSpace& space, const DiscreteMeasure& mu) {
  if (mu.size() != space.size()) {
    throw DimensionMismatch("measure has " + std::to_string(mu.size()) + " weights for a " +
                            std::to_string(space.size()) + "-point space");
  }
  PointSet s = mu.support();
  if (s.empty()) throw EmptySupport("measure has empty support");
  return s;
}

}  // namespace

DowkerDissimilarity::DowkerDissimilarity(std::size_t nx, std::size_t ny, std::vector<double> values)
    : nx_(nx), ny_(ny), v_(std::move(values)) {
  if (v_.size() != nx_ * ny_) {
    throw DimensionMismatch("dissimilarity needs " + std::to_string(nx_ * ny_) + " entries");
  }
  for (double d : v_) {
    if (std::isnan(d) || d < 0.0) throw NegativeDistanceError("dissimilarity entry is negative");
  }
}

DowkerDissimilarity DowkerDissimilarity::from_metric(const FiniteMetricSpace& space) {
  PointSet all = iota_set(space.size());
  return from_metric(space, all, all);
}

DowkerDissimilarity DowkerDissimilarity::from_metric(const FiniteMetricSpace& space,
                                                     const PointSet& rows, const PointSet& cols) {
  std::vector<double> v;
  v.reserve(rows.size() * cols.size());
  for (Index x : rows) {
    for (Index y : cols) v.push_back(space.distance(x, y));
  }
  return DowkerDissimilarity(rows.size(), cols.size(), std::move(v));
}

PointSet DowkerDissimilarity::ball(Index x, double r) const {
  if (x >= nx_) throw IndexOutOfRange("row index " + std::to_string(x) + " out of range");
  PointSet out;
  for (Index y = 0; y < ny_; ++y) {
    if ((*this)(x, y) <= r) out.push_back(y);
  }
  return out;
}

PointSet DowkerDissimilarity::common_ball(const Simplex& sigma, double r) const {
  for (Index x : sigma) {
    if (x >= nx_) throw IndexOutOfRange("row index " + std::to_string(x) + " out of range");
  }
  PointSet out;
  for (Index y = 0; y < ny_; ++y) {
    bool inside = true;
    for (Index x : sigma) {
      if (!((*this)(x, y) <= r)) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(y);
  }
  return out;
}

std::vector<double> DowkerDissimilarity::distinct_values() const { return with_zero(v_); }

DowkerDissimilarity DowkerDissimilarity::transpose() const {
  std::vector<double> t(v_.size());
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t y = 0; y < ny_; ++y) t[y * nx_ + x] = v_[x * ny_ + y];
  }
  return DowkerDissimilarity(ny_, nx_, std::move(t));
}

SetBifiltration::SetBifiltration(std::size_t x_size, std::vector<double> breakpoints, Fn fn,
                                 std::string kind)
    : x_size_(x_size), breakpoints_(with_zero(std::move(breakpoints))), fn_(std::move(fn)),
      kind_(std::move(kind)) {}

SetBifiltration degree_bifiltration(const DowkerDissimilarity& lambda, const DiscreteMeasure& mu) {
  if (mu.size() != lambda.ny()) {
    throw DimensionMismatch("measure has " + std::to_string(mu.size()) +
                            " weights but the dissimilarity has " + std::to_string(lambda.ny()) +
                            " columns");
  }
  auto fn = [lambda, mu](const Simplex& sigma, double r) {
    double total = 0.0;
    for (Index y : lambda.common_ball(sigma, r)) total += mu[y];
    return total;
  };
  return SetBifiltration(lambda.nx(), lambda.distinct_values(), fn, "degree");
}

SetBifiltration dtm_bifiltration(const DowkerDissimilarity& lambda, const DiscreteMeasure& mu,
                                 double p) {
  if (!(p > 0.0)) throw NonPositiveP("exponent p must be positive");
  if (mu.size() != lambda.ny()) {
    throw DimensionMismatch("measure has " + std::to_string(mu.size()) +
                            " weights but the dissimilarity has " + std::to_string(lambda.ny()) +
                            " columns");
  }
  auto fn = [lambda, mu, p](const Simplex& sigma, double r) {
    double total = 0.0;
    for (Index y : lambda.common_ball(sigma, r)) {
      double near = kInf;
      for (Index x : sigma) near = std::min(near, lambda(x, y));
      if (near > 0.0 && mu[y] > 0.0) total += std::pow(near, p) * mu[y];
    }
    return std::pow(total, 1.0 / p);
  };
  return SetBifiltration(lambda.nx(), lambda.distinct_values(), fn, "dtm");
}

SetBifiltration table_bifiltration(std::size_t x_size, std::map<Simplex, Staircase> table) {
  std::vector<double> radii;
  for (const auto& [s, st] : table) {
    for (Index v : s) {
      if (v >= x_size) throw IndexOutOfRange("table simplex " + s.to_string() + " out of range");
    }
    for (const Step& step : st.steps()) radii.push_back(step.r);
  }
  auto fn = [table = std::move(table)](const Simplex& sigma, double r) {
    auto it = table.find(sigma);
    if (it == table.end()) return 0.0;
    auto v = it->second.value(r);
    return v ? *v : 0.0;
  };
  return SetBifiltration(x_size, std::move(radii), fn, "table");
}

std::optional<std::string> find_monotonicity_violation(const SetBifiltration& f,
                                                       std::size_t dim_cap) {
  const auto& radii = f.breakpoints();
  for (const Simplex& s : all_simplices(iota_set(f.x_size()), dim_cap)) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double v = f(s, radii[k]);
      if (std::isnan(v) || v < 0.0) {
        return "f(" + s.to_string() + ", " + fmt(radii[k]) + ") is not in [0, inf]";
      }
      if (k + 1 < radii.size() && v > f(s, radii[k + 1])) {
        return "f(" + s.to_string() + ", r) decreases between r = " + fmt(radii[k]) +
               " and r = " + fmt(radii[k + 1]);
      }
      for (const Simplex& face : s.facets()) {
        if (v > f(face, radii[k])) {
          return "f(" + s.to_string() + ", " + fmt(radii[k]) + ") exceeds the value on face " +
                 face.to_string();
        }
      }
    }
  }
  return std::nullopt;
}

DowkerBifiltrationPair::DowkerBifiltrationPair(DowkerDissimilarity lambda, SetBifiltration f,
                                               std::size_t dim_cap)
    : lambda_(std::move(lambda)), f_(std::move(f)) {
  if (f_.x_size() != lambda_.nx()) {
    throw DimensionMismatch("set bifiltration and dissimilarity disagree on |X|");
  }
  std::vector<double> radii = f_.breakpoints();
  for (double r : lambda_.distinct_values()) radii.push_back(r);
  sort_unique(radii);
  for (const Simplex& s : all_simplices(iota_set(lambda_.nx()), dim_cap)) {
    for (double r : radii) {
      if (f_(s, r) > 0.0 && lambda_.common_ball(s, r).empty()) {
        throw DowkerConditionViolation("f(" + s.to_string() + ", " + fmt(r) +
                                       ") > 0 but the common ball is empty");
      }
    }
  }
}

BifilteredComplex nerve_bifiltration(const SetBifiltration& f, std::size_t dim_cap) {
  warn_if_large(f.x_size(), "nerve");
  const auto& radii = f.breakpoints();
  std::map<Simplex, Staircase> entries;
  std::vector<std::optional<double>> values(radii.size());
  for (const Simplex& s : all_simplices(iota_set(f.x_size()), dim_cap)) {
    for (std::size_t k = 0; k < radii.size(); ++k) values[k] = f(s, radii[k]);
    entries.emplace(s, Staircase::from_samples(radii, values));
  }
  return BifilteredComplex(iota_set(f.x_size()), dim_cap, std::move(entries));
}

BifilteredComplex dowker_dual(const DowkerDissimilarity& lambda, const SetBifiltration& f,
                              std::size_t dim_cap) {
  if (f.x_size() != lambda.nx()) {
    throw DimensionMismatch("set bifiltration and dissimilarity disagree on |X|");
  }
  std::vector<double> radii = f.breakpoints();
  for (double r : lambda.distinct_values()) radii.push_back(r);
  sort_unique(radii);

  const std::size_t nx = lambda.nx();
  std::vector<std::vector<double>> fx(nx, std::vector<double>(radii.size()));
  for (Index x = 0; x < nx; ++x) {
    const Simplex vx{x};
    for (std::size_t k = 0; k < radii.size(); ++k) fx[x][k] = f(vx, radii[k]);
  }

  std::map<Simplex, Staircase> entries;
  std::vector<double> reach(nx);
  std::vector<std::optional<double>> values(radii.size());
  auto keep = [&](const Simplex& tau) {
    for (Index x = 0; x < nx; ++x) {
      double t = 0.0;
      for (Index y : tau) t = std::max(t, lambda(x, y));
      reach[x] = t;
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
      std::optional<double> best;
      for (Index x = 0; x < nx; ++x) {
        if (reach[x] <= radii[k] && (!best || fx[x][k] > *best)) best = fx[x][k];
      }
      values[k] = best;
    }
    Staircase st = Staircase::from_samples(radii, values);
    if (st.empty()) return false;
    entries.emplace(tau, std::move(st));
    return true;
  };
  warn_if_large(lambda.ny(), "Dowker dual");
  enumerate_closed(iota_set(lambda.ny()), dim_cap, keep);
  return BifilteredComplex(iota_set(lambda.ny()), dim_cap, std::move(entries));
}

BifilteredComplex intrinsic_dc(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                               std::size_t dim_cap) {
  PointSet s = require_support(space, mu);
  FiniteMetricSpace sub = space.subspace(s);
  DowkerDissimilarity lambda = DowkerDissimilarity::from_metric(sub);
  BifilteredComplex k = dowker_dual(lambda, degree_bifiltration(lambda, mu.restrict_to(s)), dim_cap);
  return relabel(k, s);
}

BifilteredComplex ambient_dc_finite(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                    std::size_t dim_cap) {
  PointSet s = require_support(space, mu);
  DowkerDissimilarity lambda =
      DowkerDissimilarity::from_metric(space, iota_set(space.size()), s);
  BifilteredComplex k = dowker_dual(lambda, degree_bifiltration(lambda, mu.restrict_to(s)), dim_cap);
  return relabel(k, s);
}

namespace {

std::optional<Point2> circumcenter(const Point2& a, const Point2& b, const Point2& c) {
  const double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0) return std::nullopt;
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return Point2{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

using Mask = std::uint64_t;

Mask coverage(const std::vector<Point2>& pts, const Point2& c, double r) {
  Mask m = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (euclidean(c, pts[i]) <= r + kTolerance) m |= Mask{1} << i;
  }
  return m;
}

// Coverage sets of radius-r disks not contained in another candidate's set.
std::vector<Mask> maximal_coverages(const std::vector<Point2>& pts, double r) {
  std::vector<Point2> cand(pts.begin(), pts.end());
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(pts[i], pts[j]);
      if (d > 2.0 * r + kTolerance) continue;
      const Point2 mid{0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y)};
      cand.push_back(mid);
      const double h = std::sqrt(std::max(0.0, r * r - 0.25 * d * d));
      const double ux = -(pts[j].y - pts[i].y) / d, uy = (pts[j].x - pts[i].x) / d;
      cand.push_back({mid.x + h * ux, mid.y + h * uy});
      cand.push_back({mid.x - h * ux, mid.y - h * uy});
      for (std::size_t k = j + 1; k < n; ++k) {
        if (auto c = circumcenter(pts[i], pts[j], pts[k])) {
          if (euclidean(*c, pts[i]) <= r + kTolerance) cand.push_back(*c);
        }
      }
    }
  }
  std::vector<Mask> masks;
  masks.reserve(cand.size());
  for (const Point2& c : cand) masks.push_back(coverage(pts, c, r));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Mask> out;
  for (Mask a : masks) {
    bool dominated = false;
    for (Mask b : masks) {
      if (b != a && (a & b) == a) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

}  // namespace

std::vector<double> planar_breakpoints(const std::vector<Point2>& pts) {
  std::vector<double> out{0.0};
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(pts[i], pts[j]);
      out.push_back(d);
      out.push_back(0.5 * d);
      for (std::size_t k = j + 1; k < n; ++k) {
        if (auto c = circumcenter(pts[i], pts[j], pts[k])) out.push_back(euclidean(*c, pts[i]));
      }
    }
  }
  sort_unique(out);
  return out;
}

BifilteredComplex ambient_dc_planar(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                    std::size_t dim_cap, std::optional<std::vector<double>> r_grid) {
  if (!space.coords()) throw MissingCoordinates("planar construction needs point coordinates");
  PointSet s = require_support(space, mu);
  if (s.size() > 64) throw Error("planar construction supports at most 64 support points");
  std::vector<Point2> pts;
  std::vector<double> w;
  for (Index i : s) {
    pts.push_back((*space.coords())[i]);
    w.push_back(mu[i]);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (euclidean(pts[i], pts[j]) <= kTolerance) {
        throw DegenerateConfiguration("support points " + std::to_string(s[i]) + " and " +
                                      std::to_string(s[j]) + " coincide");
      }
    }
  }
  std::vector<double> radii;
  if (r_grid) {
    for (double r : *r_grid) {
      if (std::isnan(r) || r < 0.0) throw InvalidStaircase("radius grid must be nonnegative");
    }
    radii = with_zero(*r_grid);
  } else {
    radii = planar_breakpoints(pts);
  }

  std::vector<std::vector<std::pair<Mask, double>>> cover(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    for (Mask m : maximal_coverages(pts, radii[k])) {
      double mass = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (m >> i & 1U) mass += w[i];
      }
      cover[k].push_back({m, mass});
    }
  }

  std::map<Simplex, Staircase> entries;
  std::vector<std::optional<double>> values(radii.size());
  auto keep = [&](const Simplex& tau) {
    Mask t = 0;
    for (Index v : tau) t |= Mask{1} << v;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      std::optional<double> best;
      for (const auto& [m, mass] : cover[k]) {
        if ((m & t) == t && (!best || mass > *best)) best = mass;
      }
      values[k] = best;
    }
    Staircase st = Staircase::from_samples(radii, values);
    if (st.empty()) return false;
    entries.emplace(tau, std::move(st));
    return true;
  };
  enumerate_closed(iota_set(pts.size()), dim_cap, keep);
  return relabel(BifilteredComplex(iota_set(pts.size()), dim_cap, std::move(entries)), s);
}

SimplicialComplex rectangle_complex(const DowkerDissimilarity& lambda, const SetBifiltration& f,
                                    double m, double r, std::size_t dim_cap) {
  const std::size_t nx = lambda.nx(), ny = lambda.ny();
  if (f.x_size() != nx) throw DimensionMismatch("set bifiltration and dissimilarity disagree on |X|");
  std::vector<Index> witnesses;
  for (Index x = 0; x < nx; ++x) {
    if (f(Simplex{x}, r) >= m) witnesses.push_back(x);
  }
  std::map<std::vector<Index>, bool> in_nerve;
  auto nerve_has = [&](std::vector<Index> xs) {
    xs = make_point_set(std::move(xs));
    auto it = in_nerve.find(xs);
    if (it != in_nerve.end()) return it->second;
    const bool ok = f(Simplex::from_sorted(xs), r) >= m;
    in_nerve.emplace(std::move(xs), ok);
    return ok;
  };
  auto dual_has = [&](const std::vector<Index>& ys) {
    for (Index x : witnesses) {
      bool inside = true;
      for (Index y : ys) {
        if (!(lambda(x, y) <= r)) {
          inside = false;
          break;
        }
      }
      if (inside) return true;
    }
    return false;
  };
  std::vector<Index> vertices;
  for (Index x = 0; x < nx; ++x) {
    for (Index y = 0; y < ny; ++y) {
      if (lambda(x, y) <= r) vertices.push_back(static_cast<Index>(x * ny + y));
    }
  }
  auto keep = [&](const Simplex& u) {
    std::vector<Index> xs, ys;
    for (Index v : u) {
      xs.push_back(v / static_cast<Index>(ny));
      ys.push_back(v % static_cast<Index>(ny));
    }
    return nerve_has(xs) && dual_has(make_point_set(ys));
  };
  return SimplicialComplex(iota_set(nx * ny), enumerate_closed(vertices, dim_cap, keep));
}

PointSet measure_bifiltration_points(const FiniteMetricSpace& space, const DiscreteMeasure& mu,
                                     double m, double r) {
  if (mu.size() != space.size()) throw DimensionMismatch("measure and space sizes differ");
  PointSet out;
  for (Index x = 0; x < space.size(); ++x) {
    if (ball_mass(space, mu, x, r) >= m) out.push_back(x);
  }
  return out;
}

SimplicialComplex cover_nerve(const FiniteMetricSpace& space, const DiscreteMeasure& mu, double m,
                              double r, std::size_t dim_cap) {
  PointSet level = measure_bifiltration_points(space, mu, m, r);
  PointSet vertices = offset(space, level, r);
  auto keep = [&](const Simplex& tau) {
    for (Index x : level) {
      bool inside = true;
      for (Index y : tau) {
        if (!(space(x, y) <= r)) {
          inside = false;
          break;
        }
      }
      if (inside) return true;
    }
    return false;
  };
  return SimplicialComplex(iota_set(space.size()), enumerate_closed(vertices, dim_cap, keep));
}

BifilteredComplex restrict_to_support(const BifilteredComplex& k, const PointSet& s) {
  PointSet target = make_point_set(s);
  if (!is_subset(target, k.universe())) {
    throw IndexOutOfRange("restriction set is not inside the vertex universe");
  }
  std::map<Simplex, Staircase> entries;
  for (const auto& [sigma, st] : k.entries()) {
    std::vector<Index> kept;
    std::set_intersection(sigma.begin(), sigma.end(), target.begin(), target.end(),
                          std::back_inserter(kept));
    if (kept.empty()) continue;
    Simplex face = Simplex::from_sorted(std::move(kept));
    auto it = entries.find(face);
    if (it == entries.end()) {
      entries.emplace(face, st);
    } else {
      it->second = Staircase::pointwise_max(it->second, st);
    }
  }
  return BifilteredComplex(target, k.dim_cap(), std::move(entries));
}

BifilteredComplex measure_dowker_reindex(const BifilteredComplex& nf) {
  std::map<Simplex, Staircase> entries;
  for (const auto& [s, st] : nf.entries()) entries.emplace(s, st.scaled(0.5));
  return BifilteredComplex(nf.universe(), nf.dim_cap(), std::move(entries));
}

}  // namespace ddcech
