#include "ddcech/bifiltered.hpp"

#include <algorithm>
#include <cmath>

#include "ddcech/errors.hpp"

namespace ddcech {

bool precedes(const Grade& a, const Grade& b) { return a.m >= b.m && a.r <= b.r; }

Staircase::Staircase(std::vector<Step> steps) : steps_(std::move(steps)) {
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const Step& s = steps_[k];
    if (std::isnan(s.r) || std::isnan(s.m) || s.r < 0.0) {
      throw InvalidStaircase("staircase step radius must be a nonnegative number");
    }
    if (k > 0 && !(steps_[k - 1].r < s.r && steps_[k - 1].m < s.m)) {
      throw InvalidStaircase("staircase steps must be strictly increasing in r and m");
    }
  }
}

Staircase Staircase::from_samples(std::span<const double> radii,
                                  std::span<const std::optional<double>> values) {
  if (radii.size() != values.size()) {
    throw DimensionMismatch("staircase samples: radii and values differ in length");
  }
  std::vector<Step> steps;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i - 1] < radii[i])) {
      throw InvalidStaircase("staircase sample radii must be strictly increasing");
    }
    if (!values[i]) {
      if (!steps.empty()) throw InvalidStaircase("simplex disappears as r grows");
      continue;
    }
    const double v = *values[i];
    if (steps.empty() || v > steps.back().m) {
      steps.push_back({radii[i], v});
    } else if (v < steps.back().m) {
      throw InvalidStaircase("staircase value decreases as r grows");
    }
  }
  Staircase out;
  out.steps_ = std::move(steps);
  return out;
}

Staircase Staircase::pointwise_max(const Staircase& a, const Staircase& b) {
  std::vector<double> radii;
  for (const Step& s : a.steps_) radii.push_back(s.r);
  for (const Step& s : b.steps_) radii.push_back(s.r);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<std::optional<double>> values;
  values.reserve(radii.size());
  for (double r : radii) {
    auto va = a.value(r);
    auto vb = b.value(r);
    if (va && vb) {
      values.push_back(std::max(*va, *vb));
    } else if (va) {
      values.push_back(va);
    } else {
      values.push_back(vb);
    }
  }
  return from_samples(radii, values);
}

std::optional<double> Staircase::value(double r) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), r,
                             [](double x, const Step& s) { return x < s.r; });
  if (it == steps_.begin()) return std::nullopt;
  return std::prev(it)->m;
}

double Staircase::level(double r) const {
  auto v = value(r);
  return v ? *v : -kInf;
}

bool Staircase::present_at(double m, double r) const {
  auto v = value(r);
  return v && *v >= m;
}

Staircase Staircase::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidStaircase("scale factor must be positive");
  Staircase out = *this;
  for (Step& s : out.steps_) s.r *= factor;
  return out;
}

BifilteredComplex::BifilteredComplex(PointSet universe, std::size_t dim_cap,
                                     std::map<Simplex, Staircase> entries)
    : universe_(make_point_set(std::move(universe))), dim_cap_(dim_cap) {
  for (auto& [s, st] : entries) {
    if (st.empty() || s.dim() > dim_cap_) continue;
    if (!is_subset(s.vertices(), universe_)) {
      throw IndexOutOfRange("simplex " + s.to_string() + " leaves the vertex universe");
    }
    entries_.emplace(s, std::move(st));
  }
}

const Staircase* BifilteredComplex::staircase(const Simplex& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

SimplicialComplex BifilteredComplex::complex_at(double m, double r) const {
  std::vector<Simplex> present;
  for (const auto& [s, st] : entries_) {
    if (st.present_at(m, r)) present.push_back(s);
  }
  return SimplicialComplex(universe_, std::move(present));
}

CriticalGrid BifilteredComplex::critical_grid() const {
  CriticalGrid g;
  for (const auto& [s, st] : entries_) {
    for (const Step& step : st.steps()) {
      g.r.push_back(step.r);
      g.m.push_back(step.m);
    }
  }
  for (auto* v : {&g.r, &g.m}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return g;
}

void BifilteredComplex::validate() const {
  for (const auto& [s, st] : entries_) {
    for (const Simplex& f : s.facets()) {
      const Staircase* face = staircase(f);
      if (face == nullptr) {
        throw NotDownwardClosed("face " + f.to_string() + " of " + s.to_string() +
                                " has no staircase");
      }
      for (const Step& step : st.steps()) {
        if (face->level(step.r) < step.m) {
          throw NotDownwardClosed("face " + f.to_string() + " of " + s.to_string() +
                                  " is absent at (m=" + std::to_string(step.m) +
                                  ", r=" + std::to_string(step.r) + ")");
        }
      }
    }
  }
}

BifilteredComplex relabel(const BifilteredComplex& k, std::span<const Index> relabel) {
  std::vector<Index> uni;
  for (Index v : k.universe()) {
    if (v >= relabel.size()) throw IndexOutOfRange("relabel map does not cover the universe");
    uni.push_back(relabel[v]);
  }
  PointSet universe = make_point_set(uni);
  if (universe.size() != k.universe().size()) throw Error("relabel map is not injective");
  std::map<Simplex, Staircase> entries;
  for (const auto& [s, st] : k.entries()) entries.emplace(s.image(relabel), st);
  return BifilteredComplex(std::move(universe), k.dim_cap(), std::move(entries));
}

std::vector<double> with_midpoints(std::span<const double> values) {
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back(values[i]);
    if (i + 1 < values.size() && std::isfinite(values[i]) && std::isfinite(values[i + 1])) {
      out.push_back(0.5 * (values[i] + values[i + 1]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ForwardShift ForwardShift::additive(double eps) {
  if (!(eps >= 0.0)) throw InvalidShift("shift amount must be nonnegative");
  return ForwardShift("additive(" + std::to_string(eps) + ")",
                      [eps](const Grade& g) { return Grade{g.m - eps, g.r + eps}; });
}

ForwardShift ForwardShift::doubling(double eps) {
  if (!(eps >= 0.0)) throw InvalidShift("shift amount must be nonnegative");
  return ForwardShift("doubling(" + std::to_string(eps) + ")",
                      [eps](const Grade& g) { return Grade{g.m - eps, 2.0 * (g.r + eps)}; });
}

ForwardShift ForwardShift::custom(std::string name, Map map) {
  return ForwardShift(std::move(name), std::move(map));
}

ForwardShift ForwardShift::then(const ForwardShift& next) const {
  Map first = map_;
  Map second = next.map_;
  return ForwardShift(next.name_ + " o " + name_,
                      [first, second](const Grade& g) { return second(first(g)); });
}

void ForwardShift::validate_on(std::span<const Grade> samples) const {
  for (const Grade& g : samples) {
    if (!precedes(g, map_(g))) {
      throw InvalidShift(name_ + " moves (m=" + std::to_string(g.m) +
                         ", r=" + std::to_string(g.r) + ") backward");
    }
  }
  for (const Grade& a : samples) {
    for (const Grade& b : samples) {
      if (precedes(a, b) && !precedes(map_(a), map_(b))) {
        throw InvalidShift(name_ + " is not order preserving");
      }
    }
  }
}

MonotonePath::MonotonePath(std::vector<PathPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw NonMonotonePath("a path needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const PathPoint& p = points_[i];
    if (std::isnan(p.grade.m) || std::isnan(p.grade.r) || std::isnan(p.t) || p.grade.r < 0.0) {
      throw NonMonotonePath("path point " + std::to_string(i) + " is not a valid grade");
    }
    if (i == 0) continue;
    const PathPoint& q = points_[i - 1];
    if (p.grade.m > q.grade.m) {
      throw NonMonotonePath("m increases at path point " + std::to_string(i));
    }
    if (p.grade.r < q.grade.r) {
      throw NonMonotonePath("r decreases at path point " + std::to_string(i));
    }
    if (!(p.t > q.t)) {
      throw NonMonotonePath("path labels must increase strictly (point " + std::to_string(i) +
                            ")");
    }
  }
}

MonotonePath MonotonePath::from_grades(const std::vector<Grade>& grades) {
  std::vector<PathPoint> pts;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    pts.push_back({grades[i], static_cast<double>(i)});
  }
  return MonotonePath(std::move(pts));
}

MonotonePath horizontal_path(const BifilteredComplex& k, double m) {
  std::vector<double> radii = k.critical_grid().r;
  radii.push_back(0.0);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<PathPoint> pts;
  for (double r : radii) pts.push_back({{m, r}, r});
  return MonotonePath(std::move(pts));
}

double entry_time(const Staircase& s, const DiagonalSlice& slice) {
  // Present at t iff some step has r_k <= r0 + t and m_k >= m0 - t.
  double best = kInf;
  for (const Step& step : s.steps()) {
    const double t = std::max({0.0, step.r - slice.r0, slice.m0 - step.m});
    best = std::min(best, t);
  }
  return best;
}

}  // namespace ddcech
