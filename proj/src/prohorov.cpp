#include "ddcech/prohorov.hpp"

#include <algorithm>
#include <cmath>

#include "ddcech/errors.hpp"

namespace ddcech {

namespace {

void check_inputs(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                  const DiscreteMeasure& mu1, std::size_t cap) {
  if (mu0.size() != space.size() || mu1.size() != space.size()) {
    throw DifferentSpaces("both measures must be indexed by the same " +
                          std::to_string(space.size()) + "-point space");
  }
  PointSet s0 = mu0.support(), s1 = mu1.support();
  PointSet u;
  std::set_union(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(u));
  if (u.size() > cap || cap > 30) {
    throw SupportTooLarge("combined support has " + std::to_string(u.size()) +
                          " points, above the exact-computation cap of " + std::to_string(cap) +
                          "; use a check at a candidate eps instead");
  }
}

// Visits every nonempty B inside the support of `from`, handing over mu_i(B)
// and the sorted (distance to B, weight) list of the support of `to`. Depth
// first, so memory stays linear in the support size.
template <class Visit>
void for_each_subset(const FiniteMetricSpace& space, const DiscreteMeasure& from,
                     const DiscreteMeasure& to, Visit visit) {
  const PointSet si = from.support(), sj = to.support();
  const std::size_t k = si.size();
  // dist[d] holds the distances to the first d chosen points.
  std::vector<std::vector<double>> dist(k + 1, std::vector<double>(sj.size(), kInf));
  std::vector<double> mass(k + 1, 0.0);
  std::vector<std::pair<double, double>> reach(sj.size());
  PointSet members;
  auto go = [&](auto&& self, std::size_t next) -> void {
    for (std::size_t i = next; i < k; ++i) {
      const std::size_t d = members.size();
      members.push_back(si[i]);
      mass[d + 1] = mass[d] + from[si[i]];
      for (std::size_t y = 0; y < sj.size(); ++y) {
        dist[d + 1][y] = std::min(dist[d][y], space(si[i], sj[y]));
        reach[y] = {dist[d + 1][y], to[sj[y]]};
      }
      std::sort(reach.begin(), reach.end());
      visit(members, mass[d + 1], reach);
      self(self, i + 1);
      members.pop_back();
    }
  };
  go(go, 0);
}

// Least eps with mass <= (weight within eps) + eps.
double least_eps(double mass, const std::vector<std::pair<double, double>>& reach) {
  double best = mass;  // t = 0 with nothing reached yet is covered below
  double covered = 0.0;
  std::size_t y = 0;
  // Breakpoints: 0 and every finite distance to B.
  double t = 0.0;
  while (true) {
    while (y < reach.size() && reach[y].first <= t) covered += reach[y++].second;
    best = std::min(best, std::max(t, mass - covered));
    if (y == reach.size() || std::isinf(reach[y].first)) break;
    t = reach[y].first;
  }
  return best;
}

double mass_within(const std::vector<std::pair<double, double>>& reach, double eps) {
  double covered = 0.0;
  for (const auto& [d, w] : reach) {
    if (d <= eps) covered += w;
  }
  return covered;
}

}  // namespace

double prohorov_distance(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                         const DiscreteMeasure& mu1, std::size_t cap) {
  check_inputs(space, mu0, mu1, cap);
  double eps = 0.0;
  auto visit = [&](const PointSet&, double mass, const std::vector<std::pair<double, double>>& r) {
    eps = std::max(eps, least_eps(mass, r));
  };
  for_each_subset(space, mu0, mu1, visit);
  for_each_subset(space, mu1, mu0, visit);
  return eps;
}

ProhorovCheck prohorov_check(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                             const DiscreteMeasure& mu1, double eps, std::size_t cap) {
  check_inputs(space, mu0, mu1, cap);
  ProhorovCheck out;
  for (int dir = 0; dir < 2; ++dir) {
    auto visit = [&](const PointSet& b, double mass,
                     const std::vector<std::pair<double, double>>& r) {
      const double slack = mass_within(r, eps) + eps - mass;
      if (slack < out.worst_slack) {
        out.worst_slack = slack;
        out.witness = b;
        out.direction = dir;
      }
    };
    if (dir == 0) {
      for_each_subset(space, mu0, mu1, visit);
    } else {
      for_each_subset(space, mu1, mu0, visit);
    }
  }
  out.holds = out.worst_slack >= 0.0;
  return out;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const std::vector<Index>& iota,
                            std::size_t target_size) {
  if (iota.size() != mu.size()) throw DimensionMismatch("map and measure sizes differ");
  std::vector<double> w(target_size, 0.0);
  for (std::size_t i = 0; i < iota.size(); ++i) {
    if (iota[i] >= target_size) throw IndexOutOfRange("map leaves the target space");
    w[iota[i]] += mu[static_cast<Index>(i)];
  }
  return DiscreteMeasure(std::move(w));
}

std::vector<Index> nearest_neighbor_projection(const FiniteMetricSpace& space,
                                               const PointSet& target) {
  if (target.empty()) throw EmptyTarget("projection target is empty");
  for (Index t : target) space.check_index(t);
  PointSet sorted = make_point_set(target);
  std::vector<Index> out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    Index best = sorted.front();
    for (Index t : sorted) {
      if (space(x, t) < space(x, best)) best = t;
    }
    out[x] = best;
  }
  return out;
}

void CommonEmbedding::validate(const FiniteMetricSpace& x0, const FiniteMetricSpace& x1) const {
  auto check = [&](const FiniteMetricSpace& x, const std::vector<Index>& iota, const char* name) {
    if (iota.size() != x.size()) {
      throw InvalidEmbedding(std::string(name) + " has the wrong number of points");
    }
    for (Index i : iota) {
      if (i >= ambient.size()) throw InvalidEmbedding(std::string(name) + " leaves the ambient space");
    }
    for (Index a = 0; a < x.size(); ++a) {
      for (Index b = 0; b < x.size(); ++b) {
        const double da = x(a, b), dm = ambient(iota[a], iota[b]);
        const bool same = (std::isinf(da) && std::isinf(dm)) || std::abs(da - dm) <= kTolerance;
        if (!same) {
          throw InvalidEmbedding(std::string(name) + " does not preserve the distance between " +
                                 std::to_string(a) + " and " + std::to_string(b));
        }
      }
    }
  };
  check(x0, iota0, "iota0");
  check(x1, iota1, "iota1");
}

PointSet CommonEmbedding::image0() const { return make_point_set(iota0); }
PointSet CommonEmbedding::image1() const { return make_point_set(iota1); }

ProjectionReport check_projection_inequality(const CommonEmbedding& e,
                                             const std::vector<Index>& p0) {
  if (p0.size() != e.ambient.size()) throw DimensionMismatch("projection must be defined on M");
  ProjectionReport rep;
  for (Index x = 0; x < e.iota1.size(); ++x) {
    const Index ix = e.iota1[x];
    for (Index y = 0; y < e.iota0.size(); ++y) {
      const Index iy = e.iota0[y];
      const double lhs = e.ambient(p0[ix], iy);
      const double rhs = e.ambient(ix, iy);
      const double slack = 2.0 * rhs - lhs;
      ++rep.checked;
      if (slack < -kTolerance) ++rep.violations;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.witness = {x, y};
      }
      if (rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
    }
  }
  return rep;
}

double gp_upper_bound(const FiniteMetricSpace& x0, const DiscreteMeasure& mu0,
                      const FiniteMetricSpace& x1, const DiscreteMeasure& mu1,
                      const CommonEmbedding& e, std::size_t cap) {
  e.validate(x0, x1);
  return prohorov_distance(e.ambient, pushforward(mu0, e.iota0, e.ambient.size()),
                           pushforward(mu1, e.iota1, e.ambient.size()), cap);
}

}  // namespace ddcech
