#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ddcech/metric_space.hpp"

namespace ddcech {

inline constexpr std::size_t kDefaultSupportCap = 15;

// Smallest eps with mu_i(B) <= mu_j(B^eps) + eps for all B and both
// directions, B^eps the closed eps-offset. Weights are not normalized.
// Throws DifferentSpaces if the measures do not live on `space`, and
// SupportTooLarge if the union of the supports exceeds `cap`.
double prohorov_distance(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                         const DiscreteMeasure& mu1, std::size_t cap = kDefaultSupportCap);

struct ProhorovCheck {
  bool holds = true;
  // min over B and directions of mu_j(B^eps) + eps - mu_i(B).
  double worst_slack = kInf;
  PointSet witness;     // a B attaining worst_slack
  int direction = 0;    // 0: mu0(B) <= mu1(B^eps) + eps, 1: the reverse
};

ProhorovCheck prohorov_check(const FiniteMetricSpace& space, const DiscreteMeasure& mu0,
                             const DiscreteMeasure& mu1, double eps,
                             std::size_t cap = kDefaultSupportCap);

// Weight of z is the total weight of iota^{-1}(z). Throws IndexOutOfRange.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const std::vector<Index>& iota,
                            std::size_t target_size);

// For each point of `space`, the point of `target` closest to it, ties going
// to the lowest index. Throws EmptyTarget.
std::vector<Index> nearest_neighbor_projection(const FiniteMetricSpace& space,
                                               const PointSet& target);

// Distance preserving maps iota0: X0 -> M and iota1: X1 -> M.
struct CommonEmbedding {
  FiniteMetricSpace ambient;
  std::vector<Index> iota0;
  std::vector<Index> iota1;

  // Throws InvalidEmbedding unless both maps preserve distances within
  // kTolerance.
  void validate(const FiniteMetricSpace& x0, const FiniteMetricSpace& x1) const;

  PointSet image0() const;
  PointSet image1() const;
};

struct ProjectionReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_slack = kInf;  // min of 2 d(i1 x, i0 y) - d(i0 p0 i1 x, i0 y)
  double worst_ratio = 0.0;   // max of the ratio lhs / d(i1 x, i0 y), over rhs > 0
  std::optional<std::pair<Index, Index>> witness;  // (x in X1, y in X0)
};

// Checks d(i0 p0 i1 x, i0 y) <= 2 d(i1 x, i0 y) for all x in X1, y in X0. p0
// maps ambient points to ambient points of the image of iota0.
ProjectionReport check_projection_inequality(const CommonEmbedding& e,
                                             const std::vector<Index>& p0);

// Prohorov distance of the two pushforwards: an upper bound for the
// Gromov-Prohorov distance.
double gp_upper_bound(const FiniteMetricSpace& x0, const DiscreteMeasure& mu0,
                      const FiniteMetricSpace& x1, const DiscreteMeasure& mu1,
                      const CommonEmbedding& e, std::size_t cap = kDefaultSupportCap);

}  // namespace ddcech
