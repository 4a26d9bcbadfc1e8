#include <doctest.h>

#include <cmath>
#include <random>

#include "ddcech/bifiltrations.hpp"
#include "ddcech/errors.hpp"
#include "ddcech/homology.hpp"
#include "fixtures.hpp"

using namespace ddcech;

namespace {

SimplicialComplex full(std::size_t n, std::size_t dim) {
  return SimplicialComplex(iota_set(n), all_simplices(iota_set(n), dim));
}

SimplicialComplex random_complex(std::mt19937_64& rng, std::size_t n, double keep) {
  std::bernoulli_distribution coin(keep);
  std::vector<Simplex> gens;
  for (const Simplex& s : all_simplices(iota_set(n), 3)) {
    if (coin(rng)) gens.push_back(s);
  }
  return SimplicialComplex::closure(iota_set(n), gens);
}

// Matching cost by brute force over all partial matchings, for tiny inputs.
double brute_bottleneck(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  const std::size_t n = a.size();
  double best = kInf;
  std::vector<int> assign(n, -1);
  std::vector<bool> used(b.size(), false);
  auto half = [](const Interval& x) { return 0.5 * (x.death - x.birth); };
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double cost) {
    if (cost >= best) return;
    if (i == n) {
      double c = cost;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j]) c = std::max(c, half(b[j]));
      }
      best = std::min(best, c);
      return;
    }
    go(i + 1, std::max(cost, half(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      go(i + 1, std::max({cost, std::abs(a[i].birth - b[j].birth), std::abs(a[i].death - b[j].death)}));
      used[j] = false;
    }
  };
  go(0, 0.0);
  return best;
}

std::vector<Interval> random_bars(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::vector<Interval> out;
  for (std::size_t i = 0; i < n; ++i) {
    double b = std::round(u(rng) * 4) / 4, d = std::round(u(rng) * 4) / 4;
    if (b == d) d += 0.25;
    out.push_back({std::min(b, d), std::max(b, d)});
  }
  return out;
}

}  // namespace

TEST_CASE("betti numbers of small complexes") {
  CHECK(betti(full(3, 2), 2) == BettiVector{1, 0, 0});
  CHECK(betti(full(3, 1), 2) == BettiVector{1, 1, 0});
  CHECK(betti(full(4, 2), 2) == BettiVector{1, 0, 1});
  CHECK(betti(SimplicialComplex(), 2) == BettiVector{0, 0, 0});
  CHECK(betti(SimplicialComplex({0, 1, 2}, {Simplex{0}, Simplex{2}}), 1) == BettiVector{2, 0});
  // Two hollow triangles sharing a vertex.
  auto bowtie = SimplicialComplex::closure(
      iota_set(5), {Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}, Simplex{2, 3}, Simplex{3, 4},
                    Simplex{2, 4}});
  CHECK(betti(bowtie, 1) == BettiVector{1, 2});
}

TEST_CASE("euler characteristic matches alternating simplex counts") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto k = random_complex(rng, 7, 0.08);
    auto b = betti(k, 3);
    auto counts = k.counts_by_dim();
    long chi = 0, chi_b = 0;
    for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 ? -1L : 1L) * static_cast<long>(counts[d]);
    for (std::size_t d = 0; d < b.size(); ++d) chi_b += (d % 2 ? -1L : 1L) * static_cast<long>(b[d]);
    CHECK(chi == chi_b);
  }
}

TEST_CASE("betti table of the square at (1, 1)") {
  auto dc = intrinsic_dc(fixtures::square4(), DiscreteMeasure::counting(4));
  auto t = betti_table(dc, {1.0}, {1.0}, 2);
  CHECK(t.at(0, 0) == BettiVector{1, 0, 1});
  auto corner = betti_table(dc, {-1.0}, {kInf}, 2);
  CHECK(corner.at(0, 0) == betti(dc.complex_at(-kInf, kInf), 2));
  auto empty = betti_table(dc, {10.0}, {0.0}, 2);
  CHECK(empty.at(0, 0) == BettiVector{0, 0, 0});
  auto dflt = betti_table(dc, 2);
  CHECK(dflt.m_grid == with_midpoints(dc.critical_grid().m));
  CHECK(dflt.r_grid == with_midpoints(dc.critical_grid().r));
}

TEST_CASE("horizontal slice of the line") {
  auto dc = intrinsic_dc(fixtures::line3(), DiscreteMeasure::counting(3));
  auto bc = slice_persistence(dc, horizontal_path(dc, 1.0), 1);
  CHECK(bc.degree(0) == std::vector<Interval>{{0, 1}, {0, 2}, {0, kInf}});
  CHECK(bc.degree(1).empty());
}

TEST_CASE("constant path gives infinite bars matching betti") {
  auto dc = intrinsic_dc(fixtures::square4(), DiscreteMeasure::counting(4));
  MonotonePath p({{{1.0, 1.0}, 0.0}});
  auto bc = slice_persistence(dc, p, 2);
  CHECK(bc.degree(0) == std::vector<Interval>{{0, kInf}});
  CHECK(bc.degree(1).empty());
  CHECK(bc.degree(2) == std::vector<Interval>{{0, kInf}});
}

TEST_CASE("square slice has a two-sphere between 1 and sqrt 2") {
  auto dc = intrinsic_dc(fixtures::square4(), DiscreteMeasure::counting(4));
  auto bc = slice_persistence(dc, horizontal_path(dc, 1.0), 2);
  REQUIRE(bc.degree(2).size() == 1);
  CHECK(bc.degree(2)[0].birth == 1.0);
  CHECK(bc.degree(2)[0].death == std::sqrt(2.0));
}

TEST_CASE("slice ranks agree with betti along the path") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto space = FiniteMetricSpace::from_points(fixtures::random_cloud(rng, 6));
    auto dc = intrinsic_dc(space, DiscreteMeasure::counting(6));
    auto path = horizontal_path(dc, 2.0);
    auto bc = slice_persistence(dc, path, 2);
    for (const auto& p : path.points()) {
      auto b = betti(dc.complex_at(p.grade), 2);
      for (std::size_t d = 0; d <= 2; ++d) CHECK(bc.rank_at(d, p.t) == b[d]);
    }
    DiagonalSlice diag{4.0, 0.0};
    auto dbc = slice_persistence(dc, diag, 1);
    for (double t : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0}) {
      auto b = betti(dc.complex_at(diag.m0 - t, diag.r0 + t), 1);
      for (std::size_t d = 0; d <= 1; ++d) CHECK(dbc.rank_at(d, t) == b[d]);
    }
  }
}

TEST_CASE("bottleneck distance examples") {
  std::vector<Interval> a{{0, 2}};
  CHECK(bottleneck_distance(a, a) == 0.0);
  CHECK(bottleneck_distance(a, {}) == 1.0);
  CHECK(bottleneck_distance(a, {{0, 3}}) == 1.0);
  CHECK(bottleneck_distance({{0, kInf}}, {{0.5, kInf}}) == 0.5);
  CHECK(bottleneck_distance({{0, kInf}}, {}) == kInf);
  CHECK(bottleneck_distance(std::vector<Interval>{}, std::vector<Interval>{}) == 0.0);
}

TEST_CASE("bottleneck matches exhaustive matching and is a metric") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    auto a = random_bars(rng, trial % 4);
    auto b = random_bars(rng, (trial / 4) % 4);
    auto c = random_bars(rng, 2);
    const double ab = bottleneck_distance(a, b);
    CHECK(ab == brute_bottleneck(a, b));
    CHECK(ab == bottleneck_distance(b, a));
    CHECK(ab <= bottleneck_distance(a, c) + bottleneck_distance(c, b));
  }
}

TEST_CASE("inclusion induced isomorphisms") {
  auto tri = full(3, 1);
  CHECK(inclusion_induces_iso(tri, tri, 2) == std::vector<bool>{true, true, true});
  SimplicialComplex two({0, 1}, {Simplex{0}, Simplex{1}});
  auto edge = full(2, 1);
  CHECK(inclusion_induces_iso(two, edge, 1) == std::vector<bool>{false, true});
  CHECK(inclusion_induces_iso(tri, full(3, 2), 1) == std::vector<bool>{true, false});
  CHECK_THROWS_AS(inclusion_induces_iso(edge, two, 1), NotAnInclusion);
}

TEST_CASE("extending a path only extends bars") {
  auto dc = intrinsic_dc(fixtures::square4(), DiscreteMeasure::counting(4));
  auto path = horizontal_path(dc, 1.0);
  std::vector<PathPoint> prefix(path.points().begin(), path.points().begin() + 2);
  auto short_bc = slice_persistence(dc, MonotonePath(prefix), 1);
  auto long_bc = slice_persistence(dc, path, 1);
  // Bars of the prefix that die inside it are unchanged; infinite ones may
  // only acquire finite deaths later.
  for (std::size_t d = 0; d <= 1; ++d) {
    for (const auto& iv : short_bc.degree(d)) {
      bool found = false;
      for (const auto& jv : long_bc.degree(d)) {
        found = found || (jv.birth == iv.birth && (jv.death == iv.death || std::isinf(iv.death)));
      }
      CHECK(found);
    }
  }
}
