#include "ddcech/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ddcech/bifiltrations.hpp"
#include "ddcech/errors.hpp"
#include "ddcech/homology.hpp"
#include "ddcech/interleaving.hpp"
#include "ddcech/prohorov.hpp"

namespace ddcech {

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kCap = 3;     // simplices up to dimension 3
constexpr std::size_t kDegree = 2;  // Betti numbers in degrees 0..2

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Point2> random_cloud(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Shortest paths in a random connected graph with weights in quarter steps.
FiniteMetricSpace random_metric(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(1, 8);
  std::bernoulli_distribution edge(0.6);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || edge(rng)) d[i][j] = d[j][i] = w(rng) / 4.0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return FiniteMetricSpace::from_matrix(d);
}

// Weights in eighths; at least one is positive.
DiscreteMeasure random_measure(Rng& rng, std::size_t n, double zero_prob) {
  std::uniform_int_distribution<int> w(1, 12);
  std::bernoulli_distribution zero(zero_prob);
  std::vector<double> weights(n);
  for (auto& x : weights) x = zero(rng) ? 0.0 : w(rng) / 8.0;
  if (std::all_of(weights.begin(), weights.end(), [](double x) { return x == 0.0; })) {
    weights[uniform(rng, 0, n - 1)] = 1.0;
  }
  return DiscreteMeasure(std::move(weights));
}

std::string betti_text(const BettiVector& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

std::string at(double m, double r) {
  return "m=" + format_number(m) + " r=" + format_number(r);
}

std::vector<double> positive(std::vector<double> v) {
  std::erase_if(v, [](double x) { return !(x > 0.0); });
  return v;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void fail(SuiteResult& res, const std::string& witness) {
  if (res.pass) res.witness = witness;
  res.pass = false;
  ++res.failed_checks;
}

// Counts an instance as failing when it added failed checks.
template <class Check>
void run_instance(SuiteResult& res, std::size_t& failing, Check&& check) {
  ++res.instances;
  const std::size_t before = res.failed_checks;
  check();
  if (res.failed_checks > before) ++failing;
}

void note_failing(SuiteResult& res, std::size_t failing) {
  if (failing > 0) res.detail = "failing_instances=" + std::to_string(failing);
}

void note_slack(SuiteResult& res, double slack) {
  res.worst_slack = res.worst_slack ? std::min(*res.worst_slack, slack) : slack;
}

std::string simplex_text(const Simplex& s, const FiniteMetricSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + space.label(s[i]);
  return out + "}";
}

// Checks of a single instance. Each adds to res.

// Returns the tight simplices.
std::vector<Simplex> sandwich_check(SuiteResult& res, const FiniteMetricSpace& space,
                                    const DiscreteMeasure& mu,
                                    const std::optional<BifilteredComplex>& given) {
  const BifilteredComplex in = intrinsic_dc(space, mu, kCap);
  const BifilteredComplex amb =
      given ? *given
            : (space.coords() ? ambient_dc_planar(space, mu, kCap) : ambient_dc_finite(space, mu, kCap));
  auto [m, r] = sandwich_grid(in, amb);
  const SandwichReport rep = verify_sandwich(in, amb, m, r);
  res.checks += rep.grid_points;
  if (!rep.pass) fail(res, *rep.failure);
  return rep.tight;
}

void duality_check(SuiteResult& res, const DowkerDissimilarity& lambda, const DiscreteMeasure& mu) {
  const SetBifiltration f = degree_bifiltration(lambda, mu);
  const BifilteredComplex nf = nerve_bifiltration(f, kCap);
  const BifilteredComplex dual = dowker_dual(lambda, f, kCap);
  for (double m : positive(nf.critical_grid().m)) {
    for (double r : f.breakpoints()) {
      ++res.checks;
      const BettiVector a = betti(nf.complex_at(m, r), kDegree);
      const BettiVector b = betti(rectangle_complex(lambda, f, m, r, kCap), kDegree);
      const BettiVector c = betti(dual.complex_at(m, r), kDegree);
      if (a != b || a != c) {
        fail(res, at(m, r) + " nerve=" + betti_text(a) + " rectangle=" + betti_text(b) +
                      " dual=" + betti_text(c));
      }
    }
  }
}

void restriction_check(SuiteResult& res, const FiniteMetricSpace& space, const DiscreteMeasure& mu) {
  const DowkerDissimilarity lambda = DowkerDissimilarity::from_metric(space);
  const BifilteredComplex full = dowker_dual(lambda, degree_bifiltration(lambda, mu), kCap);
  const BifilteredComplex small = ambient_dc_finite(space, mu, kCap);
  const CriticalGrid g = full.critical_grid();
  for (double m : positive(g.m)) {
    for (double r : g.r) {
      ++res.checks;
      auto iso = inclusion_induces_iso(small.complex_at(m, r), full.complex_at(m, r), kDegree);
      for (std::size_t k = 0; k < iso.size(); ++k) {
        if (!iso[k]) fail(res, at(m, r) + " degree " + std::to_string(k) + " not an isomorphism");
      }
    }
  }
}

void nerve_check(SuiteResult& res, const FiniteMetricSpace& space, const DiscreteMeasure& mu) {
  const BifilteredComplex dc = ambient_dc_finite(space, mu, kCap);
  const CriticalGrid g = dc.critical_grid();
  for (double m : positive(g.m)) {
    for (double r : merged(g.r, space.distinct_distances())) {
      ++res.checks;
      const BettiVector a = betti(cover_nerve(space, mu, m, r, kCap), kDegree);
      const BettiVector b = betti(dc.complex_at(m, r), kDegree);
      if (a != b) fail(res, at(m, r) + " cover nerve=" + betti_text(a) + " dc=" + betti_text(b));
    }
  }
}

Rng seeded(const SuiteConfig& c, std::size_t suite) {
  return Rng(c.seed ^ (0x9E3779B97F4A7C15ULL * (suite + 1)));
}

SuiteResult sandwich_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "sandwich";
  Rng rng = seeded(c, 0);
  std::size_t tight = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    ++res.instances;
    if (t % 2 == 0) {
      // Finite metric with a strict sub-support.
      const std::size_t n = uniform(rng, 3, 8);
      FiniteMetricSpace space = random_metric(rng, n);
      std::vector<Index> order = iota_set(n);
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(uniform(rng, 1, n - 1));
      DiscreteMeasure mu = random_measure(rng, n, 0.0);
      std::vector<double> w = mu.weights();
      for (Index i = 0; i < n; ++i) {
        if (std::find(order.begin(), order.end(), i) == order.end()) w[i] = 0.0;
      }
      tight += sandwich_check(res, space, DiscreteMeasure(w), std::nullopt).size();
    } else {
      const std::size_t n = uniform(rng, 3, 7);
      auto space = FiniteMetricSpace::from_points(random_cloud(rng, n));
      tight += sandwich_check(res, space, random_measure(rng, n, 0.2), std::nullopt).size();
    }
  }
  res.detail = "tight=" + std::to_string(tight);
  return res;
}

SuiteResult duality_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "duality";
  Rng rng = seeded(c, 1);
  std::uniform_int_distribution<int> v(0, 6);
  std::bernoulli_distribution infinite(0.1);
  std::size_t failing = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const std::size_t nx = uniform(rng, 1, 6), ny = uniform(rng, 1, 6);
    std::vector<double> values(nx * ny);
    for (auto& x : values) x = infinite(rng) ? kInf : v(rng) / 2.0;
    const DiscreteMeasure mu = random_measure(rng, ny, 0.2);
    run_instance(res, failing, [&] { duality_check(res, DowkerDissimilarity(nx, ny, values), mu); });
  }
  note_failing(res, failing);
  return res;
}

SuiteResult restriction_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "restriction";
  Rng rng = seeded(c, 2);
  std::size_t failing = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const std::size_t n = uniform(rng, 4, 8);
    FiniteMetricSpace space = random_metric(rng, n);
    std::vector<double> w = random_measure(rng, n, 0.0).weights();
    std::vector<Index> order = iota_set(n);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t zeros = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < zeros; ++i) w[order[i]] = 0.0;
    run_instance(res, failing, [&] { restriction_check(res, space, DiscreteMeasure(w)); });
  }
  note_failing(res, failing);
  return res;
}

SuiteResult nerve_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "nerve";
  Rng rng = seeded(c, 3);
  std::size_t failing = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const std::size_t n = uniform(rng, 2, 8);
    FiniteMetricSpace space = random_metric(rng, n);
    const DiscreteMeasure mu = random_measure(rng, n, 0.25);
    run_instance(res, failing, [&] { nerve_check(res, space, mu); });
  }
  note_failing(res, failing);
  return res;
}

// Common-space form: both measures live on the union of the cloud and its
// perturbation, and the witnesses range over that union.
SuiteResult stability_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "stability";
  Rng rng = seeded(c, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t t = 0; t < c.trials; ++t) {
    ++res.instances;
    const std::size_t n = uniform(rng, 3, 6);
    std::vector<Point2> pts = random_cloud(rng, n);
    const double diam = FiniteMetricSpace::from_points(pts).diameter();
    const double delta = 0.1 * diam * u(rng);
    std::vector<Point2> all = pts;
    for (const Point2& p : pts) {
      const double a = 2 * std::numbers::pi * u(rng), len = delta * u(rng);
      all.push_back({p.x + len * std::cos(a), p.y + len * std::sin(a)});
    }
    auto space = FiniteMetricSpace::from_points(all);
    std::vector<Index> first = iota_set(n), second;
    for (Index i = 0; i < n; ++i) second.push_back(static_cast<Index>(n + i));
    const auto mu0 = DiscreteMeasure::counting_on(2 * n, first);
    const auto mu1 = DiscreteMeasure::counting_on(2 * n, second);
    const double p = prohorov_distance(space, mu0, mu1);
    ++res.checks;
    note_slack(res, delta - p);
    if (p > delta + 1e-9) {
      fail(res, "prohorov " + format_number(p) + " above delta " + format_number(delta));
    }
    const auto k0 = ambient_dc_finite(space, mu0, 2), k1 = ambient_dc_finite(space, mu1, 2);
    for (int s = 0; s < 5; ++s) {
      const DiagonalSlice slice{1.0 + static_cast<double>(uniform(rng, 0, n)), 0.5 * diam * u(rng)};
      const double b = bottleneck_distance(slice_persistence(k0, slice, 1),
                                           slice_persistence(k1, slice, 1));
      ++res.checks;
      note_slack(res, p - b);
      if (b > p + 1e-9) {
        fail(res, "slice m0=" + format_number(slice.m0) + " r0=" + format_number(slice.r0) +
                      " bottleneck " + format_number(b) + " above prohorov " + format_number(p));
      }
    }
  }
  return res;
}

SuiteResult lemma75_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "lemma75";
  Rng rng = seeded(c, 5);
  for (std::size_t t = 0; t < c.trials; ++t) {
    ++res.instances;
    const std::size_t a = uniform(rng, 2, 25);
    CommonEmbedding e;
    e.ambient = t % 2 ? FiniteMetricSpace::from_points(random_cloud(rng, a)) : random_metric(rng, a);
    auto pick = [&](std::size_t k) {
      std::vector<Index> all = iota_set(a);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(k);
      return all;
    };
    e.iota0 = pick(uniform(rng, 1, std::min<std::size_t>(10, a)));
    e.iota1 = pick(uniform(rng, 1, std::min<std::size_t>(10, a)));
    const ProjectionReport rep =
        check_projection_inequality(e, nearest_neighbor_projection(e.ambient, e.image0()));
    res.checks += rep.checked;
    note_slack(res, rep.worst_slack);
    if (rep.violations > 0) {
      fail(res, "x=" + std::to_string(rep.witness->first) + " y=" +
                    std::to_string(rep.witness->second) + " slack " + format_number(rep.worst_slack));
    }
  }
  return res;
}

SuiteResult prop76_suite(const SuiteConfig& c) {
  SuiteResult res;
  res.name = "prop76";
  Rng rng = seeded(c, 6);
  for (std::size_t t = 0; t < c.trials; ++t) {
    ++res.instances;
    const std::size_t a = uniform(rng, 4, 12);
    CommonEmbedding e;
    e.ambient = t % 2 ? FiniteMetricSpace::from_points(random_cloud(rng, a)) : random_metric(rng, a);
    auto pick = [&](std::size_t k) {
      std::vector<Index> all = iota_set(a);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(k);
      return all;
    };
    e.iota0 = pick(uniform(rng, 2, std::min<std::size_t>(6, a)));
    e.iota1 = pick(uniform(rng, 2, std::min<std::size_t>(6, a)));
    const FiniteMetricSpace x0 = e.ambient.subspace(e.iota0), x1 = e.ambient.subspace(e.iota1);
    const DiscreteMeasure mu0 = random_measure(rng, x0.size(), 0.0);
    const DiscreteMeasure mu1 = random_measure(rng, x1.size(), 0.0);
    const double eps = gp_upper_bound(x0, mu0, x1, mu1, e) + 0.01;
    const ProjectionMaps maps = nearest_neighbor_maps(e);
    const auto f0 = degree_bifiltration(DowkerDissimilarity::from_metric(x0), mu0);
    const auto f1 = degree_bifiltration(DowkerDissimilarity::from_metric(x1), mu1);
    const ForwardShift beta = ForwardShift::doubling(eps);
    const auto grid = interleaving_grid(f0, f1);
    const InterleavingReport rep =
        verify_set_interleaving_shift(f0, f1, maps.pi1, maps.pi0, beta, beta, grid, kCap);
    res.checks += grid.size();
    note_slack(res, rep.worst_slack());
    if (!rep.pass) {
      const auto& w = *rep.witness;
      fail(res, "condition " + std::to_string(w.condition) + " simplex " + w.simplex.to_string() +
                    " " + at(w.m, w.r) + " lhs " + format_number(w.lhs) + " rhs " +
                    format_number(w.rhs));
    }
  }
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sandwich", "duality", "restriction", "nerve",
                                              "stability", "lemma75", "prop76"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "sandwich") return sandwich_suite(config);
  if (name == "duality") return duality_suite(config);
  if (name == "restriction") return restriction_suite(config);
  if (name == "nerve") return nerve_suite(config);
  if (name == "stability") return stability_suite(config);
  if (name == "lemma75") return lemma75_suite(config);
  if (name == "prop76") return prop76_suite(config);
  throw Error("unknown suite '" + name + "'");
}

SuiteResult run_suite_on(const std::string& name, const Dataset& data,
                         const std::optional<BifilteredComplex>& ambient) {
  SuiteResult res;
  res.name = name;
  res.instances = 1;
  if (name == "sandwich") {
    res.detail = "tight:";
    for (const Simplex& s : sandwich_check(res, data.space, data.measure, ambient)) {
      res.detail += " " + simplex_text(s, data.space);
    }
  } else if (name == "duality") {
    duality_check(res, DowkerDissimilarity::from_metric(data.space), data.measure);
  } else if (name == "restriction") {
    restriction_check(res, data.space, data.measure);
  } else if (name == "nerve") {
    nerve_check(res, data.space, data.measure);
  } else {
    throw Error("suite '" + name + "' needs random instances and does not take an input file");
  }
  return res;
}

std::string format_result(const SuiteResult& r) {
  std::ostringstream os;
  os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " instances=" << r.instances
     << " checks=" << r.checks;
  if (r.failed_checks > 0) os << " failed_checks=" << r.failed_checks;
  if (r.worst_slack) os << " worst_slack=" << format_number(*r.worst_slack);
  if (!r.detail.empty()) os << ' ' << r.detail;
  if (!r.pass) os << " witness: " << r.witness;
  return os.str();
}

}  // namespace ddcech
