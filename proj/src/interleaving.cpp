#include "ddcech/interleaving.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

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

void check_map(const std::vector<Index>& pi, std::size_t from, std::size_t to, const char* name) {
  if (pi.size() != from) {
    throw DimensionMismatch(std::string(name) + " must be defined on all " + std::to_string(from) +
                            " points");
  }
  for (Index v : pi) {
    if (v >= to) throw IndexOutOfRange(std::string(name) + " leaves its target");
  }
}

Simplex with_round_trip(const Simplex& s, const std::vector<Index>& there,
                        const std::vector<Index>& back) {
  std::vector<Index> v(s.begin(), s.end());
  for (Index x : s) v.push_back(back[there[x]]);
  return Simplex::from_sorted(make_point_set(std::move(v)));
}

void record(InterleavingReport& rep, int condition, const Simplex& s, double m, double r,
            double lhs, double rhs) {
  double slack = rhs - lhs;
  if (std::isnan(slack)) slack = lhs <= rhs ? 0.0 : -kInf;  // inf - inf
  auto& worst = rep.slack[static_cast<std::size_t>(condition - 1)];
  worst = std::min(worst, slack);
  if (!(lhs <= rhs) && !rep.witness) {
    rep.pass = false;
    rep.witness = InterleavingWitness{condition, s, m, r, lhs, rhs};
  }
}

}  // namespace

double InterleavingReport::worst_slack() const {
  return *std::min_element(slack.begin(), slack.end());
}

std::vector<double> interleaving_grid(const SetBifiltration& f0, const SetBifiltration& f1) {
  std::vector<double> g = f0.breakpoints();
  g.insert(g.end(), f1.breakpoints().begin(), f1.breakpoints().end());
  g.push_back(kInf);
  sort_unique(g);
  return g;
}

InterleavingReport verify_set_interleaving_eps(const SetBifiltration& f0,
                                               const SetBifiltration& f1,
                                               const std::vector<Index>& pi1,
                                               const std::vector<Index>& pi0, double eps,
                                               const std::vector<double>& r_grid,
                                               std::size_t dim_cap) {
  check_map(pi1, f0.x_size(), f1.x_size(), "pi1");
  check_map(pi0, f1.x_size(), f0.x_size(), "pi0");
  InterleavingReport rep;
  for (const Simplex& s : all_simplices(iota_set(f0.x_size()), dim_cap)) {
    const Simplex image = s.image(pi1);
    const Simplex loop = with_round_trip(s, pi1, pi0);
    for (double r : r_grid) {
      const double v = f0(s, r);
      record(rep, 1, s, 0.0, r, v, f1(image, r + eps) + eps);
      record(rep, 3, s, 0.0, r, v, f0(loop, r + 2.0 * eps) + 2.0 * eps);
    }
  }
  for (const Simplex& s : all_simplices(iota_set(f1.x_size()), dim_cap)) {
    const Simplex image = s.image(pi0);
    const Simplex loop = with_round_trip(s, pi0, pi1);
    for (double r : r_grid) {
      const double v = f1(s, r);
      record(rep, 2, s, 0.0, r, v, f0(image, r + eps) + eps);
      record(rep, 4, s, 0.0, r, v, f1(loop, r + 2.0 * eps) + 2.0 * eps);
    }
  }
  return rep;
}

InterleavingReport verify_set_interleaving_shift(
    const SetBifiltration& f0, const SetBifiltration& f1, const std::vector<Index>& pi1,
    const std::vector<Index>& pi0, const ForwardShift& alpha, const ForwardShift& beta,
    const std::vector<double>& r_grid, std::size_t dim_cap, CompositeOrder order) {
  check_map(pi1, f0.x_size(), f1.x_size(), "pi1");
  check_map(pi0, f1.x_size(), f0.x_size(), "pi0");
  const bool as_written = order == CompositeOrder::kAsWritten;
  const ForwardShift on_x1 = as_written ? alpha.then(beta) : beta.then(alpha);
  const ForwardShift on_x0 = as_written ? beta.then(alpha) : alpha.then(beta);
  InterleavingReport rep;
  rep.note = "composites: (3) " + on_x1.name() + ", (4) " + on_x0.name();
  for (const Simplex& s : all_simplices(iota_set(f1.x_size()), dim_cap)) {
    const Simplex image = s.image(pi0);
    const Simplex loop = with_round_trip(s, pi0, pi1);
    for (double r : r_grid) {
      const Grade g{f1(s, r), r};
      const Grade a = alpha(g);
      record(rep, 1, s, g.m, r, a.m, f0(image, a.r));
      const Grade c = on_x1(g);
      record(rep, 3, s, g.m, r, c.m, f1(loop, c.r));
    }
  }
  for (const Simplex& t : all_simplices(iota_set(f0.x_size()), dim_cap)) {
    const Simplex image = t.image(pi1);
    const Simplex loop = with_round_trip(t, pi1, pi0);
    for (double r : r_grid) {
      const Grade g{f0(t, r), r};
      const Grade b = beta(g);
      record(rep, 2, t, g.m, r, b.m, f1(image, b.r));
      const Grade c = on_x0(g);
      record(rep, 4, t, g.m, r, c.m, f0(loop, c.r));
    }
  }
  return rep;
}

InterleavingReport verify_complex_interleaving(const BifilteredComplex& k0,
                                               const BifilteredComplex& k1,
                                               const std::vector<Index>& pi1,
                                               const std::vector<Index>& pi0,
                                               const ForwardShift& alpha, const ForwardShift& beta,
                                               const std::vector<double>& m_grid,
                                               const std::vector<double>& r_grid) {
  auto map_size = [](const BifilteredComplex& k) {
    return k.universe().empty() ? std::size_t{0} : std::size_t{k.universe().back()} + 1;
  };
  if (pi1.size() < map_size(k0) || pi0.size() < map_size(k1)) {
    throw DimensionMismatch("vertex maps must cover the vertex universes");
  }
  const ForwardShift loop1 = beta.then(alpha);
  const ForwardShift loop0 = alpha.then(beta);
  InterleavingReport rep;
  std::size_t skipped = 0;
  auto check = [&](int condition, const Simplex& s, const Grade& g, const BifilteredComplex& target,
                   const Simplex& image, const Grade& shifted) {
    if (image.dim() > target.dim_cap()) {
      ++skipped;
      return;
    }
    const Staircase* st = target.staircase(image);
    const double level = st ? st->level(shifted.r) : -kInf;
    record(rep, condition, s, g.m, g.r, shifted.m, level);
  };
  for (double m : m_grid) {
    for (double r : r_grid) {
      const Grade g{m, r};
      const Grade a = alpha(g), b = beta(g), ba = loop1(g), ab = loop0(g);
      for (const auto& [s, st] : k0.entries()) {
        if (!st.present_at(m, r)) continue;
        check(1, s, g, k1, s.image(pi1), a);
        check(4, s, g, k0, with_round_trip(s, pi1, pi0), ab);
      }
      for (const auto& [s, st] : k1.entries()) {
        if (!st.present_at(m, r)) continue;
        check(2, s, g, k0, s.image(pi0), b);
        check(3, s, g, k1, with_round_trip(s, pi0, pi1), ba);
      }
    }
  }
  if (!rep.pass) rep.note = "contiguity check failed";
  if (skipped > 0) {
    rep.note += (rep.note.empty() ? "" : "; ") + std::to_string(skipped) +
                " unions above dim_cap skipped";
  }
  return rep;
}

std::pair<std::vector<double>, std::vector<double>> sandwich_grid(
    const BifilteredComplex& intrinsic, const BifilteredComplex& ambient) {
  CriticalGrid a = intrinsic.critical_grid(), b = ambient.critical_grid();
  std::vector<double> m = a.m;
  m.insert(m.end(), b.m.begin(), b.m.end());
  sort_unique(m);
  std::vector<double> r{0.0};
  for (const auto* g : {&a.r, &b.r}) {
    for (double x : *g) {
      r.push_back(x);
      r.push_back(0.5 * x);
    }
  }
  sort_unique(r);
  return {m, r};
}

SandwichReport verify_sandwich(const BifilteredComplex& intrinsic,
                               const BifilteredComplex& ambient,
                               const std::vector<double>& m_grid,
                               const std::vector<double>& r_grid) {
  SandwichReport rep;
  for (double m : m_grid) {
    for (double r : r_grid) {
      ++rep.grid_points;
      SimplicialComplex lo = intrinsic.complex_at(m, r);
      SimplicialComplex mid = ambient.complex_at(m, r);
      SimplicialComplex hi = intrinsic.complex_at(m, 2.0 * r);
      const bool first = lo.is_subcomplex_of(mid);
      const bool second = mid.is_subcomplex_of(hi);
      if ((!first || !second) && rep.pass) {
        rep.pass = false;
        const SimplicialComplex& a = first ? mid : lo;
        const SimplicialComplex& b = first ? hi : mid;
        std::string which;
        for (const Simplex& s : a.simplices()) {
          if (!b.contains(s)) {
            which = s.to_string();
            break;
          }
        }
        rep.failure = std::string(first ? "ambient not inside intrinsic at 2r" :
                                          "intrinsic not inside ambient") +
                      ": simplex " + which + " at m=" + fmt(m) + ", r=" + fmt(r);
      }
    }
  }
  for (const auto& [s, st] : ambient.entries()) {
    const Staircase* in = intrinsic.staircase(s);
    if (in && st.start_r() > 0.0 && in->start_r() == 2.0 * st.start_r()) rep.tight.push_back(s);
  }
  return rep;
}

ProjectionMaps nearest_neighbor_maps(const CommonEmbedding& e) {
  const std::vector<Index> p0 = nearest_neighbor_projection(e.ambient, e.image0());
  const std::vector<Index> p1 = nearest_neighbor_projection(e.ambient, e.image1());
  auto inverse = [&](const std::vector<Index>& iota) {
    std::vector<std::int64_t> inv(e.ambient.size(), -1);
    for (std::size_t i = iota.size(); i-- > 0;) inv[iota[i]] = static_cast<std::int64_t>(i);
    return inv;
  };
  const auto inv0 = inverse(e.iota0), inv1 = inverse(e.iota1);
  ProjectionMaps maps;
  for (Index z : e.iota1) maps.pi0.push_back(static_cast<Index>(inv0[p0[z]]));
  for (Index z : e.iota0) maps.pi1.push_back(static_cast<Index>(inv1[p1[z]]));
  return maps;
}

}  // namespace ddcech
