#include "ddcech/homology.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ddcech/errors.hpp"

namespace ddcech {

namespace {

using Column = std::vector<std::uint32_t>;

struct Reduced {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (birth, death) positions
  std::vector<std::uint32_t> essential;
};

void add_into(Column& target, const Column& other, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

// `order` is a filtration: every face precedes its cofaces. Simplices of
// dimension above top_dim must already be excluded.
Reduced reduce(const std::vector<Simplex>& order, std::size_t top_dim) {
  const std::size_t n = order.size();
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> position;
  position.reserve(n * 2);
  std::vector<std::vector<std::uint32_t>> by_dim(top_dim + 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    position.emplace(order[i], i);
    by_dim[order[i].dim()].push_back(i);
  }

  std::vector<bool> cleared(n, false), negative(n, false), paired(n, false);
  std::vector<std::int64_t> pivot_owner(n, -1);
  std::unordered_map<std::uint32_t, Column> stored;
  Reduced out;
  Column col, scratch;
  for (std::size_t d = top_dim; d >= 1; --d) {
    std::fill(pivot_owner.begin(), pivot_owner.end(), -1);
    for (std::uint32_t j : by_dim[d]) {
      if (cleared[j]) continue;
      col.clear();
      for (const Simplex& f : order[j].facets()) {
        auto it = position.find(f);
        if (it == position.end()) {
          throw NotDownwardClosed("face " + f.to_string() + " of " + order[j].to_string() +
                                  " is missing from the filtration");
        }
        if (it->second > j) {
          throw Error("face " + f.to_string() + " enters after " + order[j].to_string());
        }
        col.push_back(it->second);
      }
      std::sort(col.begin(), col.end());
      while (!col.empty() && pivot_owner[col.back()] >= 0) {
        add_into(col, stored[static_cast<std::uint32_t>(pivot_owner[col.back()])], scratch);
      }
      if (col.empty()) continue;
      const std::uint32_t low = col.back();
      pivot_owner[low] = j;
      negative[j] = true;
      paired[low] = true;
      cleared[low] = true;
      out.pairs.push_back({low, j});
      stored.emplace(j, col);
    }
    stored.clear();
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!negative[i] && !paired[i]) out.essential.push_back(i);
  }
  return out;
}

}  // namespace

BettiVector betti(const SimplicialComplex& k, std::size_t max_degree) {
  std::vector<Simplex> order;
  for (const Simplex& s : k.simplices()) {
    if (s.dim() <= max_degree + 1) order.push_back(s);
  }
  Reduced red = reduce(order, max_degree + 1);
  BettiVector out(max_degree + 1, 0);
  for (std::uint32_t i : red.essential) {
    if (order[i].dim() <= max_degree) ++out[order[i].dim()];
  }
  return out;
}

BettiTable betti_table(const BifilteredComplex& k, std::vector<double> m_grid,
                       std::vector<double> r_grid, std::size_t max_degree) {
  BettiTable t;
  std::sort(m_grid.begin(), m_grid.end());
  std::sort(r_grid.begin(), r_grid.end());
  t.m_grid = std::move(m_grid);
  t.r_grid = std::move(r_grid);
  t.max_degree = max_degree;
  t.cells.assign(t.m_grid.size(), std::vector<BettiVector>(t.r_grid.size()));
  for (std::size_t i = 0; i < t.m_grid.size(); ++i) {
    for (std::size_t j = 0; j < t.r_grid.size(); ++j) {
      t.cells[i][j] = betti(k.complex_at(t.m_grid[i], t.r_grid[j]), max_degree);
    }
  }
  return t;
}

BettiTable betti_table(const BifilteredComplex& k, std::size_t max_degree) {
  CriticalGrid g = k.critical_grid();
  return betti_table(k, with_midpoints(g.m), with_midpoints(g.r), max_degree);
}

std::size_t Barcode::rank_at(std::size_t k, double t) const {
  if (k >= by_degree.size()) return 0;
  std::size_t n = 0;
  for (const Interval& iv : by_degree[k]) {
    if (iv.birth <= t && t < iv.death) ++n;
  }
  return n;
}

Barcode filtration_persistence(const std::vector<std::pair<Simplex, double>>& entries,
                               std::size_t max_degree) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first.dim() <= max_degree + 1) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (entries[a].second != entries[b].second) return entries[a].second < entries[b].second;
    return entries[a].first < entries[b].first;
  });
  std::vector<Simplex> order;
  std::vector<double> value;
  order.reserve(idx.size());
  for (std::size_t i : idx) {
    order.push_back(entries[i].first);
    value.push_back(entries[i].second);
  }
  Reduced red = reduce(order, max_degree + 1);
  Barcode bc;
  bc.by_degree.resize(max_degree + 1);
  for (auto [b, d] : red.pairs) {
    const std::size_t deg = order[b].dim();
    if (deg <= max_degree && value[b] < value[d]) bc.by_degree[deg].push_back({value[b], value[d]});
  }
  for (std::uint32_t b : red.essential) {
    const std::size_t deg = order[b].dim();
    if (deg <= max_degree) bc.by_degree[deg].push_back({value[b], kInf});
  }
  for (auto& bars : bc.by_degree) std::sort(bars.begin(), bars.end());
  return bc;
}

Barcode slice_persistence(const BifilteredComplex& k, const MonotonePath& path,
                          std::size_t max_degree) {
  const auto& pts = path.points();
  std::vector<std::pair<Simplex, double>> entries;
  for (const auto& [s, st] : k.entries()) {
    // Presence is upward closed along a monotone path.
    auto it = std::partition_point(pts.begin(), pts.end(), [&](const PathPoint& p) {
      return !st.present_at(p.grade.m, p.grade.r);
    });
    if (it != pts.end()) entries.push_back({s, it->t});
  }
  return filtration_persistence(entries, max_degree);
}

Barcode slice_persistence(const BifilteredComplex& k, const DiagonalSlice& slice,
                          std::size_t max_degree) {
  std::vector<std::pair<Simplex, double>> entries;
  for (const auto& [s, st] : k.entries()) {
    const double t = entry_time(st, slice);
    if (std::isfinite(t)) entries.push_back({s, t});
  }
  return filtration_persistence(entries, max_degree);
}

namespace {

// Kuhn's augmenting path search on a dense bipartite graph.
bool augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<std::int64_t>& match_right, std::vector<char>& seen) {
  for (std::size_t v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_right[v] < 0 ||
        augment(static_cast<std::size_t>(match_right[v]), adj, match_right, seen)) {
      match_right[v] = static_cast<std::int64_t>(u);
      return true;
    }
  }
  return false;
}

double linf(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double half_length(const Interval& a) { return 0.5 * (a.death - a.birth); }

bool feasible(const std::vector<Interval>& a, const std::vector<Interval>& b, double c) {
  const std::size_t p = a.size(), q = b.size(), n = p + q;
  // Left: a_0..a_{p-1}, then diagonal copies of b. Right: b_0..b_{q-1}, then
  // diagonal copies of a.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (linf(a[i], b[j]) <= c) adj[i].push_back(j);
    }
    if (half_length(a[i]) <= c) adj[i].push_back(q + i);
  }
  for (std::size_t j = 0; j < q; ++j) {
    if (half_length(b[j]) <= c) adj[p + j].push_back(j);
    for (std::size_t i = 0; i < p; ++i) adj[p + j].push_back(q + i);
  }
  std::vector<std::int64_t> match_right(n, -1);
  std::vector<char> seen(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(u, adj, match_right, seen)) return false;
  }
  return true;
}

}  // namespace

double bottleneck_distance(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> fa, fb;
  std::vector<double> ia, ib;
  for (const Interval& iv : a) {
    if (std::isinf(iv.death)) {
      ia.push_back(iv.birth);
    } else {
      fa.push_back(iv);
    }
  }
  for (const Interval& iv : b) {
    if (std::isinf(iv.death)) {
      ib.push_back(iv.birth);
    } else {
      fb.push_back(iv);
    }
  }
  if (ia.size() != ib.size()) return kInf;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ia.size(); ++i) essential = std::max(essential, std::abs(ia[i] - ib[i]));

  std::vector<double> cand{0.0};
  for (const Interval& x : fa) {
    cand.push_back(half_length(x));
    for (const Interval& y : fb) cand.push_back(linf(x, y));
  }
  for (const Interval& y : fb) cand.push_back(half_length(y));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(fa, fb, cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(essential, cand[lo]);
}

double bottleneck_distance(const Barcode& a, const Barcode& b) {
  double d = 0.0;
  const std::size_t n = std::min(a.by_degree.size(), b.by_degree.size());
  for (std::size_t k = 0; k < n; ++k) d = std::max(d, bottleneck_distance(a.by_degree[k], b.by_degree[k]));
  return d;
}

std::vector<bool> inclusion_induces_iso(const SimplicialComplex& k, const SimplicialComplex& l,
                                        std::size_t max_degree) {
  if (!k.is_subcomplex_of(l)) throw NotAnInclusion("first complex is not a subcomplex of the second");
  std::vector<std::pair<Simplex, double>> entries;
  for (const Simplex& s : l.simplices()) entries.push_back({s, k.contains(s) ? 0.0 : 1.0});
  Barcode bc = filtration_persistence(entries, max_degree);
  std::vector<bool> out(max_degree + 1, true);
  for (std::size_t d = 0; d <= max_degree; ++d) {
    for (const Interval& iv : bc.by_degree[d]) {
      if (iv.birth == 1.0 || iv.death == 1.0) out[d] = false;
    }
  }
  return out;
}

}  // namespace ddcech
