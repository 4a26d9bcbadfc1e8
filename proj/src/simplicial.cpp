#include "ddcech/simplicial.hpp"

#include <algorithm>
#include <sstream>

#include "ddcech/errors.hpp"

namespace ddcech {

PointSet make_point_set(std::vector<Index> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

PointSet iota_set(std::size_t n) {
  PointSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Index>(i);
  return out;
}

bool is_subset(std::span<const Index> small, std::span<const Index> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Simplex::Simplex(std::initializer_list<Index> vertices) : Simplex(std::vector<Index>(vertices)) {}

Simplex::Simplex(std::vector<Index> vertices) : v_(std::move(vertices)) {
  if (v_.empty()) throw EmptySimplex("a simplex needs at least one vertex");
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end()) {
    throw Error("simplex has a repeated vertex: " + to_string());
  }
}

Simplex Simplex::from_sorted(std::vector<Index> vertices) {
  return Simplex(Unchecked{}, std::move(vertices));
}

bool Simplex::contains(Index v) const { return std::binary_search(v_.begin(), v_.end(), v); }

bool Simplex::is_face_of(const Simplex& other) const { return is_subset(v_, other.v_); }

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (v_.size() < 2) return out;
  out.reserve(v_.size());
  // Dropping the last vertex first gives lexicographic order.
  for (std::size_t skip = v_.size(); skip-- > 0;) {
    std::vector<Index> f;
    f.reserve(v_.size() - 1);
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i != skip) f.push_back(v_[i]);
    }
    out.push_back(from_sorted(std::move(f)));
  }
  return out;
}

Simplex Simplex::unite(const Simplex& other) const {
  std::vector<Index> u;
  u.reserve(v_.size() + other.v_.size());
  std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(u));
  return from_sorted(std::move(u));
}

Simplex Simplex::with_vertex(Index v) const {
  std::vector<Index> u = v_;
  auto it = std::lower_bound(u.begin(), u.end(), v);
  if (it == u.end() || *it != v) u.insert(it, v);
  return from_sorted(std::move(u));
}

Simplex Simplex::image(std::span<const Index> vertex_map) const {
  std::vector<Index> u;
  u.reserve(v_.size());
  for (Index v : v_) {
    if (v >= vertex_map.size()) {
      throw IndexOutOfRange("vertex map does not cover vertex " + std::to_string(v));
    }
    u.push_back(vertex_map[v]);
  }
  return from_sorted(make_point_set(std::move(u)));
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ',';
    os << v_[i];
  }
  os << '}';
  return os.str();
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
  if (auto c = a.v_.size() <=> b.v_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.end(), b.v_.begin(),
                                                b.v_.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (Index v : s) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void extend(std::span<const Index> universe, std::size_t max_size, std::size_t next,
            std::vector<Index>& current, const std::function<bool(const Simplex&)>& keep,
            std::vector<Simplex>& out) {
  for (std::size_t i = next; i < universe.size(); ++i) {
    current.push_back(universe[i]);
    Simplex s = Simplex::from_sorted(current);
    if (keep(s)) {
      out.push_back(s);
      if (current.size() < max_size) extend(universe, max_size, i + 1, current, keep, out);
    }
    current.pop_back();
  }
}

}  // namespace

std::vector<Simplex> enumerate_closed(std::span<const Index> universe, std::size_t max_dim,
                                      const std::function<bool(const Simplex&)>& keep) {
  std::vector<Simplex> out;
  std::vector<Index> current;
  extend(universe, max_dim + 1, 0, current, keep, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Simplex> all_simplices(std::span<const Index> universe, std::size_t max_dim) {
  return enumerate_closed(universe, max_dim, [](const Simplex&) { return true; });
}

SimplicialComplex::SimplicialComplex(PointSet universe, std::vector<Simplex> simplices)
    : universe_(make_point_set(std::move(universe))), simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end());
  simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());
  for (const Simplex& s : simplices_) {
    if (!is_subset(s.vertices(), universe_)) {
      throw IndexOutOfRange("simplex " + s.to_string() + " leaves the vertex universe");
    }
  }
}

SimplicialComplex SimplicialComplex::closure(PointSet universe,
                                             const std::vector<Simplex>& generators) {
  std::vector<Simplex> all;
  for (const Simplex& g : generators) {
    auto faces = enumerate_closed(g.vertices(), g.dim(), [](const Simplex&) { return true; });
    all.insert(all.end(), faces.begin(), faces.end());
  }
  return SimplicialComplex(std::move(universe), std::move(all));
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s);
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  return std::includes(other.simplices_.begin(), other.simplices_.end(), simplices_.begin(),
                       simplices_.end());
}

bool SimplicialComplex::is_downward_closed() const {
  for (const Simplex& s : simplices_) {
    for (const Simplex& f : s.facets()) {
      if (!contains(f)) return false;
    }
  }
  return true;
}

void SimplicialComplex::validate() const {
  for (const Simplex& s : simplices_) {
    for (const Simplex& f : s.facets()) {
      if (!contains(f)) {
        throw NotDownwardClosed("face " + f.to_string() + " of " + s.to_string() + " is missing");
      }
    }
  }
}

std::size_t SimplicialComplex::max_dim() const {
  return simplices_.empty() ? 0 : simplices_.back().dim();
}

std::vector<std::size_t> SimplicialComplex::counts_by_dim() const {
  std::vector<std::size_t> counts;
  for (const Simplex& s : simplices_) {
    if (counts.size() <= s.dim()) counts.resize(s.dim() + 1, 0);
    ++counts[s.dim()];
  }
  return counts;
}

PointSet SimplicialComplex::vertices() const {
  PointSet out;
  for (const Simplex& s : simplices_) {
    if (s.size() != 1) break;
    out.push_back(s[0]);
  }
  return out;
}

}  // namespace ddcech
