#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ddcech {

using Index = std::uint32_t;

// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<Index>;

PointSet make_point_set(std::vector<Index> items);
PointSet iota_set(std::size_t n);
bool is_subset(std::span<const Index> small, std::span<const Index> big);

// Nonempty, strictly increasing list of vertex indices.
//
// Ordering is by dimension first, then lexicographic on the vertex list. This
// is the tie-break order used for every filtration built in the library.
class Simplex {
 public:
  Simplex(std::initializer_list<Index> vertices);
  explicit Simplex(std::vector<Index> vertices);

  // Skips validation; the caller guarantees a nonempty strictly sorted list.
  static Simplex from_sorted(std::vector<Index> vertices);

  std::size_t size() const { return v_.size(); }
  std::size_t dim() const { return v_.size() - 1; }
  const std::vector<Index>& vertices() const { return v_; }
  Index operator[](std::size_t i) const { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool contains(Index v) const;
  bool is_face_of(const Simplex& other) const;

  // Codimension-one faces in lexicographic order; empty for a vertex.
  std::vector<Simplex> facets() const;

  Simplex unite(const Simplex& other) const;
  Simplex with_vertex(Index v) const;

  // Image under a vertex map (duplicates collapse).
  Simplex image(std::span<const Index> vertex_map) const;

  std::string to_string() const;

  friend bool operator==(const Simplex& a, const Simplex& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

 private:
  struct Unchecked {};
  Simplex(Unchecked, std::vector<Index> v) : v_(std::move(v)) {}

  std::vector<Index> v_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

// Every subset of `universe` with at most max_dim + 1 elements, in simplex order.
std::vector<Simplex> all_simplices(std::span<const Index> universe, std::size_t max_dim);

// Depth-first enumeration of a downward closed family: a set is extended only
// if `keep` accepted it. Returns the accepted simplices in simplex order.
std::vector<Simplex> enumerate_closed(std::span<const Index> universe, std::size_t max_dim,
                                      const std::function<bool(const Simplex&)>& keep);

// A finite simplicial complex. Ghost vertices are allowed: universe indices that
// are not present as singletons.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(PointSet universe, std::vector<Simplex> simplices);

  // Downward closure of the given simplices.
  static SimplicialComplex closure(PointSet universe, const std::vector<Simplex>& generators);

  const PointSet& universe() const { return universe_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }

  bool contains(const Simplex& s) const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;
  bool is_downward_closed() const;

  // Throws NotDownwardClosed naming a missing face.
  void validate() const;

  std::size_t max_dim() const;
  std::vector<std::size_t> counts_by_dim() const;
  // Vertices present as singletons.
  PointSet vertices() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

 private:
  PointSet universe_;
  std::vector<Simplex> simplices_;  // sorted in simplex order, unique
};

}  // namespace ddcech
