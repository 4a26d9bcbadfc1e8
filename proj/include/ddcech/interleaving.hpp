#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ddcech/bifiltered.hpp"
#include "ddcech/bifiltrations.hpp"
#include "ddcech/prohorov.hpp"

namespace ddcech {

struct InterleavingWitness {
  int condition = 0;  // 1..4
  Simplex simplex{0};
  double m = 0.0;     // complex checks only
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct InterleavingReport {
  bool pass = true;
  // Smallest rhs - lhs seen for each condition; inf if nothing was checked.
  std::array<double, 4> slack{kInf, kInf, kInf, kInf};
  std::optional<InterleavingWitness> witness;  // first failure
  std::string note;

  double worst_slack() const;
};

// Every breakpoint of both set bifiltrations, plus inf. The interleaving
// inequalities are step functions on the left and nondecreasing on the right,
// so checking these radii decides them for all r.
std::vector<double> interleaving_grid(const SetBifiltration& f0, const SetBifiltration& f1);

// Weak eps-interleaving of set bifiltrations:
//   (1) f0(s, r) <= f1(pi1 s, r + eps) + eps          s over X0
//   (2) f1(s, r) <= f0(pi0 s, r + eps) + eps          s over X1
//   (3) f0(s, r) <= f0(s u pi0 pi1 s, r + 2eps) + 2eps  s over X0
//   (4) f1(s, r) <= f1(s u pi1 pi0 s, r + 2eps) + 2eps  s over X1
// for every simplex up to dim_cap and every r in r_grid.
InterleavingReport verify_set_interleaving_eps(const SetBifiltration& f0,
                                               const SetBifiltration& f1,
                                               const std::vector<Index>& pi1,
                                               const std::vector<Index>& pi0, double eps,
                                               const std::vector<double>& r_grid,
                                               std::size_t dim_cap);

// How the composite shift in conditions (3) and (4) is formed.
enum class CompositeOrder {
  kAsWritten,  // (3) uses beta after alpha, (4) uses alpha after beta
  kSwapped,    // (3) uses alpha after beta, (4) uses beta after alpha
};

// Weak (alpha, beta)-interleaving of set bifiltrations, with g = (f(s, r), r):
//   (1) alpha_m(g1) <= f0(pi0 s, alpha_r(g1))                s over X1
//   (2) beta_m(g0) <= f1(pi1 t, beta_r(g0))                  t over X0
//   (3) (beta alpha)_m(g1) <= f1(s u pi1 pi0 s, (beta alpha)_r(g1))
//   (4) (alpha beta)_m(g0) <= f0(t u pi0 pi1 t, (alpha beta)_r(g0))
InterleavingReport verify_set_interleaving_shift(
    const SetBifiltration& f0, const SetBifiltration& f1, const std::vector<Index>& pi1,
    const std::vector<Index>& pi0, const ForwardShift& alpha, const ForwardShift& beta,
    const std::vector<double>& r_grid, std::size_t dim_cap,
    CompositeOrder order = CompositeOrder::kAsWritten);

// Contiguity test for bifiltered complexes at every (m, r) of the grid:
//   (1) s in K0_g gives pi1 s in K1_alpha(g)
//   (2) s in K1_g gives pi0 s in K0_beta(g)
//   (3) s in K1_g gives s u pi1 pi0 s in K1_alpha(beta(g))
//   (4) s in K0_g gives s u pi0 pi1 s in K0_beta(alpha(g))
// Unions above the target's dim_cap are skipped and counted in the note.
// Passing certifies the round trips are homotopic to inclusions; failing only
// means the contiguity check failed.
InterleavingReport verify_complex_interleaving(const BifilteredComplex& k0,
                                               const BifilteredComplex& k1,
                                               const std::vector<Index>& pi1,
                                               const std::vector<Index>& pi0,
                                               const ForwardShift& alpha, const ForwardShift& beta,
                                               const std::vector<double>& m_grid,
                                               const std::vector<double>& r_grid);

struct SandwichReport {
  bool pass = true;
  std::size_t grid_points = 0;
  std::optional<std::string> failure;
  // Simplices whose intrinsic entry radius is exactly twice the positive
  // ambient entry radius.
  std::vector<Simplex> tight;
};

// intrinsic_{m,r} inside ambient_{m,r} inside intrinsic_{m,2r} at every grid point.
SandwichReport verify_sandwich(const BifilteredComplex& intrinsic,
                               const BifilteredComplex& ambient,
                               const std::vector<double>& m_grid,
                               const std::vector<double>& r_grid);

// Grid on which the sandwich inclusions are decided exactly: every staircase
// value, and every breakpoint together with its half.
std::pair<std::vector<double>, std::vector<double>> sandwich_grid(
    const BifilteredComplex& intrinsic, const BifilteredComplex& ambient);

// pi0 = p0 iota1 and pi1 = p1 iota0 as maps X1 -> X0 and X0 -> X1.
struct ProjectionMaps {
  std::vector<Index> pi0;
  std::vector<Index> pi1;
};
ProjectionMaps nearest_neighbor_maps(const CommonEmbedding& e);

}  // namespace ddcech
