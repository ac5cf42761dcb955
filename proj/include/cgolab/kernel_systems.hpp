#pragma once

#include <optional>
#include <vector>

#include "cgolab/cauchy.hpp"
#include "cgolab/grid_calculus.hpp"
#include "cgolab/phase.hpp"

namespace cgolab {

/// Dzbar: 2 dzbar P + A P = 0.   Dz: 2 dz C + B C = 0.
enum class FundamentalKind { Dzbar, Dz };

struct FundamentalOptions {
  double tolerance = 1e-10;     // relative update that stops the iteration
  int max_iterations = 200;
  double det_threshold = 1e-8;  // below this min |det| the matrix is rejected
  int dense_limit = 4096;       // largest unknown count for the dense fallback
  double residual_distance = 0.1;
};

/// Matrix field on the grid with its inverse, flattened column-major per node.
struct FundamentalMatrix {
  FundamentalKind kind = FundamentalKind::Dzbar;
  int n = 0;
  GridField values;
  GridField inverse;
  double residual_norm = 0.0;  // max |2 d P + C P| at distance >= residual_distance
  double min_abs_det = 0.0;
  int iterations = 0;
  bool dense_fallback = false;

  CMat at(int node) const { return unflatten(values, node, n); }
  CMat inverse_at(int node) const { return unflatten(inverse, node, n); }
};

/// Fixed point P <- I - (1/2) T(A P), with T = dzbar^{-1} (or dz^{-1} for the
/// Dz kind). Falls back to a dense solve of the same integral equation when the
/// iteration does not contract and the system is small.
FundamentalMatrix solve_fundamental(const CauchyTransform& ct, const Stencils& st,
                                    const Field<CMat>& coeff, int n, FundamentalKind kind,
                                    const FundamentalOptions& opt = {});

/// Wrap a closed-form fundamental matrix (e.g. exp(-B z / 2) for constant B).
FundamentalMatrix fundamental_from_field(const Domain& d, const Stencils& st,
                                         const Field<CMat>& value, const Field<CMat>& coeff,
                                         int n, FundamentalKind kind,
                                         const FundamentalOptions& opt = {});

/// Closed form for a constant coefficient: exp(-C z / 2) (Dz) or
/// exp(-C zbar / 2) (Dzbar), with exact jets.
Field<CMat> constant_fundamental_field(const CMat& c, FundamentalKind kind);

// ---- pointwise products of flattened matrix fields -------------------------

GridField mat_vec(const GridField& m, const GridField& v, int n);
GridField mat_mat(const GridField& a, const GridField& b, int n);
GridField mat_adjoint(const GridField& m, int n);

/// sign * 2 D u + C u, where D is dz or dzbar and C a flattened matrix field.
enum class Wirtinger { Dz, Dzbar };
GridField first_order(const Stencils& st, Wirtinger which, double sign, const GridField& coeff,
                      int n, const GridField& u);

// ---- inverse operators -----------------------------------------------------

/// P_A f = (1/2) P dzbar^{-1}(P^{-1} f); (2 dzbar + A) P_A f = f.
GridField p_operator(const CauchyTransform& ct, const FundamentalMatrix& p, const GridField& f);
/// T_B f = (1/2) C dz^{-1}(C^{-1} f); (2 dz + B) T_B f = f.
GridField t_operator(const CauchyTransform& ct, const FundamentalMatrix& c, const GridField& f);
/// L2 adjoint of P_A: -(1/2) (P^*)^{-1} dz^{-1}(P^* g); (-2 dz + A^*) v = g.
GridField p_adjoint(const CauchyTransform& ct, const FundamentalMatrix& p, const GridField& g);
/// L2 adjoint of T_B: -(1/2) (C^*)^{-1} dzbar^{-1}(C^* g); (-2 dzbar + B^*) v = g.
GridField t_adjoint(const CauchyTransform& ct, const FundamentalMatrix& c, const GridField& g);

/// P_A or T_B (by kind of the fundamental matrix) evaluated only at `targets`.
GridField apply_at(const CauchyTransform& ct, const FundamentalMatrix& m, const GridField& f,
                   const std::vector<int>& targets);

/// Oscillation bound: tau * max|Phi'| * (cell size) must not exceed 0.5.
void check_oscillation(const Domain& d, const HolomorphicPhase& phase, double tau,
                       double limit = 0.5);

/// Dz kind:    e^{-2 i tau psi} T_B(e^{2 i tau psi} g)
/// Dzbar kind: e^{2 i tau psi} P_B(e^{-2 i tau psi} g)
/// Evaluated on all nodes, or only on `targets` when given (rows follow it).
GridField conjugated_solve(const CauchyTransform& ct, const FundamentalMatrix& m,
                           const HolomorphicPhase& phase, double tau, const GridField& g,
                           const std::optional<std::vector<int>>& targets = std::nullopt);

/// max over interior nodes of |dzbar(G P)| where G = conj(C)^T for the Dz
/// fundamental matrix C of -A^* (so 2 dzbar G = G A).
double holomorphy_residual(const Stencils& st, const Domain& d, const FundamentalMatrix& p,
                           const FundamentalMatrix& c_of_minus_a_star, double distance);

struct CutoffPair {
  Field<cd> e1;
  Field<cd> e2;
};

/// e1 = 1 within r_in of every critical point, 0 beyond r_out; e2 = 1 - e1.
/// Throws DomainError if the transition region reaches the boundary.
CutoffPair make_cutoff_pair(const Domain& d, const HolomorphicPhase& phase, double r_in,
                            double r_out);

/// Cutoff that vanishes within `inner` of the boundary and equals 1 at
/// distance >= inner + width (measured from the arc and, on the half-disk,
/// from the diameter separately).
struct BoundaryCutoff {
  double inner = 0.0;
  double width = 0.0;
  Field<cd> e1;

  /// Distance from p to supp e1.
  double distance_to_support(const Domain& d, Point p) const;
};

/// Throws DomainError unless e1 = 1 on a neighbourhood of every critical point.
BoundaryCutoff make_boundary_cutoff(const Domain& d, const HolomorphicPhase& phase, double inner,
                                    double width);

/// Nodes of G_eps = {x : dist(x, supp e1) > eps}.
std::vector<int> nodes_beyond(const Domain& d, const BoundaryCutoff& cut, double eps);

}  // namespace cgolab
