#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "cgolab/grid_calculus.hpp"

namespace cgolab {

/// Coefficients of L = Laplacian + 2 A dz + 2 B dzbar + Q acting on C^N.
struct Triple {
  int n = 1;
  Field<CMat> a;
  Field<CMat> b;
  Field<CMat> q;
};

Triple zero_triple(int n);

struct Factorization;

/// Interior rows discretise L; Arc, Ray and Origin rows are Dirichlet rows.
/// Unknowns are interleaved: index = node * N + component.
struct EllipticOperator {
  const Domain* domain = nullptr;
  std::shared_ptr<const Stencils> stencils;
  Triple coeffs;
  Eigen::SparseMatrix<cd> matrix;
  std::shared_ptr<Factorization> factor;  // built on first solve

  int n() const { return coeffs.n; }
  /// L_h u on Interior rows, zero elsewhere.
  GridField apply(const GridField& u) const;
};

EllipticOperator assemble(const Domain& d, std::shared_ptr<const Stencils> st, const Triple& t);

/// Coefficients of the formal L2 adjoint, from integration by parts:
/// A' = -B^*, B' = -A^*, Q' = Q^* - 2 dzbar(A^*) - 2 dz(B^*).
Triple adjoint_triple(const Triple& t);
EllipticOperator adjoint_operator(const EllipticOperator& op);

/// Adjoint coefficients in the alternative form (-A^*, -B^*, Q^* - dz A^* - dzbar B^*),
/// kept for comparison against the derived one.
Triple alternate_adjoint_triple(const Triple& t);

/// Continuous L v evaluated from jets.
GridField apply_exact(const Domain& d, const Triple& t, const Field<CVec>& v);

/// Area-weighted L2 norm of L_h v - L v over nodes at distance >= `distance`
/// from the boundary. Pointwise, the angular term loses an order near the
/// origin (error ~ dtheta^2 / r), so the max norm is not the right yardstick.
double consistency_error(const EllipticOperator& op, const Field<CVec>& v, double distance);

struct SolveOptions {
  double max_condition = 1e12;
};

/// Solve L u = 0 with u = f on Gamma-tilde nodes and u = 0 on Gamma_0.
/// Only the Gamma-tilde rows of `f` are read. Throws ZeroEigenvalue when the
/// 1-norm condition estimate exceeds the threshold.
GridField solve_dirichlet(const EllipticOperator& op, const GridField& f,
                          const SolveOptions& opt = {});

/// Estimated 1-norm condition number (Hager) of the assembled system.
double condition_estimate(const EllipticOperator& op);

/// Gamma-tilde arc nodes outside the corner collar, in counterclockwise order.
std::vector<int> trace_nodes(const Domain& d);

/// One-sided second-order d_nu u at trace_nodes(), one row per node.
GridField normal_derivative(const Domain& d, const GridField& u);

struct BoundaryBasis {
  std::vector<std::string> names;
  std::vector<std::function<cd(double)>> functions;  // of the polar angle
};

/// e^{i k theta}, |k| <= kmax.
BoundaryBasis trig_basis(int kmax);
/// sin^2(theta) e^{i k theta}, |k| <= kmax: vanishes to second order at the corners.
BoundaryBasis windowed_basis(int kmax);
BoundaryBasis default_basis(const Domain& d, int kmax);

/// Columns: basis index * N + component. Rows: trace node index * N + component.
struct DtnMap {
  std::vector<std::string> basis;
  std::vector<int> nodes;
  int n = 1;
  Eigen::MatrixXcd matrix;
};

DtnMap dtn_map(const EllipticOperator& op, const BoundaryBasis& basis,
               const SolveOptions& opt = {});

/// ||M1 - M2||_F / ||M1||_F
double relative_difference(const DtnMap& m1, const DtnMap& m2);

/// Projection of each column onto the basis trace, in the discrete boundary
/// inner product: entry (j, k) = <Lambda phi_k, phi_j> / <phi_j, phi_j> (N = 1).
Eigen::MatrixXcd galerkin_matrix(const Domain& d, const DtnMap& m, const BoundaryBasis& basis);

/// |(L u, v) - (u, L^* v) - boundary terms| with the boundary terms
/// sum over the boundary of v^* d_nu u - (d_nu v)^* u + v^* (A (nu1 - i nu2) + B (nu1 + i nu2)) u.
/// Interior rows use the discrete operators; other rows use the jets.
double green_identity_residual(const EllipticOperator& op, const EllipticOperator& adj,
                               const Field<CVec>& u, const Field<CVec>& v);
double green_identity_residual(const EllipticOperator& op, const Field<CVec>& u,
                               const Field<CVec>& v);

}  // namespace cgolab
