#pragma once

#include <Eigen/SparseCore>

#include "cgolab/domain.hpp"

namespace cgolab {

using SpMat = Eigen::SparseMatrix<cd, Eigen::RowMajor>;

/// Second-order finite-difference operators on a polar grid, one row per node.
///
/// First derivatives are centred in the interior and one-sided (three point)
/// on the boundary. The Laplacian uses the flux form in r and is only defined
/// on Interior rows; other rows are empty.
struct Stencils {
  SpMat dx;
  SpMat dy;
  SpMat dz;
  SpMat dzbar;
  SpMat lap;
};

Stencils build_stencils(const Domain& domain);

/// Grid field of Wirtinger derivatives (applied columnwise).
GridField grid_dz(const Stencils& s, const GridField& f);
GridField grid_dzbar(const Stencils& s, const GridField& f);

/// Maximum absolute entry over the listed rows.
double max_abs_rows(const GridField& f, const std::vector<int>& rows);

/// Discrete L2 norm sqrt(sum_n w_n |f_n|^2) using the area weights.
double l2_norm(const Domain& d, const GridField& f);

}  // namespace cgolab
