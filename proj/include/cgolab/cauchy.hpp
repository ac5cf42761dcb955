#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "cgolab/domain.hpp"

namespace cgolab {

/// K(z) = -(1/pi) * area integral of 1/(zeta - z) over the domain, in closed
/// form. Equals conj(z) on the disk.
cd cauchy_weight_integral(const Domain& d, Point z);

/// The same quantity by adaptive quadrature of the ray exit distance around z:
/// K(z) = -(1/pi) * integral over alpha of e^{-i alpha} R_z(alpha).
cd cauchy_weight_integral_by_rays(const Domain& d, Point z);

/// Area Cauchy transforms on a polar grid.
///
///   dzbar_inv g (z) = -(1/pi) int g(zeta) / (zeta - z)
///   dz_inv    g (z) = -(1/pi) int g(zeta) / conj(zeta - z)
///
/// The singularity is removed by subtracting g(z): the difference quotient is
/// summed with the grid area weights and g(z) K(z) is added back. Ring pairs
/// of the polar grid interact through a convolution in the angular index,
/// which is evaluated with FFTs; the result equals the direct double sum.
class CauchyTransform {
 public:
  explicit CauchyTransform(const Domain& d);

  const Domain& domain() const { return d_; }

  GridField dzbar_inv(const GridField& g) const;
  GridField dz_inv(const GridField& g) const;

  /// Same transforms evaluated only at the listed target nodes, by direct
  /// summation over the nodes where g is nonzero. Rows follow `targets`.
  GridField dzbar_inv_at(const GridField& g, const std::vector<int>& targets) const;
  GridField dz_inv_at(const GridField& g, const std::vector<int>& targets) const;

  /// K at every node.
  const Eigen::VectorXcd& weight_integral() const;

  /// Coefficient of g(z) in the transform at node z when g is supported on z
  /// alone: S_w(z)/pi + K(z), conjugated for dz_inv. Used to assemble the
  /// transform as a dense matrix.
  cd self_coefficient(int node, bool conjugate) const;

 private:
  struct Cache {
    Eigen::VectorXcd k;   // K(z)
    Eigen::VectorXcd sw;  // sum over zeta != z of w / (zeta - z)
  };
  const Cache& cache() const;
  GridField raw_sum(const GridField& fw, bool conjugate) const;
  GridField transform(const GridField& g, bool conjugate) const;
  GridField transform_at(const GridField& g, const std::vector<int>& targets,
                         bool conjugate) const;

  const Domain& d_;
  mutable std::once_flag once_;
  mutable std::unique_ptr<Cache> cache_;
};

}  // namespace cgolab
