#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cgolab/domain.hpp"

namespace cgolab {

/// Polynomial holomorphic phase Phi(z) = sum_k c_k z^k (degree <= 6) together
/// with its nondegenerate critical points in the closed domain.
class HolomorphicPhase {
 public:
  static constexpr int kMaxDegree = 6;
  static constexpr double kBoundaryTolerance = 1e-6;
  static constexpr double kDegeneracyTolerance = 1e-8;

  /// Locates critical points by Newton iteration from a grid of seeds.
  /// Throws DegenerateCritical or CriticalOnBoundary.
  static HolomorphicPhase make(std::vector<cd> coeffs, const Domain& domain);

  const std::vector<cd>& coeffs() const { return coeffs_; }
  cd value(cd z) const { return eval(coeffs_, z); }
  cd d1(cd z) const { return eval(deriv_[0], z); }
  cd d2(cd z) const { return eval(deriv_[1], z); }
  cd d3(cd z) const { return eval(deriv_[2], z); }
  double phi(Point p) const { return value(p.z()).real(); }
  double psi(Point p) const { return value(p.z()).imag(); }
  /// Real Hessian of psi = Im Phi.
  Eigen::Matrix2d psi_hessian(Point p) const;

  /// Phi as a jet field (holomorphic, so all zbar derivatives vanish).
  Field<cd> field() const;

  const std::vector<cd>& critical_points() const { return critical_; }

  /// Multiply the leading coefficient by (1 + eps) and recompute.
  HolomorphicPhase perturbed(double eps, const Domain& domain) const;

  /// max |Phi'| over the nodes of a domain.
  double max_gradient(const Domain& domain) const;

 private:
  static cd eval(const std::vector<cd>& c, cd z);

  std::vector<cd> coeffs_;
  std::vector<cd> deriv_[3];
  std::vector<cd> critical_;
};

struct AdmissibilityReport {
  bool admissible = false;
  double max_im_on_gamma0 = 0.0;
  std::string reason;
};

/// Im Phi = 0 on Gamma_0 (vacuous on the disk) and nondegenerate interior
/// critical points.
AdmissibilityReport admissible_for(const Domain& domain, const HolomorphicPhase& phase);

/// Values psi at the critical points are pairwise distinct and nonzero.
bool critical_values_separated(const HolomorphicPhase& phase);

/// Coefficients of Phi with Phi' = (z - a)(z - conj a) and Phi(0) = 0. Real
/// coefficients, so Im Phi vanishes on the real axis.
std::vector<cd> conjugate_pair_phase(cd a);

}  // namespace cgolab
