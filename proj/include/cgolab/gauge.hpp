#pragma once

#include <string>
#include <vector>

#include "cgolab/fields.hpp"
#include "cgolab/forward.hpp"

namespace cgolab {

/// Q(x) = exp(eta(x) S) with a scalar profile eta vanishing to second order on
/// Gamma-tilde, so Q = I and d_nu Q = 0 there. All derivatives are exact.
struct GaugeField {
  int n = 1;
  CMat s;
  double amplitude = 0.0;
  std::string profile;
  Field<cd> eta;
  Field<CMat> q;
  Field<CMat> q_inv;
};

/// Profiles: "disk_bump" (eta = amplitude (1 - |x|^2)^2) or "custom" (eta =
/// amplitude * sum of `custom` terms). Throws ProfileViolation when eta or its
/// gradient does not vanish on Gamma-tilde, DomainError if |amplitude| > 1.
GaugeField make_gauge(const Domain& d, int n, const CMat& s, double amplitude,
                      const std::string& profile = "disk_bump",
                      const std::vector<ZTerm>& custom = {});

/// Gauge for an arbitrary scalar profile, validated on Gamma-tilde.
GaugeField gauge_from_profile(const Domain& d, int n, const CMat& s, Field<cd> eta,
                              std::string name);

/// max over Gamma-tilde samples of |eta| and |grad eta|.
struct ProfileCheck {
  double max_eta = 0.0;
  double max_grad = 0.0;
};
ProfileCheck check_profile(const Domain& d, const Field<cd>& eta);

/// A2 = 2 Q^{-1} dzbar Q + Q^{-1} A1 Q
/// B2 = 2 Q^{-1} dz Q + Q^{-1} B1 Q
/// Q2 = Q^{-1} (Q1 Q + Laplacian Q + 2 A1 dz Q + 2 B1 dzbar Q)
Triple transform_coefficients(const Triple& t1, const GaugeField& g);

/// Continuous L v at a point, from jets.
CVec apply_at_point(const Triple& t, const Jet<CVec>& v, Point p);

/// max over interior nodes of |L2 v - Q^{-1} L1 (Q v)|, entirely from jets.
double conjugation_residual(const Domain& d, const Triple& t1, const Triple& t2,
                            const GaugeField& g, const Field<CVec>& v);

/// max over interior nodes of |2 dzbar Q + A1 Q - Q A2|.
double gauge_pde_residual(const Domain& d, const Field<CMat>& a1, const Field<CMat>& a2,
                          const GaugeField& g);

/// max over Gamma-tilde samples of |A1 - A2| and |B1 - B2|.
struct BoundaryEquality {
  double a = 0.0;
  double b = 0.0;
};
BoundaryEquality boundary_equality(const Domain& d, const Triple& t1, const Triple& t2);

/// max |Lambda1 - Lambda2| / max |Lambda1|.
double dtn_invariance(const Domain& d, std::shared_ptr<const Stencils> st, const Triple& t1,
                      const Triple& t2, const BoundaryBasis& basis, const SolveOptions& opt = {});

/// |integral (2 A du1/dz + 2 B du1/dzbar + Q u1, v)| with A = A1 - A2 etc., where
/// L1 u1 = 0 with data f and L2^* v = 0 with data g on Gamma-tilde.
/// `scale` is ||integrand u1||_2 ||v||_2, and `level` = h^2 * scale is the
/// discretisation level the value is compared with.
struct OrthogonalityResult {
  double value = 0.0;
  double scale = 0.0;
  double level = 0.0;
};
OrthogonalityResult orthogonality_residual(const Domain& d, std::shared_ptr<const Stencils> st,
                                           const Triple& t1, const Triple& t2,
                                           const GridField& f, const GridField& g,
                                           const SolveOptions& opt = {});

}  // namespace cgolab
