#pragma once

#include <optional>
#include <vector>

#include "cgolab/forward.hpp"
#include "cgolab/kernel_systems.hpp"

namespace cgolab {

/// Leading CGO amplitudes U0 = P1 a and U0~ = C1 conj(a).
struct CgoAmplitudes {
  int n = 1;
  GridField a;
  GridField u0;
  GridField u0_tilde;
  double transport_residual = 0.0;        // max |2 dzbar U0 + A1 U0|, interior
  double transport_residual_tilde = 0.0;  // max |2 dz U0~ + B1 U0~|, interior
  double boundary_mismatch = 0.0;         // max over Gamma_0 of |U0 + U0~|
};

/// `p1` is the Dzbar fundamental matrix of A1, `c1` the Dz one of B1.
CgoAmplitudes build_amplitudes(const Domain& d, const Stencils& st, const FundamentalMatrix& p1,
                               const FundamentalMatrix& c1, const Field<CMat>& a1,
                               const Field<CMat>& b1, const Field<CVec>& a_vec,
                               double distance = 0.1);

struct CorrectionSources {
  GridField q11_u0;        // Q11 U0 with Q11 = -2 dz A1 - B1 A1 + Q1
  GridField q21_u0_tilde;  // Q21 U0~ with Q21 = -2 dzbar B1 - A1 B1 + Q1
  GridField q1;            // P_{A1}(Q11 U0), minus P1 c when normalised
  GridField q2;            // T_{B1}(Q21 U0~), minus C1 c when normalised
  double residual_q1 = 0.0;  // relative |(2 dzbar + A1) q1 - Q11 U0|, interior
  double residual_q2 = 0.0;
};

Field<CMat> q11_field(const Triple& t);
Field<CMat> q21_field(const Triple& t);

/// When `normalize_at` is given, subtracts the kernel elements P1 c and C1 c'
/// so that q1 and q2 vanish there.
CorrectionSources build_corrections(const Domain& d, const Stencils& st, const CauchyTransform& ct,
                                    const FundamentalMatrix& p1, const FundamentalMatrix& c1,
                                    const Triple& t, const CgoAmplitudes& amp,
                                    std::optional<cd> normalize_at = std::nullopt,
                                    double distance = 0.1);

struct SweepRow {
  double tau = 0.0;
  double rho = 0.0;
};

/// rho(tau) = ||e^{-tau phi} L u_app||_{L2} / ||U0||_{L2} with
/// u_app = U0 e^{tau Phi} + U0~ e^{tau conj Phi}, over points at distance >=
/// `distance` from the boundary. The operator L is built from `op_coeffs`
/// (pass corrupted coefficients for the control). Uses
/// L(U e^{tau Phi}) = e^{tau Phi} (L U + 2 tau Phi' (2 dzbar U + A U)) so only
/// smooth factors are discretised; the oscillatory norm is taken on a fine
/// rule by interpolation.
std::vector<SweepRow> residual_sweep(const Domain& d, std::shared_ptr<const Stencils> st,
                                     const Triple& op_coeffs, const CgoAmplitudes& amp,
                                     const HolomorphicPhase& phase,
                                     const std::vector<double>& tau_list, double distance = 0.1);

}  // namespace cgolab
