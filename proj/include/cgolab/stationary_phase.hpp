#pragma once

#include <vector>

#include "cgolab/domain.hpp"
#include "cgolab/phase.hpp"

namespace cgolab {

/// Quadrature nodes independent of the solver grid. Boundary rules also carry
/// the outward normal at each node.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<Point> normals;
};

/// Panel Gauss-Legendre rule in polar coordinates with node spacing <= `spacing`.
QuadratureRule area_rule(const Domain& d, double spacing);
QuadratureRule boundary_rule(const Domain& d, double spacing);

/// Node spacing that keeps tau * max|grad psi| * h <= 0.25.
double oscillation_spacing(const Domain& d, const HolomorphicPhase& phase, double tau);

/// integral over the domain of u e^{tau (Phi - conj Phi)} on a dedicated fine rule.
cd direct_integral(const Domain& d, const HolomorphicPhase& phase, double tau, const Field<cd>& u);

/// Interior stationary point contribution, scaled by `calibration`.
cd frak_F(const HolomorphicPhase& phase, double tau, cd critical, const Field<cd>& u,
          double calibration);

/// Boundary term of the expansion, evaluated on a boundary rule fine enough for tau.
cd frak_I(const Domain& d, const HolomorphicPhase& phase, double tau, const Field<cd>& u);

/// sum over interior critical points of e^{2 i tau psi} F + I.
cd expansion_model(const Domain& d, const HolomorphicPhase& phase, double tau,
                   const Field<cd>& u, double calibration);

struct AsymptoticReport {
  std::vector<double> tau_list;
  std::vector<cd> direct;
  std::vector<cd> model;
  std::vector<double> residual;
  double calibration = 1.0;
  double fitted_slope = 0.0;  // least-squares slope of log residual vs log tau
};

AsymptoticReport verify_expansion(const Domain& d, const HolomorphicPhase& phase,
                                  const Field<cd>& u, const std::vector<double>& tau_list,
                                  double calibration);

struct Calibration {
  double kappa = 1.0;
  double tau = 0.0;
  std::vector<double> candidates;
  std::vector<double> residuals;  // |direct - model| per candidate
};

/// Pick the candidate constant that minimises |direct - model| at tau.
Calibration calibrate(const Domain& d, const HolomorphicPhase& phase, const Field<cd>& u,
                      double tau, const std::vector<double>& candidates = {1.0, 2.0});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cgolab
