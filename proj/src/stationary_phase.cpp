#include "cgolab/stationary_phase.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

constexpr int kOrder = 8;
using Gauss = boost::math::quadrature::gauss<double, kOrder>;

// Gauss-Legendre nodes and weights on [a, b] split into equal panels of width
// at most kOrder * spacing.
void panel_rule(double a, double b, double spacing, std::vector<double>& x,
                std::vector<double>& w) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / (kOrder * spacing))));
  const double width = (b - a) / panels;
  const auto& abs = Gauss::abscissa();
  const auto& wts = Gauss::weights();
  x.clear();
  w.clear();
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    // Boost stores the nonnegative half of the symmetric rule.
    for (std::size_t k = 0; k < abs.size(); ++k) {
      if (abs[k] == 0.0) {
        x.push_back(mid);
        w.push_back(half * wts[k]);
        continue;
      }
      x.push_back(mid - half * abs[k]);
      w.push_back(half * wts[k]);
      x.push_back(mid + half * abs[k]);
      w.push_back(half * wts[k]);
    }
  }
}

double angle_span(const Domain& d) { return d.kind() == DomainKind::Disk ? 2.0 * kPi : kPi; }

}  // namespace

QuadratureRule area_rule(const Domain& d, double spacing) {
  QuadratureRule q;
  std::vector<double> rx, rw, tx, tw;
  // Radial panels; the angular rule on each panel is sized for its outer radius.
  const int panels = std::max(1, static_cast<int>(std::ceil(1.0 / (kOrder * spacing))));
  for (int p = 0; p < panels; ++p) {
    const double r0 = double(p) / panels;
    const double r1 = double(p + 1) / panels;
    panel_rule(r0, r1, spacing, rx, rw);
    panel_rule(0.0, angle_span(d), spacing / r1, tx, tw);
    for (std::size_t i = 0; i < rx.size(); ++i) {
      for (std::size_t j = 0; j < tx.size(); ++j) {
        q.points.push_back({rx[i] * std::cos(tx[j]), rx[i] * std::sin(tx[j])});
        q.weights.push_back(rw[i] * tw[j] * rx[i]);
      }
    }
  }
  return q;
}

QuadratureRule boundary_rule(const Domain& d, double spacing) {
  QuadratureRule q;
  std::vector<double> x, w;
  panel_rule(0.0, angle_span(d), spacing, x, w);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Point p{std::cos(x[j]), std::sin(x[j])};
    q.points.push_back(p);
    q.weights.push_back(w[j]);
    q.normals.push_back(p);
  }
  if (d.kind() == DomainKind::HalfDisk) {
    panel_rule(-1.0, 1.0, spacing, x, w);
    for (std::size_t j = 0; j < x.size(); ++j) {
      q.points.push_back({x[j], 0.0});
      q.weights.push_back(w[j]);
      q.normals.push_back({0.0, -1.0});
    }
  }
  return q;
}

double oscillation_spacing(const Domain& d, const HolomorphicPhase& phase, double tau) {
  // |grad Im Phi| = |Phi'|; sample the bound on a rule finer than the phase scale.
  double g = 0.0;
  for (const Point& p : boundary_rule(d, 0.01).points) g = std::max(g, std::abs(phase.d1(p.z())));
  for (const Point& p : area_rule(d, 0.02).points) g = std::max(g, std::abs(phase.d1(p.z())));
  if (tau <= 0.0 || g == 0.0) return 0.02;
  return std::min(0.02, 0.25 / (tau * g));
}

cd direct_integral(const Domain& d, const HolomorphicPhase& phase, double tau,
                   const Field<cd>& u) {
  const QuadratureRule q = area_rule(d, oscillation_spacing(d, phase, tau));
  cd sum = 0.0;
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const cd uv = u(q.points[k]).v;
    if (uv == cd{}) continue;
    sum += q.weights[k] * uv * std::exp(2.0 * kI * tau * phase.psi(q.points[k]));
  }
  return sum;
}

cd frak_F(const HolomorphicPhase& phase, double tau, cd critical, const Field<cd>& u,
          double calibration) {
  const cd f2 = phase.d2(critical);
  if (std::abs(f2) < HolomorphicPhase::kDegeneracyTolerance) {
    throw DegenerateCritical("|Phi''| below threshold at the expansion point");
  }
  const Jet<cd> j = u({critical.real(), critical.imag()});
  const cd f3 = phase.d3(critical);
  const cd uz = dz(j).v;
  const cd uzb = dzbar(j).v;
  const double t2 = tau * tau;
  // |det psi''| = |Phi''|^2
  const double pref = kPi / (2.0 * std::abs(f2));
  const cd bracket = j.v / tau - d_zz(j) / (2.0 * f2 * t2) +
                     d_zbzb(j) / (2.0 * std::conj(f2) * t2) + uz * f3 / (2.0 * f2 * f2 * t2) -
                     uzb * std::conj(f3) / (2.0 * std::conj(f2 * f2) * t2);
  return calibration * pref * bracket;
}

cd frak_I(const Domain& d, const HolomorphicPhase& phase, double tau, const Field<cd>& u) {
  const QuadratureRule q = boundary_rule(d, oscillation_spacing(d, phase, tau));
  cd sum = 0.0;
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const Point p = q.points[k];
    const cd z = p.z();
    const cd f1 = phase.d1(z);
    if (std::abs(f1) < HolomorphicPhase::kBoundaryTolerance) {
      throw PhaseCriticalOnBoundary("Phi' vanishes on the boundary");
    }
    const Jet<cd> j = u(p);
    if (j.v == cd{} && dz(j).v == cd{}) continue;
    const cd nu{q.normals[k].x, -q.normals[k].y};  // nu1 - i nu2
    const cd e = std::exp(2.0 * kI * tau * phase.psi(p));
    // d_z (u / (2 tau^2 Phi')) = u_z / (2 tau^2 Phi') - u Phi'' / (2 tau^2 Phi'^2)
    const cd dzq = dz(j).v / (2.0 * tau * tau * f1) - j.v * phase.d2(z) / (2.0 * tau * tau * f1 * f1);
    sum += q.weights[k] * e * (j.v * nu / (2.0 * tau * f1) - nu / f1 * dzq);
  }
  return sum;
}

cd expansion_model(const Domain& d, const HolomorphicPhase& phase, double tau,
                   const Field<cd>& u, double calibration) {
  cd m = frak_I(d, phase, tau, u);
  for (cd z : phase.critical_points()) {
    const double psi = phase.value(z).imag();
    m += std::exp(2.0 * kI * tau * psi) * frak_F(phase, tau, z, u, calibration);
  }
  return m;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AsymptoticReport verify_expansion(const Domain& d, const HolomorphicPhase& phase,
                                  const Field<cd>& u, const std::vector<double>& tau_list,
                                  double calibration) {
  for (std::size_t k = 0; k < tau_list.size(); ++k) {
    if (!(tau_list[k] > 0.0) || (k > 0 && tau_list[k] <= tau_list[k - 1])) {
      throw DomainError("tau list must be positive and strictly increasing");
    }
  }
  AsymptoticReport r;
  r.tau_list = tau_list;
  r.calibration = calibration;
  r.direct.resize(tau_list.size());
  r.model.resize(tau_list.size());
  r.residual.resize(tau_list.size());
  for (std::size_t k = 0; k < tau_list.size(); ++k) {
    r.direct[k] = direct_integral(d, phase, tau_list[k], u);
    r.model[k] = expansion_model(d, phase, tau_list[k], u, calibration);
    r.residual[k] = std::abs(r.direct[k] - r.model[k]);
  }
  const bool all_positive = std::all_of(r.residual.begin(), r.residual.end(),
                                        [](double v) { return v > 0.0; });
  if (tau_list.size() >= 2 && all_positive) r.fitted_slope = loglog_slope(tau_list, r.residual);
  return r;
}

Calibration calibrate(const Domain& d, const HolomorphicPhase& phase, const Field<cd>& u,
                      double tau, const std::vector<double>& candidates) {
  Calibration c;
  c.tau = tau;
  c.candidates = candidates;
  const cd direct = direct_integral(d, phase, tau, u);
  double best = std::numeric_limits<double>::infinity();
  for (double kappa : candidates) {
    const double res = std::abs(direct - expansion_model(d, phase, tau, u, kappa));
    c.residuals.push_back(res);
    if (res < best) {
      best = res;
      c.kappa = kappa;
    }
  }
  return c;
}

}  // namespace cgolab
