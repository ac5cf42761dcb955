#include "cgolab/phase.hpp"

#include <algorithm>
#include <cmath>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

std::vector<cd> derivative(const std::vector<cd>& c) {
  std::vector<cd> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(double(k) * c[k]);
  return d;
}

}  // namespace

cd HolomorphicPhase::eval(const std::vector<cd>& c, cd z) {
  cd v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

HolomorphicPhase HolomorphicPhase::make(std::vector<cd> coeffs, const Domain& domain) {
  while (!coeffs.empty() && coeffs.back() == cd{}) coeffs.pop_back();
  if (static_cast<int>(coeffs.size()) - 1 > kMaxDegree) {
    throw DomainError("phase degree exceeds " + std::to_string(kMaxDegree));
  }
  HolomorphicPhase p;
  p.coeffs_ = coeffs;
  p.deriv_[0] = derivative(coeffs);
  p.deriv_[1] = derivative(p.deriv_[0]);
  p.deriv_[2] = derivative(p.deriv_[1]);

  std::vector<cd> roots;
  if (p.deriv_[0].size() >= 2) {
    constexpr int kSeeds = 21;
    for (int a = 0; a < kSeeds; ++a) {
      for (int b = 0; b < kSeeds; ++b) {
        cd z{-1.5 + 3.0 * a / (kSeeds - 1), -1.5 + 3.0 * b / (kSeeds - 1)};
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
          const cd f = p.d1(z);
          const cd df = p.d2(z);
          if (df == cd{}) break;
          const cd step = f / df;
          z -= step;
          if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) {
            ok = true;
            break;
          }
        }
        if (!ok && std::abs(p.d1(z)) > 1e-12) continue;
        if (std::abs(p.d1(z)) > 1e-10) continue;
        const bool dup = std::any_of(roots.begin(), roots.end(),
                                     [&](cd r) { return std::abs(r - z) < 1e-9; });
        if (!dup) roots.push_back(z);
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](cd a, cd b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  for (cd z : roots) {
    const double dist = domain.distance_to_boundary({z.real(), z.imag()});
    if (std::abs(dist) < kBoundaryTolerance) {
      throw CriticalOnBoundary("critical point at distance " + std::to_string(dist) +
                               " from the boundary");
    }
    if (dist < 0.0) continue;
    if (std::abs(p.d2(z)) < kDegeneracyTolerance) {
      throw DegenerateCritical("|Phi''| below threshold at an interior critical point");
    }
    p.critical_.push_back(z);
  }
  return p;
}

Eigen::Matrix2d HolomorphicPhase::psi_hessian(Point p) const {
  const cd s = d2(p.z());
  Eigen::Matrix2d h;
  h << s.imag(), s.real(), s.real(), -s.imag();
  return h;
}

Field<cd> HolomorphicPhase::field() const {
  return [self = *this](Point p) {
    const cd z = p.z();
    return from_wirtinger<cd>(self.value(z), self.d1(z), 0.0, self.d2(z), 0.0, 0.0);
  };
}

HolomorphicPhase HolomorphicPhase::perturbed(double eps, const Domain& domain) const {
  std::vector<cd> c = coeffs_;
  if (!c.empty()) c.back() *= 1.0 + eps;
  return make(c, domain);
}

double HolomorphicPhase::max_gradient(const Domain& domain) const {
  double m = 0.0;
  for (const Point& p : domain.points()) m = std::max(m, std::abs(d1(p.z())));
  return m;
}

AdmissibilityReport admissible_for(const Domain& domain, const HolomorphicPhase& phase) {
  AdmissibilityReport r;
  for (const auto& s : domain.boundary()) {
    if (!s.gamma_tilde) r.max_im_on_gamma0 = std::max(r.max_im_on_gamma0, std::abs(phase.psi(s.point)));
  }
  for (cd z : phase.critical_points()) {
    if (std::abs(phase.d2(z)) < HolomorphicPhase::kDegeneracyTolerance) {
      r.reason = "degenerate critical point";
      return r;
    }
  }
  if (r.max_im_on_gamma0 > 1e-10) {
    r.reason = "Im Phi does not vanish on Gamma_0";
    return r;
  }
  r.admissible = true;
  return r;
}

bool critical_values_separated(const HolomorphicPhase& phase) {
  std::vector<double> v;
  for (cd z : phase.critical_points()) v.push_back(phase.value(z).imag());
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (std::abs(v[a]) < 1e-8) return false;
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (std::abs(v[a] - v[b]) < 1e-8) return false;
    }
  }
  return true;
}

std::vector<cd> conjugate_pair_phase(cd a) {
  // (z - a)(z - conj a) = z^2 - 2 Re(a) z + |a|^2
  return {0.0, std::norm(a), -a.real(), 1.0 / 3.0};
}

}  // namespace cgolab
