#include "cgolab/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

namespace cgolab {

namespace {

/// Distance from z to the boundary along direction alpha.
double exit_distance(const Domain& d, Point z, double alpha) {
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double b = z.x * ca + z.y * sa;
  const double c = 1.0 - z.x * z.x - z.y * z.y;
  double rho = -b + std::sqrt(std::max(0.0, b * b + c));
  if (d.kind() == DomainKind::HalfDisk && sa < 0.0) {
    rho = std::min(rho, std::max(z.y, 0.0) / (-sa));
  }
  return std::max(rho, 0.0);
}

double wrap(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

int fft_length(const Domain& d) {
  if (d.kind() == DomainKind::Disk) return d.slots();
  int l = 1;
  while (l < 2 * d.slots()) l *= 2;
  return l;
}

}  // namespace

cd cauchy_weight_integral_by_rays(const Domain& d, Point z) {
  std::vector<double> cuts = {0.0, 2.0 * kPi, wrap(std::atan2(z.y, z.x) + 0.5 * kPi),
                              wrap(std::atan2(z.y, z.x) - 0.5 * kPi)};
  if (d.kind() == DomainKind::HalfDisk) {
    cuts.push_back(kPi);
    cuts.push_back(wrap(std::atan2(-z.y, 1.0 - z.x)));
    cuts.push_back(wrap(std::atan2(-z.y, -1.0 - z.x)));
  }
  std::sort(cuts.begin(), cuts.end());
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    if (b - a < 1e-14) continue;
    re += GK::integrate([&](double t) { return std::cos(t) * exit_distance(d, z, t); }, a, b, 12,
                        1e-13);
    im -= GK::integrate([&](double t) { return std::sin(t) * exit_distance(d, z, t); }, a, b, 12,
                        1e-13);
  }
  return -cd{re, im} / kPi;
}

cd cauchy_weight_integral(const Domain& d, Point p) {
  const cd z = p.z();
  if (d.kind() == DomainKind::Disk) return std::conj(z);
  if (std::abs(z) < 1e-300) return cd{0.0, 2.0 / kPi};
  // Stokes: K = (i / 2 pi) * contour integral of conj(zeta - z) / (zeta - z) dzeta.
  // The arc reduces to partial fractions; the diameter to a logarithm.
  const double y = std::max(p.y, 0.0);
  cd ell;
  if (y == 0.0) {
    ell = cd{std::log(std::abs(1.0 - p.x)) - std::log(std::abs(1.0 + p.x)), kPi};
  } else {
    ell = std::log(1.0 - z) - std::log(-1.0 - z);
  }
  const double ring = 1.0 - std::norm(z);
  cd contour = cd{0.0, -kPi} / z + 2.0;
  if (ring != 0.0) contour += ring / z * (cd{0.0, 2.0 * kPi} - ell);
  if (y != 0.0) contour += (z - std::conj(z)) * ell;
  return cd{0.0, 0.5 / kPi} * contour;
}

CauchyTransform::CauchyTransform(const Domain& d) : d_(d) {}

const CauchyTransform::Cache& CauchyTransform::cache() const {
  std::call_once(once_, [this] {
    auto c = std::make_unique<Cache>();
    const int n = d_.num_nodes();
    c->k.resize(n);
    for (int m = 0; m < n; ++m) c->k(m) = cauchy_weight_integral(d_, d_.point(m));
    GridField w = d_.area_weights().cast<cd>();
    c->sw = raw_sum(w, false).col(0);
    cache_ = std::move(c);
  });
  return *cache_;
}

const Eigen::VectorXcd& CauchyTransform::weight_integral() const { return cache().k; }

cd CauchyTransform::self_coefficient(int node, bool conjugate) const {
  const Cache& c = cache();
  const cd v = c.sw(node) / kPi + c.k(node);
  return conjugate ? std::conj(v) : v;
}

GridField CauchyTransform::raw_sum(const GridField& fw, bool conjugate) const {
  const int rings = d_.n_r() + 1;
  const int J = d_.slots();
  const int L = fft_length(d_);
  const int F = static_cast<int>(fw.cols());
  const bool half = d_.kind() == DomainKind::HalfDisk;
  const double dt = d_.dtheta();
  GridField out = GridField::Zero(d_.num_nodes(), F);

  // Spectra of each source ring, per column.
  std::vector<std::vector<std::vector<cd>>> src(rings, std::vector<std::vector<cd>>(F));
  {
    Eigen::FFT<double> fft;
    std::vector<cd> buf(L);
    for (int k = 1; k <= rings; ++k) {
      for (int f = 0; f < F; ++f) {
        std::fill(buf.begin(), buf.end(), cd{});
        for (int j = 0; j < J; ++j) buf[j] = fw(d_.node(k, j), f);
        fft.fwd(src[k - 1][f], buf);
      }
    }
  }
  std::vector<cd> unit(L);
  for (int n = 0; n < L; ++n) unit[n] = std::exp(cd{0.0, -n * dt});

#pragma omp parallel
  {
    Eigen::FFT<double> fft;
    std::vector<cd> kern(L), kern_hat(L), res(L);
    std::vector<std::vector<cd>> acc(F, std::vector<cd>(L));
#pragma omp for schedule(dynamic, 1)
    for (int i = 1; i <= rings; ++i) {
      const double ri = d_.ring_radius(i);
      for (auto& a : acc) std::fill(a.begin(), a.end(), cd{});
      for (int k = 1; k <= rings; ++k) {
        const double rk = d_.ring_radius(k);
        std::fill(kern.begin(), kern.end(), cd{});
        // kern[n] = 1 / (rho_k e^{-i n dt} - r_i), n taken modulo L.
        for (int n = 0; n < L; ++n) {
          int shift = n;
          if (half) {
            if (n >= J && n <= L - J) continue;
            shift = n < J ? n : n - L;
          }
          if (i == k && shift == 0) continue;
          const cd e = half ? std::exp(cd{0.0, -shift * dt}) : unit[n];
          cd v = 1.0 / (rk * e - ri);
          if (conjugate) v = std::conj(v);
          kern[n] = v;
        }
        fft.fwd(kern_hat, kern);
        for (int f = 0; f < F; ++f) {
          const std::vector<cd>& s = src[k - 1][f];
          std::vector<cd>& a = acc[f];
          for (int n = 0; n < L; ++n) a[n] += s[n] * kern_hat[n];
        }
      }
      for (int f = 0; f < F; ++f) {
        fft.inv(res, acc[f]);
        for (int j = 0; j < J; ++j) {
          const cd phase = std::exp(cd{0.0, (conjugate ? 1.0 : -1.0) * d_.slot_angle(j)});
          out(d_.node(i, j), f) = phase * res[j];
        }
      }
    }
  }

  if (half) {
    const int o = d_.origin();
    for (int m = 0; m < d_.num_nodes(); ++m) {
      if (m == o) continue;
      const cd zeta = d_.point(m).z();
      const cd inv = conjugate ? 1.0 / std::conj(zeta) : 1.0 / zeta;
      out.row(o) += inv * fw.row(m);
    }
  }
  return out;
}

GridField CauchyTransform::transform(const GridField& g, bool conjugate) const {
  const Cache& c = cache();
  GridField fw = g;
  for (int m = 0; m < fw.rows(); ++m) fw.row(m) *= d_.area_weight(m);
  const GridField s = raw_sum(fw, conjugate);
  const Eigen::VectorXcd sw = conjugate ? Eigen::VectorXcd(c.sw.conjugate()) : c.sw;
  const Eigen::VectorXcd k = conjugate ? Eigen::VectorXcd(c.k.conjugate()) : c.k;
  GridField out(g.rows(), g.cols());
  for (int m = 0; m < g.rows(); ++m) {
    out.row(m) = -(s.row(m) - g.row(m) * sw(m)) / kPi + g.row(m) * k(m);
  }
  return out;
}

GridField CauchyTransform::dzbar_inv(const GridField& g) const { return transform(g, false); }
GridField CauchyTransform::dz_inv(const GridField& g) const { return transform(g, true); }

GridField CauchyTransform::transform_at(const GridField& g, const std::vector<int>& targets,
                                        bool conjugate) const {
  std::vector<int> support;
  for (int m = 0; m < g.rows(); ++m) {
    if (d_.area_weight(m) != 0.0 && g.row(m).cwiseAbs().maxCoeff() > 0.0) support.push_back(m);
  }
  const int F = static_cast<int>(g.cols());
  const int ns = static_cast<int>(support.size());
  Eigen::VectorXd sx(ns), sy(ns);
  GridField fw(ns, F);
  for (int s = 0; s < ns; ++s) {
    sx(s) = d_.point(support[s]).x;
    sy(s) = d_.point(support[s]).y;
    fw.row(s) = d_.area_weight(support[s]) * g.row(support[s]);
  }
  GridField out(targets.size(), F);
#pragma omp parallel for schedule(dynamic, 16)
  for (int t = 0; t < static_cast<int>(targets.size()); ++t) {
    const int m = targets[t];
    const Point z = d_.point(m);
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(F);
    for (int s = 0; s < ns; ++s) {
      if (support[s] == m) continue;
      const double dx = sx(s) - z.x;
      const double dy = sy(s) - z.y;
      const double r2 = dx * dx + dy * dy;
      const cd inv{dx / r2, (conjugate ? dy : -dy) / r2};
      acc += inv * fw.row(s);
    }
    Eigen::RowVectorXcd val = -acc / kPi;
    if (g.row(m).cwiseAbs().maxCoeff() > 0.0) {
      cd sw = 0.0;
      for (int s = 0; s < d_.num_nodes(); ++s) {
        if (s == m || d_.area_weight(s) == 0.0) continue;
        sw += d_.area_weight(s) / (d_.point(s).z() - z.z());
      }
      cd k = cauchy_weight_integral(d_, z);
      if (conjugate) {
        sw = std::conj(sw);
        k = std::conj(k);
      }
      val += g.row(m) * (sw / kPi + k);
    }
    out.row(t) = val;
  }
  return out;
}

GridField CauchyTransform::dzbar_inv_at(const GridField& g, const std::vector<int>& targets) const {
  return transform_at(g, targets, false);
}

GridField CauchyTransform::dz_inv_at(const GridField& g, const std::vector<int>& targets) const {
  return transform_at(g, targets, true);
}

}  // namespace cgolab
