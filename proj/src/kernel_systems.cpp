#include "cgolab/kernel_systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "cgolab/errors.hpp"
#include "cgolab/fields.hpp"

namespace cgolab {

namespace {

GridField identity_field(int nodes, int n) {
  GridField out = GridField::Zero(nodes, n * n);
  for (int a = 0; a < n; ++a) out.col(mat_col(a, a, n)).setOnes();
  return out;
}

GridField transform(const CauchyTransform& ct, FundamentalKind kind, const GridField& f) {
  return kind == FundamentalKind::Dzbar ? ct.dzbar_inv(f) : ct.dz_inv(f);
}

Wirtinger derivative_of(FundamentalKind kind) {
  return kind == FundamentalKind::Dzbar ? Wirtinger::Dzbar : Wirtinger::Dz;
}

void finish(const Domain& d, const Stencils& st, const GridField& coeff,
            const FundamentalOptions& opt, FundamentalMatrix& m) {
  const int n = m.n;
  const GridField r = first_order(st, derivative_of(m.kind), 1.0, coeff, n, m.values);
  m.residual_norm = max_abs_rows(r, d.nodes_at_distance(opt.residual_distance));
  m.inverse.resize(m.values.rows(), n * n);
  m.min_abs_det = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m.values.rows(); ++k) {
    const CMat v = m.at(k);
    m.min_abs_det = std::min(m.min_abs_det, std::abs(v.determinant()));
    flatten_into(m.inverse, k, v.inverse());
  }
  if (!(m.min_abs_det >= opt.det_threshold)) {
    throw SingularFundamental("min |det| = " + std::to_string(m.min_abs_det));
  }
}

/// Solve X + (1/2) T(A X) = I densely. T is assembled entry by entry from the
/// same quadrature the fast transform uses.
GridField dense_fundamental(const CauchyTransform& ct, const GridField& a, int n,
                            FundamentalKind kind) {
  const Domain& d = ct.domain();
  const int nodes = d.num_nodes();
  const int size = nodes * n;
  const bool conj = kind == FundamentalKind::Dz;
  Eigen::MatrixXcd t(nodes, nodes);
  for (int z = 0; z < nodes; ++z) {
    const cd zz = d.point(z).z();
    for (int s = 0; s < nodes; ++s) {
      if (s == z) {
        t(z, s) = ct.self_coefficient(z, conj);
        continue;
      }
      const cd diff = d.point(s).z() - zz;
      t(z, s) = -d.area_weight(s) / (kPi * (conj ? std::conj(diff) : diff));
    }
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(size, size);
  for (int z = 0; z < nodes; ++z) {
    for (int s = 0; s < nodes; ++s) {
      if (t(z, s) == cd{}) continue;
      const CMat as = unflatten(a, s, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(z * n + i, s * n + j) += 0.5 * t(z, s) * as(i, j);
      }
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (!(lu.rcond() > 1e-12)) throw NoContraction("dense system is singular");
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(size, n);
  for (int z = 0; z < nodes; ++z) {
    for (int i = 0; i < n; ++i) rhs(z * n + i, i) = 1.0;
  }
  const Eigen::MatrixXcd x = lu.solve(rhs);
  GridField out(nodes, n * n);
  for (int z = 0; z < nodes; ++z) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out(z, mat_col(i, j, n)) = x(z * n + i, j);
    }
  }
  return out;
}

}  // namespace

GridField mat_vec(const GridField& m, const GridField& v, int n) {
  GridField out = GridField::Zero(v.rows(), n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      out.col(a).array() += m.col(mat_col(a, b, n)).array() * v.col(b).array();
    }
  }
  return out;
}

GridField mat_mat(const GridField& x, const GridField& y, int n) {
  GridField out = GridField::Zero(x.rows(), n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        out.col(mat_col(a, b, n)).array() +=
            x.col(mat_col(a, c, n)).array() * y.col(mat_col(c, b, n)).array();
      }
    }
  }
  return out;
}

GridField mat_adjoint(const GridField& m, int n) {
  GridField out(m.rows(), n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out.col(mat_col(a, b, n)) = m.col(mat_col(b, a, n)).conjugate();
  }
  return out;
}

GridField first_order(const Stencils& st, Wirtinger which, double sign, const GridField& coeff,
                      int n, const GridField& u) {
  const SpMat& dop = which == Wirtinger::Dz ? st.dz : st.dzbar;
  const int cols = static_cast<int>(u.cols());
  GridField du = dop * u;
  du *= 2.0 * sign;
  if (cols == n) return du + mat_vec(coeff, u, n);
  return du + mat_mat(coeff, u, n);
}

FundamentalMatrix solve_fundamental(const CauchyTransform& ct, const Stencils& st,
                                    const Field<CMat>& coeff, int n, FundamentalKind kind,
                                    const FundamentalOptions& opt) {
  const Domain& d = ct.domain();
  const GridField a = d.sample(coeff, n);
  const GridField id = identity_field(d.num_nodes(), n);

  FundamentalMatrix m;
  m.kind = kind;
  m.n = n;
  GridField x = id;
  bool converged = a.cwiseAbs().maxCoeff() == 0.0;
  double prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int it = 1; !converged && it <= opt.max_iterations; ++it) {
    GridField next = id - 0.5 * transform(ct, kind, mat_mat(a, x, n));
    const double scale = next.cwiseAbs().maxCoeff();
    const double rel = (next - x).cwiseAbs().maxCoeff() / scale;
    x = std::move(next);
    m.iterations = it;
    if (!std::isfinite(rel) || rel > 1e6) break;
    if (rel <= opt.tolerance) {
      converged = true;
      break;
    }
    growth = rel > prev ? growth + 1 : 0;
    if (growth >= 5) break;
    prev = rel;
  }
  if (!converged) {
    if (d.num_nodes() * n > opt.dense_limit) {
      throw NoContraction("fixed-point iteration did not converge after " +
                          std::to_string(m.iterations) + " iterations");
    }
    x = dense_fundamental(ct, a, n, kind);
    m.dense_fallback = true;
  }
  m.values = std::move(x);
  finish(d, st, a, opt, m);
  return m;
}

FundamentalMatrix fundamental_from_field(const Domain& d, const Stencils& st,
                                         const Field<CMat>& value, const Field<CMat>& coeff,
                                         int n, FundamentalKind kind,
                                         const FundamentalOptions& opt) {
  FundamentalMatrix m;
  m.kind = kind;
  m.n = n;
  m.values = d.sample(value, n);
  finish(d, st, d.sample(coeff, n), opt, m);
  return m;
}

Field<CMat> constant_fundamental_field(const CMat& c, FundamentalKind kind) {
  // d/dx and d/dy of z (or zbar)
  const cd dy = kind == FundamentalKind::Dz ? kI : -kI;
  return [c, dy](Point p) {
    const cd w = dy == kI ? p.z() : std::conj(p.z());
    const CMat e = CMat((-0.5 * w * c).exp());
    const CMat g = -0.5 * c * e;
    const CMat gg = 0.25 * c * c * e;
    Jet<CMat> j;
    j.v = e;
    j.d = {g, dy * g};
    j.dd = {gg, dy * gg, dy * dy * gg};
    return j;
  };
}

GridField p_operator(const CauchyTransform& ct, const FundamentalMatrix& p, const GridField& f) {
  if (p.kind != FundamentalKind::Dzbar) throw DomainError("P_A needs a dzbar-type matrix");
  return 0.5 * mat_vec(p.values, ct.dzbar_inv(mat_vec(p.inverse, f, p.n)), p.n);
}

GridField t_operator(const CauchyTransform& ct, const FundamentalMatrix& c, const GridField& f) {
  if (c.kind != FundamentalKind::Dz) throw DomainError("T_B needs a dz-type matrix");
  return 0.5 * mat_vec(c.values, ct.dz_inv(mat_vec(c.inverse, f, c.n)), c.n);
}

GridField p_adjoint(const CauchyTransform& ct, const FundamentalMatrix& p, const GridField& g) {
  if (p.kind != FundamentalKind::Dzbar) throw DomainError("P_A^* needs a dzbar-type matrix");
  const GridField ps = mat_adjoint(p.values, p.n);
  const GridField ps_inv = mat_adjoint(p.inverse, p.n);
  return -0.5 * mat_vec(ps_inv, ct.dz_inv(mat_vec(ps, g, p.n)), p.n);
}

GridField t_adjoint(const CauchyTransform& ct, const FundamentalMatrix& c, const GridField& g) {
  if (c.kind != FundamentalKind::Dz) throw DomainError("T_B^* needs a dz-type matrix");
  const GridField cs = mat_adjoint(c.values, c.n);
  const GridField cs_inv = mat_adjoint(c.inverse, c.n);
  return -0.5 * mat_vec(cs_inv, ct.dzbar_inv(mat_vec(cs, g, c.n)), c.n);
}

GridField apply_at(const CauchyTransform& ct, const FundamentalMatrix& m, const GridField& f,
                   const std::vector<int>& targets) {
  const GridField src = mat_vec(m.inverse, f, m.n);
  const GridField h = m.kind == FundamentalKind::Dzbar ? ct.dzbar_inv_at(src, targets)
                                                      : ct.dz_inv_at(src, targets);
  GridField out(targets.size(), m.n);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    out.row(t) = 0.5 * (m.at(targets[t]) * h.row(t).transpose()).transpose();
  }
  return out;
}

void check_oscillation(const Domain& d, const HolomorphicPhase& phase, double tau, double limit) {
  const double cell = std::max(d.h(), d.dtheta());
  const double load = tau * phase.max_gradient(d) * cell;
  if (load > limit) {
    throw UnresolvedOscillation("tau * max|Phi'| * h = " + std::to_string(load) + " exceeds " +
                                std::to_string(limit));
  }
}

GridField conjugated_solve(const CauchyTransform& ct, const FundamentalMatrix& m,
                           const HolomorphicPhase& phase, double tau, const GridField& g,
                           const std::optional<std::vector<int>>& targets) {
  const Domain& d = ct.domain();
  check_oscillation(d, phase, tau);
  // Dz kind (tilde R): inner factor e^{+2 i tau psi}; Dzbar kind (R): e^{-2 i tau psi}.
  const double s = m.kind == FundamentalKind::Dz ? 1.0 : -1.0;
  GridField inner = g;
  for (int k = 0; k < d.num_nodes(); ++k) {
    inner.row(k) *= std::exp(cd{0.0, 2.0 * s * tau * phase.psi(d.point(k))});
  }
  if (targets) {
    GridField out = apply_at(ct, m, inner, *targets);
    for (std::size_t t = 0; t < targets->size(); ++t) {
      out.row(t) *= std::exp(cd{0.0, -2.0 * s * tau * phase.psi(d.point((*targets)[t]))});
    }
    return out;
  }
  GridField out = m.kind == FundamentalKind::Dz ? t_operator(ct, m, inner) : p_operator(ct, m, inner);
  for (int k = 0; k < d.num_nodes(); ++k) {
    out.row(k) *= std::exp(cd{0.0, -2.0 * s * tau * phase.psi(d.point(k))});
  }
  return out;
}

double holomorphy_residual(const Stencils& st, const Domain& d, const FundamentalMatrix& p,
                           const FundamentalMatrix& c_of_minus_a_star, double distance) {
  const int n = p.n;
  const GridField g = mat_adjoint(c_of_minus_a_star.values, n);
  const GridField prod = mat_mat(g, p.values, n);
  const GridField r = st.dzbar * prod;
  return max_abs_rows(r, d.nodes_at_distance(distance));
}

CutoffPair make_cutoff_pair(const Domain& d, const HolomorphicPhase& phase, double r_in,
                            double r_out) {
  std::vector<Field<cd>> bumps;
  for (cd z : phase.critical_points()) {
    const Point c{z.real(), z.imag()};
    if (d.distance_to_boundary(c) <= r_out) {
      throw DomainError("cutoff support reaches the boundary");
    }
    bumps.push_back(radial_cutoff(c, r_in, r_out));
  }
  Field<cd> e2 = [bumps](Point p) {
    Jet<cd> prod = Jet<cd>::constant(1.0);
    for (const auto& b : bumps) prod = prod * (Jet<cd>::constant(1.0) - b(p));
    return prod;
  };
  Field<cd> e1 = [e2](Point p) { return Jet<cd>::constant(1.0) - e2(p); };
  return {e1, e2};
}

BoundaryCutoff make_boundary_cutoff(const Domain& d, const HolomorphicPhase& phase, double inner,
                                    double width) {
  if (!(inner > 0.0) || !(width > 0.0) || inner + width >= 1.0) {
    throw DomainError("boundary cutoff needs inner, width > 0 and inner + width < 1");
  }
  for (cd z : phase.critical_points()) {
    if (d.distance_to_boundary(Point{z.real(), z.imag()}) <= inner + width) {
      throw DomainError("critical point inside the cutoff transition");
    }
  }
  const bool half = d.kind() == DomainKind::HalfDisk;
  BoundaryCutoff cut;
  cut.inner = inner;
  cut.width = width;
  cut.e1 = [inner, width, half](Point p) {
    const double r = p.norm();
    Jet<cd> out = Jet<cd>::constant(1.0);
    if (r > 1.0 - inner - width) {
      Jet<cd> t;
      t.v = (1.0 - inner - r) / width;
      t.d = {-p.x / (r * width), -p.y / (r * width)};
      const double r3w = r * r * r * width;
      t.dd = {-p.y * p.y / r3w, p.x * p.y / r3w, -p.x * p.x / r3w};
      out = smooth_step(t);
    }
    if (half && p.y < inner + width) {
      Jet<cd> t = Jet<cd>::constant((p.y - inner) / width);
      t.d = {0.0, 1.0 / width};
      out = out * smooth_step(t);
    }
    return out;
  };
  return cut;
}

double BoundaryCutoff::distance_to_support(const Domain& d, Point p) const {
  // supp e1 = {|x| <= R} (intersected with {y >= inner} on the half-disk).
  const double big_r = 1.0 - inner;
  const double r = p.norm();
  if (d.kind() == DomainKind::Disk) return std::max(0.0, r - big_r);
  if (r <= big_r && p.y >= inner) return 0.0;
  const double c = std::sqrt(big_r * big_r - inner * inner);
  const double to_segment = std::hypot(p.x - std::clamp(p.x, -c, c), p.y - inner);
  double to_arc;
  if (r > 0.0 && big_r * p.y / r >= inner) {
    to_arc = std::abs(r - big_r);
  } else {
    to_arc = std::min(std::hypot(p.x - c, p.y - inner), std::hypot(p.x + c, p.y - inner));
  }
  return std::min(to_segment, to_arc);
}

std::vector<int> nodes_beyond(const Domain& d, const BoundaryCutoff& cut, double eps) {
  std::vector<int> out;
  for (int n = 0; n < d.num_nodes(); ++n) {
    if (cut.distance_to_support(d, d.point(n)) > eps) out.push_back(n);
  }
  return out;
}

}  // namespace cgolab
