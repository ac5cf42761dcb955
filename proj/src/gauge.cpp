#include "cgolab/gauge.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

// exp(sign * eta S) with derivatives; S commutes with the exponential.
Field<CMat> exp_profile(Field<cd> eta, CMat s, double sign) {
  return [eta = std::move(eta), s = CMat(sign * s)](Point p) {
    const Jet<cd> e = eta(p);
    const CMat ex = CMat((e.v * s).exp());
    const CMat se = s * ex;
    const CMat sse = s * se;
    Jet<CMat> j;
    j.v = ex;
    for (int a = 0; a < 2; ++a) j.d[a] = e.d[a] * se;
    j.dd[0] = e.dd[0] * se + e.d[0] * e.d[0] * sse;
    j.dd[1] = e.dd[1] * se + e.d[0] * e.d[1] * sse;
    j.dd[2] = e.dd[2] * se + e.d[1] * e.d[1] * sse;
    j.order = std::min(e.order, 2);
    return j;
  };
}

}  // namespace

ProfileCheck check_profile(const Domain& d, const Field<cd>& eta) {
  ProfileCheck c;
  for (const auto& s : d.boundary()) {
    if (!s.gamma_tilde) continue;
    const Jet<cd> e = eta(s.point);
    c.max_eta = std::max(c.max_eta, std::abs(e.v));
    c.max_grad = std::max(c.max_grad, std::hypot(std::abs(e.d[0]), std::abs(e.d[1])));
  }
  return c;
}

GaugeField gauge_from_profile(const Domain& d, int n, const CMat& s, Field<cd> eta,
                              std::string name) {
  const ProfileCheck c = check_profile(d, eta);
  if (c.max_eta > 1e-12 || c.max_grad > 1e-10) {
    throw ProfileViolation(name + ": |eta| = " + std::to_string(c.max_eta) +
                           ", |grad eta| = " + std::to_string(c.max_grad) + " on Gamma-tilde");
  }
  GaugeField g;
  g.n = n;
  g.s = s;
  g.profile = std::move(name);
  g.eta = eta;
  g.q = exp_profile(eta, s, 1.0);
  g.q_inv = exp_profile(eta, s, -1.0);
  return g;
}

GaugeField make_gauge(const Domain& d, int n, const CMat& s, double amplitude,
                      const std::string& profile, const std::vector<ZTerm>& custom) {
  if (!std::isfinite(amplitude) || std::abs(amplitude) > 1.0) {
    throw DomainError("gauge amplitude must be finite with |amplitude| <= 1");
  }
  if (s.rows() != n || s.cols() != n) throw DomainError("gauge matrix has the wrong size");
  Field<cd> eta;
  if (profile == "disk_bump") {
    // (1 - z zbar)^2
    eta = cd{amplitude} * zpoly({{0, 0, 1.0}, {1, 1, -2.0}, {2, 2, 1.0}});
  } else if (profile == "custom") {
    eta = cd{amplitude} * zpoly(custom);
  } else {
    throw DomainError("unknown gauge profile '" + profile + "'");
  }
  GaugeField g = gauge_from_profile(d, n, s, std::move(eta), profile);
  g.amplitude = amplitude;
  return g;
}

Triple transform_coefficients(const Triple& t1, const GaugeField& g) {
  const Field<CMat> q = g.q;
  const Field<CMat> qi = g.q_inv;
  Triple t2;
  t2.n = t1.n;
  t2.a = cd{2.0} * (qi * dzbar(q)) + qi * t1.a * q;
  t2.b = cd{2.0} * (qi * dz(q)) + qi * t1.b * q;
  const Field<CMat> a1 = t1.a, b1 = t1.b, q1 = t1.q;
  t2.q = [=](Point p) {
    const Jet<CMat> jq = q(p);
    const CMat lap = laplacian(jq).v;
    const CMat inv = qi(p).v;
    Jet<CMat> out = Jet<CMat>::constant(
        inv * (q1(p).v * jq.v + lap + 2.0 * a1(p).v * dz(jq).v + 2.0 * b1(p).v * dzbar(jq).v));
    out.order = 0;
    return out;
  };
  return t2;
}

CVec apply_at_point(const Triple& t, const Jet<CVec>& v, Point p) {
  return laplacian(v).v + 2.0 * t.a(p).v * dz(v).v + 2.0 * t.b(p).v * dzbar(v).v + t.q(p).v * v.v;
}

double conjugation_residual(const Domain& d, const Triple& t1, const Triple& t2,
                            const GaugeField& g, const Field<CVec>& v) {
  const Field<CVec> qv = g.q * v;
  double m = 0.0;
  for (int node : d.interior_nodes()) {
    const Point p = d.point(node);
    const CVec lhs = apply_at_point(t2, v(p), p);
    const CVec rhs = g.q_inv(p).v * apply_at_point(t1, qv(p), p);
    m = std::max(m, (lhs - rhs).norm());
  }
  return m;
}

double gauge_pde_residual(const Domain& d, const Field<CMat>& a1, const Field<CMat>& a2,
                          const GaugeField& g) {
  double m = 0.0;
  for (int node : d.interior_nodes()) {
    const Point p = d.point(node);
    const Jet<CMat> q = g.q(p);
    m = std::max(m, (2.0 * dzbar(q).v + a1(p).v * q.v - q.v * a2(p).v).norm());
  }
  return m;
}

BoundaryEquality boundary_equality(const Domain& d, const Triple& t1, const Triple& t2) {
  BoundaryEquality e;
  for (const auto& s : d.boundary()) {
    if (!s.gamma_tilde) continue;
    e.a = std::max(e.a, (t1.a(s.point).v - t2.a(s.point).v).norm());
    e.b = std::max(e.b, (t1.b(s.point).v - t2.b(s.point).v).norm());
  }
  return e;
}

double dtn_invariance(const Domain& d, std::shared_ptr<const Stencils> st, const Triple& t1,
                      const Triple& t2, const BoundaryBasis& basis, const SolveOptions& opt) {
  const DtnMap m1 = dtn_map(assemble(d, st, t1), basis, opt);
  const DtnMap m2 = dtn_map(assemble(d, st, t2), basis, opt);
  return (m1.matrix - m2.matrix).cwiseAbs().maxCoeff() / m1.matrix.cwiseAbs().maxCoeff();
}

OrthogonalityResult orthogonality_residual(const Domain& d, std::shared_ptr<const Stencils> st,
                                           const Triple& t1, const Triple& t2,
                                           const GridField& f, const GridField& g,
                                           const SolveOptions& opt) {
  const int n = t1.n;
  const EllipticOperator l1 = assemble(d, st, t1);
  const EllipticOperator l2s = assemble(d, st, adjoint_triple(t2));
  const GridField u = solve_dirichlet(l1, f, opt);
  const GridField v = solve_dirichlet(l2s, g, opt);
  const GridField uz = grid_dz(*st, u);
  const GridField uzb = grid_dzbar(*st, u);
  const GridField a = d.sample(t1.a, n) - d.sample(t2.a, n);
  const GridField b = d.sample(t1.b, n) - d.sample(t2.b, n);
  const GridField q = d.sample(t1.q, n) - d.sample(t2.q, n);
  cd sum = 0.0;
  double wu = 0.0, wv = 0.0;
  for (int node = 0; node < d.num_nodes(); ++node) {
    const double w = d.area_weight(node);
    if (w == 0.0) continue;
    const CVec r = 2.0 * unflatten(a, node, n) * uz.row(node).transpose() +
                   2.0 * unflatten(b, node, n) * uzb.row(node).transpose() +
                   unflatten(q, node, n) * u.row(node).transpose();
    const CVec vn = v.row(node).transpose();
    sum += w * vn.dot(r);
    wu += w * r.squaredNorm();
    wv += w * vn.squaredNorm();
  }
  OrthogonalityResult res;
  res.value = std::abs(sum);
  res.scale = std::sqrt(wu * wv);
  res.level = d.h() * d.h() * res.scale;
  return res;
}

}  // namespace cgolab
