#include "cgolab/cgo.hpp"

#include <cmath>

#include <Eigen/LU>

#include "cgolab/errors.hpp"
#include "cgolab/stationary_phase.hpp"

namespace cgolab {

namespace {

double max_norm_rows(const GridField& f, const std::vector<int>& rows) {
  double m = 0.0;
  for (int r : rows) m = std::max(m, f.row(r).norm());
  return m;
}

CMat matrix_from_row(const Eigen::RowVectorXcd& row, int n) {
  CMat m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) m(a, b) = row(mat_col(a, b, n));
  }
  return m;
}

// Subtract M c with c = M(x)^{-1} q(x), so that the result vanishes at x.
void subtract_kernel(const Domain& d, const FundamentalMatrix& m, GridField& q, cd x) {
  const int n = m.n;
  const Point p{x.real(), x.imag()};
  const CMat mx = matrix_from_row(d.interpolate(m.values, p), n);
  const CVec qx = d.interpolate(q, p).transpose();
  const CVec c = mx.partialPivLu().solve(qx);
  const GridField cc = c.transpose().replicate(d.num_nodes(), 1);
  q -= mat_vec(m.values, cc, n);
}

}  // namespace

CgoAmplitudes build_amplitudes(const Domain& d, const Stencils& st, const FundamentalMatrix& p1,
                               const FundamentalMatrix& c1, const Field<CMat>& a1,
                               const Field<CMat>& b1, const Field<CVec>& a_vec,
                               double distance) {
  const int n = p1.n;
  CgoAmplitudes amp;
  amp.n = n;
  amp.a = d.sample(a_vec, n);
  amp.u0 = mat_vec(p1.values, amp.a, n);
  amp.u0_tilde = mat_vec(c1.values, amp.a.conjugate(), n);
  const auto rows = d.nodes_at_distance(distance);
  amp.transport_residual =
      max_norm_rows(first_order(st, Wirtinger::Dzbar, 1.0, d.sample(a1, n), n, amp.u0), rows);
  amp.transport_residual_tilde = max_norm_rows(
      first_order(st, Wirtinger::Dz, 1.0, d.sample(b1, n), n, amp.u0_tilde), rows);
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.on_gamma0(node)) {
      amp.boundary_mismatch =
          std::max(amp.boundary_mismatch, (amp.u0.row(node) + amp.u0_tilde.row(node)).norm());
    }
  }
  return amp;
}

Field<CMat> q11_field(const Triple& t) {
  return cd{-2.0} * dz(t.a) - t.b * t.a + t.q;
}

Field<CMat> q21_field(const Triple& t) {
  return cd{-2.0} * dzbar(t.b) - t.a * t.b + t.q;
}

CorrectionSources build_corrections(const Domain& d, const Stencils& st, const CauchyTransform& ct,
                                    const FundamentalMatrix& p1, const FundamentalMatrix& c1,
                                    const Triple& t, const CgoAmplitudes& amp,
                                    std::optional<cd> normalize_at, double distance) {
  const int n = t.n;
  CorrectionSources c;
  c.q11_u0 = mat_vec(d.sample(q11_field(t), n), amp.u0, n);
  c.q21_u0_tilde = mat_vec(d.sample(q21_field(t), n), amp.u0_tilde, n);
  c.q1 = p_operator(ct, p1, c.q11_u0);
  c.q2 = t_operator(ct, c1, c.q21_u0_tilde);
  if (normalize_at) {
    subtract_kernel(d, p1, c.q1, *normalize_at);
    subtract_kernel(d, c1, c.q2, *normalize_at);
  }
  const auto rows = d.nodes_at_distance(distance);
  const GridField r1 =
      first_order(st, Wirtinger::Dzbar, 1.0, d.sample(t.a, n), n, c.q1) - c.q11_u0;
  const GridField r2 =
      first_order(st, Wirtinger::Dz, 1.0, d.sample(t.b, n), n, c.q2) - c.q21_u0_tilde;
  const double s1 = max_norm_rows(c.q11_u0, rows);
  const double s2 = max_norm_rows(c.q21_u0_tilde, rows);
  c.residual_q1 = s1 > 0.0 ? max_norm_rows(r1, rows) / s1 : max_norm_rows(r1, rows);
  c.residual_q2 = s2 > 0.0 ? max_norm_rows(r2, rows) / s2 : max_norm_rows(r2, rows);
  return c;
}

std::vector<SweepRow> residual_sweep(const Domain& d, std::shared_ptr<const Stencils> st,
                                     const Triple& op_coeffs, const CgoAmplitudes& amp,
                                     const HolomorphicPhase& phase,
                                     const std::vector<double>& tau_list, double distance) {
  const int n = amp.n;
  const EllipticOperator op = assemble(d, st, op_coeffs);
  // Smooth factors: L U0, 2 dzbar U0 + A U0, L U0~, 2 dz U0~ + B U0~.
  GridField stack(d.num_nodes(), 4 * n);
  stack.middleCols(0, n) = op.apply(amp.u0);
  stack.middleCols(n, n) = first_order(*st, Wirtinger::Dzbar, 1.0, d.sample(op_coeffs.a, n), n, amp.u0);
  stack.middleCols(2 * n, n) = op.apply(amp.u0_tilde);
  stack.middleCols(3 * n, n) =
      first_order(*st, Wirtinger::Dz, 1.0, d.sample(op_coeffs.b, n), n, amp.u0_tilde);

  std::vector<SweepRow> rows;
  for (double tau : tau_list) {
    const QuadratureRule q = area_rule(d, oscillation_spacing(d, phase, tau));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < q.points.size(); ++k) {
      const Point p = q.points[k];
      if (d.distance_to_boundary(p) < distance) continue;
      const Eigen::RowVectorXcd s = d.interpolate(stack, p);
      const Eigen::RowVectorXcd u = d.interpolate(amp.u0, p);
      const cd f1 = phase.d1(p.z());
      const cd e = std::exp(kI * tau * phase.psi(p));
      const Eigen::RowVectorXcd r = e * (s.segment(0, n) + 2.0 * tau * f1 * s.segment(n, n)) +
                                    std::conj(e) * (s.segment(2 * n, n) +
                                                    2.0 * tau * std::conj(f1) * s.segment(3 * n, n));
      num += q.weights[k] * r.squaredNorm();
      den += q.weights[k] * u.squaredNorm();
    }
    rows.push_back({tau, den > 0.0 ? std::sqrt(num / den) : 0.0});
  }
  return rows;
}

}  // namespace cgolab
