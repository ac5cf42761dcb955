#include <doctest.h>

#include <cmath>
#include <random>

#include "cgolab/errors.hpp"
#include "cgolab/fields.hpp"
#include "cgolab/forward.hpp"

using namespace cgolab;

namespace {

std::shared_ptr<const Stencils> stencils_for(const Domain& d) {
  return std::make_shared<const Stencils>(build_stencils(d));
}

Field<CVec> vec2(Field<cd> s0, Field<cd> s1) {
  CVec e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  return scaled_vector(std::move(s0), e0) + scaled_vector(std::move(s1), e1);
}

Triple random_triple(int n, double size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto make = [&] {
    auto terms = random_matrix_terms(n, 2, rng);
    for (auto& t : terms) t.c *= size;
    return matrix_zpoly(n, terms);
  };
  Triple t;
  t.n = n;
  t.a = make();
  t.b = make();
  t.q = make();
  return t;
}

GridField boundary_data(const Domain& d, int n, const std::function<CVec(double)>& f) {
  GridField g = GridField::Zero(d.num_nodes(), n);
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.on_gamma_tilde(node)) g.row(node) = f(d.angle(node)).transpose();
  }
  return g;
}

}  // namespace

TEST_CASE("second-order consistency of the assembled operator") {
  {
    const Domain d = Domain::build(DomainKind::Disk, 32, 64);
    const auto op = assemble(d, stencils_for(d), zero_triple(1));
    CVec e(1);
    e << 1.0;
    const Field<CVec> r2 = scaled_vector(zpoly({{1, 1, 1.0}}), e);
    const GridField lu = op.apply(d.sample(r2, 1));
    for (int node : d.interior_nodes()) CHECK(std::abs(lu(node, 0) - 4.0) < 1e-10);
  }
  const Triple t = random_triple(2, 0.5, 21);
  const Field<CVec> v = vec2(exp_field(zpoly({{1, 0, 0.5}, {0, 1, cd{0.0, 0.3}}})),
                             zpoly({{2, 1, 1.0}, {0, 3, 0.5}, {0, 0, 1.0}}));
  for (auto kind : {DomainKind::Disk, DomainKind::HalfDisk}) {
    double prev = 0.0;
    for (int nr : {16, 32, 64}) {
      const Domain d = Domain::build(kind, nr, 4 * nr);
      const auto op = assemble(d, stencils_for(d), t);
      const double err = consistency_error(op, v, 0.1);
      if (prev > 0.0) CHECK(prev / err > 3.0);
      prev = err;
    }
  }
  // Q = I and harmonic components: L u = u.
  const Domain d = Domain::build(DomainKind::Disk, 32, 128);
  Triple qi = zero_triple(2);
  qi.q = constant_field<CMat>(identity(2));
  const auto op = assemble(d, stencils_for(d), qi);
  const Field<CVec> h = vec2(zpoly({{3, 0, 1.0}, {0, 3, 1.0}}), exp_cos_field());
  CHECK(consistency_error(op, h, 0.1) < 5e-2);
  const GridField hs = d.sample(h, 2);
  const GridField lh = op.apply(hs);
  double err = 0.0;
  for (int node : d.nodes_at_distance(0.1)) {
    if (d.radius(node) >= 0.25) err = std::max(err, (lh.row(node) - hs.row(node)).norm());
  }
  CHECK(err < 5e-2);
}

TEST_CASE("Dirichlet solves on the disk") {
  const Domain d = Domain::build(DomainKind::Disk, 32, 128);
  const auto op = assemble(d, stencils_for(d), zero_triple(1));
  CHECK(solve_dirichlet(op, GridField::Zero(d.num_nodes(), 1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(condition_estimate(op) > 1.0);
  CHECK(condition_estimate(op) < 1e12);
  for (int k : {0, 1, 3, -5}) {
    CVec e(1);
    const GridField f = boundary_data(d, 1, [&](double t) {
      e << std::exp(cd{0.0, k * t});
      return e;
    });
    const GridField u = solve_dirichlet(op, f);
    double err = 0.0;
    for (int node = 0; node < d.num_nodes(); ++node) {
      const double r = d.radius(node);
      err = std::max(err, std::abs(u(node, 0) - std::pow(r, std::abs(k)) *
                                                    std::exp(cd{0.0, k * d.angle(node)})));
    }
    CHECK(err < 5e-3);
    const GridField dn = normal_derivative(d, u);
    const auto nodes = trace_nodes(d);
    double derr = 0.0;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      derr = std::max(derr, std::abs(dn(r, 0) - double(std::abs(k)) *
                                                     std::exp(cd{0.0, k * d.angle(nodes[r])})));
    }
    CHECK(derr < 0.05 * std::max(1, std::abs(k)));
  }
  // Linearity.
  CVec e(1);
  const GridField f1 = boundary_data(d, 1, [&](double t) { e << std::cos(2 * t); return e; });
  const GridField f2 = boundary_data(d, 1, [&](double t) { e << std::sin(t) * t; return e; });
  const cd al{0.3, -1.0}, be{2.0, 0.5};
  const GridField lhs = solve_dirichlet(op, al * f1 + be * f2);
  const GridField rhs = al * solve_dirichlet(op, f1) + be * solve_dirichlet(op, f2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  // Residual on interior rows is rounding level relative to the row scale.
  double scale = 0.0;
  for (int k = 0; k < op.matrix.outerSize(); ++k) {
    for (Eigen::SparseMatrix<cd>::InnerIterator it(op.matrix, k); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
    }
  }
  CHECK(op.apply(lhs).cwiseAbs().maxCoeff() < 1e-10 * scale * lhs.cwiseAbs().maxCoeff());

  SolveOptions strict;
  strict.max_condition = 10.0;
  CHECK_THROWS_AS(solve_dirichlet(op, f1, strict), ZeroEigenvalue);
}

TEST_CASE("normal derivative of closed forms") {
  const Domain d = Domain::build(DomainKind::Disk, 32, 128);
  const GridField r2 = d.sample(zpoly({{1, 1, 1.0}}));
  const GridField dn = normal_derivative(d, r2);
  CHECK((dn.array() - 2.0).abs().maxCoeff() < 1e-12);
  CHECK(normal_derivative(d, GridField::Constant(d.num_nodes(), 1, 3.0)).cwiseAbs().maxCoeff() <
        1e-12);
  double prev = 0.0;
  for (int nr : {32, 64}) {
    const Domain dd = Domain::build(DomainKind::Disk, nr, 128);
    const GridField u = dd.sample(zpoly({{4, 0, 1.0}}));
    const GridField g = normal_derivative(dd, u);
    const auto nodes = trace_nodes(dd);
    double err = 0.0;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      err = std::max(err, std::abs(g(r, 0) - 4.0 * std::exp(cd{0.0, 4.0 * dd.angle(nodes[r])})));
    }
    if (prev > 0.0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("harmonic DtN map on the disk") {
  double prev = 0.0;
  for (int nr : {32, 64}) {
    const Domain d = Domain::build(DomainKind::Disk, nr, 2 * nr);
    const auto op = assemble(d, stencils_for(d), zero_triple(1));
    const BoundaryBasis basis = trig_basis(8);
    const DtnMap m = dtn_map(op, basis);
    CHECK(m.matrix.rows() == static_cast<Eigen::Index>(trace_nodes(d).size()));
    CHECK(m.matrix.cols() == 17);
    const Eigen::MatrixXcd g = galerkin_matrix(d, m, basis);
    double worst = 0.0;
    for (int k = -8; k <= 8; ++k) {
      const int j = k + 8;
      if (k != 0) worst = std::max(worst, std::abs(g(j, j) - double(std::abs(k))) / std::abs(k));
      for (int l = 0; l < 17; ++l) {
        if (l != j) CHECK(std::abs(g(l, j)) < 0.02 * std::max(1, std::abs(k)));
      }
    }
    CHECK(std::abs(g(8, 8)) < 1e-10);
    // Reciprocity of the self-adjoint case.
    CHECK((g - g.adjoint()).norm() / g.norm() < 2e-2);
    if (prev > 0.0) CHECK(prev / worst >= 3.0);
    prev = worst;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("derived adjoint and Green's identity") {
  Triple sa = zero_triple(2);
  CMat herm(2, 2);
  herm << 1.0, cd(0.2, 0.3), cd(0.2, -0.3), -0.5;
  sa.q = scaled_matrix(zpoly({{1, 1, 1.0}, {0, 0, 1.0}}), herm);
  const Domain d0 = Domain::build(DomainKind::Disk, 16, 64);
  const auto op0 = assemble(d0, stencils_for(d0), sa);
  CHECK((adjoint_operator(op0).matrix - op0.matrix).norm() < 1e-12);

  // Compactly supported pair: residual O(h^2).
  const Triple t = random_triple(2, 0.5, 33);
  CVec e(2);
  e << 1.0, cd{0.0, -0.5};
  const Field<CVec> u = scaled_vector(bump({0.1, 0.1}, 0.6) * zpoly({{1, 0, 1.0}, {0, 0, 1.0}}), e);
  e << cd{0.3, 0.2}, 1.0;
  const Field<CVec> v = scaled_vector(bump({-0.1, 0.2}, 0.6) * exp_cos_field(), e);
  std::vector<double> res;
  for (int nr : {16, 32, 64}) {
    const Domain d = Domain::build(DomainKind::Disk, nr, 4 * nr);
    const auto op = assemble(d, stencils_for(d), t);
    res.push_back(green_identity_residual(op, u, v));
  }
  const double order = std::log2(res[1] / res[2]);
  CHECK(order >= 1.7);
  CHECK(res[2] < 1e-3);

  // The alternative adjoint coefficients fail the identity at O(1).
  const Domain d = Domain::build(DomainKind::Disk, 32, 128);
  Triple ca = zero_triple(1);
  CMat am(1, 1);
  am << cd{0.7, 0.4};
  ca.a = constant_field(am);
  CVec e1(1);
  e1 << 1.0;
  const Field<CVec> u1 = scaled_vector(bump({0.0, 0.0}, 0.7) * zpoly({{0, 1, 1.0}, {0, 0, 0.5}}), e1);
  const Field<CVec> v1 = scaled_vector(bump({0.1, 0.0}, 0.7), e1);
  const auto op = assemble(d, stencils_for(d), ca);
  const double derived = green_identity_residual(op, u1, v1);
  const auto alt_op = assemble(d, stencils_for(d), alternate_adjoint_triple(ca));
  const double alt = green_identity_residual(op, alt_op, u1, v1);
  CHECK(derived < 1e-3);
  CHECK(alt > 100.0 * derived);

  // Laplace with harmonic functions: only the boundary terms remain.
  const auto lap = assemble(d, stencils_for(d), zero_triple(1));
  const Field<CVec> h1 = scaled_vector(zpoly({{2, 0, 1.0}, {0, 1, 0.5}}), e1);
  const Field<CVec> h2 = scaled_vector(exp_cos_field(), e1);
  CHECK(green_identity_residual(lap, h1, h2) < 1e-3);
  CHECK(green_identity_residual(lap, scaled_vector(constant_field<cd>(0.0), e1),
                                scaled_vector(constant_field<cd>(0.0), e1)) == 0.0);
}

TEST_CASE("partial data on the half-disk") {
  const Domain d = Domain::build(DomainKind::HalfDisk, 32, 128);
  const auto op = assemble(d, stencils_for(d), zero_triple(1));
  const BoundaryBasis basis = windowed_basis(3);
  const DtnMap m = dtn_map(op, basis);
  CHECK(m.matrix.cols() == 7);
  // sin^2(theta) = (1 - cos 2 theta) / 2 on the arc; the harmonic extension
  // vanishing on the diameter is not the polynomial one, so only check finiteness
  // and that Gamma_0 is held at zero.
  CHECK(m.matrix.allFinite());
  CVec e(1);
  const GridField f = boundary_data(d, 1, [&](double t) { e << std::sin(t) * std::sin(t); return e; });
  const GridField u = solve_dirichlet(op, f);
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.on_gamma0(node)) CHECK(u(node, 0) == cd{});
  }
  // y = r sin(theta) is harmonic and vanishes on the diameter.
  const GridField g = boundary_data(d, 1, [&](double t) { e << std::sin(t); return e; });
  const GridField uy = solve_dirichlet(op, g);
  double err = 0.0;
  for (int node = 0; node < d.num_nodes(); ++node) err = std::max(err, std::abs(uy(node, 0) - d.point(node).y));
  CHECK(err < 1e-4);
}
