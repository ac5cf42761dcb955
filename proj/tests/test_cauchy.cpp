#include <doctest.h>

#include <cmath>

#include "cgolab/cauchy.hpp"
#include "cgolab/fields.hpp"
#include "cgolab/grid_calculus.hpp"

using namespace cgolab;

namespace {

double max_error_at(const Domain& d, const GridField& h, const Field<cd>& exact, double dist) {
  double e = 0.0;
  for (int n : d.nodes_at_distance(dist)) e = std::max(e, std::abs(h(n, 0) - exact(d.point(n)).v));
  return e;
}

}  // namespace

TEST_CASE("weight integral K") {
  const Domain disk = Domain::build(DomainKind::Disk, 16, 64);
  for (Point p : {Point{0.0, 0.0}, Point{0.3, -0.2}, Point{0.99, 0.0}, Point{0.0, 1.0}}) {
    CHECK(std::abs(cauchy_weight_integral_by_rays(disk, p) - std::conj(p.z())) < 1e-11);
  }
  // On the half-disk, dzbar K = 1 (checked by a centred difference).
  const Domain half = Domain::build(DomainKind::HalfDisk, 16, 64);
  const Point p{0.2, 0.5};
  const double e = 1e-5;
  const cd kx = (cauchy_weight_integral(half, {p.x + e, p.y}) -
                 cauchy_weight_integral(half, {p.x - e, p.y})) / (2 * e);
  const cd ky = (cauchy_weight_integral(half, {p.x, p.y + e}) -
                 cauchy_weight_integral(half, {p.x, p.y - e})) / (2 * e);
  CHECK(std::abs(0.5 * (kx + kI * ky) - 1.0) < 1e-7);
}

TEST_CASE("Cauchy transform closed forms on the disk") {
  const Domain d = Domain::build(DomainKind::Disk, 32, 128);
  const CauchyTransform ct(d);

  CHECK(ct.dzbar_inv(GridField::Zero(d.num_nodes(), 1)).cwiseAbs().maxCoeff() == 0.0);

  const GridField one = GridField::Ones(d.num_nodes(), 1);
  const GridField h1 = ct.dzbar_inv(one);
  CHECK(max_error_at(d, h1, zpoly({{0, 1, 1.0}}), 0.1) < 1e-10);
  const GridField h2 = ct.dz_inv(one);
  CHECK(max_error_at(d, h2, zpoly({{1, 0, 1.0}}), 0.1) < 1e-10);

  // dzbar^{-1}(zbar^n) = zbar^{n+1}/(n+1) on the unit disk.
  const GridField zb = d.sample(zpoly({{0, 1, 1.0}}));
  const GridField h3 = ct.dzbar_inv(zb);
  CHECK(max_error_at(d, h3, zpoly({{0, 2, 0.5}}), 0.1) < 2e-3);
}

TEST_CASE("Cauchy transform algebraic properties") {
  const Domain d = Domain::build(DomainKind::HalfDisk, 16, 64);
  const CauchyTransform ct(d);
  const GridField f = d.sample(exp_cos_field());
  const GridField g = d.sample(zpoly({{2, 1, cd{0.3, -0.1}}, {0, 0, 1.0}}));
  const cd a{0.7, 0.2};
  const cd b{-1.1, 0.4};

  const GridField lhs = ct.dzbar_inv(a * f + b * g);
  const GridField rhs = a * ct.dzbar_inv(f) + b * ct.dzbar_inv(g);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  const GridField c1 = ct.dz_inv(g);
  const GridField c2 = ct.dzbar_inv(g.conjugate()).conjugate();
  CHECK((c1 - c2).cwiseAbs().maxCoeff() < 1e-12);

  // Target-subset evaluation agrees with the full transform.
  const std::vector<int> targets = {d.node(3, 5), d.node(10, 40), d.origin(), d.node(17, 64)};
  const GridField sub = ct.dzbar_inv_at(g, targets);
  const GridField full = ct.dzbar_inv(g);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    CHECK(std::abs(sub(t, 0) - full(targets[t], 0)) < 1e-11);
  }
  const GridField subc = ct.dz_inv_at(g, targets);
  const GridField fullc = ct.dz_inv(g);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    CHECK(std::abs(subc(t, 0) - fullc(targets[t], 0)) < 1e-11);
  }
}

TEST_CASE("Cauchy inversion identity improves under refinement") {
  for (DomainKind kind : {DomainKind::Disk, DomainKind::HalfDisk}) {
    double prev = 1e9;
    for (int nr : {16, 32}) {
      const Domain d = Domain::build(kind, nr, 4 * nr);
      const CauchyTransform ct(d);
      const Stencils s = build_stencils(d);
      const GridField g = d.sample(exp_cos_field());
      const GridField r1 = s.dzbar * ct.dzbar_inv(g) - g;
      const GridField r2 = s.dz * ct.dz_inv(g) - g;
      const auto rows = d.nodes_at_distance(0.1);
      const double err = std::max(max_abs_rows(r1, rows), max_abs_rows(r2, rows));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 5e-2);
  }
}

TEST_CASE("closed-form K agrees with ray quadrature") {
  const Domain half = Domain::build(DomainKind::HalfDisk, 16, 64);
  for (Point p : {Point{0.0, 0.0}, Point{0.2, 0.5}, Point{-0.7, 0.01}, Point{0.5, 0.0},
                  Point{-1.0, 0.0}, Point{0.6, 0.8}, Point{0.001, 0.002}}) {
    CHECK(std::abs(cauchy_weight_integral(half, p) - cauchy_weight_integral_by_rays(half, p)) <
          1e-10);
  }
}
