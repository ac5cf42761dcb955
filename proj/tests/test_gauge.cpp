#include <doctest.h>

#include <cmath>
#include <random>

#include "cgolab/errors.hpp"
#include "cgolab/gauge.hpp"

using namespace cgolab;

namespace {

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

CMat random_s(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i, j) = cd{u(rng), u(rng)};
  }
  return s;
}

Field<CVec> test_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return vector_zpoly(n, random_vector_terms(n, 3, rng));
}

CMat scalar(cd v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("gauge construction") {
  const Domain disk = Domain::build(DomainKind::Disk, 16, 64);
  const Domain half = Domain::build(DomainKind::HalfDisk, 16, 64);

  const GaugeField zero = make_gauge(disk, 2, random_s(2, 1), 0.0);
  for (const Point& p : disk.points()) CHECK((zero.q(p).v - identity(2)).norm() == 0.0);

  const GaugeField g1 = make_gauge(disk, 1, scalar(1.0), 0.5);
  CHECK(std::abs(g1.q({0.0, 0.0}).v(0, 0) - std::exp(0.5)) < 1e-14);

  for (const Domain* d : {&disk, &half}) {
    const GaugeField g = make_gauge(*d, 2, random_s(2, 2), 0.3);
    double off = 0.0, dn = 0.0;
    for (const auto& s : d->boundary()) {
      if (!s.gamma_tilde) continue;
      const Jet<CMat> q = g.q(s.point);
      off = std::max(off, (q.v - identity(2)).norm());
      dn = std::max(dn, (s.nu.x * q.d[0] + s.nu.y * q.d[1]).norm());
      CHECK(std::abs((q.v * g.q_inv(s.point).v - identity(2)).norm()) < 1e-14);
    }
    CHECK(off <= 1e-12);
    CHECK(dn <= 1e-10);
  }
  // Genuinely partial data: Q differs from I on the diameter.
  const GaugeField gh = make_gauge(half, 2, random_s(2, 2), 0.3);
  CHECK((gh.q({0.3, 0.0}).v - identity(2)).norm() > 0.05);

  CHECK_THROWS_AS(make_gauge(disk, 1, scalar(1.0), 0.5, "custom", {{1, 0, 1.0}}), ProfileViolation);
  CHECK_THROWS_AS(make_gauge(disk, 1, scalar(1.0), 2.0), DomainError);
  // (1 - |x|^2) alone vanishes on the arc but its gradient does not.
  CHECK_THROWS_AS(make_gauge(disk, 1, scalar(1.0), 0.5, "custom", {{0, 0, 1.0}, {1, 1, -1.0}}),
                  ProfileViolation);
}

TEST_CASE("scalar transform against the symbolic oracle") {
  const Domain d = Domain::build(DomainKind::Disk, 16, 64);
  Triple t;
  t.n = 1;
  t.a = scaled_matrix(zpoly({{0, 0, 0.3}, {0, 1, cd{0.0, 0.2}}, {2, 0, 0.1}}), scalar(1.0));
  t.b = scaled_matrix(zpoly({{0, 0, -0.4}, {1, 0, 0.5}}), scalar(1.0));
  t.q = scaled_matrix(zpoly({{0, 0, 1.0}, {1, 1, cd{0.0, 0.2}}}), scalar(1.0));
  const GaugeField g = make_gauge(d, 1, scalar(1.0), 0.3);
  const Triple t2 = transform_coefficients(t, g);
  struct Row {
    Point p;
    cd a, b, q;
  };
  // tests/oracles/gauge.py
  const Row rows[] = {
      {{0.1, 0.2}, cd{0.223, -0.2039999999999999}, cd{-0.46399999999999991, 0.3279999999999999}, cd{-1.0762099999999999, 0.15249999999999997}},
      {{-0.4, 0.3}, cd{0.72699999999999998, -0.37399999999999994}, cd{-0.2400000000000001, 0.41999999999999993}, cd{-0.01280000000000003, 0.32765000000000005}},
      {{0.5, -0.5}, cd{-0.099999999999999936, 0.34999999999999992}, cd{-0.44999999999999996, -0.54999999999999993}, cd{1.2549999999999999, 0.054999999999999986}},
  };
  for (const Row& r : rows) {
    CHECK(std::abs(t2.a(r.p).v(0, 0) - r.a) < 1e-13);
    CHECK(std::abs(t2.b(r.p).v(0, 0) - r.b) < 1e-13);
    CHECK(std::abs(t2.q(r.p).v(0, 0) - r.q) < 1e-13);
  }
}

TEST_CASE("conjugation identity and the gauge equation") {
  const Domain d = Domain::build(DomainKind::HalfDisk, 16, 64);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Triple t1 = random_triple(2, 0.5, 100 + seed);
    const GaugeField g = make_gauge(d, 2, random_s(2, seed), 0.3);
    const Triple t2 = transform_coefficients(t1, g);
    const Field<CVec> v = test_vector(2, 200 + seed);
    CHECK(conjugation_residual(d, t1, t2, g, v) <= 1e-10);
    CHECK(gauge_pde_residual(d, t1.a, t2.a, g) <= 1e-10);
    const BoundaryEquality be = boundary_equality(d, t1, t2);
    CHECK(be.a <= 1e-10);
    CHECK(be.b <= 1e-10);

    // Miswiring is detected.
    Triple bad = t2;
    bad.a = t2.a + constant_field<CMat>(CMat::Constant(2, 2, 0.01));
    double scale = 0.0;
    for (int node : d.interior_nodes()) scale = std::max(scale, dz(v(d.point(node))).v.norm());
    CHECK(conjugation_residual(d, t1, bad, g, v) >= 1e-3 * scale);
  }
  const Triple t1 = random_triple(2, 0.5, 7);
  const GaugeField id = make_gauge(d, 2, random_s(2, 7), 0.0);
  const Triple same = transform_coefficients(t1, id);
  for (const Point& p : d.points()) {
    CHECK((same.a(p).v - t1.a(p).v).norm() == 0.0);
    CHECK((same.b(p).v - t1.b(p).v).norm() == 0.0);
    CHECK((same.q(p).v - t1.q(p).v).norm() < 1e-15);
  }
  CHECK(gauge_pde_residual(d, t1.a, t1.a, id) == 0.0);
  CHECK(conjugation_residual(d, t1, same, id, test_vector(2, 1)) < 1e-13);
  CHECK(conjugation_residual(d, t1, transform_coefficients(t1, make_gauge(d, 2, random_s(2, 9), 0.3)),
                             make_gauge(d, 2, random_s(2, 9), 0.3),
                             vector_zpoly(2, {})) == 0.0);
  // A2 from a different gauge.
  const GaugeField g1 = make_gauge(d, 2, random_s(2, 11), 0.3);
  const GaugeField g2 = make_gauge(d, 2, random_s(2, 12), 0.3);
  CHECK(gauge_pde_residual(d, t1.a, transform_coefficients(t1, g2).a, g1) > 0.05);
}

TEST_CASE("composition and inverse") {
  const Domain d = Domain::build(DomainKind::Disk, 16, 64);
  const Triple t = random_triple(2, 0.5, 42);
  const CMat s = random_s(2, 3);
  const GaugeField g1 = make_gauge(d, 2, s, 0.2);
  const GaugeField g2 = make_gauge(d, 2, s, 0.3, "custom", {{0, 0, 1.0}, {1, 1, -2.0}, {2, 2, 1.0}, {3, 3, 0.0}});
  const GaugeField g12 = make_gauge(d, 2, s, 0.5);
  const GaugeField inv = make_gauge(d, 2, s, -0.2);
  const Triple twice = transform_coefficients(transform_coefficients(t, g1), g2);
  const Triple once = transform_coefficients(t, g12);
  const Triple back = transform_coefficients(transform_coefficients(t, g1), inv);
  double e1 = 0.0, e2 = 0.0;
  for (const Point& p : d.points()) {
    if (p.norm() > 0.95) continue;
    e1 = std::max({e1, (twice.a(p).v - once.a(p).v).norm(), (twice.b(p).v - once.b(p).v).norm(),
                   (twice.q(p).v - once.q(p).v).norm()});
    e2 = std::max({e2, (back.a(p).v - t.a(p).v).norm(), (back.b(p).v - t.b(p).v).norm(),
                   (back.q(p).v - t.q(p).v).norm()});
  }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-12);
}

TEST_CASE("DtN invariance and orthogonality") {
  const Triple t1 = random_triple(2, 0.5, 5);
  for (auto kind : {DomainKind::Disk, DomainKind::HalfDisk}) {
    std::vector<double> diff;
    for (int nr : {16, 32}) {
      const Domain d = Domain::build(kind, nr, 2 * nr);
      const auto st = std::make_shared<const Stencils>(build_stencils(d));
      const GaugeField g = make_gauge(d, 2, random_s(2, 5), 0.3);
      const Triple t2 = transform_coefficients(t1, g);
      const BoundaryBasis basis = default_basis(d, 3);
      diff.push_back(dtn_invariance(d, st, t1, t2, basis));
      if (nr == 16) {
        CHECK(dtn_invariance(d, st, t1, t1, basis) == 0.0);
      }
    }
    CHECK(diff[0] / diff[1] >= 3.0);
  }

  const Domain d = Domain::build(DomainKind::Disk, 32, 64);
  const auto st = std::make_shared<const Stencils>(build_stencils(d));
  const GaugeField g = make_gauge(d, 2, random_s(2, 5), 0.3);
  const Triple t2 = transform_coefficients(t1, g);
  GridField f = GridField::Zero(d.num_nodes(), 2);
  GridField h = GridField::Zero(d.num_nodes(), 2);
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (!d.on_gamma_tilde(node)) continue;
    const double t = d.angle(node);
    f(node, 0) = std::cos(t);
    f(node, 1) = cd{0.0, std::sin(2 * t)};
    h(node, 0) = std::exp(cd{0.0, t});
    h(node, 1) = 0.5;
  }
  CHECK(orthogonality_residual(d, st, t1, t1, f, h).value == 0.0);
  const OrthogonalityResult eq = orthogonality_residual(d, st, t1, t2, f, h);
  CHECK(eq.value <= 10.0 * eq.level);
  Triple other = t1;
  other.q = t1.q + scaled_matrix(bump({0.1, 0.2}, 0.6), identity(2));
  const OrthogonalityResult ne = orthogonality_residual(d, st, t1, other, f, h);
  CHECK(ne.value >= 10.0 * eq.value);
}
