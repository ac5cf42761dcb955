#include <doctest.h>

#include <cmath>
#include <random>

#include "cgolab/cgo.hpp"
#include "cgolab/fields.hpp"

using namespace cgolab;

namespace {

// Random quadratic coefficients with sup norm `size` on the unit disk.
Triple random_triple(int n, double size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Domain probe = Domain::build(DomainKind::Disk, 16, 64);
  auto make = [&] {
    auto terms = random_matrix_terms(n, 2, rng);
    const double s = sup_norm(matrix_zpoly(n, terms), probe.points());
    for (auto& t : terms) t.c *= size / s;
    return matrix_zpoly(n, terms);
  };
  Triple t;
  t.n = n;
  t.a = make();
  t.b = make();
  t.q = make();
  return t;
}

Field<CVec> amplitude_vector() {
  CVec c0(2), c1(2);
  c0 << 1.0, 0.5;
  c1 << 0.0, 0.3;
  return vector_zpoly(2, {{0, 0, c0}, {1, 0, c1}});
}

struct Setup {
  Domain d;
  std::shared_ptr<const Stencils> st;
  CauchyTransform ct;
  Triple t;
  FundamentalMatrix p1;
  FundamentalMatrix c1;

  Setup(DomainKind kind, int nr, const Triple& tr)
      : d(Domain::build(kind, nr, 4 * nr)),
        st(std::make_shared<const Stencils>(build_stencils(d))),
        ct(d),
        t(tr),
        p1(solve_fundamental(ct, *st, t.a, t.n, FundamentalKind::Dzbar)),
        c1(solve_fundamental(ct, *st, t.b, t.n, FundamentalKind::Dz)) {}
};

}  // namespace

TEST_CASE("amplitudes for trivial coefficients") {
  const Setup s(DomainKind::Disk, 16, zero_triple(2));
  CVec e1(2);
  e1 << 1.0, 0.0;
  const CgoAmplitudes amp =
      build_amplitudes(s.d, *s.st, s.p1, s.c1, s.t.a, s.t.b, constant_field(e1));
  CHECK((amp.u0.col(0).array() - 1.0).abs().maxCoeff() == 0.0);
  CHECK(amp.u0.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((amp.u0_tilde.col(0).array() - 1.0).abs().maxCoeff() == 0.0);
  CHECK(amp.transport_residual < 1e-12);
  CHECK(amp.transport_residual_tilde < 1e-12);

  const CorrectionSources c = build_corrections(s.d, *s.st, s.ct, s.p1, s.c1, s.t, amp);
  CHECK(c.q1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.q2.cwiseAbs().maxCoeff() == 0.0);

  const auto phase = HolomorphicPhase::make({0.0, 0.0, 1.0}, s.d);
  for (const SweepRow& r : residual_sweep(s.d, s.st, s.t, amp, phase, {10.0, 20.0})) {
    CHECK(r.rho < 1e-12);
  }
}

TEST_CASE("amplitudes, corrections and normalisation") {
  const Setup s(DomainKind::HalfDisk, 32, random_triple(2, 0.5, 8));
  const Field<CVec> a = amplitude_vector();
  const CgoAmplitudes amp = build_amplitudes(s.d, *s.st, s.p1, s.c1, s.t.a, s.t.b, a);
  CHECK(amp.transport_residual < 2e-2);
  CHECK(amp.transport_residual_tilde < 2e-2);
  // Real coefficients: a is real on the diameter.
  for (int node = 0; node < s.d.num_nodes(); ++node) {
    if (s.d.node_kind(node) == NodeKind::Ray) CHECK(amp.a.row(node).imag().norm() == 0.0);
  }
  // Linearity in a.
  const CgoAmplitudes amp2 = build_amplitudes(s.d, *s.st, s.p1, s.c1, s.t.a, s.t.b,
                                              cd{2.0} * a + vector_zpoly(2, {}));
  CHECK((amp2.u0 - 2.0 * amp.u0).cwiseAbs().maxCoeff() < 1e-14);

  const CorrectionSources c = build_corrections(s.d, *s.st, s.ct, s.p1, s.c1, s.t, amp);
  CHECK(c.residual_q1 < 5e-2);
  CHECK(c.residual_q2 < 5e-2);
  const cd xt{0.3, 0.4};
  const CorrectionSources cn = build_corrections(s.d, *s.st, s.ct, s.p1, s.c1, s.t, amp, xt);
  CHECK(s.d.interpolate(cn.q1, {0.3, 0.4}).norm() <= 1e-12);
  CHECK(s.d.interpolate(cn.q2, {0.3, 0.4}).norm() <= 1e-12);
  // The kernel element does not change the transport residual.
  CHECK(std::abs(cn.residual_q1 - c.residual_q1) < 1e-3);
}

TEST_CASE("transport cancellation in the residual sweep") {
  const Setup s(DomainKind::Disk, 32, random_triple(2, 0.5, 9));
  const CgoAmplitudes amp =
      build_amplitudes(s.d, *s.st, s.p1, s.c1, s.t.a, s.t.b, amplitude_vector());
  const auto phase = HolomorphicPhase::make({0.0, 0.0, 1.0}, s.d);
  const std::vector<double> taus{10.0, 20.0, 40.0, 80.0};
  const auto valid = residual_sweep(s.d, s.st, s.t, amp, phase, taus);
  double lo = 1e300, hi = 0.0;
  for (const auto& r : valid) {
    lo = std::min(lo, r.rho);
    hi = std::max(hi, r.rho);
  }
  CHECK(hi / lo <= 1.5);

  Triple bad = s.t;
  bad.a = s.t.a + constant_field<CMat>(cd{0.05} * identity(2));
  const auto corrupted = residual_sweep(s.d, s.st, bad, amp, phase, taus);
  CHECK(corrupted.back().rho / corrupted.front().rho >= 4.0);
}
