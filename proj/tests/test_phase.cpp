#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "cgolab/errors.hpp"
#include "cgolab/phase.hpp"

using namespace cgolab;

TEST_CASE("critical points") {
  const Domain disk = Domain::build(DomainKind::Disk, 16, 64);
  const Domain half = Domain::build(DomainKind::HalfDisk, 16, 64);

  const auto z2 = HolomorphicPhase::make({0.0, 0.0, 1.0}, disk);
  REQUIRE(z2.critical_points().size() == 1);
  CHECK(std::abs(z2.critical_points()[0]) < 1e-12);
  CHECK(z2.d2(0.0) == cd{2.0});

  CHECK_THROWS_AS(HolomorphicPhase::make({0.0, -1.0, 0.0, 1.0 / 3.0}, disk), CriticalOnBoundary);
  CHECK_THROWS_AS(HolomorphicPhase::make({0.0, 0.0, 0.0, 1.0}, disk), DegenerateCritical);

  const cd zt{0.3, 0.4};
  const auto coeffs = conjugate_pair_phase(zt);
  CHECK(std::abs(coeffs[1] - 0.25) < 1e-15);
  CHECK(std::abs(coeffs[2] + 0.3) < 1e-15);
  const auto on_disk = HolomorphicPhase::make(coeffs, disk);
  CHECK(on_disk.critical_points().size() == 2);
  const auto on_half = HolomorphicPhase::make(coeffs, half);
  REQUIRE(on_half.critical_points().size() == 1);
  CHECK(std::abs(on_half.critical_points()[0] - zt) < 1e-12);
  CHECK(std::abs(on_half.d2(zt) - 2.0 * kI * zt.imag()) < 1e-12);
  CHECK(std::abs(on_half.d1(on_half.critical_points()[0])) < 1e-12);
}

TEST_CASE("phase invariants") {
  const Domain disk = Domain::build(DomainKind::Disk, 16, 64);
  const auto p = HolomorphicPhase::make({cd{0.1, 0.2}, 0.3, cd{0.5, -0.2}, cd{0.0, 0.3}, 0.1}, disk);
  const Field<cd> f = p.field();
  for (Point q : {Point{0.1, 0.2}, Point{-0.5, 0.3}, Point{0.7, -0.6}}) {
    const Jet<cd> j = f(q);
    CHECK(std::abs(dzbar(j).v) < 1e-14);
    // Re and Im of a holomorphic function are harmonic.
    CHECK(std::abs(laplacian(j).v) < 1e-12);
    const Eigen::Matrix2d h = p.psi_hessian(q);
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(std::abs(std::abs(h.determinant()) - std::norm(p.d2(q.z()))) < 1e-12);
    // Hessian agrees with the jet of Im Phi.
    CHECK(std::abs(h(0, 0) - j.dd[0].imag()) < 1e-12);
    CHECK(std::abs(h(0, 1) - j.dd[1].imag()) < 1e-12);
  }
  // Perturbation moves critical points by O(eps).
  for (double eps : {1e-3, 1e-4}) {
    const auto q = p.perturbed(eps, disk);
    REQUIRE(q.critical_points().size() == p.critical_points().size());
    for (std::size_t k = 0; k < q.critical_points().size(); ++k) {
      CHECK(std::abs(q.critical_points()[k] - p.critical_points()[k]) < 50.0 * eps);
    }
  }
}

TEST_CASE("admissibility and separation") {
  const Domain disk = Domain::build(DomainKind::Disk, 16, 64);
  const Domain half = Domain::build(DomainKind::HalfDisk, 16, 64);
  const auto real_phase = HolomorphicPhase::make(conjugate_pair_phase({0.3, 0.4}), half);
  CHECK(admissible_for(half, real_phase).admissible);

  // Phi = i z^2 on the half-disk: critical point on the diameter, so make()
  // refuses; the Im condition alone fails on the disk-built phase.
  const auto iz2 = HolomorphicPhase::make({0.0, 0.0, kI}, disk);
  CHECK_FALSE(admissible_for(half, iz2).admissible);
  CHECK(admissible_for(half, iz2).max_im_on_gamma0 > 0.5);
  CHECK(admissible_for(disk, HolomorphicPhase::make({0.0, 0.0, 1.0}, disk)).admissible);

  CHECK_FALSE(critical_values_separated(HolomorphicPhase::make({0.0, 0.0, 1.0}, disk)));
  CHECK(critical_values_separated(HolomorphicPhase::make({cd{0.0, 0.3}, 0.0, 1.0}, disk)));
  // Two critical points with equal psi.
  const auto twin = HolomorphicPhase::make({cd{0.0, 0.2}, 0.0, -0.25, 0.0, 1.0}, disk);
  REQUIRE(twin.critical_points().size() == 3);
  CHECK_FALSE(critical_values_separated(twin));
}
