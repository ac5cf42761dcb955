#include "cgolab/grid_calculus.hpp"

#include <cmath>
#include <vector>

namespace cgolab {

namespace {

struct Term {
  int node;
  double c;
};
using Row = std::vector<Term>;

class StencilBuilder {
 public:
  explicit StencilBuilder(const Domain& d) : d_(d), half_(d.kind() == DomainKind::HalfDisk) {}

  Row d_r(int n) const {
    const int i = d_.ring_of(n);
    const int j = d_.slot_of(n);
    const double h = d_.h();
    if (i == d_.n_r() + 1) {
      return {{n, 1.5 / h}, {d_.node(i - 1, j), -2.0 / h}, {d_.node(i - 2, j), 0.5 / h}};
    }
    if (i >= 2) return {{d_.node(i + 1, j), 0.5 / h}, {d_.node(i - 1, j), -0.5 / h}};
    if (!half_) {
      const int opp = (j + d_.slots() / 2) % d_.slots();
      return {{d_.node(2, j), 0.5 / h}, {d_.node(1, opp), -0.5 / h}};
    }
    const double a = 0.5 * h;
    const double b = h;
    return {{d_.origin(), -b / (a * (a + b))},
            {n, (b - a) / (a * b)},
            {d_.node(2, j), a / (b * (a + b))}};
  }

  Row d_theta(int n) const {
    const int i = d_.ring_of(n);
    const int j = d_.slot_of(n);
    const double dt = d_.dtheta();
    const int J = d_.slots();
    if (!half_) {
      return {{d_.node(i, (j + 1) % J), 0.5 / dt}, {d_.node(i, (j - 1 + J) % J), -0.5 / dt}};
    }
    const int last = d_.n_theta();
    if (j == 0) {
      return {{n, -1.5 / dt}, {d_.node(i, 1), 2.0 / dt}, {d_.node(i, 2), -0.5 / dt}};
    }
    if (j == last) {
      return {{n, 1.5 / dt}, {d_.node(i, last - 1), -2.0 / dt}, {d_.node(i, last - 2), 0.5 / dt}};
    }
    return {{d_.node(i, j + 1), 0.5 / dt}, {d_.node(i, j - 1), -0.5 / dt}};
  }

  /// Cartesian gradient rows at node n.
  void gradient(int n, Row& gx, Row& gy) const {
    gx.clear();
    gy.clear();
    if (d_.node_kind(n) == NodeKind::Origin) {
      const double h = d_.h();
      gx = {{d_.node(1, 0), 1.0 / h}, {d_.node(1, d_.n_theta()), -1.0 / h}};
      const int up = d_.n_theta() / 2;
      const double a = 0.5 * h;
      const double b = h;
      gy = {{n, -(2.0 * a + b) / (a * (a + b))},
            {d_.node(1, up), (a + b) / (a * b)},
            {d_.node(2, up), -a / (b * (a + b))}};
      return;
    }
    const double r = d_.radius(n);
    const double th = d_.angle(n);
    const double c = std::cos(th);
    const double s = std::sin(th);
    for (const Term& t : d_r(n)) {
      gx.push_back({t.node, c * t.c});
      gy.push_back({t.node, s * t.c});
    }
    for (const Term& t : d_theta(n)) {
      gx.push_back({t.node, -s / r * t.c});
      gy.push_back({t.node, c / r * t.c});
    }
  }

  Row laplacian(int n) const {
    const int i = d_.ring_of(n);
    const int j = d_.slot_of(n);
    const double h = d_.h();
    const double r = d_.radius(n);
    const double rp = r + 0.5 * h;
    const double rm = r - 0.5 * h;
    const double dt = d_.dtheta();
    const double ang = 1.0 / (r * r * dt * dt);
    Row row;
    row.push_back({d_.node(i + 1, j), rp / (r * h * h)});
    if (i >= 2) row.push_back({d_.node(i - 1, j), rm / (r * h * h)});
    const double radial_diag = -(rp + (i >= 2 ? rm : 0.0)) / (r * h * h);
    row.push_back({n, radial_diag - 2.0 * ang});
    const int J = d_.slots();
    const int jp = half_ ? j + 1 : (j + 1) % J;
    const int jm = half_ ? j - 1 : (j - 1 + J) % J;
    row.push_back({d_.node(i, jp), ang});
    row.push_back({d_.node(i, jm), ang});
    return row;
  }

 private:
  const Domain& d_;
  bool half_;
};

SpMat from_triplets(int n, const std::vector<Eigen::Triplet<cd>>& t) {
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

Stencils build_stencils(const Domain& d) {
  const StencilBuilder b(d);
  const int n = d.num_nodes();
  std::vector<Eigen::Triplet<cd>> tx, ty, tz, tzb, tl;
  Row gx, gy;
  for (int k = 0; k < n; ++k) {
    b.gradient(k, gx, gy);
    for (const Term& t : gx) {
      tx.emplace_back(k, t.node, t.c);
      tz.emplace_back(k, t.node, 0.5 * t.c);
      tzb.emplace_back(k, t.node, 0.5 * t.c);
    }
    for (const Term& t : gy) {
      ty.emplace_back(k, t.node, t.c);
      tz.emplace_back(k, t.node, cd{0.0, -0.5 * t.c});
      tzb.emplace_back(k, t.node, cd{0.0, 0.5 * t.c});
    }
    if (d.node_kind(k) == NodeKind::Interior) {
      for (const Term& t : b.laplacian(k)) tl.emplace_back(k, t.node, t.c);
    }
  }
  return {from_triplets(n, tx), from_triplets(n, ty), from_triplets(n, tz), from_triplets(n, tzb),
          from_triplets(n, tl)};
}

GridField grid_dz(const Stencils& s, const GridField& f) { return s.dz * f; }
GridField grid_dzbar(const Stencils& s, const GridField& f) { return s.dzbar * f; }

double max_abs_rows(const GridField& f, const std::vector<int>& rows) {
  double m = 0.0;
  for (int r : rows) m = std::max(m, f.row(r).cwiseAbs().maxCoeff());
  return m;
}

double l2_norm(const Domain& d, const GridField& f) {
  return std::sqrt((f.cwiseAbs2().rowwise().sum().array() * d.area_weights().array()).sum());
}

}  // namespace cgolab
