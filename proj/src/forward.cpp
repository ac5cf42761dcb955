#include "cgolab/forward.hpp"

#include <cmath>
#include <mutex>

#include <Eigen/SparseLU>

#include "cgolab/errors.hpp"

namespace cgolab {

struct Factorization {
  std::once_flag once;
  Eigen::SparseLU<Eigen::SparseMatrix<cd>, Eigen::COLAMDOrdering<int>> lu;
  double condition = 0.0;
};

namespace {

using Triplet = Eigen::Triplet<cd>;

Eigen::VectorXcd interleave(const GridField& u) {
  Eigen::VectorXcd x(u.size());
  for (Eigen::Index node = 0; node < u.rows(); ++node) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) x(node * u.cols() + c) = u(node, c);
  }
  return x;
}

GridField deinterleave(const Eigen::VectorXcd& x, int n) {
  GridField u(x.size() / n, n);
  for (Eigen::Index node = 0; node < u.rows(); ++node) {
    for (int c = 0; c < n; ++c) u(node, c) = x(node * n + c);
  }
  return u;
}

// Hager's 1-norm estimate of ||M^{-1}||_1 using the LU factors.
template <class Solver>
double inverse_norm_estimate(Solver& lu, Eigen::Index size) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(size, 1.0 / double(size));
  double est = 0.0;
  Eigen::Index last = -1;
  for (int it = 0; it < 5; ++it) {
    const Eigen::VectorXcd y = lu.solve(x);
    est = y.lpNorm<1>();
    Eigen::VectorXcd xi(size);
    for (Eigen::Index k = 0; k < size; ++k) {
      xi(k) = std::abs(y(k)) > 0.0 ? y(k) / std::abs(y(k)) : cd{1.0};
    }
    const Eigen::VectorXcd z = lu.adjoint().solve(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= std::real(z.dot(x)) || j == last) break;
    last = j;
    x.setZero();
    x(j) = 1.0;
  }
  return est;
}

double matrix_one_norm(const Eigen::SparseMatrix<cd>& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double s = 0.0;
    for (Eigen::SparseMatrix<cd>::InnerIterator it(m, k); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

Factorization& factorized(const EllipticOperator& op) {
  Factorization& f = *op.factor;
  std::call_once(f.once, [&] {
    f.lu.compute(op.matrix);
    if (f.lu.info() != Eigen::Success) {
      f.condition = std::numeric_limits<double>::infinity();
      return;
    }
    f.condition = matrix_one_norm(op.matrix) * inverse_norm_estimate(f.lu, op.matrix.rows());
  });
  return f;
}

}  // namespace

Triple zero_triple(int n) {
  const Field<CMat> z = constant_field<CMat>(CMat::Zero(n, n));
  return {n, z, z, z};
}

GridField EllipticOperator::apply(const GridField& u) const {
  GridField out = deinterleave(matrix * interleave(u), n());
  for (int node = 0; node < domain->num_nodes(); ++node) {
    if (domain->node_kind(node) != NodeKind::Interior) out.row(node).setZero();
  }
  return out;
}

EllipticOperator assemble(const Domain& d, std::shared_ptr<const Stencils> st, const Triple& t) {
  const int n = t.n;
  const GridField a = d.sample(t.a, n);
  const GridField b = d.sample(t.b, n);
  const GridField q = d.sample(t.q, n);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(d.num_nodes()) * n * (6 + 12 * n));
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.node_kind(node) != NodeKind::Interior) {
      for (int c = 0; c < n; ++c) trip.emplace_back(node * n + c, node * n + c, 1.0);
      continue;
    }
    const CMat an = unflatten(a, node, n);
    const CMat bn = unflatten(b, node, n);
    const CMat qn = unflatten(q, node, n);
    for (SpMat::InnerIterator it(st->lap, node); it; ++it) {
      for (int c = 0; c < n; ++c) trip.emplace_back(node * n + c, it.col() * n + c, it.value());
    }
    for (SpMat::InnerIterator it(st->dz, node); it; ++it) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          trip.emplace_back(node * n + r, it.col() * n + c, 2.0 * an(r, c) * it.value());
        }
      }
    }
    for (SpMat::InnerIterator it(st->dzbar, node); it; ++it) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          trip.emplace_back(node * n + r, it.col() * n + c, 2.0 * bn(r, c) * it.value());
        }
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) trip.emplace_back(node * n + r, node * n + c, qn(r, c));
    }
  }
  EllipticOperator op;
  op.domain = &d;
  op.stencils = std::move(st);
  op.coeffs = t;
  op.matrix.resize(d.num_nodes() * n, d.num_nodes() * n);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  op.factor = std::make_shared<Factorization>();
  return op;
}

Triple adjoint_triple(const Triple& t) {
  const Field<CMat> as = adjoint(t.a);
  const Field<CMat> bs = adjoint(t.b);
  return {t.n, cd{-1.0} * bs, cd{-1.0} * as,
          adjoint(t.q) - cd{2.0} * dzbar(as) - cd{2.0} * dz(bs)};
}

Triple alternate_adjoint_triple(const Triple& t) {
  const Field<CMat> as = adjoint(t.a);
  const Field<CMat> bs = adjoint(t.b);
  return {t.n, cd{-1.0} * as, cd{-1.0} * bs, adjoint(t.q) - dz(as) - dzbar(bs)};
}

EllipticOperator adjoint_operator(const EllipticOperator& op) {
  return assemble(*op.domain, op.stencils, adjoint_triple(op.coeffs));
}

GridField apply_exact(const Domain& d, const Triple& t, const Field<CVec>& v) {
  GridField out(d.num_nodes(), t.n);
  for (int node = 0; node < d.num_nodes(); ++node) {
    const Point p = d.point(node);
    const Jet<CVec> j = v(p);
    const CVec lv = laplacian(j).v + 2.0 * t.a(p).v * dz(j).v + 2.0 * t.b(p).v * dzbar(j).v +
                    t.q(p).v * j.v;
    out.row(node) = lv.transpose();
  }
  return out;
}

double consistency_error(const EllipticOperator& op, const Field<CVec>& v, double distance) {
  const Domain& d = *op.domain;
  const GridField diff = op.apply(d.sample(v, op.n())) - apply_exact(d, op.coeffs, v);
  double s = 0.0;
  for (int node : d.nodes_at_distance(distance)) s += d.area_weight(node) * diff.row(node).squaredNorm();
  return std::sqrt(s);
}

double condition_estimate(const EllipticOperator& op) { return factorized(op).condition; }

GridField solve_dirichlet(const EllipticOperator& op, const GridField& f, const SolveOptions& opt) {
  const Domain& d = *op.domain;
  const Factorization& fac = factorized(op);
  if (!(fac.condition <= opt.max_condition)) {
    throw ZeroEigenvalue("condition estimate " + std::to_string(fac.condition) +
                         " exceeds " + std::to_string(opt.max_condition));
  }
  GridField rhs = GridField::Zero(d.num_nodes(), op.n());
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.on_gamma_tilde(node)) rhs.row(node) = f.row(node);
  }
  GridField u = deinterleave(fac.lu.solve(interleave(rhs)), op.n());
  // Dirichlet rows are identity rows; restore them exactly.
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.node_kind(node) != NodeKind::Interior) u.row(node) = rhs.row(node);
  }
  return u;
}

std::vector<int> trace_nodes(const Domain& d) {
  std::vector<int> out;
  for (const auto& s : d.boundary()) {
    if (s.gamma_tilde && !s.collar && d.on_gamma_tilde(s.node)) out.push_back(s.node);
  }
  return out;
}

GridField normal_derivative(const Domain& d, const GridField& u) {
  const std::vector<int> nodes = trace_nodes(d);
  GridField out(nodes.size(), u.cols());
  const int outer = d.n_r() + 1;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int slot = d.slot_of(nodes[k]);
    out.row(k) = (3.0 * u.row(d.node(outer, slot)) - 4.0 * u.row(d.node(outer - 1, slot)) +
                  u.row(d.node(outer - 2, slot))) /
                 (2.0 * d.h());
  }
  return out;
}

BoundaryBasis trig_basis(int kmax) {
  BoundaryBasis b;
  for (int k = -kmax; k <= kmax; ++k) {
    b.names.push_back("exp(" + std::to_string(k) + "i theta)");
    b.functions.emplace_back([k](double t) { return std::exp(cd{0.0, double(k) * t}); });
  }
  return b;
}

BoundaryBasis windowed_basis(int kmax) {
  BoundaryBasis b;
  for (int k = -kmax; k <= kmax; ++k) {
    b.names.push_back("sin^2 theta exp(" + std::to_string(k) + "i theta)");
    b.functions.emplace_back([k](double t) {
      const double s = std::sin(t);
      return s * s * std::exp(cd{0.0, double(k) * t});
    });
  }
  return b;
}

BoundaryBasis default_basis(const Domain& d, int kmax) {
  return d.kind() == DomainKind::Disk ? trig_basis(kmax) : windowed_basis(kmax);
}

DtnMap dtn_map(const EllipticOperator& op, const BoundaryBasis& basis, const SolveOptions& opt) {
  const Domain& d = *op.domain;
  const int n = op.n();
  DtnMap m;
  m.basis = basis.names;
  m.nodes = trace_nodes(d);
  m.n = n;
  m.matrix.resize(m.nodes.size() * n, basis.functions.size() * n);
  for (std::size_t j = 0; j < basis.functions.size(); ++j) {
    for (int c = 0; c < n; ++c) {
      GridField f = GridField::Zero(d.num_nodes(), n);
      for (int node = 0; node < d.num_nodes(); ++node) {
        if (d.on_gamma_tilde(node)) f(node, c) = basis.functions[j](d.angle(node));
      }
      const GridField dn = normal_derivative(d, solve_dirichlet(op, f, opt));
      for (Eigen::Index r = 0; r < dn.rows(); ++r) {
        for (int e = 0; e < n; ++e) m.matrix(r * n + e, j * n + c) = dn(r, e);
      }
    }
  }
  return m;
}

double relative_difference(const DtnMap& m1, const DtnMap& m2) {
  return (m1.matrix - m2.matrix).norm() / m1.matrix.norm();
}

Eigen::MatrixXcd galerkin_matrix(const Domain& d, const DtnMap& m, const BoundaryBasis& basis) {
  const std::size_t nb = basis.functions.size();
  Eigen::MatrixXcd trace(m.nodes.size(), nb);
  for (std::size_t r = 0; r < m.nodes.size(); ++r) {
    for (std::size_t j = 0; j < nb; ++j) trace(r, j) = basis.functions[j](d.angle(m.nodes[r]));
  }
  Eigen::MatrixXcd g(nb, nb);
  for (std::size_t j = 0; j < nb; ++j) {
    const cd norm = trace.col(j).squaredNorm();
    for (std::size_t k = 0; k < nb; ++k) g(j, k) = trace.col(j).dot(m.matrix.col(k * m.n)) / norm;
  }
  return g;
}

double green_identity_residual(const EllipticOperator& op, const EllipticOperator& adj,
                               const Field<CVec>& u, const Field<CVec>& v) {
  const Domain& d = *op.domain;
  const int n = op.n();
  const GridField us = d.sample(u, n);
  const GridField vs = d.sample(v, n);
  GridField lu = op.apply(us);
  GridField lv = adj.apply(vs);
  const GridField lu_exact = apply_exact(d, op.coeffs, u);
  const GridField lv_exact = apply_exact(d, adj.coeffs, v);
  for (int node = 0; node < d.num_nodes(); ++node) {
    if (d.node_kind(node) != NodeKind::Interior) {
      lu.row(node) = lu_exact.row(node);
      lv.row(node) = lv_exact.row(node);
    }
  }
  cd area = 0.0;
  for (int node = 0; node < d.num_nodes(); ++node) {
    area += d.area_weight(node) *
            (vs.row(node).dot(lu.row(node)) -
             lv.row(node).dot(us.row(node)));
  }
  cd bdry = 0.0;
  for (const auto& s : d.boundary()) {
    const Point p = s.point;
    const Jet<CVec> ju = u(p);
    const Jet<CVec> jv = v(p);
    const CVec dnu = s.nu.x * ju.d[0] + s.nu.y * ju.d[1];
    const CVec dnv = s.nu.x * jv.d[0] + s.nu.y * jv.d[1];
    const CMat c = op.coeffs.a(p).v * cd{s.nu.x, -s.nu.y} + op.coeffs.b(p).v * cd{s.nu.x, s.nu.y};
    bdry += s.weight * (jv.v.dot(dnu) - dnv.dot(ju.v) + jv.v.dot(c * ju.v));
  }
  return std::abs(area - bdry);
}

double green_identity_residual(const EllipticOperator& op, const Field<CVec>& u,
                               const Field<CVec>& v) {
  return green_identity_residual(op, adjoint_operator(op), u, v);
}

}  // namespace cgolab
