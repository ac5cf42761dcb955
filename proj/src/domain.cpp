#include "cgolab/domain.hpp"

#include <algorithm>
#include <cmath>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

void lagrange3(const double x[3], double t, double w[3]) {
  for (int a = 0; a < 3; ++a) {
    double num = 1.0;
    double den = 1.0;
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      num *= t - x[b];
      den *= x[a] - x[b];
    }
    w[a] = num / den;
  }
}

}  // namespace

std::string to_string(DomainKind kind) {
  return kind == DomainKind::Disk ? "disk" : "half_disk";
}

DomainKind domain_kind_from_string(const std::string& name) {
  if (name == "disk") return DomainKind::Disk;
  if (name == "half_disk") return DomainKind::HalfDisk;
  throw ConfigError("unknown domain kind '" + name + "'");
}

Domain Domain::build(DomainKind kind, int n_r, int n_theta) {
  const AngleInterval arc =
      kind == DomainKind::Disk ? AngleInterval{0.0, 2.0 * kPi} : AngleInterval{0.0, kPi};
  return build(kind, n_r, n_theta, arc);
}

Domain Domain::build(DomainKind kind, int n_r, int n_theta, AngleInterval gamma_arc) {
  if (n_r < 8 || n_theta < 16) {
    throw DomainError("resolution too coarse: n_r >= 8 and n_theta >= 16 required");
  }
  if (n_theta % 2 != 0) throw DomainError("n_theta must be even");
  const double expect_hi = kind == DomainKind::Disk ? 2.0 * kPi : kPi;
  if (std::abs(gamma_arc.lo) > 1e-12 || std::abs(gamma_arc.hi - expect_hi) > 1e-12) {
    throw DomainError("gamma_arc must be the full " +
                      std::string(kind == DomainKind::Disk ? "circle" : "semicircle"));
  }

  Domain d;
  d.kind_ = kind;
  d.n_r_ = n_r;
  d.n_theta_ = n_theta;
  const bool half = kind == DomainKind::HalfDisk;
  d.slots_ = half ? n_theta + 1 : n_theta;
  d.h_ = 1.0 / (n_r + 0.5);
  d.dtheta_ = (half ? kPi : 2.0 * kPi) / n_theta;

  const int total = (n_r + 1) * d.slots_ + (half ? 1 : 0);
  d.points_.resize(total);
  d.radius_.resize(total);
  d.angle_.resize(total);
  d.ring_.resize(total);
  d.slot_.resize(total);
  d.node_kind_.resize(total);
  d.on_gamma0_.assign(total, false);
  d.area_weight_.resize(total);
  d.dist_.resize(total);
  d.interior_index_.assign(total, -1);

  const double h = d.h_;
  const double dth = d.dtheta_;
  const double outer_strip = 0.5 * (1.0 - (1.0 - 0.5 * h) * (1.0 - 0.5 * h));

  for (int i = 1; i <= n_r + 1; ++i) {
    const double r = d.ring_radius(i);
    for (int j = 0; j < d.slots_; ++j) {
      const int n = d.node(i, j);
      const double th = j * dth;
      const bool ray = half && (j == 0 || j == n_theta);
      Point p{r * std::cos(th), r * std::sin(th)};
      if (half && j == n_theta) p = {-r, 0.0};
      if (j == 0) p = {r, 0.0};
      d.points_[n] = p;
      d.radius_[n] = r;
      d.angle_[n] = th;
      d.ring_[n] = i;
      d.slot_[n] = j;
      if (i <= n_r) {
        d.node_kind_[n] = ray ? NodeKind::Ray : NodeKind::Interior;
        d.area_weight_[n] = r * h * dth * (ray ? 0.5 : 1.0);
        d.on_gamma0_[n] = ray;
      } else {
        d.node_kind_[n] = NodeKind::Arc;
        d.area_weight_[n] = outer_strip * dth * (ray ? 0.5 : 1.0);
        d.on_gamma0_[n] = ray;  // corners carry zero Dirichlet data
      }
      d.dist_[n] = half ? std::min(1.0 - r, std::max(p.y, 0.0)) : 1.0 - r;
      if (ray) d.dist_[n] = 0.0;
      if (i == n_r + 1) d.dist_[n] = 0.0;
    }
  }
  if (half) {
    const int n = total - 1;
    d.origin_ = n;
    d.points_[n] = {0.0, 0.0};
    d.radius_[n] = 0.0;
    d.angle_[n] = 0.0;
    d.ring_[n] = 0;
    d.slot_[n] = 0;
    d.node_kind_[n] = NodeKind::Origin;
    d.on_gamma0_[n] = true;
    d.area_weight_[n] = 0.0;
    d.dist_[n] = 0.0;
  }
  for (int n = 0; n < total; ++n) {
    if (d.node_kind_[n] == NodeKind::Interior) {
      d.interior_index_[n] = static_cast<int>(d.interior_.size());
      d.interior_.push_back(n);
    }
  }

  // Boundary samples, counterclockwise.
  const int arc_end = half ? n_theta : n_theta - 1;
  for (int j = 0; j <= arc_end; ++j) {
    BoundarySample s;
    s.node = d.node(n_r + 1, j);
    s.point = d.points_[s.node];
    s.nu = {std::cos(j * dth), std::sin(j * dth)};
    if (half && j == n_theta) s.nu = {-1.0, 0.0};
    if (j == 0) s.nu = {1.0, 0.0};
    s.tau = {s.nu.y, -s.nu.x};
    s.weight = dth;
    s.gamma_tilde = true;
    if (half) {
      if (j == 0 || j == n_theta) s.weight = 0.5 * dth;
      s.collar = j <= 2 || j >= n_theta - 2;
    }
    d.boundary_.push_back(s);
  }
  if (half) {
    std::vector<int> seg;
    seg.push_back(d.node(n_r + 1, n_theta));
    for (int i = n_r; i >= 1; --i) seg.push_back(d.node(i, n_theta));
    seg.push_back(d.origin_);
    for (int i = 1; i <= n_r; ++i) seg.push_back(d.node(i, 0));
    seg.push_back(d.node(n_r + 1, 0));
    const int m = static_cast<int>(seg.size());
    for (int k = 0; k < m; ++k) {
      BoundarySample s;
      s.node = seg[k];
      s.point = d.points_[s.node];
      s.nu = {0.0, -1.0};
      s.tau = {s.nu.y, -s.nu.x};
      const double left = k > 0 ? s.point.x - d.points_[seg[k - 1]].x : 0.0;
      const double right = k + 1 < m ? d.points_[seg[k + 1]].x - s.point.x : 0.0;
      s.weight = 0.5 * (left + right);
      s.gamma_tilde = false;
      s.collar = k <= 2 || k >= m - 3;
      d.boundary_.push_back(s);
    }
    d.corners_ = {{1.0, 0.0}, {-1.0, 0.0}};
  }
  return d;
}

double Domain::ring_radius(int ring) const {
  if (ring == n_r_ + 1) return 1.0;
  return (ring - 0.5) * h_;
}

double Domain::distance_to_boundary(Point p) const {
  const double r = p.norm();
  if (kind_ == DomainKind::Disk) return 1.0 - r;
  return std::min(1.0 - r, p.y);
}

bool Domain::contains(Point p) const { return distance_to_boundary(p) >= 0.0; }

BoundaryFrame Domain::boundary_frame(int s) const {
  if (s < 0 || s >= static_cast<int>(boundary_.size())) {
    throw DomainError("boundary index out of range");
  }
  const BoundarySample& b = boundary_[s];
  return {b.point, b.nu, b.tau};
}

cd Domain::area_integral(const Field<cd>& f) const {
  cd sum = 0.0;
  for (int n = 0; n < num_nodes(); ++n) {
    if (area_weight_[n] != 0.0) sum += area_weight_[n] * f(points_[n]).v;
  }
  return sum;
}

cd Domain::area_integral(const Eigen::VectorXcd& values) const {
  return (values.array() * area_weight_.array().cast<cd>()).sum();
}

double Domain::perimeter() const {
  double sum = 0.0;
  for (const auto& s : boundary_) sum += s.weight;
  return sum;
}

GridField Domain::sample(const Field<cd>& f) const {
  GridField out(num_nodes(), 1);
  for (int n = 0; n < num_nodes(); ++n) out(n, 0) = f(points_[n]).v;
  return out;
}

GridField Domain::sample(const Field<CVec>& f, int n) const {
  GridField out(num_nodes(), n);
  for (int k = 0; k < num_nodes(); ++k) out.row(k) = f(points_[k]).v.transpose();
  return out;
}

GridField Domain::sample(const Field<CMat>& f, int n) const {
  GridField out(num_nodes(), n * n);
  for (int k = 0; k < num_nodes(); ++k) flatten_into(out, k, f(points_[k]).v);
  return out;
}

void Domain::interp_weights(Point p, std::vector<std::pair<int, double>>& out) const {
  out.clear();
  const bool half = kind_ == DomainKind::HalfDisk;
  const double r = p.norm();
  double th = std::atan2(p.y, p.x);
  if (th < 0.0) th += half ? 0.0 : 2.0 * kPi;
  if (half) th = std::clamp(th, 0.0, kPi);

  auto radial_coord = [&](int i) {
    if (i == 0) return half ? 0.0 : -0.5 * h_;
    return ring_radius(i);
  };
  int c = static_cast<int>(std::lround(r / h_ + 0.5));
  c = std::clamp(c, 1, n_r_);
  int i0 = c - 1;
  const double xr[3] = {radial_coord(i0), radial_coord(i0 + 1), radial_coord(i0 + 2)};
  double wr[3];
  lagrange3(xr, r, wr);

  for (int a = 0; a < 3; ++a) {
    const int ring = i0 + a;
    if (ring == 0 && half) {
      out.emplace_back(origin_, wr[a]);
      continue;
    }
    int use_ring = ring;
    double t = th;
    if (ring == 0) {
      use_ring = 1;
      t = th + kPi;
    }
    int s = static_cast<int>(std::lround(t / dtheta_));
    int s0 = s - 1;
    if (half) s0 = std::clamp(s0, 0, n_theta_ - 2);
    const double xt[3] = {s0 * dtheta_, (s0 + 1) * dtheta_, (s0 + 2) * dtheta_};
    double wt[3];
    lagrange3(xt, t, wt);
    for (int b = 0; b < 3; ++b) {
      int slot = s0 + b;
      if (!half) slot = ((slot % slots_) + slots_) % slots_;
      out.emplace_back(node(use_ring, slot), wr[a] * wt[b]);
    }
  }
}

Eigen::RowVectorXcd Domain::interpolate(const GridField& values, Point p) const {
  std::vector<std::pair<int, double>> w;
  interp_weights(p, w);
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(values.cols());
  for (const auto& [n, c] : w) out += c * values.row(n);
  return out;
}

std::vector<int> Domain::nodes_at_distance(double dmin) const {
  std::vector<int> out;
  for (int n = 0; n < num_nodes(); ++n) {
    if (dist_[n] >= dmin) out.push_back(n);
  }
  return out;
}

CMat unflatten(const GridField& f, int row, int n) {
  CMat m(n, n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) m(a, b) = f(row, mat_col(a, b, n));
  }
  return m;
}

void flatten_into(GridField& f, int row, const CMat& m) {
  const int n = static_cast<int>(m.rows());
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) f(row, mat_col(a, b, n)) = m(a, b);
  }
}

}  // namespace cgolab
