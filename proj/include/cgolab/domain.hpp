#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cgolab/jet.hpp"
#include "cgolab/types.hpp"

namespace cgolab {

enum class DomainKind { Disk, HalfDisk };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

/// Interior: unknown of the Dirichlet problem. Arc: node on the circular part
/// of the boundary. Ray: node on the diameter of the half-disk (excluding the
/// corners, which are arc nodes). Origin: the centre of the half-disk diameter.
enum class NodeKind { Interior, Arc, Ray, Origin };

struct BoundaryFrame {
  Point point;
  Point nu;
  Point tau;  // (nu2, -nu1)
};

struct BoundarySample {
  int node = -1;
  Point point;
  Point nu;
  Point tau;
  double weight = 0.0;       // arc length
  bool gamma_tilde = false;  // accessible part of the boundary
  bool collar = false;       // within two cells of a corner
};

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Polar grid on the unit disk or upper half-disk.
///
/// Rings sit at r_i = (i - 1/2) h for i = 1..n_r with h = 1/(n_r + 1/2), so the
/// outer ring i = n_r + 1 lands exactly on r = 1. The disk uses n_theta
/// periodic slots; the half-disk uses n_theta + 1 slots covering [0, pi]
/// (slots 0 and n_theta lie on the diameter) plus one node at the origin.
class Domain {
 public:
  static Domain build(DomainKind kind, int n_r, int n_theta, AngleInterval gamma_arc);
  static Domain build(DomainKind kind, int n_r, int n_theta);

  DomainKind kind() const { return kind_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int slots() const { return slots_; }
  double h() const { return h_; }
  double dtheta() const { return dtheta_; }
  int num_nodes() const { return static_cast<int>(points_.size()); }

  /// Node at ring i (1..n_r+1) and slot j.
  int node(int ring, int slot) const { return (ring - 1) * slots_ + slot; }
  /// -1 on the disk.
  int origin() const { return origin_; }
  double ring_radius(int ring) const;
  double slot_angle(int slot) const { return slot * dtheta_; }

  const std::vector<Point>& points() const { return points_; }
  const Point& point(int n) const { return points_[n]; }
  double radius(int n) const { return radius_[n]; }
  double angle(int n) const { return angle_[n]; }
  int ring_of(int n) const { return ring_[n]; }
  int slot_of(int n) const { return slot_[n]; }
  NodeKind node_kind(int n) const { return node_kind_[n]; }
  double area_weight(int n) const { return area_weight_[n]; }
  const Eigen::VectorXd& area_weights() const { return area_weight_; }
  double distance_to_boundary(int n) const { return dist_[n]; }
  double distance_to_boundary(Point p) const;
  bool contains(Point p) const;

  /// Unknowns of the Dirichlet problem, i.e. nodes of kind Interior.
  const std::vector<int>& interior_nodes() const { return interior_; }
  /// Position of a node among interior_nodes(), or -1.
  int interior_index(int n) const { return interior_index_[n]; }

  /// Boundary samples in counterclockwise order. Corners appear twice: once as
  /// the end of the arc and once as the end of the diameter.
  const std::vector<BoundarySample>& boundary() const { return boundary_; }
  BoundaryFrame boundary_frame(int s) const;
  const std::vector<Point>& corners() const { return corners_; }
  /// Grid nodes whose Dirichlet value is prescribed from data on Gamma-tilde.
  bool on_gamma_tilde(int n) const { return node_kind_[n] == NodeKind::Arc && !on_gamma0_[n]; }
  bool on_gamma0(int n) const { return on_gamma0_[n]; }

  cd area_integral(const Field<cd>& f) const;
  cd area_integral(const Eigen::VectorXcd& values) const;
  double perimeter() const;

  /// Evaluate a field on every node. Matrix fields are flattened column-major
  /// into N*N columns.
  GridField sample(const Field<cd>& f) const;
  GridField sample(const Field<CVec>& f, int n) const;
  GridField sample(const Field<CMat>& f, int n) const;

  /// Biquadratic Lagrange interpolation in (r, theta).
  Eigen::RowVectorXcd interpolate(const GridField& values, Point p) const;

  /// Nodes at distance >= d from the boundary.
  std::vector<int> nodes_at_distance(double d) const;

 private:
  Domain() = default;
  void interp_weights(Point p, std::vector<std::pair<int, double>>& out) const;

  DomainKind kind_ = DomainKind::Disk;
  int n_r_ = 0;
  int n_theta_ = 0;
  int slots_ = 0;
  double h_ = 0.0;
  double dtheta_ = 0.0;
  int origin_ = -1;

  std::vector<Point> points_;
  std::vector<double> radius_;
  std::vector<double> angle_;
  std::vector<int> ring_;
  std::vector<int> slot_;
  std::vector<NodeKind> node_kind_;
  std::vector<bool> on_gamma0_;
  Eigen::VectorXd area_weight_;
  std::vector<double> dist_;
  std::vector<int> interior_;
  std::vector<int> interior_index_;
  std::vector<BoundarySample> boundary_;
  std::vector<Point> corners_;
};

/// Flattened index of entry (a, b) of an n x n matrix field.
inline int mat_col(int a, int b, int n) { return a + b * n; }
CMat unflatten(const GridField& f, int row, int n);
void flatten_into(GridField& f, int row, const CMat& m);

}  // namespace cgolab
