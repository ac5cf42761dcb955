#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace cgolab {

using cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cd kI{0.0, 1.0};

/// Systems are small (N <= 4), so fixed-capacity storage avoids heap traffic.
inline constexpr int kMaxSystem = 4;

using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, kMaxSystem, 1>;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSystem, kMaxSystem>;

/// Grid field storage: one row per node, one column per component.
using GridField = Eigen::MatrixXcd;

struct Point {
  double x = 0.0;
  double y = 0.0;

  [[nodiscard]] cd z() const { return {x, y}; }
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

inline CMat identity(int n) { return CMat::Identity(n, n); }

}  // namespace cgolab
