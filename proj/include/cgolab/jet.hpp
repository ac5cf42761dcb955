#pragma once

// Second-order jets: value plus first and second Cartesian partials of a
// scalar, vector or matrix field. Closed-form fields are expressed as
// functions Point -> Jet, and all algebra on them applies the Leibniz rule
// exactly, so composite expressions carry no discretization error.

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <type_traits>

#include "cgolab/types.hpp"

namespace cgolab {

inline cd zero_like(const cd&) { return cd{0.0, 0.0}; }

template <class Derived>
typename Derived::PlainObject zero_like(const Eigen::MatrixBase<Derived>& m) {
  return Derived::PlainObject::Zero(m.rows(), m.cols());
}

inline cd adjoint_of(const cd& s) { return std::conj(s); }
inline CMat adjoint_of(const CMat& m) { return m.adjoint(); }

template <class A, class B>
struct ProductType;
template <>
struct ProductType<cd, cd> { using type = cd; };
template <>
struct ProductType<cd, CMat> { using type = CMat; };
template <>
struct ProductType<cd, CVec> { using type = CVec; };
template <>
struct ProductType<CMat, cd> { using type = CMat; };
template <>
struct ProductType<CVec, cd> { using type = CVec; };
template <>
struct ProductType<CMat, CMat> { using type = CMat; };
template <>
struct ProductType<CMat, CVec> { using type = CVec; };

template <class A, class B>
using product_t = typename ProductType<A, B>::type;

template <class A, class B>
product_t<A, B> mul(const A& a, const B& b) {
  return a * b;
}

/// Index of the mixed/pure second partial in Jet::dd for (a, b) in {0,1}^2.
constexpr int hess_index(int a, int b) { return a + b; }

template <class T>
struct Jet {
  T v{};
  std::array<T, 2> d{};   // d/dx1, d/dx2
  std::array<T, 3> dd{};  // d11, d12, d22
  int order = 2;          // number of valid derivative levels

  static Jet constant(const T& value) {
    Jet j;
    j.v = value;
    const T z = zero_like(value);
    j.d = {z, z};
    j.dd = {z, z, z};
    j.order = 2;
    return j;
  }

  void require(int needed, const char* what) const {
    if (order < needed) {
      throw std::logic_error(std::string("jet lacks derivatives for ") + what);
    }
  }
};

template <class T>
using Field = std::function<Jet<T>(Point)>;

template <class T>
Jet<T> operator+(const Jet<T>& f, const Jet<T>& g) {
  Jet<T> h;
  h.order = std::min(f.order, g.order);
  h.v = f.v + g.v;
  if (h.order >= 1) {
    for (int a = 0; a < 2; ++a) h.d[a] = f.d[a] + g.d[a];
  }
  if (h.order >= 2) {
    for (int k = 0; k < 3; ++k) h.dd[k] = f.dd[k] + g.dd[k];
  }
  return h;
}

template <class T>
Jet<T> operator*(const cd& s, const Jet<T>& f) {
  Jet<T> h;
  h.order = f.order;
  h.v = s * f.v;
  if (h.order >= 1) {
    for (int a = 0; a < 2; ++a) h.d[a] = s * f.d[a];
  }
  if (h.order >= 2) {
    for (int k = 0; k < 3; ++k) h.dd[k] = s * f.dd[k];
  }
  return h;
}

template <class T>
Jet<T> operator*(double s, const Jet<T>& f) {
  return cd{s, 0.0} * f;
}

template <class T>
Jet<T> operator-(const Jet<T>& f) {
  return -1.0 * f;
}

template <class T>
Jet<T> operator-(const Jet<T>& f, const Jet<T>& g) {
  return f + (-g);
}

template <class A, class B>
Jet<product_t<A, B>> operator*(const Jet<A>& f, const Jet<B>& g) {
  Jet<product_t<A, B>> h;
  h.order = std::min(f.order, g.order);
  h.v = mul(f.v, g.v);
  if (h.order >= 1) {
    for (int a = 0; a < 2; ++a) h.d[a] = mul(f.d[a], g.v) + mul(f.v, g.d[a]);
  }
  if (h.order >= 2) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        const int k = hess_index(a, b);
        h.dd[k] = mul(f.dd[k], g.v) + mul(f.d[a], g.d[b]) + mul(f.d[b], g.d[a]) +
                  mul(f.v, g.dd[k]);
      }
    }
  }
  return h;
}

/// Elementwise conjugate transpose (conjugate for scalars).
template <class T>
Jet<T> adjoint(const Jet<T>& f) {
  Jet<T> h;
  h.order = f.order;
  h.v = adjoint_of(f.v);
  if (h.order >= 1) {
    for (int a = 0; a < 2; ++a) h.d[a] = adjoint_of(f.d[a]);
  }
  if (h.order >= 2) {
    for (int k = 0; k < 3; ++k) h.dd[k] = adjoint_of(f.dd[k]);
  }
  return h;
}

namespace detail {
template <class T>
Jet<T> wirtinger(const Jet<T>& f, double sign) {
  f.require(1, "a Wirtinger derivative");
  const cd half{0.5, 0.0};
  const cd is{0.0, 0.5 * sign};
  Jet<T> h;
  h.order = f.order - 1;
  h.v = half * f.d[0] + is * f.d[1];
  if (h.order >= 1) {
    h.d[0] = half * f.dd[0] + is * f.dd[1];
    h.d[1] = half * f.dd[1] + is * f.dd[2];
  }
  return h;
}
}  // namespace detail

/// dz = (d1 - i d2) / 2
template <class T>
Jet<T> dz(const Jet<T>& f) {
  return detail::wirtinger(f, -1.0);
}

/// dzbar = (d1 + i d2) / 2
template <class T>
Jet<T> dzbar(const Jet<T>& f) {
  return detail::wirtinger(f, +1.0);
}

template <class T>
Jet<T> laplacian(const Jet<T>& f) {
  f.require(2, "the Laplacian");
  Jet<T> h;
  h.order = 0;
  h.v = f.dd[0] + f.dd[2];
  return h;
}

/// Jet from Wirtinger data (f, f_z, f_zbar, f_zz, f_zzbar, f_zbarzbar).
template <class T>
Jet<T> from_wirtinger(const T& f, const T& fz, const T& fzb, const T& fzz, const T& fzzb,
                      const T& fzbzb) {
  Jet<T> j;
  j.v = f;
  j.d[0] = fz + fzb;
  j.d[1] = kI * (fz - fzb);
  j.dd[0] = fzz + 2.0 * fzzb + fzbzb;
  j.dd[1] = kI * (fzz - fzbzb);
  j.dd[2] = -fzz + 2.0 * fzzb - fzbzb;
  j.order = 2;
  return j;
}

/// Wirtinger second derivatives read back from a jet.
template <class T>
T d_zz(const Jet<T>& f) {
  f.require(2, "d_zz");
  return 0.25 * (f.dd[0] - 2.0 * kI * f.dd[1] - f.dd[2]);
}

template <class T>
T d_zbzb(const Jet<T>& f) {
  f.require(2, "d_zbar zbar");
  return 0.25 * (f.dd[0] + 2.0 * kI * f.dd[1] - f.dd[2]);
}

/// Chain rule for a scalar function F applied to a scalar jet, given F, F', F''
/// evaluated at the jet's value.
inline Jet<cd> compose(const Jet<cd>& g, cd f0, cd f1, cd f2) {
  Jet<cd> h;
  h.order = g.order;
  h.v = f0;
  if (h.order >= 1) {
    for (int a = 0; a < 2; ++a) h.d[a] = f1 * g.d[a];
  }
  if (h.order >= 2) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        const int k = hess_index(a, b);
        h.dd[k] = f1 * g.dd[k] + f2 * g.d[a] * g.d[b];
      }
    }
  }
  return h;
}

inline Jet<cd> exp(const Jet<cd>& g) {
  const cd e = std::exp(g.v);
  return compose(g, e, e, e);
}

inline Jet<cd> reciprocal(const Jet<cd>& g) {
  const cd r = 1.0 / g.v;
  return compose(g, r, -r * r, 2.0 * r * r * r);
}

inline Jet<cd> sqrt(const Jet<cd>& g) {
  const cd s = std::sqrt(g.v);
  return compose(g, s, 0.5 / s, -0.25 / (s * g.v));
}

// ---- field combinators --------------------------------------------------

template <class T>
Field<T> constant_field(const T& value) {
  return [value](Point) { return Jet<T>::constant(value); };
}

template <class T>
Field<T> operator+(Field<T> f, Field<T> g) {
  return [f = std::move(f), g = std::move(g)](Point p) { return f(p) + g(p); };
}

template <class T>
Field<T> operator-(Field<T> f, Field<T> g) {
  return [f = std::move(f), g = std::move(g)](Point p) { return f(p) - g(p); };
}

template <class T>
Field<T> operator*(cd s, Field<T> f) {
  return [s, f = std::move(f)](Point p) { return s * f(p); };
}

template <class A, class B>
Field<product_t<A, B>> operator*(Field<A> f, Field<B> g) {
  return [f = std::move(f), g = std::move(g)](Point p) { return f(p) * g(p); };
}

template <class T>
Field<T> adjoint(Field<T> f) {
  return [f = std::move(f)](Point p) { return adjoint(f(p)); };
}

template <class T>
Field<T> dz(Field<T> f) {
  return [f = std::move(f)](Point p) { return dz(f(p)); };
}

template <class T>
Field<T> dzbar(Field<T> f) {
  return [f = std::move(f)](Point p) { return dzbar(f(p)); };
}

}  // namespace cgolab
