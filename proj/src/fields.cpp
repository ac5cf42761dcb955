#include "cgolab/fields.hpp"

#include <Eigen/SVD>

namespace cgolab {

namespace {

cd ipow(cd z, int n) {
  if (n < 0) return 0.0;
  cd r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

/// Wirtinger monomial data for z^p zbar^q: value and the five derivatives.
struct MonomialJet {
  cd f, fz, fzb, fzz, fzzb, fzbzb;
};

MonomialJet monomial(cd z, int p, int q) {
  const cd zb = std::conj(z);
  MonomialJet m;
  m.f = ipow(z, p) * ipow(zb, q);
  m.fz = p == 0 ? 0.0 : double(p) * ipow(z, p - 1) * ipow(zb, q);
  m.fzb = q == 0 ? 0.0 : double(q) * ipow(z, p) * ipow(zb, q - 1);
  m.fzz = p < 2 ? 0.0 : double(p * (p - 1)) * ipow(z, p - 2) * ipow(zb, q);
  m.fzzb = (p == 0 || q == 0) ? 0.0 : double(p * q) * ipow(z, p - 1) * ipow(zb, q - 1);
  m.fzbzb = q < 2 ? 0.0 : double(q * (q - 1)) * ipow(z, p) * ipow(zb, q - 2);
  return m;
}

template <class T>
Jet<T> poly_jet(const std::vector<ZTermOf<T>>& terms, const T& zero, Point pt) {
  T f = zero, fz = zero, fzb = zero, fzz = zero, fzzb = zero, fzbzb = zero;
  for (const auto& t : terms) {
    const MonomialJet m = monomial(pt.z(), t.p, t.q);
    f += m.f * t.c;
    fz += m.fz * t.c;
    fzb += m.fzb * t.c;
    fzz += m.fzz * t.c;
    fzzb += m.fzzb * t.c;
    fzbzb += m.fzbzb * t.c;
  }
  return from_wirtinger<T>(f, fz, fzb, fzz, fzzb, fzbzb);
}

double uniform(std::mt19937_64& rng) {
  // Portable across standard libraries, unlike std::uniform_real_distribution.
  return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

}  // namespace

Field<cd> zpoly(std::vector<ZTerm> terms) {
  std::vector<ZTermOf<cd>> t;
  t.reserve(terms.size());
  for (const auto& z : terms) t.push_back({z.p, z.q, z.c});
  return [t = std::move(t)](Point p) { return poly_jet<cd>(t, cd{}, p); };
}

Field<CMat> matrix_zpoly(int n, std::vector<MatTerm> terms) {
  return [n, terms = std::move(terms)](Point p) {
    return poly_jet<CMat>(terms, CMat::Zero(n, n), p);
  };
}

Field<CVec> vector_zpoly(int n, std::vector<VecTerm> terms) {
  return [n, terms = std::move(terms)](Point p) {
    return poly_jet<CVec>(terms, CVec::Zero(n), p);
  };
}

Field<cd> holomorphic_poly(std::vector<cd> coeffs) {
  std::vector<ZTerm> terms;
  for (int k = 0; k < int(coeffs.size()); ++k) {
    if (coeffs[k] != cd{}) terms.push_back({k, 0, coeffs[k]});
  }
  return zpoly(std::move(terms));
}

Field<cd> exp_cos_field() {
  return [](Point p) {
    const cd e = std::exp(p.z());
    const cd eb = std::conj(e);
    // Re e^z = (e^z + e^zbar) / 2
    return from_wirtinger<cd>(0.5 * (e + eb), 0.5 * e, 0.5 * eb, 0.5 * e, 0.0, 0.5 * eb);
  };
}

Field<CMat> scaled_matrix(Field<cd> s, CMat m) {
  return [s = std::move(s), m = std::move(m)](Point p) {
    return s(p) * Jet<CMat>::constant(m);
  };
}

Field<CVec> scaled_vector(Field<cd> s, CVec dir) {
  return [s = std::move(s), dir = std::move(dir)](Point p) {
    return s(p) * Jet<CVec>::constant(dir);
  };
}

Field<cd> exp_field(Field<cd> f) {
  return [f = std::move(f)](Point p) { return exp(f(p)); };
}

Jet<cd> smooth_step(const Jet<cd>& t) {
  const double s = t.v.real();
  if (s <= 0.0) return Jet<cd>::constant(0.0);
  if (s >= 1.0) return Jet<cd>::constant(1.0);
  // s(t) = a / (a + b) with a = exp(-1/t), b = exp(-1/(1-t))
  const Jet<cd> one = Jet<cd>::constant(1.0);
  const Jet<cd> a = exp(-reciprocal(t));
  const Jet<cd> b = exp(-reciprocal(one - t));
  return a * reciprocal(a + b);
}

Field<cd> radial_cutoff(Point center, double r_in, double r_out) {
  return [=](Point p) {
    const double rho = (p - center).norm();
    if (rho <= r_in) return Jet<cd>::constant(1.0);
    if (rho >= r_out) return Jet<cd>::constant(0.0);
    Jet<cd> dx;
    dx.v = p.x - center.x;
    dx.d = {1.0, 0.0};
    dx.dd = {0.0, 0.0, 0.0};
    Jet<cd> dy;
    dy.v = p.y - center.y;
    dy.d = {0.0, 1.0};
    dy.dd = {0.0, 0.0, 0.0};
    const Jet<cd> r = sqrt(dx * dx + dy * dy);
    const Jet<cd> t = (1.0 / (r_out - r_in)) * (r - Jet<cd>::constant(r_in));
    return Jet<cd>::constant(1.0) - smooth_step(t);
  };
}

Field<cd> bump(Point center, double radius) {
  return [=](Point p) {
    const Point q = p - center;
    const double s2 = (q.x * q.x + q.y * q.y) / (radius * radius);
    if (s2 >= 1.0) return Jet<cd>::constant(0.0);
    // exp(1 - 1/(1 - s^2)) with s^2 a polynomial jet
    Jet<cd> s;
    s.v = s2;
    s.d = {2.0 * q.x / (radius * radius), 2.0 * q.y / (radius * radius)};
    s.dd = {2.0 / (radius * radius), 0.0, 2.0 / (radius * radius)};
    const Jet<cd> one = Jet<cd>::constant(1.0);
    return exp(one - reciprocal(one - s));
  };
}

std::vector<MatTerm> random_matrix_terms(int n, int degree, std::mt19937_64& rng) {
  std::vector<MatTerm> terms;
  for (int total = 0; total <= degree; ++total) {
    for (int p = 0; p <= total; ++p) {
      CMat c(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double re = uniform(rng);
          const double im = uniform(rng);
          c(i, j) = {re, im};
        }
      }
      terms.push_back({p, total - p, c});
    }
  }
  return terms;
}

std::vector<VecTerm> random_vector_terms(int n, int degree, std::mt19937_64& rng) {
  std::vector<VecTerm> terms;
  for (int total = 0; total <= degree; ++total) {
    for (int p = 0; p <= total; ++p) {
      CVec c(n);
      for (int i = 0; i < n; ++i) {
        const double re = uniform(rng);
        const double im = uniform(rng);
        c(i) = {re, im};
      }
      terms.push_back({p, total - p, c});
    }
  }
  return terms;
}

double sup_norm(const Field<CMat>& f, std::span<const Point> samples) {
  double best = 0.0;
  for (const Point& p : samples) {
    const CMat m = f(p).v;
    const Eigen::MatrixXcd dense = m;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

}  // namespace cgolab
