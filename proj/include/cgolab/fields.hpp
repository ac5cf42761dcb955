#pragma once

// Closed-form field families used as coefficients, test functions and
// amplitudes. Polynomials are written in z and zbar because every operator in
// the library is expressed through Wirtinger derivatives.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cgolab/jet.hpp"

namespace cgolab {

struct ZTerm {
  int p = 0;  // power of z
  int q = 0;  // power of zbar
  cd c{};
};

template <class T>
struct ZTermOf {
  int p = 0;
  int q = 0;
  T c{};
};

using MatTerm = ZTermOf<CMat>;
using VecTerm = ZTermOf<CVec>;

/// sum_k c_k z^{p_k} zbar^{q_k}
Field<cd> zpoly(std::vector<ZTerm> terms);
Field<CMat> matrix_zpoly(int n, std::vector<MatTerm> terms);
Field<CVec> vector_zpoly(int n, std::vector<VecTerm> terms);

/// Scalar holomorphic polynomial sum_k c_k z^k (coefficients low to high).
Field<cd> holomorphic_poly(std::vector<cd> coeffs);

/// e^{x1} cos x2 = Re e^z, a harmonic test function.
Field<cd> exp_cos_field();

/// Field s(x) * M for a scalar field s and constant matrix M.
Field<CMat> scaled_matrix(Field<cd> s, CMat m);

/// Lift a scalar field to an n-vector field with the given constant direction.
Field<CVec> scaled_vector(Field<cd> s, CVec dir);

Field<cd> exp_field(Field<cd> f);

/// C-infinity step: 0 for t <= 0, 1 for t >= 1.
Jet<cd> smooth_step(const Jet<cd>& t);

/// Smooth radial cutoff: 1 within r_in of center, 0 beyond r_out.
Field<cd> radial_cutoff(Point center, double r_in, double r_out);

/// Compactly supported C-infinity bump of given radius (peak 1 at center).
Field<cd> bump(Point center, double radius);

/// Random matrix polynomial with all monomials z^p zbar^q, p + q <= degree.
/// Entries are uniform in the unit square; callers rescale.
std::vector<MatTerm> random_matrix_terms(int n, int degree, std::mt19937_64& rng);
std::vector<VecTerm> random_vector_terms(int n, int degree, std::mt19937_64& rng);

/// max over sample points of the spectral norm of a matrix field.
double sup_norm(const Field<CMat>& f, std::span<const Point> samples);

}  // namespace cgolab
