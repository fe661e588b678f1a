#pragma once

#include "momentflow/cartan.hpp"
#include "momentflow/reps.hpp"

namespace momentflow {

/// m(v) in p together with F(v) = tr(m(v)^2) and the spectrum of m(v).
struct MomentValue {
  Matrix matrix;
  double energy = 0.0;
  Vector spectrum;  // non-increasing
};

/// Generic moment map via the orthonormal p basis:
///   m(v) = sum_k <pi(B_k) v, v> / <v, v> * B_k.
/// For TorusWeights only the diagonal (torus) prefix of the basis is used, so
/// m(v) lies in a.
MomentValue moment(const CartanContext& ctx, const RepSpec& spec, const Vector& v);

/// Closed-form moment map for the GL_n families:
///   Standard  v v^T / |v|^2
///   Dual      -v v^T / |v|^2
///   Adjoint   [x, x^T] / |x|^2
///   Lambda2   -A^2 / |A|^2 with |A|^2 = -tr(A^2) / 2
///   Brackets  (sum_ij mu_ij mu_ij^T - 2 sum_j G_j) / |mu|^2, G_j the Gram matrix of mu(., e_j)
MomentValue closed_form_moment(const RepSpec& spec, const Vector& v);

double energy(const CartanContext& ctx, const RepSpec& spec, const Vector& v);

struct TranslatedMoment {
  Matrix matrix;       // h m(rho(h)^-1 v) h^-1
  bool in_Ad_h_p;      // h^-1 matrix h is symmetric
  bool symmetric;      // matrix itself lies in p (true for orthogonal h)
};

TranslatedMoment translated_moment(const CartanContext& ctx, const RepSpec& spec, const Matrix& h, const Vector& v);

/// |pi(m(v)) v - F(v) v| / |v|; zero exactly at critical directions of F.
double criticality_residual(const CartanContext& ctx, const RepSpec& spec, const Vector& v);

/// Same as above with m(v) already computed.
double criticality_residual(const RepSpec& spec, const Vector& v, const MomentValue& m);

/// Builds the MomentValue fields derived from a symmetric matrix.
MomentValue make_moment_value(const Matrix& m);

}  // namespace momentflow
