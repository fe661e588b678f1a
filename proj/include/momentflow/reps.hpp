#pragma once

#include "momentflow/cartan.hpp"

#include <map>
#include <string>
#include <vector>

namespace momentflow {

enum class Family { Standard, Dual, Adjoint, Lambda2, Brackets, TorusWeights };

std::string to_string(Family f);
/// Case-insensitive; accepts "lambda2"/"wedge2" and "torus"/"torusweights".
Family parse_family(const std::string& s);

/// Character of the diagonal torus, an integer n-vector.
using WeightVector = std::vector<int>;

/// One of the built-in GL_n representations, or an abstract torus representation
/// given by its weight list.
///
/// Coordinate conventions (the V inner product is the dot product on coordinates):
///   Standard, Dual  e_i
///   Adjoint         E_ij, row-major
///   Lambda2         Phi(e_i ^ e_j) = E_ij - E_ji for i < j, lexicographic
///   Brackets        c^l_ij for i < j, pair-major then l: index = pair * n + (l - 1)
///   TorusWeights    one coordinate per listed weight
struct RepSpec {
  Family family = Family::Standard;
  int n = 1;
  std::vector<WeightVector> weights;  // TorusWeights only

  static RepSpec make(Family family, int n);
  static RepSpec torus(std::vector<WeightVector> weights);

  bool operator==(const RepSpec&) const = default;
};

struct RepVector {
  RepSpec spec;
  Vector coords;
};

int rep_dim(const RepSpec& spec);

/// Lexicographic index of the pair (i, j), 0 <= i < j < n.
int pair_index(int n, int i, int j);

/// rho(g) v.
Vector apply_group(const RepSpec& spec, const Matrix& g, const Vector& v);

/// pi(X) v, the derivative of rho(exp(tX)) v at t = 0.
Vector apply_lie(const RepSpec& spec, const Matrix& x, const Vector& v);

/// Torus weight of every coordinate, in coordinate order.
std::vector<WeightVector> weights_of(const RepSpec& spec);

/// Groups coordinates by weight and drops components with norm <= zero_tol * |v|.
std::map<WeightVector, Vector> weight_components(const RepSpec& spec, const Vector& v, double zero_tol = 1e-12);

/// Lambda2 coordinates of Phi(x ^ y) = x y^T - y x^T.
Vector lambda2_embed(const Vector& x, const Vector& y);

/// Human-readable basis labels, e.g. "E12", "c^3_12".
std::vector<std::string> basis_labels(const RepSpec& spec);

/// 2-norm condition number of g.
double condition_number(const Matrix& g);

// Helpers shared with the bracket catalog.
Matrix unpack_skew(int n, const Vector& coords);
Vector pack_skew(const Matrix& a);
/// mu(e_i, e_j) for all ordered pairs, as an n*n array of n-vectors (index i*n + j).
std::vector<Vector> bracket_table(int n, const Vector& coords);

}  // namespace momentflow
