#include "momentflow/random.hpp"
#include "momentflow/reps.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace momentflow;

namespace {

std::vector<RepSpec> builtin_specs(int n) {
  return {RepSpec::make(Family::Standard, n), RepSpec::make(Family::Dual, n), RepSpec::make(Family::Adjoint, n),
          RepSpec::make(Family::Lambda2, n), RepSpec::make(Family::Brackets, n)};
}

Matrix random_invertible(int n, Rng& rng) { return random_well_conditioned(n, rng, 0.4); }

}  // namespace

TEST_CASE("dimensions") {
  CHECK(rep_dim(RepSpec::make(Family::Standard, 4)) == 4);
  CHECK(rep_dim(RepSpec::make(Family::Adjoint, 3)) == 9);
  CHECK(rep_dim(RepSpec::make(Family::Lambda2, 4)) == 6);
  CHECK(rep_dim(RepSpec::make(Family::Brackets, 3)) == 9);
  CHECK(rep_dim(RepSpec::torus({{1, 0}, {0, 1}, {1, 1}})) == 3);
  CHECK_THROWS(RepSpec::make(Family::TorusWeights, 2));
  CHECK_THROWS(RepSpec::make(Family::Standard, 0));
  CHECK_THROWS(RepSpec::torus({{1, 0}, {1}}));
  CHECK_THROWS(RepSpec::torus({}));
}

TEST_CASE("family names") {
  CHECK(parse_family("ADJOINT") == Family::Adjoint);
  CHECK(parse_family("wedge2") == Family::Lambda2);
  CHECK(parse_family("torus") == Family::TorusWeights);
  CHECK(to_string(Family::Brackets) == "Brackets");
  CHECK_THROWS(parse_family("spin"));
}

TEST_CASE("pair_index enumerates i<j lexicographically") {
  const int n = 5;
  int expect = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) CHECK(pair_index(n, i, j) == expect++);
}

TEST_CASE("rho is a group homomorphism") {
  Rng rng(1);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& spec : builtin_specs(n)) {
      const Matrix g = random_invertible(n, rng), h = random_invertible(n, rng);
      const Vector v = random_vector(rep_dim(spec), rng);
      const Vector lhs = apply_group(spec, g * h, v);
      const Vector rhs = apply_group(spec, g, apply_group(spec, h, v));
      CHECK((lhs - rhs).norm() < 1e-11 * (1 + lhs.norm()));
      CHECK((apply_group(spec, Matrix::Identity(n, n), v) - v).norm() < 1e-15);
    }
  }
}

TEST_CASE("pi is the derivative of rho") {
  Rng rng(2);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& spec : builtin_specs(n)) {
      const Matrix x = random_matrix(n, n, rng);
      const Vector v = random_vector(rep_dim(spec), rng);
      const double t = 1e-5;
      const Vector fd = (apply_group(spec, (t * x).exp(), v) - apply_group(spec, (-t * x).exp(), v)) / (2 * t);
      CHECK((fd - apply_lie(spec, x, v)).norm() < 1e-8);
    }
  }
}

TEST_CASE("pi is a Lie algebra homomorphism") {
  Rng rng(3);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& spec : builtin_specs(n)) {
      const Matrix x = random_matrix(n, n, rng), y = random_matrix(n, n, rng);
      const Vector v = random_vector(rep_dim(spec), rng);
      const Vector lhs = apply_lie(spec, x * y - y * x, v);
      const Vector rhs = apply_lie(spec, x, apply_lie(spec, y, v)) - apply_lie(spec, y, apply_lie(spec, x, v));
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("orthogonal group acts isometrically and pi(k) is skew") {
  Rng rng(4);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& spec : builtin_specs(n)) {
      const Matrix k = random_orthogonal(n, rng);
      const Vector v = random_vector(rep_dim(spec), rng);
      CHECK(std::abs(apply_group(spec, k, v).norm() - v.norm()) < 1e-12);
      const Matrix a = random_matrix(n, n, rng);
      const Matrix skew = a - a.transpose();
      const Vector w = random_vector(rep_dim(spec), rng);
      CHECK(std::abs(apply_lie(spec, skew, v).dot(w) + v.dot(apply_lie(spec, skew, w))) < 1e-12);
      // symmetric X acts symmetrically
      const Matrix sym = a + a.transpose();
      CHECK(std::abs(apply_lie(spec, sym, v).dot(w) - v.dot(apply_lie(spec, sym, w))) < 1e-12);
    }
  }
}

TEST_CASE("basis vectors are torus weight vectors") {
  Rng rng(5);
  for (int n = 2; n <= 4; ++n) {
    std::vector<RepSpec> specs = builtin_specs(n);
    specs.push_back(RepSpec::torus({std::vector<int>(n, 1), std::vector<int>(n, -2)}));
    for (const auto& spec : specs) {
      const auto weights = weights_of(spec);
      REQUIRE(static_cast<int>(weights.size()) == rep_dim(spec));
      const Vector d = random_vector(n, rng);
      Matrix diag = d.asDiagonal();
      for (int c = 0; c < rep_dim(spec); ++c) {
        Vector e = Vector::Zero(rep_dim(spec));
        e[c] = 1;
        double chi_d = 0;
        for (int i = 0; i < n; ++i) chi_d += weights[c][i] * d[i];
        CHECK((apply_lie(spec, diag, e) - chi_d * e).norm() < 1e-13);
      }
    }
  }
}

TEST_CASE("specific weights") {
  const auto adj = weights_of(RepSpec::make(Family::Adjoint, 2));
  CHECK(adj[1] == WeightVector{1, -1});  // E12
  CHECK(adj[0] == WeightVector{0, 0});
  CHECK(weights_of(RepSpec::make(Family::Dual, 3))[0] == WeightVector{-1, 0, 0});
  CHECK(weights_of(RepSpec::make(Family::Lambda2, 3))[2] == WeightVector{0, 1, 1});
  // c^3_12 scales as d3 / (d1 d2)
  const auto br = weights_of(RepSpec::make(Family::Brackets, 3));
  CHECK(br[pair_index(3, 0, 1) * 3 + 2] == WeightVector{-1, -1, 1});
}

TEST_CASE("weight_components groups and drops zeros") {
  const auto spec = RepSpec::make(Family::Adjoint, 2);
  Vector v(4);
  v << 1, 0, 0, 1;  // identity: both coordinates have weight 0
  const auto comp = weight_components(spec, v);
  REQUIRE(comp.size() == 1);
  CHECK(comp.begin()->first == WeightVector{0, 0});
  CHECK(comp.begin()->second.size() == 2);
  CHECK_THROWS(weight_components(spec, Vector::Zero(4)));
}

TEST_CASE("lambda2_embed is equivariant") {
  Rng rng(6);
  const int n = 4;
  const auto spec = RepSpec::make(Family::Lambda2, n);
  const Vector x = random_vector(n, rng), y = random_vector(n, rng);
  const Matrix g = random_invertible(n, rng);
  CHECK((apply_group(spec, g, lambda2_embed(x, y)) - lambda2_embed(g * x, g * y)).norm() < 1e-12);
  CHECK((unpack_skew(n, lambda2_embed(x, y)) - (x * y.transpose() - y * x.transpose())).norm() < 1e-14);
  CHECK((pack_skew(unpack_skew(n, lambda2_embed(x, y))) - lambda2_embed(x, y)).norm() == 0.0);
}

TEST_CASE("Brackets action is the change of basis of a bilinear map") {
  Rng rng(7);
  const int n = 3;
  const auto spec = RepSpec::make(Family::Brackets, n);
  const Vector mu = random_vector(rep_dim(spec), rng);
  const Matrix g = random_invertible(n, rng);
  const Vector gmu = apply_group(spec, g, mu);
  const auto table = bracket_table(n, mu);
  const auto gtable = bracket_table(n, gmu);
  const Matrix gi = g.inverse();
  // (g.mu)(x, y) = g mu(g^-1 x, g^-1 y)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector expect = Vector::Zero(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) expect += gi(a, i) * gi(b, j) * table[a * n + b];
      CHECK((gtable[i * n + j] - g * expect).norm() < 1e-12);
    }
  for (int i = 0; i < n; ++i) CHECK(table[i * n + i].norm() == 0.0);
}

TEST_CASE("argument checks") {
  const auto spec = RepSpec::make(Family::Standard, 3);
  CHECK_THROWS(apply_lie(spec, Matrix::Identity(2, 2), Vector::Ones(3)));
  CHECK_THROWS(apply_lie(spec, Matrix::Identity(3, 3), Vector::Ones(2)));
  CHECK_THROWS(apply_group(RepSpec::make(Family::Dual, 2), Matrix::Zero(2, 2), Vector::Ones(2)));
  const auto torus = RepSpec::torus({{1, 0}, {0, 1}});
  Matrix off = Matrix::Identity(2, 2);
  off(0, 1) = 1;
  CHECK_THROWS(apply_lie(torus, off, Vector::Ones(2)));
}

TEST_CASE("basis labels and condition number") {
  const auto labels = basis_labels(RepSpec::make(Family::Adjoint, 2));
  CHECK(labels[1] == "E12");
  CHECK(basis_labels(RepSpec::make(Family::Brackets, 3))[2] == "c^3_12");
  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = 4;
  CHECK(std::abs(condition_number(d) - 4) < 1e-14);
}

TEST_CASE("group and Lie action examples") {
  const auto adj = RepSpec::make(Family::Adjoint, 2);
  Vector e12 = Vector::Zero(4);
  e12[1] = 1;
  Matrix g = Matrix::Identity(2, 2);
  g(0, 0) = 2;
  CHECK(apply_group(adj, g, e12) == 2 * e12);
  Matrix h = Matrix::Zero(2, 2);
  h.diagonal() << 1, -1;
  CHECK(apply_lie(adj, h, e12) == 2 * e12);

  const auto std3 = RepSpec::make(Family::Standard, 3);
  Matrix e11 = Matrix::Zero(3, 3);
  e11(0, 0) = 1;
  Vector e1 = Vector::Zero(3);
  e1[0] = 1;
  CHECK(apply_lie(std3, e11, e1) == e1);

  const auto br = RepSpec::make(Family::Brackets, 3);
  Vector heis = Vector::Zero(9);
  heis[pair_index(3, 0, 1) * 3 + 2] = 1;
  CHECK((apply_group(br, 4.0 * Matrix::Identity(3, 3), heis) - heis / 4.0).norm() < 1e-15);
  Matrix e33 = Matrix::Zero(3, 3);
  e33(2, 2) = 1;
  CHECK(apply_lie(br, e33, heis) == heis);
}

TEST_CASE("integer torus elements scale coordinates by their characters exactly") {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 2, 3, 5;
  for (Family f : {Family::Standard, Family::Dual, Family::Adjoint, Family::Lambda2, Family::Brackets}) {
    const auto spec = RepSpec::make(f, 3);
    const auto ws = weights_of(spec);
    const Vector ones = Vector::Ones(rep_dim(spec));
    const Vector scaled = apply_group(spec, a, ones);
    for (int k = 0; k < rep_dim(spec); ++k) {
      double expect = 1;
      for (int i = 0; i < 3; ++i) expect *= std::pow(a(i, i), ws[k][i]);
      CHECK(scaled[k] == doctest::Approx(expect).epsilon(1e-15));
    }
  }
}

TEST_CASE("weights from the catalog") {
  CHECK(weights_of(RepSpec::make(Family::Standard, 2)) == std::vector<WeightVector>{{1, 0}, {0, 1}});
  CHECK(weights_of(RepSpec::make(Family::Dual, 2)) == std::vector<WeightVector>{{-1, 0}, {0, -1}});
  const auto br = weights_of(RepSpec::make(Family::Brackets, 3));
  CHECK(br[pair_index(3, 1, 2) * 3 + 0] == WeightVector{1, -1, -1});
  CHECK(br[pair_index(3, 0, 2) * 3 + 1] == WeightVector{-1, 1, -1});
  Vector e1e2 = Vector::Ones(2);
  CHECK(weight_components(RepSpec::make(Family::Standard, 2), e1e2).size() == 2);
  Vector e12 = Vector::Zero(4);
  e12[1] = 1;
  const auto comp = weight_components(RepSpec::make(Family::Adjoint, 2), e12);
  REQUIRE(comp.size() == 1);
  CHECK(comp.at({1, -1}).size() == 1);
}

TEST_CASE("lambda2_embed examples") {
  Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
  e1[0] = 1;
  e2[1] = 1;
  CHECK(lambda2_embed(e1, e2)[0] == 1.0);
  CHECK(lambda2_embed(e2, e1)[0] == -1.0);
  CHECK(lambda2_embed(e1, e1).norm() == 0.0);
  CHECK_THROWS(lambda2_embed(e1, Vector::Ones(3)));
}
