#include "momentflow/reps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace momentflow {

namespace {

void require_dim(const RepSpec& spec, const Vector& v, const char* what) {
  if (v.size() != rep_dim(spec))
    throw std::invalid_argument(std::string(what) + ": vector has " + std::to_string(v.size()) +
                                " coordinates, representation has dimension " + std::to_string(rep_dim(spec)));
}

void require_square(const RepSpec& spec, const Matrix& g, const char* what) {
  if (g.rows() != spec.n || g.cols() != spec.n)
    throw std::invalid_argument(std::string(what) + ": matrix must be " + std::to_string(spec.n) + "x" +
                                std::to_string(spec.n));
}

void require_diagonal(const Matrix& g, const char* what) {
  if (!g.isDiagonal(0.0))
    throw std::invalid_argument(std::string(what) + ": TorusWeights only accepts diagonal arguments");
}

Matrix reshape_row_major(int n, const Vector& v) {
  Matrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = v[i * n + j];
  return x;
}

Vector flatten_row_major(const Matrix& x) {
  const auto n = x.rows();
  Vector v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v[i * n + j] = x(i, j);
  return v;
}

Vector pack_brackets(int n, const std::vector<Vector>& table) {
  Vector out(n * n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int p = pair_index(n, i, j);
      out.segment(p * n, n) = table[static_cast<std::size_t>(i * n + j)];
    }
  return out;
}

Matrix checked_inverse(const Matrix& g, const char* what) {
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw std::invalid_argument(std::string(what) + ": matrix is singular");
  return lu.inverse();
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Standard: return "Standard";
    case Family::Dual: return "Dual";
    case Family::Adjoint: return "Adjoint";
    case Family::Lambda2: return "Lambda2";
    case Family::Brackets: return "Brackets";
    case Family::TorusWeights: return "TorusWeights";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "standard") return Family::Standard;
  if (t == "dual") return Family::Dual;
  if (t == "adjoint") return Family::Adjoint;
  if (t == "lambda2" || t == "wedge2") return Family::Lambda2;
  if (t == "brackets") return Family::Brackets;
  if (t == "torusweights" || t == "torus") return Family::TorusWeights;
  throw std::invalid_argument("unknown representation family '" + s + "'");
}

RepSpec RepSpec::make(Family family, int n) {
  if (family == Family::TorusWeights) throw std::invalid_argument("RepSpec::make: use RepSpec::torus for TorusWeights");
  if (n < 1) throw std::invalid_argument("RepSpec::make: n must be positive");
  RepSpec s;
  s.family = family;
  s.n = n;
  return s;
}

RepSpec RepSpec::torus(std::vector<WeightVector> weights) {
  if (weights.empty()) throw std::invalid_argument("RepSpec::torus: weight list is empty");
  const std::size_t n = weights.front().size();
  if (n == 0) throw std::invalid_argument("RepSpec::torus: weights must be non-empty vectors");
  for (const auto& w : weights)
    if (w.size() != n) throw std::invalid_argument("RepSpec::torus: weights have inconsistent lengths");
  RepSpec s;
  s.family = Family::TorusWeights;
  s.n = static_cast<int>(n);
  s.weights = std::move(weights);
  return s;
}

int rep_dim(const RepSpec& spec) {
  const int n = spec.n;
  switch (spec.family) {
    case Family::Standard:
    case Family::Dual: return n;
    case Family::Adjoint: return n * n;
    case Family::Lambda2: return n * (n - 1) / 2;
    case Family::Brackets: return n * n * (n - 1) / 2;
    case Family::TorusWeights: return static_cast<int>(spec.weights.size());
  }
  return 0;
}

int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

Matrix unpack_skew(int n, const Vector& coords) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = coords[pair_index(n, i, j)];
      a(j, i) = -a(i, j);
    }
  return a;
}

Vector pack_skew(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Vector v(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v[pair_index(n, i, j)] = a(i, j);
  return v;
}

std::vector<Vector> bracket_table(int n, const Vector& coords) {
  std::vector<Vector> t(static_cast<std::size_t>(n * n), Vector::Zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector c = coords.segment(pair_index(n, i, j) * n, n);
      t[static_cast<std::size_t>(i * n + j)] = c;
      t[static_cast<std::size_t>(j * n + i)] = -c;
    }
  return t;
}

double condition_number(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[s.size() - 1] == 0.0) return INFINITY;
  return s[0] / s[s.size() - 1];
}

Vector apply_group(const RepSpec& spec, const Matrix& g, const Vector& v) {
  require_dim(spec, v, "apply_group");
  require_square(spec, g, "apply_group");
  const int n = spec.n;
  switch (spec.family) {
    case Family::Standard:
      checked_inverse(g, "apply_group");
      return g * v;
    case Family::Dual: return checked_inverse(g, "apply_group").transpose() * v;
    case Family::Adjoint: {
      Matrix gi = checked_inverse(g, "apply_group");
      return flatten_row_major(g * reshape_row_major(n, v) * gi);
    }
    case Family::Lambda2:
      checked_inverse(g, "apply_group");
      return pack_skew(g * unpack_skew(n, v) * g.transpose());
    case Family::Brackets: {
      Matrix gi = checked_inverse(g, "apply_group");
      auto t = bracket_table(n, v);
      std::vector<Vector> out(t.size(), Vector::Zero(n));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Vector acc = Vector::Zero(n);
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double c = gi(k, i) * gi(l, j);
              if (c != 0.0) acc += c * t[static_cast<std::size_t>(k * n + l)];
            }
          out[static_cast<std::size_t>(i * n + j)] = g * acc;
        }
      return pack_brackets(n, out);
    }
    case Family::TorusWeights: {
      require_diagonal(g, "apply_group");
      for (int i = 0; i < n; ++i)
        if (g(i, i) == 0.0) throw std::invalid_argument("apply_group: matrix is singular");
      Vector out = v;
      for (std::size_t k = 0; k < spec.weights.size(); ++k) {
        double s = 1.0;
        for (int i = 0; i < n; ++i) s *= std::pow(g(i, i), spec.weights[k][static_cast<std::size_t>(i)]);
        out[static_cast<Eigen::Index>(k)] *= s;
      }
      return out;
    }
  }
  return v;
}

Vector apply_lie(const RepSpec& spec, const Matrix& x, const Vector& v) {
  require_dim(spec, v, "apply_lie");
  require_square(spec, x, "apply_lie");
  const int n = spec.n;
  switch (spec.family) {
    case Family::Standard: return x * v;
    case Family::Dual: return -x.transpose() * v;
    case Family::Adjoint: {
      Matrix m = reshape_row_major(n, v);
      return flatten_row_major(x * m - m * x);
    }
    case Family::Lambda2: {
      Matrix a = unpack_skew(n, v);
      return pack_skew(x * a + a * x.transpose());
    }
    case Family::Brackets: {
      auto t = bracket_table(n, v);
      auto at = [&](int i, int j) -> const Vector& { return t[static_cast<std::size_t>(i * n + j)]; };
      std::vector<Vector> out(t.size(), Vector::Zero(n));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Vector acc = x * at(i, j);
          for (int k = 0; k < n; ++k) {
            if (x(k, i) != 0.0) acc -= x(k, i) * at(k, j);
            if (x(k, j) != 0.0) acc -= x(k, j) * at(i, k);
          }
          out[static_cast<std::size_t>(i * n + j)] = acc;
        }
      return pack_brackets(n, out);
    }
    case Family::TorusWeights: {
      require_diagonal(x, "apply_lie");
      Vector out = v;
      for (std::size_t k = 0; k < spec.weights.size(); ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += spec.weights[k][static_cast<std::size_t>(i)] * x(i, i);
        out[static_cast<Eigen::Index>(k)] *= s;
      }
      return out;
    }
  }
  return v;
}

std::vector<WeightVector> weights_of(const RepSpec& spec) {
  const int n = spec.n;
  auto e = [n](int i) {
    WeightVector w(static_cast<std::size_t>(n), 0);
    w[static_cast<std::size_t>(i)] = 1;
    return w;
  };
  std::vector<WeightVector> out;
  switch (spec.family) {
    case Family::Standard:
      for (int i = 0; i < n; ++i) out.push_back(e(i));
      break;
    case Family::Dual:
      for (int i = 0; i < n; ++i) {
        auto w = e(i);
        w[static_cast<std::size_t>(i)] = -1;
        out.push_back(w);
      }
      break;
    case Family::Adjoint:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          WeightVector w(static_cast<std::size_t>(n), 0);
          w[static_cast<std::size_t>(i)] += 1;
          w[static_cast<std::size_t>(j)] -= 1;
          out.push_back(w);
        }
      break;
    case Family::Lambda2:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          WeightVector w(static_cast<std::size_t>(n), 0);
          w[static_cast<std::size_t>(i)] = 1;
          w[static_cast<std::size_t>(j)] = 1;
          out.push_back(w);
        }
      break;
    case Family::Brackets:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            WeightVector w(static_cast<std::size_t>(n), 0);
            w[static_cast<std::size_t>(l)] += 1;
            w[static_cast<std::size_t>(i)] -= 1;
            w[static_cast<std::size_t>(j)] -= 1;
            out.push_back(w);
          }
      break;
    case Family::TorusWeights: out = spec.weights; break;
  }
  return out;
}

std::map<WeightVector, Vector> weight_components(const RepSpec& spec, const Vector& v, double zero_tol) {
  require_dim(spec, v, "weight_components");
  const double norm = v.norm();
  if (norm == 0.0) throw std::invalid_argument("weight_components: zero vector");
  const auto ws = weights_of(spec);

  std::map<WeightVector, std::vector<double>> grouped;
  for (std::size_t k = 0; k < ws.size(); ++k) grouped[ws[k]].push_back(v[static_cast<Eigen::Index>(k)]);

  std::map<WeightVector, Vector> out;
  for (auto& [w, xs] : grouped) {
    Vector c = Eigen::Map<Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
    if (c.norm() > zero_tol * norm) out.emplace(w, std::move(c));
  }
  return out;
}

Vector lambda2_embed(const Vector& x, const Vector& y) {
  if (x.size() != y.size() || x.size() == 0) throw std::invalid_argument("lambda2_embed: vectors must have equal positive length");
  return pack_skew(x * y.transpose() - y * x.transpose());
}

std::vector<std::string> basis_labels(const RepSpec& spec) {
  const int n = spec.n;
  std::vector<std::string> out;
  auto idx = [](int i) { return std::to_string(i + 1); };
  switch (spec.family) {
    case Family::Standard:
      for (int i = 0; i < n; ++i) out.push_back("e" + idx(i));
      break;
    case Family::Dual:
      for (int i = 0; i < n; ++i) out.push_back("e" + idx(i) + "^v");
      break;
    case Family::Adjoint:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.push_back("E" + idx(i) + idx(j));
      break;
    case Family::Lambda2:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back("e" + idx(i) + "^e" + idx(j));
      break;
    case Family::Brackets:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int l = 0; l < n; ++l) out.push_back("c^" + idx(l) + "_" + idx(i) + idx(j));
      break;
    case Family::TorusWeights:
      for (std::size_t k = 0; k < spec.weights.size(); ++k) out.push_back("v" + std::to_string(k + 1));
      break;
  }
  return out;
}

}  // namespace momentflow
