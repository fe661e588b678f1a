#include "momentflow/moment.hpp"

#include <cmath>
#include <stdexcept>

namespace momentflow {

namespace {

constexpr double kTinyNorm = 1e-300;

double checked_norm2(const Vector& v, const char* what) {
  const double nv = v.norm();
  if (!(nv >= kTinyNorm)) throw std::invalid_argument(std::string(what) + ": zero vector");
  return nv * nv;
}

}  // namespace

MomentValue make_moment_value(const Matrix& m) {
  MomentValue out;
  out.matrix = 0.5 * (m + m.transpose());
  out.energy = (out.matrix.array() * out.matrix.array()).sum();
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.matrix, Eigen::EigenvaluesOnly);
  out.spectrum = es.eigenvalues().reverse();
  return out;
}

MomentValue moment(const CartanContext& ctx, const RepSpec& spec, const Vector& v) {
  if (ctx.n() != spec.n) throw std::invalid_argument("moment: context and representation have different n");
  const double nv2 = checked_norm2(v, "moment");
  const auto& basis = ctx.p_basis();
  const std::size_t count =
      spec.family == Family::TorusWeights ? static_cast<std::size_t>(ctx.torus_rank()) : basis.size();

  Matrix m = Matrix::Zero(ctx.n(), ctx.n());
  for (std::size_t k = 0; k < count; ++k) {
    const double c = apply_lie(spec, basis[k], v).dot(v) / nv2;
    m += c * basis[k];
  }
  return make_moment_value(m);
}

MomentValue closed_form_moment(const RepSpec& spec, const Vector& v) {
  if (v.size() != rep_dim(spec)) throw std::invalid_argument("closed_form_moment: wrong vector length");
  const double nv2 = checked_norm2(v, "closed_form_moment");
  const int n = spec.n;
  switch (spec.family) {
    case Family::Standard: return make_moment_value(v * v.transpose() / nv2);
    case Family::Dual: return make_moment_value(-v * v.transpose() / nv2);
    case Family::Adjoint: {
      Matrix x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = v[i * n + j];
      return make_moment_value((x * x.transpose() - x.transpose() * x) / nv2);
    }
    case Family::Lambda2: {
      Matrix a = unpack_skew(n, v);
      Matrix a2 = a * a;
      const double norm2 = -0.5 * a2.trace();
      return make_moment_value(-a2 / norm2);
    }
    case Family::Brackets: {
      auto t = bracket_table(n, v);
      Matrix first = Matrix::Zero(n, n);
      double norm2 = 0.0;
      for (const auto& mu_ij : t) {
        first += mu_ij * mu_ij.transpose();
        norm2 += mu_ij.squaredNorm();
      }
      Matrix second = Matrix::Zero(n, n);
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            second(a, b) += t[static_cast<std::size_t>(a * n + j)].dot(t[static_cast<std::size_t>(b * n + j)]);
      return make_moment_value((first - 2.0 * second) / norm2);
    }
    case Family::TorusWeights:
      throw std::invalid_argument("closed_form_moment: no closed form for TorusWeights");
  }
  throw std::invalid_argument("closed_form_moment: unknown family");
}

double energy(const CartanContext& ctx, const RepSpec& spec, const Vector& v) {
  return moment(ctx, spec, v).energy;
}

TranslatedMoment translated_moment(const CartanContext& ctx, const RepSpec& spec, const Matrix& h, const Vector& v) {
  if (h.rows() != ctx.n() || h.cols() != ctx.n()) throw std::invalid_argument("translated_moment: h has wrong size");
  checked_norm2(v, "translated_moment");
  Eigen::FullPivLU<Matrix> lu(h);
  if (!lu.isInvertible()) throw std::invalid_argument("translated_moment: h is singular");
  const Matrix hinv = lu.inverse();

  const Matrix m = moment(ctx, spec, apply_group(spec, hinv, v)).matrix;
  TranslatedMoment out;
  out.matrix = h * m * hinv;
  const double scale = std::max(1.0, out.matrix.cwiseAbs().maxCoeff());
  out.in_Ad_h_p = asymmetry(hinv * out.matrix * h) <= 1e-10 * scale * condition_number(h);
  out.symmetric = asymmetry(out.matrix) <= 1e-10 * scale;
  return out;
}

double criticality_residual(const RepSpec& spec, const Vector& v, const MomentValue& m) {
  const double nv = v.norm();
  if (!(nv >= kTinyNorm)) throw std::invalid_argument("criticality_residual: zero vector");
  return (apply_lie(spec, m.matrix, v) - m.energy * v).norm() / nv;
}

double criticality_residual(const CartanContext& ctx, const RepSpec& spec, const Vector& v) {
  return criticality_residual(spec, v, moment(ctx, spec, v));
}

}  // namespace momentflow
