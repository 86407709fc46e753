#include "tvnet/tridiagonal.hpp"

#include <cmath>

#include "tvnet/error.hpp"

namespace tvnet {

namespace {
constexpr double kMinPivot = 1e-12;
}

TridiagonalMatrix::TridiagonalMatrix(Eigen::VectorXd main_diagonal, Eigen::VectorXd off_diagonal)
    : diag(std::move(main_diagonal)), off(std::move(off_diagonal)) {
  require(diag.size() >= 1, ErrorKind::kInvalidParameter, "tridiagonal matrix needs T >= 1");
  require(off.size() == diag.size() - 1, ErrorKind::kInvalidParameter,
          "off diagonal must have length T - 1");
}

Eigen::MatrixXd TridiagonalMatrix::to_dense() const {
  const Eigen::Index n = diag.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index t = 0; t < n; ++t) m(t, t) = diag[t];
  for (Eigen::Index t = 0; t + 1 < n; ++t) {
    m(t, t + 1) = off[t];
    m(t + 1, t) = off[t];
  }
  return m;
}

Eigen::VectorXd TridiagonalMatrix::multiply(const Eigen::VectorXd& v) const {
  const Eigen::Index n = diag.size();
  Eigen::VectorXd out = diag.cwiseProduct(v);
  for (Eigen::Index t = 0; t + 1 < n; ++t) {
    out[t] += off[t] * v[t + 1];
    out[t + 1] += off[t] * v[t];
  }
  return out;
}

double TridiagonalMatrix::quadratic_form(const Eigen::VectorXd& v) const {
  double q = 0.0;
  const Eigen::Index n = diag.size();
  for (Eigen::Index t = 0; t < n; ++t) q += diag[t] * v[t] * v[t];
  for (Eigen::Index t = 0; t + 1 < n; ++t) q += 2.0 * off[t] * v[t] * v[t + 1];
  return q;
}

TridiagonalLdl TridiagonalLdl::factor(const TridiagonalMatrix& m) {
  const Eigen::Index n = m.diag.size();
  TridiagonalLdl f;
  f.pivots.resize(n);
  f.lower.resize(n > 0 ? n - 1 : 0);
  double d = m.diag[0];
  for (Eigen::Index t = 0;; ++t) {
    if (!(d > kMinPivot) || !std::isfinite(d)) {
      fail(ErrorKind::kFactorizationFailure,
           "precision matrix is not positive definite (pivot " + std::to_string(t) + ")");
    }
    f.pivots[t] = d;
    if (t + 1 == n) break;
    const double l = m.off[t] / d;
    f.lower[t] = l;
    d = m.diag[t + 1] - l * m.off[t];
  }
  return f;
}

Eigen::VectorXd TridiagonalLdl::solve(const Eigen::VectorXd& rhs) const {
  const Eigen::Index n = pivots.size();
  Eigen::VectorXd x = rhs;
  for (Eigen::Index t = 1; t < n; ++t) x[t] -= lower[t - 1] * x[t - 1];
  x.array() /= pivots.array();
  for (Eigen::Index t = n - 2; t >= 0; --t) x[t] -= lower[t] * x[t + 1];
  return x;
}

double TridiagonalLdl::log_det() const { return pivots.array().log().sum(); }

Eigen::VectorXd sample_normal_tridiag_precision(const TridiagonalMatrix& precision,
                                                const Eigen::VectorXd& shift, RngStream& rng) {
  require(shift.size() == precision.diag.size(), ErrorKind::kInvalidParameter,
          "shift length must match the precision dimension", "shift");
  const TridiagonalLdl f = TridiagonalLdl::factor(precision);
  const Eigen::Index n = f.pivots.size();

  // Mean P^{-1} h plus L^{-T} D^{-1/2} z, which has covariance (L D L')^{-1}.
  Eigen::VectorXd mean = f.solve(shift);
  Eigen::VectorXd v(n);
  for (Eigen::Index t = 0; t < n; ++t) v[t] = rng.normal() / std::sqrt(f.pivots[t]);
  for (Eigen::Index t = n - 2; t >= 0; --t) v[t] -= f.lower[t] * v[t + 1];
  return mean + v;
}

}  // namespace tvnet
