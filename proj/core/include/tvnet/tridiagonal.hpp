#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "tvnet/rng.hpp"

namespace tvnet {

/// Symmetric tridiagonal matrix stored as its main and first off diagonal.
struct TridiagonalMatrix {
  Eigen::VectorXd diag;  // length T
  Eigen::VectorXd off;   // length T - 1; off[t] couples t and t + 1

  TridiagonalMatrix() = default;
  TridiagonalMatrix(Eigen::VectorXd main_diagonal, Eigen::VectorXd off_diagonal);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(diag.size()); }
  Eigen::MatrixXd to_dense() const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
  /// v' M v in O(T).
  double quadratic_form(const Eigen::VectorXd& v) const;
};

/// LDL' factorization of a symmetric tridiagonal matrix: L is unit lower
/// bidiagonal with subdiagonal `lower`, D = diag(`pivots`).
struct TridiagonalLdl {
  Eigen::VectorXd pivots;
  Eigen::VectorXd lower;

  /// Throws factorization-failure when a pivot falls below 1e-12.
  static TridiagonalLdl factor(const TridiagonalMatrix& m);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  double log_det() const;
};

/// Draws x ~ N(P^{-1} h, P^{-1}) for tridiagonal precision P and natural
/// parameter h ("shift") in O(T).
Eigen::VectorXd sample_normal_tridiag_precision(const TridiagonalMatrix& precision,
                                                const Eigen::VectorXd& shift, RngStream& rng);

}  // namespace tvnet
