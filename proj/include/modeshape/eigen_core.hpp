#pragma once

#include <vector>

#include "modeshape/types.hpp"

namespace modeshape {

/// Complete eigendecomposition with right eigenvectors as columns of U and left
/// eigenvectors as rows of W, scaled so that W * U = I.
struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix U;
  ComplexMatrix W;
  /// ||A v_i - s_i v_i||_2 per eigenvalue.
  Vector right_residuals;
  /// ||w_i A - s_i w_i||_2 per eigenvalue.
  Vector left_residuals;
  /// Cluster label per eigenvalue; coincident eigenvalues share a label.
  std::vector<Index> cluster;
  /// True when the eigenvalue belongs to a cluster of size > 1.
  std::vector<bool> degenerate;
  /// Set when U is numerically singular (defective or near-defective input).
  bool condition_warning = false;
  /// Reciprocal condition estimate of U.
  double u_rcond = 1.0;

  [[nodiscard]] Index order() const { return eigenvalues.size(); }
  [[nodiscard]] bool any_degenerate() const;
};

/// Reciprocal condition number of U below which the spectrum is flagged.
inline constexpr double kEigenvectorRcondFloor = 1e-10;

/// Eigenvalues sorted by descending real part, then descending imaginary part.
///
/// Right eigenvectors are normalized to unit 2-norm with their largest component real and
/// positive; left eigenvectors are the rows of U^-1. Degenerate clusters are labelled with the
/// default tolerance.
template <typename Scalar>
[[nodiscard]] Spectrum eig_full(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A);

extern template Spectrum eig_full<double>(const Matrix&);
extern template Spectrum eig_full<Complex>(const ComplexMatrix&);

/// 1e-6 * max(1, max_i |s_i|).
[[nodiscard]] double default_cluster_tolerance(const ComplexVector& eigenvalues);

/// Groups eigenvalues closer than `tol_cluster` (transitive closure).
[[nodiscard]] Spectrum cluster_degenerate(Spectrum spectrum, double tol_cluster);
[[nodiscard]] Spectrum cluster_degenerate(Spectrum spectrum);

}  // namespace modeshape
