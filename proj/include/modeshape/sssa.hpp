#pragma once

#include "modeshape/dae_model.hpp"
#include "modeshape/eigen_core.hpp"
#include "modeshape/types.hpp"

namespace modeshape {

/// g_y condition estimates at or above this are treated as singular.
inline constexpr double kMaxAlgebraicCondition = 1e12;

/// A = f_x - f_y g_y^-1 g_x, or f_x when there are no algebraic variables.
[[nodiscard]] Matrix reduce_state_matrix(const JacobianSet& jac);

struct StiffnessRatio {
  double value = 1.0;
  /// Number of (numerically) zero eigenvalues left out of the ratio.
  Index excluded_zero = 0;
};

/// max|s_i| / min|s_i| over the non-zero eigenvalues.
[[nodiscard]] StiffnessRatio stiffness_ratio(const Spectrum& spectrum);

/// How participation columns are scaled before comparison.
enum class PfNormalization {
  none,
  /// Each column divided by its complex sum, so sum_k P(k, i) = 1. With biorthonormal
  /// eigenvectors this is already the case up to rounding.
  complex_sum,
  /// Each column divided by the sum of its magnitudes, so sum_k |P(k, i)| = 1.
  magnitude_sum,
};

/// Rows are states k, columns are modes i.
struct ParticipationMatrix {
  ComplexMatrix P;
  PfNormalization normalization = PfNormalization::none;
  /// Magnitude of the divisor applied to each column (empty when not normalized).
  Vector column_norms;
  /// False when the source spectrum carried a condition warning.
  bool reliable = true;
};

/// P(k, i) = W(i, k) * U(k, i).
[[nodiscard]] ParticipationMatrix participation_matrix(const Spectrum& spectrum);

/// Rescales every column so that its PFs (complex_sum) or their magnitudes (magnitude_sum)
/// add up to 1. Throws UndefinedError on a zero column.
[[nodiscard]] ParticipationMatrix normalize_columns(
    ParticipationMatrix pf, PfNormalization convention = PfNormalization::complex_sum);

/// 100 * (-Re s) / |s|.
[[nodiscard]] double damping_ratio(Complex s);

}  // namespace modeshape
