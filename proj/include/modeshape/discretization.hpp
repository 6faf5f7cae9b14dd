#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "modeshape/dae_model.hpp"
#include "modeshape/types.hpp"

namespace modeshape {

/// Two-stage DIRK constants.
inline const double kDirkAlpha = 1.0 - 1.0 / std::sqrt(2.0);
inline const double kDirkBeta = -std::sqrt(2.0);

enum class MethodFamily { theta, dirk2s, heun };

/// Integration scheme without a step size. BEM, TM and FEM are spelled as
/// Theta(0), Theta(0.5) and Heun(0) and only differ from those by `name`.
struct Method {
  MethodFamily family = MethodFamily::theta;
  /// Weight of the explicit end, in [0, 0.5]. Only meaningful for theta.
  double theta = 0.5;
  /// Number of corrector passes. Only meaningful for heun.
  int correctors = 0;
  std::string name = "tm";

  [[nodiscard]] static Method make_theta(double theta);
  [[nodiscard]] static Method bem();
  [[nodiscard]] static Method tm();
  [[nodiscard]] static Method dirk2s();
  [[nodiscard]] static Method heun(int correctors);
  [[nodiscard]] static Method fem();

  /// Parses "theta:0.47", "bem", "tm", "dirk2s", "heun:1", "heun:2", "fem".
  [[nodiscard]] static Method parse(std::string_view text);
};

struct MethodSpec {
  Method method;
  double h = 0.0;
};

/// One-step linear map x_{n+1} = G x_n of a method applied to the linearized DAE.
struct CompanionMatrix {
  Matrix G;
  /// (G - I) / h, formed without the cancellation of subtracting I. It shares eigenvectors
  /// with G and keeps them accurate when h is small.
  Matrix increment;
  MethodSpec method;
  Index nu = 0;
  Index mu = 0;
  /// Order of the difference system; equals nu for every supported method.
  Index order = 0;
};

/// Builds G from the reduced state matrix A (and, for Heun, the raw f_x block of `jac`).
///
///   theta  G = [I - h(1-theta)A]^-1 (I + h theta A)
///   dirk2s G = (I - alpha h A)^-1 (I - alpha beta h A) (I - alpha h A)^-1
///   heun   G = I + h sum_{j=0..r} ((h/2) f_x)^j A
///
/// Throws StepSizeSingularityError when an implicit stage matrix is singular.
[[nodiscard]] CompanionMatrix companion_matrix(const MethodSpec& spec, const JacobianSet& jac,
                                               const Matrix& A);

/// ||A G - G A||_F / (||A||_F ||G||_F), or 0 when either norm vanishes.
template <typename DerivedA, typename DerivedG>
[[nodiscard]] double commutator_defect(const Eigen::MatrixBase<DerivedA>& A,
                                       const Eigen::MatrixBase<DerivedG>& G) {
  const double scale = A.norm() * G.norm();
  if (scale == 0.0) return 0.0;
  return (A * G - G * A).norm() / scale;
}

[[nodiscard]] inline double commutator_defect(const Matrix& A, const CompanionMatrix& G) {
  return commutator_defect(A, G.G);
}

}  // namespace modeshape
