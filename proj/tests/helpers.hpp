#pragma once

#include <random>

#include "modeshape/dae_model.hpp"
#include "modeshape/types.hpp"

namespace testing {

using modeshape::Index;
using modeshape::Matrix;
using modeshape::Vector;

// Stable, diagonalizable, distinct eigenvalues: V diag(D) V^-1 with real 2x2 blocks for
// complex pairs. Eigenvalues are kept apart by at least `gap`.
inline Matrix random_stable(Index n, std::mt19937& rng, double gap = 0.05) {
  std::uniform_real_distribution<double> re(-5.0, -0.1);
  std::uniform_real_distribution<double> im(0.5, 8.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix D = Matrix::Zero(n, n);
  std::vector<double> used;
  auto fresh = [&](std::uniform_real_distribution<double>& d) {
    for (;;) {
      const double v = d(rng);
      bool ok = true;
      for (double u : used) ok = ok && std::abs(u - v) > gap;
      if (ok) {
        used.push_back(v);
        return v;
      }
    }
  };
  Index k = 0;
  while (k < n) {
    if (k + 1 < n && unit(rng) > 0.0) {
      const double a = fresh(re);
      const double b = fresh(im);
      D(k, k) = a;
      D(k + 1, k + 1) = a;
      D(k, k + 1) = b;
      D(k + 1, k) = -b;
      k += 2;
    } else {
      D(k, k) = fresh(re);
      ++k;
    }
  }
  Matrix V = Matrix::NullaryExpr(n, n, [&]() { return unit(rng); });
  V += 2.0 * Matrix::Identity(n, n);
  return V * D * V.inverse();
}

// Pure ODE Jacobian set around the origin.
inline modeshape::JacobianSet ode_jacobians(const Matrix& A) {
  modeshape::JacobianSet jac;
  jac.f_x = A;
  jac.f_y = Matrix::Zero(A.rows(), 0);
  jac.g_x = Matrix::Zero(0, A.rows());
  jac.g_y = Matrix::Zero(0, 0);
  jac.x_o = Vector::Zero(A.rows());
  jac.y_o = Vector::Zero(0);
  jac.name = "ode";
  return jac;
}

inline modeshape::JacobianSet smib_jacobians(const modeshape::SmibParams& p = {}) {
  const auto model = modeshape::builtin_smib(p);
  const auto eq = modeshape::find_equilibrium(model, model.x_guess, model.y_guess);
  return modeshape::jacobians(model, eq.x_o, eq.y_o);
}

}  // namespace testing
