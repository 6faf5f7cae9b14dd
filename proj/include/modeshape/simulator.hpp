#pragma once

#include <string>
#include <vector>

#include "modeshape/dae_model.hpp"
#include "modeshape/discretization.hpp"
#include "modeshape/types.hpp"

namespace modeshape {

struct SolverConfig {
  /// Infinity-norm bound on the Newton residual.
  double newton_tol = 1e-12;
  int max_newton = 25;
  double h = 0.01;
};

struct StepResult {
  Vector x;
  Vector y;
  int newton_iters = 0;
};

/// Intermediate quantities of a two-stage DIRK step.
struct DirkScratch {
  /// Stage-1 state and algebraic variables.
  Vector chi_stage;
  Vector psi_stage;
  /// beta x_n + (1 - beta) chi_stage.
  Vector chi_combined;
};

/// Theta method: x+ = x + h [theta f(x, y) + (1 - theta) f(x+, y+)],  0 = g(x+, y+).
[[nodiscard]] StepResult step_theta(const DaeModel& model, const Vector& x, const Vector& y,
                                    double theta, const SolverConfig& cfg);

/// Two-stage DIRK; both stages are solved simultaneously with the algebraic equations.
[[nodiscard]] StepResult step_dirk(const DaeModel& model, const Vector& x, const Vector& y,
                                   const SolverConfig& cfg, DirkScratch* scratch = nullptr);

/// Heun predictor plus `correctors` corrector passes that reuse y_n for the algebraic
/// variables, followed by a Newton solve of g(x+, y+) = 0 for y+.
[[nodiscard]] StepResult step_heun(const DaeModel& model, const Vector& x, const Vector& y,
                                   int correctors, const SolverConfig& cfg);

[[nodiscard]] StepResult step(const DaeModel& model, const Method& method, const Vector& x,
                              const Vector& y, const SolverConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  /// One row per recorded time, including the initial point.
  Matrix X;
  Matrix Y;
  /// Newton iterations of each step (one fewer entry than times).
  std::vector<int> newton_iters;
  bool converged = true;
  /// Failure description when converged is false.
  std::string failure;
};

/// ||g(x0, y0)||_inf above which initial algebraic variables count as inconsistent.
inline constexpr double kConsistencyTolerance = 1e-8;

/// Fixed-step integration from t = 0 to t_end with cfg.h. The number of steps is
/// round(t_end / h). With `solve_consistency` the initial algebraic variables are first
/// Newton-corrected; otherwise inconsistent ones raise InitializationError.
[[nodiscard]] Trajectory simulate(const DaeModel& model, const Method& method, const Vector& x0,
                                  const Vector& y0, double t_end, const SolverConfig& cfg,
                                  bool solve_consistency = false);

/// Newton solve of g(x, y) = 0 for y.
[[nodiscard]] Vector solve_algebraic(const DaeModel& model, const Vector& x, const Vector& y_guess,
                                     const SolverConfig& cfg, int* iterations = nullptr);

/// Rows x_0, G x_0, ..., G^steps x_0.
[[nodiscard]] Matrix linear_reference(const CompanionMatrix& G, const Vector& x0, Index steps);

}  // namespace modeshape
