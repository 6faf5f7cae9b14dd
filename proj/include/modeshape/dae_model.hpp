#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "modeshape/types.hpp"

namespace modeshape {

/// Linearization of a DAE model at a point: the four blocks f_x, f_y, g_x, g_y.
struct JacobianSet {
  Matrix f_x;
  Matrix f_y;
  Matrix g_x;
  Matrix g_y;
  Vector x_o;
  Vector y_o;
  std::string name;
  /// 2-norm condition estimate of g_y; 1 when mu == 0, +inf when singular.
  double g_y_condition = 1.0;

  [[nodiscard]] Index nu() const { return f_x.rows(); }
  [[nodiscard]] Index mu() const { return g_y.rows(); }

  /// Throws ConformanceError unless every block conforms to (nu, mu) and all entries are finite.
  void check() const;
};

/// Returns the 2-norm condition number of g_y (1 for an empty block).
[[nodiscard]] double condition_estimate(const Matrix& g_y);

/// Autonomous semi-explicit DAE  x' = f(x, y),  0 = g(x, y).
///
/// Immutable after construction. The evaluators must be pure so a model can be
/// shared across threads.
class DaeModel {
 public:
  using Residual = std::function<Vector(const Vector& x, const Vector& y)>;
  using AnalyticJacobian = std::function<JacobianSet(const Vector& x, const Vector& y)>;

  DaeModel(std::string name, Index nu, Index mu, Residual f, Residual g,
           AnalyticJacobian jacobian = {});

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Index nu() const { return nu_; }
  [[nodiscard]] Index mu() const { return mu_; }
  [[nodiscard]] bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }

  [[nodiscard]] Vector f(const Vector& x, const Vector& y) const;
  [[nodiscard]] Vector g(const Vector& x, const Vector& y) const;
  [[nodiscard]] JacobianSet analytic_jacobian(const Vector& x, const Vector& y) const;

  /// Names used by the CLI for perturbations and report columns.
  std::vector<std::string> state_names;
  std::vector<std::string> algebraic_names;
  /// Starting point for the equilibrium search.
  Vector x_guess;
  Vector y_guess;

 private:
  void check_input(const Vector& x, const Vector& y) const;

  std::string name_;
  Index nu_;
  Index mu_;
  Residual f_;
  Residual g_;
  AnalyticJacobian jacobian_;
};

/// (f(x, y), g(x, y)); throws ConformanceError on dimension mismatch.
[[nodiscard]] std::pair<Vector, Vector> eval_residuals(const DaeModel& model, const Vector& x,
                                                       const Vector& y);

enum class JacobianMode { analytic, finite_difference };

/// Jacobian blocks at (x, y). Finite differences are central with step 1e-6*max(1, |z_k|).
[[nodiscard]] JacobianSet jacobians(const DaeModel& model, const Vector& x, const Vector& y,
                                    JacobianMode mode);

/// Analytic when the model provides it, finite differences otherwise.
[[nodiscard]] JacobianSet jacobians(const DaeModel& model, const Vector& x, const Vector& y);

struct StationaryPoint {
  Vector x_o;
  Vector y_o;
  double residual_norm = 0.0;
};

inline constexpr double kEquilibriumTolerance = 1e-10;
inline constexpr int kEquilibriumMaxIterations = 50;

/// Full Newton on the stacked residual [f; g].
[[nodiscard]] StationaryPoint find_equilibrium(const DaeModel& model, const Vector& x_guess,
                                               const Vector& y_guess);

struct SmibParams {
  double H = 3.5;
  double D = 1.0;
  double X = 0.5;
  double E = 1.0;
  double V = 1.0;
  double P_m = 0.8;
  double omega_b = 2.0 * 3.14159265358979323846 * 60.0;
};

/// Single machine against an infinite bus, classical model.
///   delta' = omega_b (omega - 1)
///   omega' = (P_m - P_e - D (omega - 1)) / (2H)
///   0      = P_e - (E V / X) sin(delta)
[[nodiscard]] DaeModel builtin_smib(const SmibParams& params = {});

struct StiffChainParams {
  int n_slow = 1;
  int n_fast = 1;
  double s_min = -1.0;
  double s_max = -100.0;
  double coupling = 0.0;
};

/// Linear chain of first-order lags with rates log-spaced in [s_max, s_min]. With gain
/// `coupling` each state feeds the next, and the algebraic variable y = sum(x) is fed back into
/// the first state. coupling = 0 leaves the lags decoupled (diagonal f_x, A = f_x).
[[nodiscard]] DaeModel builtin_stiff_chain(const StiffChainParams& params);

/// Linear DAE  x' = f_x (x - x_o) + f_y (y - y_o),  0 = g_x (x - x_o) + g_y (y - y_o).
[[nodiscard]] DaeModel linear_model(const JacobianSet& jac);

}  // namespace modeshape
