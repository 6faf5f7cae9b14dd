#include "modeshape/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

double inf_norm(const Vector& v) {
  if (v.size() == 0) return 0.0;
  return v.allFinite() ? v.lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::infinity();
}

// The Newton update has reached the rounding level of the iterate, so the residual cannot
// shrink further. Only matters for large-magnitude states.
bool at_roundoff(const Vector& delta, const Vector& x, const Vector& y) {
  const double scale = 1.0 + std::max(inf_norm(x), inf_norm(y));
  return inf_norm(delta) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

[[noreturn]] void fail(const std::string& stage, double residual, int iters) {
  std::ostringstream os;
  os << stage << ": Newton did not converge after " << iters << " iterations (residual "
     << residual << ")";
  throw StepFailure(os.str(), stage, residual);
}

// Solves  z - base - c f(z, w) = 0,  g(z, w) = 0  for (z, w) starting from (z0, w0).
// This is the implicit stage shared by the theta method and both DIRK stages.
StepResult implicit_stage(const DaeModel& model, const Vector& base, double c, const Vector& z0,
                          const Vector& w0, const SolverConfig& cfg, const std::string& stage) {
  const Index n = model.nu();
  const Index m = model.mu();
  StepResult out{z0, w0, 0};
  Vector residual(n + m);
  auto evaluate = [&] {
    residual << out.x - base - c * model.f(out.x, out.y), model.g(out.x, out.y);
    return inf_norm(residual);
  };

  double norm = evaluate();
  while (norm > cfg.newton_tol) {
    if (out.newton_iters >= cfg.max_newton || !std::isfinite(norm)) {
      fail(stage, norm, out.newton_iters);
    }
    const JacobianSet jac = jacobians(model, out.x, out.y);
    Matrix newton(n + m, n + m);
    newton << Matrix::Identity(n, n) - c * jac.f_x, -c * jac.f_y, jac.g_x, jac.g_y;
    const Eigen::PartialPivLU<Matrix> lu(newton);
    const Vector delta = lu.solve(residual);
    if (!delta.allFinite()) fail(stage, norm, out.newton_iters);
    out.x -= delta.head(n);
    out.y -= delta.tail(m);
    ++out.newton_iters;
    norm = evaluate();
    if (at_roundoff(delta, out.x, out.y)) break;
  }
  return out;
}

void check_point(const DaeModel& model, const Vector& x, const Vector& y) {
  if (x.size() != model.nu() || y.size() != model.mu()) {
    throw ConformanceError("integration point does not conform to the model dimensions");
  }
  if (!x.allFinite() || !y.allFinite()) throw ConformanceError("non-finite integration point");
}

}  // namespace

Vector solve_algebraic(const DaeModel& model, const Vector& x, const Vector& y_guess,
                       const SolverConfig& cfg, int* iterations) {
  Vector y = y_guess;
  int iters = 0;
  double norm = inf_norm(model.g(x, y));
  while (norm > cfg.newton_tol) {
    if (iters >= cfg.max_newton || !std::isfinite(norm)) fail("algebraic", norm, iters);
    const JacobianSet jac = jacobians(model, x, y);
    const Vector delta = jac.g_y.partialPivLu().solve(model.g(x, y));
    if (!delta.allFinite()) fail("algebraic", norm, iters);
    y -= delta;
    ++iters;
    norm = inf_norm(model.g(x, y));
    if (at_roundoff(delta, x, y)) break;
  }
  if (iterations != nullptr) *iterations = iters;
  return y;
}

StepResult step_theta(const DaeModel& model, const Vector& x, const Vector& y, double theta,
                      const SolverConfig& cfg) {
  check_point(model, x, y);
  if (!(theta >= 0.0 && theta <= 0.5)) throw ParameterError("theta outside [0, 0.5]");
  const double h = cfg.h;
  const Vector base = x + (h * theta) * model.f(x, y);
  return implicit_stage(model, base, h * (1.0 - theta), x, y, cfg, "theta");
}

StepResult step_dirk(const DaeModel& model, const Vector& x, const Vector& y,
                     const SolverConfig& cfg, DirkScratch* scratch) {
  check_point(model, x, y);
  const double c = kDirkAlpha * cfg.h;
  const StepResult first = implicit_stage(model, x, c, x, y, cfg, "dirk stage 1");
  const Vector combined = kDirkBeta * x + (1.0 - kDirkBeta) * first.x;
  StepResult second = implicit_stage(model, combined, c, first.x, first.y, cfg, "dirk stage 2");
  second.newton_iters += first.newton_iters;
  if (scratch != nullptr) {
    scratch->chi_stage = first.x;
    scratch->psi_stage = first.y;
    scratch->chi_combined = combined;
  }
  return second;
}

StepResult step_heun(const DaeModel& model, const Vector& x, const Vector& y, int correctors,
                     const SolverConfig& cfg) {
  check_point(model, x, y);
  if (correctors < 0) throw ParameterError("Heun corrector count must be non-negative");
  const double h = cfg.h;
  const Vector f_n = model.f(x, y);
  Vector xi = x + h * f_n;
  const Vector half_step = x + (0.5 * h) * f_n;
  for (int i = 0; i < correctors; ++i) xi = half_step + (0.5 * h) * model.f(xi, y);
  if (!xi.allFinite()) throw StepFailure("heun: non-finite state estimate", "heun",
                      std::numeric_limits<double>::quiet_NaN());

  StepResult out;
  out.x = xi;
  out.y = solve_algebraic(model, xi, y, cfg, &out.newton_iters);
  return out;
}

StepResult step(const DaeModel& model, const Method& method, const Vector& x, const Vector& y,
                const SolverConfig& cfg) {
  switch (method.family) {
    case MethodFamily::theta:
      return step_theta(model, x, y, method.theta, cfg);
    case MethodFamily::dirk2s:
      return step_dirk(model, x, y, cfg);
    case MethodFamily::heun:
      return step_heun(model, x, y, method.correctors, cfg);
  }
  throw ParameterError("unknown method family");
}

Trajectory simulate(const DaeModel& model, const Method& method, const Vector& x0,
                    const Vector& y0, double t_end, const SolverConfig& cfg,
                    bool solve_consistency) {
  check_point(model, x0, y0);
  if (!(cfg.h > 0.0)) throw ParameterError("step size must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be >= 0");
  if (!(cfg.newton_tol > 0.0) || cfg.max_newton < 1) {
    throw ParameterError("Newton tolerance and iteration limit must be positive");
  }

  Vector y_start = y0;
  const double g0 = inf_norm(model.g(x0, y0));
  if (g0 > kConsistencyTolerance) {
    if (!solve_consistency) {
      std::ostringstream os;
      os << "initial algebraic variables are inconsistent (||g||_inf = " << g0 << ")";
      throw InitializationError(os.str());
    }
    y_start = solve_algebraic(model, x0, y0, cfg);
  }

  const auto steps = static_cast<Index>(std::llround(t_end / cfg.h));
  Trajectory traj;
  traj.X.resize(steps + 1, model.nu());
  traj.Y.resize(steps + 1, model.mu());
  traj.times.reserve(static_cast<std::size_t>(steps + 1));
  traj.X.row(0) = x0.transpose();
  traj.Y.row(0) = y_start.transpose();
  traj.times.push_back(0.0);

  Vector x = x0;
  Vector y = y_start;
  for (Index n = 0; n < steps; ++n) {
    try {
      const StepResult next = step(model, method, x, y, cfg);
      x = next.x;
      y = next.y;
      traj.newton_iters.push_back(next.newton_iters);
    } catch (const StepFailure& err) {
      traj.converged = false;
      traj.failure = err.what();
      traj.X.conservativeResize(n + 1, Eigen::NoChange);
      traj.Y.conservativeResize(n + 1, Eigen::NoChange);
      return traj;
    }
    traj.X.row(n + 1) = x.transpose();
    traj.Y.row(n + 1) = y.transpose();
    traj.times.push_back(static_cast<double>(n + 1) * cfg.h);
  }
  return traj;
}

Matrix linear_reference(const CompanionMatrix& G, const Vector& x0, Index steps) {
  if (steps < 0) throw ParameterError("step count must be non-negative");
  if (x0.size() != G.G.cols()) throw ConformanceError("initial vector does not conform to G");
  Matrix out(steps + 1, x0.size());
  Vector x = x0;
  out.row(0) = x.transpose();
  for (Index n = 1; n <= steps; ++n) {
    x = G.G * x;
    out.row(n) = x.transpose();
  }
  return out;
}

}  // namespace modeshape
