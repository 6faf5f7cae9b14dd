#include "modeshape/dae_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void expect_shape(const Matrix& m, Index rows, Index cols, const char* label) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << label << " has shape " << shape(m) << ", expected " << rows << "x" << cols;
    throw ConformanceError(os.str());
  }
  if (!m.allFinite()) {
    throw ConformanceError(std::string(label) + " has non-finite entries");
  }
}

double fd_step(double v) { return 1e-6 * std::max(1.0, std::abs(v)); }

}  // namespace

void JacobianSet::check() const {
  const Index n = f_x.rows();
  const Index m = g_y.rows();
  if (n < 1) throw ConformanceError("f_x must have at least one row");
  expect_shape(f_x, n, n, "f_x");
  expect_shape(f_y, n, m, "f_y");
  expect_shape(g_x, m, n, "g_x");
  expect_shape(g_y, m, m, "g_y");
  if (x_o.size() != 0 && x_o.size() != n) throw ConformanceError("x_o does not conform to nu");
  if (y_o.size() != 0 && y_o.size() != m) throw ConformanceError("y_o does not conform to mu");
  if (!x_o.allFinite() || !y_o.allFinite()) throw ConformanceError("non-finite evaluation point");
}

double condition_estimate(const Matrix& g_y) {
  if (g_y.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(g_y);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

DaeModel::DaeModel(std::string name, Index nu, Index mu, Residual f, Residual g,
                   AnalyticJacobian jacobian)
    : name_(std::move(name)),
      nu_(nu),
      mu_(mu),
      f_(std::move(f)),
      g_(std::move(g)),
      jacobian_(std::move(jacobian)) {
  if (nu_ < 1) throw ParameterError("a DAE model needs at least one state");
  if (mu_ < 0) throw ParameterError("negative algebraic dimension");
  if (!f_ || !g_) throw ParameterError("model residual evaluators must be set");
  for (Index k = 0; k < nu_; ++k) state_names.push_back("x" + std::to_string(k + 1));
  for (Index k = 0; k < mu_; ++k) algebraic_names.push_back("y" + std::to_string(k + 1));
  x_guess = Vector::Zero(nu_);
  y_guess = Vector::Zero(mu_);
}

void DaeModel::check_input(const Vector& x, const Vector& y) const {
  if (x.size() != nu_ || y.size() != mu_) {
    std::ostringstream os;
    os << "model '" << name_ << "' expects x in R^" << nu_ << " and y in R^" << mu_ << ", got "
       << x.size() << " and " << y.size();
    throw ConformanceError(os.str());
  }
}

Vector DaeModel::f(const Vector& x, const Vector& y) const {
  check_input(x, y);
  Vector out = f_(x, y);
  if (out.size() != nu_) throw ConformanceError("f returned a vector of the wrong length");
  return out;
}

Vector DaeModel::g(const Vector& x, const Vector& y) const {
  check_input(x, y);
  Vector out = g_(x, y);
  if (out.size() != mu_) throw ConformanceError("g returned a vector of the wrong length");
  return out;
}

JacobianSet DaeModel::analytic_jacobian(const Vector& x, const Vector& y) const {
  check_input(x, y);
  if (!jacobian_) throw EvaluationError("model '" + name_ + "' has no analytic Jacobian");
  JacobianSet jac = jacobian_(x, y);
  jac.x_o = x;
  jac.y_o = y;
  jac.name = name_;
  jac.check();
  jac.g_y_condition = condition_estimate(jac.g_y);
  return jac;
}

std::pair<Vector, Vector> eval_residuals(const DaeModel& model, const Vector& x,
                                         const Vector& y) {
  return {model.f(x, y), model.g(x, y)};
}

JacobianSet jacobians(const DaeModel& model, const Vector& x, const Vector& y,
                      JacobianMode mode) {
  if (mode == JacobianMode::analytic) return model.analytic_jacobian(x, y);

  const Index n = model.nu();
  const Index m = model.mu();
  if (x.size() != n || y.size() != m) {
    throw ConformanceError("evaluation point does not conform to the model dimensions");
  }
  JacobianSet jac;
  jac.f_x.resize(n, n);
  jac.f_y.resize(n, m);
  jac.g_x.resize(m, n);
  jac.g_y.resize(m, m);

  auto column = [&](Vector xp, Vector yp, Vector xm, Vector ym, double step, Index col,
                    Matrix& df, Matrix& dg) {
    const Vector fp = model.f(xp, yp);
    const Vector fm = model.f(xm, ym);
    const Vector gp = model.g(xp, yp);
    const Vector gm = model.g(xm, ym);
    if (!fp.allFinite() || !fm.allFinite() || !gp.allFinite() || !gm.allFinite()) {
      throw EvaluationError("non-finite residual while differencing model '" + model.name() +
                            "'");
    }
    df.col(col) = (fp - fm) / (2.0 * step);
    dg.col(col) = (gp - gm) / (2.0 * step);
  };

  for (Index k = 0; k < n; ++k) {
    const double step = fd_step(x(k));
    Vector xp = x;
    Vector xm = x;
    xp(k) += step;
    xm(k) -= step;
    column(xp, y, xm, y, step, k, jac.f_x, jac.g_x);
  }
  for (Index k = 0; k < m; ++k) {
    const double step = fd_step(y(k));
    Vector yp = y;
    Vector ym = y;
    yp(k) += step;
    ym(k) -= step;
    column(x, yp, x, ym, step, k, jac.f_y, jac.g_y);
  }
  jac.x_o = x;
  jac.y_o = y;
  jac.name = model.name();
  jac.check();
  jac.g_y_condition = condition_estimate(jac.g_y);
  return jac;
}

JacobianSet jacobians(const DaeModel& model, const Vector& x, const Vector& y) {
  return jacobians(model, x, y,
                   model.has_analytic_jacobian() ? JacobianMode::analytic
                                                 : JacobianMode::finite_difference);
}

StationaryPoint find_equilibrium(const DaeModel& model, const Vector& x_guess,
                                 const Vector& y_guess) {
  const Index n = model.nu();
  const Index m = model.mu();
  if (x_guess.size() != n || y_guess.size() != m) {
    throw ConformanceError("equilibrium guess does not conform to the model dimensions");
  }
  Vector x = x_guess;
  Vector y = y_guess;
  Vector residual(n + m);
  auto evaluate = [&] {
    residual << model.f(x, y), model.g(x, y);
    return residual.allFinite() ? residual.lpNorm<Eigen::Infinity>()
                                : std::numeric_limits<double>::infinity();
  };

  double norm = evaluate();
  for (int iter = 0; iter <= kEquilibriumMaxIterations; ++iter) {
    if (norm <= kEquilibriumTolerance) return {x, y, norm};
    if (!std::isfinite(norm) || iter == kEquilibriumMaxIterations) break;

    const JacobianSet jac = jacobians(model, x, y);
    Matrix full(n + m, n + m);
    full << jac.f_x, jac.f_y, jac.g_x, jac.g_y;
    const Eigen::FullPivLU<Matrix> lu(full);
    if (!lu.isInvertible()) {
      throw NoEquilibriumError("singular Newton matrix while solving for the equilibrium of '" +
                                   model.name() + "'",
                               norm);
    }
    const Vector delta = lu.solve(residual);
    x -= delta.head(n);
    y -= delta.tail(m);
    norm = evaluate();
  }
  std::ostringstream os;
  os << "Newton did not converge to an equilibrium of '" << model.name()
     << "' (last residual norm " << norm << ")";
  throw NoEquilibriumError(os.str(), norm);
}

DaeModel builtin_smib(const SmibParams& p) {
  if (!(p.H > 0.0)) throw ParameterError("SMIB inertia constant H must be positive");
  if (!(p.X > 0.0)) throw ParameterError("SMIB reactance X must be positive");

  const double k = p.E * p.V / p.X;
  auto f = [p](const Vector& x, const Vector& y) {
    Vector out(2);
    out(0) = p.omega_b * (x(1) - 1.0);
    out(1) = (p.P_m - y(0) - p.D * (x(1) - 1.0)) / (2.0 * p.H);
    return out;
  };
  auto g = [k](const Vector& x, const Vector& y) {
    Vector out(1);
    out(0) = y(0) - k * std::sin(x(0));
    return out;
  };
  auto jac = [p, k](const Vector& x, const Vector&) {
    JacobianSet j;
    j.f_x.resize(2, 2);
    j.f_x << 0.0, p.omega_b, 0.0, -p.D / (2.0 * p.H);
    j.f_y.resize(2, 1);
    j.f_y << 0.0, -1.0 / (2.0 * p.H);
    j.g_x.resize(1, 2);
    j.g_x << -k * std::cos(x(0)), 0.0;
    j.g_y = Matrix::Ones(1, 1);
    return j;
  };
  DaeModel model("smib", 2, 1, f, g, jac);
  model.state_names = {"delta", "omega"};
  model.algebraic_names = {"p_e"};
  model.x_guess = Vector(2);
  model.x_guess << 0.3, 1.0;
  model.y_guess = Vector::Constant(1, p.P_m);
  return model;
}

DaeModel builtin_stiff_chain(const StiffChainParams& p) {
  if (p.n_slow < 0 || p.n_fast < 0 || p.n_slow + p.n_fast < 2) {
    throw ParameterError("stiff chain needs n_slow + n_fast >= 2 non-negative counts");
  }
  if (!(p.s_min < 0.0) || !(p.s_max < 0.0)) {
    throw ParameterError("stiff chain rates s_min and s_max must be negative");
  }
  if (!(p.coupling >= 0.0)) throw ParameterError("stiff chain coupling must be non-negative");

  const Index n = p.n_slow + p.n_fast;
  Vector rates(n);
  const double lo = std::log(-p.s_min);
  const double hi = std::log(-p.s_max);
  for (Index k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    rates(k) = -std::exp(lo + t * (hi - lo));
  }
  rates(0) = p.s_min;
  rates(n - 1) = p.s_max;

  JacobianSet lin;
  // Each state also drives the next one, so coupling > 0 leaves f_x lower bidiagonal. The
  // feedback through y alone would keep A triangular, and triangular matrices have trivial
  // participation factors.
  lin.f_x = rates.asDiagonal();
  for (Index k = 1; k < n; ++k) lin.f_x(k, k - 1) = p.coupling;
  lin.f_y = Matrix::Zero(n, 1);
  lin.f_y(0, 0) = p.coupling;
  lin.g_x = -Matrix::Ones(1, n);
  lin.g_y = Matrix::Ones(1, 1);

  auto f = [rates, c = p.coupling](const Vector& x, const Vector& y) {
    Vector out = rates.cwiseProduct(x);
    out.tail(out.size() - 1) += c * x.head(x.size() - 1);
    out(0) += c * y(0);
    return out;
  };
  auto g = [](const Vector& x, const Vector& y) {
    Vector out(1);
    out(0) = y(0) - x.sum();
    return out;
  };
  auto jac = [lin](const Vector&, const Vector&) { return lin; };
  DaeModel model("stiff-chain", n, 1, f, g, jac);
  model.state_names.clear();
  for (int k = 0; k < p.n_slow; ++k) model.state_names.push_back("xs" + std::to_string(k + 1));
  for (int k = 0; k < p.n_fast; ++k) model.state_names.push_back("xf" + std::to_string(k + 1));
  model.algebraic_names = {"sum"};
  return model;
}

DaeModel linear_model(const JacobianSet& jac) {
  jac.check();
  const Index n = jac.nu();
  const Index m = jac.mu();
  const Vector x_o = jac.x_o.size() == n ? jac.x_o : Vector::Zero(n);
  const Vector y_o = jac.y_o.size() == m ? jac.y_o : Vector::Zero(m);

  auto f = [jac, x_o, y_o](const Vector& x, const Vector& y) -> Vector {
    return jac.f_x * (x - x_o) + jac.f_y * (y - y_o);
  };
  auto g = [jac, x_o, y_o](const Vector& x, const Vector& y) -> Vector {
    return jac.g_x * (x - x_o) + jac.g_y * (y - y_o);
  };
  auto analytic = [jac](const Vector&, const Vector&) { return jac; };
  DaeModel model(jac.name.empty() ? "linear" : jac.name, n, m, f, g, analytic);
  model.x_guess = x_o;
  model.y_guess = y_o;
  return model;
}

}  // namespace modeshape
