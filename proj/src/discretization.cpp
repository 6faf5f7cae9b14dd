#include "modeshape/discretization.hpp"

#include <charconv>
#include <sstream>

#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// Solves (I - c A) X = rhs; `c` is the implicit coefficient multiplying h.
Matrix implicit_solve(const Matrix& A, double c, const Matrix& rhs, const std::string& label) {
  const Index n = A.rows();
  const Matrix stage = Matrix::Identity(n, n) - c * A;
  const Eigen::FullPivLU<Matrix> lu(stage);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    const double eig = 1.0 / c;
    std::ostringstream os;
    os << label << ": I - " << c << "*A is singular; A has an eigenvalue at " << eig
       << " (choose a different step size)";
    throw StepSizeSingularityError(os.str(), eig);
  }
  return lu.solve(rhs);
}

}  // namespace

Method Method::make_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 0.5)) {
    std::ostringstream os;
    os << "theta must lie in [0, 0.5], got " << theta;
    throw ParameterError(os.str());
  }
  std::ostringstream os;
  os << "theta:" << theta;
  return {MethodFamily::theta, theta, 0, os.str()};
}

Method Method::bem() {
  Method m = make_theta(0.0);
  m.name = "bem";
  return m;
}

Method Method::tm() {
  Method m = make_theta(0.5);
  m.name = "tm";
  return m;
}

Method Method::dirk2s() { return {MethodFamily::dirk2s, 0.0, 0, "dirk2s"}; }

Method Method::heun(int correctors) {
  if (correctors < 0) throw ParameterError("Heun corrector count must be non-negative");
  return {MethodFamily::heun, 0.0, correctors, "heun:" + std::to_string(correctors)};
}

Method Method::fem() {
  Method m = heun(0);
  m.name = "fem";
  return m;
}

Method Method::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  if (head == "theta" && has_arg) {
    Method m = make_theta(parse_double(arg, "theta"));
    m.name = std::string(text);
    return m;
  }
  if (head == "heun" && has_arg) {
    Method m = heun(parse_int(arg, "corrector count"));
    m.name = std::string(text);
    return m;
  }
  if (!has_arg) {
    if (head == "bem") return bem();
    if (head == "tm") return tm();
    if (head == "dirk2s") return dirk2s();
    if (head == "fem") return fem();
  }
  throw ParameterError("unknown method '" + std::string(text) +
                       "' (expected theta:<t>, bem, tm, dirk2s, heun:<r> or fem)");
}

CompanionMatrix companion_matrix(const MethodSpec& spec, const JacobianSet& jac,
                                 const Matrix& A) {
  jac.check();
  const Index n = jac.nu();
  if (A.rows() != n || A.cols() != n) {
    throw ConformanceError("state matrix does not conform to the Jacobian set");
  }
  const double h = spec.h;
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("step size must be positive");

  const Matrix I = Matrix::Identity(n, n);
  CompanionMatrix out;
  out.method = spec;
  out.nu = n;
  out.mu = jac.mu();
  out.order = n;

  const Method& m = spec.method;
  switch (m.family) {
    case MethodFamily::theta: {
      if (!(m.theta >= 0.0 && m.theta <= 0.5)) throw ParameterError("theta outside [0, 0.5]");
      // G - I = h [I - h(1-theta)A]^-1 A
      out.increment = implicit_solve(A, h * (1.0 - m.theta), A, "theta");
      break;
    }
    case MethodFamily::dirk2s: {
      const double c = kDirkAlpha * h;
      // G - I = h N^-1 [alpha(2 - beta) A - alpha^2 h A^2] N^-1 with N = I - alpha h A
      const Matrix inner = implicit_solve(A, c, I, "dirk2s");
      const Matrix middle =
          (kDirkAlpha * (2.0 - kDirkBeta) * A - kDirkAlpha * kDirkAlpha * h * A * A) * inner;
      out.increment = implicit_solve(A, c, middle, "dirk2s");
      break;
    }
    case MethodFamily::heun: {
      if (m.correctors < 0) throw ParameterError("Heun corrector count must be non-negative");
      const Matrix K = (0.5 * h) * jac.f_x;
      Matrix series = A;
      for (int j = 0; j < m.correctors; ++j) series = A + K * series;
      out.increment = series;
      break;
    }
  }
  out.G = I + h * out.increment;
  return out;
}

}  // namespace modeshape
