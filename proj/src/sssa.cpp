#include "modeshape/sssa.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "modeshape/errors.hpp"

namespace modeshape {

Matrix reduce_state_matrix(const JacobianSet& jac) {
  jac.check();
  if (jac.mu() == 0) return jac.f_x;

  const Eigen::FullPivLU<Matrix> lu(jac.g_y);
  const double cond = condition_estimate(jac.g_y);
  if (!lu.isInvertible() || !(cond < kMaxAlgebraicCondition)) {
    std::ostringstream os;
    os << "g_y is singular (condition estimate " << cond
       << "); the state matrix requires an invertible algebraic Jacobian";
    throw SingularityError(os.str());
  }
  return jac.f_x - jac.f_y * lu.solve(jac.g_x);
}

StiffnessRatio stiffness_ratio(const Spectrum& spectrum) {
  const Vector mags = spectrum.eigenvalues.cwiseAbs();
  if (mags.size() == 0) throw UndefinedError("stiffness ratio of an empty spectrum");
  const double zero_floor = 1e-12 * std::max(1.0, mags.maxCoeff());

  StiffnessRatio out;
  double smax = 0.0;
  double smin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < mags.size(); ++i) {
    if (mags(i) <= zero_floor) {
      ++out.excluded_zero;
      continue;
    }
    smax = std::max(smax, mags(i));
    smin = std::min(smin, mags(i));
  }
  if (out.excluded_zero == mags.size()) {
    throw UndefinedError("stiffness ratio is undefined: every eigenvalue is zero");
  }
  out.value = smax / smin;
  return out;
}

ParticipationMatrix participation_matrix(const Spectrum& spectrum) {
  ParticipationMatrix pf;
  pf.P = spectrum.W.transpose().cwiseProduct(spectrum.U);
  pf.reliable = !spectrum.condition_warning;
  return pf;
}

ParticipationMatrix normalize_columns(ParticipationMatrix pf, PfNormalization convention) {
  if (convention == PfNormalization::none) return pf;
  pf.column_norms.resize(pf.P.cols());
  for (Index i = 0; i < pf.P.cols(); ++i) {
    const Complex total = convention == PfNormalization::magnitude_sum
                              ? Complex(pf.P.col(i).cwiseAbs().sum(), 0.0)
                              : pf.P.col(i).sum();
    if (!(std::abs(total) > 0.0) || pf.P.col(i).cwiseAbs().maxCoeff() == 0.0) {
      throw UndefinedError("participation column " + std::to_string(i) +
                           " cannot be normalized (zero sum)");
    }
    pf.column_norms(i) = std::abs(total);
    pf.P.col(i) /= total;
  }
  pf.normalization = convention;
  return pf;
}

double damping_ratio(Complex s) {
  const double mag = std::abs(s);
  if (mag == 0.0) throw UndefinedError("damping ratio of a zero eigenvalue");
  return 100.0 * (-s.real()) / mag;
}

}  // namespace modeshape
