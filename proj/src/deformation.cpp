#include "modeshape/deformation.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "modeshape/assignment.hpp"
#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

auto at(Index i) { return static_cast<std::size_t>(i); }

std::string fmt_significant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", value);
  return buf;
}

double damping_or_nan(Complex s) { return std::abs(s) == 0.0 ? kNaN : damping_ratio(s); }

}  // namespace

ModePairing pair_modes(const Spectrum& spec_a, const Spectrum& spec_g, double h) {
  const Index n = spec_a.order();
  if (spec_g.order() != n) {
    std::ostringstream os;
    os << "cannot pair a spectrum of order " << n << " with one of order " << spec_g.order();
    throw ConformanceError(os.str());
  }
  if (!(h > 0.0)) throw ParameterError("step size must be positive");

  // Distance alone can prefer the wrong bijection once the deformation exceeds the mode
  // spacing, so the assignment also charges 1 - |cos| between right eigenvectors. Exact
  // correspondences (shared eigenvectors) pay nothing extra. Degenerate modes have no
  // meaningful eigenvector and skip the term.
  const bool with_vectors = spec_a.U.rows() == n && spec_a.U.cols() == n &&
                            spec_g.U.rows() == n && spec_g.U.cols() == n;
  Matrix distance(n, n);
  Matrix cost(n, n);
  for (Index i = 0; i < n; ++i) {
    const Complex mapped = std::exp(spec_a.eigenvalues(i) * h);
    const bool degenerate =
        spec_a.degenerate.size() == at(n) && static_cast<bool>(spec_a.degenerate[at(i)]);
    for (Index j = 0; j < n; ++j) {
      distance(i, j) = std::abs(mapped - spec_g.eigenvalues(j));
      cost(i, j) = distance(i, j);
      if (with_vectors && !degenerate) {
        const double norms = spec_a.U.col(i).norm() * spec_g.U.col(j).norm();
        if (norms > 0.0) {
          cost(i, j) += 1.0 - std::abs(spec_a.U.col(i).dot(spec_g.U.col(j))) / norms;
        }
      }
    }
  }
  const Assignment best = solve_assignment(cost);

  ModePairing pairing;
  pairing.partner = best.column;
  pairing.cost = 0.0;
  for (Index i = 0; i < n; ++i) pairing.cost += distance(i, best.column[at(i)]);
  pairing.aliased.resize(at(n));
  pairing.degenerate.resize(at(n));
  for (Index i = 0; i < n; ++i) {
    pairing.aliased[at(i)] = std::abs(spec_a.eigenvalues(i).imag()) >= kPi / h;
    pairing.degenerate[at(i)] =
        spec_a.degenerate.size() == at(n) ? static_cast<bool>(spec_a.degenerate[at(i)]) : false;
  }
  return pairing;
}

std::vector<double> eig_deformation(const ModePairing& pairing, const Spectrum& spec_a,
                                    const Spectrum& spec_g, double h) {
  const Index n = spec_a.order();
  if (pairing.size() != n || spec_g.order() != n) {
    throw ConformanceError("pairing does not conform to the spectra");
  }
  std::vector<double> eps(at(n));
  for (Index i = 0; i < n; ++i) {
    const Complex s = spec_a.eigenvalues(i);
    const Complex z = spec_g.eigenvalues(pairing.partner[at(i)]);
    if (std::abs(s) == 0.0) {
      eps[at(i)] = kNaN;
    } else if (std::abs(z) == 0.0) {
      eps[at(i)] = std::numeric_limits<double>::infinity();
    } else {
      eps[at(i)] = 100.0 * std::abs(s - std::log(z) / h) / std::abs(s);
    }
  }
  return eps;
}

PfDeformation pf_deformation(const ParticipationMatrix& P, const ParticipationMatrix& Pi,
                             const ModePairing& pairing, const Spectrum& spec_a,
                             const Spectrum& spec_g, double pf_floor) {
  if (P.normalization != Pi.normalization) {
    throw ConformanceError("participation matrices use different normalization conventions");
  }
  const Index n = P.P.cols();
  if (P.P.rows() != n || Pi.P.rows() != n || Pi.P.cols() != n || pairing.size() != n ||
      spec_a.order() != n || spec_g.order() != n) {
    throw ConformanceError("participation matrices, spectra and pairing do not conform");
  }

  PfDeformation out;
  out.partner = pairing.partner;
  out.basis_ambiguous.assign(at(n), false);

  // Re-pair inside each degenerate cluster of A by eigenvector similarity.
  if (spec_a.cluster.size() == at(n)) {
    const Index labels =
        n == 0 ? 0 : *std::max_element(spec_a.cluster.begin(), spec_a.cluster.end()) + 1;
    for (Index label = 0; label < labels; ++label) {
      std::vector<Index> members;
      for (Index i = 0; i < n; ++i) {
        if (spec_a.cluster[at(i)] == label) members.push_back(i);
      }
      if (members.size() < 2) continue;
      const auto m = static_cast<Index>(members.size());
      Matrix cost(m, m);
      for (Index a = 0; a < m; ++a) {
        for (Index b = 0; b < m; ++b) {
          const auto va = spec_a.U.col(members[at(a)]);
          const auto vg = spec_g.U.col(pairing.partner[at(members[at(b)])]);
          const double denom = va.norm() * vg.norm();
          const double cosine = denom > 0.0 ? std::abs(va.dot(vg)) / denom : 0.0;
          cost(a, b) = 1.0 - cosine;
        }
      }
      const Assignment best = solve_assignment(cost);
      for (Index a = 0; a < m; ++a) {
        const Index mode = members[at(a)];
        out.partner[at(mode)] = pairing.partner[at(members[at(best.column[at(a)])])];
        out.basis_ambiguous[at(mode)] = true;
      }
    }
  }

  out.eps_p.resize(n, n);
  out.low_pf.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index j = out.partner[at(i)];
    for (Index k = 0; k < n; ++k) {
      const double p = std::abs(P.P(k, i));
      const double pi = std::abs(Pi.P(k, j));
      const bool low = p < pf_floor;
      out.low_pf(k, i) = low;
      out.eps_p(k, i) = low ? kNaN : 100.0 * (pi - p) / p;
    }
  }
  return out;
}

ModalBaseline modal_baseline(const JacobianSet& jac, PfNormalization convention) {
  ModalBaseline base;
  base.jac = jac;
  base.A = reduce_state_matrix(jac);
  base.spectrum = eig_full(base.A);
  base.pf = normalize_columns(participation_matrix(base.spectrum), convention);
  return base;
}

// Eigenvectors come from the increment; eigenvalues are mapped back to z = 1 + h d.
Spectrum discrete_spectrum(const CompanionMatrix& companion) {
  const double h = companion.method.h;
  Spectrum spec = eig_full(companion.increment);
  spec.eigenvalues = (spec.eigenvalues * h).array() + 1.0;
  return spec;
}

DeformationReport deform(const ModalBaseline& base, const MethodSpec& spec, double pf_floor) {
  DeformationReport report;
  report.method = spec;
  report.companion = companion_matrix(spec, base.jac, base.A);
  report.spectrum_g = discrete_spectrum(report.companion);
  report.pairing = pair_modes(base.spectrum, report.spectrum_g, spec.h);
  report.eps_s = eig_deformation(report.pairing, base.spectrum, report.spectrum_g, spec.h);
  const ParticipationMatrix Pi =
      normalize_columns(participation_matrix(report.spectrum_g), base.pf.normalization);
  report.eps_p =
      pf_deformation(base.pf, Pi, report.pairing, base.spectrum, report.spectrum_g, pf_floor);
  return report;
}

std::string format_flags(unsigned mask) {
  static constexpr std::pair<unsigned, const char*> kNames[] = {
      {flags::aliased, "aliased"},
      {flags::degenerate, "degenerate"},
      {flags::low_pf, "low_pf"},
      {flags::failed, "failed"},
  };
  std::string out;
  for (const auto& [bit, label] : kNames) {
    if ((mask & bit) == 0U) continue;
    if (!out.empty()) out += ';';
    out += label;
  }
  return out;
}

std::vector<Index> critical_modes(const Spectrum& spectrum, Index n_modes) {
  const Index n = spectrum.order();
  std::vector<Index> order(at(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double za = damping_or_nan(spectrum.eigenvalues(a));
    const double zb = damping_or_nan(spectrum.eigenvalues(b));
    if (std::isnan(za) || std::isnan(zb)) return !std::isnan(za) && std::isnan(zb);
    return za < zb;
  });
  if (n_modes > 0 && n_modes < n) order.resize(at(n_modes));
  return order;
}

std::vector<Index> top_states(const ParticipationMatrix& pf, Index mode, Index k) {
  const Index n = pf.P.rows();
  std::vector<Index> order(at(n));
  std::iota(order.begin(), order.end(), Index{0});
  // Magnitudes are compared at 10 significant digits so rounding noise between
  // conjugate columns cannot reorder tied states.
  std::vector<double> key(at(n));
  for (Index s = 0; s < n; ++s) {
    const double mag = std::abs(pf.P(s, mode));
    key[at(s)] = mag == 0.0 ? 0.0 : std::stod(fmt_significant(mag));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return key[at(a)] > key[at(b)]; });
  if (k >= 0 && k < n) order.resize(at(k));
  return order;
}

std::vector<SweepRow> deformation_rows(const ModalBaseline& base, const DeformationReport& report,
                                       const TrackingOptions& options) {
  std::vector<SweepRow> rows;
  for (const Index mode : critical_modes(base.spectrum, options.n_modes)) {
    const Complex s = base.spectrum.eigenvalues(mode);
    unsigned mode_flags = 0;
    if (report.pairing.aliased[at(mode)]) mode_flags |= flags::aliased;
    if (report.pairing.degenerate[at(mode)] || report.eps_p.basis_ambiguous[at(mode)]) {
      mode_flags |= flags::degenerate;
    }
    for (const Index state : top_states(base.pf, mode, options.top_k_pf)) {
      SweepRow row;
      row.h = report.method.h;
      row.mode = mode;
      row.eigenvalue = s;
      row.zeta_pct = damping_or_nan(s);
      row.state = state;
      row.eps_s_pct = report.eps_s[at(mode)];
      row.eps_p_pct = report.eps_p.eps_p(state, mode);
      row.flags = mode_flags;
      if (report.eps_p.low_pf(state, mode)) row.flags |= flags::low_pf;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SweepRow> sweep(const JacobianSet& jac, const Method& method,
                            std::span<const double> h_grid, const TrackingOptions& options) {
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0) || (i > 0 && !(h_grid[i] > h_grid[i - 1]))) {
      throw ParameterError("step-size grid must be positive and strictly ascending");
    }
  }
  std::vector<SweepRow> rows;
  if (h_grid.empty()) return rows;

  const ModalBaseline base = modal_baseline(jac, options.normalization);
  for (const double h : h_grid) {
    try {
      const DeformationReport report = deform(base, {method, h}, options.pf_floor);
      const auto block = deformation_rows(base, report, options);
      rows.insert(rows.end(), block.begin(), block.end());
    } catch (const StepSizeSingularityError&) {
      for (const Index mode : critical_modes(base.spectrum, options.n_modes)) {
        SweepRow row;
        row.h = h;
        row.mode = mode;
        row.eigenvalue = base.spectrum.eigenvalues(mode);
        row.zeta_pct = damping_or_nan(row.eigenvalue);
        row.eps_s_pct = kNaN;
        row.eps_p_pct = kNaN;
        row.flags = flags::failed;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<double> log_grid(double hmin, double hmax, Index points) {
  if (!(hmin > 0.0) || !(hmax > hmin)) {
    throw ParameterError("log grid needs 0 < hmin < hmax");
  }
  if (points < 2) throw ParameterError("log grid needs at least 2 points");
  std::vector<double> grid(at(points));
  const double lo = std::log(hmin);
  const double hi = std::log(hmax);
  for (Index k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    grid[at(k)] = std::exp(lo + t * (hi - lo));
  }
  grid.front() = hmin;
  grid.back() = hmax;
  return grid;
}

HmaxResult hmax(const JacobianSet& jac, const Method& method, const Criteria& criteria,
                std::span<const double> h_grid, const TrackingOptions& options) {
  if (!criteria.eps_s_max && !criteria.eps_p_max) {
    throw ParameterError("h^max needs at least one accuracy threshold");
  }
  if (h_grid.empty()) throw ParameterError("h^max needs a non-empty step-size grid");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0) || (i > 0 && !(h_grid[i] > h_grid[i - 1]))) {
      throw ParameterError("step-size grid must be positive and strictly ascending");
    }
  }

  const ModalBaseline base = modal_baseline(jac, options.normalization);
  const std::vector<Index> tracked = critical_modes(base.spectrum, options.n_modes);

  HmaxResult result;
  for (std::size_t g = 0; g < h_grid.size(); ++g) {
    const double h = h_grid[g];
    // Worst violation at this grid point, measured as value / threshold.
    double worst = 1.0;
    bool failed = false;
    auto violate = [&](const char* metric, Index mode, double value, double threshold) {
      if (!(std::abs(value) > threshold)) return;
      const double ratio = std::abs(value) / threshold;
      if (failed && ratio <= worst) return;
      worst = ratio;
      failed = true;
      result.limiting_metric = metric;
      result.limiting_mode = mode;
      result.limiting_eigenvalue = base.spectrum.eigenvalues(mode);
      result.limiting_value = value;
    };

    try {
      const DeformationReport report = deform(base, {method, h}, options.pf_floor);
      for (const Index mode : tracked) {
        if (criteria.eps_s_max) {
          const double eps = report.eps_s[at(mode)];
          if (!std::isnan(eps)) violate("eps_s", mode, eps, *criteria.eps_s_max);
        }
        if (criteria.eps_p_max && !report.eps_p.basis_ambiguous[at(mode)]) {
          for (const Index state : top_states(base.pf, mode, options.top_k_pf)) {
            if (report.eps_p.low_pf(state, mode)) continue;
            violate("eps_p", mode, report.eps_p.eps_p(state, mode), *criteria.eps_p_max);
          }
        }
      }
    } catch (const StepSizeSingularityError& err) {
      failed = true;
      result.limiting_metric = "step_singularity";
      result.limiting_mode.reset();
      result.limiting_value = err.eigenvalue();
    }

    if (failed) {
      result.failing_h = h;
      if (g == 0) {
        result.kind = HmaxKind::below_grid;
      } else {
        result.kind = HmaxKind::finite;
        result.hmax = h_grid[g - 1];
      }
      return result;
    }
  }
  result.kind = HmaxKind::unbounded;
  result.hmax = std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace modeshape
