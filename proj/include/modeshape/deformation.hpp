#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modeshape/dae_model.hpp"
#include "modeshape/discretization.hpp"
#include "modeshape/eigen_core.hpp"
#include "modeshape/sssa.hpp"
#include "modeshape/types.hpp"

namespace modeshape {

/// Participation magnitudes below this are too small for a relative error to mean anything.
inline constexpr double kDefaultPfFloor = 1e-3;

/// Correspondence between the modes of A and the eigenvalues of G.
struct ModePairing {
  /// partner[i] is the index in the spectrum of G paired with mode i of A.
  std::vector<Index> partner;
  /// Sum of |exp(s_i h) - z_j| over the pairs.
  double cost = 0.0;
  /// |Im s_i| >= pi / h: the principal logarithm cannot recover s_i.
  std::vector<bool> aliased;
  std::vector<bool> degenerate;

  [[nodiscard]] Index size() const { return static_cast<Index>(partner.size()); }
};

/// Spectrum of G. Eigenvectors are taken from the increment (G - I)/h, which is far better
/// conditioned than G itself at small h; eigenvalues are z = 1 + h d.
[[nodiscard]] Spectrum discrete_spectrum(const CompanionMatrix& companion);

/// Minimum-cost bijection for C(i, j) = |exp(s_i h) - z_j| + (1 - |cos(u_i, u_j)|), with the
/// eigenvector term dropped for degenerate modes. `cost` sums only the eigenvalue distances.
[[nodiscard]] ModePairing pair_modes(const Spectrum& spec_a, const Spectrum& spec_g, double h);

/// Relative eigenvalue deformation in percent, 100 |s_i - log(z_j)/h| / |s_i|, per mode of A.
/// Zero eigenvalues of A give NaN (excluded); z_j == 0 gives +inf.
[[nodiscard]] std::vector<double> eig_deformation(const ModePairing& pairing,
                                                  const Spectrum& spec_a,
                                                  const Spectrum& spec_g, double h);

struct PfDeformation {
  /// Signed percent 100 (|pi| - |p|) / |p|, rows = states, columns = modes of A.
  /// NaN wherever low_pf is set.
  Matrix eps_p;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> low_pf;
  /// Mode belongs to a degenerate cluster and was re-paired by eigenvector similarity.
  std::vector<bool> basis_ambiguous;
  /// Final column of Pi used for each mode of A.
  std::vector<Index> partner;
};

/// Compares participation matrices column by column under `pairing`. Inside degenerate
/// clusters the pairing is refined by maximal |cosine similarity| of right eigenvectors.
[[nodiscard]] PfDeformation pf_deformation(const ParticipationMatrix& P,
                                           const ParticipationMatrix& Pi,
                                           const ModePairing& pairing, const Spectrum& spec_a,
                                           const Spectrum& spec_g,
                                           double pf_floor = kDefaultPfFloor);

/// Continuous-time side of the analysis, computed once per model.
struct ModalBaseline {
  JacobianSet jac;
  Matrix A;
  Spectrum spectrum;
  /// Column-normalized.
  ParticipationMatrix pf;
};

[[nodiscard]] ModalBaseline modal_baseline(
    const JacobianSet& jac, PfNormalization convention = PfNormalization::complex_sum);

struct DeformationReport {
  MethodSpec method;
  CompanionMatrix companion;
  Spectrum spectrum_g;
  ModePairing pairing;
  std::vector<double> eps_s;
  PfDeformation eps_p;
};

[[nodiscard]] DeformationReport deform(const ModalBaseline& base, const MethodSpec& spec,
                                       double pf_floor = kDefaultPfFloor);

namespace flags {
inline constexpr unsigned aliased = 1U << 0U;
inline constexpr unsigned degenerate = 1U << 1U;
inline constexpr unsigned low_pf = 1U << 2U;
inline constexpr unsigned failed = 1U << 3U;
}  // namespace flags

/// "aliased;degenerate;low_pf;failed" subset, in that order.
[[nodiscard]] std::string format_flags(unsigned mask);

struct TrackingOptions {
  /// Number of least-damped eigenvalues to track; 0 tracks all.
  Index n_modes = 0;
  Index top_k_pf = 3;
  double pf_floor = kDefaultPfFloor;
  PfNormalization normalization = PfNormalization::complex_sum;
};

/// Indices of the n_modes eigenvalues with the smallest damping ratio (ties keep spectrum order).
[[nodiscard]] std::vector<Index> critical_modes(const Spectrum& spectrum, Index n_modes);

/// The k states with the largest |p| in column `mode` (ties keep state order).
[[nodiscard]] std::vector<Index> top_states(const ParticipationMatrix& pf, Index mode, Index k);

/// One line of a deformation table. `state` is -1 on failed rows.
struct SweepRow {
  double h = 0.0;
  Index mode = 0;
  Complex eigenvalue;
  double zeta_pct = 0.0;
  Index state = -1;
  double eps_s_pct = 0.0;
  double eps_p_pct = 0.0;
  unsigned flags = 0;
};

/// Rows for the tracked modes and their top participating states at a single step size.
[[nodiscard]] std::vector<SweepRow> deformation_rows(const ModalBaseline& base,
                                                     const DeformationReport& report,
                                                     const TrackingOptions& options);

/// Long-format table over a step-size grid. A step size at which G cannot be formed yields
/// one failed row per tracked mode and the sweep continues.
[[nodiscard]] std::vector<SweepRow> sweep(const JacobianSet& jac, const Method& method,
                                          std::span<const double> h_grid,
                                          const TrackingOptions& options);

/// `points` log-spaced values from hmin to hmax inclusive.
[[nodiscard]] std::vector<double> log_grid(double hmin, double hmax, Index points);

struct Criteria {
  std::optional<double> eps_s_max;
  std::optional<double> eps_p_max;
};

enum class HmaxKind { finite, unbounded, below_grid };

struct HmaxResult {
  HmaxKind kind = HmaxKind::unbounded;
  /// Largest admissible grid point; only meaningful when kind == finite.
  double hmax = 0.0;
  /// First grid point at which the criterion fails (unset when unbounded).
  std::optional<double> failing_h;
  /// "eps_s", "eps_p" or "step_singularity"; empty when unbounded.
  std::string limiting_metric;
  std::optional<Index> limiting_mode;
  Complex limiting_eigenvalue;
  double limiting_value = 0.0;
};

/// Largest grid point h* such that the criterion holds at h* and at every smaller grid point.
[[nodiscard]] HmaxResult hmax(const JacobianSet& jac, const Method& method,
                              const Criteria& criteria, std::span<const double> h_grid,
                              const TrackingOptions& options);

}  // namespace modeshape
