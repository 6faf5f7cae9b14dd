#include "modeshape/eigen_core.hpp"

#include <algorithm>
#include <numeric>

#include "modeshape/errors.hpp"

namespace modeshape {

namespace {

struct RawEigen {
  ComplexVector values;
  ComplexMatrix vectors;
};

RawEigen decompose(const Matrix& A) {
  Eigen::EigenSolver<Matrix> solver(A, true);
  if (solver.info() != Eigen::Success) throw EvaluationError("eigenvalue iteration failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RawEigen decompose(const ComplexMatrix& A) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, true);
  if (solver.info() != Eigen::Success) throw EvaluationError("eigenvalue iteration failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Unit 2-norm, largest-magnitude component rotated onto the positive real axis.
void normalize_column(Eigen::Ref<ComplexVector> v) {
  const double norm = v.norm();
  if (norm == 0.0) return;
  v /= norm;
  Index pivot = 0;
  double best = -1.0;
  for (Index k = 0; k < v.size(); ++k) {
    // Tie-break towards the lower index so the choice is stable.
    if (std::abs(v(k)) > best * (1.0 + 1e-12)) {
      best = std::abs(v(k));
      pivot = k;
    }
  }
  v *= std::conj(v(pivot)) / std::abs(v(pivot));
}

}  // namespace

bool Spectrum::any_degenerate() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool d) { return d; });
}

template <typename Scalar>
Spectrum eig_full(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A) {
  if (A.rows() < 1 || A.rows() != A.cols()) {
    throw ConformanceError("eig_full needs a non-empty square matrix");
  }
  if (!A.allFinite()) throw ConformanceError("eig_full input has non-finite entries");

  const Index n = A.rows();
  const RawEigen raw = decompose(A);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Complex sa = raw.values(a);
    const Complex sb = raw.values(b);
    if (sa.real() != sb.real()) return sa.real() > sb.real();
    return sa.imag() > sb.imag();
  });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.U.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    spec.eigenvalues(i) = raw.values(order[static_cast<std::size_t>(i)]);
    spec.U.col(i) = raw.vectors.col(order[static_cast<std::size_t>(i)]);
    normalize_column(spec.U.col(i));
  }

  const Eigen::PartialPivLU<ComplexMatrix> lu(spec.U);
  spec.u_rcond = lu.rcond();
  if (spec.u_rcond > kEigenvectorRcondFloor) {
    spec.W = lu.inverse();
  } else {
    spec.condition_warning = true;
    spec.W = spec.U.completeOrthogonalDecomposition().pseudoInverse();
  }

  const ComplexMatrix Ac = A.template cast<Complex>();
  spec.right_residuals.resize(n);
  spec.left_residuals.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Complex s = spec.eigenvalues(i);
    spec.right_residuals(i) = (Ac * spec.U.col(i) - s * spec.U.col(i)).norm();
    spec.left_residuals(i) = (spec.W.row(i) * Ac - s * spec.W.row(i)).norm();
  }
  return cluster_degenerate(std::move(spec));
}

template Spectrum eig_full<double>(const Matrix&);
template Spectrum eig_full<Complex>(const ComplexMatrix&);

double default_cluster_tolerance(const ComplexVector& eigenvalues) {
  const double largest = eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  return 1e-6 * std::max(1.0, largest);
}

Spectrum cluster_degenerate(Spectrum spectrum, double tol_cluster) {
  const Index n = spectrum.order();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto root = [&](Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(spectrum.eigenvalues(i) - spectrum.eigenvalues(j)) <= tol_cluster) {
        const Index a = root(i);
        const Index b = root(j);
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }

  // Labels numbered by first appearance in the sorted spectrum.
  spectrum.cluster.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> label_of_root(static_cast<std::size_t>(n), -1);
  std::vector<Index> sizes;
  for (Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(root(i));
    if (label_of_root[r] < 0) {
      label_of_root[r] = static_cast<Index>(sizes.size());
      sizes.push_back(0);
    }
    spectrum.cluster[static_cast<std::size_t>(i)] = label_of_root[r];
    ++sizes[static_cast<std::size_t>(label_of_root[r])];
  }
  spectrum.degenerate.assign(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const auto label = static_cast<std::size_t>(spectrum.cluster[static_cast<std::size_t>(i)]);
    spectrum.degenerate[static_cast<std::size_t>(i)] = sizes[label] > 1;
  }
  return spectrum;
}

Spectrum cluster_degenerate(Spectrum spectrum) {
  const double tol = default_cluster_tolerance(spectrum.eigenvalues);
  return cluster_degenerate(std::move(spectrum), tol);
}

}  // namespace modeshape
