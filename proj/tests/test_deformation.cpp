#include <algorithm>
#include <numeric>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "helpers.hpp"
#include "modeshape/deformation.hpp"
#include "modeshape/errors.hpp"

using namespace modeshape;

namespace {

double scalar_eps_s(const Method& m, double a, double h) {
  const auto base = modal_baseline(testing::ode_jacobians(Matrix::Constant(1, 1, a)));
  return deform(base, {m, h}).eps_s[0];
}

double max_abs_eps_p(const DeformationReport& r) {
  double worst = 0.0;
  for (Index i = 0; i < r.eps_p.eps_p.size(); ++i) {
    const double v = r.eps_p.eps_p.reshaped()(i);
    if (!std::isnan(v)) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

TEST_CASE("pairing matches brute force") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix A = testing::random_stable(5, rng);
    const double h = 0.05;
    const auto sa = eig_full<double>(A);
    const auto base = modal_baseline(testing::ode_jacobians(A));
    const auto G = companion_matrix({Method::bem(), h}, base.jac, base.A);
    const auto sg = eig_full<double>(G.G);
    const auto pairing = pair_modes(sa, sg, h);
    auto entry = [&](Index i, Index j) {
      const double cos = std::abs(sa.U.col(i).dot(sg.U.col(j))) /
                         (sa.U.col(i).norm() * sg.U.col(j).norm());
      return std::abs(std::exp(sa.eigenvalues(i) * h) - sg.eigenvalues(j)) + 1.0 - cos;
    };
    std::vector<Index> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double c = 0.0;
      for (Index i = 0; i < 5; ++i) c += entry(i, perm[static_cast<std::size_t>(i)]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    double chosen = 0.0;
    for (Index i = 0; i < 5; ++i) chosen += entry(i, pairing.partner[static_cast<std::size_t>(i)]);
    CHECK(chosen == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("pairing survives a reversed spectrum") {
  Matrix A = Vector((Vector(3) << -1.0, -2.0, -3.0).finished()).asDiagonal();
  const double h = 0.1;
  const auto sa = eig_full<double>(A);
  auto sg = eig_full<double>(Matrix((A * h).exp()));
  sg.eigenvalues.reverseInPlace();
  sg.U = sg.U.rowwise().reverse().eval();
  sg.W = sg.W.colwise().reverse().eval();
  const auto p = pair_modes(sa, sg, h);
  CHECK(p.partner[0] == 2);
  CHECK(p.partner[1] == 1);
  CHECK(p.partner[2] == 0);
  CHECK(p.cost < 1e-14);
}

TEST_CASE("scalar eigenvalue deformation") {
  CHECK(scalar_eps_s(Method::bem(), -1.0, 0.1) == doctest::Approx(4.689820195675109).epsilon(1e-10));
  CHECK(scalar_eps_s(Method::tm(), -1.0, 0.1) == doctest::Approx(0.08345855698264071).epsilon(1e-9));
}

TEST_CASE("large deformation does not swap modes") {
  // BEM at h = 0.1 moves these eigenvalues further than their spacing; distance alone would
  // pair the real mode -3.94 with the complex pair.
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = -3.59414;
  A(0, 1) = 5.32131;
  A(1, 0) = -5.32131;
  A(1, 1) = -3.59414;
  A(2, 2) = -3.94333;
  const auto base = modal_baseline(testing::ode_jacobians(A));
  const auto r = deform(base, {Method::bem(), 0.1});
  for (Index i = 0; i < 3; ++i) {
    const auto z = r.spectrum_g.eigenvalues(r.pairing.partner[static_cast<std::size_t>(i)]);
    CHECK((std::abs(z.imag()) > 0.0) == (std::abs(base.spectrum.eigenvalues(i).imag()) > 0.0));
  }
  CHECK(max_abs_eps_p(r) < 1e-7);
}

TEST_CASE("exact map has no eigenvalue deformation") {
  std::mt19937 rng(17);
  const Matrix A = testing::random_stable(4, rng);
  const double h = 0.02;
  const auto sa = eig_full<double>(A);
  const auto sg = eig_full<double>(Matrix((A * h).exp()));
  const auto p = pair_modes(sa, sg, h);
  for (double e : eig_deformation(p, sa, sg, h)) CHECK(std::abs(e) < 1e-10);
}

TEST_CASE("aliased modes are flagged") {
  Matrix A(2, 2);
  A << -0.1, 40.0, -40.0, -0.1;
  const auto base = modal_baseline(testing::ode_jacobians(A));
  const auto r = deform(base, {Method::tm(), 0.1});
  CHECK(r.pairing.aliased[0]);
  CHECK(r.pairing.aliased[1]);
  const auto ok = deform(base, {Method::tm(), 0.01});
  CHECK_FALSE(ok.pairing.aliased[0]);
}

TEST_CASE("implicit methods keep mode shapes") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix A = testing::random_stable(6, rng);
    const auto base = modal_baseline(testing::ode_jacobians(A));
    for (const auto& m : {Method::bem(), Method::tm(), Method::make_theta(0.47), Method::dirk2s()}) {
      CHECK(max_abs_eps_p(deform(base, {m, 0.05})) < 1e-7);
    }
  }
}

TEST_CASE("heun on the smib deforms mode shapes") {
  const auto base = modal_baseline(testing::smib_jacobians());
  const auto r = deform(base, {Method::heun(2), 0.01});
  CHECK(r.eps_s[0] == doctest::Approx(2.4814193074044812).epsilon(1e-8));
  CHECK(r.eps_p.eps_p(0, 0) == doctest::Approx(0.01299587).epsilon(1e-5));
  CHECK(r.eps_p.eps_p(1, 0) == doctest::Approx(0.01299587).epsilon(1e-5));
}

TEST_CASE("heun on a pure ode keeps mode shapes") {
  std::mt19937 rng(23);
  const Matrix A = testing::random_stable(4, rng);
  const auto base = modal_baseline(testing::ode_jacobians(A));
  CHECK(max_abs_eps_p(deform(base, {Method::heun(2), 0.01})) < 1e-7);
}

TEST_CASE("small participation factors are masked") {
  Matrix A(2, 2);
  A << -1.0, 1e-6, 0.0, -2.0;
  const auto base = modal_baseline(testing::ode_jacobians(A));
  const auto r = deform(base, {Method::tm(), 0.01});
  CHECK(r.eps_p.low_pf(1, 0));
  CHECK(std::isnan(r.eps_p.eps_p(1, 0)));
  CHECK_FALSE(r.eps_p.low_pf(0, 0));
}

TEST_CASE("mismatched normalization is rejected") {
  const auto base = modal_baseline(testing::smib_jacobians());
  auto other = normalize_columns(participation_matrix(base.spectrum), PfNormalization::magnitude_sum);
  const auto sg = eig_full<double>(base.A);
  const auto p = pair_modes(base.spectrum, sg, 0.01);
  CHECK_THROWS_AS((void)pf_deformation(base.pf, other, p, base.spectrum, sg), ConformanceError);
}

TEST_CASE("critical modes and top states") {
  Matrix A(3, 3);
  A << -0.2, 5.0, 0.0, -5.0, -0.2, 0.0, 0.0, 0.0, -3.0;
  const auto s = eig_full<double>(A);
  const auto modes = critical_modes(s, 2);
  REQUIRE(modes.size() == 2);
  CHECK(std::abs(s.eigenvalues(modes[0]).imag()) == doctest::Approx(5.0));
  CHECK(std::abs(s.eigenvalues(modes[1]).imag()) == doctest::Approx(5.0));
  const auto pf = normalize_columns(participation_matrix(s));
  const auto all = critical_modes(s, 0);
  CHECK(all.size() == 3);
  const Index real_mode = all[2];
  const auto states = top_states(pf, real_mode, 1);
  REQUIRE(states.size() == 1);
  CHECK(states[0] == 2);
}

TEST_CASE("flags text") {
  CHECK(format_flags(0) == "");
  CHECK(format_flags(flags::aliased | flags::low_pf) == "aliased;low_pf");
  CHECK(format_flags(flags::aliased | flags::degenerate | flags::low_pf | flags::failed) ==
        "aliased;degenerate;low_pf;failed");
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-4, 1e-1, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 1e-4);
  CHECK(g.back() == 1e-1);
  CHECK(g[1] == doctest::Approx(1e-3));
}

TEST_CASE("sweep rows") {
  const auto jac = testing::smib_jacobians();
  TrackingOptions opt;
  opt.n_modes = 2;
  opt.top_k_pf = 2;
  const auto grid = log_grid(1e-3, 1e-1, 20);
  const auto rows = sweep(jac, Method::tm(), grid, opt);
  CHECK(rows.size() == 20 * 2 * 2);
  for (const auto& r : rows) CHECK(std::abs(r.eps_p_pct) < 1e-7);
}

TEST_CASE("sweep continues past a singular step") {
  const auto jac = testing::ode_jacobians(Matrix::Constant(1, 1, 10.0));
  TrackingOptions opt;
  const std::vector<double> grid{0.05, 0.1, 0.2};
  const auto rows = sweep(jac, Method::bem(), grid, opt);
  REQUIRE(rows.size() == 3);
  CHECK((rows[1].flags & flags::failed) != 0U);
  CHECK((rows[2].flags & flags::failed) == 0U);
}

TEST_CASE("hmax of heun on the smib") {
  const auto jac = testing::smib_jacobians();
  const auto grid = log_grid(1e-4, 1e-1, 40);
  TrackingOptions opt;
  Criteria c;
  c.eps_s_max = 5.0;
  const auto r = hmax(jac, Method::heun(2), c, grid, opt);
  CHECK(r.kind == HmaxKind::finite);
  CHECK(r.hmax == doctest::Approx(0.017012542798525893).epsilon(1e-12));
  CHECK(*r.failing_h == doctest::Approx(0.020309176209047368).epsilon(1e-12));
  CHECK(r.limiting_metric == "eps_s");
}

TEST_CASE("hmax sentinels") {
  const auto jac = testing::smib_jacobians();
  const auto grid = log_grid(1e-4, 1e-1, 40);
  Criteria p;
  p.eps_p_max = 5.0;
  CHECK(hmax(jac, Method::tm(), p, grid, {}).kind == HmaxKind::unbounded);
  CHECK(hmax(jac, Method::dirk2s(), p, grid, {}).kind == HmaxKind::unbounded);

  Criteria tight;
  tight.eps_s_max = 1e-9;
  const auto below = hmax(jac, Method::bem(), tight, grid, {});
  CHECK(below.kind == HmaxKind::below_grid);
  CHECK(*below.failing_h == grid.front());

  CHECK_THROWS_AS((void)hmax(jac, Method::tm(), Criteria{}, grid, {}), ParameterError);
  const std::vector<double> bad{0.1, 0.01};
  CHECK_THROWS_AS((void)hmax(jac, Method::tm(), p, bad, {}), ParameterError);
}

TEST_CASE("hmax uses the prefix rule") {
  // BEM on a = 10 is singular at h = 0.1 only, so the larger grid point cannot be reached.
  const auto jac = testing::ode_jacobians(Matrix::Constant(1, 1, 10.0));
  Criteria c;
  c.eps_s_max = 1e9;
  const std::vector<double> grid{0.05, 0.1, 0.2};
  const auto r = hmax(jac, Method::bem(), c, grid, {});
  CHECK(r.kind == HmaxKind::finite);
  CHECK(r.hmax == 0.05);
  CHECK(r.limiting_metric == "step_singularity");
}
