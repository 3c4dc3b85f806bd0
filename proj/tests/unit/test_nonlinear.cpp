#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/nonlinear/forcing.hpp"
#include "gwnk/nonlinear/jacobian_free.hpp"
#include "gwnk/nonlinear/line_search.hpp"
#include "gwnk/nonlinear/newton.hpp"
#include "oracles.hpp"

using namespace gwnk::nonlinear;
using gwnk::krylov::CsrMatrix;
using gwnk::krylov::GmresSettings;
namespace t = gwnk::testing;

namespace {

ResidualFunction make_residual(std::size_t n, std::function<void(std::span<const double>, std::span<double>)> fn) {
  return ResidualFunction(n, std::move(fn));
}

// F(h) = (h1^2 - 1, h2^2 - 4)
void squares(std::span<const double> h, std::span<double> out) {
  out[0] = h[0] * h[0] - 1.0;
  out[1] = h[1] * h[1] - 4.0;
}

CsrMatrix squares_jacobian(std::span<const double> h) {
  return CsrMatrix::from_triplets(2, 2, {{0, 0, 2.0 * h[0]}, {1, 1, 2.0 * h[1]}});
}

// A mildly coupled nonlinear system with a known structure for accounting tests.
void coupled(std::span<const double> h, std::span<double> out) {
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? h[i - 1] : 0.0;
    const double right = i + 1 < n ? h[i + 1] : 0.0;
    out[i] = 3.0 * h[i] + 0.1 * h[i] * h[i] * h[i] - left - right - 1.0;
  }
}

CsrMatrix coupled_jacobian(std::span<const double> h) {
  const std::size_t n = h.size();
  std::vector<gwnk::krylov::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0 + 0.3 * h[i] * h[i]});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace

TEST(PerturbationEpsilon, ZeroHeadGivesB) {
  const Vector h(4, 0.0);
  const Vector v{1.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(perturbation_epsilon(h, v, 1e-6), 1e-6);
}

TEST(PerturbationEpsilon, DirectEvaluation) {
  // sum(1e-6*1 + 1e-6) over 2 entries = 4e-6, divided by n*||v||^2 = 2*2
  const Vector h{1.0, 1.0};
  const Vector v{1.0, 1.0};
  EXPECT_NEAR(perturbation_epsilon(h, v, 1e-6), 1e-6, 1e-22);
}

TEST(PerturbationEpsilon, HeadTermIsLinearInMagnitude) {
  const Vector h{3.0, -7.0, 11.0};
  Vector h10 = h;
  for (auto& x : h10) x *= 10.0;
  const Vector v{0.6, 0.0, 0.8};
  const double b = 1e-6;
  const double base = 3 * b / 3.0;  // the "+ b" part
  const double e1 = perturbation_epsilon(h, v, b) - base;
  const double e10 = perturbation_epsilon(h10, v, b) - base;
  EXPECT_NEAR(e10, 10.0 * e1, 1e-18);
}

TEST(PerturbationEpsilon, RejectsZeroDirectionAndBadB) {
  const Vector h{1.0, 2.0};
  EXPECT_THROW((void)perturbation_epsilon(h, Vector{0.0, 0.0}, 1e-6), std::invalid_argument);
  EXPECT_THROW((void)perturbation_epsilon(h, Vector{1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(JvProduct, LinearResidualIsDifferentiatedExactly) {
  const auto a = CsrMatrix::from_dense({{4, -1, 0}, {-1, 4, -1}, {0, -1, 4}});
  const Vector rhs{1, 2, 3};
  const auto f = make_residual(3, [&](std::span<const double> h, std::span<double> out) {
    gwnk::krylov::spmv(a, h, out);
    for (int i = 0; i < 3; ++i) out[i] -= rhs[i];
  });
  const Vector h{10, 20, 30};
  const Vector fh = f.eval(h);
  const Vector v{0.2, -0.5, 0.7};
  const double eps = perturbation_epsilon(h, v, 1e-6);
  const auto calls = f.call_count();
  const Vector jv = jv_product_fd(f, h, fh, v, eps);
  EXPECT_EQ(f.call_count(), calls + 1);
  EXPECT_LE(t::max_abs_diff(jv, gwnk::krylov::spmv(a, v)), 1e-8 * 6.0);
}

TEST(JvProduct, QuadraticHasFirstOrderError) {
  const auto f = make_residual(2, [](std::span<const double> h, std::span<double> out) {
    out[0] = h[0] * h[0];
    out[1] = h[1] * h[1];
  });
  const Vector h{1.0, 2.0};
  const Vector fh = f.eval(h);
  const Vector jv = jv_product_fd(f, h, fh, Vector{1.0, 0.0}, 1e-6);
  EXPECT_NEAR(jv[0], 2.0, 2e-6);
  EXPECT_NEAR(jv[1], 0.0, 1e-12);
}

TEST(JvProduct, NonFiniteOutputNamesIndex) {
  const auto f = make_residual(3, [](std::span<const double> h, std::span<double> out) {
    out[0] = h[0];
    out[1] = h[1] > 1.0 ? std::numeric_limits<double>::quiet_NaN() : h[1];
    out[2] = h[2];
  });
  const Vector h{0.0, 1.0, 0.0};
  const Vector fh = f.eval(h);
  try {
    (void)jv_product_fd(f, h, fh, Vector{0.0, 1.0, 0.0}, 1e-3);
    FAIL() << "expected NonFiniteResidual";
  } catch (const NonFiniteResidual& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(JacobianFreeOperator, ZeroDirectionSkipsResidualCall) {
  const auto f = make_residual(2, squares);
  const Vector h{1.0, 2.0};
  const Vector fh = f.eval(h);
  const auto op = jacobian_free_operator(f, h, fh, 1e-6);
  const auto calls = f.call_count();
  EXPECT_EQ(op.apply(Vector{0.0, 0.0}), (Vector{0.0, 0.0}));
  EXPECT_EQ(f.call_count(), calls);
  const Vector y = op.apply(Vector{3.0, 4.0});
  EXPECT_EQ(f.call_count(), calls + 1);
  EXPECT_NEAR(y[0], 6.0, 1e-4);
  EXPECT_NEAR(y[1], 16.0, 1e-4);
}

TEST(ForcingTerm, ExamplesFromSchedule) {
  EXPECT_DOUBLE_EQ(forcing_term(3, 10.0, 20.0, 0.99, 0.625), 0.99);
  EXPECT_DOUBLE_EQ(forcing_term(3, 0.5, 1.0, 0.99, 0.625), 0.5);
  EXPECT_DOUBLE_EQ(forcing_term(3, 0.6, 0.3, 0.99, 0.625), 0.99);
}

TEST(ForcingTerm, FirstIterationAndDegenerateHistory) {
  EXPECT_DOUBLE_EQ(forcing_term(0, 0.1, 0.0, 0.99, 0.625), 0.99);
  EXPECT_DOUBLE_EQ(forcing_term(2, 0.1, 0.0, 0.99, 0.625), 0.99);
  EXPECT_DOUBLE_EQ(forcing_term(2, 0.0, 0.3, 0.99, 0.625), 0.99);
}

TEST(ForcingTerm, AlwaysInHalfOpenUnitRange) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mag(-12.0, 6.0);
  std::uniform_int_distribution<std::size_t> iter(0, 30);
  for (int i = 0; i < 100000; ++i) {
    const double a = std::pow(10.0, mag(rng));
    const double b = i % 17 == 0 ? 0.0 : std::pow(10.0, mag(rng));
    const double eta = forcing_term(iter(rng), a, b, 0.99, 0.625);
    ASSERT_GT(eta, 0.0);
    ASSERT_LE(eta, 0.99);
  }
}

TEST(LineSearch, NewtonStepOnQuadraticIsAcceptedImmediately) {
  // F linear -> merit quadratic; the exact Newton step zeroes F.
  const auto f = make_residual(2, [](std::span<const double> h, std::span<double> out) {
    out[0] = 2.0 * h[0] - 1.0;
    out[1] = h[1] + 3.0;
  });
  const Vector h{0.0, 0.0};
  const Vector fh = f.eval(h);
  const Vector delta{0.5, -3.0};
  const double slope = fh[0] * 2.0 * delta[0] + fh[1] * delta[1];
  NewtonSettings s;
  const auto ls = backtracking_line_search(f, h, delta, merit(fh), slope, s);
  EXPECT_TRUE(ls.armijo_satisfied);
  EXPECT_EQ(ls.trials, 1u);
  EXPECT_DOUBLE_EQ(ls.lambda, 1.0);
  EXPECT_NEAR(ls.merit, 0.0, 1e-30);
}

TEST(LineSearch, QuarticMeritAcceptsFullStep) {
  // F = h^2/sqrt(2) so that the merit is h^4/4; slope at h=1 along -1/3 is -1/3.
  const auto f = make_residual(1, [](std::span<const double> h, std::span<double> out) {
    out[0] = h[0] * h[0] / std::sqrt(2.0);
  });
  const Vector h{1.0};
  const double f_h = 0.25;
  const auto ls = backtracking_line_search(f, h, Vector{-1.0 / 3.0}, f_h, -1.0 / 3.0, NewtonSettings{});
  EXPECT_TRUE(ls.armijo_satisfied);
  EXPECT_DOUBLE_EQ(ls.lambda, 1.0);
  EXPECT_NEAR(ls.merit, 0.25 * std::pow(2.0 / 3.0, 4), 1e-15);
  EXPECT_NEAR(ls.merit, 0.0494, 1e-4);
}

TEST(LineSearch, CapOfThreeTrials) {
  const auto f = make_residual(1, [](std::span<const double>, std::span<double> out) { out[0] = 10.0; });
  NewtonSettings s;
  s.max_ls = 3;
  const auto before = f.call_count();
  const auto ls = backtracking_line_search(f, Vector{0.0}, Vector{1.0}, 50.0, -1.0, s);
  EXPECT_EQ(f.call_count() - before, 3u);
  EXPECT_EQ(ls.trials, 3u);
  EXPECT_FALSE(ls.armijo_satisfied);
  EXPECT_TRUE(ls.lambda == 1.0 || ls.lambda == 0.5 || ls.lambda == 0.25);
}

TEST(LineSearch, ExhaustedSearchKeepsSmallestMerit) {
  // merit decreases with lambda, never enough for Armijo with a huge claimed slope
  const auto f = make_residual(1, [](std::span<const double> h, std::span<double> out) { out[0] = 1.0 + h[0]; });
  NewtonSettings s;
  const auto ls = backtracking_line_search(f, Vector{0.0}, Vector{1.0}, 0.5, -1e6, s);
  EXPECT_FALSE(ls.armijo_satisfied);
  EXPECT_DOUBLE_EQ(ls.lambda, 0.25);
  EXPECT_DOUBLE_EQ(ls.h_new[0], 0.25);
}

TEST(LineSearch, NonDescentSkipsSearch) {
  const auto f = make_residual(1, [](std::span<const double> h, std::span<double> out) { out[0] = h[0]; });
  const auto before = f.call_count();
  const auto ls = backtracking_line_search(f, Vector{1.0}, Vector{1.0}, 0.5, 1.0, NewtonSettings{});
  EXPECT_TRUE(ls.non_descent);
  EXPECT_DOUBLE_EQ(ls.lambda, 1.0);
  EXPECT_EQ(f.call_count(), before);
}

TEST(Newton, LinearSystemTakesSingleFullStep) {
  const Vector c{1.5, -2.0, 4.0};
  const auto f = make_residual(3, [&](std::span<const double> h, std::span<double> out) {
    for (int i = 0; i < 3; ++i) out[i] = h[i] - c[i];
  });
  const ExactJacobian mode{[](std::span<const double>) { return CsrMatrix::identity(3); }};
  const auto res = newton_solve(f, mode, NewtonSettings{}, GmresSettings{}, false, Vector(3, 0.0));
  ASSERT_TRUE(res.report.converged);
  const auto& first = res.report.per_iteration.front();
  EXPECT_DOUBLE_EQ(first.lambda, 1.0);
  EXPECT_NEAR(first.step_norm, gwnk::krylov::norm2(c), 1e-12);
  EXPECT_LE(t::max_abs_diff(res.h, c), 1e-12);
  // the second record only confirms the zero step
  EXPECT_LE(res.report.newton_iterations, 2u);
  EXPECT_LE(res.report.per_iteration.back().step_norm, 1e-12);
}

TEST(Newton, SquaresConvergeQuadratically) {
  const auto f = make_residual(2, squares);
  NewtonSettings s;
  s.tau_h = 1e-12;
  s.gamma_ini = 1e-12;  // effectively exact inner solves
  const auto res = newton_solve(f, ExactJacobian{squares_jacobian}, s, GmresSettings{20, 1e-14, 10}, false,
                                Vector{2.0, 3.0});
  ASSERT_TRUE(res.report.converged);
  EXPECT_NEAR(res.h[0], 1.0, 1e-12);
  EXPECT_NEAR(res.h[1], 2.0, 1e-12);
  const auto& it = res.report.per_iteration;
  for (std::size_t k = 1; k < it.size(); ++k) {
    if (it[k - 1].step_norm < 0.1 && it[k].step_norm > 1e-14) {
      EXPECT_LE(it[k].step_norm, 2.0 * it[k - 1].step_norm * it[k - 1].step_norm);
    }
  }
}

TEST(Newton, SquaresConvergeWithDefaultScheduleInBothModes) {
  for (int m = 0; m < 2; ++m) {
    const auto f = make_residual(2, squares);
    NewtonSettings s;
    s.tau_h = 1e-10;
    const JacobianMode mode = m == 0 ? JacobianMode{ExactJacobian{squares_jacobian}}
                                     : JacobianMode{FiniteDifferenceJacobian{1e-6}};
    const auto res = newton_solve(f, mode, s, GmresSettings{}, false, Vector{2.0, 3.0});
    ASSERT_TRUE(res.report.converged) << m;
    EXPECT_NEAR(res.h[0], 1.0, 1e-8);
    EXPECT_NEAR(res.h[1], 2.0, 1e-8);
  }
}

TEST(Newton, ResidualCallAccountingIdentity) {
  const std::size_t n = 30;
  for (int m = 0; m < 2; ++m) {
    for (bool ls : {false, true}) {
      const auto f = make_residual(n, coupled);
      NewtonSettings s;
      s.use_line_search = ls;
      s.tau_h = 1e-9;
      const JacobianMode mode = m == 0 ? JacobianMode{ExactJacobian{coupled_jacobian}}
                                       : JacobianMode{FiniteDifferenceJacobian{1e-6}};
      Vector h0(n, 5.0);
      const auto before = f.call_count();
      const auto res = newton_solve(f, mode, s, GmresSettings{5, 1e-8, 50}, m == 0, h0);
      ASSERT_TRUE(res.report.converged);
      EXPECT_EQ(res.report.residual_calls, f.call_count() - before);
      std::size_t expected = 0;
      for (const auto& it : res.report.per_iteration) {
        std::size_t per = 1 + it.ls_trials;
        if (m == 1) per += it.krylov_inner_iterations + it.slope_products;
        EXPECT_EQ(it.residual_calls, per);
        expected += per;
      }
      EXPECT_EQ(res.report.residual_calls, expected) << "mode " << m << " ls " << ls;
    }
  }
}

TEST(Newton, AcceptedStepsSatisfyArmijo) {
  const std::size_t n = 20;
  const auto f = make_residual(n, coupled);
  NewtonSettings s;
  s.tau_h = 1e-10;
  const auto res = newton_solve(f, FiniteDifferenceJacobian{1e-6}, s, GmresSettings{}, false, Vector(n, 8.0));
  ASSERT_TRUE(res.report.converged);
  bool searched = false;
  for (const auto& it : res.report.per_iteration) {
    if (it.ls_trials == 0 || it.ls_exhausted) continue;
    searched = true;
    EXPECT_LE(it.merit_after, it.merit_before + s.ls_alpha * it.lambda * it.slope);
  }
  EXPECT_TRUE(searched);
}

TEST(Newton, MaxIterationsReturnsBestIterate) {
  const auto f = make_residual(2, squares);
  NewtonSettings s;
  s.max_newton = 2;
  s.tau_h = 1e-14;
  const auto res = newton_solve(f, ExactJacobian{squares_jacobian}, s, GmresSettings{}, false, Vector{2.0, 3.0});
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.newton_iterations, 2u);
  const Vector fb = f.eval(res.h);
  EXPECT_LE(gwnk::krylov::norm2(fb), res.report.per_iteration.front().residual_norm);
}

TEST(Newton, NonFiniteResidualAborts) {
  const auto f = make_residual(1, [](std::span<const double> h, std::span<double> out) { out[0] = std::log(h[0]); });
  EXPECT_THROW((void)newton_solve(f, FiniteDifferenceJacobian{}, NewtonSettings{}, GmresSettings{}, false, Vector{-1.0}),
               NonFiniteResidual);
}

TEST(Newton, FreeModeRejectsPreconditioner) {
  const auto f = make_residual(2, squares);
  EXPECT_THROW((void)newton_solve(f, FiniteDifferenceJacobian{}, NewtonSettings{}, GmresSettings{}, true, Vector{2, 3}),
               std::invalid_argument);
}

TEST(Newton, MaxNormOptionUsesInfinityNorm) {
  const auto f = make_residual(2, squares);
  NewtonSettings s;
  s.step_norm = StepNorm::Max;
  const auto res = newton_solve(f, ExactJacobian{squares_jacobian}, s, GmresSettings{}, false, Vector{2.0, 3.0});
  ASSERT_TRUE(res.report.converged);
  EXPECT_LE(res.report.per_iteration.back().step_norm, s.tau_h);
}

TEST(NewtonSettings, ValidationRejectsOutOfRange) {
  NewtonSettings s;
  s.gamma_ini = 1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = NewtonSettings{};
  s.ls_rho = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = NewtonSettings{};
  s.tau_h = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}
