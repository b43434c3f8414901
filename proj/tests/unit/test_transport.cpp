#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "speclab/diagnostics.hpp"
#include "speclab/timestepping.hpp"
#include "speclab/transport.hpp"
#include "test_util.hpp"

using namespace speclab;
using namespace speclab::transport;
using speclab::testing::brute_force_product;
using speclab::testing::max_diff;
using speclab::testing::random_field;

namespace {

constexpr double kWidth = 0.5;

/// Periodized Gaussian centered at pi, and its derivative.
double gauss(double x) {
  double s = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const double y = x - std::numbers::pi - kTwoPi * m;
    s += std::exp(-y * y / (2 * kWidth * kWidth));
  }
  return s;
}
double dgauss(double x) {
  double s = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const double y = x - std::numbers::pi - kTwoPi * m;
    s += -y / (kWidth * kWidth) * std::exp(-y * y / (2 * kWidth * kWidth));
  }
  return s;
}

TransportProblem bump_sine(int n) {
  return TransportProblem::from_function(
      [](double x) { return std::sin(x) * gauss(x); },
      [](double x) { return std::cos(x) * gauss(x) + std::sin(x) * dgauss(x); }, 4 * n + 2,
      16 * n + 64);
}

}  // namespace

TEST(RhsSpectral, ConstantSpeedIsMinusIk) {
  const auto u = random_field(6, 1);
  const auto r = rhs_spectral(u, TransportProblem::constant(1.0, 12));
  for (int k = -6; k <= 6; ++k) EXPECT_LT(std::abs(r[k] - Complex(0.0, -k) * u[k]), 1e-15);
  EXPECT_EQ(rhs_spectral(SpectralField(6), TransportProblem::sine(12)).max_abs(), 0.0);
}

TEST(RhsSpectral, SineTimesCosine) {
  // (sin x cos x)_x = cos 2x
  SpectralField u(4);
  set_mode(u, 1, 0.5);
  const auto r = rhs_spectral(u, TransportProblem::sine(8));
  SpectralField expected(4);
  set_mode(expected, 2, -0.5);
  EXPECT_LT(max_diff(r, expected), 1e-15);
  EXPECT_LT(max_diff(rhs_pseudospectral(u, TransportProblem::sine(8)), expected), 1e-14);
}

TEST(RhsSpectral, MatchesDirectConvolution) {
  const int n = 10;
  const auto prob = bump_sine(n);
  const auto u = random_field(n, 2);
  const auto product = project(brute_force_product(prob.q_hat, u), n);
  EXPECT_LT(max_diff(rhs_spectral(u, prob), -1.0 * differentiate(product)), 1e-13);
  EXPECT_THROW(rhs_spectral(random_field(n, 2), TransportProblem::sine(n)), InvalidArgument);
}

TEST(RhsPseudo, ConstantSpeedEqualsSpectral) {
  const auto u = random_field(7, 3);
  const auto prob = TransportProblem::constant(2.0, 14);
  EXPECT_LT(max_diff(rhs_pseudospectral(u, prob), rhs_spectral(u, prob)), 1e-13);
}

TEST(RhsPseudo, DifferenceIsAliasingOfTheProduct) {
  const int n = 12;
  const auto prob = bump_sine(n);
  const auto u = random_field(n, 4);
  const auto exact = brute_force_product(prob.q_hat, u);
  const auto expected = -1.0 * differentiate(aliasing_error(exact, n));
  const auto diff = rhs_pseudospectral(u, prob) - rhs_spectral(u, prob);
  EXPECT_LT(max_diff(diff, expected), 1e-11);
}

TEST(RhsTwoThirds, IsPseudoSpectralOfSmoothedField) {
  const int n = 15;
  const auto prob = bump_sine(n);
  const auto u = random_field(n, 5);
  const auto p = build_mollifier(n);
  EXPECT_EQ(rhs_two_thirds(u, prob, p), rhs_pseudospectral(apply_profile(u, p), prob));
  SpectralField top(n);
  set_mode(top, n, 1.0);
  EXPECT_EQ(rhs_two_thirds(top, prob, p).max_abs(), 0.0);
  EXPECT_THROW(rhs_two_thirds(u, prob, build_sv_profile(n, 1)), InvalidArgument);
}

TEST(ImagModes, SmallExamples) {
  ImagModeState s{{1.0, 0.0}};
  const auto r = rhs_sinx_imag(s);
  EXPECT_EQ(r[1], 0.0);  // (1/2)(b_0 - b_2)
  EXPECT_EQ(r[2], 1.0);  // 1 * (b_1 - b_3), b_3 = -b_2 = 0
  ImagModeState t{{0.0, 1.0}};
  const auto r2 = rhs_sinx_imag(t);
  EXPECT_EQ(r2[1], -0.5);
  EXPECT_EQ(r2[2], 1.0);  // closure: -b_3 = b_2
  const auto z = rhs_sinx_imag(t, true);
  EXPECT_EQ(z[1], 0.0);
  EXPECT_EQ(z[2], 0.0);
}

TEST(ImagModes, MatchFullPseudoSpectralSolverForMinusSine) {
  const int n = 16;
  const auto prob = TransportProblem::from_function([](double x) { return -std::sin(x); },
                                                    [](double x) { return -std::cos(x); }, 2 * n);
  auto b = cubic_decay_initial(n);
  auto u = b.to_field();
  const StepControl c{1e-3, 0.5};
  integrate(b, [](const ImagModeState& s) { return rhs_sinx_imag(s); }, c);
  integrate(u, [&](const SpectralField& s) { return rhs_pseudospectral(s, prob); }, c);
  const auto from_full = ImagModeState::from_field(u);
  double err = 0.0, re = 0.0;
  for (int k = 1; k <= n; ++k) {
    err = std::max(err, std::abs(from_full[k] - b[k]));
    re = std::max(re, std::abs(u[k].real()));
  }
  EXPECT_LT(err, 1e-12);
  EXPECT_LT(re, 1e-12);
}

TEST(ImagModes, InitialData) {
  const auto u = under_resolved_initial(8);
  EXPECT_NEAR(u[4], std::pow(std::numbers::pi / 2, 6) / 20.0, 1e-15);
  EXPECT_NEAR(u[8], 0.0, 1e-15);
  EXPECT_EQ(cubic_decay_initial(3)[2], 0.125);
}

TEST(AliasingFunctional, MatchesQuadrature) {
  for (int n : {6, 12}) {
    const auto prob = bump_sine(n);
    const auto u = random_field(n, 10 + n, 0.9);
    // I_N[q u] from exact point values of q; S_N[q u] from the exact convolution.
    auto v = sample_on_grid(u, 2 * n + 1);
    for (int j = 0; j <= 2 * n; ++j) v[j] *= prob.q(kTwoPi * j / (2 * n + 1));
    const auto interp = analyze(NodalField{n, v});
    const auto trunc = project(brute_force_product(prob.q_hat, u), n);
    const auto dA = differentiate(interp - trunc);
    const int pts = 8 * n + 1;
    const auto uu = sample_on_grid(u, pts), dd = sample_on_grid(dA, pts);
    double quad = 0.0;
    for (int j = 0; j < pts; ++j) quad += uu[j] * dd[j];
    quad *= kTwoPi / pts;
    EXPECT_NEAR(aliasing_functional(u, prob), quad, 1e-10 * std::max(1.0, std::abs(quad)));
  }
}

TEST(AliasingFunctional, VanishesWithoutAliasing) {
  const int n = 8;
  auto u = random_field(n, 1);
  EXPECT_EQ(aliasing_functional(SpectralField(n), bump_sine(n)), 0.0);
  // sin x times a field of degree N - 1 stays within the grid.
  set_mode(u, n, 0.0);
  EXPECT_NEAR(aliasing_functional(u, TransportProblem::sine(4 * n + 2)), 0.0, 1e-14);
  EXPECT_THROW(aliasing_functional(u, TransportProblem::sine(2 * n)), InvalidArgument);
}

TEST(Characteristics, ClosedFormMatchesRk4) {
  const auto prob = TransportProblem::sine();
  for (double t : {0.3, 1.0, 2.0})
    for (double x : {0.1, 1.0, 2.5, 3.0, 4.0, 6.0}) {
      const auto [x0, j0] = sine_backward_characteristic(x, t);
      const auto [x1, j1] = backward_characteristic(prob, x, t);
      EXPECT_NEAR(x0, x1, 1e-9) << x << " " << t;
      EXPECT_NEAR(j0, j1, 1e-9) << x << " " << t;
    }
}

TEST(ExactSolution, TrivialSpeeds) {
  auto u0 = [](double x) { return std::exp(std::sin(x)); };
  const std::vector<double> xs{0.0, 1.0, 2.0, 5.0};
  const auto still = exact_linear_solution(TransportProblem::constant(0.0), u0, 0.7, xs);
  const auto moved = exact_linear_solution(TransportProblem::constant(1.0), u0, 0.7, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(still[i], u0(xs[i]), 1e-14);
    EXPECT_NEAR(moved[i], u0(xs[i] - 0.7), 1e-12);
  }
}

TEST(ExactSolution, ConservesMass) {
  const auto prob = TransportProblem::sine();
  auto u0 = [](double x) { return 1.0 + 0.5 * std::cos(x); };
  const auto v = exact_linear_solution(prob, u0, 1.0, 200);
  double mass = 0.0;
  for (double x : v.values) mass += x;
  EXPECT_NEAR(mass * v.spacing(), kTwoPi, 1e-8);
}

TEST(Stability, SpectralEnergyBound) {
  const int n = 32;
  const auto prob = bump_sine(n);
  auto u = random_field(n, 7, 0.8);
  const double e0 = l2_norm(u);
  double worst = 0.0;
  std::vector<Observer<SpectralField>> obs{
      {"e", {}, 0.1, [&](double t, const SpectralField& s) {
         worst = std::max(worst, l2_norm(s) / (std::exp(0.5 * prob.dq_max * t) * e0));
         return std::vector<double>{};
       }}};
  integrate(u, [&](const SpectralField& s) { return rhs_spectral(s, prob); },
            StepControl{default_dt(n, 1.0), 1.0}, obs);
  EXPECT_LE(worst, 1.0 + 1e-10);
}
