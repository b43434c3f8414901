#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "speclab/euler2d.hpp"
#include "speclab/fft.hpp"

using namespace speclab;
using namespace speclab::euler2d;

namespace {

/// Hermitian random scalar field with |c| ~ U(-1,1) (1 + |k|)^-2.
SpectralField2D random_scalar(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField2D f(n);
  for (int k1 = 0; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      if (k1 == 0 && k2 < 0) continue;
      const double amp = std::pow(1.0 + std::hypot(k1, k2), -2.0);
      Complex c(u(rng) * amp, u(rng) * amp);
      if (k1 == 0 && k2 == 0) c = c.real();
      f(k1, k2) = c;
      f(-k1, -k2) = std::conj(c);
    }
  return f;
}

VelocityField2D random_vector(int n, std::uint64_t seed) {
  return {random_scalar(n, seed), random_scalar(n, seed + 1000)};
}

double point_value(const SpectralField2D& f, double x1, double x2) {
  Complex s{};
  const int n = f.degree();
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) s += f(k1, k2) * std::polar(1.0, k1 * x1 + k2 * x2);
  return s.real();
}

double max_diff(const SpectralField2D& a, const SpectralField2D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

double max_diff(const VelocityField2D& a, const VelocityField2D& b) {
  return std::max(max_diff(a.u1, b.u1), max_diff(a.u2, b.u2));
}

/// S_N(a b) by direct double convolution.
SpectralField2D convolve(const SpectralField2D& a, const SpectralField2D& b) {
  const int n = a.degree();
  SpectralField2D out(n);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2)
      for (int p1 = std::max(-n, k1 - n); p1 <= std::min(n, k1 + n); ++p1)
        for (int p2 = std::max(-n, k2 - n); p2 <= std::min(n, k2 + n); ++p2)
          out(k1, k2) += a(p1, p2) * b(k1 - p1, k2 - p2);
  return out;
}

}  // namespace

TEST(Leray, AnnihilatesGradients) {
  const auto g = gradient(random_scalar(8, 1));
  EXPECT_LT(leray_project(g).u1.max_abs() + leray_project(g).u2.max_abs(), 1e-15);
}

TEST(Leray, IdempotentOrthogonalDivergenceFree) {
  const auto v = random_vector(10, 2);
  const auto p = leray_project(v);
  EXPECT_LT(max_diff(leray_project(p), p), 1e-15);
  EXPECT_LT(std::abs(inner(p, v - p)), 1e-13 * inner(v, v));
  EXPECT_LT(max_divergence(p), 1e-14);
  EXPECT_GT(max_divergence(v), 1e-2);
  const auto tg = taylor_green(6);
  EXPECT_LT(max_diff(leray_project(tg), tg), 1e-17);
}

TEST(Operators, DivergenceMatchesFiniteDifferences) {
  const auto v = random_vector(6, 3);
  const auto d = divergence(v);
  const double h = 1e-4;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, kTwoPi);
  for (int i = 0; i < 10; ++i) {
    const double x1 = pos(rng), x2 = pos(rng);
    const double fd = (point_value(v.u1, x1 + h, x2) - point_value(v.u1, x1 - h, x2)) / (2 * h) +
                      (point_value(v.u2, x1, x2 + h) - point_value(v.u2, x1, x2 - h)) / (2 * h);
    EXPECT_NEAR(point_value(d, x1, x2), fd, 1e-6);
  }
}

TEST(Operators, CurlOfGradientVanishes) {
  EXPECT_LT(vorticity(gradient(random_scalar(7, 4))).max_abs(), 1e-15);
}

TEST(TaylorGreen, EnergyVorticityAndSamples) {
  const int n = 6;
  const auto tg = taylor_green(n);
  EXPECT_NEAR(energy(tg), std::numbers::pi * std::numbers::pi, 1e-13);
  const int m = 2 * n + 1;
  const auto u1 = synthesize(tg.u1);
  const auto w = synthesize(vorticity(tg));
  double quad = 0.0;
  const auto u2 = synthesize(tg.u2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double x1 = kTwoPi * i / m, x2 = kTwoPi * j / m;
      const std::size_t idx = static_cast<std::size_t>(i) * m + j;
      EXPECT_NEAR(u1[idx], std::sin(x1) * std::cos(x2), 1e-14);
      EXPECT_NEAR(w[idx], 2.0 * std::sin(x1) * std::sin(x2), 1e-14);
      quad += u1[idx] * u1[idx] + u2[idx] * u2[idx];
    }
  EXPECT_NEAR(0.5 * quad * kTwoPi * kTwoPi / (m * m), energy(tg), 1e-12);
  EXPECT_NEAR(enstrophy(tg), 2.0 * std::numbers::pi * std::numbers::pi, 1e-12);
  EXPECT_LE(max_speed(tg), 1.0 + 1e-14);
  EXPECT_GE(max_speed(tg), 0.98);
}

TEST(TaylorGreen, IsStationaryForBothVariants) {
  const int n = 12;
  const auto tg = taylor_green(n);
  const auto rs = rhs_spectral(tg);
  const auto r23 = rhs_two_thirds(tg, build_radial_mollifier(n));
  EXPECT_LT(std::max(rs.u1.max_abs(), rs.u2.max_abs()), 1e-14);
  EXPECT_LT(std::max(r23.u1.max_abs(), r23.u2.max_abs()), 1e-14);
}

TEST(RhsSpectral, MatchesDirectConvolution) {
  const int n = 5;
  const auto u = leray_project(random_vector(n, 6));
  const auto c11 = convolve(u.u1, u.u1), c12 = convolve(u.u1, u.u2), c22 = convolve(u.u2, u.u2);
  VelocityField2D div(n);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      div.u1(k1, k2) = -(Complex(0.0, k1) * c11(k1, k2) + Complex(0.0, k2) * c12(k1, k2));
      div.u2(k1, k2) = -(Complex(0.0, k1) * c12(k1, k2) + Complex(0.0, k2) * c22(k1, k2));
    }
  EXPECT_LT(max_diff(rhs_spectral(u), leray_project(div)), 1e-14);
}

TEST(RhsSpectral, ConservesEnergySemiDiscretely) {
  for (int n : {8, 16}) {
    const auto u = random_divergence_free(n, 7);
    EXPECT_LT(std::abs(inner(u, rhs_spectral(u))), 1e-13 * inner(u, u));
  }
}

TEST(RhsTwoThirds, LowBandAgreesWithSpectral) {
  const int n = 18;
  const auto u = random_divergence_free(n, 8, n / 3 / 2);
  const auto p = build_radial_mollifier(n);
  EXPECT_LT(max_diff(rhs_two_thirds(u, p), rhs_spectral(u)), 1e-14);
  EXPECT_THROW(rhs_two_thirds(u, build_radial_sv(n, 1)), InvalidArgument);
}

TEST(RhsTwoThirds, ConservesWeightedEnergy) {
  const int n = 16;
  const auto p = build_radial_mollifier(n);
  const auto u = random_divergence_free(n, 9);
  EXPECT_LT(std::abs(inner(apply_profile(u, p), rhs_two_thirds(u, p))), 1e-13 * inner(u, u));
}

TEST(RadialProfiles, Plateaus) {
  const int n = 12;
  const auto p = build_radial_mollifier(n);
  EXPECT_EQ(p(4, 0), 1.0);
  EXPECT_EQ(p(0, 8), 0.0);
  EXPECT_EQ(p(6, 6), 0.0);  // |k| = 8.49 > 2N/3
  EXPECT_GT(p(5, 0), 0.0);
  EXPECT_LT(p(5, 0), 1.0);
  EXPECT_EQ(p(3, -2), p(-2, 3));
  const auto sv = build_radial_sv(n, 1);
  EXPECT_EQ(sv(3, 0), 0.0);  // (3/12)^2 < 1/12
  EXPECT_NEAR(sv(12, 0), 1.0 - 1.0 / 12, 1e-15);
}

TEST(SvFilter, DissipatesAndSparesLowModes) {
  const int n = 16;
  const auto u = random_divergence_free(n, 10);
  const auto t = add_sv_filter(VelocityField2D(n), u, build_radial_sv(n, 1));
  EXPECT_LT(inner(u, t), 0.0);
  EXPECT_EQ(std::abs(t.u1(2, 1)), 0.0);
  EXPECT_THROW(add_sv_filter(VelocityField2D(n), u, build_radial_mollifier(n)), InvalidArgument);
}

TEST(InitialData, ShearLayerIsDivergenceFreeAndReal) {
  const auto v = shear_layer_smooth(32);
  EXPECT_EQ(max_divergence(v), 0.0);
  EXPECT_TRUE(v.u1.is_hermitian());
  EXPECT_TRUE(v.u2.is_hermitian());
  const auto u1 = synthesize(v.u1);
  const int m = 65;
  // u1(x2 = pi/2) = 0 and u1(x2 = pi) close to tanh(2 pi)
  EXPECT_NEAR(point_value(v.u1, 0.3, std::numbers::pi / 2), 0.0, 1e-3);
  EXPECT_NEAR(point_value(v.u1, 0.3, std::numbers::pi), std::tanh(2 * std::numbers::pi), 5e-2);
  EXPECT_EQ(u1.size(), static_cast<std::size_t>(m * m));
}

TEST(InitialData, RandomFieldIsSeededAndDivergenceFree) {
  const auto a = random_divergence_free(12, 42), b = random_divergence_free(12, 42);
  const auto c = random_divergence_free(12, 43);
  EXPECT_EQ(max_diff(a, b), 0.0);
  EXPECT_GT(max_diff(a, c), 0.0);
  EXPECT_TRUE(a.u1.is_hermitian());
  EXPECT_LT(max_divergence(a), 1e-15);
  EXPECT_EQ(std::abs(a.u1(0, 0)), 0.0);
  const auto low = random_divergence_free(12, 42, 3);
  EXPECT_EQ(std::abs(low.u1(4, 0)) + std::abs(low.u2(0, 4)), 0.0);
  EXPECT_GT(std::abs(low.u1(1, 3)), 0.0);
}

TEST(Cancellation, SymmetricFormVanishesForDivergenceFreeFields) {
  const int n = 16;
  const auto p = build_radial_mollifier(n);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto um = apply_profile(random_divergence_free(n, seed), p);
    EXPECT_LT(std::abs(symmetric_cancellation_integral(um, p)), 1e-14 * std::max(1.0, inner(um, um)));
  }
}

TEST(Cancellation, LiteralFormVanishesOnlyInSpecialCases) {
  const int n = 16;
  const auto p = build_radial_mollifier(n);
  // (I - S_R) u = 0 on the plateau band.
  const auto low = random_divergence_free(n, 4, n / 3 / 2);
  EXPECT_EQ(cancellation_integral(low, p), 0.0);
  // For generic smoothed data the literal cubic term does not cancel: only the
  // symmetrized form is an exact identity.
  const auto um = apply_profile(random_divergence_free(n, 5), p);
  EXPECT_GT(std::abs(cancellation_integral(um, p)), 1e-6);
}

TEST(Grid, PaddedSizeIsSmoothAndLargeEnough) {
  for (int n = 1; n <= 200; ++n) {
    const int m = euler2d::detail::padded_size(n);
    EXPECT_GE(m, 4 * n + 1);
    int r = m;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    EXPECT_EQ(r, 1);
  }
}

TEST(Fft, RealTransformMatchesComplexTransform) {
  const int n = 9;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> v(n * n);
  std::vector<Complex> c(n * n);
  for (int i = 0; i < n * n; ++i) c[i] = v[i] = g(rng);
  const auto half = fft::rdft2(v, n);
  const auto full = fft::dft2(c, n, fft::Direction::forward);
  const int h = n / 2 + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < h; ++j) EXPECT_LT(std::abs(half[i * h + j] - full[i * n + j]), 1e-12);
  auto back = fft::irdft2(half, n);
  for (int i = 0; i < n * n; ++i) EXPECT_NEAR(back[i] / (n * n), v[i], 1e-13);
}
