#pragma once

// Inviscid Burgers u_t + (u^2/2)_x = 0 on the 2 pi torus: spectral, 2/3
// de-aliased and spectral-viscosity tendencies, the smooth-regime exact
// solution, a Godunov entropy-solution oracle and the post-shock diagnostics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "speclab/diagnostics.hpp"
#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/smoothing.hpp"

namespace speclab::burgers {

enum class Variant { spectral, two_thirds, sv };

/// Closed-form initial data with its derivative.
struct InitialData {
  std::function<double(double)> u0;
  std::function<double(double)> du0;

  static InitialData sine(double amplitude) {
    return {[amplitude](double x) { return amplitude * std::sin(x); },
            [amplitude](double x) { return amplitude * std::cos(x); }};
  }

  /// S_N u0 from quadrature on a grid fine enough for smooth data.
  SpectralField project(int n) const { return coefficients_of(u0, n, std::max(4 * n, 256)); }
};

/// -(1/2) d/dx S_N[u_N^2] with the square formed exactly (degree 2N) before truncation.
inline SpectralField rhs_spectral(const SpectralField& u) {
  const SpectralField square = project(multiply_exact(u, u), u.degree());
  return -0.5 * differentiate(square);
}

/// -(1/2) d/dx I_N[(S_R u_N)^2] on the 2N+1 grid.
inline SpectralField rhs_two_thirds(const SpectralField& u, const SmoothingProfile& prof) {
  require(prof.kind == ProfileKind::two_thirds,
          "burgers::rhs_two_thirds: profile must be of kind two_thirds");
  const SpectralField um = apply_profile(u, prof);
  return -0.5 * differentiate(multiply_collocated(um, um));
}

/// -(1/2) d/dx I_N[u_N^2] - N sum_k sigma_k u_k e^{ikx}.
inline SpectralField rhs_sv(const SpectralField& u, const SmoothingProfile& svprof) {
  require(svprof.kind == ProfileKind::sv, "burgers::rhs_sv: profile must be of kind sv");
  require(svprof.degree == u.degree(), "burgers::rhs_sv: degree mismatch");
  SpectralField out = -0.5 * differentiate(multiply_collocated(u, u));
  const double n = u.degree();
  for (int k = -u.degree(); k <= u.degree(); ++k) out[k] -= n * svprof[k] * u[k];
  return out;
}

/// The SV modal dissipation rate: -N * 2 pi * sum sigma_k |u_k|^2 (always <= 0).
inline double sv_dissipation(const SpectralField& u, const SmoothingProfile& svprof) {
  return -static_cast<double>(u.degree()) * weighted_l2_squared(u, svprof);
}

/// First characteristic crossing -1 / min u0', from a scan of `samples` points.
/// Infinity when u0' never goes negative.
inline double critical_time(const std::function<double(double)>& du0, int samples = 100000) {
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) mn = std::min(mn, du0(kTwoPi * i / samples));
  return mn < 0.0 ? -1.0 / mn : std::numeric_limits<double>::infinity();
}

/// Solves u = u0(x - u t) pointwise for t < T_c: Newton, with bisection on the
/// bracket [min u0, max u0] whenever a Newton iterate leaves it.
inline std::vector<double> exact_smooth_solution(const InitialData& data, double t,
                                                 const std::vector<double>& xs) {
  const double tc = critical_time(data.du0);
  require(t < tc, "exact_smooth_solution: t is past the critical time");
  double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0;
  for (int i = 0; i < 100000; ++i) {
    const double v = data.u0(kTwoPi * i / 100000);
    lo0 = std::min(lo0, v);
    hi0 = std::max(hi0, v);
  }
  const double pad = 1e-9 * std::max(1.0, hi0 - lo0);
  lo0 -= pad;
  hi0 += pad;
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    auto g = [&](double u) { return u - data.u0(x - u * t); };
    double lo = lo0, hi = hi0;
    double u = data.u0(x);
    bool done = false;
    for (int it = 0; it < 100 && !done; ++it) {
      const double r = g(u);
      if (std::abs(r) <= 1e-14) {
        done = true;
        break;
      }
      // g is increasing for t < T_c, so the sign of r tightens the bracket.
      (r > 0.0 ? hi : lo) = u;
      const double dg = 1.0 + t * data.du0(x - u * t);
      double next = u - r / dg;
      if (!(next > lo && next < hi) || dg <= 0.0) next = 0.5 * (lo + hi);
      if (std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) {
        u = next;
        done = std::abs(g(u)) <= 1e-12;
        break;
      }
      u = next;
    }
    if (!done && std::abs(g(u)) > 1e-12) {
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
      }
      u = 0.5 * (lo + hi);
    }
    if (std::abs(g(u)) > 1e-12)
      throw InvalidArgument("exact_smooth_solution: root solve failed");
    out[i] = u;
  }
  return out;
}

/// Cell averages of the entropy solution from first-order Godunov.
struct EntropyReference {
  int cells = 0;
  double time = 0.0;
  std::vector<double> values;

  double dx() const { return kTwoPi / cells; }
  double center(int i) const { return (i + 0.5) * dx(); }
};

/// Exact Riemann flux for f(u) = u^2 / 2.
inline double godunov_flux(double ul, double ur) {
  if (ul > ur) {  // shock
    return (ul + ur > 0.0) ? 0.5 * ul * ul : 0.5 * ur * ur;
  }
  if (ul > 0.0) return 0.5 * ul * ul;  // rarefaction moving right
  if (ur < 0.0) return 0.5 * ur * ur;  // moving left
  return 0.0;                          // transonic
}

inline EntropyReference godunov_reference(const std::function<double(double)>& u0, double t,
                                          int cells, double cfl = 0.45) {
  require(cells >= 128, "godunov_reference: need at least 128 cells");
  EntropyReference ref{cells, t, std::vector<double>(static_cast<std::size_t>(cells))};
  const double dx = ref.dx();
  // Three-point Gauss cell averages.
  const double g = std::sqrt(0.6) * 0.5 * dx;
  for (int i = 0; i < cells; ++i) {
    const double c = ref.center(i);
    ref.values[i] = (5.0 * u0(c - g) + 8.0 * u0(c) + 5.0 * u0(c + g)) / 18.0;
  }
  std::vector<double> flux(static_cast<std::size_t>(cells));
  double now = 0.0;
  while (t - now > 1e-14) {
    double vmax = 0.0;
    for (double v : ref.values) vmax = std::max(vmax, std::abs(v));
    double dt = cfl * dx / std::max(vmax, 1e-12);
    if (now + dt > t) dt = t - now;
    for (int i = 0; i < cells; ++i)  // flux at the right face of cell i
      flux[i] = godunov_flux(ref.values[i], ref.values[(i + 1) % cells]);
    const double lambda = dt / dx;
    for (int i = 0; i < cells; ++i)
      ref.values[i] -= lambda * (flux[i] - flux[(i + cells - 1) % cells]);
    now += dt;
  }
  return ref;
}

/// Samples of `f` at x_j + shift, x_j = 2 pi j / points.
inline std::vector<double> sample_shifted(const SpectralField& f, int points, double shift) {
  SpectralField g = f;
  for (int k = -f.degree(); k <= f.degree(); ++k) g[k] *= std::polar(1.0, k * shift);
  return sample_on_grid(g, points);
}

/// Discrete L2 distance between a spectral solution and cell-centered data.
inline double l2_distance(const SpectralField& f, const EntropyReference& ref) {
  const auto v = sample_shifted(f, ref.cells, 0.5 * ref.dx());
  double s = 0.0;
  for (int i = 0; i < ref.cells; ++i) s += std::pow(v[i] - ref.values[i], 2);
  return std::sqrt(s * ref.dx());
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  require(a.size() == b.size(), "l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * dx;
}

/// max|u_m|, TV(u_m), their product max * TV^2, and product / sqrt(m), m = 2N/3.
struct InstabilityReport {
  double maxabs = 0.0;
  double tv = 0.0;
  double product = 0.0;
  double product_over_sqrt_m = 0.0;
};

inline InstabilityReport instability_functional(const SpectralField& um, int oversample = 16) {
  require(oversample >= 8, "instability_functional: oversample must be at least 8");
  const auto v = oversampled(um, oversample);
  InstabilityReport r;
  for (double x : v) r.maxabs = std::max(r.maxabs, std::abs(x));
  r.tv = total_variation(v);
  r.product = r.maxabs * r.tv * r.tv;
  const double m = 2.0 * um.degree() / 3.0;
  r.product_over_sqrt_m = r.product / std::sqrt(m);
  return r;
}

/// (1/2) integral of u_m d/dx (Id - S_R)[u_m^2]: the rate of change of
/// (1/2)||u_m||^2 under the 2/3 method.
inline double energy_production(const SpectralField& um, const SmoothingProfile& prof) {
  require(um.degree() == prof.degree, "energy_production: degree mismatch");
  const SpectralField square = multiply_exact(um, um);
  double sum = 0.0;
  for (int k = -um.degree(); k <= um.degree(); ++k) {
    const Complex residual = (1.0 - prof[k]) * square[k];
    sum += (std::conj(um[k]) * Complex(0.0, k) * residual).real();
  }
  return 0.5 * kTwoPi * sum;
}

/// L2 error of `f` against point values of `exact` on an oversampled grid.
inline double l2_error(const SpectralField& f, const std::function<std::vector<double>(
                                                   const std::vector<double>&)>& exact,
                       int oversample = 4) {
  const int points = oversample * (2 * f.degree() + 1) + 1;
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) xs[j] = kTwoPi * j / points;
  const auto v = sample_on_grid(f, points);
  const auto e = exact(xs);
  double s = 0.0;
  for (int j = 0; j < points; ++j) s += std::pow(v[j] - e[j], 2);
  return std::sqrt(s * kTwoPi / points);
}

}  // namespace speclab::burgers
