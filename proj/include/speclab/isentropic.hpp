#pragma once

// Lagrangian isentropic system u_t + q(v)_x = 0, v_t + u_x = 0 (q' > 0) with
// the spectral scheme d/dt u_N = -d/dx S_N q(v_N), d/dt v_N = -d/dx u_N.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "speclab/diagnostics.hpp"
#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

namespace speclab::isentropic {

/// q with q' > 0, its antiderivative Q (the potential part of the entropy) and
/// the admissible range of v.
struct PressureLaw {
  std::string name;
  std::function<double(double)> q;
  std::function<double(double)> dq;
  std::function<double(double)> Q;
  bool requires_positive_v = false;

  bool admissible(double v) const { return std::isfinite(v) && (!requires_positive_v || v > 0.0); }

  static PressureLaw linear() {
    return {"linear", [](double v) { return v; }, [](double) { return 1.0; },
            [](double v) { return 0.5 * v * v; }, false};
  }
  static PressureLaw exponential() {
    return {"exp", [](double v) { return std::exp(v); }, [](double v) { return std::exp(v); },
            [](double v) { return std::exp(v); }, false};
  }
  /// q(v) = -v^{-gamma}: the negated gamma-law pressure, so that q' > 0 for v > 0.
  static PressureLaw gamma_law(double gamma) {
    require(gamma > 0.0, "PressureLaw::gamma_law: gamma must be positive");
    std::function<double(double)> big_q;
    if (std::abs(gamma - 1.0) < 1e-15)
      big_q = [](double v) { return -std::log(v); };
    else
      big_q = [gamma](double v) { return std::pow(v, 1.0 - gamma) / (gamma - 1.0); };
    return {"gamma", [gamma](double v) { return -std::pow(v, -gamma); },
            [gamma](double v) { return gamma * std::pow(v, -gamma - 1.0); }, std::move(big_q),
            true};
  }
};

struct IsentropicState {
  SpectralField u;  // velocity
  SpectralField v;  // specific volume

  int degree() const { return u.degree(); }
  bool all_finite() const { return u.all_finite() && v.all_finite(); }
  IsentropicState& operator+=(const IsentropicState& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  IsentropicState& operator*=(double s) {
    u *= s;
    v *= s;
    return *this;
  }
};

/// Grid used to project q(v_N): 4N+1 points.
inline int flux_grid(int n) { return 4 * n + 1; }

/// S_N q(v_N) by quadrature on the 4N+1 grid. Out-of-range v aborts the run.
inline SpectralField projected_flux(const SpectralField& v, const PressureLaw& law) {
  const int n = v.degree();
  const int pts = flux_grid(n);
  auto vals = detail::evaluate(v, pts);
  for (double& x : vals) {
    if (!law.admissible(x))
      throw NumericalBlowup(std::numeric_limits<double>::quiet_NaN(),
                            "isentropic: v left the domain of the " + law.name + " law");
    x = law.q(x);
  }
  return detail::analyze_samples(vals, n);
}

inline IsentropicState rhs_spectral(const IsentropicState& s, const PressureLaw& law) {
  require(s.u.degree() == s.v.degree(), "isentropic::rhs_spectral: degree mismatch");
  return {-1.0 * differentiate(projected_flux(s.v, law)), -1.0 * differentiate(s.u)};
}

/// Integral of (1/2) u^2 + Q(v) by the trapezoidal rule on 8N+1 points.
inline double total_entropy(const IsentropicState& s, const PressureLaw& law) {
  const int pts = 8 * std::max(s.degree(), 1) + 1;
  const auto u = detail::evaluate(s.u, pts);
  const auto v = detail::evaluate(s.v, pts);
  double sum = 0.0;
  for (int j = 0; j < pts; ++j) sum += 0.5 * u[j] * u[j] + law.Q(v[j]);
  return sum * kTwoPi / pts;
}

/// max sqrt(q'(v)) on the flux grid: the sound speed for the step size.
inline double max_sound_speed(const IsentropicState& s, const PressureLaw& law) {
  double c = 0.0;
  for (double x : detail::evaluate(s.v, flux_grid(s.degree())))
    if (law.admissible(x)) c = std::max(c, std::sqrt(law.dq(x)));
  return c;
}

/// Exact solution of the linear law (wave equation) from Riemann invariants:
/// u + v moves right and u - v moves left with unit speed.
inline std::pair<std::vector<double>, std::vector<double>> dalembert(
    const std::function<double(double)>& u0, const std::function<double(double)>& v0, double t,
    const std::vector<double>& xs) {
  std::vector<double> u(xs.size()), v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = xs[i] - t, b = xs[i] + t;
    const double wp = u0(a) + v0(a);
    const double wm = u0(b) - v0(b);
    u[i] = 0.5 * (wp + wm);
    v[i] = 0.5 * (wp - wm);
  }
  return {std::move(u), std::move(v)};
}

}  // namespace speclab::isentropic
