#pragma once

// Semi-discretizations of u_t + (q(x) u)_x = 0: spectral (Galerkin),
// pseudo-spectral (collocation) and 2/3-smoothed pseudo-spectral, plus the
// imaginary-mode model for q = sin x and the exact solution by characteristics.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/smoothing.hpp"

namespace speclab::transport {

struct TransportProblem {
  std::function<double(double)> q;
  std::function<double(double)> dq;
  /// Exact (or high-resolution quadrature) coefficients of q.
  SpectralField q_hat;
  /// max |q'|.
  double dq_max = 0.0;

  static TransportProblem sine(int coeff_degree = 8) {
    SpectralField qh(std::max(coeff_degree, 1));
    set_mode(qh, 1, Complex(0.0, -0.5));
    return {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
            std::move(qh), 1.0};
  }

  static TransportProblem constant(double c, int coeff_degree = 8) {
    SpectralField qh(coeff_degree);
    qh[0] = c;
    return {[c](double) { return c; }, [](double) { return 0.0; }, std::move(qh), 0.0};
  }

  /// q given as a function; coefficients up to `coeff_degree` from trapezoidal
  /// quadrature on a grid of degree `resolution` (defaults to 4x).
  static TransportProblem from_function(std::function<double(double)> q,
                                        std::function<double(double)> dq, int coeff_degree,
                                        int resolution = 0) {
    if (resolution <= 0) resolution = 4 * coeff_degree;
    SpectralField qh = coefficients_of(q, coeff_degree, resolution);
    double dmax = 0.0;
    for (int i = 0; i < 100000; ++i) dmax = std::max(dmax, std::abs(dq(kTwoPi * i / 100000)));
    return {std::move(q), std::move(dq), std::move(qh), dmax};
  }
};

/// -d/dx S_N[q u_N] by exact truncated convolution sum_j q(k-j) u_j.
inline SpectralField rhs_spectral(const SpectralField& u, const TransportProblem& prob) {
  const int n = u.degree();
  require(prob.q_hat.degree() >= 2 * n, "transport::rhs_spectral: q_hat must reach degree 2N");
  SpectralField out(n);
  for (int k = -n; k <= n; ++k) {
    Complex sum{};
    for (int j = -n; j <= n; ++j) sum += prob.q_hat[k - j] * u[j];
    out[k] = Complex(0.0, -k) * sum;
  }
  return out;
}

/// -d/dx I_N[q u_N]: pointwise product on the 2N+1 grid.
inline SpectralField rhs_pseudospectral(const SpectralField& u, const TransportProblem& prob) {
  const int n = u.degree();
  const int pts = 2 * n + 1;
  auto v = detail::evaluate(u, pts);
  for (int j = 0; j < pts; ++j) v[j] *= prob.q(kTwoPi * j / pts);
  return -1.0 * differentiate(detail::analyze_samples(v, n));
}

/// -d/dx I_N[q S_R u_N].
inline SpectralField rhs_two_thirds(const SpectralField& u, const TransportProblem& prob,
                                    const SmoothingProfile& prof) {
  require(prof.kind == ProfileKind::two_thirds,
          "transport::rhs_two_thirds: profile must be of kind two_thirds");
  return rhs_pseudospectral(apply_profile(u, prof), prob);
}

/// Energy production of aliasing, integral of u_N d/dx A_N[q u_N] dx, evaluated
/// modally as 2 pi Re( i sum_{j,k} conj(u_j) u_k j Q(j-k) ) with
/// Q(p) = sum_{l != 0} q_hat(p + l(2N+1)).
inline double aliasing_functional(const SpectralField& u, const TransportProblem& prob) {
  const int n = u.degree();
  const int period = 2 * n + 1;
  const int big = prob.q_hat.degree();
  require(big >= 4 * n + 2, "aliasing_functional: q_hat must reach degree 4N+2");
  std::vector<Complex> images(4 * n + 1);  // Q(p), p = -2N..2N
  for (int p = -2 * n; p <= 2 * n; ++p) {
    Complex s{};
    for (int l = 1; p + l * period <= big; ++l) s += prob.q_hat[p + l * period];
    for (int l = -1; p + l * period >= -big; --l) s += prob.q_hat[p + l * period];
    images[p + 2 * n] = s;
  }
  Complex sum{};
  for (int j = -n; j <= n; ++j) {
    Complex inner_sum{};
    for (int k = -n; k <= n; ++k) inner_sum += u[k] * images[j - k + 2 * n];
    sum += std::conj(u[j]) * static_cast<double>(j) * inner_sum;
  }
  return kTwoPi * (Complex(0.0, 1.0) * sum).real();
}

/// Imaginary parts b_k = Im u_k, k = 1..N, of the q = sin x model.
struct ImagModeState {
  std::vector<double> b;  // b[k-1] holds b_k

  int degree() const { return static_cast<int>(b.size()); }
  double& operator[](int k) { return b[static_cast<std::size_t>(k - 1)]; }
  double operator[](int k) const { return b[static_cast<std::size_t>(k - 1)]; }

  ImagModeState& operator+=(const ImagModeState& o) {
    require(o.b.size() == b.size(), "ImagModeState: size mismatch");
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += o.b[i];
    return *this;
  }
  ImagModeState& operator*=(double s) {
    for (auto& x : b) x *= s;
    return *this;
  }
  bool all_finite() const {
    for (double x : b)
      if (!std::isfinite(x)) return false;
    return true;
  }
  double max_abs() const {
    double m = 0.0;
    for (double x : b) m = std::max(m, std::abs(x));
    return m;
  }
  double norm() const {
    double s = 0.0;
    for (double x : b) s += x * x;
    return std::sqrt(s);
  }

  /// Purely imaginary real-data field: u_k = i b_k, u_{-k} = -i b_k.
  SpectralField to_field() const {
    SpectralField f(degree());
    for (int k = 1; k <= degree(); ++k) set_mode(f, k, Complex(0.0, (*this)[k]));
    return f;
  }
  static ImagModeState from_field(const SpectralField& f) {
    ImagModeState s{std::vector<double>(static_cast<std::size_t>(f.degree()))};
    for (int k = 1; k <= f.degree(); ++k) s[k] = f[k].imag();
    return s;
  }
};

/// db_k/dt = (k/2)(b_{k-1} - b_{k+1}), b_0 = 0, closure b_{N+1} = -b_N.
/// With zero_last_mode the top mode is removed: b_N is held at 0.
inline ImagModeState rhs_sinx_imag(const ImagModeState& s, bool zero_last_mode = false) {
  const int n = s.degree();
  ImagModeState out{std::vector<double>(s.b.size())};
  auto b = [&](int k) -> double {
    if (k <= 0) return 0.0;
    if (zero_last_mode && k >= n) return 0.0;
    if (k == n + 1) return -s[n];
    return s[k];
  };
  for (int k = 1; k <= n; ++k) out[k] = 0.5 * k * (b(k - 1) - b(k + 1));
  if (zero_last_mode && n >= 1) out[n] = 0.0;
  return out;
}

/// Under-resolved data b_k(0) = x_k^3 (pi - x_k)^3 / 20, x_k = pi k / N.
inline ImagModeState under_resolved_initial(int n) {
  ImagModeState s{std::vector<double>(static_cast<std::size_t>(n))};
  for (int k = 1; k <= n; ++k) {
    const double x = std::numbers::pi * k / n;
    s[k] = std::pow(x, 3) * std::pow(std::numbers::pi - x, 3) / 20.0;
  }
  return s;
}

/// Smooth data b_k(0) = k^{-3}.
inline ImagModeState cubic_decay_initial(int n) {
  ImagModeState s{std::vector<double>(static_cast<std::size_t>(n))};
  for (int k = 1; k <= n; ++k) s[k] = 1.0 / (static_cast<double>(k) * k * k);
  return s;
}

/// Backward characteristic for dX/ds = sin X: returns (X0, dX0/dx) with
/// tan(X0/2) = e^{-t} tan(x/2).
inline std::pair<double, double> sine_backward_characteristic(double x, double t) {
  // Map to (-pi, pi] so the atan branch is continuous; x = pi is a fixed point.
  double y = std::remainder(x, kTwoPi);
  if (y == -std::numbers::pi) y = std::numbers::pi;
  if (std::abs(std::abs(y) - std::numbers::pi) < 1e-15) return {x, std::exp(t)};
  const double e = std::exp(-t);
  const double x0 = 2.0 * std::atan(e * std::tan(0.5 * y));
  const double c = std::cos(0.5 * y), s = std::sin(0.5 * y);
  const double jac = e / (c * c + e * e * s * s);
  return {x0 + (x - y), jac};
}

/// Backward characteristic by RK4 on dX/ds = -q(X), dJ/ds = -q'(X) J.
inline std::pair<double, double> backward_characteristic(const TransportProblem& prob, double x,
                                                         double t, double ds = 1e-4) {
  if (t <= 0.0) return {x, 1.0};
  const int steps = static_cast<int>(std::ceil(t / ds));
  const double h = t / steps;
  double X = x, J = 1.0;
  auto f = [&](double xx, double jj) {
    return std::pair{-prob.q(xx), -prob.dq(xx) * jj};
  };
  for (int i = 0; i < steps; ++i) {
    auto [a1, b1] = f(X, J);
    auto [a2, b2] = f(X + 0.5 * h * a1, J + 0.5 * h * b1);
    auto [a3, b3] = f(X + 0.5 * h * a2, J + 0.5 * h * b2);
    auto [a4, b4] = f(X + h * a3, J + h * b3);
    X += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
    J += h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  require(std::isfinite(X) && std::isfinite(J),
          "exact_linear_solution: characteristic integration failed");
  return {X, J};
}

/// u(x, t) = u0(X0(x, t)) dX0/dx at the given points.
inline std::vector<double> exact_linear_solution(const TransportProblem& prob,
                                                 const std::function<double(double)>& u0,
                                                 double t, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto [x0, jac] = backward_characteristic(prob, xs[i], t);
    out[i] = u0(x0) * jac;
  }
  return out;
}

inline NodalField exact_linear_solution(const TransportProblem& prob,
                                        const std::function<double(double)>& u0, double t,
                                        int n) {
  std::vector<double> xs(2 * n + 1);
  for (int nu = 0; nu <= 2 * n; ++nu) xs[nu] = kTwoPi * nu / (2 * n + 1);
  return {n, exact_linear_solution(prob, u0, t, xs)};
}

}  // namespace speclab::transport
