#pragma once

// 2D incompressible Euler on the periodic square [0, 2pi)^2 in velocity form,
// u_t + Lr div(u (x) u) = 0, with the pressure eliminated by the modal Leray
// projector. Coefficients are indexed k = (k1, k2), |k1|, |k2| <= N.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fft.hpp"
#include "speclab/fourier.hpp"
#include "speclab/smoothing.hpp"

namespace speclab::euler2d {

/// Scalar coefficients c(k1, k2) of a real trigonometric polynomial in two variables.
class SpectralField2D {
 public:
  SpectralField2D() = default;
  explicit SpectralField2D(int degree)
      : degree_(degree), coeffs_(static_cast<std::size_t>(2 * degree + 1) * (2 * degree + 1)) {
    require(degree >= 0, "SpectralField2D: negative degree");
  }

  int degree() const noexcept { return degree_; }
  int width() const noexcept { return 2 * degree_ + 1; }

  Complex& operator()(int k1, int k2) { return coeffs_[index(k1, k2)]; }
  const Complex& operator()(int k1, int k2) const { return coeffs_[index(k1, k2)]; }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }
  bool all_finite() const {
    for (const auto& c : coeffs_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }
  bool is_hermitian(double rel_tol = 1e-12) const {
    const double scale = std::max(max_abs(), 1e-300);
    for (int k1 = -degree_; k1 <= degree_; ++k1)
      for (int k2 = -degree_; k2 <= degree_; ++k2)
        if (std::abs((*this)(-k1, -k2) - std::conj((*this)(k1, k2))) > rel_tol * scale)
          return false;
    return true;
  }

  SpectralField2D& operator+=(const SpectralField2D& o) {
    require(o.degree_ == degree_, "SpectralField2D: degree mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  SpectralField2D& operator-=(const SpectralField2D& o) {
    require(o.degree_ == degree_, "SpectralField2D: degree mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  SpectralField2D& operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

 private:
  std::size_t index(int k1, int k2) const {
    return static_cast<std::size_t>(k1 + degree_) * (2 * degree_ + 1) +
           static_cast<std::size_t>(k2 + degree_);
  }

  int degree_ = 0;
  std::vector<Complex> coeffs_ = std::vector<Complex>(1);
};

struct VelocityField2D {
  SpectralField2D u1, u2;

  VelocityField2D() = default;
  explicit VelocityField2D(int degree) : u1(degree), u2(degree) {}
  VelocityField2D(SpectralField2D a, SpectralField2D b) : u1(std::move(a)), u2(std::move(b)) {
    require(u1.degree() == u2.degree(), "VelocityField2D: component degree mismatch");
  }

  int degree() const { return u1.degree(); }
  bool all_finite() const { return u1.all_finite() && u2.all_finite(); }
  VelocityField2D& operator+=(const VelocityField2D& o) {
    u1 += o.u1;
    u2 += o.u2;
    return *this;
  }
  VelocityField2D& operator-=(const VelocityField2D& o) {
    u1 -= o.u1;
    u2 -= o.u2;
    return *this;
  }
  VelocityField2D& operator*=(double s) {
    u1 *= s;
    u2 *= s;
    return *this;
  }
  friend VelocityField2D operator-(VelocityField2D a, const VelocityField2D& b) { return a -= b; }
};

/// Radial multiplier sigma(|k|_2 / N) on the (2N+1)^2 coefficient square.
struct RadialProfile {
  int degree = 0;
  std::vector<double> factors = std::vector<double>(1, 1.0);
  ProfileKind kind = ProfileKind::identity;

  double operator()(int k1, int k2) const {
    return factors[static_cast<std::size_t>(k1 + degree) * (2 * degree + 1) +
                   static_cast<std::size_t>(k2 + degree)];
  }
  double& operator()(int k1, int k2) {
    return factors[static_cast<std::size_t>(k1 + degree) * (2 * degree + 1) +
                   static_cast<std::size_t>(k2 + degree)];
  }
};

/// Same C-infinity mollifier as in 1D, applied to the Euclidean |k|.
inline RadialProfile build_radial_mollifier(int n) {
  require(n >= 3, "build_radial_mollifier: N must be at least 3");
  RadialProfile p{n, std::vector<double>(static_cast<std::size_t>(2 * n + 1) * (2 * n + 1)),
                  ProfileKind::two_thirds};
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      const long k2sum = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2;
      const long nn = static_cast<long>(n) * n;
      if (9 * k2sum <= nn)
        p(k1, k2) = 1.0;
      else if (9 * k2sum >= 4 * nn)
        p(k1, k2) = 0.0;
      else
        p(k1, k2) = mollifier(std::sqrt(static_cast<double>(k2sum)) / n);
    }
  return p;
}

/// ((|k|/N)^{2r} - 1/N)_+ with the Euclidean |k|.
inline RadialProfile build_radial_sv(int n, int r) {
  require(n >= 2 && r >= 1, "build_radial_sv: need N >= 2 and r >= 1");
  RadialProfile p{n, std::vector<double>(static_cast<std::size_t>(2 * n + 1) * (2 * n + 1)),
                  ProfileKind::sv};
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      const double xi = std::hypot(k1, k2) / n;
      p(k1, k2) = std::max(std::pow(xi, 2 * r) - 1.0 / n, 0.0);
    }
  return p;
}

inline SpectralField2D apply_profile(SpectralField2D f, const RadialProfile& p) {
  require(f.degree() == p.degree, "apply_profile: degree mismatch");
  for (int k1 = -p.degree; k1 <= p.degree; ++k1)
    for (int k2 = -p.degree; k2 <= p.degree; ++k2) f(k1, k2) *= p(k1, k2);
  return f;
}

inline VelocityField2D apply_profile(const VelocityField2D& v, const RadialProfile& p) {
  return {apply_profile(v.u1, p), apply_profile(v.u2, p)};
}

namespace detail {

/// Values on an n x n grid (row index along x1), n >= 2N+1. Assumes Hermitian
/// coefficients: only the k2 >= 0 half enters the real inverse transform.
inline std::vector<double> evaluate(const SpectralField2D& f, int n) {
  const int deg = f.degree();
  require(n >= 2 * deg + 1, "euler2d::evaluate: grid too coarse");
  const int h = n / 2 + 1;
  std::vector<Complex> half(static_cast<std::size_t>(n) * h);
  for (int k1 = -deg; k1 <= deg; ++k1)
    for (int k2 = 0; k2 <= deg; ++k2)
      half[static_cast<std::size_t>(speclab::detail::wrap(k1, n)) * h + k2] = f(k1, k2);
  return fft::irdft2(std::move(half), n);
}

inline SpectralField2D analyze(const std::vector<double>& values, int n, int degree_out) {
  require(2 * degree_out + 1 <= n, "euler2d::analyze: degree exceeds grid resolution");
  const int h = n / 2 + 1;
  const auto half = fft::rdft2(values, n);
  SpectralField2D f(degree_out);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int k1 = -degree_out; k1 <= degree_out; ++k1)
    for (int k2 = 0; k2 <= degree_out; ++k2) {
      const Complex c =
          half[static_cast<std::size_t>(speclab::detail::wrap(k1, n)) * h + k2] * scale;
      f(k1, k2) = c;
      f(-k1, -k2) = std::conj(c);
    }
  f(0, 0) = Complex(f(0, 0).real(), 0.0);
  return f;
}

/// Smallest n >= m whose prime factors are all <= 7 (fast FFT sizes).
inline int smooth_size(int m) {
  for (int n = std::max(m, 1);; ++n) {
    int r = n;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

/// Grid for the exact quadratic product: at least 2x padding (n >= 4N+1).
inline int padded_size(int degree) { return smooth_size(4 * degree + 1); }

/// div(u (x) u) with the three products formed on an n x n grid and the result
/// kept to degree N. n = 4N+1 gives the exact truncated product; n = 2N+1 aliases.
inline VelocityField2D divergence_of_product(const VelocityField2D& u, int n) {
  const int deg = u.degree();
  const auto a = evaluate(u.u1, n);
  const auto b = evaluate(u.u2, n);
  std::vector<double> p11(a.size()), p12(a.size()), p22(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    p11[i] = a[i] * a[i];
    p12[i] = a[i] * b[i];
    p22[i] = b[i] * b[i];
  }
  const auto c11 = analyze(p11, n, deg);
  const auto c12 = analyze(p12, n, deg);
  const auto c22 = analyze(p22, n, deg);
  VelocityField2D out(deg);
  for (int k1 = -deg; k1 <= deg; ++k1)
    for (int k2 = -deg; k2 <= deg; ++k2) {
      out.u1(k1, k2) = Complex(0.0, k1) * c11(k1, k2) + Complex(0.0, k2) * c12(k1, k2);
      out.u2(k1, k2) = Complex(0.0, k1) * c12(k1, k2) + Complex(0.0, k2) * c22(k1, k2);
    }
  return out;
}

}  // namespace detail

/// Nodal samples on the (2N+1)^2 grid.
inline std::vector<double> synthesize(const SpectralField2D& f) {
  require(f.is_hermitian(), "euler2d::synthesize: coefficients are not Hermitian");
  return detail::evaluate(f, f.width());
}

/// u(k) <- (Id - k k^T / |k|^2) u(k); the mean mode is left untouched.
inline VelocityField2D leray_project(VelocityField2D v) {
  const int n = v.degree();
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const Complex dot = static_cast<double>(k1) * v.u1(k1, k2) + static_cast<double>(k2) * v.u2(k1, k2);
      v.u1(k1, k2) -= static_cast<double>(k1) * dot / kk;
      v.u2(k1, k2) -= static_cast<double>(k2) * dot / kk;
    }
  return v;
}

/// i k . u(k).
inline SpectralField2D divergence(const VelocityField2D& v) {
  const int n = v.degree();
  SpectralField2D d(n);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2)
      d(k1, k2) = Complex(0.0, k1) * v.u1(k1, k2) + Complex(0.0, k2) * v.u2(k1, k2);
  return d;
}

/// i (k1 u2 - k2 u1).
inline SpectralField2D vorticity(const VelocityField2D& v) {
  const int n = v.degree();
  SpectralField2D w(n);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2)
      w(k1, k2) = Complex(0.0, k1) * v.u2(k1, k2) - Complex(0.0, k2) * v.u1(k1, k2);
  return w;
}

inline VelocityField2D gradient(const SpectralField2D& phi) {
  const int n = phi.degree();
  VelocityField2D g(n);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      g.u1(k1, k2) = Complex(0.0, k1) * phi(k1, k2);
      g.u2(k1, k2) = Complex(0.0, k2) * phi(k1, k2);
    }
  return g;
}

/// Integral of u . v over the square: (2 pi)^2 sum Re conj(u) v.
inline double inner(const VelocityField2D& a, const VelocityField2D& b) {
  require(a.degree() == b.degree(), "euler2d::inner: degree mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.u1.coeffs().size(); ++i)
    s += (std::conj(a.u1.coeffs()[i]) * b.u1.coeffs()[i]).real() +
         (std::conj(a.u2.coeffs()[i]) * b.u2.coeffs()[i]).real();
  return kTwoPi * kTwoPi * s;
}

inline double inner(const SpectralField2D& a, const SpectralField2D& b) {
  require(a.degree() == b.degree(), "euler2d::inner: degree mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    s += (std::conj(a.coeffs()[i]) * b.coeffs()[i]).real();
  return kTwoPi * kTwoPi * s;
}

/// (1/2) integral |u|^2.
inline double energy(const VelocityField2D& u) { return 0.5 * inner(u, u); }

/// (1/2) (2 pi)^2 sum sigma_k |u_k|^2.
inline double weighted_energy(const VelocityField2D& u, const RadialProfile& p) {
  return 0.5 * inner(apply_profile(u, p), u);
}

/// (1/2) integral omega^2.
inline double enstrophy(const VelocityField2D& u) {
  const auto w = vorticity(u);
  return 0.5 * inner(w, w);
}

inline double max_divergence(const VelocityField2D& u) { return divergence(u).max_abs(); }

/// max |u| over an oversampled grid, for the time-step speed estimate.
inline double max_speed(const VelocityField2D& u, int oversample = 2) {
  const int n = oversample * (2 * u.degree() + 1);
  const auto a = detail::evaluate(u.u1, n), b = detail::evaluate(u.u2, n);
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v = std::max(v, std::hypot(a[i], b[i]));
  return v;
}

/// -Lr div S_N(u (x) u), product formed exactly on a grid padded at least 2x
/// (n >= 4N+1) in each direction.
inline VelocityField2D rhs_spectral(const VelocityField2D& u) {
  auto nl = detail::divergence_of_product(u, detail::padded_size(u.degree()));
  nl *= -1.0;
  return leray_project(std::move(nl));
}

/// -Lr div I_N(S_R u (x) S_R u) on the unpadded (2N+1)^2 grid.
inline VelocityField2D rhs_two_thirds(const VelocityField2D& u, const RadialProfile& prof) {
  require(prof.kind == ProfileKind::two_thirds,
          "euler2d::rhs_two_thirds: profile must be of kind two_thirds");
  auto nl = detail::divergence_of_product(apply_profile(u, prof), 2 * u.degree() + 1);
  nl *= -1.0;
  return leray_project(std::move(nl));
}

/// Adds the spectral viscosity term -N sigma_SV(|k|/N) u_k to a tendency.
inline VelocityField2D add_sv_filter(VelocityField2D tendency, const VelocityField2D& u,
                                     const RadialProfile& sv) {
  require(sv.kind == ProfileKind::sv, "add_sv_filter: profile must be of kind sv");
  const int n = u.degree();
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2) {
      tendency.u1(k1, k2) -= static_cast<double>(n) * sv(k1, k2) * u.u1(k1, k2);
      tendency.u2(k1, k2) -= static_cast<double>(n) * sv(k1, k2) * u.u2(k1, k2);
    }
  return tendency;
}

namespace detail {

/// Nodal values on an n x n grid of u_a, d_a u_b, w_b = ((I - S_R) u)_b and d_a w_b.
struct CubicSamples {
  std::vector<double> u[2], w[2], du[2][2], dw[2][2];  // du[a][b] = d_a u_b
};

inline CubicSamples cubic_samples(const VelocityField2D& um, const RadialProfile& prof, int n) {
  VelocityField2D rest = um;
  rest -= apply_profile(um, prof);
  CubicSamples c;
  const SpectralField2D* uc[2] = {&um.u1, &um.u2};
  const SpectralField2D* wc[2] = {&rest.u1, &rest.u2};
  for (int b = 0; b < 2; ++b) {
    c.u[b] = evaluate(*uc[b], n);
    c.w[b] = evaluate(*wc[b], n);
    const auto gu = gradient(*uc[b]);
    const auto gw = gradient(*wc[b]);
    c.du[0][b] = evaluate(gu.u1, n);
    c.du[1][b] = evaluate(gu.u2, n);
    c.dw[0][b] = evaluate(gw.u1, n);
    c.dw[1][b] = evaluate(gw.u2, n);
  }
  return c;
}

}  // namespace detail

/// The cubic term sum_{a,b} integral ((I - S_R) d_a u_b) u_a u_b. The integrand has
/// degree 3N and is integrated exactly on a grid with n >= 4N+1.
inline double cancellation_integral(const VelocityField2D& um, const RadialProfile& prof) {
  require(um.degree() == prof.degree, "cancellation_integral: degree mismatch");
  const int n = detail::padded_size(um.degree());
  const auto c = detail::cubic_samples(um, prof, n);
  double s = 0.0;
  for (std::size_t i = 0; i < c.u[0].size(); ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) s += c.dw[a][b][i] * c.u[a][i] * c.u[b][i];
  return s * kTwoPi * kTwoPi / (static_cast<double>(n) * n);
}

/// (1/2) sum_{a,b} integral u_a d_a (u_b w_b), w = (I - S_R) u. This is u paired
/// with a gradient, so it vanishes whenever div u = 0.
inline double symmetric_cancellation_integral(const VelocityField2D& um,
                                              const RadialProfile& prof) {
  require(um.degree() == prof.degree, "symmetric_cancellation_integral: degree mismatch");
  const int n = detail::padded_size(um.degree());
  const auto c = detail::cubic_samples(um, prof, n);
  double s = 0.0;
  for (std::size_t i = 0; i < c.u[0].size(); ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        s += c.u[a][i] * (c.du[a][b][i] * c.w[b][i] + c.u[b][i] * c.dw[a][b][i]);
  return 0.5 * s * kTwoPi * kTwoPi / (static_cast<double>(n) * n);
}

/// u = (sin x1 cos x2, -cos x1 sin x2): a stationary solution.
inline VelocityField2D taylor_green(int n) {
  require(n >= 1, "taylor_green: N must be at least 1");
  VelocityField2D v(n);
  // sin x1 cos x2 = sum over (+-1, +-1) of -i/4 * sign(k1) e^{i k.x}
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      v.u1(s1, s2) = Complex(0.0, -0.25 * s1);
      v.u2(s1, s2) = Complex(0.0, 0.25 * s2);
    }
  return v;
}

/// Double shear layer u1 = tanh profile in x2 (projected to at most 64 modes),
/// u2 = delta sin x1. Used as initial data only.
inline VelocityField2D shear_layer_smooth(int n, double rho = 4.0, double delta = 0.05) {
  require(n >= 1, "shear_layer_smooth: N must be at least 1");
  const int m = std::min(n, 64);
  auto profile = [rho](double y) {
    return y <= std::numbers::pi ? std::tanh(rho * (y - std::numbers::pi / 2))
                                 : std::tanh(rho * (3 * std::numbers::pi / 2 - y));
  };
  const SpectralField line = coefficients_of(profile, m, 16 * m);
  VelocityField2D v(n);
  for (int k = -m; k <= m; ++k) v.u1(0, k) = line[k];
  v.u2(1, 0) = Complex(0.0, -0.5 * delta);
  v.u2(-1, 0) = Complex(0.0, 0.5 * delta);
  return v;
}

/// Seeded random divergence-free field: |u(k)| ~ (1 + |k|)^-2, uniform phases,
/// zero mean, Leray projected. `max_wavenumber` < 0 means the full square.
inline VelocityField2D random_divergence_free(int n, std::uint64_t seed,
                                              int max_wavenumber = -1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  VelocityField2D v(n);
  const int kmax = max_wavenumber < 0 ? n : std::min(n, max_wavenumber);
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double amp = std::pow(1.0 + std::hypot(k1, k2), -2.0);
      for (auto* comp : {&v.u1, &v.u2}) {
        const Complex c = std::polar(amp * scale(rng), phase(rng));
        (*comp)(k1, k2) = c;
        (*comp)(-k1, -k2) = std::conj(c);
      }
    }
  return leray_project(std::move(v));
}

}  // namespace speclab::euler2d
