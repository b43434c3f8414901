#pragma once

// Fourier algebra on the odd (2N+1)-point periodic grid: discrete transforms,
// the spectral projection S_N, the aliasing operator A_N, differentiation and
// the products every solver needs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fft.hpp"

namespace speclab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Complex Fourier coefficients c_k, k = -N..N, of a trigonometric polynomial
/// of degree N. Storage is centered: index k lives at offset k + N.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int degree) : degree_(degree), coeffs_(2 * degree + 1) {
    require(degree >= 0, "SpectralField: negative degree");
  }
  SpectralField(int degree, std::vector<Complex> coeffs)
      : degree_(degree), coeffs_(std::move(coeffs)) {
    require(degree >= 0, "SpectralField: negative degree");
    require(coeffs_.size() == static_cast<std::size_t>(2 * degree + 1),
            "SpectralField: expected 2N+1 coefficients");
  }

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k + degree_)]; }
  const Complex& operator[](int k) const {
    return coeffs_[static_cast<std::size_t>(k + degree_)];
  }
  /// Coefficient k, or zero when |k| exceeds the degree.
  Complex at_or_zero(int k) const { return std::abs(k) <= degree_ ? (*this)[k] : Complex{}; }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// coeffs[-k] == conj(coeffs[k]) to `rel_tol` relative to the largest coefficient.
  bool is_hermitian(double rel_tol = 1e-12) const {
    const double scale = std::max(max_abs(), 1e-300);
    for (int k = 0; k <= degree_; ++k) {
      if (std::abs((*this)[-k] - std::conj((*this)[k])) > rel_tol * scale) return false;
    }
    return true;
  }

  bool all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
      return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
  }

  SpectralField& operator+=(const SpectralField& other) {
    require(other.degree_ == degree_, "SpectralField: degree mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& other) {
    require(other.degree_ == degree_, "SpectralField: degree mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  int degree_ = 0;
  std::vector<Complex> coeffs_ = std::vector<Complex>(1);
};

/// Real samples at x_nu = 2 pi nu / (2N+1), nu = 0..2N.
struct NodalField {
  int degree = 0;
  std::vector<double> values = std::vector<double>(1);

  NodalField() = default;
  NodalField(int n, std::vector<double> v) : degree(n), values(std::move(v)) {
    require(n >= 0, "NodalField: negative degree");
    require(values.size() == static_cast<std::size_t>(2 * n + 1),
            "NodalField: expected 2N+1 values");
  }

  double spacing() const { return kTwoPi / (2 * degree + 1); }
  double x(int nu) const { return kTwoPi * nu / (2 * degree + 1); }

  static NodalField sample(int n, const std::function<double(double)>& f) {
    std::vector<double> v(2 * n + 1);
    for (int nu = 0; nu <= 2 * n; ++nu) v[nu] = f(kTwoPi * nu / (2 * n + 1));
    return {n, std::move(v)};
  }
};

/// Field with the given single real cosine/sine content; handy in tests and
/// initial data. Sets c_k and its Hermitian partner.
inline void set_mode(SpectralField& f, int k, Complex c) {
  f[k] = c;
  if (k != 0) f[-k] = std::conj(c);
}

namespace detail {

inline int wrap(int k, int n) { return ((k % n) + n) % n; }

/// Samples of the trigonometric polynomial `spec` on an n-point uniform grid,
/// n >= 2N+1. Returns the real part; the caller guarantees Hermitian input.
inline std::vector<double> evaluate(const SpectralField& spec, int n) {
  const int deg = spec.degree();
  require(n >= 2 * deg + 1, "evaluate: grid too coarse for the field degree");
  std::vector<Complex> buf(n);
  for (int k = -deg; k <= deg; ++k) buf[wrap(k, n)] += spec[k];
  auto out = fft::dft(buf, fft::Direction::backward);
  std::vector<double> values(n);
  for (int j = 0; j < n; ++j) values[j] = out[j].real();
  return values;
}

/// Discrete coefficients |k| <= degree_out of n real samples.
inline SpectralField analyze_samples(std::span<const double> values, int degree_out) {
  const int n = static_cast<int>(values.size());
  require(2 * degree_out + 1 <= n, "analyze: requested degree exceeds grid resolution");
  std::vector<Complex> buf(values.begin(), values.end());
  auto out = fft::dft(buf, fft::Direction::forward);
  SpectralField spec(degree_out);
  const double scale = 1.0 / n;
  for (int k = -degree_out; k <= degree_out; ++k) spec[k] = out[wrap(k, n)] * scale;
  // Enforce exact Hermitian symmetry; the imaginary round-off of the DC mode is noise.
  spec[0] = Complex(spec[0].real(), 0.0);
  for (int k = 1; k <= degree_out; ++k) spec[-k] = std::conj(spec[k]);
  return spec;
}

}  // namespace detail

/// Discrete Fourier coefficients (h / 2 pi) sum_nu v_nu e^{-i k x_nu}.
inline SpectralField analyze(const NodalField& nodal) {
  return detail::analyze_samples(nodal.values, nodal.degree);
}

/// Grid values of sum_k c_k e^{i k x_nu}. Rejects non-Hermitian input.
inline NodalField synthesize(const SpectralField& spec) {
  require(spec.is_hermitian(), "synthesize: coefficients are not Hermitian");
  return {spec.degree(), detail::evaluate(spec, 2 * spec.degree() + 1)};
}

/// Samples of `spec` on a uniform grid with `points` nodes (any size >= 2N+1).
inline std::vector<double> sample_on_grid(const SpectralField& spec, int points) {
  require(spec.is_hermitian(), "sample_on_grid: coefficients are not Hermitian");
  return detail::evaluate(spec, points);
}

/// S_M: keeps |k| <= M.
inline SpectralField project(const SpectralField& spec, int m) {
  require(m >= 0 && m <= spec.degree(), "project: target degree exceeds field degree");
  SpectralField out(m);
  for (int k = -m; k <= m; ++k) out[k] = spec[k];
  return out;
}

/// Zero extension to degree M >= degree.
inline SpectralField pad(const SpectralField& spec, int m) {
  require(m >= spec.degree(), "pad: target degree below field degree");
  SpectralField out(m);
  for (int k = -spec.degree(); k <= spec.degree(); ++k) out[k] = spec[k];
  return out;
}

/// Coefficients of A_N[w] given exact coefficients of w up to some large degree:
/// the sum over nonzero images k + j(2N+1) that are available.
inline SpectralField aliasing_error(const SpectralField& exact, int n) {
  require(n >= 0 && exact.degree() >= n, "aliasing_error: exact degree below N");
  const int period = 2 * n + 1;
  const int big = exact.degree();
  SpectralField out(n);
  for (int k = -n; k <= n; ++k) {
    Complex sum{};
    for (int j = 1; k + j * period <= big; ++j) sum += exact[k + j * period];
    for (int j = -1; k + j * period >= -big; --j) sum += exact[k + j * period];
    out[k] = sum;
  }
  return out;
}

/// d/dx in coefficient space.
inline SpectralField differentiate(SpectralField spec) {
  for (int k = -spec.degree(); k <= spec.degree(); ++k) spec[k] *= Complex(0.0, k);
  return spec;
}

/// Integral over the period of a*b for real fields: 2 pi sum conj(a_k) b_k.
inline double inner(const SpectralField& a, const SpectralField& b) {
  const int m = std::min(a.degree(), b.degree());
  double sum = 0.0;
  for (int k = -m; k <= m; ++k) sum += (std::conj(a[k]) * b[k]).real();
  return kTwoPi * sum;
}

/// Exact product of two trigonometric polynomials (degree deg a + deg b),
/// evaluated on a grid fine enough that nothing aliases.
inline SpectralField multiply_exact(const SpectralField& a, const SpectralField& b) {
  const int deg = a.degree() + b.degree();
  const int n = 2 * deg + 1;
  auto va = detail::evaluate(a, n);
  auto vb = detail::evaluate(b, n);
  for (int j = 0; j < n; ++j) va[j] *= vb[j];
  return detail::analyze_samples(va, deg);
}

/// I_N[ab]: pointwise product on the (2N+1)-grid of degree-N fields, aliasing included.
inline SpectralField multiply_collocated(const SpectralField& a, const SpectralField& b) {
  require(a.degree() == b.degree(), "multiply_collocated: degree mismatch");
  const int n = 2 * a.degree() + 1;
  auto va = detail::evaluate(a, n);
  auto vb = detail::evaluate(b, n);
  for (int j = 0; j < n; ++j) va[j] *= vb[j];
  return detail::analyze_samples(va, a.degree());
}

/// Exact coefficients of a smooth periodic function, computed by trapezoidal
/// quadrature on a grid of degree `resolution` and truncated to `degree`.
inline SpectralField coefficients_of(const std::function<double(double)>& f, int degree,
                                     int resolution) {
  require(resolution >= degree, "coefficients_of: resolution below degree");
  auto nodal = NodalField::sample(resolution, f);
  return project(analyze(nodal), degree);
}

// CSV serialization: "k,re,im" for spectral, "x,value" for nodal fields.

inline void write_csv(std::ostream& os, const SpectralField& f) {
  char line[128];
  os << "k,re,im\n";
  for (int k = -f.degree(); k <= f.degree(); ++k) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", k, f[k].real(), f[k].imag());
    os << line;
  }
}

inline void write_csv(std::ostream& os, const NodalField& f) {
  char line[128];
  os << "x,value\n";
  for (int nu = 0; nu <= 2 * f.degree; ++nu) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", f.x(nu), f.values[nu]);
    os << line;
  }
}

inline SpectralField read_spectral_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line == "k,re,im",
          "read_spectral_csv: missing header");
  std::vector<std::pair<int, Complex>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int k;
    double re, im;
    char c1, c2;
    require(static_cast<bool>(ss >> k >> c1 >> re >> c2 >> im) && c1 == ',' && c2 == ',',
            "read_spectral_csv: malformed row '" + line + "'");
    rows.emplace_back(k, Complex(re, im));
  }
  require(!rows.empty() && rows.size() % 2 == 1, "read_spectral_csv: expected 2N+1 rows");
  const int n = static_cast<int>(rows.size() / 2);
  SpectralField f(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].first == static_cast<int>(i) - n, "read_spectral_csv: rows out of order");
    f[rows[i].first] = rows[i].second;
  }
  return f;
}

}  // namespace speclab
