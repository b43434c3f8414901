#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/smoothing.hpp"

namespace speclab {

inline constexpr int kDefaultOversample = 16;

/// L2 norm via Parseval: sqrt(2 pi sum |c_k|^2).
inline double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(kTwoPi * s);
}

/// ||w||^2_{L2_sigma} = integral of (S w) w = 2 pi sum sigma_k |c_k|^2.
inline double weighted_l2_squared(const SpectralField& f, const SmoothingProfile& prof) {
  require(f.degree() == prof.degree, "weighted_l2: degree mismatch");
  double s = 0.0;
  for (int k = -f.degree(); k <= f.degree(); ++k) s += prof[k] * std::norm(f[k]);
  return kTwoPi * s;
}

inline double weighted_l2(const SpectralField& f, const SmoothingProfile& prof) {
  return std::sqrt(weighted_l2_squared(f, prof));
}

/// Full Sobolev norm with (1 + k^2)^s weights.
inline double hs_norm(const SpectralField& f, double s) {
  double sum = 0.0;
  for (int k = -f.degree(); k <= f.degree(); ++k)
    sum += std::pow(1.0 + static_cast<double>(k) * k, s) * std::norm(f[k]);
  return std::sqrt(kTwoPi * sum);
}

/// Periodic total variation of samples: sum of |successive differences|, wrap included.
inline double total_variation(const std::vector<double>& v) {
  double tv = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) tv += std::abs(v[(i + 1) % v.size()] - v[i]);
  return tv;
}

/// Samples on the oversample * (2N+1) grid used for sup, L6 and TV estimates.
inline std::vector<double> oversampled(const SpectralField& f, int oversample) {
  require(oversample >= 1, "oversampled: factor must be positive");
  return sample_on_grid(f, oversample * (2 * f.degree() + 1));
}

inline double total_variation(const SpectralField& f, int oversample = kDefaultOversample) {
  return total_variation(oversampled(f, oversample));
}

struct NormReport {
  double l2 = 0.0;
  std::optional<double> weighted_l2;
  double linf = 0.0;
  double l6 = 0.0;
  double tv = 0.0;
  std::map<double, double> hs;
};

inline NormReport norms(const SpectralField& f, const SmoothingProfile* profile = nullptr,
                        const std::vector<double>& sobolev_orders = {},
                        int oversample = kDefaultOversample) {
  NormReport r;
  r.l2 = l2_norm(f);
  if (profile != nullptr) r.weighted_l2 = weighted_l2(f, *profile);
  const auto v = oversampled(f, oversample);
  double sum6 = 0.0;
  for (double x : v) {
    r.linf = std::max(r.linf, std::abs(x));
    sum6 += std::pow(x, 6);
  }
  r.l6 = std::pow(kTwoPi / v.size() * sum6, 1.0 / 6.0);
  r.tv = total_variation(v);
  for (double s : sobolev_orders) r.hs[s] = hs_norm(f, s);
  return r;
}

/// Least-squares fit of log(error) = c - p log(N).
struct RateFit {
  std::vector<std::pair<double, double>> pairs;  // (N, error) actually used
  double slope = 0.0;                            // p in error ~ N^{-p}
  double residual = 0.0;                         // RMS of the log-log residuals
  std::vector<std::string> warnings;
};

inline RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  RateFit fit;
  for (const auto& [n, e] : pairs) {
    if (e > 0.0 && n > 0.0)
      fit.pairs.emplace_back(n, e);
    else
      fit.warnings.push_back("dropped nonpositive point at N=" + std::to_string(n));
  }
  require(fit.pairs.size() >= 3, "fit_rate: need at least three positive points");
  const double m = static_cast<double>(fit.pairs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, e] : fit.pairs) {
    const double x = std::log(n), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double a = (sy - b * sx) / m;
  fit.slope = -b;
  double ss = 0.0;
  for (const auto& [n, e] : fit.pairs) {
    const double r = std::log(e) - (a + b * std::log(n));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

}  // namespace speclab
