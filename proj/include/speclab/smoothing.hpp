#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

namespace speclab {

enum class ProfileKind { identity, two_thirds, sv };

inline std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::identity: return "identity";
    case ProfileKind::two_thirds: return "two_thirds";
    case ProfileKind::sv: return "sv";
  }
  return "?";
}

/// Multiplier sequence sigma_k, k = -N..N.
struct SmoothingProfile {
  int degree = 0;
  std::vector<double> factors = std::vector<double>(1, 1.0);
  ProfileKind kind = ProfileKind::identity;
  int sv_order = 0;  // r, only meaningful for kind == sv

  double operator[](int k) const { return factors[static_cast<std::size_t>(k + degree)]; }
  double& operator[](int k) { return factors[static_cast<std::size_t>(k + degree)]; }

  /// Largest |k| carrying a nonzero factor.
  int support() const {
    for (int k = degree; k > 0; --k)
      if ((*this)[k] != 0.0) return k;
    return 0;
  }
};

/// Smooth transition 1 -> 0 on (1/3, 2/3): phi(1-s) / (phi(s) + phi(1-s)) with
/// phi(t) = exp(-1/t) and s = 3 xi - 1. Exactly 1 below 1/3, 0 from 2/3 on.
inline double mollifier(double xi) {
  xi = std::abs(xi);
  if (3.0 * xi <= 1.0) return 1.0;
  if (3.0 * xi >= 2.0) return 0.0;
  const auto phi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double s = 3.0 * xi - 1.0;
  const double a = phi(1.0 - s), b = phi(s);
  return a / (a + b);
}

inline SmoothingProfile build_identity(int n) {
  require(n >= 0, "build_identity: negative degree");
  return {n, std::vector<double>(2 * n + 1, 1.0), ProfileKind::identity, 0};
}

/// sigma_k = mollifier(|k| / N). Integer comparisons keep the plateau edges exact.
inline SmoothingProfile build_mollifier(int n) {
  require(n >= 3, "build_mollifier: N must be at least 3");
  SmoothingProfile p{n, std::vector<double>(2 * n + 1), ProfileKind::two_thirds, 0};
  for (int k = -n; k <= n; ++k) {
    const int a = std::abs(k);
    if (3 * a <= n)
      p[k] = 1.0;
    else if (3 * a >= 2 * n)
      p[k] = 0.0;
    else
      p[k] = mollifier(static_cast<double>(a) / n);
  }
  return p;
}

/// Classic truncation: sigma_k = 1 for 3|k| <= 2N, else 0.
inline SmoothingProfile build_sharp_two_thirds(int n) {
  require(n >= 3, "build_sharp_two_thirds: N must be at least 3");
  SmoothingProfile p{n, std::vector<double>(2 * n + 1), ProfileKind::two_thirds, 0};
  for (int k = -n; k <= n; ++k) p[k] = 3 * std::abs(k) <= 2 * n ? 1.0 : 0.0;
  return p;
}

/// Spectral viscosity factors ((|k|/N)^{2r} - 1/N)_+.
inline SmoothingProfile build_sv_profile(int n, int r) {
  require(n >= 2, "build_sv_profile: N must be at least 2");
  require(r >= 1, "build_sv_profile: order r must be at least 1");
  SmoothingProfile p{n, std::vector<double>(2 * n + 1), ProfileKind::sv, r};
  for (int k = -n; k <= n; ++k) {
    const double xi = static_cast<double>(std::abs(k)) / n;
    p[k] = std::max(std::pow(xi, 2 * r) - 1.0 / n, 0.0);
  }
  return p;
}

/// coeffs[k] <- sigma_k coeffs[k].
inline SpectralField apply_profile(SpectralField spec, const SmoothingProfile& prof) {
  require(spec.degree() == prof.degree, "apply_profile: degree mismatch");
  for (int k = -prof.degree; k <= prof.degree; ++k) spec[k] *= prof[k];
  return spec;
}

}  // namespace speclab
