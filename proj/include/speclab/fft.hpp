#pragma once

// Thin FFTW backend for the odd-sized periodic grids used throughout.
// Plans are created once per (rank, size, direction) under a mutex; execution
// goes through the new-array interface, which FFTW documents as thread safe.

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "speclab/error.hpp"

namespace speclab::fft {

using Complex = std::complex<double>;

enum class Direction { forward, backward };

namespace detail {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  /// rank 1 and 2 are complex transforms; rank -2 is the real 2D pair
  /// (forward r2c, backward c2r).
  fftw_plan get(int rank, int n, Direction dir) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rank, n, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = rank == 1 ? n : static_cast<std::size_t>(n) * n;
    std::vector<Complex> in(total), out(total);
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    if (rank == 1) {
      plan = fftw_plan_dft_1d(n, pin, pout, sign, flags);
    } else if (rank == 2) {
      plan = fftw_plan_dft_2d(n, n, pin, pout, sign, flags);
    } else {
      std::vector<double> real(total);
      plan = dir == Direction::forward
                 ? fftw_plan_dft_r2c_2d(n, n, real.data(), pout, flags)
                 : fftw_plan_dft_c2r_2d(n, n, pin, real.data(), flags);
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, Direction>, fftw_plan> plans_;
};

inline PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

inline void execute(int rank, int n, std::span<const Complex> in,
                    std::span<Complex> out, Direction dir) {
  fftw_plan plan = cache().get(rank, n, dir);
  // FFTW's signature is not const-correct; out-of-place plans never write `in`.
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  fftw_execute_dft(plan, pin, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace detail

/// Unnormalized 1D DFT: forward uses e^{-2 pi i j nu / n}, backward e^{+...}.
inline std::vector<Complex> dft(std::span<const Complex> in, Direction dir) {
  const int n = static_cast<int>(in.size());
  require(n > 0, "dft: empty input");
  std::vector<Complex> out(in.size());
  detail::execute(1, n, in, out, dir);
  return out;
}

/// Unnormalized 2D DFT of a row-major n x n array.
inline std::vector<Complex> dft2(std::span<const Complex> in, int n, Direction dir) {
  require(n > 0 && in.size() == static_cast<std::size_t>(n) * n, "dft2: size mismatch");
  std::vector<Complex> out(in.size());
  detail::execute(2, n, in, out, dir);
  return out;
}

/// Forward 2D DFT of a real row-major n x n array, returning the n x (n/2 + 1)
/// half spectrum (second index k2 = 0..n/2).
inline std::vector<Complex> rdft2(std::span<const double> in, int n) {
  require(n > 0 && in.size() == static_cast<std::size_t>(n) * n, "rdft2: size mismatch");
  std::vector<Complex> out(static_cast<std::size_t>(n) * (n / 2 + 1));
  fftw_plan plan = detail::cache().get(-2, n, Direction::forward);
  fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

/// Unnormalized inverse of rdft2 (Hermitian half spectrum in, real n x n out).
/// Takes the spectrum by value because FFTW overwrites it.
inline std::vector<double> irdft2(std::vector<Complex> half, int n) {
  require(n > 0 && half.size() == static_cast<std::size_t>(n) * (n / 2 + 1),
          "irdft2: size mismatch");
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  fftw_plan plan = detail::cache().get(-2, n, Direction::backward);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(half.data()), out.data());
  return out;
}

}  // namespace speclab::fft
