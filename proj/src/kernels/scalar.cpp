#include <algorithm>
#include <cmath>

#include "mbnsim/kernels.hpp"

namespace mbnsim::kernels::scalar {

void distances(const double* xs, const double* ys, std::size_t n, double ux, double uy,
               double min_distance, double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - ux;
    const double dy = ys[i] - uy;
    out[i] = std::max(std::sqrt(dx * dx + dy * dy), min_distance);
  }
}

void power_law_rx(const double* dist, const double* fading, std::size_t n, double gain,
                  double exponent, double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = gain * std::pow(dist[i], -exponent) * fading[i];
}

void absorbed_spreading_rx(const double* dist, std::size_t n, double gain, double absorption,
                           double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = dist[i];
    out[i] = gain / (d * d) * std::exp(-absorption * d);
  }
}

void exp(const double* in, std::size_t n, double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(in[i]);
}

void log(const double* in, std::size_t n, double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(in[i]);
}

}  // namespace mbnsim::kernels::scalar
