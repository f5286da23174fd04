#pragma once

// Batched link-budget kernels. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The active backend is
// chosen once at startup from CPU support (override with the environment
// variable MBNSIM_KERNELS=scalar|avx2) and can be switched for testing.

#include <span>
#include <string_view>

namespace mbnsim::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

/// True when the backend was compiled in and the CPU supports it.
bool available(Backend backend) noexcept;
Backend active() noexcept;
/// Returns false (and leaves the active backend unchanged) if unavailable.
bool select(Backend backend) noexcept;

/// out[i] = max(hypot(xs[i] - ux, ys[i] - uy), min_distance)
void distances(std::span<const double> xs, std::span<const double> ys, double ux, double uy,
               double min_distance, std::span<double> out);

/// out[i] = gain * dist[i]^(-exponent) * fading[i]
void power_law_rx(std::span<const double> dist, std::span<const double> fading, double gain,
                  double exponent, std::span<double> out);

/// out[i] = gain / dist[i]^2 * exp(-absorption * dist[i])
void absorbed_spreading_rx(std::span<const double> dist, double gain, double absorption,
                           std::span<double> out);

/// Elementwise exp / log, exposed for equivalence testing of the vector math.
void exp(std::span<const double> in, std::span<double> out);
void log(std::span<const double> in, std::span<double> out);

namespace scalar {
void distances(const double* xs, const double* ys, std::size_t n, double ux, double uy,
               double min_distance, double* out) noexcept;
void power_law_rx(const double* dist, const double* fading, std::size_t n, double gain,
                  double exponent, double* out) noexcept;
void absorbed_spreading_rx(const double* dist, std::size_t n, double gain, double absorption,
                           double* out) noexcept;
void exp(const double* in, std::size_t n, double* out) noexcept;
void log(const double* in, std::size_t n, double* out) noexcept;
}  // namespace scalar

namespace avx2 {
void distances(const double* xs, const double* ys, std::size_t n, double ux, double uy,
               double min_distance, double* out) noexcept;
void power_law_rx(const double* dist, const double* fading, std::size_t n, double gain,
                  double exponent, double* out) noexcept;
void absorbed_spreading_rx(const double* dist, std::size_t n, double gain, double absorption,
                           double* out) noexcept;
void exp(const double* in, std::size_t n, double* out) noexcept;
void log(const double* in, std::size_t n, double* out) noexcept;
}  // namespace avx2

}  // namespace mbnsim::kernels
