#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "mbnsim/kernels.hpp"

namespace mbnsim::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(MBNSIM_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const char* env = std::getenv("MBNSIM_KERNELS");
  if (env != nullptr && std::string(env) == "scalar") return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

bool use_avx2() noexcept {
#if defined(MBNSIM_BUILD_AVX2)
  return current().load(std::memory_order_relaxed) == Backend::Avx2;
#else
  return false;
#endif
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool available(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active() noexcept { return current().load(); }

bool select(Backend backend) noexcept {
  if (!available(backend)) return false;
  current().store(backend);
  return true;
}

void distances(std::span<const double> xs, std::span<const double> ys, double ux, double uy,
               double min_distance, std::span<double> out) {
  assert(xs.size() == ys.size() && out.size() == xs.size());
#if defined(MBNSIM_BUILD_AVX2)
  if (use_avx2()) return avx2::distances(xs.data(), ys.data(), xs.size(), ux, uy, min_distance, out.data());
#endif
  scalar::distances(xs.data(), ys.data(), xs.size(), ux, uy, min_distance, out.data());
}

void power_law_rx(std::span<const double> dist, std::span<const double> fading, double gain,
                  double exponent, std::span<double> out) {
  assert(dist.size() == fading.size() && out.size() == dist.size());
#if defined(MBNSIM_BUILD_AVX2)
  if (use_avx2()) return avx2::power_law_rx(dist.data(), fading.data(), dist.size(), gain, exponent, out.data());
#endif
  scalar::power_law_rx(dist.data(), fading.data(), dist.size(), gain, exponent, out.data());
}

void absorbed_spreading_rx(std::span<const double> dist, double gain, double absorption,
                           std::span<double> out) {
  assert(out.size() == dist.size());
#if defined(MBNSIM_BUILD_AVX2)
  if (use_avx2()) return avx2::absorbed_spreading_rx(dist.data(), dist.size(), gain, absorption, out.data());
#endif
  scalar::absorbed_spreading_rx(dist.data(), dist.size(), gain, absorption, out.data());
}

void exp(std::span<const double> in, std::span<double> out) {
  assert(out.size() == in.size());
#if defined(MBNSIM_BUILD_AVX2)
  if (use_avx2()) return avx2::exp(in.data(), in.size(), out.data());
#endif
  scalar::exp(in.data(), in.size(), out.data());
}

void log(std::span<const double> in, std::span<double> out) {
  assert(out.size() == in.size());
#if defined(MBNSIM_BUILD_AVX2)
  if (use_avx2()) return avx2::log(in.data(), in.size(), out.data());
#endif
  scalar::log(in.data(), in.size(), out.data());
}

}  // namespace mbnsim::kernels
