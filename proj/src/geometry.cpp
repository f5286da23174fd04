#include "mbnsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mbnsim/error.hpp"

namespace mbnsim {

std::string_view to_string(BandType band) {
  switch (band) {
    case BandType::RF: return "RF";
    case BandType::THz: return "THz";
    case BandType::Hybrid: return "Hybrid";
  }
  return "?";
}

std::string_view to_string(Architecture arch) { return arch == Architecture::SA ? "SA" : "Int"; }

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

void DeploymentSpec::validate() const {
  std::vector<std::string> errors;
  if (!(region_radius > 0.0) || !std::isfinite(region_radius))
    errors.emplace_back("region_radius: must be a positive finite number of meters");
  if (architecture == Architecture::SA) {
    if (n_hyb != 0) errors.emplace_back("n_hyb: must be 0 for SA deployments");
    if (n_rf + n_thz == 0) errors.emplace_back("n_rf/n_thz: SA deployment needs at least one station");
  } else {
    if (n_rf != 0 || n_thz != 0) errors.emplace_back("n_rf/n_thz: must be 0 for Int deployments");
    if (n_hyb == 0) errors.emplace_back("n_hyb: Int deployment needs at least one hybrid station");
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

DeploymentSpec DeploymentSpec::stand_alone(std::size_t n_rf, std::size_t n_thz, double radius) {
  return DeploymentSpec{Architecture::SA, n_rf, n_thz, 0, radius};
}

DeploymentSpec DeploymentSpec::integrated(std::size_t n_hyb, double radius) {
  return DeploymentSpec{Architecture::Int, 0, 0, n_hyb, radius};
}

Point sample_in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return Point{r * std::cos(theta), r * std::sin(theta)};
}

Deployment sample_deployment(const DeploymentSpec& spec, Seed seed) {
  spec.validate();
  Rng rng(seed);
  Deployment dep;
  dep.user = sample_in_disk(rng, spec.region_radius);
  dep.stations.reserve(spec.station_count());

  const bool integrated = spec.architecture == Architecture::Int;
  const std::size_t n_high = integrated ? spec.n_hyb : spec.n_thz;
  const BandType high_band = integrated ? BandType::Hybrid : BandType::THz;
  for (std::size_t i = 0; i < n_high; ++i)
    dep.stations.push_back({sample_in_disk(rng, spec.region_radius), high_band});
  for (std::size_t i = 0; i < spec.n_rf; ++i)
    dep.stations.push_back({sample_in_disk(rng, spec.region_radius), BandType::RF});
  return dep;
}

}  // namespace mbnsim
