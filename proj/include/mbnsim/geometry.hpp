#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mbnsim/rng.hpp"

namespace mbnsim {

enum class BandType { RF, THz, Hybrid };
enum class Architecture { SA, Int };

std::string_view to_string(BandType band);
std::string_view to_string(Architecture arch);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance in meters.
double distance(Point a, Point b) noexcept;

struct DeploymentSpec {
  Architecture architecture = Architecture::SA;
  std::size_t n_rf = 0;
  std::size_t n_thz = 0;
  std::size_t n_hyb = 0;
  double region_radius = 400.0;  // m

  /// Throws ConfigError listing every violated invariant.
  void validate() const;
  std::size_t station_count() const noexcept { return n_rf + n_thz + n_hyb; }

  static DeploymentSpec stand_alone(std::size_t n_rf, std::size_t n_thz, double radius = 400.0);
  static DeploymentSpec integrated(std::size_t n_hyb, double radius = 400.0);

  friend bool operator==(const DeploymentSpec&, const DeploymentSpec&) = default;
};

struct Station {
  Point position;
  BandType band = BandType::RF;
  friend bool operator==(const Station&, const Station&) = default;
};

struct Deployment {
  std::vector<Station> stations;
  Point user;
  friend bool operator==(const Deployment&, const Deployment&) = default;
};

/// Uniform point in the disk of the given radius centred at the origin.
Point sample_in_disk(Rng& rng, double radius);

/// Places the user and every station independently and uniformly in the
/// disk. Draw order is fixed: user, then THz (or hybrid) stations, then RF
/// stations, so an SA layout with n_thz == n_hyb shares its THz sites with
/// the Int layout drawn from the same seed.
Deployment sample_deployment(const DeploymentSpec& spec, Seed seed);

}  // namespace mbnsim
