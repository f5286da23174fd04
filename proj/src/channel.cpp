#include "mbnsim/channel.hpp"

#include <numbers>
#include <string>

#include "mbnsim/error.hpp"
#include "mbnsim/kernels.hpp"

namespace mbnsim {
namespace {

double friis_constant(double p_tx, double gain, double frequency) {
  const double lambda_over = kSpeedOfLight / (4.0 * std::numbers::pi * frequency);
  return p_tx * gain * gain * lambda_over * lambda_over;
}

bool carries_rf(BandType band) { return band != BandType::THz; }
bool carries_thz(BandType band) { return band != BandType::RF; }

}  // namespace

std::string_view to_string(RfFading fading) { return fading == RfFading::Rayleigh ? "rayleigh" : "none"; }

double ChannelParams::rf_gain_constant() const noexcept { return friis_constant(p_tx_rf, g_rf(), f_rf); }
double ChannelParams::thz_gain_constant() const noexcept { return friis_constant(p_tx_thz, g_thz(), f_thz); }

void ChannelParams::validate() const {
  std::vector<std::string> errors;
  const auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) errors.push_back(std::string(name) + ": must be positive and finite");
  };
  positive(f_rf, "f_rf");
  positive(f_thz, "f_thz");
  positive(b_rf, "b_rf");
  positive(b_thz, "b_thz");
  positive(p_tx_rf, "p_tx_rf");
  positive(p_tx_thz, "p_tx_thz");
  positive(noise_psd, "noise_psd");
  positive(pathloss_exp_rf, "pathloss_exp_rf");
  if (!std::isfinite(g_thz_db)) errors.emplace_back("g_thz_db: must be finite");
  if (!std::isfinite(g_rf_db)) errors.emplace_back("g_rf_db: must be finite");
  if (!std::isfinite(noise_figure_db)) errors.emplace_back("noise_figure_db: must be finite");
  if (!(k_abs >= 0.0) || !std::isfinite(k_abs)) errors.emplace_back("k_abs: must be >= 0 and finite");
  if (!(p_align >= 0.0 && p_align <= 1.0)) errors.emplace_back("p_align: must lie in [0, 1]");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

double rx_power_thz(const ChannelParams& params, double d) {
  return params.thz_gain_constant() / (d * d) * std::exp(-params.k_abs * d);
}

double rx_power_rf(const ChannelParams& params, double d, double fading) {
  return params.rf_gain_constant() * std::pow(d, -params.pathloss_exp_rf) * fading;
}

double thermal_noise(const ChannelParams& params, double bandwidth) {
  return params.noise_psd * bandwidth * std::pow(10.0, params.noise_figure_db / 10.0);
}

void finalize_link(LinkBudget& link, const ChannelParams& params) {
  link.sinr = link.rx_power / (link.interference + link.noise);
  link.rate = params.bandwidth(link.band) * std::log2(1.0 + link.sinr);
}

ChannelDraws draw_channel_state(const Deployment& dep, const ChannelParams& params, Seed seed) {
  Rng rng(seed);
  const std::size_t n = dep.stations.size();
  ChannelDraws draws{std::vector<double>(n, 1.0), std::vector<std::uint8_t>(n, 0)};
  // Fixed draw order per station (fading, then alignment) keeps the stream
  // aligned regardless of which options are enabled.
  for (std::size_t i = 0; i < n; ++i) {
    const double fade = rng.exponential();
    const bool aligned = rng.bernoulli(params.p_align);
    if (carries_rf(dep.stations[i].band) && params.rf_fading == RfFading::Rayleigh)
      draws.rf_fading[i] = fade;
    if (carries_thz(dep.stations[i].band)) draws.thz_aligned[i] = aligned ? 1 : 0;
  }
  return draws;
}

namespace {

// Co-band interference for each member of a band group: sum of all other
// members' contributions, computed with prefix/suffix sums so the desired
// signal is never subtracted back out.
void exclusive_sums(std::span<const double> contrib, std::span<double> out) {
  const std::size_t n = contrib.size();
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = prefix;
    prefix += contrib[i];
  }
  double suffix = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    out[i] += suffix;
    suffix += contrib[i];
  }
}

struct BandGroup {
  std::vector<std::size_t> station;
  std::vector<double> xs, ys, dist, rx, contrib, interference;

  void resize(std::size_t n) {
    for (auto* v : {&xs, &ys, &dist, &rx, &contrib, &interference}) v->resize(n);
  }
};

}  // namespace

std::vector<LinkBudget> evaluate_links(const Deployment& dep, const ChannelParams& params,
                                       const ChannelDraws& draws) {
  const std::size_t n = dep.stations.size();
  BandGroup rf, thz;
  std::vector<double> fading;
  for (std::size_t i = 0; i < n; ++i) {
    const auto band = dep.stations[i].band;
    if (carries_rf(band)) rf.station.push_back(i);
    if (carries_thz(band)) thz.station.push_back(i);
  }
  rf.resize(rf.station.size());
  thz.resize(thz.station.size());
  fading.resize(rf.station.size());

  for (auto* g : {&rf, &thz}) {
    for (std::size_t j = 0; j < g->station.size(); ++j) {
      g->xs[j] = dep.stations[g->station[j]].position.x;
      g->ys[j] = dep.stations[g->station[j]].position.y;
    }
    kernels::distances(g->xs, g->ys, dep.user.x, dep.user.y, kMinLinkDistance, g->dist);
  }

  for (std::size_t j = 0; j < rf.station.size(); ++j) fading[j] = draws.rf_fading[rf.station[j]];
  kernels::power_law_rx(rf.dist, fading, params.rf_gain_constant(), params.pathloss_exp_rf, rf.rx);
  exclusive_sums(rf.rx, rf.interference);

  kernels::absorbed_spreading_rx(thz.dist, params.thz_gain_constant(), params.k_abs, thz.rx);
  for (std::size_t j = 0; j < thz.station.size(); ++j)
    thz.contrib[j] = draws.thz_aligned[thz.station[j]] ? thz.rx[j] : 0.0;
  exclusive_sums(thz.contrib, thz.interference);

  const double noise_rf = thermal_noise(params, params.b_rf);
  const double noise_thz = thermal_noise(params, params.b_thz);

  std::vector<LinkBudget> links;
  links.reserve(rf.station.size() + thz.station.size());
  std::size_t jr = 0, jt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto band = dep.stations[i].band;
    if (carries_rf(band)) {
      LinkBudget l{i, LinkBand::RF, rf.rx[jr], rf.interference[jr], noise_rf, 0.0, 0.0, rf.dist[jr]};
      finalize_link(l, params);
      links.push_back(l);
      ++jr;
    }
    if (carries_thz(band)) {
      LinkBudget l{i, LinkBand::THz, thz.rx[jt], thz.interference[jt], noise_thz, 0.0, 0.0, thz.dist[jt]};
      finalize_link(l, params);
      links.push_back(l);
      ++jt;
    }
  }
  return links;
}

std::vector<LinkBudget> evaluate_links(const Deployment& dep, const ChannelParams& params, Seed seed) {
  return evaluate_links(dep, params, draw_channel_state(dep, params, seed));
}

}  // namespace mbnsim
