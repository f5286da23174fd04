#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mbnsim/geometry.hpp"
#include "mbnsim/rng.hpp"

namespace mbnsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
/// Links shorter than this are evaluated at this distance (far-field floor).
inline constexpr double kMinLinkDistance = 1.0;  // m

/// Frequency band of a single radio link. Hybrid stations expose one of each.
enum class LinkBand { RF, THz };

enum class RfFading { Rayleigh, None };

std::string_view to_string(RfFading fading);

/// Radio constants shared by every link in a trial. SI units throughout;
/// antenna gains are held in dB and converted on use.
struct ChannelParams {
  double f_rf = 2e9;             // Hz
  double f_thz = 1e12;           // Hz
  double b_rf = 40e6;            // Hz
  double b_thz = 10e9;           // Hz
  double p_tx_rf = 2.0;          // W
  double p_tx_thz = 0.2;         // W
  double g_thz_db = 25.0;        // per end
  double g_rf_db = 0.0;          // per end
  double k_abs = 0.0033;         // 1/m
  double p_align = 0.006;
  double noise_psd = 3.9810717055349565e-21;  // W/Hz, -174 dBm/Hz
  double noise_figure_db = 0.0;
  double pathloss_exp_rf = 4.0;
  RfFading rf_fading = RfFading::Rayleigh;

  double g_thz() const noexcept { return std::pow(10.0, g_thz_db / 10.0); }
  double g_rf() const noexcept { return std::pow(10.0, g_rf_db / 10.0); }
  double bandwidth(LinkBand band) const noexcept { return band == LinkBand::RF ? b_rf : b_thz; }

  /// p_tx g^2 (c / 4 pi f)^2 for RF, i.e. received power at 1 m before fading.
  double rf_gain_constant() const noexcept;
  /// p_tx g^2 (c / 4 pi f)^2 for THz, the spreading-loss numerator.
  double thz_gain_constant() const noexcept;

  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct LinkBudget {
  std::size_t station = 0;  // index into Deployment::stations
  LinkBand band = LinkBand::RF;
  double rx_power = 0.0;      // W
  double interference = 0.0;  // W
  double noise = 0.0;         // W
  double sinr = 0.0;
  double rate = 0.0;      // bit/s
  double distance = 0.0;  // m, after the near-field clamp
};

double rx_power_thz(const ChannelParams& params, double d);
double rx_power_rf(const ChannelParams& params, double d, double fading);
double thermal_noise(const ChannelParams& params, double bandwidth);

/// Fills sinr and rate from rx_power, interference and noise using the
/// band's bandwidth.
void finalize_link(LinkBudget& link, const ChannelParams& params);

/// Per-station random channel state for one trial: Rayleigh power gain for
/// RF-capable stations and an interferer beam-alignment indicator for
/// THz-capable ones. Entries for stations without that band are unused.
struct ChannelDraws {
  std::vector<double> rf_fading;
  std::vector<std::uint8_t> thz_aligned;
};

ChannelDraws draw_channel_state(const Deployment& dep, const ChannelParams& params, Seed seed);

/// Candidate links for the typical user, one per (station, band) the station
/// supports, in station order (hybrids yield RF then THz). Interference on a
/// candidate is the sum over all other co-band stations; THz interferers
/// contribute only when aligned.
std::vector<LinkBudget> evaluate_links(const Deployment& dep, const ChannelParams& params,
                                       const ChannelDraws& draws);
std::vector<LinkBudget> evaluate_links(const Deployment& dep, const ChannelParams& params, Seed seed);

}  // namespace mbnsim
