#include <string>

#include "mbnsim/config.hpp"
#include "mbnsim/error.hpp"

namespace mbnsim {
namespace {

using nlohmann::json;

// Absorption level shared by the planner and density-sweep presets.
constexpr double kModerateAbsorption = 0.05;

json all_policies() { return json::array({"MaxRate", "Biased", "MaxRsrp", "MaxSinr"}); }

json n_grid() {
  json v = json::array();
  for (int n = 5; n <= 60; n += 5) v.push_back(n);
  return v;
}

json fig4(const char* kind) {
  return json{
      {"channel", {{"k_abs", kModerateAbsorption}}},
      {"deployment", {{"region_radius", 400.0}}},
      {"sweeps",
       json::array({{{"name", kind},
                     {"kind", kind},
                     {"variable", "NumBs"},
                     {"values", n_grid()},
                     {"series", {{"variable", "ThzBandwidth"}, {"values", {5e9, 10e9}}}},
                     {"architectures", {"SA", "Int"}},
                     {"policies", {"MaxRate"}},
                     {"trials_per_point", 10000}}})}};
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4a", "fig4b", "fig4c", "custom"}; }

json preset_fragment(std::string_view name) {
  if (name == "custom") return json::object();
  if (name == "fig2")
    return json{{"channel", {{"b_thz", 10e9}}},
                {"deployment", {{"region_radius", 400.0}}},
                {"sweeps",
                 json::array({{{"name", "rate_vs_k"},
                               {"kind", "rate_vs_k"},
                               {"variable", "AbsorptionK"},
                               {"values", {0.001, 0.0033, 0.01, 0.05, 0.1}},
                               {"series", {{"variable", "NumBs"}, {"values", {10, 30, 60}}}},
                               {"architectures", {"SA", "Int"}},
                               {"policies", all_policies()},
                               {"trials_per_point", 10000}}})}};
  if (name == "fig3")
    return json{{"channel", {{"p_tx_rf", 3.0}, {"k_abs", kModerateAbsorption}}},
                {"deployment", {{"region_radius", 400.0}}},
                {"planner",
                 {{"name", "reqbs_vs_target"},
                  {"targets", {1e9, 2e9, 5e9, 10e9, 15e9, 20e9}},
                  {"modes", {"IntMBN", "SaEqual", "SaFlexible"}},
                  {"b_thz", {5e9, 10e9}},
                  {"policy", "MaxRate"},
                  {"confidence", 0.95},
                  {"trials", 10000},
                  {"n_max", 60}}}};
  if (name == "fig4a") return fig4("assoc_vs_n");
  if (name == "fig4b") return fig4("se_rate_vs_n");
  if (name == "fig4c") return fig4("dce_vs_n");
  throw ConfigError("preset: unknown preset '" + std::string(name) + "'");
}

}  // namespace mbnsim
