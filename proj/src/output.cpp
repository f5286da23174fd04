#include "mbnsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mbnsim/error.hpp"
#include "mbnsim/kernels.hpp"

namespace mbnsim {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(OutputKind kind) {
  switch (kind) {
    case OutputKind::RateVsK: return {"k_abs", "n_bs", "architecture", "policy", "mean_rate", "ci95"};
    case OutputKind::AssocVsN: return {"n_bs", "b_thz", "architecture", "thz_assoc_prob", "ci95"};
    case OutputKind::SeRateVsN:
      return {"n_bs", "b_thz", "architecture", "mean_se", "ci95_se", "mean_rate", "ci95_rate"};
    case OutputKind::DceVsN: return {"n_bs", "b_thz", "architecture", "dce", "ci95"};
    case OutputKind::Table:
      return {"variable", "value",     "series_variable", "series_value", "architecture",
              "policy",   "n_rf",      "n_thz",           "n_hyb",        "k_abs",
              "b_thz",    "trials",    "thz_assoc_prob",  "ci95_assoc",   "mean_se",
              "ci95_se",  "mean_rate", "ci95_rate",       "dce",          "ci95_dce"};
  }
  return {};
}

std::vector<std::string> planner_csv_header() {
  return {"target_rate", "b_thz", "mode", "feasible", "n_rf", "n_thz", "n_hyb", "n_total"};
}

DeploymentSpec spec_for(Architecture arch, const DeploymentSpec& base, SaCountMode mode) {
  if (base.architecture == arch) return base;
  if (arch == Architecture::Int) {
    const std::size_t n = mode == SaCountMode::PerBand ? std::max(base.n_rf, base.n_thz) : base.n_rf + base.n_thz;
    return DeploymentSpec::integrated(n, base.region_radius);
  }
  if (mode == SaCountMode::PerBand) return DeploymentSpec::stand_alone(base.n_hyb, base.n_hyb, base.region_radius);
  return DeploymentSpec::stand_alone(base.n_hyb / 2, base.n_hyb - base.n_hyb / 2, base.region_radius);
}

namespace {

unsigned worker_count(unsigned configured) {
  if (configured != 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_line(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::string count_str(std::size_t n) { return std::to_string(n); }

}  // namespace

std::vector<SweepTableRow> run_sweep_config(const ExperimentConfig& config, const SweepConfig& sweep) {
  std::vector<std::optional<double>> series_values;
  if (sweep.series)
    for (double v : sweep.series->values) series_values.emplace_back(v);
  else
    series_values.emplace_back(std::nullopt);

  std::vector<SweepTableRow> out;
  for (const auto& sv : series_values) {
    for (Architecture arch : sweep.architectures) {
      SweepPlan plan;
      plan.variable = sweep.variable;
      plan.values = sweep.values;
      plan.base_params = config.channel;
      plan.base_spec = spec_for(arch, config.deployment, sweep.sa_count_mode);
      plan.policies = sweep.policies;
      plan.trials_per_point = sweep.trials_per_point;
      plan.master_seed = Seed{config.seed};
      plan.sa_count_mode = sweep.sa_count_mode;
      plan.threads = worker_count(config.threads);
      if (sv) apply_sweep_value(sweep.series->variable, *sv, sweep.sa_count_mode, plan.base_spec, plan.base_params);
      for (auto& row : run_sweep(plan, config.costs)) out.push_back(SweepTableRow{sv, std::move(row)});
    }
  }
  return out;
}

std::string render_csv(const SweepConfig& sweep, const std::vector<SweepTableRow>& rows) {
  std::ostringstream os;
  write_line(os, csv_header(sweep.kind));
  for (const auto& t : rows) {
    const auto& r = t.row;
    const auto& k = r.kpi;
    const std::string n_bs = format_number(sweep.variable == SweepVariable::NumBs ? r.value
                                           : t.series_value                      ? *t.series_value
                                                                                 : 0.0);
    const std::string arch(to_string(r.architecture));
    switch (sweep.kind) {
      case OutputKind::RateVsK:
        write_line(os, {format_number(r.params.k_abs), n_bs, arch, std::string(to_string(r.policy)),
                        format_number(k.mean_rate), format_number(k.ci95_rate)});
        break;
      case OutputKind::AssocVsN:
        write_line(os, {n_bs, format_number(r.params.b_thz), arch, format_number(k.thz_assoc_prob),
                        format_number(k.ci95_assoc)});
        break;
      case OutputKind::SeRateVsN:
        write_line(os, {n_bs, format_number(r.params.b_thz), arch, format_number(k.mean_se), format_number(k.ci95_se),
                        format_number(k.mean_rate), format_number(k.ci95_rate)});
        break;
      case OutputKind::DceVsN:
        write_line(os, {n_bs, format_number(r.params.b_thz), arch, format_number(k.dce), format_number(k.ci95_dce)});
        break;
      case OutputKind::Table:
        write_line(os, {std::string(to_string(sweep.variable)), format_number(r.value),
                        sweep.series ? std::string(to_string(sweep.series->variable)) : std::string(),
                        t.series_value ? format_number(*t.series_value) : std::string(), arch,
                        std::string(to_string(r.policy)), count_str(r.spec.n_rf), count_str(r.spec.n_thz),
                        count_str(r.spec.n_hyb), format_number(r.params.k_abs), format_number(r.params.b_thz),
                        count_str(k.trials), format_number(k.thz_assoc_prob), format_number(k.ci95_assoc),
                        format_number(k.mean_se), format_number(k.ci95_se), format_number(k.mean_rate),
                        format_number(k.ci95_rate), format_number(k.dce), format_number(k.ci95_dce)});
        break;
    }
  }
  return os.str();
}

std::vector<PlannerRow> run_planner_config(const ExperimentConfig& config) {
  if (!config.planner) return {};
  const auto& pc = *config.planner;
  std::vector<PlannerRow> rows;
  for (double b : pc.b_thz) {
    PlannerSettings s;
    s.params = config.channel;
    s.params.b_thz = b;
    s.policy = pc.policy;
    s.confidence = pc.confidence;
    s.trials = pc.trials;
    s.n_max = pc.n_max;
    s.seed = Seed{config.seed};
    s.region_radius = config.deployment.region_radius;
    s.threads = worker_count(config.threads);
    Planner planner(s);
    for (double target : pc.targets)
      for (PlannerMode mode : pc.modes) rows.push_back(PlannerRow{b, planner.required(target, mode)});
  }
  return rows;
}

std::string render_planner_csv(const std::vector<PlannerRow>& rows) {
  std::ostringstream os;
  write_line(os, planner_csv_header());
  for (const auto& r : rows) {
    const auto& e = r.entry;
    write_line(os, {format_number(e.target_rate), format_number(r.b_thz), std::string(to_string(e.mode)),
                    e.feasible ? "1" : "0", count_str(e.n_rf), count_str(e.n_thz), count_str(e.n_hyb),
                    count_str(e.total())});
  }
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << content;
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

  RunReport report;
  for (const auto& sweep : config.sweeps) {
    const auto rows = run_sweep_config(config, sweep);
    const auto path = dir / (sweep.name + ".csv");
    write_file(path, render_csv(sweep, rows));
    report.csv_files.push_back(path);
  }
  if (config.planner) {
    const auto path = dir / (config.planner->name + ".csv");
    write_file(path, render_planner_csv(run_planner_config(config)));
    report.csv_files.push_back(path);
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json manifest;
  manifest["version"] = MBNSIM_VERSION;
  manifest["preset"] = config.preset;
  manifest["master_seed"] = config.seed;
  manifest["kernel_backend"] = std::string(kernels::to_string(kernels::active()));
  manifest["config"] = to_json(config);
  manifest["outputs"] = nlohmann::json::array();
  for (const auto& p : report.csv_files) manifest["outputs"].push_back(p.filename().string());
  manifest["wall_time_s"] = wall;
  report.manifest = dir / "manifest.json";
  write_file(report.manifest, manifest.dump(2) + "\n");
  return report;
}

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace

std::size_t validate_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) throw DomainError("csv: last line is not newline-terminated");
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty()) throw DomainError("csv: missing header");
  const auto header = split(lines[0]);

  const auto is_probability = [](const std::string& c) { return c == "thz_assoc_prob"; };
  const auto is_nonneg = [](const std::string& c) {
    return c == "mean_se" || c == "mean_rate" || c == "dce" || c.rfind("ci95", 0) == 0 || c == "k_abs" ||
           c == "b_thz" || c == "n_bs" || c == "target_rate";
  };
  const auto is_count = [](const std::string& c) {
    return c == "trials" || c == "n_rf" || c == "n_thz" || c == "n_hyb" || c == "n_total";
  };

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    const std::string where = "csv row " + std::to_string(i) + ": ";
    if (cells.size() != header.size()) throw DomainError(where + "column count mismatch");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& col = header[c];
      if (!(is_probability(col) || is_nonneg(col) || is_count(col))) continue;
      if (cells[c].empty() && (col == "series_value")) continue;
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v)) throw DomainError(where + col + " is not a finite number");
      if (is_probability(col) && !(v >= 0.0 && v <= 1.0)) throw DomainError(where + col + " outside [0, 1]");
      if (v < 0.0) throw DomainError(where + col + " is negative");
      if (is_count(col) && std::floor(v) != v) throw DomainError(where + col + " is not an integer");
      if (col == "trials" && v < 1.0) throw DomainError(where + "trials must be >= 1");
    }
  }
  return lines.size() - 1;
}

}  // namespace mbnsim
