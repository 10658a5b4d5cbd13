#include "mobcav/runner.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mobcav/version.hpp"

namespace mobcav {

using nlohmann::json;

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Profile1D: return "profile1d";
    case Scenario::Profile3D: return "profile3d";
    case Scenario::Spectrum3D: return "spectrum";
    case Scenario::Sweep: return "sweep";
  }
  return "?";
}

Cavity1DConfig RunConfig::cavity1d() const {
  Cavity1DConfig c;
  c.L0 = L0;
  c.M = M;
  c.omega_osc = omega_osc;
  c.omega_cut = omega_cut;
  c.constants = constants;
  return c;
}

Cavity3DConfig RunConfig::cavity3d() const {
  Cavity3DConfig c;
  c.L0 = L0;
  c.Ly = Ly;
  c.Lz = Lz;
  c.M = M;
  c.omega_osc = omega_osc;
  c.omega_cut = omega_cut;
  c.constants = constants;
  return c;
}

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

PeakDiagnostics diagnose_peak(const std::vector<double>& grid,
                              const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.empty()) {
    throw DomainError("diagnose_peak: grid and values must be nonempty and equal-sized");
  }
  PeakDiagnostics d;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[peak]) peak = i;
  }
  d.height = values[peak];
  d.location = grid[peak];
  const double half = 0.5 * d.height;

  auto interp = [&](std::size_t a, std::size_t b) {
    const double dv = values[b] - values[a];
    if (dv == 0.0) return grid[a];
    return grid[a] + (grid[b] - grid[a]) * (half - values[a]) / dv;
  };

  double left = grid.front();
  for (std::size_t i = peak; i-- > 0;) {
    if (values[i] < half) {
      left = interp(i, i + 1);
      break;
    }
  }
  double right = grid.back();
  for (std::size_t i = peak + 1; i < values.size(); ++i) {
    if (values[i] < half) {
      right = interp(i - 1, i);
      break;
    }
  }
  d.fwhm = right - left;
  return d;
}

namespace {

const std::set<std::string>& sweep_parameters() {
  static const std::set<std::string> params{"omega_cut", "M", "omega_osc"};
  return params;
}

class ConfigReader {
public:
  explicit ConfigReader(const json& root) : root_(root) {}

  void error(const std::string& msg) { errors_.push_back(msg); }

  const json* block(const char* key, bool required) {
    if (!root_.contains(key)) {
      if (required) error(std::string("missing block \"") + key + "\"");
      return nullptr;
    }
    if (!root_.at(key).is_object()) {
      error(std::string("\"") + key + "\" must be an object");
      return nullptr;
    }
    return &root_.at(key);
  }

  double number(const json& obj, const std::string& path, const char* key, bool required,
                double fallback) {
    if (!obj.contains(key)) {
      if (required) error(path + ": missing required field \"" + key + "\"");
      return fallback;
    }
    if (!obj.at(key).is_number()) {
      error(path + ": field \"" + key + "\" must be a number");
      return fallback;
    }
    return obj.at(key).get<double>();
  }

  int integer(const json& obj, const std::string& path, const char* key, bool required,
              int fallback) {
    if (!obj.contains(key)) {
      if (required) error(path + ": missing required field \"" + key + "\"");
      return fallback;
    }
    if (!obj.at(key).is_number_integer()) {
      error(path + ": field \"" + key + "\" must be an integer");
      return fallback;
    }
    return obj.at(key).get<int>();
  }

  std::string text(const json& obj, const std::string& path, const char* key, bool required,
                   const std::string& fallback) {
    if (!obj.contains(key)) {
      if (required) error(path + ": missing required field \"" + key + "\"");
      return fallback;
    }
    if (!obj.at(key).is_string()) {
      error(path + ": field \"" + key + "\" must be a string");
      return fallback;
    }
    return obj.at(key).get<std::string>();
  }

  void check_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) {
        if (key == a) {
          ok = true;
          break;
        }
      }
      if (!ok) error(path + ": unknown field \"" + key + "\"");
    }
  }

  void finish(const char* what) {
    if (errors_.empty()) return;
    std::string msg = what;
    msg += ":";
    for (const auto& e : errors_) {
      msg += "\n  - ";
      msg += e;
    }
    throw ConfigError(msg);
  }

  bool has_errors() const { return !errors_.empty(); }

private:
  const json& root_;
  std::vector<std::string> errors_;
};

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object");

  ConfigReader r(root);
  RunConfig cfg;

  r.check_keys(root, "top level",
               {"scenario", "cavity", "sum_control", "grid", "sweep", "spectrum", "output",
                "threads", "constants"});

  const std::string scen = r.text(root, "top level", "scenario", true, "");
  bool is_3d = false;
  if (scen == "profile1d") {
    cfg.scenario = Scenario::Profile1D;
  } else if (scen == "profile3d") {
    cfg.scenario = Scenario::Profile3D;
    is_3d = true;
  } else if (scen == "spectrum") {
    cfg.scenario = Scenario::Spectrum3D;
    is_3d = true;
  } else if (scen == "sweep") {
    cfg.scenario = Scenario::Sweep;
  } else if (!scen.empty()) {
    r.error("scenario must be one of: profile1d, profile3d, spectrum, sweep");
  }

  if (const json* cav = r.block("cavity", true)) {
    r.check_keys(*cav, "cavity", {"L0", "Ly", "Lz", "M", "omega_osc", "omega_cut"});
    cfg.L0 = r.number(*cav, "cavity", "L0", true, 0.0);
    cfg.M = r.number(*cav, "cavity", "M", true, 0.0);
    cfg.omega_osc = r.number(*cav, "cavity", "omega_osc", true, 0.0);
    cfg.omega_cut = r.number(*cav, "cavity", "omega_cut", true, 0.0);
    cfg.Ly = r.number(*cav, "cavity", "Ly", is_3d, 0.0);
    cfg.Lz = r.number(*cav, "cavity", "Lz", is_3d, 0.0);
  }

  if (const json* con = r.block("constants", false)) {
    r.check_keys(*con, "constants", {"hbar", "c"});
    cfg.constants.hbar = r.number(*con, "constants", "hbar", false, cfg.constants.hbar);
    cfg.constants.c = r.number(*con, "constants", "c", false, cfg.constants.c);
  }

  if (const json* sc = r.block("sum_control", false)) {
    r.check_keys(*sc, "sum_control",
                 {"max_axial", "max_transverse", "rel_tol", "cutoff_scheme"});
    cfg.control.max_axial = r.integer(*sc, "sum_control", "max_axial", false, cfg.control.max_axial);
    cfg.control.max_transverse =
        r.integer(*sc, "sum_control", "max_transverse", false, cfg.control.max_transverse);
    cfg.control.rel_tol = r.number(*sc, "sum_control", "rel_tol", false, cfg.control.rel_tol);
    const std::string scheme = r.text(*sc, "sum_control", "cutoff_scheme", false, "exponential");
    if (scheme == "exponential") {
      cfg.control.cutoff_scheme = CutoffScheme::Exponential;
    } else if (scheme == "sharp") {
      cfg.control.cutoff_scheme = CutoffScheme::Sharp;
    } else {
      r.error("sum_control: cutoff_scheme must be \"exponential\" or \"sharp\"");
    }
  }

  if (const json* g = r.block("grid", false)) {
    r.check_keys(*g, "grid", {"points", "refine_start_fraction", "refine_points"});
    cfg.grid.points = r.integer(*g, "grid", "points", false, cfg.grid.points);
    cfg.grid.refine_start_frac =
        r.number(*g, "grid", "refine_start_fraction", false, cfg.grid.refine_start_frac);
    cfg.grid.refine_points = r.integer(*g, "grid", "refine_points", false, cfg.grid.refine_points);
    if (cfg.grid.points < 1) r.error("grid: points must be >= 1");
    if (cfg.grid.refine_points < 0) r.error("grid: refine_points must be >= 0");
    if (cfg.grid.refine_points > 0 &&
        !(cfg.grid.refine_start_frac > 0.0 && cfg.grid.refine_start_frac < 1.0)) {
      r.error("grid: refine_start_fraction must lie in (0, 1) when refine_points > 0");
    }
  }

  const json* sw = r.block("sweep", cfg.scenario == Scenario::Sweep);
  if (sw && cfg.scenario != Scenario::Sweep) {
    r.error("sweep block present but scenario is not \"sweep\"");
  } else if (sw) {
    r.check_keys(*sw, "sweep", {"parameter", "values"});
    SweepSpec spec;
    spec.parameter = r.text(*sw, "sweep", "parameter", true, "");
    if (!spec.parameter.empty() && !sweep_parameters().contains(spec.parameter)) {
      r.error("sweep: unknown parameter \"" + spec.parameter +
              "\" (expected omega_cut, M or omega_osc)");
    }
    if (!sw->contains("values") || !sw->at("values").is_array() || sw->at("values").empty()) {
      r.error("sweep: \"values\" must be a nonempty array of numbers");
    } else {
      for (const auto& v : sw->at("values")) {
        if (!v.is_number()) {
          r.error("sweep: \"values\" must contain only numbers");
          break;
        }
        spec.values.push_back(v.get<double>());
      }
    }
    cfg.sweep = std::move(spec);
  }

  const json* sp = r.block("spectrum", cfg.scenario == Scenario::Spectrum3D);
  if (sp && cfg.scenario != Scenario::Spectrum3D) {
    r.error("spectrum block present but scenario is not \"spectrum\"");
  } else if (sp) {
    r.check_keys(*sp, "spectrum", {"modes", "max_mx", "max_my", "max_mz"});
    SpectrumSpec spec;
    if (sp->contains("modes")) {
      if (!sp->at("modes").is_array()) {
        r.error("spectrum: \"modes\" must be an array of [m_x, m_y, m_z] triples");
      } else {
        for (const auto& m : sp->at("modes")) {
          if (!m.is_array() || m.size() != 3 || !m[0].is_number_integer() ||
              !m[1].is_number_integer() || !m[2].is_number_integer()) {
            r.error("spectrum: each mode must be an integer triple [m_x, m_y, m_z]");
            break;
          }
          spec.modes.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<int>()});
        }
        for (const auto& m : spec.modes) {
          if (m.nx < 1) {
            r.error("spectrum: mode m_x indices must be >= 1");
            break;
          }
        }
      }
    }
    spec.max_mx = r.integer(*sp, "spectrum", "max_mx", false, 0);
    spec.max_my = r.integer(*sp, "spectrum", "max_my", false, 0);
    spec.max_mz = r.integer(*sp, "spectrum", "max_mz", false, 0);
    if (spec.modes.empty() && spec.max_mx < 1) {
      r.error("spectrum: provide \"modes\" or a positive \"max_mx\"");
    }
    if (spec.max_my < 0 || spec.max_mz < 0) {
      r.error("spectrum: max_my and max_mz must be >= 0");
    }
    cfg.spectrum = std::move(spec);
  }

  if (const json* out = r.block("output", false)) {
    r.check_keys(*out, "output", {"dir", "basename"});
    cfg.output.dir = r.text(*out, "output", "dir", false, cfg.output.dir.string());
    cfg.output.basename = r.text(*out, "output", "basename", false, cfg.output.basename);
    if (cfg.output.basename.empty()) r.error("output: basename must be nonempty");
  }

  cfg.threads = r.integer(root, "top level", "threads", false, 0);
  if (cfg.threads < 0) r.error("threads must be >= 0");

  if (!r.has_errors()) {
    // Domain validation of the assembled physics blocks.
    try {
      if (is_3d) {
        validate(cfg.cavity3d());
      } else {
        validate(cfg.cavity1d());
      }
    } catch (const ConfigError& e) {
      r.error(e.what());
    }
    try {
      validate(cfg.control);
    } catch (const ConfigError& e) {
      r.error(e.what());
    }
  }
  r.finish("invalid run configuration");
  return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  json j;
  j["scenario"] = to_string(cfg.scenario);
  j["cavity"] = {{"L0", cfg.L0}, {"M", cfg.M}, {"omega_osc", cfg.omega_osc},
                 {"omega_cut", cfg.omega_cut}};
  if (cfg.Ly > 0.0 || cfg.Lz > 0.0) {
    j["cavity"]["Ly"] = cfg.Ly;
    j["cavity"]["Lz"] = cfg.Lz;
  }
  j["constants"] = {{"hbar", cfg.constants.hbar}, {"c", cfg.constants.c}};
  j["sum_control"] = {
      {"max_axial", cfg.control.max_axial},
      {"max_transverse", cfg.control.max_transverse},
      {"rel_tol", cfg.control.rel_tol},
      {"cutoff_scheme",
       cfg.control.cutoff_scheme == CutoffScheme::Exponential ? "exponential" : "sharp"}};
  j["grid"] = {{"points", cfg.grid.points},
               {"refine_start_fraction", cfg.grid.refine_start_frac},
               {"refine_points", cfg.grid.refine_points}};
  if (cfg.sweep) {
    j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
  }
  if (cfg.spectrum) {
    json sp;
    if (!cfg.spectrum->modes.empty()) {
      json arr = json::array();
      for (const auto& m : cfg.spectrum->modes) arr.push_back({m.nx, m.ny, m.nz});
      sp["modes"] = arr;
    } else {
      sp["max_mx"] = cfg.spectrum->max_mx;
      sp["max_my"] = cfg.spectrum->max_my;
      sp["max_mz"] = cfg.spectrum->max_mz;
    }
    j["spectrum"] = sp;
  }
  j["output"] = {{"dir", cfg.output.dir.string()}, {"basename", cfg.output.basename}};
  j["threads"] = cfg.threads;
  return j;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig3-desk"}; }

RunConfig preset(const std::string& name) {
  RunConfig cfg;
  cfg.L0 = 1e-5;
  cfg.M = 1e-11;
  cfg.omega_osc = 1e5;
  cfg.omega_cut = 1e15;
  cfg.control.rel_tol = 1e-6;
  cfg.control.max_axial = 4096;
  cfg.control.max_transverse = 512;
  cfg.output.basename = name;

  if (name == "fig1") {
    cfg.scenario = Scenario::Profile1D;
    cfg.grid.points = 1000;
    return cfg;
  }
  if (name == "fig2") {
    cfg.scenario = Scenario::Sweep;
    cfg.sweep = SweepSpec{"omega_cut", {6e15, 8e15, 9e15, 1e16}};
    cfg.omega_cut = 6e15;
    cfg.grid.points = 1000;
    cfg.grid.refine_start_frac = 0.98;
    cfg.grid.refine_points = 1500;
    return cfg;
  }
  if (name == "fig3") {
    // Full physical parameter set; the transverse mode count makes this the
    // heavy preset (tens of minutes on a couple of cores).
    cfg.scenario = Scenario::Profile3D;
    cfg.Ly = 0.5e-4;
    cfg.Lz = 0.5e-4;
    cfg.control.rel_tol = 1e-2;
    cfg.grid.points = 100;
    return cfg;
  }
  if (name == "fig3-desk") {
    // Reduced-cutoff variant sized for quick runs.
    cfg.scenario = Scenario::Profile3D;
    cfg.Ly = 0.5e-4;
    cfg.Lz = 0.5e-4;
    cfg.omega_cut = 2e14;
    cfg.control.rel_tol = 1e-4;
    cfg.grid.points = 240;
    return cfg;
  }
  throw ConfigError("unknown preset \"" + name + "\" (available: fig1, fig2, fig3, fig3-desk)");
}

namespace {

json peak_to_json(const PeakDiagnostics& p) {
  return {{"height", p.height}, {"location_m", p.location}, {"fwhm_m", p.fwhm}};
}

json base_metadata(const RunConfig& cfg) {
  json meta;
  meta["tool"] = "mobcav";
  meta["version"] = kVersion;
  meta["scenario"] = to_string(cfg.scenario);
  meta["config"] = config_to_json(cfg);
  return meta;
}

RunResult execute_profile1d(const RunConfig& cfg) {
  const Density1DProfile prof =
      density_profile_1d(cfg.cavity1d(), cfg.control, cfg.grid, cfg.threads);
  RunResult res;
  res.table.columns = {"x_m", "e2_zeroth", "b2_zeroth", "e2_first", "b2_first", "rho_corr"};
  res.table.rows.reserve(prof.grid.size());
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    res.table.rows.push_back({prof.grid[i], prof.e2_0[i], prof.b2_0[i], prof.e2_1[i],
                              prof.b2_1[i], prof.rho_corr[i]});
  }
  res.metadata = base_metadata(cfg);
  res.metadata["units"] = {{"x_m", "m"},
                           {"e2_zeroth", "J/m"},
                           {"b2_zeroth", "J/m"},
                           {"e2_first", "J/m"},
                           {"b2_first", "J/m"},
                           {"rho_corr", "J/m"}};
  res.metadata["diagnostics"] = {
      {"truncation", prof.truncation},
      {"truncation_clamped", prof.truncation_clamped},
      {"max_tail_estimate", prof.max_tail_estimate},
      {"rho_corr_peak", peak_to_json(diagnose_peak(prof.grid, prof.rho_corr))}};
  return res;
}

RunResult execute_profile3d(const RunConfig& cfg) {
  const Density3DProfile prof =
      density_profile_3d(cfg.cavity3d(), cfg.control, cfg.grid, cfg.threads);
  RunResult res;
  res.table.columns = {"x_m", "rho0", "delta_rho"};
  res.table.rows.reserve(prof.grid.size());
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    res.table.rows.push_back({prof.grid[i], prof.rho0[i], prof.delta_rho[i]});
  }
  res.metadata = base_metadata(cfg);
  res.metadata["units"] = {{"x_m", "m"}, {"rho0", "J/m^3"}, {"delta_rho", "J/m^3"}};
  res.metadata["diagnostics"] = {{"casimir_constant", prof.casimir_constant},
                                 {"px0_offset", prof.px0_offset},
                                 {"delta_rho_peak_location_m", prof.peak_location},
                                 {"delta_rho_peak_value", prof.peak_value},
                                 {"axial_bound", prof.axial_bound},
                                 {"transverse_bound", prof.transverse_bound},
                                 {"truncation_clamped", prof.truncation_clamped},
                                 {"max_tail_estimate", prof.max_tail_estimate}};
  return res;
}

RunResult execute_spectrum(const RunConfig& cfg) {
  std::vector<ModeIndex3> modes = cfg.spectrum ? cfg.spectrum->modes : std::vector<ModeIndex3>{};
  if (modes.empty()) {
    const SpectrumSpec& sp = *cfg.spectrum;
    for (int mx = 1; mx <= sp.max_mx; ++mx) {
      for (int my = -sp.max_my; my <= sp.max_my; ++my) {
        for (int mz = -sp.max_mz; mz <= sp.max_mz; ++mz) {
          modes.push_back({mx, my, mz});
        }
      }
    }
  }
  const PhotonSpectrum spec = photon_spectrum(modes, cfg.cavity3d(), cfg.control, cfg.threads);
  RunResult res;
  res.table.columns = {"m_x", "m_y", "m_z", "occupation"};
  res.table.rows.reserve(spec.modes.size());
  for (std::size_t i = 0; i < spec.modes.size(); ++i) {
    res.table.rows.push_back({static_cast<double>(spec.modes[i].nx),
                              static_cast<double>(spec.modes[i].ny),
                              static_cast<double>(spec.modes[i].nz), spec.occupation[i]});
  }
  res.metadata = base_metadata(cfg);
  res.metadata["units"] = {{"m_x", "1"}, {"m_y", "1"}, {"m_z", "1"}, {"occupation", "1"}};
  res.metadata["diagnostics"] = {{"max_tail_estimate", spec.max_tail_estimate},
                                 {"mode_count", spec.modes.size()}};
  return res;
}

RunResult execute_sweep(const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep scenario requires a sweep block");
  RunResult res;
  res.table.columns = {"sweep_value", "peak_height", "peak_location", "fwhm"};
  res.metadata = base_metadata(cfg);
  json per_value = json::array();

  for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
    const double v = cfg.sweep->values[i];
    Cavity1DConfig cav = cfg.cavity1d();
    if (cfg.sweep->parameter == "omega_cut") {
      cav.omega_cut = v;
    } else if (cfg.sweep->parameter == "M") {
      cav.M = v;
    } else {
      cav.omega_osc = v;
    }
    const Density1DProfile prof = density_profile_1d(cav, cfg.control, cfg.grid, cfg.threads);
    const PeakDiagnostics peak = diagnose_peak(prof.grid, prof.rho_corr);
    res.table.rows.push_back({v, peak.height, peak.location, peak.fwhm});

    Table t;
    t.columns = {"x_m", "e2_zeroth", "b2_zeroth", "e2_first", "b2_first", "rho_corr"};
    t.rows.reserve(prof.grid.size());
    for (std::size_t p = 0; p < prof.grid.size(); ++p) {
      t.rows.push_back({prof.grid[p], prof.e2_0[p], prof.b2_0[p], prof.e2_1[p], prof.b2_1[p],
                        prof.rho_corr[p]});
    }
    char tag[32];
    std::snprintf(tag, sizeof(tag), "profile_%02zu", i);
    res.extras.emplace_back(tag, std::move(t));

    per_value.push_back({{"value", v},
                         {"truncation", prof.truncation},
                         {"max_tail_estimate", prof.max_tail_estimate},
                         {"rho_corr_peak", peak_to_json(peak)}});
  }
  res.metadata["units"] = {{"sweep_value", "SI unit of the swept parameter"},
                           {"peak_height", "J/m"},
                           {"peak_location", "m"},
                           {"fwhm", "m"}};
  res.metadata["diagnostics"] = {{"parameter", cfg.sweep->parameter}, {"runs", per_value}};
  return res;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::Profile1D: return execute_profile1d(cfg);
    case Scenario::Profile3D: return execute_profile3d(cfg);
    case Scenario::Spectrum3D: return execute_spectrum(cfg);
    case Scenario::Sweep: return execute_sweep(cfg);
  }
  throw ConfigError("unknown scenario");
}

OutputBundle run(const RunConfig& cfg) {
  const RunResult res = execute(cfg);

  // Render everything before touching the filesystem: a failed run leaves no
  // partial data file behind.
  const std::string csv = res.table.to_csv();
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  OutputBundle bundle;
  bundle.data_file = cfg.output.dir / (cfg.output.basename + ".csv");
  files.emplace_back(bundle.data_file, csv);
  for (const auto& [name, table] : res.extras) {
    const auto path = cfg.output.dir / (cfg.output.basename + "." + name + ".csv");
    files.emplace_back(path, table.to_csv());
    bundle.extra_files.push_back(path);
  }
  bundle.meta_file = cfg.output.dir / (cfg.output.basename + ".meta.json");
  files.emplace_back(bundle.meta_file, res.metadata.dump(2) + "\n");

  std::filesystem::create_directories(cfg.output.dir);
  for (const auto& [path, content] : files) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("failed writing output file " + path.string());
  }
  return bundle;
}

}  // namespace mobcav
