#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mobcav/cavity1d.hpp"
#include "mobcav/cavity3d.hpp"
#include "mobcav/core.hpp"

namespace mobcav {

enum class Scenario { Profile1D, Profile3D, Spectrum3D, Sweep };

std::string to_string(Scenario s);

struct SweepSpec {
  std::string parameter;        // one of: omega_cut, M, omega_osc
  std::vector<double> values;
};

struct SpectrumSpec {
  std::vector<ModeIndex3> modes;  // explicit list; empty means use the bounds
  int max_mx = 0;                 // box bounds: m_x in 1..max_mx,
  int max_my = 0;                 //             m_y in -max_my..max_my,
  int max_mz = 0;                 //             m_z in -max_mz..max_mz
};

struct OutputSpec {
  std::filesystem::path dir = ".";
  std::string basename = "run";
};

/// Full description of one run. The 1D cavity block doubles as the axial part
/// of the 3D one; Ly/Lz are required only for 3D scenarios.
struct RunConfig {
  Scenario scenario = Scenario::Profile1D;
  double L0 = 0.0;
  double Ly = 0.0;
  double Lz = 0.0;
  double M = 0.0;
  double omega_osc = 0.0;
  double omega_cut = 0.0;
  PhysicalConstants constants{};
  SumControl control{};
  GridSpec grid{};
  std::optional<SweepSpec> sweep;
  std::optional<SpectrumSpec> spectrum;
  OutputSpec output{};
  int threads = 0;  // 0 = hardware concurrency

  Cavity1DConfig cavity1d() const;
  Cavity3DConfig cavity3d() const;
};

/// Parse and fully validate a JSON run configuration. On failure throws
/// ConfigError with one diagnostic per problem (every problem reported, not
/// just the first).
RunConfig parse_config(const std::string& json_text);

/// Bundled parameter sets: "fig1", "fig2", "fig3", "fig3-desk".
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Canonical JSON echo of a configuration; parse_config(dump) round-trips.
nlohmann::json config_to_json(const RunConfig& cfg);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// A rectangular table destined for one CSV file.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

/// Peak diagnostics of a sampled profile: height and location of the maximum
/// plus the width of the contiguous region above half maximum (clipped at the
/// sampled window's edges when the region touches them).
struct PeakDiagnostics {
  double height = 0.0;
  double location = 0.0;
  double fwhm = 0.0;
};
PeakDiagnostics diagnose_peak(const std::vector<double>& grid, const std::vector<double>& values);

/// One run's products, kept in memory until everything succeeded.
struct RunResult {
  Table table;                                          // main data file
  std::vector<std::pair<std::string, Table>> extras;    // e.g. per-sweep-value profiles
  nlohmann::json metadata;
};

RunResult execute(const RunConfig& cfg);

struct OutputBundle {
  std::filesystem::path data_file;
  std::filesystem::path meta_file;
  std::vector<std::filesystem::path> extra_files;
};

/// Execute and then write <basename>.csv, <basename>.meta.json and any extra
/// tables under cfg.output.dir. Nothing is written unless the computation
/// completed.
OutputBundle run(const RunConfig& cfg);

}  // namespace mobcav
