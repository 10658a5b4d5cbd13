#include "mobcav/core.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace mobcav {

namespace {

void require(std::vector<std::string>& errs, bool ok, const char* msg) {
  if (!ok) errs.emplace_back(msg);
}

[[noreturn]] void fail(const char* what, const std::vector<std::string>& errs) {
  std::string msg = what;
  msg += ":";
  for (const auto& e : errs) {
    msg += "\n  - ";
    msg += e;
  }
  throw ConfigError(msg);
}

// Shared by omega_1d and the transverse-free branch of omega_3d so that the
// two agree bit-exactly.
double axial_omega(int n, double L0, double c) {
  return static_cast<double>(n) * std::numbers::pi * c / L0;
}

}  // namespace

Cavity1DConfig validate(const Cavity1DConfig& cfg) {
  std::vector<std::string> errs;
  require(errs, cfg.L0 > 0.0, "L0 must be > 0");
  require(errs, cfg.M > 0.0, "M must be > 0");
  require(errs, cfg.omega_osc > 0.0, "omega_osc must be > 0");
  require(errs, cfg.omega_cut > 0.0, "omega_cut must be > 0");
  require(errs, !(cfg.omega_cut > 0.0 && cfg.omega_osc > 0.0) || cfg.omega_cut > cfg.omega_osc,
          "omega_cut must exceed omega_osc");
  require(errs, cfg.constants.hbar > 0.0, "hbar must be > 0");
  require(errs, cfg.constants.c > 0.0, "c must be > 0");
  if (!errs.empty()) fail("invalid 1D cavity configuration", errs);
  return cfg;
}

Cavity3DConfig validate(const Cavity3DConfig& cfg) {
  std::vector<std::string> errs;
  require(errs, cfg.L0 > 0.0, "L0 must be > 0");
  require(errs, cfg.Ly > 0.0, "Ly must be > 0");
  require(errs, cfg.Lz > 0.0, "Lz must be > 0");
  require(errs, cfg.Ly == cfg.Lz, "Ly and Lz must be equal");
  require(errs, cfg.M > 0.0, "M must be > 0");
  require(errs, cfg.omega_osc > 0.0, "omega_osc must be > 0");
  require(errs, cfg.omega_cut > 0.0, "omega_cut must be > 0");
  require(errs, !(cfg.omega_cut > 0.0 && cfg.omega_osc > 0.0) || cfg.omega_cut > cfg.omega_osc,
          "omega_cut must exceed omega_osc");
  require(errs, cfg.constants.hbar > 0.0, "hbar must be > 0");
  require(errs, cfg.constants.c > 0.0, "c must be > 0");
  if (!errs.empty()) fail("invalid 3D cavity configuration", errs);
  return cfg;
}

ModeIndex3 validate(const ModeIndex3& n) {
  if (n.nx < 1) {
    throw ConfigError("invalid mode index: n_x must be >= 1 (sine modes vanish for n_x = 0)");
  }
  return n;
}

SumControl validate(const SumControl& control) {
  std::vector<std::string> errs;
  require(errs, control.max_axial >= 1, "max_axial must be >= 1");
  require(errs, control.max_transverse >= 0, "max_transverse must be >= 0");
  require(errs, control.rel_tol > 0.0 && control.rel_tol < 1.0, "rel_tol must lie in (0, 1)");
  if (!errs.empty()) fail("invalid sum control", errs);
  return control;
}

double omega_1d(int j, const Cavity1DConfig& cfg) {
  if (j < 1) throw DomainError("omega_1d: mode index must be >= 1");
  return axial_omega(j, cfg.L0, cfg.constants.c);
}

double omega_3d(const ModeIndex3& n, const Cavity3DConfig& cfg) {
  if (n.nx < 1) throw DomainError("omega_3d: n_x must be >= 1");
  if (n.ny == 0 && n.nz == 0) return axial_omega(n.nx, cfg.L0, cfg.constants.c);
  const double qx = static_cast<double>(n.nx) * std::numbers::pi / cfg.L0;
  const double tsq = static_cast<double>(n.ny) * n.ny + static_cast<double>(n.nz) * n.nz;
  const double qp2 = (2.0 * std::numbers::pi) * (2.0 * std::numbers::pi) * tsq / cfg.S();
  return cfg.constants.c * std::sqrt(qx * qx + qp2);
}

Wavenumbers3 wavenumbers_3d(const ModeIndex3& n, const Cavity3DConfig& cfg) {
  if (n.nx < 1) throw DomainError("wavenumbers_3d: n_x must be >= 1");
  Wavenumbers3 w;
  w.qx = static_cast<double>(n.nx) * std::numbers::pi / cfg.L0;
  const double unit = 2.0 * std::numbers::pi / std::sqrt(cfg.S());
  w.q_par = {unit * n.ny, unit * n.nz};
  return w;
}

}  // namespace mobcav
