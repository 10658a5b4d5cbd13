#pragma once

#include <array>

#include "mobcav/errors.hpp"

namespace mobcav {

/// SI values of the constants every formula in this library carries explicitly.
/// Kept as fields (not compile-time constants) so a scenario can, e.g., audit
/// unit dependence by rescaling them.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double c = 2.99792458e8;        // m/s
};

enum class CutoffScheme { Exponential, Sharp };

/// One-dimensional cavity: fixed wall at x = 0, harmonically bound mobile wall
/// with equilibrium position L0, mass M and oscillation frequency omega_osc.
/// omega_cut is the ultraviolet cutoff (wall plasma frequency scale).
struct Cavity1DConfig {
  double L0 = 0.0;         // m
  double M = 0.0;          // kg
  double omega_osc = 0.0;  // 1/s
  double omega_cut = 0.0;  // 1/s
  PhysicalConstants constants{};
};

/// Three-dimensional cavity, Dirichlet along x (mobile wall at x = L0),
/// periodic transverse box Ly x Lz with Ly == Lz.
struct Cavity3DConfig {
  double L0 = 0.0;  // m, equilibrium length along x
  double Ly = 0.0;  // m
  double Lz = 0.0;  // m
  double M = 0.0;   // kg
  double omega_osc = 0.0;  // 1/s
  double omega_cut = 0.0;  // 1/s
  PhysicalConstants constants{};

  double S() const { return Ly * Lz; }           // transverse cross-section, m^2
  double eta() const { return 1.0 / omega_cut; } // cutoff time parameter, s
};

/// Integer mode label (n_x, n_y, n_z): n_x >= 1 indexes the Dirichlet sine
/// modes along x, n_y and n_z range over all integers (periodic transverse).
struct ModeIndex3 {
  int nx = 1;
  int ny = 0;
  int nz = 0;

  friend bool operator==(const ModeIndex3&, const ModeIndex3&) = default;
};

/// Truncation and tolerance policy for every regularized mode sum.
struct SumControl {
  int max_axial = 4096;       // hard bound on axial indices
  int max_transverse = 512;   // hard bound on |n_y|, |n_z|
  double rel_tol = 1e-6;      // target relative tail tolerance, in (0, 1)
  CutoffScheme cutoff_scheme = CutoffScheme::Exponential;
};

/// Validation: each overload returns its argument unchanged iff every
/// invariant holds, and otherwise throws ConfigError naming all violations.
Cavity1DConfig validate(const Cavity1DConfig& cfg);
Cavity3DConfig validate(const Cavity3DConfig& cfg);
ModeIndex3 validate(const ModeIndex3& n);
SumControl validate(const SumControl& control);

/// Angular frequency of axial mode j: omega_j = j*pi*c/L0. Throws DomainError
/// for j < 1.
double omega_1d(int j, const Cavity1DConfig& cfg);

/// Angular frequency of mode n in the 3D cavity,
///   omega_n = c*sqrt((n_x*pi/L0)^2 + (2*pi)^2 (n_y^2+n_z^2)/S).
/// Reduces bit-exactly to the axial-only value when n_y = n_z = 0.
double omega_3d(const ModeIndex3& n, const Cavity3DConfig& cfg);

struct Wavenumbers3 {
  double qx = 0.0;                       // 1/m
  std::array<double, 2> q_par{0.0, 0.0}; // (q_y, q_z), 1/m
};

/// Wave-vector components of mode n: q_x = pi*n_x/L0,
/// q_par = (2*pi/sqrt(S)) (n_y, n_z).
Wavenumbers3 wavenumbers_3d(const ModeIndex3& n, const Cavity3DConfig& cfg);

}  // namespace mobcav
