#pragma once

#include <memory>
#include <vector>

#include "mobcav/core.hpp"
#include "mobcav/modesum.hpp"

namespace mobcav {

/// Wall-field coupling constant C_jl for the axial mode pair (j, l):
///   C_jl = (-1)^(j+l) (hbar/2)^(3/2) sqrt(omega_j omega_l / omega_osc) / (L0 sqrt(M)).
/// Symmetric in (j, l), sign (-1)^(j+l).
struct Coupling1D {
  int j = 0;
  int l = 0;
  double value = 0.0;
};
Coupling1D coupling_C(int j, int l, const Cavity1DConfig& cfg);

/// Dimensionless dressed-ground-state amplitude of the two-photon plus
/// one-phonon component:
///   D_jl = (-1)^(j+l) sqrt(hbar omega_j omega_l / (8 M omega_osc))
///          / (L0 (omega_osc + omega_j + omega_l)),
/// equal to C_jl / (hbar (omega_osc + omega_j + omega_l)).
struct Amplitude1D {
  int j = 0;
  int l = 0;
  double value = 0.0;
};
Amplitude1D amplitude_D(int j, int l, const Cavity1DConfig& cfg);

/// Fixed-wall (zeroth-order) renormalized field fluctuations, J/m:
///   <E_z^2>_0 = -hbar c pi/(24 L0^2) + hbar c pi/(8 L0^2 sin^2(pi x/L0))
///   <B_y^2>_0 = -hbar c pi/(24 L0^2) - hbar c pi/(8 L0^2 sin^2(pi x/L0))
/// Valid on the open interval (0, L0); the closed forms diverge at the walls.
double e2_zeroth(double x, const Cavity1DConfig& cfg);
double b2_zeroth(double x, const Cavity1DConfig& cfg);

struct NearWallAsymptotics {
  double e2 = 0.0;  // hbar c / (8 pi (x-L0)^2)
  double b2 = 0.0;  // -hbar c pi/(12 L0^2) - hbar c/(8 pi (x-L0)^2)
};

/// Leading behaviour of the zeroth-order fluctuations near the mobile wall.
/// Restricted to the near-wall half L0/2 < x < L0. The divergent parts of the
/// pair cancel: e2 + b2 == -hbar c pi/(12 L0^2) identically.
NearWallAsymptotics near_wall_asymptotics(double x, const Cavity1DConfig& cfg);

/// Factorized evaluator for the first-order (mobile-wall) corrections.
/// Builds the coefficient tables once per (config, control) and reuses them
/// across grid points; evaluation is O(N^2) per point at truncation N.
class FirstOrder1D {
public:
  FirstOrder1D(const Cavity1DConfig& cfg, const SumControl& control);

  /// <E_z^2>_1(x) with its tail estimate; x in [0, L0].
  SumResult e2(double x) const;
  /// <B_y^2>_1(x) with its tail estimate; x in [0, L0].
  SumResult b2(double x) const;

  int truncation() const { return bounds_.bound; }
  bool truncation_clamped() const { return bounds_.clamped; }

private:
  Cavity1DConfig cfg_;
  TruncationBounds bounds_;
  std::shared_ptr<const BilinearSumSpec> sin_spec_;
  std::shared_ptr<const BilinearSumSpec> cos_spec_;
};

/// One-shot first-order corrections (J/m). Throw NonConvergence when the tail
/// estimate exceeds control.rel_tol. Both vanish nowhere below zero: the
/// factorized form is a weighted sum of squares.
double e2_first(double x, const Cavity1DConfig& cfg, const SumControl& control);
double b2_first(double x, const Cavity1DConfig& cfg, const SumControl& control);

/// First-order correction to the total field energy density,
/// (e2_first + b2_first)/2.
double energy_density_correction(double x, const Cavity1DConfig& cfg, const SumControl& control);

/// Static polarizabilities and position of a probe body inside the cavity.
struct PolarizableBody {
  double alpha_E = 0.0;
  double alpha_M = 0.0;
  double x_pb = 0.0;  // m, 0 < x_pb < L0
};

/// Casimir-Polder interaction energy of the probe with the total (zeroth plus
/// first order) field fluctuations:
///   dE = -1/2 alpha_E <E^2(x_pb)> - 1/2 alpha_M <B^2(x_pb)>.
/// Each field average is evaluated only when its polarizability is nonzero.
double casimir_polder_shift(const PolarizableBody& body, const Cavity1DConfig& cfg,
                            const SumControl& control);

/// First-order correction to the renormalized field propagator at two
/// spacetime points, truncating every mode index at n_max. Symmetric under
/// (x,t) <-> (xp,tp); used as a small-truncation diagnostic.
double delta_green_correction(double x, double t, double xp, double tp,
                              const Cavity1DConfig& cfg, int n_max);

/// Evaluation grid: `points` uniformly spaced interior positions, optionally
/// refined with `refine_points` extra positions in
/// [refine_start_frac * L0, L0).
struct GridSpec {
  int points = 1000;
  double refine_start_frac = 0.0;
  int refine_points = 0;
};
std::vector<double> make_grid(double L0, const GridSpec& grid);

/// Spatial profile of all 1D observables on a common grid. rho_corr is
/// (e2_1 + b2_1)/2 pointwise by construction.
struct Density1DProfile {
  std::vector<double> grid;   // m, strictly increasing, inside (0, L0)
  std::vector<double> e2_0;   // J/m
  std::vector<double> b2_0;   // J/m
  std::vector<double> e2_1;   // J/m
  std::vector<double> b2_1;   // J/m
  std::vector<double> rho_corr;  // J/m

  Cavity1DConfig config;
  SumControl control;
  int truncation = 0;
  bool truncation_clamped = false;
  double max_tail_estimate = 0.0;
};

/// Evaluate the full 1D profile; grid points are distributed over `threads`
/// workers (0 = hardware concurrency) with a fixed per-point summation order,
/// so results are identical for every thread count.
Density1DProfile density_profile_1d(const Cavity1DConfig& cfg, const SumControl& control,
                                    const GridSpec& grid, int threads = 0);

}  // namespace mobcav
