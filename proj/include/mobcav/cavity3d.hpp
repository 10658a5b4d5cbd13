#pragma once

#include <span>
#include <vector>

#include "mobcav/cavity1d.hpp"
#include "mobcav/core.hpp"
#include "mobcav/modesum.hpp"

namespace mobcav {

/// Intermode coupling of the instantaneous-basis expansion:
///   g_kj = (-1)^(k_x+j_x) 2 k_x j_x / (j_x^2 - k_x^2)  for k_x != j_x,
///          with transverse indices constrained to k_par = -j_par; 0 otherwise.
struct GCoupling {
  ModeIndex3 k, j;
  double value = 0.0;
};
GCoupling g_coupling(const ModeIndex3& k, const ModeIndex3& j);

/// Derivative of the mode frequency with respect to the mobile-wall position,
/// evaluated at equilibrium: -c^2 pi^2 k_x^2 / (L0^3 omega_k). Always negative.
double domega_dq(const ModeIndex3& k, const Cavity3DConfig& cfg);

/// Linearized wall-field coupling constant:
///   C_kj = (hbar/2) sqrt(hbar/(2 M omega_osc))
///          [ (d omega_k/dq)|_{L0} delta_kj - (g_kj/L0) sqrt(omega_k/omega_j) omega_k ].
/// Not symmetric in (k, j).
struct Coupling3D {
  ModeIndex3 k, j;
  double value = 0.0;
};
Coupling3D coupling_C3(const ModeIndex3& k, const ModeIndex3& j, const Cavity3DConfig& cfg);

/// Dressed-state amplitude D_kj = C_kj / (hbar (omega_osc + omega_k + omega_j)).
struct Amplitude3D {
  ModeIndex3 k, j;
  double value = 0.0;
};
Amplitude3D amplitude_D3(const ModeIndex3& k, const ModeIndex3& j, const Cavity3DConfig& cfg);

/// Average occupation of field mode m in the dressed ground state. The sum
/// over the virtual partner's axial index is truncated per `control`, and each
/// summed virtual mode carries the cutoff weight of `control.cutoff_scheme`.
/// Throws NonConvergence when the tail estimate exceeds control.rel_tol.
double photon_number(const ModeIndex3& m, const Cavity3DConfig& cfg, const SumControl& control);

/// Same occupation for a purely axial mode (m_x, 0, 0), computed from the
/// reduced one-dimensional form
///   hbar/(2 M L0^2 omega_osc) sum_{m'} w(omega_m') omega_m omega_m'
///                                      / (omega_osc + omega_m + omega_m')^2,
/// the m' = m term included. Agrees with photon_number((m_x,0,0)) term by term.
double photon_number_axial(int mx, const Cavity3DConfig& cfg, const SumControl& control);

/// Non-throwing cores used by tests and by the spectrum driver.
SumResult photon_number_result(const ModeIndex3& m, const Cavity3DConfig& cfg,
                               const SumControl& control);
SumResult photon_number_axial_result(int mx, const Cavity3DConfig& cfg,
                                     const SumControl& control);

struct PhotonSpectrum {
  std::vector<ModeIndex3> modes;
  std::vector<double> occupation;  // dimensionless, >= 0
  Cavity3DConfig config;
  SumControl control;
  double max_tail_estimate = 0.0;
};
PhotonSpectrum photon_spectrum(std::span<const ModeIndex3> modes, const Cavity3DConfig& cfg,
                               const SumControl& control, int threads = 0);

/// Fixed-wall renormalized energy density, J/m^3, split into the exact
/// Casimir constant and the cutoff-regularized oscillating mode sum
/// (axial index p_x >= 1):
///   rho_0(x) = -pi^2 hbar c/(1440 L0^4)
///              - sum_p (hbar/(S L0)) cos(2 q_x^p x)
///                      c^2 (q_x^2 + 2|q_par|^2) / (2 omega_p) w(omega_p).
/// The p_x = 0 channel is x-independent; it is reported separately by
/// rho_zeroth_px0_offset and not folded into either part.
struct RhoZerothParts {
  double casimir = 0.0;      // -pi^2 hbar c / (1440 L0^4)
  double oscillating = 0.0;  // position-dependent part at this x
  double tail_estimate = 0.0;  // relative to the local value scale
  double tail_abs = 0.0;       // same bound in J/m^3
};

class RhoZeroth3D {
public:
  RhoZeroth3D(const Cavity3DConfig& cfg, const SumControl& control);
  RhoZerothParts parts(double x) const;
  double operator()(double x) const;

  int axial_bound() const { return axial_.bound; }
  int transverse_bound() const { return transverse_.bound; }
  bool clamped() const { return axial_.clamped || transverse_.clamped; }

private:
  Cavity3DConfig cfg_;
  TruncationBounds axial_, transverse_;
  std::vector<double> coef_;  // per axial index, transverse shells pre-summed
  double boundary_weight_ = 0.0;
};

double rho_zeroth(double x, const Cavity3DConfig& cfg, const SumControl& control);
RhoZerothParts rho_zeroth_parts(double x, const Cavity3DConfig& cfg, const SumControl& control);

/// x-independent offset contributed by the p_x = 0 transverse channel,
/// reported in profile metadata.
double rho_zeroth_px0_offset(const Cavity3DConfig& cfg, const SumControl& control);

/// First-order correction to the field energy density, J/m^3, independent of
/// the transverse position by construction. The triple mode sum runs over the
/// amplitude products D_mj D_jr restricted to equal external transverse
/// momenta; it is factorized over the shared index and grouped into
/// transverse shells of equal n_y^2 + n_z^2, making evaluation
/// O(shells * N^2) per point.
class DeltaRho3D {
public:
  DeltaRho3D(const Cavity3DConfig& cfg, const SumControl& control);

  std::vector<SumResult> eval_batch(std::span<const double> xs, int threads = 0) const;
  SumResult eval(double x) const;

  int axial_bound() const { return axial_.bound; }
  int transverse_bound() const { return transverse_.bound; }
  bool clamped() const { return axial_.clamped || transverse_.clamped; }

private:
  struct Shell {
    long long s = 0;      // n_y^2 + n_z^2
    double mult = 0.0;    // lattice multiplicity inside the truncation square
  };

  Cavity3DConfig cfg_;
  SumControl control_;
  TruncationBounds axial_, transverse_;
  std::vector<Shell> shells_;
};

double delta_rho(double x, const Cavity3DConfig& cfg, const SumControl& control);

struct Density3DProfile {
  std::vector<double> grid;       // m
  std::vector<double> rho0;       // J/m^3
  std::vector<double> delta_rho;  // J/m^3

  double casimir_constant = 0.0;  // -pi^2 hbar c / (1440 L0^4)
  double px0_offset = 0.0;        // J/m^3, reported but not added to rho0
  double peak_location = 0.0;     // m, extremum of |delta_rho| over the grid
  double peak_value = 0.0;        // J/m^3, signed value at the extremum

  Cavity3DConfig config;
  SumControl control;
  int axial_bound = 0;
  int transverse_bound = 0;
  bool truncation_clamped = false;
  double max_tail_estimate = 0.0;
};

Density3DProfile density_profile_3d(const Cavity3DConfig& cfg, const SumControl& control,
                                    const GridSpec& grid, int threads = 0);

}  // namespace mobcav
