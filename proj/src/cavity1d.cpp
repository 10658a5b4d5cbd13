#include "mobcav/cavity1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mobcav/detail/parallel.hpp"

namespace mobcav {

namespace {

constexpr double kPi = std::numbers::pi;

void check_indices(int j, int l, const char* op) {
  if (j < 1 || l < 1) throw DomainError(std::string(op) + ": mode indices must be >= 1");
}

double sign_jl(int j, int l) { return ((j + l) % 2 == 0) ? 1.0 : -1.0; }

// Shared oscillating part of the zeroth-order closed forms,
// hbar c pi / (8 L0^2 sin^2(pi x / L0)). Computed once so that the electric
// and magnetic branches cancel it exactly in the energy density.
double zeroth_oscillating(double x, const Cavity1DConfig& cfg, const char* op) {
  if (!(x > 0.0 && x < cfg.L0)) {
    throw DomainError(std::string(op) + ": x must lie strictly inside (0, L0)");
  }
  const double s = std::sin(kPi * x / cfg.L0);
  const double s2 = s * s;
  const double value = cfg.constants.hbar * cfg.constants.c * kPi / (8.0 * cfg.L0 * cfg.L0 * s2);
  if (!std::isfinite(value)) {
    throw OverflowSignal(std::string(op) + ": sin^2(pi x/L0) underflowed this close to a wall");
  }
  return value;
}

double casimir_constant_1d(const Cavity1DConfig& cfg) {
  return -cfg.constants.hbar * cfg.constants.c * kPi / (24.0 * cfg.L0 * cfg.L0);
}

}  // namespace

Coupling1D coupling_C(int j, int l, const Cavity1DConfig& cfg) {
  check_indices(j, l, "coupling_C");
  const double hbar = cfg.constants.hbar;
  const double wj = omega_1d(j, cfg);
  const double wl = omega_1d(l, cfg);
  const double value = sign_jl(j, l) * std::pow(hbar / 2.0, 1.5) / (cfg.L0 * std::sqrt(cfg.M)) *
                       std::sqrt(wj * wl / cfg.omega_osc);
  return {j, l, value};
}

Amplitude1D amplitude_D(int j, int l, const Cavity1DConfig& cfg) {
  check_indices(j, l, "amplitude_D");
  const double wj = omega_1d(j, cfg);
  const double wl = omega_1d(l, cfg);
  const double value = sign_jl(j, l) / cfg.L0 *
                       std::sqrt(cfg.constants.hbar * wj * wl / (8.0 * cfg.M * cfg.omega_osc)) /
                       (cfg.omega_osc + wj + wl);
  return {j, l, value};
}

double e2_zeroth(double x, const Cavity1DConfig& cfg) {
  return casimir_constant_1d(cfg) + zeroth_oscillating(x, cfg, "e2_zeroth");
}

double b2_zeroth(double x, const Cavity1DConfig& cfg) {
  return casimir_constant_1d(cfg) - zeroth_oscillating(x, cfg, "b2_zeroth");
}

NearWallAsymptotics near_wall_asymptotics(double x, const Cavity1DConfig& cfg) {
  if (!(x > 0.5 * cfg.L0 && x < cfg.L0)) {
    throw DomainError("near_wall_asymptotics: x must lie in (L0/2, L0)");
  }
  const double hbar = cfg.constants.hbar;
  const double c = cfg.constants.c;
  const double d = x - cfg.L0;
  NearWallAsymptotics a;
  a.e2 = hbar * c / (8.0 * kPi * d * d);
  a.b2 = -hbar * c * kPi / (12.0 * cfg.L0 * cfg.L0) - a.e2;
  return a;
}

FirstOrder1D::FirstOrder1D(const Cavity1DConfig& cfg, const SumControl& control) : cfg_(cfg) {
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  bounds_ = truncation_for(tightened_for_truncation(control), w,
                           [&](int j) { return omega_1d(j, cfg_); }, SumAxis::Axial);
  const int n = bounds_.bound;

  // Factorized form of the triple mode sum: the outer index j carries
  //   W_j = (hbar^2 / (L0^3 M omega_osc)) omega_j w(omega_j),
  // and each inner partial sum carries
  //   a(j,l) = (-1)^l omega_l w(omega_l) / (omega_osc + omega_j + omega_l)
  // against a sine (electric) or cosine (magnetic) basis. Symmetric specs:
  // each outer term is a perfect square, hence nonnegative.
  const double pref = cfg.constants.hbar * cfg.constants.hbar /
                      (cfg.L0 * cfg.L0 * cfg.L0 * cfg.M * cfg.omega_osc);
  const double L0 = cfg.L0;
  const double w_osc = cfg.omega_osc;
  const Cavity1DConfig cfg_copy = cfg;

  auto outer = [cfg_copy, w, pref](int j) {
    const double wj = omega_1d(j, cfg_copy);
    return pref * wj * w(wj);
  };
  auto coeff = [cfg_copy, w, w_osc](int j, int l) {
    const double wj = omega_1d(j, cfg_copy);
    const double wl = omega_1d(l, cfg_copy);
    const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    return sgn * wl * w(wl) / (w_osc + wj + wl);
  };
  auto sin_basis = [L0](int l, double x) { return std::sin(l * kPi * x / L0); };
  auto cos_basis = [L0](int l, double x) { return std::cos(l * kPi * x / L0); };

  const double ratio = w(omega_1d(n + 1, cfg)) > 0.0 && w(omega_1d(n, cfg)) > 0.0
                           ? w(omega_1d(n + 1, cfg)) / w(omega_1d(n, cfg))
                           : 0.0;
  sin_spec_ = std::make_shared<const BilinearSumSpec>(n, n, outer, coeff, sin_basis, ratio);
  cos_spec_ = std::make_shared<const BilinearSumSpec>(n, n, outer, coeff, cos_basis, ratio);
}

namespace {

void check_first_order_x(double x, const Cavity1DConfig& cfg, const char* op) {
  if (!(x >= 0.0 && x <= cfg.L0)) {
    throw DomainError(std::string(op) + ": x must lie in [0, L0]");
  }
}

}  // namespace

SumResult FirstOrder1D::e2(double x) const {
  check_first_order_x(x, cfg_, "e2_first");
  return sin_spec_->eval(x);
}

SumResult FirstOrder1D::b2(double x) const {
  check_first_order_x(x, cfg_, "b2_first");
  return cos_spec_->eval(x);
}

namespace {

double converged_value(const SumResult& r, const SumControl& control, const char* op) {
  if (!(r.tail_estimate <= control.rel_tol)) {
    throw NonConvergence(std::string(op) + ": tail estimate " + std::to_string(r.tail_estimate) +
                         " exceeds rel_tol " + std::to_string(control.rel_tol));
  }
  return r.value;
}

}  // namespace

double e2_first(double x, const Cavity1DConfig& cfg, const SumControl& control) {
  FirstOrder1D eval(cfg, control);
  return converged_value(eval.e2(x), control, "e2_first");
}

double b2_first(double x, const Cavity1DConfig& cfg, const SumControl& control) {
  FirstOrder1D eval(cfg, control);
  return converged_value(eval.b2(x), control, "b2_first");
}

double energy_density_correction(double x, const Cavity1DConfig& cfg, const SumControl& control) {
  FirstOrder1D eval(cfg, control);
  const double e = converged_value(eval.e2(x), control, "energy_density_correction");
  const double b = converged_value(eval.b2(x), control, "energy_density_correction");
  return 0.5 * (e + b);
}

double casimir_polder_shift(const PolarizableBody& body, const Cavity1DConfig& cfg,
                            const SumControl& control) {
  if (!(body.x_pb > 0.0 && body.x_pb < cfg.L0)) {
    throw DomainError("casimir_polder_shift: probe position must lie inside (0, L0)");
  }
  if (!std::isfinite(body.alpha_E) || !std::isfinite(body.alpha_M)) {
    throw DomainError("casimir_polder_shift: polarizabilities must be finite");
  }
  double shift = 0.0;
  if (body.alpha_E != 0.0) {
    const double e2 = e2_zeroth(body.x_pb, cfg) + e2_first(body.x_pb, cfg, control);
    shift += -0.5 * body.alpha_E * e2;
  }
  if (body.alpha_M != 0.0) {
    const double b2 = b2_zeroth(body.x_pb, cfg) + b2_first(body.x_pb, cfg, control);
    shift += -0.5 * body.alpha_M * b2;
  }
  return shift;
}

double delta_green_correction(double x, double t, double xp, double tp,
                              const Cavity1DConfig& cfg, int n_max) {
  if (n_max < 1) throw DomainError("delta_green_correction: n_max must be >= 1");
  const double hbar = cfg.constants.hbar;
  const double c = cfg.constants.c;
  NeumaierSum acc;
  for (int j = 1; j <= n_max; ++j) {
    const double wj = omega_1d(j, cfg);
    for (int l = 1; l <= n_max; ++l) {
      const double djl = amplitude_D(j, l, cfg).value;
      for (int r = 1; r <= n_max; ++r) {
        const double wr = omega_1d(r, cfg);
        const double dlr = amplitude_D(l, r, cfg).value;
        acc.add(8.0 * hbar * c * c / (cfg.L0 * std::sqrt(wj * wr)) * djl * dlr *
                std::cos(wj * t - wr * tp) * std::sin(j * kPi * x / cfg.L0) *
                std::sin(r * kPi * xp / cfg.L0));
      }
    }
  }
  return acc.value();
}

std::vector<double> make_grid(double L0, const GridSpec& grid) {
  if (grid.points < 1) throw DomainError("grid: points must be >= 1");
  if (grid.refine_points < 0) throw DomainError("grid: refine_points must be >= 0");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid.points) + grid.refine_points);
  const int n = grid.points;
  for (int i = 1; i <= n; ++i) {
    xs.push_back(L0 * static_cast<double>(i) / (n + 1));
  }
  if (grid.refine_points > 0) {
    if (!(grid.refine_start_frac > 0.0 && grid.refine_start_frac < 1.0)) {
      throw DomainError("grid: refine_start_frac must lie in (0, 1)");
    }
    const double lo = grid.refine_start_frac * L0;
    const int m = grid.refine_points;
    for (int i = 0; i < m; ++i) {
      // Points in [lo, L0), end point excluded.
      xs.push_back(lo + (L0 - lo) * static_cast<double>(i) / m);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

Density1DProfile density_profile_1d(const Cavity1DConfig& cfg, const SumControl& control,
                                    const GridSpec& grid, int threads) {
  Density1DProfile prof;
  prof.config = validate(cfg);
  prof.control = validate(control);
  prof.grid = make_grid(cfg.L0, grid);

  const FirstOrder1D first(cfg, control);
  prof.truncation = first.truncation();
  prof.truncation_clamped = first.truncation_clamped();

  const std::size_t np = prof.grid.size();
  prof.e2_0.resize(np);
  prof.b2_0.resize(np);
  prof.e2_1.resize(np);
  prof.b2_1.resize(np);
  prof.rho_corr.resize(np);
  std::vector<double> tails(np, 0.0);

  detail::parallel_for(np, threads, [&](std::size_t i) {
    const double x = prof.grid[i];
    prof.e2_0[i] = e2_zeroth(x, cfg);
    prof.b2_0[i] = b2_zeroth(x, cfg);
    const SumResult e = first.e2(x);
    const SumResult b = first.b2(x);
    prof.e2_1[i] = e.value;
    prof.b2_1[i] = b.value;
    prof.rho_corr[i] = 0.5 * (e.value + b.value);
    tails[i] = std::max(e.tail_estimate, b.tail_estimate);
  });

  prof.max_tail_estimate = *std::max_element(tails.begin(), tails.end());
  if (!(prof.max_tail_estimate <= control.rel_tol)) {
    throw NonConvergence("density_profile_1d: tail estimate " +
                         std::to_string(prof.max_tail_estimate) + " exceeds rel_tol " +
                         std::to_string(control.rel_tol));
  }
  return prof;
}

}  // namespace mobcav
