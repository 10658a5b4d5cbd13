#include "mobcav/cavity3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "mobcav/detail/parallel.hpp"

namespace mobcav {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mode(const ModeIndex3& n, const char* op) {
  if (n.nx < 1) throw DomainError(std::string(op) + ": n_x must be >= 1");
}

// Frequency of an axial index paired with a squared transverse magnitude
// tsq = n_y^2 + n_z^2. Mirrors omega_3d exactly, including the bit-exact
// axial reduction at tsq = 0.
double omega_ns(int nx, double tsq, const Cavity3DConfig& cfg) {
  if (tsq == 0.0) return static_cast<double>(nx) * kPi * cfg.constants.c / cfg.L0;
  const double qx = static_cast<double>(nx) * kPi / cfg.L0;
  const double qp2 = (2.0 * kPi) * (2.0 * kPi) * tsq / cfg.S();
  return cfg.constants.c * std::sqrt(qx * qx + qp2);
}

double g_axial(int kx, int jx) {
  if (kx == jx) return 0.0;
  const double sgn = ((kx + jx) % 2 == 0) ? 1.0 : -1.0;
  return sgn * 2.0 * kx * jx /
         (static_cast<double>(jx) * jx - static_cast<double>(kx) * kx);
}

double tail_relative(double tail_abs, double scale) {
  const double s = std::max(std::abs(scale), tail_abs);
  return s > 0.0 ? tail_abs / s : 0.0;
}

double converged(const SumResult& r, const SumControl& control, const char* op) {
  if (!(r.tail_estimate <= control.rel_tol)) {
    throw NonConvergence(std::string(op) + ": tail estimate " + std::to_string(r.tail_estimate) +
                         " exceeds rel_tol " + std::to_string(control.rel_tol));
  }
  return r.value;
}

// Lattice multiplicity of each transverse shell s = n_y^2 + n_z^2 inside the
// truncation square |n_y|, |n_z| <= T, ascending in s.
std::map<long long, double> transverse_shells(int T) {
  std::map<long long, double> shells;
  for (int ty = -T; ty <= T; ++ty) {
    for (int tz = -T; tz <= T; ++tz) {
      shells[static_cast<long long>(ty) * ty + static_cast<long long>(tz) * tz] += 1.0;
    }
  }
  return shells;
}

}  // namespace

GCoupling g_coupling(const ModeIndex3& k, const ModeIndex3& j) {
  check_mode(k, "g_coupling");
  check_mode(j, "g_coupling");
  GCoupling g{k, j, 0.0};
  if (k.ny == -j.ny && k.nz == -j.nz) g.value = g_axial(k.nx, j.nx);
  return g;
}

double domega_dq(const ModeIndex3& k, const Cavity3DConfig& cfg) {
  check_mode(k, "domega_dq");
  const double c = cfg.constants.c;
  return -c * c * kPi * kPi * static_cast<double>(k.nx) * k.nx /
         (cfg.L0 * cfg.L0 * cfg.L0 * omega_3d(k, cfg));
}

Coupling3D coupling_C3(const ModeIndex3& k, const ModeIndex3& j, const Cavity3DConfig& cfg) {
  check_mode(k, "coupling_C3");
  check_mode(j, "coupling_C3");
  const double hbar = cfg.constants.hbar;
  double bracket = 0.0;
  if (k == j) {
    bracket = domega_dq(k, cfg);
  } else if (k.ny == -j.ny && k.nz == -j.nz && k.nx != j.nx) {
    const double wk = omega_3d(k, cfg);
    const double wj = omega_3d(j, cfg);
    bracket = -g_axial(k.nx, j.nx) / cfg.L0 * std::sqrt(wk / wj) * wk;
  }
  const double value = hbar / 2.0 * std::sqrt(hbar / (2.0 * cfg.M * cfg.omega_osc)) * bracket;
  return {k, j, value};
}

Amplitude3D amplitude_D3(const ModeIndex3& k, const ModeIndex3& j, const Cavity3DConfig& cfg) {
  const Coupling3D c3 = coupling_C3(k, j, cfg);
  const double value = c3.value / (cfg.constants.hbar *
                                   (cfg.omega_osc + omega_3d(k, cfg) + omega_3d(j, cfg)));
  return {k, j, value};
}

SumResult photon_number_result(const ModeIndex3& m, const Cavity3DConfig& cfg,
                               const SumControl& control) {
  check_mode(m, "photon_number");
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  const double tsq = static_cast<double>(m.ny) * m.ny + static_cast<double>(m.nz) * m.nz;
  auto omega_of = [&](int i) { return omega_ns(i, tsq, cfg); };
  const TruncationBounds tb =
      truncation_for(tightened_for_truncation(control), w, omega_of, SumAxis::Axial);
  const int N = tb.bound;

  const double hbar = cfg.constants.hbar;
  const double c = cfg.constants.c;
  const double L0 = cfg.L0;
  const double wm = omega_ns(m.nx, tsq, cfg);
  const double mx = static_cast<double>(m.nx);

  NeumaierSum acc;
  double last_off = 0.0;
  for (int i = 1; i <= std::max(N, m.nx); ++i) {
    if (i == m.nx) {
      // Diagonal contribution, weighted as the m' = m member of the sum.
      const double diag = std::pow(kPi, 4) * hbar * std::pow(c, 4) * std::pow(mx, 4) /
                          (2.0 * cfg.M * std::pow(L0, 6) * cfg.omega_osc * wm * wm *
                           (cfg.omega_osc + 2.0 * wm) * (cfg.omega_osc + 2.0 * wm));
      acc.add(diag * w(wm));
      continue;
    }
    if (i > N) break;
    const double wp = omega_ns(i, tsq, cfg);
    const double mp = static_cast<double>(i);
    const double num1 = (mx * mp) * (mx * mp);
    const double den1 = (mp * mp - mx * mx) * (mp * mp - mx * mx);
    const double dsq = (wm * wm - wp * wp) * (wm * wm - wp * wp);
    const double den2 = cfg.omega_osc * wm * wp * (cfg.omega_osc + wm + wp) *
                        (cfg.omega_osc + wm + wp);
    const double term = hbar / (2.0 * cfg.M * L0 * L0) * num1 / den1 * dsq / den2 * w(wp);
    acc.add(term);
    last_off = term;
  }

  SumResult res;
  res.value = acc.value();
  res.terms_used = N + (m.nx > N ? 1 : 0);
  const double w_last = w(omega_of(N));
  const double w_next = w(omega_of(N + 1));
  const double r = w_last > 0.0 ? std::min(w_next / w_last, 1.0) : 0.0;
  if (r >= 1.0 && w_next > 0.0) {
    res.tail_estimate = std::numeric_limits<double>::infinity();
  } else if (r > 0.0) {
    res.tail_estimate = tail_relative(std::abs(last_off) * r / (1.0 - r), res.value);
  }
  return res;
}

SumResult photon_number_axial_result(int mx, const Cavity3DConfig& cfg,
                                     const SumControl& control) {
  if (mx < 1) throw DomainError("photon_number_axial: m_x must be >= 1");
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  auto omega_of = [&](int i) { return omega_ns(i, 0.0, cfg); };
  const TruncationBounds tb =
      truncation_for(tightened_for_truncation(control), w, omega_of, SumAxis::Axial);
  const int N = tb.bound;

  const double wm = omega_ns(mx, 0.0, cfg);
  const double pref = cfg.constants.hbar / (2.0 * cfg.M * cfg.L0 * cfg.L0 * cfg.omega_osc);

  NeumaierSum acc;
  double last = 0.0;
  for (int i = 1; i <= std::max(N, mx); ++i) {
    if (i > N && i != mx) break;
    const double wp = omega_ns(i, 0.0, cfg);
    const double den = cfg.omega_osc + wm + wp;
    const double term = w(wp) * wm * wp / (den * den);
    acc.add(term);
    if (i != mx) last = term;
  }

  SumResult res;
  res.value = pref * acc.value();
  res.terms_used = std::max(N, mx);
  const double w_last = w(omega_of(N));
  const double w_next = w(omega_of(N + 1));
  const double r = w_last > 0.0 ? std::min(w_next / w_last, 1.0) : 0.0;
  if (r >= 1.0 && w_next > 0.0) {
    res.tail_estimate = std::numeric_limits<double>::infinity();
  } else if (r > 0.0) {
    res.tail_estimate = tail_relative(pref * std::abs(last) * r / (1.0 - r), res.value);
  }
  return res;
}

double photon_number(const ModeIndex3& m, const Cavity3DConfig& cfg, const SumControl& control) {
  return converged(photon_number_result(m, cfg, control), control, "photon_number");
}

double photon_number_axial(int mx, const Cavity3DConfig& cfg, const SumControl& control) {
  return converged(photon_number_axial_result(mx, cfg, control), control, "photon_number_axial");
}

PhotonSpectrum photon_spectrum(std::span<const ModeIndex3> modes, const Cavity3DConfig& cfg,
                               const SumControl& control, int threads) {
  PhotonSpectrum spec;
  spec.config = validate(cfg);
  spec.control = validate(control);
  spec.modes.assign(modes.begin(), modes.end());
  for (const auto& m : spec.modes) check_mode(m, "photon_spectrum");
  spec.occupation.resize(spec.modes.size());
  std::vector<double> tails(spec.modes.size(), 0.0);
  detail::parallel_for(spec.modes.size(), threads, [&](std::size_t i) {
    const SumResult r = photon_number_result(spec.modes[i], cfg, control);
    spec.occupation[i] = r.value;
    tails[i] = r.tail_estimate;
  });
  spec.max_tail_estimate =
      spec.modes.empty() ? 0.0 : *std::max_element(tails.begin(), tails.end());
  if (!(spec.max_tail_estimate <= control.rel_tol)) {
    throw NonConvergence("photon_spectrum: tail estimate " +
                         std::to_string(spec.max_tail_estimate) + " exceeds rel_tol " +
                         std::to_string(control.rel_tol));
  }
  return spec;
}

RhoZeroth3D::RhoZeroth3D(const Cavity3DConfig& cfg, const SumControl& control) : cfg_(cfg) {
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  const double c = cfg.constants.c;
  const SumControl tight = tightened_for_truncation(control);
  axial_ = truncation_for(tight, w, [&](int p) { return omega_ns(p, 0.0, cfg_); },
                          SumAxis::Axial);
  transverse_ = truncation_for(
      tight, w, [&](int t) { return 2.0 * kPi * c * t / std::sqrt(cfg_.S()); },
      SumAxis::Transverse);

  const auto shells = transverse_shells(transverse_.bound);
  const double hbar = cfg.constants.hbar;
  coef_.assign(static_cast<std::size_t>(axial_.bound), 0.0);
  for (int p = 1; p <= axial_.bound; ++p) {
    const double qx = static_cast<double>(p) * kPi / cfg.L0;
    NeumaierSum acc;
    for (const auto& [s, mult] : shells) {
      const double tsq = static_cast<double>(s);
      const double omega = omega_ns(p, tsq, cfg);
      const double qp2 = (2.0 * kPi) * (2.0 * kPi) * tsq / cfg.S();
      acc.add(mult * hbar / (cfg.S() * cfg.L0) * c * c * (qx * qx + 2.0 * qp2) /
              (2.0 * omega) * w(omega));
    }
    coef_[static_cast<std::size_t>(p - 1)] = acc.value();
  }

  const double w_ax = w(omega_ns(axial_.bound + 1, 0.0, cfg));
  const double t_excl = static_cast<double>(transverse_.bound + 1);
  const double w_tr = w(2.0 * kPi * c * t_excl / std::sqrt(cfg.S()));
  boundary_weight_ = std::max(w_ax, w_tr);
}

RhoZerothParts RhoZeroth3D::parts(double x) const {
  if (!(x > 0.0 && x < cfg_.L0)) {
    throw DomainError("rho_zeroth: x must lie strictly inside (0, L0)");
  }
  RhoZerothParts out;
  out.casimir = -kPi * kPi * cfg_.constants.hbar * cfg_.constants.c /
                (1440.0 * cfg_.L0 * cfg_.L0 * cfg_.L0 * cfg_.L0);
  NeumaierSum acc;
  for (std::size_t p = 0; p < coef_.size(); ++p) {
    const double qx = static_cast<double>(p + 1) * kPi / cfg_.L0;
    acc.add(-std::cos(2.0 * qx * x) * coef_[p]);
  }
  out.oscillating = acc.value();
  // Conservative diagnostic: cutoff weight left at the first excluded index
  // on either truncation boundary, plus the geometric remainder of the last
  // retained axial coefficient.
  const double last = std::abs(coef_.back());
  double tail_abs = boundary_weight_ * std::max(std::abs(out.oscillating), last);
  if (coef_.size() >= 2 && std::abs(coef_[coef_.size() - 2]) > 0.0) {
    const double r = std::min(last / std::abs(coef_[coef_.size() - 2]), 0.999);
    tail_abs += last * r / (1.0 - r);
  }
  out.tail_abs = tail_abs;
  out.tail_estimate =
      tail_abs / std::max({std::abs(out.casimir), std::abs(out.oscillating), tail_abs});
  return out;
}

double RhoZeroth3D::operator()(double x) const {
  const RhoZerothParts p = parts(x);
  return p.casimir + p.oscillating;
}

double rho_zeroth(double x, const Cavity3DConfig& cfg, const SumControl& control) {
  const RhoZeroth3D rz(cfg, control);
  const RhoZerothParts p = rz.parts(x);
  if (!(p.tail_estimate <= control.rel_tol)) {
    throw NonConvergence("rho_zeroth: tail estimate " + std::to_string(p.tail_estimate) +
                         " exceeds rel_tol " + std::to_string(control.rel_tol));
  }
  return p.casimir + p.oscillating;
}

RhoZerothParts rho_zeroth_parts(double x, const Cavity3DConfig& cfg, const SumControl& control) {
  return RhoZeroth3D(cfg, control).parts(x);
}

double rho_zeroth_px0_offset(const Cavity3DConfig& cfg, const SumControl& control) {
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  const double c = cfg.constants.c;
  const TruncationBounds tb = truncation_for(
      tightened_for_truncation(control), w,
      [&](int t) { return 2.0 * kPi * c * t / std::sqrt(cfg.S()); }, SumAxis::Transverse);
  const auto shells = transverse_shells(tb.bound);
  NeumaierSum acc;
  for (const auto& [s, mult] : shells) {
    if (s == 0) continue;  // no mode content at zero frequency
    const double tsq = static_cast<double>(s);
    const double qp2 = (2.0 * kPi) * (2.0 * kPi) * tsq / cfg.S();
    const double omega = c * std::sqrt(qp2);
    acc.add(-mult * cfg.constants.hbar / (cfg.S() * cfg.L0) * c * c * (2.0 * qp2) /
            (2.0 * omega) * w(omega));
  }
  return acc.value();
}

DeltaRho3D::DeltaRho3D(const Cavity3DConfig& cfg, const SumControl& control)
    : cfg_(cfg), control_(control) {
  const CutoffWeight w{control.cutoff_scheme, cfg.omega_cut};
  const double c = cfg.constants.c;
  const SumControl tight = tightened_for_truncation(control);
  axial_ = truncation_for(tight, w, [&](int p) { return omega_ns(p, 0.0, cfg_); },
                          SumAxis::Axial);
  transverse_ = truncation_for(
      tight, w, [&](int t) { return 2.0 * kPi * c * t / std::sqrt(cfg_.S()); },
      SumAxis::Transverse);
  for (const auto& [s, mult] : transverse_shells(transverse_.bound)) {
    shells_.push_back({s, mult});
  }
}

std::vector<SumResult> DeltaRho3D::eval_batch(std::span<const double> xs, int threads) const {
  const int N = axial_.bound;
  const std::size_t np = xs.size();
  for (double x : xs) {
    if (!(x >= 0.0 && x <= cfg_.L0)) throw DomainError("delta_rho: x must lie in [0, L0]");
  }

  const double hbar = cfg_.constants.hbar;
  const double c = cfg_.constants.c;
  const double L0 = cfg_.L0;
  const double S = cfg_.S();
  const double inv_c2 = 1.0 / (c * c);
  const double pref_D = 0.5 * std::sqrt(hbar / (2.0 * cfg_.M * cfg_.omega_osc));
  const CutoffWeight w{control_.cutoff_scheme, cfg_.omega_cut};

  // Point-level axial bases, shared by every shell.
  std::vector<double> sinx(np * N), cosx(np * N);
  for (std::size_t i = 0; i < np; ++i) {
    for (int m = 0; m < N; ++m) {
      const double arg = static_cast<double>(m + 1) * kPi * xs[i] / L0;
      sinx[i * N + m] = std::sin(arg);
      cosx[i * N + m] = std::cos(arg);
    }
  }

  std::vector<NeumaierSum> acc(np);
  std::vector<double> last_shell(np, 0.0);

  // Per-shell tables, x independent.
  std::vector<double> omega(N), wgt(N), sq(N), qx(N), ddiag(N);
  const std::size_t nn = static_cast<std::size_t>(N) * N;
  std::vector<double> A1(nn), B1(nn), C1(nn), A2(nn), B2(nn), C2(nn);

  for (const Shell& shell : shells_) {
    const double tsq = static_cast<double>(shell.s);
    const double qp2_s = (2.0 * kPi) * (2.0 * kPi) * tsq / S;
    for (int m = 0; m < N; ++m) {
      omega[m] = omega_ns(m + 1, tsq, cfg_);
      wgt[m] = w(omega[m]);
      sq[m] = std::sqrt(omega[m]);
      qx[m] = static_cast<double>(m + 1) * kPi / L0;
      ddiag[m] = pref_D * (-c * c * kPi * kPi * static_cast<double>(m + 1) * (m + 1) /
                           (L0 * L0 * L0 * omega[m])) /
                 (cfg_.omega_osc + 2.0 * omega[m]);
    }
    // Amplitude products along the retained transverse channels. The shared
    // index j sits at the opposite transverse momentum, so within this
    // pairing the axial-diagonal entries survive only on the s = 0 shell.
    for (int jj = 0; jj < N; ++jj) {
      for (int m = 0; m < N; ++m) {
        double d1;  // D_{m j}
        double d2;  // D_{j r}, r at the same axial slot as m
        if (m == jj) {
          d1 = shell.s == 0 ? ddiag[m] * wgt[m] : 0.0;
          d2 = shell.s == 0 ? ddiag[m] : 0.0;
        } else {
          const double g_mj = g_axial(m + 1, jj + 1);
          d1 = pref_D * (-g_mj / L0 * (sq[m] / sq[jj]) * omega[m]) /
               (cfg_.omega_osc + omega[m] + omega[jj]) * wgt[m];
          const double g_jr = g_axial(jj + 1, m + 1);
          d2 = pref_D * (-g_jr / L0 * (sq[jj] / sq[m]) * omega[jj]) /
               (cfg_.omega_osc + omega[jj] + omega[m]);
        }
        const std::size_t idx = static_cast<std::size_t>(jj) * N + m;
        A1[idx] = d1 * sq[m];
        B1[idx] = d1 / sq[m];
        C1[idx] = d1 * qx[m] / sq[m];
        const double d2w = d2 * wgt[m];
        A2[idx] = d2w * sq[m];
        B2[idx] = d2w / sq[m];
        C2[idx] = d2w * qx[m] / sq[m];
      }
    }

    detail::parallel_for(np, threads, [&](std::size_t i) {
      const double* sb = sinx.data() + i * N;
      const double* cb = cosx.data() + i * N;
      NeumaierSum sacc;
      for (int jj = 0; jj < N; ++jj) {
        const std::size_t row = static_cast<std::size_t>(jj) * N;
        double pa = 0.0, pb = 0.0, pc = 0.0, qa = 0.0, qb = 0.0, qc = 0.0;
        for (int m = 0; m < N; ++m) {
          pa += A1[row + m] * sb[m];
          qa += A2[row + m] * sb[m];
          pb += B1[row + m] * sb[m];
          qb += B2[row + m] * sb[m];
          pc += C1[row + m] * cb[m];
          qc += C2[row + m] * cb[m];
        }
        sacc.add(wgt[jj] * (pa * qa * inv_c2 + qp2_s * pb * qb + pc * qc));
      }
      if (shell.s != 0) {
        // Fully diagonal channel m = j = r, transverse momentum +t.
        for (int m = 0; m < N; ++m) {
          const double f = (omega[m] * inv_c2 + qp2_s / omega[m]) * sb[m] * sb[m] +
                           qx[m] * qx[m] / omega[m] * cb[m] * cb[m];
          sacc.add(ddiag[m] * ddiag[m] * wgt[m] * wgt[m] * wgt[m] * f);
        }
      }
      const double contrib = shell.mult * sacc.value();
      acc[i].add(contrib);
      last_shell[i] = std::abs(contrib);
    });
  }

  const double scale_out = 4.0 * hbar * c * c / (S * L0);  // 8 D D (...) with the overall 1/2
  std::vector<SumResult> out(np);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    out[i].value = scale_out * acc[i].value();
    max_abs = std::max(max_abs, std::abs(out[i].value));
    out[i].terms_used = static_cast<std::int64_t>(shells_.size()) * N * N;
  }

  // Tail diagnostic: geometric remainder of the transverse shell series plus
  // the cutoff weight surviving at the first excluded index on each axis.
  const double w_ax = w(omega_ns(N + 1, 0.0, cfg_));
  const double t_excl = static_cast<double>(transverse_.bound + 1);
  const double w_tr = w(2.0 * kPi * c * t_excl / std::sqrt(S));
  const double w_tr_last =
      w(2.0 * kPi * c * static_cast<double>(std::max(transverse_.bound, 1)) / std::sqrt(S));
  const double r_shell = w_tr_last > 0.0 ? std::min(std::pow(w_tr / w_tr_last, 3), 0.999) : 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double geo = scale_out * last_shell[i] * r_shell / (1.0 - r_shell);
    const double tail_abs = geo + std::max(w_ax, w_tr) * std::max(max_abs, scale_out * last_shell[i]);
    out[i].tail_estimate = tail_abs / std::max(max_abs, tail_abs);
  }
  return out;
}

SumResult DeltaRho3D::eval(double x) const {
  const double xs[1] = {x};
  return eval_batch(std::span<const double>(xs, 1), 1)[0];
}

double delta_rho(double x, const Cavity3DConfig& cfg, const SumControl& control) {
  const DeltaRho3D dr(cfg, control);
  return converged(dr.eval(x), control, "delta_rho");
}

Density3DProfile density_profile_3d(const Cavity3DConfig& cfg, const SumControl& control,
                                    const GridSpec& grid, int threads) {
  Density3DProfile prof;
  prof.config = validate(cfg);
  prof.control = validate(control);
  prof.grid = make_grid(cfg.L0, grid);
  const std::size_t np = prof.grid.size();

  const RhoZeroth3D rz(cfg, control);
  const DeltaRho3D dr(cfg, control);
  prof.axial_bound = dr.axial_bound();
  prof.transverse_bound = dr.transverse_bound();
  prof.truncation_clamped = dr.clamped() || rz.clamped();
  prof.casimir_constant = -kPi * kPi * cfg.constants.hbar * cfg.constants.c /
                          (1440.0 * cfg.L0 * cfg.L0 * cfg.L0 * cfg.L0);
  prof.px0_offset = rho_zeroth_px0_offset(cfg, control);

  prof.rho0.resize(np);
  std::vector<double> rho0_tails(np, 0.0);
  detail::parallel_for(np, threads, [&](std::size_t i) {
    const RhoZerothParts parts = rz.parts(prof.grid[i]);
    prof.rho0[i] = parts.casimir + parts.oscillating;
    rho0_tails[i] = parts.tail_abs;
  });
  // Tails measured against the profile-wide scale: a zero crossing of the
  // oscillating part at one grid point is not a convergence failure.
  double rho0_scale = std::abs(prof.casimir_constant);
  for (double v : prof.rho0) rho0_scale = std::max(rho0_scale, std::abs(v));
  const double rho0_tail =
      *std::max_element(rho0_tails.begin(), rho0_tails.end()) / rho0_scale;

  const std::vector<SumResult> delta = dr.eval_batch(prof.grid, threads);
  prof.delta_rho.resize(np);
  double max_tail = rho0_tail;
  // Dominant feature of the correction profile: the extremum of |delta_rho|.
  std::size_t peak = 0;
  for (std::size_t i = 0; i < np; ++i) {
    prof.delta_rho[i] = delta[i].value;
    max_tail = std::max(max_tail, delta[i].tail_estimate);
    if (std::abs(delta[i].value) > std::abs(prof.delta_rho[peak])) peak = i;
  }
  prof.peak_location = prof.grid[peak];
  prof.peak_value = prof.delta_rho[peak];
  prof.max_tail_estimate = max_tail;
  if (!(max_tail <= control.rel_tol)) {
    throw NonConvergence("density_profile_3d: tail estimate " + std::to_string(max_tail) +
                         " exceeds rel_tol " + std::to_string(control.rel_tol));
  }
  return prof;
}

}  // namespace mobcav
