#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "mobcav/cavity3d.hpp"

using namespace mobcav;

namespace {

constexpr double kPi = std::numbers::pi;

Cavity3DConfig fig3_config() { return {1e-5, 0.5e-4, 0.5e-4, 1e-11, 1e5, 1e15}; }
Cavity3DConfig desk_config() { return {1e-5, 0.5e-4, 0.5e-4, 1e-11, 1e5, 2e14}; }

// Forces the retained index boxes to exactly (axial, transverse) by driving
// the tolerance-derived bounds far past the clamps.
SumControl clamped_control(int axial, int transverse) {
  SumControl ctl;
  ctl.max_axial = axial;
  ctl.max_transverse = transverse;
  ctl.rel_tol = 1e-18;
  return ctl;
}

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  double uniform() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
};

// Raw multi-index loop over amplitude products with the equal-transverse-
// momentum filter, mirroring nothing of the factorized path.
double naive_delta_rho(double x, const Cavity3DConfig& cfg, int axial, int transverse) {
  const CutoffWeight w{CutoffScheme::Exponential, cfg.omega_cut};
  std::vector<ModeIndex3> modes;
  for (int nx = 1; nx <= axial; ++nx) {
    for (int ny = -transverse; ny <= transverse; ++ny) {
      for (int nz = -transverse; nz <= transverse; ++nz) {
        modes.push_back({nx, ny, nz});
      }
    }
  }
  double total = 0.0;
  for (const ModeIndex3& m : modes) {
    const double wm = omega_3d(m, cfg);
    for (const ModeIndex3& j : modes) {
      const double dmj = amplitude_D3(m, j, cfg).value;
      if (dmj == 0.0) continue;
      const double wj = omega_3d(j, cfg);
      for (const ModeIndex3& r : modes) {
        if (r.ny != m.ny || r.nz != m.nz) continue;  // equal transverse momenta
        const double djr = amplitude_D3(j, r, cfg).value;
        if (djr == 0.0) continue;
        const double wr = omega_3d(r, cfg);
        const double qxm = m.nx * kPi / cfg.L0;
        const double qxr = r.nx * kPi / cfg.L0;
        const double c = cfg.constants.c;
        const double tdot = static_cast<double>(m.nz) * r.nz + static_cast<double>(m.ny) * r.ny;
        const double bracket =
            (std::sqrt(wr * wm) / (c * c) +
             (4.0 * kPi * kPi / cfg.S()) * tdot / std::sqrt(wr * wm)) *
                std::sin(qxm * x) * std::sin(qxr * x) +
            qxm * qxr / std::sqrt(wr * wm) * std::cos(qxm * x) * std::cos(qxr * x);
        total += 8.0 * dmj * djr * cfg.constants.hbar * c * c / (cfg.S() * cfg.L0) * bracket *
                 w(wm) * w(wj) * w(wr);
      }
    }
  }
  return 0.5 * total;
}

}  // namespace

TEST_CASE("intermode coupling values and selection rules") {
  CHECK(g_coupling({1, 2, 3}, {1, -2, -3}).value == 0.0);  // equal axial indices
  CHECK(g_coupling({1, 2, 3}, {2, -2, -3}).value == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
  CHECK(g_coupling({1, 0, 0}, {2, 1, 0}).value == 0.0);  // transverse mismatch
  CHECK(g_coupling({1, 5, -2}, {3, -5, 2}).value ==
        doctest::Approx(2.0 * 1.0 * 3.0 / (9.0 - 1.0)).epsilon(1e-15));
}

TEST_CASE("intermode coupling is antisymmetric under axial swap") {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const int kx = rng.uniform_int(1, 20);
    int jx = rng.uniform_int(1, 20);
    if (jx == kx) jx += 1;
    const int ty = rng.uniform_int(-4, 4), tz = rng.uniform_int(-4, 4);
    const double a = g_coupling({kx, ty, tz}, {jx, -ty, -tz}).value;
    const double b = g_coupling({jx, ty, tz}, {kx, -ty, -tz}).value;
    CHECK(a == -b);
  }
}

TEST_CASE("frequency gradient against the axial formula and finite differences") {
  const Cavity3DConfig cfg = fig3_config();
  CHECK(domega_dq({1, 0, 0}, cfg) == doctest::Approx(-9.4182578365442664e+18).epsilon(1e-14));
  CHECK(domega_dq({1, 0, 0}, cfg) ==
        doctest::Approx(-omega_3d({1, 0, 0}, cfg) / cfg.L0).epsilon(1e-14));
  CHECK(domega_dq({2, 1, -1}, cfg) == doctest::Approx(-1.8125445657420449e+19).epsilon(1e-14));

  // Central finite difference of omega(q) in the wall position.
  auto omega_at = [&](const ModeIndex3& n, double q) {
    const double qx = n.nx * kPi / q;
    const double qp2 =
        (2.0 * kPi) * (2.0 * kPi) *
        (static_cast<double>(n.ny) * n.ny + static_cast<double>(n.nz) * n.nz) / cfg.S();
    return cfg.constants.c * std::sqrt(qx * qx + qp2);
  };
  for (const ModeIndex3 n : {ModeIndex3{1, 0, 0}, ModeIndex3{3, 2, 1}, ModeIndex3{5, -4, 7}}) {
    const double h = 1e-6 * cfg.L0;
    const double fd = (omega_at(n, cfg.L0 + h) - omega_at(n, cfg.L0 - h)) / (2.0 * h);
    CHECK(domega_dq(n, cfg) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(domega_dq(n, cfg) < 0.0);
  }

  // Transverse-dominated modes have a vanishing gradient share.
  CHECK(std::abs(domega_dq({1, 300, 300}, cfg)) < std::abs(domega_dq({1, 0, 0}, cfg)) / 100.0);
}

TEST_CASE("linearized wall-field coupling") {
  const Cavity3DConfig cfg = fig3_config();
  // Diagonal channel only, negative through the frequency gradient.
  const Coupling3D diag = coupling_C3({1, 0, 0}, {1, 0, 0}, cfg);
  CHECK(diag.value == doctest::Approx(-3.6061170838250188e-30).epsilon(1e-14));
  CHECK(diag.value < 0.0);

  // Transverse-mismatched pairs vanish.
  CHECK(coupling_C3({1, 0, 0}, {2, 1, 0}, cfg).value == 0.0);
  CHECK(coupling_C3({1, 1, 0}, {2, 1, 0}, cfg).value == 0.0);

  // Asymmetric off-diagonal channel, 50-digit references.
  CHECK(coupling_C3({1, 0, 0}, {2, 0, 0}, cfg).value ==
        doctest::Approx(3.3998797916337712e-30).epsilon(1e-14));
  CHECK(coupling_C3({2, 0, 0}, {1, 0, 0}, cfg).value ==
        doctest::Approx(-1.3599519166535085e-29).epsilon(1e-14));
}

TEST_CASE("dressed amplitudes in three dimensions") {
  const Cavity3DConfig cfg = fig3_config();
  CHECK(amplitude_D3({1, 0, 0}, {2, 1, 0}, cfg).value == 0.0);
  CHECK(amplitude_D3({1, 0, 0}, {2, 0, 0}, cfg).value ==
        doctest::Approx(1.1410260794097753e-10).epsilon(1e-14));
  CHECK(amplitude_D3({1, 1, 0}, {2, -1, 0}, cfg).value ==
        doctest::Approx(1.2156687014716071e-10).epsilon(1e-14));

  Cavity3DConfig heavy = cfg;
  heavy.M = 10.0 * cfg.M;
  CHECK(amplitude_D3({1, 1, 0}, {2, -1, 0}, heavy).value ==
        doctest::Approx(1.2156687014716071e-10 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("photon occupation reference values") {
  const Cavity3DConfig cfg = fig3_config();
  // 50-digit naive references at fixed truncations.
  CHECK(photon_number_axial_result(1, cfg, clamped_control(500, 0)).value ==
        doctest::Approx(6.2756627433046518e-19).epsilon(1e-12));
  CHECK(photon_number_axial_result(3, cfg, clamped_control(500, 0)).value ==
        doctest::Approx(9.6196650930586732e-19).epsilon(1e-12));
  CHECK(photon_number_result({1, 0, 0}, cfg, clamped_control(500, 0)).value ==
        doctest::Approx(6.2756627433046518e-19).epsilon(1e-12));
  CHECK(photon_number_result({2, 1, 0}, cfg, clamped_control(60, 0)).value ==
        doctest::Approx(8.0026361520484989e-19).epsilon(1e-12));
  CHECK(photon_number_result({1, 1, 1}, cfg, clamped_control(60, 0)).value ==
        doctest::Approx(4.7366110855588074e-19).epsilon(1e-12));
}

TEST_CASE("axial reduction identity of the photon spectrum") {
  const Cavity3DConfig cfg = fig3_config();
  const SumControl ctl = clamped_control(500, 0);
  for (int mx = 1; mx <= 5; ++mx) {
    const double full = photon_number_result({mx, 0, 0}, cfg, ctl).value;
    const double axial = photon_number_axial_result(mx, cfg, ctl).value;
    CHECK(std::abs(full / axial - 1.0) < 1e-10);
  }
}

TEST_CASE("photon occupations scale exactly as 1/M") {
  const Cavity3DConfig cfg = fig3_config();
  Cavity3DConfig heavy = cfg;
  heavy.M = 2.0 * cfg.M;
  const SumControl ctl = clamped_control(200, 0);
  for (const ModeIndex3 m : {ModeIndex3{1, 0, 0}, ModeIndex3{3, 1, -2}, ModeIndex3{7, 0, 4}}) {
    const double light = photon_number_result(m, cfg, ctl).value;
    const double twice = photon_number_result(m, heavy, ctl).value;
    CHECK(light == doctest::Approx(2.0 * twice).epsilon(1e-12));
  }
}

TEST_CASE("photon occupations decrease with the oscillation frequency") {
  const Cavity3DConfig cfg = fig3_config();
  Cavity3DConfig stiff = cfg;
  stiff.omega_osc = 10.0 * cfg.omega_osc;
  const SumControl ctl = clamped_control(150, 0);
  for (const ModeIndex3 m : {ModeIndex3{1, 0, 0}, ModeIndex3{2, 1, 0}, ModeIndex3{4, -2, 3}}) {
    CHECK(photon_number_result(m, stiff, ctl).value <
          photon_number_result(m, cfg, ctl).value);
  }
}

TEST_CASE("photon occupations are nonnegative") {
  const Cavity3DConfig cfg = desk_config();
  Rng rng(29);
  const SumControl ctl = clamped_control(80, 0);
  for (int i = 0; i < 20; ++i) {
    const ModeIndex3 m{rng.uniform_int(1, 30), rng.uniform_int(-10, 10),
                       rng.uniform_int(-10, 10)};
    CHECK(photon_number_result(m, cfg, ctl).value >= 0.0);
  }
}

TEST_CASE("photon wrapper enforces convergence and mode validity") {
  const Cavity3DConfig cfg = fig3_config();
  SumControl short_ctl;
  short_ctl.max_axial = 3;
  short_ctl.rel_tol = 1e-6;
  CHECK_THROWS_AS(photon_number({1, 0, 0}, cfg, short_ctl), NonConvergence);
  CHECK_THROWS_AS(photon_number({0, 0, 0}, cfg, clamped_control(100, 0)), DomainError);

  SumControl ok;
  ok.rel_tol = 1e-6;
  CHECK(photon_number({1, 0, 0}, cfg, ok) > 0.0);
}

TEST_CASE("photon spectrum driver matches single-mode evaluations") {
  const Cavity3DConfig cfg = fig3_config();
  SumControl ctl;
  ctl.rel_tol = 1e-6;
  const std::vector<ModeIndex3> modes{{1, 0, 0}, {2, 0, 0}, {2, 1, -1}, {5, 2, 0}};
  const PhotonSpectrum a = photon_spectrum(modes, cfg, ctl, 1);
  const PhotonSpectrum b = photon_spectrum(modes, cfg, ctl, 4);
  REQUIRE(a.occupation.size() == modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CHECK(a.occupation[i] == photon_number_result(modes[i], cfg, ctl).value);
    CHECK(a.occupation[i] == b.occupation[i]);
  }
}

TEST_CASE("fixed-wall energy density parts") {
  const Cavity3DConfig cfg = desk_config();
  const SumControl ctl = []() {
    SumControl c;
    c.max_axial = 40;
    c.max_transverse = 8;
    c.rel_tol = 1e-8;
    return c;
  }();
  const RhoZeroth3D rz(cfg, ctl);
  CHECK(rz.axial_bound() == 40);
  CHECK(rz.transverse_bound() == 8);

  const RhoZerothParts mid = rz.parts(0.5 * cfg.L0);
  const double casimir_ref = -kPi * kPi * cfg.constants.hbar * cfg.constants.c /
                             (1440.0 * cfg.L0 * cfg.L0 * cfg.L0 * cfg.L0);
  CHECK(mid.casimir == casimir_ref);
  CHECK(mid.casimir == doctest::Approx(-2.1668762874129224e-8).epsilon(1e-15));
  // 50-digit naive references at the forced truncation.
  CHECK(mid.oscillating == doctest::Approx(3.9863958649934541e-5).epsilon(1e-12));
  CHECK(rz.parts(0.95 * cfg.L0).oscillating ==
        doctest::Approx(-1.199736536250922e-4).epsilon(1e-12));

  CHECK(rho_zeroth_px0_offset(cfg, ctl) ==
        doctest::Approx(-8.0366057015487422e-5).epsilon(1e-12));

  CHECK_THROWS_AS(rz.parts(0.0), DomainError);
  CHECK_THROWS_AS(rz.parts(cfg.L0), DomainError);
}

TEST_CASE("oscillating part of rho_zeroth integrates to zero over the cavity") {
  const Cavity3DConfig cfg = desk_config();
  SumControl ctl;
  ctl.max_axial = 40;
  ctl.max_transverse = 8;
  ctl.rel_tol = 1e-8;
  const RhoZeroth3D rz(cfg, ctl);
  // Midpoint rule with a prime panel count: exact for every retained
  // cos(2 pi p x / L0) harmonic, and it needs no wall evaluations.
  const int panels = 163;
  double integral = 0.0;
  double peak = 0.0;
  const double h = cfg.L0 / panels;
  for (int i = 0; i < panels; ++i) {
    const double v = rz.parts((i + 0.5) * h).oscillating;
    integral += v * h;
    peak = std::max(peak, std::abs(v));
  }
  CHECK(std::abs(integral) <= 1e-8 * peak * cfg.L0);
}

TEST_CASE("rho_zeroth oscillating magnitude grows toward the mobile wall") {
  const Cavity3DConfig cfg = desk_config();
  SumControl ctl;
  ctl.rel_tol = 1e-6;
  const RhoZeroth3D rz(cfg, ctl);
  double prev = 0.0;
  for (double f : {0.960, 0.970, 0.980, 0.990, 0.995}) {
    const double mag = std::abs(rz.parts(f * cfg.L0).oscillating);
    CHECK(mag > prev);
    prev = mag;
  }
}

TEST_CASE("factorized delta_rho reproduces 50-digit naive references") {
  const Cavity3DConfig cfg = desk_config();
  const DeltaRho3D dr(cfg, clamped_control(4, 1));
  CHECK(dr.axial_bound() == 4);
  CHECK(dr.transverse_bound() == 1);
  CHECK(dr.eval(0.6 * cfg.L0).value == doctest::Approx(-1.8858951042487809e-24).epsilon(1e-12));
  CHECK(dr.eval(0.0).value == doctest::Approx(6.1988685791854489e-26).epsilon(1e-12));
  const DeltaRho3D dr3(cfg, clamped_control(3, 1));
  CHECK(dr3.eval(0.9 * cfg.L0).value == doctest::Approx(-4.5687155253090343e-25).epsilon(1e-12));
}

TEST_CASE("factorized delta_rho equals the raw multi-index loop") {
  const Cavity3DConfig cfg = desk_config();
  const int axial = 6, transverse = 2;
  const DeltaRho3D dr(cfg, clamped_control(axial, transverse));
  std::vector<double> xs;
  for (int i = 0; i <= 9; ++i) xs.push_back(cfg.L0 * i / 9.0);
  const auto got = dr.eval_batch(xs, 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ref = naive_delta_rho(xs[i], cfg, axial, transverse);
    const double scale = std::max(std::abs(ref), 1e-300);
    CHECK(std::abs(got[i].value - ref) / scale < 1e-10);
  }
}

TEST_CASE("delta_rho at the fixed wall keeps only the gradient channel") {
  // At x = 0 every sine factor vanishes; flipping the sign of the cosine
  // block must flip the whole value. Verified through the naive loop at a
  // truncation where both agree.
  const Cavity3DConfig cfg = desk_config();
  const DeltaRho3D dr(cfg, clamped_control(5, 1));
  const double v = dr.eval(0.0).value;
  CHECK(v != 0.0);
  CHECK(v == doctest::Approx(naive_delta_rho(0.0, cfg, 5, 1)).epsilon(1e-10));
}

TEST_CASE("delta_rho scales exactly as 1/M") {
  const Cavity3DConfig cfg = desk_config();
  Cavity3DConfig heavy = cfg;
  heavy.M = 2.0 * cfg.M;
  const DeltaRho3D light_eval(cfg, clamped_control(8, 2));
  const DeltaRho3D heavy_eval(heavy, clamped_control(8, 2));
  for (double f : {0.0, 0.35, 0.72, 0.98}) {
    const double a = light_eval.eval(f * cfg.L0).value;
    const double b = heavy_eval.eval(f * cfg.L0).value;
    CHECK(a == doctest::Approx(2.0 * b).epsilon(1e-12));
  }
}

TEST_CASE("delta_rho wrapper enforces the tolerance") {
  const Cavity3DConfig cfg = desk_config();
  SumControl tiny;
  tiny.max_axial = 2;
  tiny.max_transverse = 1;
  tiny.rel_tol = 1e-6;
  CHECK_THROWS_AS(delta_rho(0.5 * cfg.L0, cfg, tiny), NonConvergence);

  SumControl ok;
  ok.rel_tol = 1e-3;
  CHECK(std::isfinite(delta_rho(0.5 * cfg.L0, cfg, ok)));
}

TEST_CASE("3D density profile: determinism, metadata and peak displacement") {
  const Cavity3DConfig cfg = desk_config();
  SumControl ctl;
  ctl.rel_tol = 1e-3;
  GridSpec g;
  g.points = 60;

  const Density3DProfile a = density_profile_3d(cfg, ctl, g, 1);
  const Density3DProfile b = density_profile_3d(cfg, ctl, g, 4);
  REQUIRE(a.grid.size() == 60);
  CHECK(a.max_tail_estimate <= ctl.rel_tol);
  CHECK(a.casimir_constant == doctest::Approx(-2.1668762874129224e-8).epsilon(1e-15));
  CHECK(a.px0_offset < 0.0);
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(a.rho0[i] == b.rho0[i]);
    CHECK(a.delta_rho[i] == b.delta_rho[i]);
  }
  // The correction's extremum sits strictly inside the cavity, displaced
  // from the mobile wall.
  CHECK(a.peak_location > 0.3 * cfg.L0);
  CHECK(a.peak_location < 0.95 * cfg.L0);
  CHECK(std::abs(a.peak_value) > 0.0);
}
