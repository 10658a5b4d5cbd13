#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "mobcav/core.hpp"

using namespace mobcav;

namespace {

Cavity1DConfig fig1_config() { return {1e-5, 1e-11, 1e5, 1e15}; }

Cavity3DConfig fig3_config() { return {1e-5, 0.5e-4, 0.5e-4, 1e-11, 1e5, 1e15}; }

// 64-bit LCG, deterministic across platforms.
struct Rng {
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  double uniform() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("validate accepts the reference parameter set") {
  const Cavity1DConfig cfg = validate(fig1_config());
  CHECK(cfg.L0 == 1e-5);
  const Cavity3DConfig c3 = validate(fig3_config());
  CHECK(c3.S() == doctest::Approx(2.5e-9).epsilon(1e-15));

  // Idempotence: validating a validated config changes nothing.
  const Cavity1DConfig twice = validate(validate(fig1_config()));
  CHECK(twice.L0 == cfg.L0);
  CHECK(twice.M == cfg.M);
  CHECK(twice.omega_osc == cfg.omega_osc);
  CHECK(twice.omega_cut == cfg.omega_cut);
}

TEST_CASE("validate rejects non-positive fields by name") {
  Cavity1DConfig cfg = fig1_config();
  cfg.M = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("M must be > 0"), ConfigError);
}

TEST_CASE("validate rejects a cutoff below the mechanical frequency") {
  Cavity1DConfig cfg = fig1_config();
  cfg.omega_cut = 1e3;  // omega_osc = 1e5
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("validate reports every violated invariant at once") {
  Cavity1DConfig cfg = fig1_config();
  cfg.M = -1.0;
  cfg.L0 = 0.0;
  try {
    validate(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("M must be > 0") != std::string::npos);
    CHECK(msg.find("L0 must be > 0") != std::string::npos);
  }
}

TEST_CASE("validate constrains the 3D transverse box") {
  Cavity3DConfig cfg = fig3_config();
  cfg.Lz = 0.4e-4;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("Ly and Lz must be equal"), ConfigError);
}

TEST_CASE("omega_1d fundamental mode") {
  const Cavity1DConfig cfg = fig1_config();
  // pi*c/L0 evaluated at 50-digit precision.
  CHECK(omega_1d(1, cfg) == doctest::Approx(94182578365442.664).epsilon(1e-14));
}

TEST_CASE("omega_1d is linear in the index and scales as 1/L0") {
  const Cavity1DConfig cfg = fig1_config();
  CHECK(omega_1d(2, cfg) == 2.0 * omega_1d(1, cfg));
  for (int j = 1; j <= 30; ++j) {
    CHECK(omega_1d(j, cfg) ==
          doctest::Approx(static_cast<double>(j) * omega_1d(1, cfg)).epsilon(1e-14));
  }
  Cavity1DConfig doubled = cfg;
  doubled.L0 = 2.0 * cfg.L0;
  CHECK(omega_1d(1, doubled) == 0.5 * omega_1d(1, cfg));
}

TEST_CASE("omega_1d rejects nonpositive indices") {
  CHECK_THROWS_AS(omega_1d(0, fig1_config()), DomainError);
  CHECK_THROWS_AS(omega_1d(-3, fig1_config()), DomainError);
}

TEST_CASE("omega_3d reduces bit-exactly to the axial spectrum") {
  const Cavity3DConfig c3 = fig3_config();
  const Cavity1DConfig c1 = fig1_config();
  for (int m = 1; m <= 50; ++m) {
    CHECK(omega_3d({m, 0, 0}, c3) == omega_1d(m, c1));
  }
}

TEST_CASE("omega_3d reference value and transverse symmetry") {
  const Cavity3DConfig cfg = fig3_config();
  // c*sqrt((pi/L0)^2 + (2 pi)^2/S) at 50-digit precision.
  CHECK(omega_3d({1, 1, 0}, cfg) == doctest::Approx(101437741291753.87).epsilon(1e-14));
  CHECK(omega_3d({2, 1, -1}, cfg) == doctest::Approx(195754813100140.84).epsilon(1e-14));
  CHECK(omega_3d({1, 1, 0}, cfg) == omega_3d({1, -1, 0}, cfg));
  CHECK(omega_3d({1, 1, 0}, cfg) == omega_3d({1, 0, 1}, cfg));
}

TEST_CASE("frequencies are positive, finite and monotone in the quadratic index pairs") {
  const Cavity3DConfig cfg = fig3_config();
  for (int nx = 1; nx <= 6; ++nx) {
    for (int t = 0; t <= 6; ++t) {
      const double w = omega_3d({nx, t, 0}, cfg);
      CHECK(w > 0.0);
      CHECK(std::isfinite(w));
      CHECK(omega_3d({nx + 1, t, 0}, cfg) > w);
      CHECK(omega_3d({nx, t + 1, 0}, cfg) > w);
    }
  }
}

TEST_CASE("wavenumbers_3d components") {
  const Cavity3DConfig cfg = fig3_config();
  const Wavenumbers3 w = wavenumbers_3d({3, 0, 0}, cfg);
  CHECK(w.qx == doctest::Approx(3.0 * std::numbers::pi / cfg.L0).epsilon(1e-15));
  CHECK(w.q_par[0] == 0.0);
  CHECK(w.q_par[1] == 0.0);

  const Wavenumbers3 v = wavenumbers_3d({1, 2, -1}, cfg);
  const double unit = 2.0 * std::numbers::pi / std::sqrt(cfg.S());
  CHECK(v.q_par[0] == doctest::Approx(2.0 * unit).epsilon(1e-15));
  CHECK(v.q_par[1] == doctest::Approx(-unit).epsilon(1e-15));
}

TEST_CASE("wavenumbers_3d are consistent with omega_3d for random modes") {
  const Cavity3DConfig cfg = fig3_config();
  Rng rng;
  for (int i = 0; i < 50; ++i) {
    const ModeIndex3 n{rng.uniform_int(1, 40), rng.uniform_int(-30, 30),
                       rng.uniform_int(-30, 30)};
    const Wavenumbers3 w = wavenumbers_3d(n, cfg);
    const double q2 = w.qx * w.qx + w.q_par[0] * w.q_par[0] + w.q_par[1] * w.q_par[1];
    CHECK(cfg.constants.c * std::sqrt(q2) ==
          doctest::Approx(omega_3d(n, cfg)).epsilon(1e-13));
  }
}

TEST_CASE("mode index validation") {
  CHECK_THROWS_AS(validate(ModeIndex3{0, 1, 1}), ConfigError);
  const ModeIndex3 ok = validate(ModeIndex3{1, -5, 3});
  CHECK(ok.ny == -5);
}

TEST_CASE("sum control validation") {
  SumControl ctl;
  CHECK(validate(ctl).max_axial == ctl.max_axial);
  ctl.rel_tol = 1.0;
  CHECK_THROWS_AS(validate(ctl), ConfigError);
  ctl.rel_tol = 0.5;
  ctl.max_axial = 0;
  CHECK_THROWS_AS(validate(ctl), ConfigError);
}

TEST_CASE("physical constants defaults") {
  const PhysicalConstants k;
  CHECK(k.hbar == 1.054571817e-34);
  CHECK(k.c == 2.99792458e8);
}
