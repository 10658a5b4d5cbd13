#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mobcav/cavity1d.hpp"
#include "mobcav/cavity3d.hpp"
#include "mobcav/core.hpp"
#include "mobcav/modesum.hpp"
#include "mobcav/version.hpp"

namespace py = pybind11;
using namespace mobcav;

PYBIND11_MODULE(_mobcav, m) {
  m.doc() = "Vacuum field fluctuations and energy densities in a cavity with a mobile wall";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<NonConvergence>(m, "NonConvergence");
  py::register_exception<OverflowSignal>(m, "OverflowSignal");

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("hbar", &PhysicalConstants::hbar)
      .def_readwrite("c", &PhysicalConstants::c);

  py::enum_<CutoffScheme>(m, "CutoffScheme")
      .value("Exponential", CutoffScheme::Exponential)
      .value("Sharp", CutoffScheme::Sharp);

  py::class_<Cavity1DConfig>(m, "Cavity1DConfig")
      .def(py::init([](double L0, double M, double omega_osc, double omega_cut) {
             return Cavity1DConfig{L0, M, omega_osc, omega_cut};
           }),
           py::arg("L0"), py::arg("M"), py::arg("omega_osc"), py::arg("omega_cut"))
      .def_readwrite("L0", &Cavity1DConfig::L0)
      .def_readwrite("M", &Cavity1DConfig::M)
      .def_readwrite("omega_osc", &Cavity1DConfig::omega_osc)
      .def_readwrite("omega_cut", &Cavity1DConfig::omega_cut)
      .def_readwrite("constants", &Cavity1DConfig::constants);

  py::class_<Cavity3DConfig>(m, "Cavity3DConfig")
      .def(py::init([](double L0, double Ly, double Lz, double M, double omega_osc,
                       double omega_cut) {
             return Cavity3DConfig{L0, Ly, Lz, M, omega_osc, omega_cut};
           }),
           py::arg("L0"), py::arg("Ly"), py::arg("Lz"), py::arg("M"), py::arg("omega_osc"),
           py::arg("omega_cut"))
      .def_readwrite("L0", &Cavity3DConfig::L0)
      .def_readwrite("Ly", &Cavity3DConfig::Ly)
      .def_readwrite("Lz", &Cavity3DConfig::Lz)
      .def_readwrite("M", &Cavity3DConfig::M)
      .def_readwrite("omega_osc", &Cavity3DConfig::omega_osc)
      .def_readwrite("omega_cut", &Cavity3DConfig::omega_cut)
      .def_readwrite("constants", &Cavity3DConfig::constants)
      .def_property_readonly("S", &Cavity3DConfig::S)
      .def_property_readonly("eta", &Cavity3DConfig::eta);

  py::class_<ModeIndex3>(m, "ModeIndex3")
      .def(py::init([](int nx, int ny, int nz) { return ModeIndex3{nx, ny, nz}; }),
           py::arg("nx"), py::arg("ny") = 0, py::arg("nz") = 0)
      .def_readwrite("nx", &ModeIndex3::nx)
      .def_readwrite("ny", &ModeIndex3::ny)
      .def_readwrite("nz", &ModeIndex3::nz)
      .def("__repr__", [](const ModeIndex3& n) {
        return "ModeIndex3(" + std::to_string(n.nx) + ", " + std::to_string(n.ny) + ", " +
               std::to_string(n.nz) + ")";
      });

  py::class_<SumControl>(m, "SumControl")
      .def(py::init([](int max_axial, int max_transverse, double rel_tol, CutoffScheme scheme) {
             return SumControl{max_axial, max_transverse, rel_tol, scheme};
           }),
           py::arg("max_axial") = 4096, py::arg("max_transverse") = 512,
           py::arg("rel_tol") = 1e-6, py::arg("cutoff_scheme") = CutoffScheme::Exponential)
      .def_readwrite("max_axial", &SumControl::max_axial)
      .def_readwrite("max_transverse", &SumControl::max_transverse)
      .def_readwrite("rel_tol", &SumControl::rel_tol)
      .def_readwrite("cutoff_scheme", &SumControl::cutoff_scheme);

  m.def("validate", [](const Cavity1DConfig& c) { return validate(c); });
  m.def("validate", [](const Cavity3DConfig& c) { return validate(c); });
  m.def("validate", [](const ModeIndex3& n) { return validate(n); });
  m.def("validate", [](const SumControl& c) { return validate(c); });

  m.def("omega_1d", &omega_1d, py::arg("j"), py::arg("cfg"));
  m.def("omega_3d", &omega_3d, py::arg("n"), py::arg("cfg"));
  m.def(
      "wavenumbers_3d",
      [](const ModeIndex3& n, const Cavity3DConfig& cfg) {
        const Wavenumbers3 w = wavenumbers_3d(n, cfg);
        return py::make_tuple(w.qx, py::make_tuple(w.q_par[0], w.q_par[1]));
      },
      py::arg("n"), py::arg("cfg"));

  py::class_<CutoffWeight>(m, "CutoffWeight")
      .def(py::init([](CutoffScheme scheme, double omega_cut) {
             return CutoffWeight{scheme, omega_cut};
           }),
           py::arg("scheme"), py::arg("omega_cut"))
      .def("__call__", &CutoffWeight::operator());
  m.def("cutoff_weight", &cutoff_weight, py::arg("omega"), py::arg("weight"));
  m.def("compensated_sum", [](const std::vector<double>& terms) {
    return compensated_sum(std::span<const double>(terms.data(), terms.size()));
  });

  py::class_<SumResult>(m, "SumResult")
      .def_readonly("value", &SumResult::value)
      .def_readonly("tail_estimate", &SumResult::tail_estimate)
      .def_readonly("terms_used", &SumResult::terms_used);

  py::class_<Coupling1D>(m, "Coupling1D")
      .def_readonly("j", &Coupling1D::j)
      .def_readonly("l", &Coupling1D::l)
      .def_readonly("value", &Coupling1D::value);
  py::class_<Amplitude1D>(m, "Amplitude1D")
      .def_readonly("j", &Amplitude1D::j)
      .def_readonly("l", &Amplitude1D::l)
      .def_readonly("value", &Amplitude1D::value);
  m.def("coupling_C", &coupling_C, py::arg("j"), py::arg("l"), py::arg("cfg"));
  m.def("amplitude_D", &amplitude_D, py::arg("j"), py::arg("l"), py::arg("cfg"));

  m.def("e2_zeroth", &e2_zeroth, py::arg("x"), py::arg("cfg"));
  m.def("b2_zeroth", &b2_zeroth, py::arg("x"), py::arg("cfg"));
  m.def(
      "near_wall_asymptotics",
      [](double x, const Cavity1DConfig& cfg) {
        const NearWallAsymptotics a = near_wall_asymptotics(x, cfg);
        return py::make_tuple(a.e2, a.b2);
      },
      py::arg("x"), py::arg("cfg"));
  m.def("e2_first", &e2_first, py::arg("x"), py::arg("cfg"), py::arg("control"));
  m.def("b2_first", &b2_first, py::arg("x"), py::arg("cfg"), py::arg("control"));
  m.def("energy_density_correction", &energy_density_correction, py::arg("x"), py::arg("cfg"),
        py::arg("control"));

  py::class_<PolarizableBody>(m, "PolarizableBody")
      .def(py::init([](double alpha_E, double alpha_M, double x_pb) {
             return PolarizableBody{alpha_E, alpha_M, x_pb};
           }),
           py::arg("alpha_E"), py::arg("alpha_M"), py::arg("x_pb"))
      .def_readwrite("alpha_E", &PolarizableBody::alpha_E)
      .def_readwrite("alpha_M", &PolarizableBody::alpha_M)
      .def_readwrite("x_pb", &PolarizableBody::x_pb);
  m.def("casimir_polder_shift", &casimir_polder_shift, py::arg("body"), py::arg("cfg"),
        py::arg("control"));
  m.def("delta_green_correction", &delta_green_correction, py::arg("x"), py::arg("t"),
        py::arg("xp"), py::arg("tp"), py::arg("cfg"), py::arg("n_max"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int points, double refine_start_frac, int refine_points) {
             return GridSpec{points, refine_start_frac, refine_points};
           }),
           py::arg("points") = 1000, py::arg("refine_start_frac") = 0.0,
           py::arg("refine_points") = 0)
      .def_readwrite("points", &GridSpec::points)
      .def_readwrite("refine_start_frac", &GridSpec::refine_start_frac)
      .def_readwrite("refine_points", &GridSpec::refine_points);

  py::class_<Density1DProfile>(m, "Density1DProfile")
      .def_readonly("grid", &Density1DProfile::grid)
      .def_readonly("e2_0", &Density1DProfile::e2_0)
      .def_readonly("b2_0", &Density1DProfile::b2_0)
      .def_readonly("e2_1", &Density1DProfile::e2_1)
      .def_readonly("b2_1", &Density1DProfile::b2_1)
      .def_readonly("rho_corr", &Density1DProfile::rho_corr)
      .def_readonly("truncation", &Density1DProfile::truncation)
      .def_readonly("truncation_clamped", &Density1DProfile::truncation_clamped)
      .def_readonly("max_tail_estimate", &Density1DProfile::max_tail_estimate);
  m.def("density_profile_1d", &density_profile_1d, py::arg("cfg"), py::arg("control"),
        py::arg("grid"), py::arg("threads") = 0);

  py::class_<GCoupling>(m, "GCoupling").def_readonly("value", &GCoupling::value);
  py::class_<Coupling3D>(m, "Coupling3D").def_readonly("value", &Coupling3D::value);
  py::class_<Amplitude3D>(m, "Amplitude3D").def_readonly("value", &Amplitude3D::value);
  m.def("g_coupling", &g_coupling, py::arg("k"), py::arg("j"));
  m.def("domega_dq", &domega_dq, py::arg("k"), py::arg("cfg"));
  m.def("coupling_C3", &coupling_C3, py::arg("k"), py::arg("j"), py::arg("cfg"));
  m.def("amplitude_D3", &amplitude_D3, py::arg("k"), py::arg("j"), py::arg("cfg"));

  m.def("photon_number", &photon_number, py::arg("m"), py::arg("cfg"), py::arg("control"));
  m.def("photon_number_axial", &photon_number_axial, py::arg("mx"), py::arg("cfg"),
        py::arg("control"));
  m.def("photon_number_result", &photon_number_result, py::arg("m"), py::arg("cfg"),
        py::arg("control"));
  m.def("photon_number_axial_result", &photon_number_axial_result, py::arg("mx"), py::arg("cfg"),
        py::arg("control"));

  py::class_<PhotonSpectrum>(m, "PhotonSpectrum")
      .def_readonly("modes", &PhotonSpectrum::modes)
      .def_readonly("occupation", &PhotonSpectrum::occupation)
      .def_readonly("max_tail_estimate", &PhotonSpectrum::max_tail_estimate);
  m.def(
      "photon_spectrum",
      [](const std::vector<ModeIndex3>& modes, const Cavity3DConfig& cfg,
         const SumControl& control, int threads) {
        return photon_spectrum(std::span<const ModeIndex3>(modes.data(), modes.size()), cfg,
                               control, threads);
      },
      py::arg("modes"), py::arg("cfg"), py::arg("control"), py::arg("threads") = 0);

  py::class_<RhoZerothParts>(m, "RhoZerothParts")
      .def_readonly("casimir", &RhoZerothParts::casimir)
      .def_readonly("oscillating", &RhoZerothParts::oscillating)
      .def_readonly("tail_estimate", &RhoZerothParts::tail_estimate);
  m.def("rho_zeroth", &rho_zeroth, py::arg("x"), py::arg("cfg"), py::arg("control"));
  m.def("rho_zeroth_parts", &rho_zeroth_parts, py::arg("x"), py::arg("cfg"), py::arg("control"));
  m.def("rho_zeroth_px0_offset", &rho_zeroth_px0_offset, py::arg("cfg"), py::arg("control"));
  m.def("delta_rho", &delta_rho, py::arg("x"), py::arg("cfg"), py::arg("control"));

  py::class_<Density3DProfile>(m, "Density3DProfile")
      .def_readonly("grid", &Density3DProfile::grid)
      .def_readonly("rho0", &Density3DProfile::rho0)
      .def_readonly("delta_rho", &Density3DProfile::delta_rho)
      .def_readonly("casimir_constant", &Density3DProfile::casimir_constant)
      .def_readonly("px0_offset", &Density3DProfile::px0_offset)
      .def_readonly("peak_location", &Density3DProfile::peak_location)
      .def_readonly("peak_value", &Density3DProfile::peak_value)
      .def_readonly("axial_bound", &Density3DProfile::axial_bound)
      .def_readonly("transverse_bound", &Density3DProfile::transverse_bound)
      .def_readonly("max_tail_estimate", &Density3DProfile::max_tail_estimate);
  m.def("density_profile_3d", &density_profile_3d, py::arg("cfg"), py::arg("control"),
        py::arg("grid"), py::arg("threads") = 0);
}
