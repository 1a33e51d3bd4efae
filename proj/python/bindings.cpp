#include "su11/detection.hpp"
#include "su11/errors.hpp"
#include "su11/fock.hpp"
#include "su11/metrology.hpp"
#include "su11/sweep.hpp"
#include "su11/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace su11;

namespace {

void bind_errors(py::module_& m) {
  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnbalancedSpecError>(m, "UnbalancedSpecError", base.ptr());
  py::register_exception<CutoffTooSmallError>(m, "CutoffTooSmallError", base.ptr());
  py::register_exception<DiagnosticsError>(m, "DiagnosticsError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
}

void bind_states(py::module_& m) {
  py::enum_<Mode>(m, "Mode").value("a", Mode::a).value("b", Mode::b);

  py::class_<InputState>(m, "InputState")
      .def(py::init([](double alpha_mag, double theta_alpha, double r, double theta_s,
                       cplx b_displacement) {
             return InputState{alpha_mag, theta_alpha, r, theta_s, b_displacement};
           }),
           py::arg("alpha_mag") = 0.0, py::arg("theta_alpha") = 0.0, py::arg("r") = 0.0,
           py::arg("theta_s") = 0.0, py::arg("b_displacement") = cplx{})
      .def_readwrite("alpha_mag", &InputState::alpha_mag)
      .def_readwrite("theta_alpha", &InputState::theta_alpha)
      .def_readwrite("r", &InputState::r)
      .def_readwrite("theta_s", &InputState::theta_s)
      .def_readwrite("b_displacement", &InputState::b_displacement);

  py::class_<GaussianState>(m, "GaussianState")
      .def(py::init<>())
      .def(py::init<const Vec4&, const Mat4&>(), py::arg("mean"), py::arg("cov"))
      .def_property_readonly("mean", &GaussianState::mean)
      .def_property_readonly("cov", &GaussianState::cov);

  m.def("prepare_input", py::overload_cast<const InputState&>(&prepare_input));
  m.def("prepare_input", py::overload_cast<double, double, double, double>(&prepare_input),
        py::arg("alpha_mag"), py::arg("theta_alpha"), py::arg("r"), py::arg("theta_s") = 0.0);
  m.def("wigner_value", &wigner_value, py::arg("state"), py::arg("alpha"), py::arg("beta"));
  m.def("uncertainty_min_eigenvalue", &uncertainty_min_eigenvalue);
}

void bind_transforms(py::module_& m) {
  py::class_<SymplecticTransform>(m, "SymplecticTransform")
      .def(py::init<>())
      .def(py::init<const Mat4&>())
      .def_property_readonly("matrix", &SymplecticTransform::matrix)
      .def("symplectic_residual", &SymplecticTransform::symplectic_residual)
      .def("determinant", &SymplecticTransform::determinant)
      .def(py::self * py::self);

  py::enum_<PhasePlacement>(m, "PhasePlacement")
      .value("mode_a_only", PhasePlacement::mode_a_only)
      .value("both_arms_half", PhasePlacement::both_arms_half);

  m.def("opa", &opa, py::arg("g"), py::arg("theta"));
  m.def("phase_shifter", &phase_shifter, py::arg("phi"),
        py::arg("placement") = PhasePlacement::mode_a_only);
  m.def("beam_splitter", &beam_splitter, py::arg("theta_bs"));
  m.def("apply", &apply, py::arg("transform"), py::arg("state"));

  py::class_<SU11Spec>(m, "SU11Spec")
      .def(py::init<>())
      .def_static("balanced", &SU11Spec::balanced, py::arg("g"), py::arg("phi"),
                  py::arg("input") = InputState{})
      .def_readwrite("g1", &SU11Spec::g1)
      .def_readwrite("theta1", &SU11Spec::theta1)
      .def_readwrite("g2", &SU11Spec::g2)
      .def_readwrite("theta2", &SU11Spec::theta2)
      .def_readwrite("phi", &SU11Spec::phi)
      .def_readwrite("input", &SU11Spec::input);

  py::class_<MziSpec>(m, "MziSpec")
      .def(py::init([](double phi, const InputState& input, double theta_bs) {
             return MziSpec{theta_bs, phi, input};
           }),
           py::arg("phi") = 0.0, py::arg("input") = InputState{},
           py::arg("theta_bs") = std::numbers::pi / 4)
      .def_readwrite("theta_bs", &MziSpec::theta_bs)
      .def_readwrite("phi", &MziSpec::phi)
      .def_readwrite("input", &MziSpec::input);

  m.def("transfer", py::overload_cast<const Interferometer&>(&transfer));
  m.def("output_state", &output_state);
  m.def("phased_state", &phased_state);
  m.def("stationary_phase", &stationary_phase);
}

void bind_detection(py::module_& m) {
  py::enum_<Scheme>(m, "Scheme")
      .value("parity", Scheme::parity)
      .value("homodyne", Scheme::homodyne)
      .value("intensity", Scheme::intensity);
  py::enum_<SensitivityKind>(m, "SensitivityKind")
      .value("direct", SensitivityKind::direct)
      .value("analytic_limit", SensitivityKind::analytic_limit)
      .value("extrapolated_limit", SensitivityKind::extrapolated_limit)
      .value("divergent", SensitivityKind::divergent);

  py::class_<Reading>(m, "Reading")
      .def_readonly("mean", &Reading::mean)
      .def_readonly("variance", &Reading::variance);

  py::class_<SensitivityResult>(m, "SensitivityResult")
      .def_readonly("phi", &SensitivityResult::phi)
      .def_readonly("signal", &SensitivityResult::signal)
      .def_readonly("noise", &SensitivityResult::noise)
      .def_readonly("d_signal_d_phi", &SensitivityResult::d_signal_d_phi)
      .def_readonly("delta_phi", &SensitivityResult::delta_phi)
      .def_readonly("kind", &SensitivityResult::kind)
      .def_readonly("diagnostic", &SensitivityResult::diagnostic);

  m.def("parity_expectation", &parity_expectation, py::arg("state"), py::arg("mode") = Mode::b);
  m.def("homodyne_signal", &homodyne_signal, py::arg("state"), py::arg("mode"),
        py::arg("quadrature_angle"));
  m.def("intensity_signal", &intensity_signal, py::arg("state"), py::arg("mode") = Mode::b);
  m.def("total_intensity_signal", &total_intensity_signal);
  m.def("parity_closed_form_su11", &parity_closed_form_su11, py::arg("alpha_mag"),
        py::arg("theta_alpha"), py::arg("r"), py::arg("g"), py::arg("phi"));
  m.def(
      "phase_sensitivity",
      [](Scheme scheme, const Interferometer& ifm, double phi, bool analytic_limit) {
        SensitivityOptions options;
        options.analytic_limit = analytic_limit;
        return phase_sensitivity(scheme, ifm, phi, options);
      },
      py::arg("scheme"), py::arg("interferometer"), py::arg("phi"),
      py::arg("analytic_limit") = true);
  m.def("parity_sensitivity_phi0", &parity_sensitivity_phi0, py::arg("n_alpha"), py::arg("n_s"),
        py::arg("n_opa"), py::arg("theta_alpha") = 0.0);
}

void bind_metrology(py::module_& m) {
  m.def(
      "qfi", [](const Interferometer& ifm, double phi) { return qfi(ifm, phi); },
      py::arg("interferometer"), py::arg("phi") = 0.7);
  m.def("qcrb", &qcrb, py::arg("fisher"));
  m.def("qcrb_su11_closed", &qcrb_su11_closed, py::arg("n_alpha"), py::arg("n_s"),
        py::arg("n_opa"));
  m.def("n_opa", &n_opa, py::arg("g"));
  m.def("kappa", &kappa, py::arg("n_opa"));
  m.def("n_total", &n_total, py::arg("n_alpha"), py::arg("n_s"), py::arg("n_opa"));
  m.def(
      "hl_snl",
      [](double n) {
        const Limits l = hl_snl(n);
        return py::make_tuple(l.hl, l.snl);
      },
      py::arg("n_total"));
  m.def("optimal_alpha", &optimal_alpha, py::arg("g"), py::arg("r"));
}

void bind_fock(py::module_& m) {
  py::enum_<FockObservable>(m, "FockObservable")
      .value("parity_a", FockObservable::parity_a)
      .value("parity_b", FockObservable::parity_b)
      .value("n_a", FockObservable::n_a)
      .value("n_b", FockObservable::n_b)
      .value("n_b_squared", FockObservable::n_b_squared)
      .value("x_b", FockObservable::x_b)
      .value("x_b_squared", FockObservable::x_b_squared);

  py::class_<FockState>(m, "FockState")
      .def_property_readonly("cutoff", &FockState::cutoff)
      .def_property_readonly("leakage", &FockState::leakage)
      .def("amplitudes",
           [](const FockState& s) {
             return Eigen::MatrixXcd(Eigen::Map<const Eigen::Matrix<
                 cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                 s.amplitudes().data(), s.dim(), s.dim()));
           })
      .def("expectation", [](const FockState& s, FockObservable o) {
        return fock_expectation(s, o);
      });

  m.def("simulate_su11", &simulate_su11, py::arg("spec"), py::arg("cutoff") = kDefaultCutoff,
        py::arg("adaptive") = true);
  m.def("fock_moments", &fock_moments);
}

void bind_sweep(py::module_& m) {
  m.def(
      "sweep_csv",
      [](const std::string& config_text) {
        std::istringstream in(config_text);
        const SweepConfig config = parse_config(in);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(config);
        }
        std::ostringstream out;
        write_csv(out, rows);
        return out.str();
      },
      py::arg("config_text"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian SU(1,1) and Mach-Zehnder interferometry";
  m.attr("__version__") = kVersion;
  bind_errors(m);
  bind_states(m);
  bind_transforms(m);
  bind_detection(m);
  bind_metrology(m);
  bind_fock(m);
  bind_sweep(m);
}
