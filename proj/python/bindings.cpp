#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alphaduplex/analytic.hpp"
#include "alphaduplex/config.hpp"
#include "alphaduplex/errors.hpp"
#include "alphaduplex/model.hpp"
#include "alphaduplex/montecarlo.hpp"
#include "alphaduplex/pulse.hpp"
#include "alphaduplex/sweep.hpp"

namespace py = pybind11;
using namespace alphaduplex;

namespace {

FactorProvider factors_from(const SystemParams& p, const py::object& pulses) {
    if (pulses.is_none()) return pulse_factor_provider(p, PulsePair{});
    if (py::isinstance<InterferenceFactors>(pulses)) return constant_factor_provider(pulses.cast<InterferenceFactors>());
    return pulse_factor_provider(p, pulses.cast<PulsePair>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "alpha-duplex cellular network evaluator";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<StarvationError>(m, "StarvationError", PyExc_RuntimeError);
    py::register_exception<NoCrossingError>(m, "NoCrossingError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Direction>(m, "Direction").value("UPLINK", Direction::Uplink).value("DOWNLINK", Direction::Downlink);
    py::enum_<PulseKind>(m, "PulseKind")
        .value("RECTANGULAR", PulseKind::Rectangular)
        .value("TRIANGULAR", PulseKind::Triangular);
    py::enum_<Source>(m, "Source").value("ANALYTIC", Source::Analytic).value("MONTE_CARLO", Source::MonteCarlo);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init(&default_params))
        .def_readwrite("lambda_bs", &SystemParams::lambda_bs)
        .def_readwrite("eta", &SystemParams::eta)
        .def_readwrite("rho", &SystemParams::rho)
        .def_readwrite("p_b", &SystemParams::p_b)
        .def_readwrite("p_u_max", &SystemParams::p_u_max)
        .def_readwrite("beta", &SystemParams::beta)
        .def_readwrite("n0", &SystemParams::n0)
        .def_readwrite("b_u", &SystemParams::b_u)
        .def_readwrite("b_d", &SystemParams::b_d)
        .def_readwrite("omega1_u", &SystemParams::omega1_u)
        .def_readwrite("omega2_u", &SystemParams::omega2_u)
        .def_readwrite("omega1_d", &SystemParams::omega1_d)
        .def_readwrite("omega2_d", &SystemParams::omega2_d)
        .def_readwrite("m_symbols", &SystemParams::m_symbols)
        .def("validate", &SystemParams::validate)
        .def("max_serving_distance", &SystemParams::max_serving_distance)
        .def("noise_variance", &SystemParams::noise_variance)
        .def(py::self == py::self);
    m.def("default_params", &default_params);
    m.def("distance_pdf", &distance_pdf, py::arg("r"), py::arg("params"));
    m.def("uplink_power_moment", &uplink_power_moment, py::arg("a"), py::arg("params"));

    py::class_<PulsePair>(m, "PulsePair")
        .def(py::init([](PulseKind d, PulseKind u) { return PulsePair{d, u}; }),
             py::arg("downlink") = PulseKind::Rectangular, py::arg("uplink") = PulseKind::Triangular)
        .def_readwrite("downlink", &PulsePair::downlink)
        .def_readwrite("uplink", &PulsePair::uplink);
    m.def("parse_pulse_kind", [](const std::string& s) { return parse_pulse_kind(s); });

    py::class_<InterferenceFactors>(m, "InterferenceFactors")
        .def(py::init(&InterferenceFactors::cross), py::arg("du") = 0.0, py::arg("ud") = 0.0)
        .def_readonly("i_du_sq", &InterferenceFactors::i_du_sq)
        .def_readonly("i_ud_sq", &InterferenceFactors::i_ud_sq)
        .def_readonly("i_su_sq", &InterferenceFactors::i_su_sq)
        .def_readonly("i_sd_sq", &InterferenceFactors::i_sd_sq)
        .def_readonly("i_uu_sq", &InterferenceFactors::i_uu_sq)
        .def_readonly("i_dd_sq", &InterferenceFactors::i_dd_sq);
    m.def(
        "interference_factors",
        [](const SystemParams& p, double alpha, const PulsePair& pulses) { return interference_factors(BandPlan(p, alpha), pulses); },
        py::arg("params"), py::arg("alpha"), py::arg("pulses") = PulsePair{});

    py::class_<LinkMetrics>(m, "LinkMetrics")
        .def_readonly("direction", &LinkMetrics::direction)
        .def_readonly("alpha", &LinkMetrics::alpha)
        .def_readonly("ber", &LinkMetrics::ber)
        .def_readonly("bandwidth", &LinkMetrics::bandwidth)
        .def_readonly("throughput", &LinkMetrics::throughput);
    m.def("ber_uplink", [](double a, const InterferenceFactors& f, const SystemParams& p) { return ber_uplink(a, f, p); },
          py::arg("alpha"), py::arg("factors"), py::arg("params"));
    m.def("ber_downlink", [](double a, const InterferenceFactors& f, const SystemParams& p) { return ber_downlink(a, f, p); },
          py::arg("alpha"), py::arg("factors"), py::arg("params"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("n_realizations", &SimConfig::n_realizations)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("region_side", &SimConfig::region_side)
        .def_readwrite("core_side", &SimConfig::core_side)
        .def_readwrite("candidate_cap", &SimConfig::candidate_cap);

    py::class_<EmpiricalMetrics>(m, "EmpiricalMetrics")
        .def_readonly("direction", &EmpiricalMetrics::direction)
        .def_readonly("alpha", &EmpiricalMetrics::alpha)
        .def_readonly("mean_ber", &EmpiricalMetrics::mean_ber)
        .def_readonly("std_err", &EmpiricalMetrics::std_err)
        .def_readonly("n_links", &EmpiricalMetrics::n_links)
        .def_readonly("bandwidth", &EmpiricalMetrics::bandwidth)
        .def_readonly("throughput", &EmpiricalMetrics::throughput);
    m.def(
        "run_campaign",
        [](const SystemParams& p, const SimConfig& cfg, const std::vector<double>& alphas, const py::object& pulses) {
            const FactorProvider f = factors_from(p, pulses);
            py::gil_scoped_release release;
            return run_campaign(p, cfg, alphas, f);
        },
        py::arg("params"), py::arg("sim"), py::arg("alphas"), py::arg("pulses") = py::none());

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("alpha", &SweepRow::alpha)
        .def_readonly("ul", &SweepRow::ul)
        .def_readonly("dl", &SweepRow::dl);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("source", &SweepResult::source);
    py::class_<ThroughputPair>(m, "ThroughputPair")
        .def_readonly("ul", &ThroughputPair::ul)
        .def_readonly("dl", &ThroughputPair::dl);
    py::class_<OperatingPoints>(m, "OperatingPoints")
        .def_readonly("balanced_alpha", &OperatingPoints::balanced_alpha)
        .def_readonly("balanced", &OperatingPoints::balanced)
        .def_readonly("crossings", &OperatingPoints::crossings)
        .def_readonly("unbalanced_alpha", &OperatingPoints::unbalanced_alpha)
        .def_readonly("unbalanced", &OperatingPoints::unbalanced)
        .def_readonly("hd", &OperatingPoints::hd)
        .def_readonly("fd", &OperatingPoints::fd);
    py::class_<SchemeComparison>(m, "SchemeComparison")
        .def_readonly("fd_ul_pct", &SchemeComparison::fd_ul_pct)
        .def_readonly("fd_dl_pct", &SchemeComparison::fd_dl_pct)
        .def_readonly("balanced_ul_pct", &SchemeComparison::balanced_ul_pct)
        .def_readonly("balanced_dl_pct", &SchemeComparison::balanced_dl_pct)
        .def_readonly("unbalanced_ul_pct", &SchemeComparison::unbalanced_ul_pct)
        .def_readonly("unbalanced_dl_pct", &SchemeComparison::unbalanced_dl_pct);

    m.def("make_alpha_grid", &make_alpha_grid, py::arg("start"), py::arg("stop"), py::arg("step"));
    m.def(
        "sweep_alpha",
        [](const SystemParams& p, const std::vector<double>& grid, const py::object& pulses, Source source,
           const SimConfig& sim) {
            const FactorProvider f = factors_from(p, pulses);
            py::gil_scoped_release release;
            return sweep_alpha(p, f, grid, source, sim);
        },
        py::arg("params"), py::arg("grid"), py::arg("pulses") = py::none(), py::arg("source") = Source::Analytic,
        py::arg("sim") = SimConfig{});
    m.def(
        "find_operating_points",
        [](const SweepResult& sr, const SystemParams& p, const py::object& pulses, double tol) {
            if (sr.source == Source::MonteCarlo) return find_operating_points(sr, tol);
            const FactorProvider f = factors_from(p, pulses);
            py::gil_scoped_release release;
            return find_operating_points(sr, analytic_evaluator(p, f), tol);
        },
        py::arg("sweep"), py::arg("params"), py::arg("pulses") = py::none(), py::arg("refine_tol") = 1e-6);
    m.def("compare_duplex_schemes", &compare_duplex_schemes, py::arg("sweep"), py::arg("points"));

    m.def("parse_alpha_grid", [](const std::string& s) { return parse_alpha_grid(s); });
    m.def(
        "parse_config",
        [](const std::string& text) {
            const RunConfig c = parse_config(text);
            return py::make_tuple(c.params, c.sim, c.pulses);
        },
        py::arg("text"), "Returns (SystemParams, SimConfig, PulsePair).");
}
