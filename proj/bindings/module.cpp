#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "hermeis/config.hpp"
#include "hermeis/errors.hpp"
#include "hermeis/iq_core.hpp"
#include "hermeis/report.hpp"
#include "hermeis/sweep.hpp"

namespace py = pybind11;
using namespace hermeis;

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream ss;
    ss << numerator(r) << "/" << denominator(r);
    return ss.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "single-cycle I/Q impedance sweep simulator";

    py::register_exception<BandError>(m, "BandError");
    py::register_exception<PlanError>(m, "PlanError");
    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<MissingGroundTruth>(m, "MissingGroundTruthError");

    py::class_<ClockConfig>(m, "ClockConfig")
        .def(py::init<>())
        .def_readwrite("f_s", &ClockConfig::f_s)
        .def_readwrite("f_clk", &ClockConfig::f_clk)
        .def_readwrite("f_dds_clk", &ClockConfig::f_dds_clk)
        .def_readwrite("fcw_bits", &ClockConfig::fcw_bits)
        .def("band_low", &ClockConfig::band_low)
        .def("band_high", &ClockConfig::band_high);

    py::class_<SamplingPlan>(m, "SamplingPlan")
        .def_readonly("f_req", &SamplingPlan::f_req)
        .def_readonly("fcw", &SamplingPlan::fcw)
        .def_readonly("f_dds", &SamplingPlan::f_dds)
        .def_readonly("f_adapt", &SamplingPlan::f_adapt)
        .def_readonly("samples_per_period_nominal", &SamplingPlan::samples_per_period_nominal)
        .def_readonly("divider", &SamplingPlan::divider)
        .def_readonly("f_eff", &SamplingPlan::f_eff)
        .def_readonly("f_err", &SamplingPlan::f_err)
        .def_readonly("cycle_samples", &SamplingPlan::cycle_samples)
        .def_property_readonly(
            "period", [](const SamplingPlan& p) { return to_double(p.period_samples); })
        .def_property_readonly(
            "period_rational", [](const SamplingPlan& p) { return rational_str(p.period_samples); })
        .def("__repr__", [](const SamplingPlan& p) {
            std::ostringstream ss;
            ss << "SamplingPlan(f_req=" << p.f_req << ", fcw=" << p.fcw << ", f_dds=" << p.f_dds
               << ", divider=" << p.divider << ", period=" << to_double(p.period_samples) << ")";
            return ss.str();
        });

    m.def("compute_fcw", &compute_fcw, py::arg("f_i"), py::arg("clocks") = ClockConfig{});
    m.def("fcw_unchecked", &fcw_unchecked, py::arg("f_i"), py::arg("clocks") = ClockConfig{});
    m.def("plan_sampling", &plan_sampling, py::arg("f_i"), py::arg("clocks") = ClockConfig{});
    m.def(
        "quarter_boundaries",
        [](const SamplingPlan& plan) {
            py::list out;
            for (const auto& b : quarter_boundaries(plan))
                out.append(py::make_tuple(b.index, to_double(b.residue), rational_str(b.residue)));
            return out;
        },
        py::arg("plan"), "five (index, residue, residue_exact) boundaries at j*P/4");
    m.def(
        "overflow_budget",
        [](const SamplingPlan& plan, int bits) {
            OverflowBudget b = overflow_budget(plan, bits);
            return py::make_tuple(b.frac_bits, b.max_period, b.fits);
        },
        py::arg("plan"), py::arg("bits") = 10, "(frac_bits, max_period, fits) for a plan");

    py::class_<RandlesModel>(m, "RandlesModel")
        .def(py::init([](double r_s, double r_f, double c_dl) {
                 RandlesModel mdl{r_s, r_f, c_dl};
                 mdl.validate();
                 return mdl;
             }),
             py::arg("r_series"), py::arg("r_faradaic"), py::arg("c_dl"))
        .def_readwrite("r_series", &RandlesModel::r_series)
        .def_readwrite("r_faradaic", &RandlesModel::r_faradaic)
        .def_readwrite("c_dl", &RandlesModel::c_dl)
        .def("corner_hz", &RandlesModel::corner_hz);

    py::class_<RheostatSpec>(m, "RheostatSpec")
        .def(py::init<>())
        .def_readwrite("r_max", &RheostatSpec::r_max)
        .def_readwrite("r_min", &RheostatSpec::r_min)
        .def_readwrite("r_amp", &RheostatSpec::r_amp);

    m.def("randles_impedance", &randles_impedance, py::arg("model"), py::arg("omega"));
    m.def("rheostat_resistance", &rheostat_resistance, py::arg("code"),
          py::arg("spec") = RheostatSpec{});
    m.def("reference_amplitude", &reference_amplitude, py::arg("n_in"), py::arg("v_in_pp"),
          py::arg("spec") = RheostatSpec{});
    m.def("adc_quantize", &adc_quantize, py::arg("v"), py::arg("v_dd") = 3.3, py::arg("bits") = 10);

    py::class_<PointFlags>(m, "PointFlags")
        .def_readonly("overflow", &PointFlags::overflow)
        .def_readonly("clipped", &PointFlags::clipped);

    py::class_<SpectrumPoint>(m, "SpectrumPoint")
        .def_readonly("f_req", &SpectrumPoint::f_req)
        .def_readonly("f_dds", &SpectrumPoint::f_dds)
        .def_readonly("channel_id", &SpectrumPoint::channel_id)
        .def_readonly("z_mag_raw", &SpectrumPoint::z_mag_raw)
        .def_readonly("z_mag_cal", &SpectrumPoint::z_mag_cal)
        .def_readonly("z_phase_deg", &SpectrumPoint::z_phase_deg)
        .def_readonly("i_scaled", &SpectrumPoint::i_scaled)
        .def_readonly("q_scaled", &SpectrumPoint::q_scaled)
        .def_readonly("flags", &SpectrumPoint::flags)
        .def("__repr__", [](const SpectrumPoint& p) {
            std::ostringstream ss;
            ss << "SpectrumPoint(f=" << p.f_req << ", ch=" << p.channel_id
               << ", zmag=" << p.z_mag_raw << ", phase=" << p.z_phase_deg << ")";
            return ss.str();
        });

    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def_readwrite("id", &ChannelConfig::id)
        .def_readwrite("n_out", &ChannelConfig::n_out)
        .def_readwrite("noise_rms", &ChannelConfig::noise_rms)
        .def_readwrite("first_cycle_glitch", &ChannelConfig::first_cycle_glitch)
        .def_readwrite("rng_seed", &ChannelConfig::rng_seed);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("grid", &SweepConfig::grid)
        .def_readwrite("clocks", &SweepConfig::clocks)
        .def_readwrite("source_vpp", &SweepConfig::source_vpp)
        .def_readwrite("n_in", &SweepConfig::n_in)
        .def_readwrite("v_offset", &SweepConfig::v_offset)
        .def_readwrite("phase", &SweepConfig::phase)
        .def_readwrite("v_mid", &SweepConfig::v_mid)
        .def_readwrite("ref_noise_rms", &SweepConfig::ref_noise_rms)
        .def_readwrite("ref_seed", &SweepConfig::ref_seed)
        .def_readwrite("controller_overhead_s", &SweepConfig::controller_overhead_s)
        .def_readwrite("threads", &SweepConfig::threads)
        .def_property(
            "alpha", [](const SweepConfig& c) { return c.cal.alpha; },
            [](SweepConfig& c, double a) { c.cal.alpha = a; })
        .def_property(
            "ideal_adc", [](const SweepConfig& c) { return c.adc.ideal; },
            [](SweepConfig& c, bool v) { c.adc.ideal = v; })
        .def_property_readonly("channels",
                               [](const SweepConfig& c) { return c.channels; })
        .def("add_randles_channel",
             [](SweepConfig& c, int id, double r_s, double r_f, double c_dl, int n_out,
                double noise_rms, double glitch, std::uint64_t seed) {
                 ChannelConfig ch;
                 ch.id = id;
                 ch.dut = RandlesModel{r_s, r_f, c_dl};
                 ch.n_out = n_out;
                 ch.noise_rms = noise_rms;
                 ch.first_cycle_glitch = glitch;
                 ch.rng_seed = seed;
                 c.channels.push_back(ch);
             },
             py::arg("id"), py::arg("r_series"), py::arg("r_faradaic"), py::arg("c_dl"),
             py::arg("n_out") = 100, py::arg("noise_rms") = 0.0, py::arg("glitch") = 0.0,
             py::arg("seed") = 0)
        .def("add_table_channel",
             [](SweepConfig& c, int id, const std::vector<double>& freq_hz,
                const std::vector<std::complex<double>>& z, int n_out, double noise_rms,
                std::uint64_t seed) {
                 TableModel table;
                 table.freq_hz = freq_hz;
                 table.z = z;
                 table.validate();
                 ChannelConfig ch;
                 ch.id = id;
                 ch.dut = table;
                 ch.n_out = n_out;
                 ch.noise_rms = noise_rms;
                 ch.rng_seed = seed;
                 c.channels.push_back(ch);
             },
             py::arg("id"), py::arg("freq_hz"), py::arg("z"), py::arg("n_out") = 100,
             py::arg("noise_rms") = 0.0, py::arg("seed") = 0,
             "channel that replays a tabulated spectrum (log-frequency interpolation)")
        .def("validate", &SweepConfig::validate)
        .def("warnings", &SweepConfig::warnings);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_readonly("modeled_seconds", &SweepResult::modeled_seconds)
        .def_readonly("config", &SweepResult::config);

    m.def("log_grid", &log_grid, py::arg("f_lo"), py::arg("f_hi"), py::arg("n"));
    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("acquisition_time", &acquisition_time, py::arg("config"));
    m.def("channel_capacity", &channel_capacity, py::arg("throughput_bytes_per_s"),
          py::arg("pair_bytes"));

    m.def("parse_config", &parse_config, py::arg("path"));
    m.def(
        "parse_config_text",
        [](const std::string& text) { return parse_config_text(text); },
        py::arg("text"));
    m.def("sweep_csv", &sweep_csv_string, py::arg("result"));
    m.def(
        "write_csv",
        [](const SweepResult& result, const std::string& path) {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw ParseError("cannot open output file '" + path + "'");
            write_sweep_csv(result, out);
        },
        py::arg("result"), py::arg("path"));
    m.def(
        "verify",
        [](const SweepResult& result) {
            RunReport rep = verify_sweep(result);
            py::dict out;
            out["passed"] = rep.passed;
            out["ideal_mode"] = rep.ideal_mode;
            out["median_mag_err"] = rep.median_mag_err;
            out["median_phase_err"] = rep.median_phase_err;
            out["max_mag_err"] = rep.max_mag_err;
            out["max_phase_err"] = rep.max_phase_err;
            return out;
        },
        py::arg("result"), "ground-truth check; returns a summary dict");
    m.def("faradaic_corner_hz",
          [](const std::vector<SpectrumPoint>& points, double r_series) {
              return faradaic_corner_hz(points, r_series);
          },
          py::arg("points"), py::arg("r_series"));
}
