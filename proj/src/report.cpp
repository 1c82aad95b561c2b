#include "hermeis/report.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hermeis/errors.hpp"

namespace hermeis {

const char* const kSweepCsvHeader =
    "freq_hz,freq_actual_hz,channel,zmag_ohm_raw,zmag_ohm_cal,zphase_deg,i_acc,q_acc,clipped,overflow";

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<const SpectrumPoint*> csv_order(const SweepResult& result) {
    std::vector<const SpectrumPoint*> rows;
    rows.reserve(result.points.size());
    for (const auto& p : result.points) rows.push_back(&p);
    std::stable_sort(rows.begin(), rows.end(), [](const SpectrumPoint* a, const SpectrumPoint* b) {
        if (a->f_req != b->f_req) return a->f_req < b->f_req;
        return a->channel_id < b->channel_id;
    });
    return rows;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const SpectrumPoint* p : csv_order(result)) {
        out << fmt9(p->f_req) << ',' << fmt9(p->f_dds) << ',' << p->channel_id << ','
            << fmt9(p->z_mag_raw) << ',' << fmt9(p->z_mag_cal) << ',' << fmt9(p->z_phase_deg) << ','
            << fmt9(p->i_scaled) << ',' << fmt9(p->q_scaled) << ',' << (p->flags.clipped ? 1 : 0)
            << ',' << (p->flags.overflow ? 1 : 0) << '\n';
    }
}

std::string sweep_csv_string(const SweepResult& result) {
    std::ostringstream ss;
    write_sweep_csv(result, ss);
    return ss.str();
}

std::vector<SpectrumPoint> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw ParseError("sweep CSV: missing or unexpected header");
    std::vector<SpectrumPoint> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        SpectrumPoint p;
        int clipped = 0, overflow = 0;
        if (!(row >> p.f_req >> p.f_dds >> p.channel_id >> p.z_mag_raw >> p.z_mag_cal >>
              p.z_phase_deg >> p.i_scaled >> p.q_scaled >> clipped >> overflow))
            throw ParseError("sweep CSV: malformed row at line " + std::to_string(lineno));
        p.flags.clipped = clipped != 0;
        p.flags.overflow = overflow != 0;
        out.push_back(p);
    }
    return out;
}

RunReport verify_sweep(const SweepResult& result) {
    const SweepConfig& cfg = result.config;
    RunReport report;
    report.ideal_mode = cfg.adc.ideal;

    std::map<int, const ChannelConfig*> by_id;
    for (const auto& ch : cfg.channels) {
        if (!std::holds_alternative<RandlesModel>(ch.dut))
            throw MissingGroundTruth("channel " + std::to_string(ch.id) +
                                     " uses a table model without an analytic reference");
        by_id[ch.id] = &ch;
    }

    std::map<double, double> period_of;  // requested frequency -> samples/period
    for (double f : cfg.grid)
        period_of[f] = to_double(plan_sampling(f, cfg.clocks).period_samples);

    std::vector<double> mag_errs, phase_errs;
    bool per_point_ok = true;
    for (const SpectrumPoint& p : result.points) {
        const auto& model = std::get<RandlesModel>(by_id.at(p.channel_id)->dut);
        const std::complex<double> truth =
            randles_impedance(model, 2.0 * std::numbers::pi * p.f_dds);

        PointError e;
        e.f_req = p.f_req;
        e.f_dds = p.f_dds;
        e.channel_id = p.channel_id;
        e.period = period_of.at(p.f_req);
        e.z_mag_meas = p.z_mag_raw;
        e.z_mag_truth = std::abs(truth);
        e.mag_rel_err = std::abs(p.z_mag_raw - e.z_mag_truth) / e.z_mag_truth;
        e.z_phase_meas = p.z_phase_deg;
        e.z_phase_truth = std::arg(truth) * 180.0 / std::numbers::pi;
        e.phase_abs_err = std::abs(wrap_degrees(p.z_phase_deg - e.z_phase_truth));
        report.points.push_back(e);

        mag_errs.push_back(e.mag_rel_err);
        phase_errs.push_back(e.phase_abs_err);
        if (report.ideal_mode) {
            const bool fine = e.period >= 64.0;
            const double mag_lim = fine ? 0.02 : 0.10;
            const double phase_lim = fine ? 2.0 : 5.0;
            if (!(e.mag_rel_err <= mag_lim && e.phase_abs_err <= phase_lim)) per_point_ok = false;
        }
    }

    std::stable_sort(report.points.begin(), report.points.end(),
                     [](const PointError& a, const PointError& b) {
                         if (a.f_req != b.f_req) return a.f_req < b.f_req;
                         return a.channel_id < b.channel_id;
                     });

    report.median_mag_err = median(mag_errs);
    report.median_phase_err = median(phase_errs);
    report.max_mag_err = mag_errs.empty() ? 0.0 : *std::max_element(mag_errs.begin(), mag_errs.end());
    report.max_phase_err =
        phase_errs.empty() ? 0.0 : *std::max_element(phase_errs.begin(), phase_errs.end());

    // per-decade roll-up
    std::map<int, std::vector<const PointError*>> decades;
    for (const auto& e : report.points)
        decades[static_cast<int>(std::floor(std::log10(e.f_req)))].push_back(&e);
    for (const auto& [dec, pts] : decades) {
        DecadeSummary d;
        d.f_lo = std::pow(10.0, dec);
        d.f_hi = std::pow(10.0, dec + 1);
        d.count = static_cast<int>(pts.size());
        std::vector<double> m, ph;
        for (const auto* e : pts) {
            m.push_back(e->mag_rel_err);
            ph.push_back(e->phase_abs_err);
        }
        d.median_mag_err = median(m);
        d.max_mag_err = *std::max_element(m.begin(), m.end());
        d.median_phase_err = median(ph);
        d.max_phase_err = *std::max_element(ph.begin(), ph.end());
        report.decades.push_back(d);
    }

    report.passed = report.ideal_mode
                        ? per_point_ok
                        : (report.median_mag_err <= 0.05 && report.median_phase_err <= 3.0);
    return report;
}

void write_report_csv(const RunReport& report, std::ostream& out) {
    out << "freq_hz,freq_actual_hz,channel,zmag_meas_ohm,zmag_truth_ohm,mag_rel_err,"
           "zphase_meas_deg,zphase_truth_deg,phase_abs_err_deg\n";
    for (const auto& e : report.points) {
        out << fmt9(e.f_req) << ',' << fmt9(e.f_dds) << ',' << e.channel_id << ','
            << fmt9(e.z_mag_meas) << ',' << fmt9(e.z_mag_truth) << ',' << fmt9(e.mag_rel_err) << ','
            << fmt9(e.z_phase_meas) << ',' << fmt9(e.z_phase_truth) << ',' << fmt9(e.phase_abs_err)
            << '\n';
    }
}

void print_report_summary(const RunReport& report, std::ostream& out) {
    out << "mode: " << (report.ideal_mode ? "ideal converter, per-point limits"
                                          : "quantized converter, median limits")
        << "\n";
    out << "points: " << report.points.size() << "\n";
    char buf[160];
    for (const auto& d : report.decades) {
        std::snprintf(buf, sizeof buf,
                      "decade %9.3g-%9.3g Hz  n=%3d  |Z| err median %7.3f%% max %7.3f%%  "
                      "phase err median %6.3f deg max %6.3f deg",
                      d.f_lo, d.f_hi, d.count, 100.0 * d.median_mag_err, 100.0 * d.max_mag_err,
                      d.median_phase_err, d.max_phase_err);
        out << buf << "\n";
    }
    std::snprintf(buf, sizeof buf,
                  "overall |Z| err median %.4f%% max %.4f%%, phase err median %.4f deg max %.4f deg",
                  100.0 * report.median_mag_err, 100.0 * report.max_mag_err,
                  report.median_phase_err, report.max_phase_err);
    out << buf << "\n";
    out << (report.passed ? "PASS" : "FAIL") << "\n";
}

double faradaic_corner_hz(std::span<const SpectrumPoint> points, double r_series) {
    double prev_f = 0.0, prev_phase = 0.0;
    bool have_prev = false;
    for (const auto& p : points) {
        const std::complex<double> z =
            std::polar(p.z_mag_raw, p.z_phase_deg * std::numbers::pi / 180.0);
        const std::complex<double> branch = z - r_series;
        const double phase = std::arg(branch) * 180.0 / std::numbers::pi;
        if (have_prev && prev_phase > -45.0 && phase <= -45.0) {
            const double t = (-45.0 - prev_phase) / (phase - prev_phase);
            return std::exp(std::log(prev_f) + t * (std::log(p.f_dds) - std::log(prev_f)));
        }
        prev_f = p.f_dds;
        prev_phase = phase;
        have_prev = true;
    }
    throw DegenerateError("no -45 degree crossing of the compensated response in the sweep band");
}

}  // namespace hermeis
