#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hermeis/sweep.hpp"

namespace hermeis {

// Sweep CSV, one row per (frequency, channel). Columns, in order:
// freq_hz, freq_actual_hz, channel, zmag_ohm_raw, zmag_ohm_cal, zphase_deg,
// i_acc, q_acc, clipped, overflow. Floats carry 9 significant digits; rows
// are ordered by frequency then channel.
extern const char* const kSweepCsvHeader;

void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::string sweep_csv_string(const SweepResult& result);
std::vector<SpectrumPoint> read_sweep_csv(std::istream& in);

// One sweep point joined with its analytic ground truth.
struct PointError {
    double f_req = 0.0;
    double f_dds = 0.0;
    int channel_id = -1;
    double period = 0.0;  // samples per cycle at this frequency
    double z_mag_meas = 0.0;
    double z_mag_truth = 0.0;
    double mag_rel_err = 0.0;
    double z_phase_meas = 0.0;
    double z_phase_truth = 0.0;
    double phase_abs_err = 0.0;
};

struct DecadeSummary {
    double f_lo = 0.0;
    double f_hi = 0.0;
    int count = 0;
    double median_mag_err = 0.0;
    double max_mag_err = 0.0;
    double median_phase_err = 0.0;
    double max_phase_err = 0.0;
};

// Verification verdict against the closed-form ground truth. Ideal-converter
// runs are held to per-point limits (2% / 2 deg with at least 64 samples per
// period, 10% / 5 deg approaching the sampling limit); quantized runs to
// grid medians of 5% / 3 deg.
struct RunReport {
    std::vector<PointError> points;
    std::vector<DecadeSummary> decades;
    double median_mag_err = 0.0;
    double median_phase_err = 0.0;
    double max_mag_err = 0.0;
    double max_phase_err = 0.0;
    bool ideal_mode = false;
    bool passed = false;
};

RunReport verify_sweep(const SweepResult& result);

void write_report_csv(const RunReport& report, std::ostream& out);
void print_report_summary(const RunReport& report, std::ostream& out);

// Corner frequency of the Faradaic branch: the -45 degree crossing of the
// series-resistance-compensated response, log-interpolated between grid
// points. `points` must belong to a single channel, frequency-ascending.
double faradaic_corner_hz(std::span<const SpectrumPoint> points, double r_series);

}  // namespace hermeis
