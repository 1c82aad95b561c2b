#pragma once

#include <complex>
#include <span>
#include <utility>

#include "hermeis/adc.hpp"
#include "hermeis/freq_plan.hpp"
#include "hermeis/iq_core.hpp"

namespace hermeis {

enum class ChannelRole { reference, working };

// X = I - jQ, negated for working channels to undo the inverting readout.
struct ComplexResponse {
    std::complex<double> value;
    ChannelRole role = ChannelRole::reference;
};

ComplexResponse intermediary(const IQAccumulator& iq, ChannelRole role);

struct CalibrationConfig {
    double alpha = 1.0 / 600.0;  // empirical magnitude calibration
    void validate() const;
};

struct PointFlags {
    bool overflow = false;
    bool clipped = false;
};

struct SpectrumPoint {
    double f_req = 0.0;   // requested frequency, Hz
    double f_dds = 0.0;   // synthesized frequency, Hz
    int channel_id = -1;
    double z_mag_raw = 0.0;    // ohms
    double z_mag_cal = 0.0;    // alpha * z_mag_raw
    double z_phase_deg = 0.0;  // wrapped to (-180, 180]
    double i_scaled = 0.0;     // working-channel accumulator pair, as staged
    double q_scaled = 0.0;
    PointFlags flags;
};

double wrap_degrees(double deg);

// |Z| = R_out * |X_ref| / |X_ch|, phase = arg X_ref - arg X_ch. Frequency and
// channel fields are left for the caller to fill.
SpectrumPoint impedance_point(const ComplexResponse& x_ref, const ComplexResponse& x_ch,
                              double r_out, const CalibrationConfig& cal);

// Independent validation path: single-bin correlation over exactly one
// period (residue-weighted partial sample at the end), exact-rational phase
// steps. Returns (amplitude in codes, phase in degrees) in the same
// convention as intermediary().
std::pair<double, double> dft_oracle(std::span<const float> cycle, const SamplingPlan& plan);

// Amplitude/phase of the underlying tone from an I/Q pair. Inverts the
// zero-order-hold systematics of the quarter-sum path: amplitude
// |X|*sin(pi/P), phase arg(X) + 180/P degrees (exact for integer P).
std::pair<double, double> tone_estimate(const IQAccumulator& iq, const SamplingPlan& plan);

}  // namespace hermeis
