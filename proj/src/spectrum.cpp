#include "hermeis/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "hermeis/errors.hpp"

namespace hermeis {

void CalibrationConfig::validate() const {
    if (!(alpha > 0.0)) throw ValidationError("calibration alpha must be positive");
}

ComplexResponse intermediary(const IQAccumulator& iq, ChannelRole role) {
    std::complex<double> x(iq.i_scaled, -iq.q_scaled);
    if (role == ChannelRole::working) x = -x;
    if (x == std::complex<double>(0.0, 0.0))
        throw DegenerateError("zero complex response (open circuit or dead channel)");
    return {x, role};
}

double wrap_degrees(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg <= -180.0) deg += 360.0;
    if (deg > 180.0) deg -= 360.0;
    return deg;
}

SpectrumPoint impedance_point(const ComplexResponse& x_ref, const ComplexResponse& x_ch,
                              double r_out, const CalibrationConfig& cal) {
    cal.validate();
    if (!(r_out > 0.0)) throw ValidationError("impedance_point needs r_out > 0");
    const double mag_ch = std::abs(x_ch.value);
    if (mag_ch == 0.0) throw DegenerateError("working-channel response has zero magnitude");

    SpectrumPoint p;
    p.z_mag_raw = r_out * std::abs(x_ref.value) / mag_ch;
    p.z_mag_cal = cal.alpha * p.z_mag_raw;
    p.z_phase_deg = wrap_degrees((std::arg(x_ref.value) - std::arg(x_ch.value)) * 180.0 / std::numbers::pi);
    return p;
}

std::pair<double, double> dft_oracle(std::span<const float> cycle, const SamplingPlan& plan) {
    const auto bounds = quarter_boundaries(plan);
    const std::int64_t full = bounds[4].index;  // floor(P)
    const Rational& tail = bounds[4].residue;
    const std::int64_t needed = full + (tail != 0 ? 1 : 0);
    if (static_cast<std::int64_t>(cycle.size()) < needed)
        throw LengthError("dft_oracle needs one full cycle");

    PhaseAccumulator acc(plan.period_samples);
    double c = 0.0, s = 0.0;
    for (std::int64_t n = 0; n < full; ++n) {
        const double th = acc.next();
        c += cycle[n] * std::cos(th);
        s += cycle[n] * std::sin(th);
    }
    if (tail != 0) {
        const double w = to_double(tail);
        const double th = acc.next();
        c += w * cycle[full] * std::cos(th);
        s += w * cycle[full] * std::sin(th);
    }
    const double period = to_double(plan.period_samples);
    const double mag = 2.0 * std::hypot(c, s) / period;
    const double phase = std::atan2(c, s) * 180.0 / std::numbers::pi;
    return {mag, phase};
}

std::pair<double, double> tone_estimate(const IQAccumulator& iq, const SamplingPlan& plan) {
    const double period = to_double(plan.period_samples);
    const std::complex<double> x(iq.i_scaled, -iq.q_scaled);
    const double amp = std::abs(x) * std::sin(std::numbers::pi / period);
    const double phase = wrap_degrees(std::arg(x) * 180.0 / std::numbers::pi + 180.0 / period);
    return {amp, phase};
}

}  // namespace hermeis
