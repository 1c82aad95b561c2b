#include "hermeis/afe_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hermeis/errors.hpp"
#include "signal_synth.hpp"

namespace hermeis {

double RandlesModel::corner_hz() const { return corner_rad() / (2.0 * std::numbers::pi); }

void RandlesModel::validate() const {
    if (!(r_series > 0.0) || !(r_faradaic > 0.0) || !(c_dl > 0.0))
        throw ValidationError("Randles components must be strictly positive");
}

std::complex<double> randles_impedance(const RandlesModel& model, double omega) {
    return model.r_series +
           model.r_faradaic / std::complex<double>(1.0, omega * model.r_faradaic * model.c_dl);
}

void TableModel::validate() const {
    if (freq_hz.size() < 2 || freq_hz.size() != z.size())
        throw ValidationError("impedance table needs at least two (frequency, Z) rows");
    for (std::size_t i = 0; i + 1 < freq_hz.size(); ++i)
        if (!(freq_hz[i] > 0.0) || !(freq_hz[i] < freq_hz[i + 1]))
            throw ValidationError("impedance table frequencies must be positive and strictly increasing");
}

std::complex<double> table_impedance(const TableModel& model, double f) {
    if (f <= model.freq_hz.front()) return model.z.front();
    if (f >= model.freq_hz.back()) return model.z.back();
    auto it = std::upper_bound(model.freq_hz.begin(), model.freq_hz.end(), f);
    std::size_t hi = static_cast<std::size_t>(it - model.freq_hz.begin());
    std::size_t lo = hi - 1;
    double t = (std::log(f) - std::log(model.freq_hz[lo])) /
               (std::log(model.freq_hz[hi]) - std::log(model.freq_hz[lo]));
    return model.z[lo] + t * (model.z[hi] - model.z[lo]);
}

std::complex<double> dut_impedance(const DutModel& dut, double f) {
    return std::visit(
        [f](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandlesModel>)
                return randles_impedance(m, 2.0 * std::numbers::pi * f);
            else
                return table_impedance(m, f);
        },
        dut);
}

void RheostatSpec::validate() const {
    if (!(r_min > 0.0) || !(r_min < r_max)) throw ValidationError("rheostat needs 0 < r_min < r_max");
    if (!(r_amp > 0.0)) throw ValidationError("rheostat r_amp must be positive");
}

double rheostat_resistance(int code, const RheostatSpec& spec) {
    if (code < 0 || code > 127)
        throw RangeError("rheostat code " + std::to_string(code) + " outside 7-bit range");
    return spec.r_min + spec.r_max * static_cast<double>(code) / 127.0;
}

double reference_amplitude(int n_in, double v_in_pp, const RheostatSpec& spec) {
    return rheostat_resistance(n_in, spec) / spec.r_amp * v_in_pp;
}

void ChannelConfig::validate() const {
    if (n_out < 0 || n_out > 127) throw ValidationError("channel n_out outside 7-bit range");
    if (noise_rms < 0.0) throw ValidationError("channel noise_rms must be non-negative");
    std::visit([](const auto& m) { m.validate(); }, dut);
}

SampleStream channel_stream(const ChannelConfig& ch, const ExcitationSpec& spec,
                            const SamplingPlan& plan, int cycles, const RheostatSpec& rheo,
                            const AdcSpec& adc) {
    ch.validate();
    spec.validate(adc.v_dd);
    rheo.validate();

    // steady-state phasor at the synthesized frequency
    const std::complex<double> z = dut_impedance(ch.dut, plan.f_dds);
    const double r_out = rheostat_resistance(ch.n_out, rheo);
    const double i_amp = spec.v_amp / std::abs(z);

    detail::ToneParams tone;
    tone.dc = spec.v_mid;
    tone.amp = ch.readout_sign * r_out * i_amp;
    tone.phase_off = spec.phase - std::arg(z);
    tone.glitch = ch.first_cycle_glitch;
    tone.noise = NoiseSpec{ch.noise_rms, ch.rng_seed};
    tone.channel_id = ch.id;

    bool all_clipped = false;
    SampleStream out = detail::synth_tone_stream(tone, plan, cycles, adc, &all_clipped);
    if (all_clipped)
        throw SaturationError("channel " + std::to_string(ch.id) +
                              ": every sample clipped; output rheostat code unusable");
    return out;
}

}  // namespace hermeis
