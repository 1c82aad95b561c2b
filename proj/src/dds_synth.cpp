#include "hermeis/dds_synth.hpp"

#include <cmath>

#include "hermeis/errors.hpp"
#include "signal_synth.hpp"

namespace hermeis {

void ExcitationSpec::validate(double v_dd) const {
    if (v_amp < 0.0) throw ValidationError("excitation amplitude must be non-negative");
    if (v_mid < 0.0 || v_mid > v_dd) throw ValidationError("mid-rail elevation must lie in [0, v_dd]");
}

double excitation_sample(const ExcitationSpec& spec, const SamplingPlan& plan, std::int64_t n) {
    PhaseAccumulator acc(plan.period_samples);
    return spec.v_offset + spec.v_amp * std::sin(acc.angle(n) + spec.phase);
}

SampleStream reference_stream(const ExcitationSpec& spec, const SamplingPlan& plan, int cycles,
                              const AdcSpec& adc, const NoiseSpec& noise) {
    spec.validate(adc.v_dd);
    detail::ToneParams tone;
    tone.dc = spec.v_mid + spec.v_offset;
    tone.amp = spec.v_amp;
    tone.phase_off = spec.phase;
    tone.noise = noise;
    return detail::synth_tone_stream(tone, plan, cycles, adc);
}

}  // namespace hermeis
