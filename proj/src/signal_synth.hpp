#pragma once

// internal: shared tone-stream synthesis for the reference and WE channels

#include "hermeis/adc.hpp"
#include "hermeis/freq_plan.hpp"

namespace hermeis::detail {

struct ToneParams {
    double dc = 0.0;         // volts added to every sample
    double amp = 0.0;        // volts, zero-to-peak
    double phase_off = 0.0;  // radians added to the plan phase
    double glitch = 0.0;     // volts injected during cycle 1 only
    NoiseSpec noise;
    int channel_id = -1;
};

SampleStream synth_tone_stream(const ToneParams& tone, const SamplingPlan& plan, int cycles,
                               const AdcSpec& adc, bool* all_clipped = nullptr);

}  // namespace hermeis::detail
