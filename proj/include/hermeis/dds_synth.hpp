#pragma once

#include <cstdint>

#include "hermeis/adc.hpp"
#include "hermeis/freq_plan.hpp"

namespace hermeis {

// Excitation seen at the reference ADC input: V0 + V1*sin(wt + phi),
// elevated by the mid-rail offset before conversion.
struct ExcitationSpec {
    double v_offset = 0.0;  // DC operating point V0, volts
    double v_amp = 0.0;     // amplitude V1, volts zero-to-peak
    double phase = 0.0;     // initial phase, radians
    double v_mid = 1.65;    // mid-rail elevation, volts

    // small-signal linearity limit on the interface
    static constexpr double small_signal_vpp_limit = 0.05;
    bool exceeds_small_signal() const { return 2.0 * v_amp > small_signal_vpp_limit; }

    void validate(double v_dd) const;
};

// Excitation voltage at sample instant n of the plan, phase held rationally.
double excitation_sample(const ExcitationSpec& spec, const SamplingPlan& plan, std::int64_t n);

// Digitized reference channel: `cycles` periods of (v_mid + excitation),
// quantized per `adc` (or carried unconverted when adc.ideal).
SampleStream reference_stream(const ExcitationSpec& spec, const SamplingPlan& plan, int cycles,
                              const AdcSpec& adc, const NoiseSpec& noise = {});

}  // namespace hermeis
