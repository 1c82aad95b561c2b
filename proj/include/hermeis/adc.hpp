#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hermeis/freq_plan.hpp"

namespace hermeis {

// Single-ended SAR ADC model. In ideal mode the converter is bypassed for
// verification runs: samples keep their continuous value in code units.
struct AdcSpec {
    double v_dd = 3.3;
    int bits = 10;
    bool ideal = false;

    double full_code() const { return static_cast<double>((std::int64_t(1) << bits) - 1); }
    double code_per_volt() const { return full_code() / v_dd; }
    void validate() const;
};

// code = clamp(round_half_up(v/V_dd * (2^bits - 1)), 0, 2^bits - 1)
std::pair<int, bool> adc_quantize(double v, double v_dd, int bits);

// Additive white Gaussian noise at the ADC input, one knob.
struct NoiseSpec {
    double rms = 0.0;  // volts
    std::uint64_t seed = 0;
};

// Acquired samples for one channel, in ADC code units. Values are integral
// when quantized; ideal-mode runs carry the unconverted values instead.
struct SampleStream {
    std::vector<float> samples;
    int bits = 10;
    bool quantized = true;
    bool clipped = false;                  // OR over every sample
    std::vector<std::uint8_t> cycle_clipped;  // per acquired cycle
    int channel_id = -1;
    SamplingPlan plan;
    int cycles = 0;

    std::span<const float> cycle(int i) const {
        return std::span<const float>(samples).subspan(
            static_cast<std::size_t>(i) * static_cast<std::size_t>(plan.cycle_samples),
            static_cast<std::size_t>(plan.cycle_samples));
    }
};

}  // namespace hermeis
