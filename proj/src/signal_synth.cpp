#include "signal_synth.hpp"

#include <cmath>
#include <random>

#include "hermeis/errors.hpp"

namespace hermeis::detail {

SampleStream synth_tone_stream(const ToneParams& tone, const SamplingPlan& plan, int cycles,
                               const AdcSpec& adc, bool* all_clipped) {
    if (cycles < 1) throw ValidationError("stream needs at least one cycle");
    adc.validate();

    SampleStream out;
    out.bits = adc.bits;
    out.quantized = !adc.ideal;
    out.channel_id = tone.channel_id;
    out.plan = plan;
    out.cycles = cycles;
    out.cycle_clipped.assign(static_cast<std::size_t>(cycles), 0);
    out.samples.resize(static_cast<std::size_t>(cycles) * static_cast<std::size_t>(plan.cycle_samples));

    const double scale = adc.code_per_volt();
    const double full = adc.full_code();
    const bool with_noise = tone.noise.rms > 0.0;
    std::mt19937_64 rng(tone.noise.seed);
    std::normal_distribution<double> gauss(0.0, tone.noise.rms);

    PhaseAccumulator acc(plan.period_samples);
    std::size_t pos = 0;
    std::size_t clipped_count = 0;
    for (int c = 0; c < cycles; ++c) {
        const double dc = tone.dc + (c == 0 ? tone.glitch : 0.0);
        bool cycle_clip = false;
        for (std::int64_t n = 0; n < plan.cycle_samples; ++n, ++pos) {
            double v = dc + tone.amp * std::sin(acc.next() + tone.phase_off);
            if (with_noise) v += gauss(rng);
            if (adc.ideal) {
                out.samples[pos] = static_cast<float>(v * scale);
            } else {
                double code = std::floor(v * scale + 0.5);
                if (code < 0.0 || code > full) {
                    code = code < 0.0 ? 0.0 : full;
                    cycle_clip = true;
                    ++clipped_count;
                }
                out.samples[pos] = static_cast<float>(code);
            }
        }
        out.cycle_clipped[static_cast<std::size_t>(c)] = cycle_clip ? 1 : 0;
        out.clipped = out.clipped || cycle_clip;
    }
    if (all_clipped) *all_clipped = !adc.ideal && clipped_count == out.samples.size();
    return out;
}

}  // namespace hermeis::detail
