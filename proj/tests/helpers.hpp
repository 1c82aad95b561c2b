#pragma once

// shared fixtures for the test suites

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hermeis/adc.hpp"
#include "hermeis/freq_plan.hpp"

namespace hermeis::test {

// Clock tree whose DDS resolves integer frequencies exactly (f_dds_clk = 2^32
// at M = 32), so plans like f_i = 1 kHz give an exact integer P and bit-exact
// fixtures.
inline ClockConfig exact_clocks() {
    ClockConfig c;
    c.f_dds_clk = 4294967296.0;  // 2^32
    return c;
}

// Plan with a hand-picked rational period, for reductions that never touch
// the planner.
inline SamplingPlan synthetic_plan(const Rational& period, double f_eff = 200e3) {
    SamplingPlan plan;
    plan.period_samples = period;
    plan.cycle_samples = to_int64_checked(ceil_nonneg(period), "cycle_samples");
    plan.f_eff = f_eff;
    plan.f_dds = f_eff / to_double(period);
    plan.f_req = plan.f_dds;
    plan.f_adapt = f_eff;
    plan.divider = 1;
    plan.fcw = 1;
    return plan;
}

// One cycle of dc + amp*sin(2*pi*n/P + phase) in code units. Quantizing
// rounds to integral codes the way the converter would (no clamping).
inline SampleStream synth_cycle(const SamplingPlan& plan, double amp, double phase, double dc,
                                bool quantize) {
    SampleStream st;
    st.plan = plan;
    st.cycles = 1;
    st.quantized = quantize;
    st.cycle_clipped.assign(1, 0);
    st.samples.resize(static_cast<std::size_t>(plan.cycle_samples));
    PhaseAccumulator acc(plan.period_samples);
    for (std::int64_t n = 0; n < plan.cycle_samples; ++n) {
        double v = dc + amp * std::sin(acc.next() + phase);
        st.samples[static_cast<std::size_t>(n)] =
            static_cast<float>(quantize ? std::floor(v + 0.5) : v);
    }
    return st;
}

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace hermeis::test
