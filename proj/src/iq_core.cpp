#include "hermeis/iq_core.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "hermeis/errors.hpp"

namespace hermeis {

namespace {

constexpr std::int64_t kSatMax = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kSatMin = std::numeric_limits<std::int32_t>::min();

std::int64_t saturating_add(std::int64_t reg, std::int64_t delta, bool& overflow) {
    std::int64_t v = reg + delta;
    if (v > kSatMax) { overflow = true; return kSatMax; }
    if (v < kSatMin) { overflow = true; return kSatMin; }
    return v;
}

// residue-weighted edge sample, quantized to frac_bits: round_half_up(x * rho * 2^F)
std::int64_t edge_term_fixed(double sample, const Rational& rho, int frac_bits) {
    auto x = static_cast<unsigned __int128>(sample);
    unsigned __int128 rn = to_u128_checked(numerator(rho), "residue numerator");
    unsigned __int128 rd = to_u128_checked(denominator(rho), "residue denominator");
    unsigned __int128 q = ((x << frac_bits) * rn + rd / 2) / rd;
    return static_cast<std::int64_t>(q);
}

}  // namespace

double max_safe_period(int bits, int frac_bits) {
    const double headroom = static_cast<double>(kSatMax >> frac_bits);
    const double full_code = static_cast<double>((std::int64_t(1) << bits) - 1);
    return 4.0 * headroom / full_code;
}

OverflowBudget overflow_budget(const SamplingPlan& plan, int bits) {
    const double period = to_double(plan.period_samples);
    OverflowBudget out;
    out.frac_bits = period <= max_safe_period(bits, 8) ? 8 : 0;
    out.max_period = max_safe_period(bits, out.frac_bits);
    out.fits = period <= out.max_period;
    return out;
}

AccumSpec accum_for(const SamplingPlan& plan, const AdcSpec& adc) {
    if (adc.ideal) return {false, 0};
    return {true, overflow_budget(plan, adc.bits).frac_bits};
}

QuarterSums quarter_sums(std::span<const float> cycle,
                         const std::array<QuarterBoundary, 5>& boundaries,
                         const AccumSpec& accum) {
    const std::int64_t last = boundaries[4].index;
    const std::int64_t needed = last + (boundaries[4].residue != 0 ? 1 : 0);
    if (static_cast<std::int64_t>(cycle.size()) < needed)
        throw LengthError("stream shorter than one cycle: have " + std::to_string(cycle.size()) +
                          " samples, need " + std::to_string(needed));

    QuarterSums out;
    out.boundaries = boundaries;
    out.accum = accum;

    if (accum.emulated) {
        const int F = accum.frac_bits;
        for (int j = 0; j < 4; ++j) {
            std::int64_t reg = 0;
            const auto& b0 = boundaries[j];
            const auto& b1 = boundaries[j + 1];
            if (b0.residue != 0)
                reg = saturating_add(reg, -edge_term_fixed(cycle[b0.index], b0.residue, F), out.overflow);
            for (std::int64_t n = b0.index; n < b1.index; ++n)
                reg = saturating_add(reg, static_cast<std::int64_t>(cycle[n]) << F, out.overflow);
            if (b1.residue != 0)
                reg = saturating_add(reg, edge_term_fixed(cycle[b1.index], b1.residue, F), out.overflow);
            out.sums[j] = static_cast<double>(reg) / static_cast<double>(std::int64_t(1) << F);
        }
    } else {
        for (int j = 0; j < 4; ++j) {
            const auto& b0 = boundaries[j];
            const auto& b1 = boundaries[j + 1];
            double s = 0.0;
            for (std::int64_t n = b0.index; n < b1.index; ++n) s += cycle[n];
            if (b0.residue != 0) s -= to_double(b0.residue) * cycle[b0.index];
            if (b1.residue != 0) s += to_double(b1.residue) * cycle[b1.index];
            out.sums[j] = s;
        }
    }
    return out;
}

IQAccumulator iq_from_sums(const QuarterSums& sums, double f_eff) {
    IQAccumulator out;
    const auto& s = sums.sums;
    out.i_scaled = (s[0] + s[1] - s[2] - s[3]) / 2.0;
    out.q_scaled = (s[1] + s[2] - s[0] - s[3]) / 2.0;
    out.f_eff = f_eff;
    out.overflow = sums.overflow;
    return out;
}

}  // namespace hermeis
