#include "hermeis/freq_plan.hpp"

#include <cmath>

#include "hermeis/errors.hpp"

namespace hermeis {

namespace {

std::uint64_t round_half_up_u64(double v) {
    return static_cast<std::uint64_t>(std::floor(v + 0.5));
}

void check_band(double f_i, const ClockConfig& clocks) {
    if (!(f_i >= clocks.band_low() && f_i <= clocks.band_high()))
        throw BandError("frequency " + std::to_string(f_i) + " Hz outside synthesizable band [" +
                        std::to_string(clocks.band_low()) + ", " + std::to_string(clocks.band_high()) + "] Hz");
}

}  // namespace

void ClockConfig::validate() const {
    if (!(f_s > 0.0) || !(f_clk > 0.0) || !(f_dds_clk > 0.0))
        throw ValidationError("clock rates must be strictly positive");
    if (fcw_bits < 16 || fcw_bits > 48)
        throw ValidationError("fcw_bits must lie in [16, 48]");
    if (f_clk < 100.0 * f_s)
        throw ValidationError("f_clk must be at least 100x f_s to keep the divider error negligible");
}

std::pair<std::uint64_t, double> fcw_unchecked(double f_i, const ClockConfig& clocks) {
    const double scale = std::ldexp(1.0, clocks.fcw_bits);  // 2^M
    std::uint64_t m = round_half_up_u64(scale * f_i / clocks.f_dds_clk);
    double f_q = static_cast<double>(m) * clocks.f_dds_clk / scale;
    return {m, f_q};
}

std::pair<std::uint64_t, double> compute_fcw(double f_i, const ClockConfig& clocks) {
    clocks.validate();
    check_band(f_i, clocks);
    return fcw_unchecked(f_i, clocks);
}

SamplingPlan plan_sampling(double f_i, const ClockConfig& clocks) {
    clocks.validate();
    check_band(f_i, clocks);

    SamplingPlan plan;
    plan.f_req = f_i;
    auto [m, f_q] = fcw_unchecked(f_i, clocks);
    plan.fcw = m;
    plan.f_dds = f_q;

    // adaptive rate: the largest multiple of f_i at or below f_s whose
    // samples-per-period count is divisible by 4
    const auto whole = static_cast<std::int64_t>(std::floor(clocks.f_s / f_i));
    std::int64_t spp = whole;
    if (whole % 4 != 0)
        spp = 4 * static_cast<std::int64_t>(std::floor(clocks.f_s / (4.0 * f_i)));
    if (spp <= 0)
        throw PlanError("cannot fit 4 samples per period at " + std::to_string(f_i) + " Hz");
    plan.samples_per_period_nominal = spp;
    plan.f_adapt = static_cast<double>(spp) * f_i;

    plan.divider = static_cast<std::int64_t>(std::floor(clocks.f_clk / plan.f_adapt + 0.5));
    if (plan.divider < 1) plan.divider = 1;
    plan.f_eff = clocks.f_clk / static_cast<double>(plan.divider);
    plan.f_err = std::abs(plan.f_eff - plan.f_adapt);

    // P = f_eff/f_dds = f_clk * 2^M / (k * m * f_dds_clk), held exactly
    plan.period_samples = rational_from_double(clocks.f_clk) * (BigInt(1) << clocks.fcw_bits) /
                          (Rational(plan.divider) * BigInt(m) * rational_from_double(clocks.f_dds_clk));
    plan.cycle_samples = to_int64_checked(ceil_nonneg(plan.period_samples), "cycle_samples");
    return plan;
}

std::array<QuarterBoundary, 5> quarter_boundaries(const SamplingPlan& plan) {
    std::array<QuarterBoundary, 5> out;
    for (int j = 0; j <= 4; ++j) {
        Rational b = Rational(j) * plan.period_samples / 4;
        BigInt idx = floor_nonneg(b);
        out[j].index = to_int64_checked(idx, "quarter boundary");
        out[j].residue = b - Rational(idx);
    }
    return out;
}

PhaseAccumulator::PhaseAccumulator(const Rational& period_samples)
    : modulus_(to_u128_checked(numerator(period_samples), "phase modulus")),
      step_(to_u128_checked(denominator(period_samples), "phase step")) {
    // next() assumes at most one wrap per sample, i.e. P > 1
    if (modulus_ == 0 || step_ >= modulus_)
        throw PlanError("phase accumulator needs a period above one sample");
}

double PhaseAccumulator::angle(std::int64_t n) const {
    unsigned __int128 acc = (static_cast<unsigned __int128>(n) * step_) % modulus_;
    return two_pi_ * static_cast<double>(acc) / static_cast<double>(modulus_);
}

}  // namespace hermeis
