#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "hermeis/rational.hpp"

namespace hermeis {

// Clock tree of the modeled acquisition system.
struct ClockConfig {
    double f_s = 200e3;        // max ADC sampling rate, Hz
    double f_clk = 50e6;       // logic clock, Hz
    double f_dds_clk = 100e6;  // DDS reference clock, Hz
    int fcw_bits = 32;         // frequency-control-word width (M)

    // synthesizable/acquirable band: [f_dds_clk/2^31, f_s/4]
    double band_low() const { return f_dds_clk / 2147483648.0; }
    double band_high() const { return f_s / 4.0; }

    // throws ValidationError on nonsense (non-positive rates, M outside
    // [16,48], f_clk < 100*f_s)
    void validate() const;
};

struct QuarterBoundary {
    std::int64_t index = 0;  // sample index floor(j*P/4)
    Rational residue;        // fractional part of j*P/4, in [0,1)

    Rational exact() const { return Rational(index) + residue; }
};

// Fully determined per-frequency acquisition schedule. All ratios derived
// from the quantized DDS output, not the requested frequency.
struct SamplingPlan {
    double f_req = 0.0;       // requested test frequency f_i, Hz
    std::uint64_t fcw = 0;    // DDS frequency control word m
    double f_dds = 0.0;       // quantized DDS output f_q = m*f_dds_clk/2^M, Hz
    double f_adapt = 0.0;     // adaptive target rate f_s', Hz
    std::int64_t samples_per_period_nominal = 0;  // f_s'/f_i, divisible by 4
    std::int64_t divider = 1;                     // clock divider k
    double f_eff = 0.0;       // realized rate f_clk/k, Hz
    double f_err = 0.0;       // |f_eff - f_adapt|, Hz
    Rational period_samples;  // P = f_eff/f_dds, exact
    std::int64_t cycle_samples = 0;  // ceil(P), samples acquired per cycle
};

// FCW quantization: m = round_half_up(2^M * f_i / f_dds_clk), f_q = m*f_dds_clk/2^M.
// compute_fcw enforces the band; fcw_unchecked is the raw register helper.
std::pair<std::uint64_t, double> compute_fcw(double f_i, const ClockConfig& clocks);
std::pair<std::uint64_t, double> fcw_unchecked(double f_i, const ClockConfig& clocks);

SamplingPlan plan_sampling(double f_i, const ClockConfig& clocks);

// Five boundaries at j*P/4, j = 0..4, with exact rational residues.
std::array<QuarterBoundary, 5> quarter_boundaries(const SamplingPlan& plan);

// Exact phase stepping along a plan: angle(n) = 2*pi*frac(n/P). Holding P as
// a reduced integer ratio keeps the phase from drifting across a cycle.
class PhaseAccumulator {
public:
    explicit PhaseAccumulator(const Rational& period_samples);

    double angle(std::int64_t n) const;

    // sequential access: angle at the current index, then advance by one sample
    double next() {
        double a = two_pi_ * static_cast<double>(acc_) / static_cast<double>(modulus_);
        acc_ += step_;
        if (acc_ >= modulus_) acc_ -= modulus_;
        return a;
    }

    void reset() { acc_ = 0; }

private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
    unsigned __int128 modulus_;  // numerator of P
    unsigned __int128 step_;     // denominator of P (phase step of 1/P turns)
    unsigned __int128 acc_ = 0;
};

}  // namespace hermeis
