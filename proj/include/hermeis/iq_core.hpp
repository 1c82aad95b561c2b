#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "hermeis/adc.hpp"
#include "hermeis/freq_plan.hpp"

namespace hermeis {

// Accumulation mode for the quarter sums. Emulated mode reproduces the
// 32-bit signed fixed-point registers of the acquisition logic, with
// frac_bits reserved for the residue-weighted edge terms; ideal streams
// reduce in plain double arithmetic.
struct AccumSpec {
    bool emulated = true;
    int frac_bits = 8;
};

struct OverflowBudget {
    int frac_bits = 8;        // fractional width the engine selects for the plan
    double max_period = 0.0;  // largest P the 32-bit registers can absorb at that width
    bool fits = false;
};

// Largest P such that the worst-case quarter sum (2^bits-1)*P/4 stays inside
// a 32-bit register carrying frac_bits fractional bits.
double max_safe_period(int bits, int frac_bits);

// Fixed-point width policy for a plan: 8 fractional bits when the register
// headroom allows, otherwise fall back to pure integer accumulation so the
// largest low-frequency plans still fit 32 bits.
OverflowBudget overflow_budget(const SamplingPlan& plan, int bits);

AccumSpec accum_for(const SamplingPlan& plan, const AdcSpec& adc);

// The four quarter-cycle sums over one period, code*sample units. When
// emulated, values are exact multiples of 2^-frac_bits as held in the
// registers.
struct QuarterSums {
    std::array<double, 4> sums{};
    std::array<QuarterBoundary, 5> boundaries;
    bool overflow = false;
    AccumSpec accum;
};

// S_j = sum of codes over [idx_j, idx_{j+1}) minus rho_j*x[idx_j] plus
// rho_{j+1}*x[idx_{j+1}]; each quarter then spans exactly P/4 samples.
QuarterSums quarter_sums(std::span<const float> cycle,
                         const std::array<QuarterBoundary, 5>& boundaries,
                         const AccumSpec& accum);

// I/Q pair scaled by the effective sampling rate (division deferred, as
// shipped off the acquisition hardware).
struct IQAccumulator {
    double i_scaled = 0.0;
    double q_scaled = 0.0;
    double f_eff = 0.0;
    bool overflow = false;
};

IQAccumulator iq_from_sums(const QuarterSums& sums, double f_eff);

}  // namespace hermeis
