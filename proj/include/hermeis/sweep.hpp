#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hermeis/adc.hpp"
#include "hermeis/afe_model.hpp"
#include "hermeis/dds_synth.hpp"
#include "hermeis/freq_plan.hpp"
#include "hermeis/spectrum.hpp"

namespace hermeis {

// Whole-sweep description: frequency grid, clock tree, drive settings and
// the working-electrode channels.
struct SweepConfig {
    std::vector<double> grid;  // Hz, strictly increasing
    ClockConfig clocks;
    AdcSpec adc;
    RheostatSpec rheostat;
    CalibrationConfig cal;

    double source_vpp = 1.0;  // drive into the input attenuator stage
    int n_in = 10;            // input rheostat code
    double v_offset = 0.0;    // DC operating point V0
    double phase = 0.0;       // excitation phase, radians
    double v_mid = 1.65;      // mid-rail elevation

    double ref_noise_rms = 0.0;  // reference-channel noise, common to all WEs
    std::uint64_t ref_seed = 0;

    std::vector<ChannelConfig> channels;  // 1..8 working electrodes

    double controller_overhead_s = 0.1;  // modeled per-frequency software cost
    int threads = 0;                     // 0 = hardware concurrency

    // excitation actually applied to the cell: amplitude attenuated by the
    // input rheostat stage
    ExcitationSpec effective_excitation() const;

    void validate() const;                  // throws ValidationError / PlanError
    std::vector<std::string> warnings() const;
};

struct SweepResult {
    // one point per (grid frequency, channel), frequency-major, channels in
    // config order
    std::vector<SpectrumPoint> points;
    double modeled_seconds = 0.0;
    SweepConfig config;  // resolved configuration echo
};

// n geometrically spaced frequencies inclusive of both endpoints.
std::vector<double> log_grid(double f_lo, double f_hi, int n);

// Two-cycle acquisition per frequency, first cycle discarded; deterministic
// for fixed seeds regardless of channel order or thread schedule.
SweepResult run_sweep(const SweepConfig& cfg);

// Modeled acquisition wall time: two periods of each requested frequency
// plus the per-point controller overhead. Pure arithmetic, no waiting.
double acquisition_time(const SweepConfig& cfg);

// Channels serviceable per sweep slot by the host link.
std::int64_t channel_capacity(double throughput_bytes_per_s, double pair_bytes);

// deterministic per-(seed, frequency-index) stream seed derivation
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace hermeis
