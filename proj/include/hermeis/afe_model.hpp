#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "hermeis/adc.hpp"
#include "hermeis/dds_synth.hpp"

namespace hermeis {

// Series resistance feeding a parallel RC interface; high-pass corner at
// 1/(R_F * C_dl).
struct RandlesModel {
    double r_series = 0.0;    // R_S, ohms
    double r_faradaic = 0.0;  // R_F, ohms
    double c_dl = 0.0;        // double-layer capacitance, farads

    double corner_rad() const { return 1.0 / (r_faradaic * c_dl); }
    double corner_hz() const;
    void validate() const;
};

// Z(w) = R_S + R_F / (1 + j*w*R_F*C_dl)
std::complex<double> randles_impedance(const RandlesModel& model, double omega);

// Tabulated spectrum replay: linear interpolation of Re/Im against log f,
// clamped at the table ends.
struct TableModel {
    std::vector<double> freq_hz;             // strictly increasing
    std::vector<std::complex<double>> z;
    void validate() const;
};

std::complex<double> table_impedance(const TableModel& model, double f);

using DutModel = std::variant<RandlesModel, TableModel>;
std::complex<double> dut_impedance(const DutModel& dut, double f);

// 7-bit digital rheostat: R = R_min + R_max*N/127.
struct RheostatSpec {
    double r_max = 50e3;
    double r_min = 100.0;  // 0.002 * R_max, datasheet wiper floor
    double r_amp = 100e3;  // R_A of the input attenuator stage
    void validate() const;
};

double rheostat_resistance(int code, const RheostatSpec& spec);

// Peak-to-peak excitation delivered to the cell for input code N_in:
// (R_in / R_A) * V_in_pp. Sign of the inverting stage folds into the
// readout convention.
double reference_amplitude(int n_in, double v_in_pp, const RheostatSpec& spec);

// One working-electrode channel.
struct ChannelConfig {
    int id = 0;
    DutModel dut;
    int n_out = 100;             // output rheostat code
    double readout_sign = -1.0;  // inverting transimpedance stage
    double noise_rms = 0.0;      // volts at the ADC input
    double first_cycle_glitch = 0.0;  // volts, switching transient stand-in
    std::uint64_t rng_seed = 0;
    void validate() const;
};

// Steady-state response of the channel through its DUT, digitized for
// `cycles` periods. Throws SaturationError when every sample clips.
SampleStream channel_stream(const ChannelConfig& ch, const ExcitationSpec& spec,
                            const SamplingPlan& plan, int cycles, const RheostatSpec& rheo,
                            const AdcSpec& adc);

}  // namespace hermeis
