#include "hermeis/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "hermeis/errors.hpp"
#include "hermeis/iq_core.hpp"

namespace hermeis {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ExcitationSpec SweepConfig::effective_excitation() const {
    ExcitationSpec spec;
    spec.v_offset = v_offset;
    spec.v_amp = reference_amplitude(n_in, source_vpp, rheostat) / 2.0;
    spec.phase = phase;
    spec.v_mid = v_mid;
    return spec;
}

void SweepConfig::validate() const {
    clocks.validate();
    adc.validate();
    rheostat.validate();
    cal.validate();
    if (n_in < 0 || n_in > 127) throw ValidationError("n_in outside 7-bit range");
    if (source_vpp < 0.0) throw ValidationError("source_vpp must be non-negative");
    if (ref_noise_rms < 0.0) throw ValidationError("ref_noise_rms must be non-negative");
    if (controller_overhead_s < 0.0) throw ValidationError("controller_overhead_s must be non-negative");
    if (threads < 0) throw ValidationError("threads must be non-negative");

    if (grid.empty()) throw ValidationError("frequency grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ValidationError("frequency grid must be strictly increasing");
        if (!(grid[i] >= clocks.band_low() && grid[i] <= clocks.band_high()))
            throw ValidationError("grid point " + std::to_string(grid[i]) + " Hz outside band [" +
                                  std::to_string(clocks.band_low()) + ", " +
                                  std::to_string(clocks.band_high()) + "] Hz");
    }

    if (channels.empty()) throw ValidationError("at least one working channel required");
    if (channels.size() > 8) throw ValidationError("at most 8 working channels supported");
    std::set<int> ids;
    for (const auto& ch : channels) {
        ch.validate();
        if (!ids.insert(ch.id).second)
            throw ValidationError("duplicate channel id " + std::to_string(ch.id));
    }

    effective_excitation().validate(adc.v_dd);

    // every plan must fit the 32-bit accumulators
    for (double f : grid) {
        SamplingPlan plan = plan_sampling(f, clocks);
        if (!overflow_budget(plan, adc.bits).fits)
            throw PlanError("plan at " + std::to_string(f) + " Hz exceeds the accumulator budget");
    }
}

std::vector<std::string> SweepConfig::warnings() const {
    std::vector<std::string> out;
    if (effective_excitation().exceeds_small_signal())
        out.push_back("effective excitation exceeds the 50 mVpp small-signal limit");
    return out;
}

std::vector<double> log_grid(double f_lo, double f_hi, int n) {
    if (!(f_lo > 0.0) || !(f_lo < f_hi) || n < 2)
        throw BandError("log grid needs 0 < f_lo < f_hi and at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double llo = std::log(f_lo), lhi = std::log(f_hi);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = f_lo;
    out.back() = f_hi;
    return out;
}

namespace {

std::vector<SpectrumPoint> reduce_frequency(const SweepConfig& cfg, const ExcitationSpec& exc,
                                            double f, std::uint64_t index) {
    const SamplingPlan plan = plan_sampling(f, cfg.clocks);
    const auto bounds = quarter_boundaries(plan);
    const AccumSpec accum = accum_for(plan, cfg.adc);

    // one shared reference acquisition per frequency, two cycles, reduce the second
    const NoiseSpec ref_noise{cfg.ref_noise_rms, mix_seed(cfg.ref_seed, index)};
    const SampleStream ref = reference_stream(exc, plan, 2, cfg.adc, ref_noise);
    const IQAccumulator ref_iq = iq_from_sums(quarter_sums(ref.cycle(1), bounds, accum), plan.f_eff);
    const ComplexResponse x_ref = intermediary(ref_iq, ChannelRole::reference);

    std::vector<SpectrumPoint> points;
    points.reserve(cfg.channels.size());
    for (const ChannelConfig& ch : cfg.channels) {
        ChannelConfig per_freq = ch;
        per_freq.rng_seed = mix_seed(ch.rng_seed, index);
        const SampleStream st = channel_stream(per_freq, exc, plan, 2, cfg.rheostat, cfg.adc);
        const IQAccumulator iq = iq_from_sums(quarter_sums(st.cycle(1), bounds, accum), plan.f_eff);

        SpectrumPoint p;
        try {
            const ComplexResponse x_ch = intermediary(iq, ChannelRole::working);
            p = impedance_point(x_ref, x_ch, rheostat_resistance(ch.n_out, cfg.rheostat), cfg.cal);
        } catch (const DegenerateError&) {
            p.z_mag_raw = p.z_mag_cal = p.z_phase_deg = std::numeric_limits<double>::quiet_NaN();
        }
        p.f_req = f;
        p.f_dds = plan.f_dds;
        p.channel_id = ch.id;
        p.i_scaled = iq.i_scaled;
        p.q_scaled = iq.q_scaled;
        p.flags.overflow = ref_iq.overflow || iq.overflow;
        p.flags.clipped = ref.cycle_clipped[1] || st.cycle_clipped[1];
        points.push_back(p);
    }
    return points;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const ExcitationSpec exc = cfg.effective_excitation();
    const std::size_t nf = cfg.grid.size();

    std::vector<std::vector<SpectrumPoint>> slots(nf);
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(nf));

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= nf) return;
            try {
                // highest frequencies first: cheap plans drain early, the
                // long low-frequency records finish the queue
                const std::size_t slot = nf - 1 - i;
                slots[slot] = reduce_frequency(cfg, exc, cfg.grid[slot], slot);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.config = cfg;
    result.modeled_seconds = acquisition_time(cfg);
    result.points.reserve(nf * cfg.channels.size());
    for (auto& slot : slots)
        for (auto& p : slot) result.points.push_back(p);
    return result;
}

double acquisition_time(const SweepConfig& cfg) {
    double total = 0.0;
    for (double f : cfg.grid) total += 2.0 / f;
    return total + static_cast<double>(cfg.grid.size()) * cfg.controller_overhead_s;
}

std::int64_t channel_capacity(double throughput_bytes_per_s, double pair_bytes) {
    if (!(throughput_bytes_per_s > 0.0) || !(pair_bytes > 0.0))
        throw ValidationError("capacity needs positive throughput and pair size");
    return static_cast<std::int64_t>(std::floor(throughput_bytes_per_s / pair_bytes));
}

}  // namespace hermeis
