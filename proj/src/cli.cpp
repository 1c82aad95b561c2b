#include "hermeis/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "hermeis/config.hpp"
#include "hermeis/errors.hpp"
#include "hermeis/iq_core.hpp"
#include "hermeis/report.hpp"
#include "hermeis/sweep.hpp"

namespace hermeis {

namespace {

SweepConfig load_config(const std::string& path, int threads_override, std::ostream& err) {
    SweepConfig cfg = parse_config(path);
    apply_seed_override(cfg, std::getenv("HERMEIS_SEED"));
    if (threads_override > 0) cfg.threads = threads_override;
    for (const auto& w : cfg.warnings()) err << "warning: " << w << "\n";
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    return out;
}

}  // namespace

int cmd_plan(double f_i, const ClockConfig& clocks, std::ostream& out, std::ostream& err) {
    try {
        const SamplingPlan plan = plan_sampling(f_i, clocks);
        const OverflowBudget budget = overflow_budget(plan, 10);
        char buf[128];
        out << "requested_hz:    " << f_i << "\n";
        out << "fcw:             " << plan.fcw << "\n";
        std::snprintf(buf, sizeof buf, "%.12g", plan.f_dds);
        out << "f_dds_hz:        " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.12g", plan.f_adapt);
        out << "f_adapt_hz:      " << buf << "\n";
        out << "divider:         " << plan.divider << "\n";
        std::snprintf(buf, sizeof buf, "%.12g", plan.f_eff);
        out << "f_eff_hz:        " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.6g", plan.f_err);
        out << "f_err_hz:        " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.12g", to_double(plan.period_samples));
        out << "period_samples:  " << buf << " (" << numerator(plan.period_samples) << "/"
            << denominator(plan.period_samples) << ")\n";
        out << "cycle_samples:   " << plan.cycle_samples << "\n";
        out << "accumulator:     F=" << budget.frac_bits << ", max period "
            << static_cast<long long>(budget.max_period) << ", "
            << (budget.fits ? "fits" : "OVER BUDGET") << "\n";
        return budget.fits ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, int threads_override,
              std::ostream& out, std::ostream& err) {
    try {
        const SweepConfig cfg = load_config(config_path, threads_override, err);
        const SweepResult result = run_sweep(cfg);
        auto file = open_out(out_path);
        write_sweep_csv(result, file);
        out << "wrote " << result.points.size() << " points to " << out_path
            << " (modeled acquisition " << result.modeled_seconds << " s)\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::string& config_path, const std::string& out_path, int threads_override,
               std::ostream& out, std::ostream& err) {
    try {
        const SweepConfig cfg = load_config(config_path, threads_override, err);
        const SweepResult result = run_sweep(cfg);
        const RunReport report = verify_sweep(result);
        auto file = open_out(out_path);
        write_report_csv(report, file);
        print_report_summary(report, out);
        return report.passed ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_capacity(double throughput_bytes_per_s, double pair_bytes, std::ostream& out,
                 std::ostream& err) {
    try {
        out << channel_capacity(throughput_bytes_per_s, pair_bytes) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hermeis
