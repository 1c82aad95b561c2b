#include <CLI11.hpp>

#include <iostream>

#include "hermeis/cli.hpp"
#include "hermeis/freq_plan.hpp"

int main(int argc, char** argv) {
    CLI::App app{"single-cycle I/Q impedance sweep simulator"};
    app.require_subcommand(1);

    double freq = 0.0;
    hermeis::ClockConfig clocks;
    auto* plan = app.add_subcommand("plan", "show the acquisition schedule for one frequency");
    plan->add_option("freq", freq, "test frequency in Hz")->required();
    plan->add_option("--f-s", clocks.f_s, "max ADC sampling rate, Hz");
    plan->add_option("--f-clk", clocks.f_clk, "logic clock, Hz");
    plan->add_option("--f-dds-clk", clocks.f_dds_clk, "DDS clock, Hz");
    plan->add_option("--fcw-bits", clocks.fcw_bits, "frequency control word width");

    std::string config_path, out_path;
    int threads = 0;
    auto* sweep = app.add_subcommand("sweep", "run a sweep and write a CSV spectrum");
    sweep->add_option("--config", config_path, "configuration file")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* verify = app.add_subcommand("verify", "run a sweep and check it against ground truth");
    verify->add_option("--config", config_path, "configuration file")->required();
    verify->add_option("--out", out_path, "per-point error CSV path")->required();
    verify->add_option("--threads", threads, "worker threads (0 = hardware)");

    double throughput = 0.0, pair_bytes = 8.0;
    auto* capacity = app.add_subcommand("capacity", "channels serviceable by a host link");
    capacity->add_option("--throughput", throughput, "link throughput, bytes/s")->required();
    capacity->add_option("--pair-bytes", pair_bytes, "bytes per I/Q pair");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) return hermeis::cmd_plan(freq, clocks, std::cout, std::cerr);
    if (sweep->parsed())
        return hermeis::cmd_sweep(config_path, out_path, threads, std::cout, std::cerr);
    if (verify->parsed())
        return hermeis::cmd_verify(config_path, out_path, threads, std::cout, std::cerr);
    if (capacity->parsed()) return hermeis::cmd_capacity(throughput, pair_bytes, std::cout, std::cerr);
    return 2;
}
