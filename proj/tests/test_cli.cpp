#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hermeis/afe_model.hpp"
#include "hermeis/cli.hpp"
#include "hermeis/config.hpp"
#include "hermeis/errors.hpp"
#include "hermeis/report.hpp"
#include "hermeis/sweep.hpp"

using namespace hermeis;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig =
    "grid.points = 100, 1000\n"
    "channel.1.r_s = 3900\n"
    "channel.1.r_f = 100e3\n"
    "channel.1.c_dl = 68e-9\n";

std::string control_config_text(bool ideal) {
    std::ostringstream ss;
    ss << "grid.points = 10, 100, 1000\n";
    ss << "adc.ideal = " << (ideal ? "true" : "false") << "\n";
    ss << "cal.alpha = 1\n";
    ss << "run.threads = 1\n";
    for (int id = 1; id <= 2; ++id) {
        ss << "channel." << id << ".r_s = 3900\n";
        ss << "channel." << id << ".r_f = 100e3\n";
        ss << "channel." << id << ".c_dl = 68e-9\n";
        ss << "channel." << id << ".seed = " << id << "\n";
    }
    return ss.str();
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("minimal config resolves the documented defaults") {
    SweepConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(cfg.clocks.f_s == 200e3);
    CHECK(cfg.clocks.f_clk == 50e6);
    CHECK(cfg.clocks.f_dds_clk == 100e6);
    CHECK(cfg.clocks.fcw_bits == 32);
    CHECK(cfg.adc.v_dd == 3.3);
    CHECK(cfg.adc.bits == 10);
    CHECK_FALSE(cfg.adc.ideal);
    CHECK(cfg.cal.alpha == doctest::Approx(1.0 / 600.0).epsilon(1e-12));
    CHECK(cfg.n_in == 10);
    CHECK(cfg.source_vpp == 1.0);
    CHECK(cfg.rheostat.r_min == doctest::Approx(100.0));
    CHECK(cfg.v_mid == 1.65);
    CHECK(cfg.controller_overhead_s == 0.1);
    REQUIRE(cfg.channels.size() == 1);
    CHECK(cfg.channels[0].n_out == 100);
    CHECK(cfg.channels[0].readout_sign == -1.0);
    // effective drive sits just below the small-signal limit
    CHECK(cfg.effective_excitation().v_amp == doctest::Approx(0.0202).epsilon(1e-3));
    CHECK(cfg.warnings().empty());
}

TEST_CASE("config rejects unknown, duplicate and malformed keys") {
    CHECK_THROWS_WITH_AS(parse_config_text(std::string(kMinimalConfig) + "grid.shape = fancy\n"),
                         doctest::Contains("unknown key 'grid.shape'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_config_text(std::string(kMinimalConfig) + "channel.1.r_s = 1\n"),
                         doctest::Contains("duplicate key"), ParseError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimalConfig) + "adc.bits = ten\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("grid.points\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimalConfig) + "adc.ideal = maybe\n"),
                    ParseError);
}

TEST_CASE("config validation failures carry the violated rule") {
    // above f_s/4
    CHECK_THROWS_AS(parse_config_text("grid.f_lo = 1\ngrid.f_hi = 60e3\ngrid.n_points = 5\n"
                                      "channel.1.r_s = 1\nchannel.1.r_f = 1\nchannel.1.c_dl = 1\n"),
                    ValidationError);
    // no grid at all
    CHECK_THROWS_AS(parse_config_text("channel.1.r_s = 1\nchannel.1.r_f = 1\nchannel.1.c_dl = 1\n"),
                    ValidationError);
    // no channels
    CHECK_THROWS_AS(parse_config_text("grid.points = 100\n"), ValidationError);
    // both grid spellings at once
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimalConfig) + "grid.f_lo = 1\n"),
                    ValidationError);
    // Randles mixed with a table
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimalConfig) + "channel.1.table = x.csv\n"),
                    ValidationError);
    // channel without a model
    CHECK_THROWS_AS(parse_config_text("grid.points = 100\nchannel.2.n_out = 90\n"), ValidationError);
}

TEST_CASE("seed override for CI") {
    SweepConfig cfg = parse_config_text(kMinimalConfig);
    apply_seed_override(cfg, nullptr);
    CHECK(cfg.ref_seed == 0);
    apply_seed_override(cfg, "123");
    CHECK(cfg.ref_seed == 123);
    CHECK(cfg.channels[0].rng_seed == 124);  // seed + channel id
    CHECK_THROWS_AS(apply_seed_override(cfg, "nope"), ValidationError);
}

TEST_CASE("sweep CSV format and round trip") {
    SweepConfig cfg = parse_config_text(control_config_text(true));
    SweepResult res = run_sweep(cfg);
    std::string csv = sweep_csv_string(res);

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "freq_hz,freq_actual_hz,channel,zmag_ohm_raw,zmag_ohm_cal,zphase_deg,i_acc,q_acc,"
          "clipped,overflow");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row))
        if (!row.empty()) ++rows;
    CHECK(rows == 6);  // 3 frequencies x 2 channels

    std::istringstream again(csv);
    auto parsed = read_sweep_csv(again);
    REQUIRE(parsed.size() == 6);
    // numeric fields recover to the printed precision (9 significant digits)
    char a[40], b[40];
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        std::snprintf(a, sizeof a, "%.9g", parsed[i].z_mag_raw);
        std::snprintf(b, sizeof b, "%.9g", res.points[i].z_mag_raw);
        CHECK(std::string(a) == b);
        std::snprintf(a, sizeof a, "%.9g", parsed[i].i_scaled);
        std::snprintf(b, sizeof b, "%.9g", res.points[i].i_scaled);
        CHECK(std::string(a) == b);
    }
    // rows come back ordered by (frequency, channel)
    CHECK(parsed[0].f_req == 10.0);
    CHECK(parsed[0].channel_id == 1);
    CHECK(parsed[1].channel_id == 2);
    CHECK(parsed[2].f_req == 100.0);
    for (const auto& p : parsed) {
        CHECK(p.z_mag_raw > 0.0);
        CHECK(p.z_mag_cal == doctest::Approx(p.z_mag_raw).epsilon(1e-9));  // alpha = 1
    }
}

TEST_CASE("byte-identical reruns") {
    SweepConfig cfg = parse_config_text(control_config_text(false));
    cfg.channels[0].noise_rms = 0.004;
    std::string a = sweep_csv_string(run_sweep(cfg));
    std::string b = sweep_csv_string(run_sweep(cfg));
    CHECK(a == b);
    CHECK(a.size() > 100);
}

TEST_CASE("verification passes on an honest run and flags a biased one") {
    SweepConfig cfg = parse_config_text(control_config_text(true));
    SweepResult res = run_sweep(cfg);
    RunReport ok = verify_sweep(res);
    CHECK(ok.passed);
    CHECK(ok.max_mag_err < 0.02);
    CHECK(ok.ideal_mode);
    CHECK(ok.points.size() == 6);
    CHECK_FALSE(ok.decades.empty());

    // a mismatched output-resistor code scales magnitudes by the code ratio
    RheostatSpec rheo;
    const double bias = rheostat_resistance(90, rheo) / rheostat_resistance(100, rheo);
    SweepResult biased = res;
    for (auto& p : biased.points) {
        p.z_mag_raw *= bias;
        p.z_mag_cal *= bias;
    }
    RunReport bad = verify_sweep(biased);
    CHECK_FALSE(bad.passed);
    CHECK(bad.median_mag_err == doctest::Approx(1.0 - bias).epsilon(0.05));

    // table channels have no analytic reference
    SweepResult tabled = res;
    TableModel t;
    t.freq_hz = {1.0, 1e4};
    t.z = {{100.0, 0.0}, {100.0, 0.0}};
    tabled.config.channels[0].dut = t;
    CHECK_THROWS_AS(verify_sweep(tabled), MissingGroundTruth);
}

TEST_CASE("table channels replay a tabulated spectrum") {
    fs::path table_path = write_temp("hermeis_table.csv",
                                     "freq_hz,re_ohm,im_ohm\n"
                                     "1,20000,-3000\n"
                                     "100,12000,-1500\n"
                                     "10000,8000,-400\n");
    std::ostringstream cfg_text;
    cfg_text << "grid.points = 10, 1000\n"
             << "adc.ideal = true\n"
             << "cal.alpha = 1\n"
             << "channel.3.table = " << table_path.string() << "\n";
    SweepConfig cfg = parse_config_text(cfg_text.str());
    REQUIRE(cfg.channels.size() == 1);
    const auto& table = std::get<TableModel>(cfg.channels[0].dut);
    REQUIRE(table.freq_hz.size() == 3);

    SweepResult res = run_sweep(cfg);
    for (const auto& p : res.points) {
        auto truth = table_impedance(table, p.f_dds);
        CHECK(p.z_mag_raw == doctest::Approx(std::abs(truth)).epsilon(0.005));
    }
    // replayed spectra carry no analytic reference
    CHECK_THROWS_AS(verify_sweep(res), MissingGroundTruth);
    fs::remove(table_path);
}

TEST_CASE("golden mini-protocol regression") {
    // Regenerate with:
    //   hermeis sweep --config tests/golden/mini.cfg --out tests/golden/mini.csv
    const std::string dir = TEST_DATA_DIR;
    SweepConfig cfg = parse_config(dir + "/golden/mini.cfg");
    SweepResult res = run_sweep(cfg);

    std::ifstream golden_file(dir + "/golden/mini.csv");
    REQUIRE(golden_file.good());
    auto golden = read_sweep_csv(golden_file);
    std::istringstream fresh(sweep_csv_string(res));
    auto now = read_sweep_csv(fresh);
    REQUIRE(golden.size() == now.size());

    // numeric comparison, loose enough to ride out libm differences across
    // platforms but far tighter than any algorithm change would survive
    for (std::size_t i = 0; i < golden.size(); ++i) {
        CHECK(now[i].f_req == golden[i].f_req);
        CHECK(now[i].channel_id == golden[i].channel_id);
        CHECK(now[i].f_dds == doctest::Approx(golden[i].f_dds).epsilon(1e-9));
        CHECK(now[i].z_mag_raw == doctest::Approx(golden[i].z_mag_raw).epsilon(1e-6));
        CHECK(now[i].z_mag_cal == doctest::Approx(golden[i].z_mag_cal).epsilon(1e-6));
        CHECK(now[i].z_phase_deg == doctest::Approx(golden[i].z_phase_deg).epsilon(1e-5));
        CHECK(now[i].i_scaled == doctest::Approx(golden[i].i_scaled).epsilon(1e-6));
        CHECK(now[i].q_scaled == doctest::Approx(golden[i].q_scaled).epsilon(1e-6));
        CHECK(now[i].flags.clipped == golden[i].flags.clipped);
        CHECK(now[i].flags.overflow == golden[i].flags.overflow);
    }
}

TEST_CASE("command entry points") {
    std::ostringstream out, err;
    CHECK(cmd_capacity(38.1e6, 8.0, out, err) == 0);
    CHECK(out.str() == "4762500\n");

    out.str("");
    CHECK(cmd_plan(3000.0, ClockConfig{}, out, err) == 0);
    CHECK(out.str().find("fcw:             128849") != std::string::npos);
    CHECK(out.str().find("divider:         260") != std::string::npos);

    out.str("");
    err.str("");
    CHECK(cmd_plan(0.01, ClockConfig{}, out, err) == 2);
    CHECK(err.str().find("band") != std::string::npos);

    CHECK(cmd_capacity(-1.0, 8.0, out, err) == 2);
}

TEST_CASE("sweep and verify commands against real files") {
    fs::path cfg_path = write_temp("hermeis_test_cfg.cfg", control_config_text(true));
    fs::path out_path = fs::temp_directory_path() / "hermeis_test_out.csv";
    std::ostringstream out, err;

    CHECK(cmd_sweep(cfg_path.string(), out_path.string(), 0, out, err) == 0);
    REQUIRE(fs::exists(out_path));
    std::string first = slurp(out_path);
    CHECK(cmd_sweep(cfg_path.string(), out_path.string(), 0, out, err) == 0);
    CHECK(slurp(out_path) == first);  // byte-identical rerun

    fs::path report_path = fs::temp_directory_path() / "hermeis_test_report.csv";
    out.str("");
    CHECK(cmd_verify(cfg_path.string(), report_path.string(), 0, out, err) == 0);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(fs::exists(report_path));

    // drown a channel in noise: medians blow past the quantized limits
    fs::path bad_cfg = write_temp("hermeis_test_bad.cfg",
                                  control_config_text(false) + "channel.1.noise_rms = 0.8\n"
                                                               "channel.2.noise_rms = 0.8\n");
    out.str("");
    err.str("");
    CHECK(cmd_verify(bad_cfg.string(), report_path.string(), 0, out, err) == 1);
    CHECK(out.str().find("FAIL") != std::string::npos);

    CHECK(cmd_sweep("/nonexistent/path.cfg", out_path.string(), 0, out, err) == 2);

    fs::remove(cfg_path);
    fs::remove(bad_cfg);
    fs::remove(out_path);
    fs::remove(report_path);
}
