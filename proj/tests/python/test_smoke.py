import math
from fractions import Fraction

import pytest

import hermeis


def test_plan_numbers():
    plan = hermeis.plan_sampling(1000.0)
    assert plan.fcw == 42950
    assert plan.f_dds == pytest.approx(1000.00761449337, rel=1e-12)
    assert plan.f_adapt == 200000.0
    assert plan.divider == 250
    assert plan.cycle_samples == 200
    assert hermeis.period_fraction(plan) == Fraction(536870912, 2684375)

    plan3k = hermeis.plan_sampling(3000.0)
    assert plan3k.f_adapt == 192000.0
    assert plan3k.divider == 260

    with pytest.raises(hermeis.BandError):
        hermeis.plan_sampling(0.01)


def test_quarter_boundaries():
    plan = hermeis.plan_sampling(50000.0)
    bounds = hermeis.quarter_boundaries(plan)
    assert [b[0] for b in bounds] == [0, 0, 1, 2, 3]  # P just under 4


def test_circuit_anchors():
    model = hermeis.RandlesModel(3900.0, 100e3, 68e-9)
    z = hermeis.randles_impedance(model, 2 * math.pi * 1000.0)
    assert abs(z) == pytest.approx(4594.786, rel=1e-4)
    assert math.degrees(math.atan2(z.imag, z.real)) == pytest.approx(-30.604, abs=1e-2)
    assert model.corner_hz() == pytest.approx(23.405, rel=1e-3)

    assert hermeis.rheostat_resistance(10) == pytest.approx(4037.0, abs=0.05)
    assert hermeis.rheostat_resistance(100) == pytest.approx(39470.1, abs=0.05)
    assert hermeis.reference_amplitude(10, 1.0) == pytest.approx(0.0404, abs=5e-4)
    assert hermeis.adc_quantize(1.65) == (512, False)
    assert hermeis.channel_capacity(38.1e6, 8) == 4762500


def small_config(ideal=True):
    cfg = hermeis.SweepConfig()
    cfg.grid = [1.0, 10.0, 100.0, 1000.0]
    cfg.ideal_adc = ideal
    cfg.alpha = 1.0
    cfg.add_randles_channel(1, 3900.0, 100e3, 68e-9, seed=1)
    cfg.add_randles_channel(2, 3900.0, 53.6e3, 68e-9, seed=2)
    cfg.threads = 1
    return cfg


def test_sweep_matches_circuit_model():
    cfg = small_config()
    result = hermeis.run_sweep(cfg)
    assert len(result.points) == 8
    models = {1: (3900.0, 100e3, 68e-9), 2: (3900.0, 53.6e3, 68e-9)}
    for p in result.points:
        truth = hermeis.randles_impedance(
            hermeis.RandlesModel(*models[p.channel_id]), 2 * math.pi * p.f_dds
        )
        assert p.z_mag_raw == pytest.approx(abs(truth), rel=0.005)
        assert p.z_phase_deg == pytest.approx(
            math.degrees(math.atan2(truth.imag, truth.real)), abs=0.5
        )
    report = hermeis.verify(result)
    assert report["passed"]


def test_determinism_and_csv(tmp_path):
    cfg = small_config(ideal=False)
    a = hermeis.sweep_csv(hermeis.run_sweep(cfg))
    b = hermeis.sweep_csv(hermeis.run_sweep(cfg))
    assert a == b
    assert a.splitlines()[0] == (
        "freq_hz,freq_actual_hz,channel,zmag_ohm_raw,zmag_ohm_cal,zphase_deg,"
        "i_acc,q_acc,clipped,overflow"
    )

    out = tmp_path / "sweep.csv"
    hermeis.write_csv(hermeis.run_sweep(cfg), str(out))
    assert out.read_text() == a


def test_config_text_and_time_model():
    cfg = hermeis.parse_config_text(
        "grid.points = 100, 1000\n"
        "channel.1.r_s = 3900\n"
        "channel.1.r_f = 100e3\n"
        "channel.1.c_dl = 68e-9\n"
    )
    assert cfg.n_in == 10
    assert cfg.alpha == pytest.approx(1 / 600)

    cfg.grid = [0.05]
    cfg.controller_overhead_s = 0.0
    assert hermeis.acquisition_time(cfg) == pytest.approx(40.0, abs=1e-6)

    with pytest.raises(hermeis.ParseError):
        hermeis.parse_config_text(
            "grid.points = 100\n"
            "grid.shape = oval\n"
            "channel.1.r_s = 3900\n"
            "channel.1.r_f = 100e3\n"
            "channel.1.c_dl = 68e-9\n"
        )


def test_table_channel_replay():
    cfg = hermeis.SweepConfig()
    cfg.grid = [10.0, 1000.0]
    cfg.ideal_adc = True
    cfg.alpha = 1.0
    cfg.add_table_channel(1, [1.0, 100.0, 10000.0], [20000 - 3000j, 12000 - 1500j, 8000 - 400j])
    result = hermeis.run_sweep(cfg)
    assert len(result.points) == 2
    # 10 Hz sits halfway between the first two rows on the log axis
    assert result.points[0].z_mag_raw == pytest.approx(abs(16000 - 2250j), rel=0.01)
    with pytest.raises(hermeis.MissingGroundTruthError):
        hermeis.verify(result)


def test_corner_extraction():
    cfg = hermeis.SweepConfig()
    cfg.grid = hermeis.log_grid(0.5, 5000.0, 40)
    cfg.ideal_adc = True
    cfg.alpha = 1.0
    cfg.add_randles_channel(1, 3900.0, 100e3, 68e-9)
    result = hermeis.run_sweep(cfg)
    corner = hermeis.faradaic_corner_hz(result.points, 3900.0)
    assert corner == pytest.approx(23.405, rel=0.05)
