"""Cycle thermodynamics: heats, work, efficiency, thresholds, ratios."""

import math

import numpy as np
import pytest

from qotto import (CycleConfig, EnsembleSpec, KINDS, SpectrumSpec,
                   adiabatic_energy_ratio, enumerate_states,
                   positive_work_threshold, run_cycle, thermal_occupation,
                   work_ratio_multiparticle, work_ratio_two_particle)

BOX = SpectrumSpec("box")
HARM = SpectrumSpec("harmonic")


def cfg(spec=BOX, statistics="boson", M=1, N=2, L1=1.0, R=2.0, Tc=1.0, Th=8.0):
    return CycleConfig(spec=spec, ens=EnsembleSpec(statistics, M, N),
                       L1=L1, R=R, T_c=Tc, T_h=Th)


def test_single_level_extracts_no_work():
    res = run_cycle(cfg(N=1, Th=17.0))
    assert res.Q_h == 0.0
    assert res.W == 0.0
    assert not res.positive_work


def test_threshold_temperature_gives_zero_work():
    for kind in KINDS:
        spec = SpectrumSpec(kind)
        for statistics, M in (("boson", 2), ("fermion", 2), ("distinguishable", 3)):
            res = run_cycle(cfg(spec=spec, statistics=statistics, M=M, N=4,
                                Th=2.0**spec.power_p))
            assert abs(res.W) <= 1e-10


def test_two_level_single_particle_cycle_oracle():
    # independent two-term sums at each corner
    b_h = 1.0 / 8.0
    u2 = (math.exp(-b_h) + 4 * math.exp(-4 * b_h)) / (math.exp(-b_h) + math.exp(-4 * b_h))
    e_l2 = (0.25, 1.0)
    u4 = (0.25 * math.exp(-0.25) + 1.0 * math.exp(-1.0)) / (math.exp(-0.25) + math.exp(-1.0))
    qh = u2 - 4 * u4
    qc = u2 / 4 - u4
    res = run_cycle(cfg())
    assert res.U2 == pytest.approx(u2, rel=1e-14)
    assert res.U4 == pytest.approx(u4, rel=1e-14)
    assert res.Q_h == pytest.approx(qh, rel=1e-13)
    assert res.Q_c == pytest.approx(qc, rel=1e-13)
    assert res.W == pytest.approx(qh - qc, rel=1e-13)
    # the four-decimal values quoted alongside the scenario
    assert (round(res.U2, 4), round(res.U4, 4)) == (2.2220, 0.4906)
    assert (round(res.Q_h, 4), round(res.Q_c, 4)) == (0.2595, 0.0649)
    assert round(res.W, 4) == 0.1947
    assert res.eta == 0.75


def test_first_law_holds_exactly_as_computed():
    for kind in KINDS:
        for statistics in ("boson", "fermion", "distinguishable"):
            for M in (1, 2, 3):
                res = run_cycle(cfg(spec=SpectrumSpec(kind), statistics=statistics,
                                    M=M, N=5, Th=9.0))
                assert res.W == res.Q_h - res.Q_c


def test_efficiency_is_pure_geometry():
    for kind in KINDS:
        spec = SpectrumSpec(kind)
        expected = 1.0 - adiabatic_energy_ratio(spec, 1.0, 3.0)
        etas = {run_cycle(cfg(spec=spec, statistics=s, M=M, N=5, R=3.0, Th=30.0)).eta
                for s in ("boson", "fermion", "distinguishable") for M in (1, 2, 3)}
        assert etas == {expected}


def test_work_over_heat_input_equals_geometric_efficiency():
    for kind in KINDS:
        spec = SpectrumSpec(kind)
        p = spec.power_p
        for statistics in ("boson", "fermion", "distinguishable"):
            res = run_cycle(cfg(spec=spec, statistics=statistics, M=2, N=4,
                                Th=3.0 * 2.0**p))
            assert res.Q_h > 1e-12
            assert res.W / res.Q_h == pytest.approx(1.0 - 2.0**-p, abs=1e-10)


def test_work_sign_flips_exactly_at_threshold():
    for kind in KINDS:
        spec = SpectrumSpec(kind)
        for statistics in ("boson", "fermion", "distinguishable"):
            for M in (1, 2, 3):
                threshold = 2.0**spec.power_p
                for factor, positive in ((0.9, False), (0.999, False),
                                         (1.001, True), (1.1, True)):
                    res = run_cycle(cfg(spec=spec, statistics=statistics, M=M,
                                        N=6, Th=factor * threshold))
                    assert res.positive_work == positive
                    assert (res.W > 0) == positive


def test_positive_work_threshold_values():
    assert positive_work_threshold(cfg(spec=BOX)) == 4.0
    assert positive_work_threshold(cfg(spec=SpectrumSpec("relativistic-box"))) == 2.0
    quartic = CycleConfig(spec=SpectrumSpec("quartic"),
                          ens=EnsembleSpec("boson", 1, 3),
                          L1=1.0, R=8.0, T_c=1.0, T_h=20.0)
    assert positive_work_threshold(quartic) == pytest.approx(16.0, rel=1e-14)


def test_quartic_threshold_agrees_with_sign_scan():
    spec = SpectrumSpec("quartic")
    threshold = 8.0**spec.power_p
    base = CycleConfig(spec=spec, ens=EnsembleSpec("boson", 1, 3),
                       L1=1.0, R=8.0, T_c=1.0, T_h=20.0)
    grid = np.linspace(0.8 * threshold, 1.2 * threshold, 81)
    signs = [run_cycle(CycleConfig(spec=spec, ens=base.ens, L1=1.0, R=8.0,
                                   T_c=1.0, T_h=t)).W > 0 for t in grid]
    flips = [i for i in range(1, len(signs)) if signs[i] != signs[i - 1]]
    assert len(flips) == 1
    assert grid[flips[0] - 1] < threshold < grid[flips[0]]


def test_distinguishable_work_is_additive():
    for kind in KINDS:
        spec = SpectrumSpec(kind)
        single = run_cycle(cfg(spec=spec, statistics="distinguishable", M=1,
                               N=5, Th=12.0)).W
        for M in (2, 3, 4):
            w = run_cycle(cfg(spec=spec, statistics="distinguishable", M=M,
                              N=5, Th=12.0)).W
            assert w == pytest.approx(M * single, rel=1e-12)


def test_thermal_occupation_single_state():
    occ = thermal_occupation(EnsembleSpec("fermion", 2, 2), BOX, 3.0, 1.0)
    assert occ.probabilities.tolist() == [1.0]


def test_thermal_occupation_equal_weights_at_high_temperature():
    occ = thermal_occupation(EnsembleSpec("boson", 2, 2), BOX, 1e14, 1.0)
    np.testing.assert_allclose(occ.probabilities, [1 / 3] * 3, rtol=1e-10)


def test_thermal_occupation_boson_pair_oracle():
    # weights proportional to e^-2, e^-5, e^-8, e^-10, e^-13, e^-18
    raw = [math.exp(-w) for w in (2, 5, 8, 10, 13, 18)]
    expected = [r / sum(raw) for r in raw]
    occ = thermal_occupation(EnsembleSpec("boson", 2, 3), BOX, 1.0, 1.0)
    np.testing.assert_allclose(occ.probabilities, expected, rtol=1e-13)
    assert occ.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
    assert (occ.probabilities >= 0).all()


def test_adiabatic_stroke_freezes_occupations():
    # recompute U3 from hot occupations against cold-width energies
    for statistics in ("boson", "fermion", "distinguishable"):
        c = cfg(statistics=statistics, M=2, N=4, Th=9.0)
        res = run_cycle(c)
        occ = thermal_occupation(c.ens, c.spec, c.T_h, c.L1)
        coeffs = np.array([lv.energy_coefficient
                           for lv in enumerate_states(c.ens, c.spec)])
        u3_direct = float((occ.probabilities * coeffs).sum()) / c.L2**c.spec.power_p
        assert u3_direct == pytest.approx(res.U3, rel=1e-12)


def test_two_particle_ratio_harmonic_statistics_blind():
    rb = work_ratio_two_particle(HARM, 200, "boson", 1.0, 2.0, 1.0, 5.0)
    rf = work_ratio_two_particle(HARM, 200, "fermion", 1.0, 2.0, 1.0, 5.0)
    assert rb == pytest.approx(rf, abs=1e-8)


def test_two_particle_ratio_box_intermediate_regime():
    rb = work_ratio_two_particle(BOX, 3, "boson", 1.0, 2.0, 1.0, 8.0)
    rf = work_ratio_two_particle(BOX, 3, "fermion", 1.0, 2.0, 1.0, 8.0)
    assert rb > 2.0
    assert rf < 2.0


def test_two_particle_ratio_low_temperature_regime():
    cold = SpectrumSpec("box", scale_c=20.0)
    rb = work_ratio_two_particle(cold, 3, "boson", 1.0, 2.0, 1.0, 4.2)
    rf = work_ratio_two_particle(cold, 3, "fermion", 1.0, 2.0, 1.0, 4.2)
    assert 0.95 <= rb <= 1.05
    assert 0.0 <= rf <= 0.05


def test_two_particle_ratio_rejects_distinguishable():
    with pytest.raises(ValueError):
        work_ratio_two_particle(BOX, 3, "distinguishable", 1.0, 2.0, 1.0, 8.0)


def test_ratio_is_nan_at_threshold():
    assert math.isnan(work_ratio_two_particle(BOX, 3, "boson", 1.0, 2.0, 1.0, 4.0))


def test_multiparticle_ratio_is_one_for_single_particle():
    for statistics in ("boson", "fermion", "distinguishable"):
        assert work_ratio_multiparticle(BOX, 4, statistics, 1,
                                        1.0, 2.0, 1.0, 8.0) == 1.0


def test_multiparticle_full_shell_fermions():
    # W_M equals the single-particle work, so the per-particle ratio is 1/M
    for M in (2, 3, 4):
        r = work_ratio_multiparticle(HARM, M + 1, "fermion", M,
                                     1.0, 2.0, 1.0, 7.0)
        assert r * M == pytest.approx(1.0, abs=1e-10)


def test_multiparticle_low_temperature_limits():
    cold = SpectrumSpec("box", scale_c=20.0)
    for M in (2, 3):
        rb = work_ratio_multiparticle(cold, 5, "boson", M, 1.0, 2.0, 1.0, 4.2)
        rf = work_ratio_multiparticle(cold, 5, "fermion", M, 1.0, 2.0, 1.0, 4.2)
        assert rb * M == pytest.approx(1.0, abs=0.05)
        assert 0.0 <= rf * M <= 0.05


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(R=1.0)
    with pytest.raises(ValueError):
        cfg(L1=0.0)
    with pytest.raises(ValueError):
        cfg(Tc=-1.0)
    with pytest.raises(ValueError):
        cfg(Th=0.0)


def test_regime_lambda():
    spec = SpectrumSpec("box", scale_c=20.0)
    assert cfg(spec=spec, Tc=2.0, L1=1.0).regime_lambda == 10.0
