import math

import pytest
from hypothesis import given, strategies as st

from cavity_gates.params import (
    CavitySystem, DecoherenceSpec, GateResult, Method, Scheme,
    rate_to_angular, time_to_seconds,
)

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)


def test_cooperativity_direct_substitution():
    assert CavitySystem(g=1.0, kappa=4.0, gamma=1.0).cooperativity == 1.0


@pytest.mark.parametrize("c, gok, gamma", [
    (4000.0, 0.1, 1.0),
    (50_000.0, 0.1, 2.0 * math.pi * 596.0),
    (8000.0, 10.0, 1.0),
])
def test_from_cooperativity_round_trip(c, gok, gamma):
    cav = CavitySystem.from_cooperativity(c, gok, gamma)
    assert cav.cooperativity == pytest.approx(c, rel=1e-12)
    assert cav.g_over_kappa == pytest.approx(gok, rel=1e-12)
    assert cav.gamma == gamma


@given(g=positive, kappa=positive, gamma=positive)
def test_gamma_units_round_trip(g, kappa, gamma):
    cav = CavitySystem(g, kappa, gamma)
    back = cav.in_gamma_units().scaled(gamma)
    assert back.g == pytest.approx(cav.g, rel=1e-12)
    assert back.kappa == pytest.approx(cav.kappa, rel=1e-12)
    assert back.gamma == pytest.approx(cav.gamma, rel=1e-12)


@given(g=positive, kappa=positive, gamma=positive, factor=positive)
def test_cooperativity_scale_invariant(g, kappa, gamma, factor):
    cav = CavitySystem(g, kappa, gamma)
    assert cav.scaled(factor).cooperativity == pytest.approx(cav.cooperativity, rel=1e-12)


@pytest.mark.parametrize("bad", [dict(g=0.0), dict(kappa=-1.0), dict(gamma=math.inf)])
def test_cavity_validation(bad):
    params = dict(g=1.0, kappa=1.0, gamma=1.0)
    params.update(bad)
    with pytest.raises(ValueError):
        CavitySystem(**params)


def test_effective_rate_t2_only():
    spec = DecoherenceSpec(qubit_t2=6.6e-3)
    assert spec.effective_rate(Scheme.SCATTERING) == pytest.approx(75.7576, rel=1e-4)


def test_effective_rate_simple_exchange_adds_optical_dephasing():
    spec = DecoherenceSpec(qubit_t2=6.6e-3, optical_pure_dephasing=9e3)
    rate = spec.effective_rate(Scheme.SIMPLE_EXCHANGE)
    assert rate == pytest.approx(4575.76, rel=1e-4)  # ~4.58e3 1/s
    # scattering path ignores optical dephasing
    assert spec.effective_rate(Scheme.SCATTERING) == pytest.approx(75.7576, rel=1e-4)


def test_effective_rate_all_zero():
    assert DecoherenceSpec().effective_rate(Scheme.RAMAN) == 0.0


def test_raman_adds_shelving_decay():
    spec = DecoherenceSpec(shelving_decay=8.0)
    assert spec.effective_rate(Scheme.RAMAN) == pytest.approx(1.0)
    assert spec.effective_rate(Scheme.SCATTERING) == 0.0


@given(relax=st.floats(0, 1e3), dephase=st.floats(0, 1e3),
       optical=st.floats(0, 1e3), shelving=st.floats(0, 1e3))
def test_effective_rate_floor(relax, dephase, optical, shelving):
    spec = DecoherenceSpec(qubit_relaxation=relax, qubit_pure_dephasing=dephase,
                           optical_pure_dephasing=optical, shelving_decay=shelving)
    floor = relax / 8.0 + dephase / 4.0
    for scheme in Scheme:
        assert spec.effective_rate(scheme) >= floor - 1e-15


def test_gate_result_validation():
    with pytest.raises(ValueError):
        GateResult(fidelity=1.2, gate_time=1.0, success_probability=1.0,
                   method=Method.ANALYTIC)
    with pytest.raises(ValueError):
        GateResult(fidelity=0.5, gate_time=0.0, success_probability=1.0,
                   method=Method.ANALYTIC)
    with pytest.raises(ValueError):
        GateResult(fidelity=0.5, gate_time=1.0, success_probability=-0.1,
                   method=Method.ANALYTIC)


def test_rate_units():
    assert rate_to_angular(596.0, "hz") == pytest.approx(2.0 * math.pi * 596.0)
    assert rate_to_angular(3.0, "rad_s") == 3.0
    assert rate_to_angular(2.0, "per_gamma", gamma=5.0) == 10.0
    assert rate_to_angular(2.0, "per_kappa", kappa=4.0) == 8.0
    with pytest.raises(ValueError):
        rate_to_angular(1.0, "thz")
    with pytest.raises(ValueError):
        rate_to_angular(1.0, "per_gamma")


def test_time_units():
    assert time_to_seconds(1.0, "s") == 1.0
    assert time_to_seconds(2.0, "inv_gamma", gamma=4.0) == 0.5
    with pytest.raises(ValueError):
        time_to_seconds(1.0, "fortnight")
