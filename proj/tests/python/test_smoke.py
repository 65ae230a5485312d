import math

import pytest

import _core as tq


def test_closed_forms():
    assert tq.transition_probability(1.0, 0.0, 1.0) == pytest.approx(
        0.9981360381097858, abs=1e-12
    )
    assert tq.prefactor_c(1.0) == pytest.approx(-math.tanh(math.pi), abs=1e-14)
    # the defining property of the spin inversion level
    rho = tq.sis_level(2.0)
    assert tq.band_imbalance(2.0, rho, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_tasp_identity():
    field = [0.3, -0.7, 0.2, 0.5, -0.1]
    ta = tq.tasp(field, axis=0, g=1.5)
    eps = math.sqrt(sum(h * h for h in field))
    s = 1 - 2 * tq.transition_probability(1.5, field[0], eps)
    assert sum(x * x for x in ta) == pytest.approx(s * s, abs=1e-12)
    for h, x in zip(field, ta):
        assert x == pytest.approx(s * h / eps, abs=1e-12)


def test_model_zoo():
    p = tq.ModelParams()
    p.m_z = 1.0
    m = tq.Model.from_name("qah2d", p)
    assert m.dim == 2 and m.ncomp == 3 and m.rank == 2
    h = m.eval(0.0, 0.0)
    assert h == pytest.approx([-1.0, 0.0, 0.0])
    with pytest.raises(tq.ConfigError):
        tq.Model.from_name("nope", p)


def test_evolve_matches_closed_form():
    field = [0.0, 1.0]  # two-level crossing point
    out = tq.evolve(field, axis=0, g=1.0)
    assert out["population_lower"] == pytest.approx(
        tq.transition_probability(1.0, 0.0, 1.0), abs=1e-4
    )
    assert out["tail_tasp"][1] == pytest.approx(tq.prefactor_c(1.0), abs=1e-3)


def test_invariant_extraction():
    p = tq.ModelParams()
    p.m_z = 1.0
    rep = tq.scheme1(tq.Model.from_name("qah2d", p), g=1.0, grid=101)
    assert rep.invariant == -1
    assert {o.surface for o in rep.orders} == {"bis", "sis"}
    assert all(o.value == -1 for o in rep.orders)

    p.m_z = 3.0
    with pytest.raises(tq.EmptySurfaceError):
        tq.scheme1(tq.Model.from_name("qah2d", p), g=1.0, grid=101)
