import math

import numpy as np
import pytest

from ordhull.continuum import (ORBITS, RealModel, bounded_homog, classify_real_orbit, exp_homog,
                               model_from_config, numeric_regularize, parse_expression, pos_homog,
                               regularization_table)
from ordhull.errors import DomainEscape, OrdhullError
from ordhull.instancefile import fixture_path, load_json

X = np.geomspace(0.01, 100, 100)


def rel_err(a, b):
    return np.max(np.abs(a - b) / np.abs(b))


def test_square_matches_closed_form():
    m = pos_homog(1, range(-10, 11), 2.0, X)
    lo = numeric_regularize(m, lambda x: x ** 2, "min")
    assert rel_err(lo, 2.0 ** -10 * X ** 2) <= 1e-12
    hi = numeric_regularize(m, lambda x: x ** 2, "max")
    assert rel_err(hi, 2.0 ** 10 * X ** 2) <= 1e-12


def test_homogeneous_fixpoint():
    m = pos_homog(1, range(-10, 11), 2.0, X)
    for side in ("min", "max"):
        assert rel_err(numeric_regularize(m, lambda x: x, side), X) <= 1e-12


def wave(x):
    return x * (1 + 0.25 * np.sin(2 * np.pi * np.log2(x)))


def test_bounded_wave_is_its_own_regularization():
    xs = np.geomspace(0.5, 8, 50)
    m = bounded_homog(2.0, 1, 10, xs)
    assert rel_err(numeric_regularize(m, wave, "min"), wave(xs)) <= 1e-12


def test_dense_lattice_wave_matches_one_period_minimum():
    xs = np.geomspace(0.5, 8, 50)
    m = pos_homog(1, range(-640, 641), 2 ** (1 / 64), xs)
    lo = numeric_regularize(m, wave, "min")
    # independent oracle: x * min over one period of the lattice phases
    phase = np.log2(xs)[:, None] + np.arange(64)[None, :] / 64
    oracle = xs * (1 + 0.25 * np.sin(2 * np.pi * phase)).min(axis=1)
    assert rel_err(lo, oracle) <= 1e-12
    assert np.all(lo >= 0.75 * xs * (1 - 1e-12))


def test_table_input_and_domain_escape():
    m = pos_homog(1, [-1, 0, 1], 2.0, [1.0, 2.0])
    table = {0.5: 0.5, 1.0: 1.0, 2.0: 2.0, 4.0: 4.0}
    assert np.allclose(numeric_regularize(m, table), [1.0, 2.0])
    with pytest.raises(DomainEscape):
        numeric_regularize(m, {1.0: 1.0, 2.0: 2.0})
    e = exp_homog(1, [-1, 0, 1], [0.0])
    with pytest.raises(DomainEscape):
        numeric_regularize(e, lambda x: np.where(x > 0.5, np.inf, 1.0))


def test_model_validation():
    with pytest.raises(OrdhullError):
        RealModel("pos", 1, (1.0, 2.0), (1.0,))          # not closed under inversion
    with pytest.raises(OrdhullError):
        RealModel("pos", 1, (0.5, 2.0), (1.0,))          # no identity
    with pytest.raises(OrdhullError):
        RealModel("pos", 1, (1.0,), (1.0,), tolerance=0)
    with pytest.raises(OrdhullError):
        RealModel("bounded", 1, (1.0, 3.0, 1 / 3), (1.0,), r0=2.0)
    with pytest.raises(DomainEscape):
        pos_homog(1, [0], 2.0, [-1.0])


def test_exp_model_agrees_with_multiplicative_model():
    shifts = np.linspace(-2, 2, 41)
    ts = np.linspace(-1, 1, 21)
    f = lambda x: x ** 3 + np.sqrt(x)
    pos = RealModel("pos", 2.0, tuple(np.exp(shifts)), tuple(np.exp(ts)), tolerance=1e-12)
    exp = exp_homog(2.0, shifts, ts)
    for side in ("min", "max"):
        a = numeric_regularize(pos, f, side)
        b = numeric_regularize(exp, lambda t: f(np.exp(t)), side)
        assert rel_err(a, b) <= 1e-12


def test_orbit_classifier():
    probe = [-math.inf, -3.5, -1e-300, 0.0, 1e-300, 2.0, math.inf]
    labels = [classify_real_orbit(x) for x in probe]
    assert {o.label for o in labels} == set(ORBITS)
    assert classify_real_orbit(-3.5).label == "]-inf,0["
    assert classify_real_orbit(0).stationary
    assert classify_real_orbit(math.inf).stationary
    assert sum(o.stationary for o in {o.label: o for o in labels}.values()) == 3
    with pytest.raises(OrdhullError):
        classify_real_orbit(float("nan"))


def test_expression_parser():
    f = parse_expression("x * (1 + 0.25 * sin(2 * pi * log2(x)))")
    assert np.allclose(f(np.array([1.0, 2.0])), [1.0, 2.0])
    for bad in ("__import__('os')", "x.real", "open(x)", "y + 1", "x +"):
        with pytest.raises(OrdhullError):
            parse_expression(bad)


@pytest.mark.parametrize("name", ["pos_square", "pos_identity", "bounded_wave", "pos_wave", "exp_shift"])
def test_shipped_demo_configs(name):
    model, f, _ = model_from_config(load_json(fixture_path(f"demo_{name}"))["demo"])
    rows = regularization_table(model, f)
    assert len(rows) == len(model.sample_X)
    assert all(r.f_min <= r.f * (1 + 1e-12) and r.f <= r.f_max * (1 + 1e-12) for r in rows)
