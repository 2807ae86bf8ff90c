import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from screened_casimir.dielectric import (
    Divergence,
    Drude,
    Plasma,
    TableFormatError,
    Tabulated,
    Vacuum,
    eval_epsilon,
    load_dielectric_table,
)
from screened_casimir.errors import DomainError


def test_plasma_at_omega_p():
    assert eval_epsilon(Plasma(1e14), 1e14) == 2.0


@pytest.mark.parametrize("xi", [0.0, 1.0, 1e15])
def test_vacuum(xi):
    assert eval_epsilon(Vacuum(), xi) == 1.0


def test_drude_value():
    assert eval_epsilon(Drude(1e16, 1e14), 1e16) == pytest.approx(1.0 + 1.0 / 1.01, abs=1e-6)
    assert eval_epsilon(Drude(1e16, 1e14), 1e16) == pytest.approx(1.990099, abs=1e-6)


def test_zero_frequency_sentinels():
    assert eval_epsilon(Plasma(1e14), 0.0) == Divergence(2, 1e28)
    assert eval_epsilon(Drude(1e16, 1e14), 0.0) == Divergence(1, 1e32 / 1e14)
    assert eval_epsilon(Plasma(0.0), 0.0) == 1.0


def test_model_validation():
    with pytest.raises(DomainError):
        Plasma(-1.0)
    with pytest.raises(DomainError):
        Drude(1e16, 0.0)
    with pytest.raises(DomainError):
        Tabulated((1.0,), (2.0,))
    with pytest.raises(DomainError):
        Tabulated((1.0, 1.0), (2.0, 2.0))
    with pytest.raises(DomainError):
        Tabulated((1.0, 2.0), (2.0, 0.5))
    with pytest.raises(DomainError):
        eval_epsilon(Vacuum(), -1.0)


@given(st.floats(1e10, 1e18), st.floats(1.0001, 100.0))
def test_non_increasing_and_at_least_one(xi, factor):
    for model in (Plasma(3e15), Drude(3e15, 1e13)):
        a, b = eval_epsilon(model, xi), eval_epsilon(model, xi * factor)
        assert b <= a and b >= 1.0


@given(st.floats(1e-3, 1e3))
def test_drude_to_plasma(ratio):
    wp = 1e15
    gamma = wp * 1e-8
    xi = wp * ratio
    d = eval_epsilon(Drude(wp, gamma), xi)
    p = eval_epsilon(Plasma(wp), xi)
    # relative gap is below gamma / xi, i.e. 1e-5 at xi = 1e-3 wp
    assert abs(d / p - 1.0) <= gamma / xi
    if ratio >= 1e-2:
        assert d == pytest.approx(p, rel=1e-6)


def test_table_two_lines():
    model = load_dielectric_table("xi_rad_s,eps\n1e13,5.0\n1e15,2.0\n")
    assert isinstance(model, Tabulated)
    assert len(model.xi) == 2
    assert eval_epsilon(model, 1e14) == pytest.approx(math.sqrt(10.0), rel=1e-12)
    assert eval_epsilon(model, 1.0) == 5.0
    assert eval_epsilon(model, 1e20) == 2.0


def test_table_comments_and_blank_lines():
    text = "# gold, synthetic\n\nxi_rad_s,eps\n# sample block\n1e13,5.0\n\n2e13,4.0\n"
    model = load_dielectric_table(text)
    assert model.xi == (1e13, 2e13)


@pytest.mark.parametrize("text,line", [
    ("xi_rad_s,eps\n1e13,5\n1e12,4\n", 3),
    ("xi_rad_s,eps\n1e13,5\n2e13,0.9\n", 3),
    ("xi_rad_s,eps\n1e13,5\n2e13,abc\n", 3),
    ("xi_rad_s,eps\n1e13,5,1\n", 2),
    ("xi,e\n1,2\n", 1),
    ("xi_rad_s,eps\n-1,5\n", 2),
])
def test_table_errors_name_line(text, line):
    with pytest.raises(TableFormatError) as info:
        load_dielectric_table(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_table_needs_two_samples():
    with pytest.raises(TableFormatError):
        load_dielectric_table("xi_rad_s,eps\n1e13,5\n")
    with pytest.raises(TableFormatError):
        load_dielectric_table("")


def test_table_round_trip_drude():
    drude = Drude(1.37e16, 5.32e13)
    xi = np.geomspace(1e11, 1e18, 64)
    rows = "\n".join(f"{float(a)!r},{eval_epsilon(drude, float(a))!r}" for a in xi)
    model = load_dielectric_table("xi_rad_s,eps\n" + rows + "\n")
    mids = np.sqrt(xi[:-1] * xi[1:])
    for m in mids:
        assert eval_epsilon(model, m) == pytest.approx(eval_epsilon(drude, m), rel=1e-2)


def test_table_from_stream(tmp_path):
    path = tmp_path / "eps.csv"
    path.write_text("xi_rad_s,eps\n1e13,3\n1e14,2\n")
    with open(path) as fh:
        assert load_dielectric_table(fh).eps == (3.0, 2.0)
