import json
import math
from fractions import Fraction

import pytest

import sigmapart as sp


def test_arith():
    assert sp.sigma_r(6, 2) == 50
    assert sp.sigma_r(10, 2) - sp.sigma_r(11, 2) == 8
    assert sp.ramanujan_sum(4, 2) == -2
    assert sp.multiplicative_basics(30) == (-1, 8, 3)
    assert sp.shifted_ramanujan_identity_residual(6, 7) < 1e-9


def test_table_and_distribution():
    rows = sp.build_table(2, 3)
    assert rows[3][2] == 20
    assert rows[2][2] == 6
    d = sp.exact_distribution(2, 2)
    assert d["pmf"][1] == Fraction(5, 11)
    assert d["pmf"][2] == Fraction(6, 11)
    assert sum(d["pmf"]) == 1
    # coefficients exceed 64 bits quickly and come back as exact ints
    big = sp.build_table(3, 120)
    assert all(isinstance(v, int) for v in big[120])
    assert max(abs(v) for v in big[120]) > 2**64


def test_constants_and_series():
    c1 = sp.constant_C(1)
    assert abs(c1 - 1.339784) < 1e-5
    assert abs(math.pi**2 / 6 * c1 - 2.20386) < 1e-4
    assert abs(sp.D1(3.0, 2) - sp.D1(3.0, 2, "direct")) < 1e-3


def test_saddle():
    s = sp.solve_saddle(100.0, 1.0, 2)
    assert s["residual"] < 1e-7
    assert s["B2"] > 0
    mu, nu2 = sp.mean_variance_saddle(200.0, 2)
    assert mu > 0 and nu2 > 0
    with pytest.raises(ValueError):
        sp.solve_saddle(100.0, 1.0, 2, "nonsense")


def test_ks_trend_small_rows():
    ok, rows = sp.ks_trend(2, [2, 5, 9, 15])
    assert ok
    assert all(0 <= r["ks_distance"] <= 1 for r in rows)


def test_cli_in_process():
    code, out, _ = sp.run_cli(["constants", "--r", "1"])
    assert code == 0
    assert abs(json.loads(out)["records"][0]["C"] - 1.339784) < 1e-5
    code, _, err = sp.run_cli(["table", "--nope"])
    assert code == 2 and err
