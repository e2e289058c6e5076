import math

import numpy as np
import pytest

import tpad


def test_model_counts():
    m = tpad.model(8, 0.5)
    assert len(m.white) == len(m.black) == 8 * 9
    assert m.num_edges == 4 * 8 * 8
    assert m.c == pytest.approx(0.5 / 1.25)
    assert m.kasteleyn().shape == (72, 72)


def test_order_must_be_multiple_of_four():
    with pytest.raises(Exception):
        tpad.model(6, 0.5)


def test_inverse_and_probabilities():
    m = tpad.model(8, 0.5)
    k = tpad.invert_kasteleyn(m)
    assert k.residual < 1e-10
    assert np.allclose(m.kasteleyn() @ k.inverse, np.eye(72), atol=1e-10)
    p = [k.edge_probability(e) for e in range(m.num_edges)]
    assert sum(p) == pytest.approx(len(m.white))
    assert k.gap_probability([3]) == pytest.approx(1 - p[3])


def test_contour_formula_matches_dense():
    m = tpad.model(8, 0.4)
    k = tpad.invert_kasteleyn(m)
    for wi, bi in [(0, 0), (10, 31), (50, 7)]:
        v = tpad.kinv_analytic(m, m.white[wi], m.black[bi])
        assert abs(v - k.inverse[wi, bi]) < 1e-8


def test_sample_is_reproducible_and_perfect():
    m = tpad.model(16, 0.5)
    s1, s2 = tpad.sample(m, 7), tpad.sample(m, 7)
    assert s1 == s2
    assert len(s1) == len(m.white)
    assert tpad.sample(m, 8) != s1
    h = tpad.heights(m, s1)
    assert h.shape == (33, 33)
    assert h[0, 0] == 1


def test_airy():
    assert tpad.psi(0, 0, 1, 0) == pytest.approx(math.exp(1 / 12) / math.sqrt(4 * math.pi))
    assert tpad.extended_airy_kernel(0, 0.5, 0, 0.5) == pytest.approx(tpad.airy_kernel(0.5, 0.5), rel=1e-8)
    assert tpad.airy_fdd([0.0], [0.0]) == pytest.approx(0.96937282835, abs=1e-9)


def test_bessel():
    assert tpad.bessel_kernel(0, 2, 1.0).real == pytest.approx(tpad.bessel_series(0, 2, 1.0), abs=1e-10)


def test_window():
    w = tpad.window(1024, 0.3)
    assert w["n"] == 1024
    assert w["pn"] * w["qn"] == pytest.approx(1024)


def test_campaign():
    assert len(tpad.campaigns()) == 13
    r = tpad.run_campaign("partition-function")
    assert r["verdict"] == "PASS"
    assert r["csv"].splitlines()[0] == ",".join(r["columns"])
    with pytest.raises(Exception):
        tpad.run_campaign("kernel-convergence", {"gamma": 0.4})
