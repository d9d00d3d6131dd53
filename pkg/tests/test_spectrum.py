import math

import mpmath
import pytest

from partheta import evaluate, DerivOrder
from partheta.errors import Diverged, TooFewEntries
from partheta.spectrum import (LOCAL_MAX, LOCAL_MIN, NEGATIVE_Q, SpectrumTable, double_refine,
                               estimate_asymptotics, parity_location_check, spectrum_scan)
from partheta.zeros import real_zeros


def test_first_negative_double_zero():
    sp = double_refine("-0.727", "-2.99", digits=40, k=1)
    # [PAPER] printed -0.72713332 and -2.991
    assert abs(sp.q_star + mpmath.mpf("0.72713332")) < 5e-7
    assert abs(sp.y_star + mpmath.mpf("2.991")) < 5e-3
    assert sp.kind == LOCAL_MIN and sp.certified
    assert sp.digits_certified >= 30
    t = evaluate(sp.q_star, sp.y_star, digits=60)
    tx = evaluate(sp.q_star, sp.y_star, DerivOrder(1, 0), digits=60)
    assert abs(t.value) < mpmath.mpf(10) ** -35 and abs(tx.value) < mpmath.mpf(10) ** -35


def test_first_positive_double_zero():
    sp = double_refine("0.31", "-7", digits=40)
    assert abs(sp.q_star - mpmath.mpf("0.3092493386")) < 1e-9
    assert sp.y_star < 0 and sp.kind == LOCAL_MIN


def test_even_k_is_positive_maximum():
    sp = double_refine("-0.784", "2.91", digits=40, k=2)
    assert sp.y_star > 0 and sp.kind == LOCAL_MAX
    rep = parity_location_check(sp, real_zeros(sp.q_star, digits=40, radius=8))
    assert rep.status == "conjecture_pass"


def test_refine_rejects_zero_q():
    with pytest.raises(Diverged):
        double_refine(0, 1)


def test_short_scan_and_fit_guard():
    table = spectrum_scan(NEGATIVE_Q, 3, digits=30, validate=True)
    assert [e.k for e in table.entries] == [1, 2, 3]
    assert all("pairs ok" in e.notes for e in table.entries)
    assert [e.kind for e in table.entries] == [LOCAL_MIN, LOCAL_MAX, LOCAL_MIN]
    with pytest.raises(TooFewEntries):
        estimate_asymptotics(table)


def test_fit_targets():
    table = spectrum_scan(NEGATIVE_Q, 4, digits=30, validate=False)
    fit = estimate_asymptotics(table)
    assert fit.target_slope == pytest.approx(math.pi / 8)
    assert fit.target_y_limit == pytest.approx(math.exp(math.pi / 2))
    assert len(fit.scaled_gaps) == 4
