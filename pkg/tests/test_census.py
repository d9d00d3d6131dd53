import pytest

from partheta.census import census, count_total
from partheta.errors import ContourTooClose


@pytest.mark.parametrize("q,pairs", [("-0.05", 0), ("0.2", 0), ("-0.75", 1), ("0.4", 1), ("-0.8", 2)])
def test_pair_counts(q, pairs):
    c = census(q, digits=30)
    assert c.complex_pairs == pairs
    assert c.total_inside == c.real_inside + 2 * pairs
    assert c.contour_margin > 4


def test_polynomial_case_counts_all_zeros():
    # tiny |q|: zeros near -q^-j, so |x| < |q|^-2.5 holds exactly two
    assert count_total("-0.01", 0.01 ** -2.5, digits=30) == 2


def test_q_zero_has_no_zeros():
    assert count_total(0, 100, digits=30) == 0


def test_contour_through_zero_rejected():
    from partheta.zeros import real_zeros

    z = real_zeros("-0.1", j_max=2, digits=30).positive[0]
    with pytest.raises(ContourTooClose):
        count_total("-0.1", z.x, digits=30)


def test_nodes_minimum():
    with pytest.raises(ValueError):
        count_total("-0.5", 3, nodes=16)
