import math
from fractions import Fraction

import mpmath
import pytest

from coxthick.bounds import (
    additive_tail,
    bounds_report,
    f,
    f_exact,
    f_value,
    g,
    g_continuous,
    h,
    integer_two_thirds,
    pi9,
    pi_2n_bound,
    pi_step,
    small_clique_part,
    tail_bounds,
)
from coxthick.census import C9, T9


def test_f_small_exact():
    assert f_exact(1) == 2
    assert f_exact(2) == 4 * (Fraction(1, 4) + Fraction(2, 4) + Fraction(1, 8))


def test_f_at_eighteen_direct_evaluation():
    # value of the defining sum, recorded from the exact rational
    assert f(18) == pytest.approx(0.034917510828467, rel=1e-12)


def test_exact_and_truncated_paths_agree():
    for n in (150, 200, 201, 260):
        exact = f_exact(n)
        assert float(f_value(n).value) == pytest.approx(exact.numerator / exact.denominator, rel=1e-14)


def test_truncation_bound_is_tiny():
    fv = f_value(5000)
    assert fv.tail_bound < fv.value * mpmath.mpf(2) ** -190


def test_f_decreasing_past_eighteen():
    vals = [f(n) for n in range(18, 400)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_f_summable():
    partial = [additive_tail(18, k) for k in (50, 100, 183)]
    assert partial[0] < partial[1] <= partial[2]
    assert additive_tail(201, 400) < 1e-12


def test_g_examples():
    assert float(g(18, 0)) == pytest.approx(math.exp(-9), rel=1e-15)
    assert float(g(18, 6)) == pytest.approx(math.exp(-1), rel=1e-15)
    with pytest.raises(ValueError):
        g(18, 10)


def test_integer_two_thirds():
    assert integer_two_thirds(18) == 6
    assert integer_two_thirds(27) == 9
    assert integer_two_thirds(1000) == 100
    for n in range(1, 3000):
        M = integer_two_thirds(n)
        assert M**3 <= n * n < (M + 1) ** 3


def test_tail_pieces_at_eighteen():
    n = 18
    assert 2 * n * 2**-15 * g(n, integer_two_thirds(n)) <= 0.00273
    assert round(float(2 * n * 2**-15 * g_continuous(n)), 5) == 0.00273
    assert round(float(2 * n * small_clique_part(n)), 5) == 0.03484
    M = n ** (2 / 3)
    big_clique = 2 * n * 2 ** (-M * (M - 1) / 2)
    assert big_clique < 3.09e-5
    # the rounded pieces add to 0.0376009; the unrounded ones stay below 0.0376
    pieces = big_clique + float(2 * n * 2**-15 * g_continuous(n) + 2 * n * small_clique_part(n))
    assert pieces < 0.0376


def test_f_dominated_by_split_bound():
    for n in range(18, 80):
        M = n ** (2 / 3)
        bound = 2 * n * h(n) + 2 * n * 2 ** (-M * (M - 1) / 2)
        assert f(n) <= bound


def test_tail_bounds_keys():
    tb = tail_bounds(18, 6)
    assert set(tb) == {"g", "h"} and tb["h"] == h(18)


def test_pi9_and_doubling():
    p = pi9()
    assert float(p) == pytest.approx(0.78385, abs=1e-5)
    a = pi_2n_bound(p, 9, C9, T9)
    assert float(a) == pytest.approx(0.93537, abs=1e-4)
    assert a * a + Fraction(376, 10000) < a


def test_doubling_degenerate():
    assert pi_2n_bound(0, 9, C9, T9) == 1
    with pytest.raises(ValueError):
        pi_2n_bound(Fraction(3, 2), 9, C9, T9)


def test_pi_step_adds_f():
    assert float(pi_step(Fraction(1, 2), 18)) == pytest.approx(0.5 + f(18))


def test_report_recomputes_at_higher_precision():
    rep = bounds_report()
    with mpmath.workdps(120):
        hi = mpmath.mpf(f_exact(18).numerator) / f_exact(18).denominator
        assert float(hi) == rep.f_values[18]
    assert rep.contraction_holds
    assert math.isclose(rep.g_values[(18, 6)], math.exp(-1))
