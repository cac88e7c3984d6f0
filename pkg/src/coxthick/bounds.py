"""Analytic bounds on the probability that G(n, 1/2) is not thick.

``f(n) = 2n * sum_i C(n,i) 2^(-n - C(i,2))`` bounds the one-step growth
``pi_{n+1} <= pi_n + f(n)``; the doubling bound combines ``pi_n`` with the
census constants t(n), c(n).  Rational quantities are kept exact as long as
that is cheap; anything involving ``exp`` runs in mpmath at ``PREC_BITS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .census import C9, T9

PREC_BITS = 200
EXACT_F_LIMIT = 200
PRECISION_NOTE = f"{PREC_BITS}-bit binary floating point; printed digits are exact to the last place shown"


def _mp():
    ctx = mpmath.mp.clone()
    ctx.prec = PREC_BITS
    return ctx


def f_exact(n: int) -> Fraction:
    if n < 1:
        raise ValueError("f(n) needs n >= 1")
    s = sum(Fraction(math.comb(n, i), 2 ** (n + i * (i - 1) // 2)) for i in range(n + 1))
    return 2 * n * s


@dataclass(frozen=True)
class FValue:
    n: int
    value: mpmath.mpf
    tail_bound: mpmath.mpf  # upper bound on the dropped terms

    def __float__(self):
        return float(self.value)


def f_value(n: int) -> FValue:
    """f(n), truncated once terms fall below 2^-PREC_BITS of the total.

    Consecutive terms have ratio (n-i)/(i+1) * 2^-i, so once the ratio is at
    most 1/2 the dropped tail is at most the last term kept.
    """
    if n < 1:
        raise ValueError("f(n) needs n >= 1")
    if n <= EXACT_F_LIMIT:
        mp = _mp()
        fr = f_exact(n)
        return FValue(n, mp.mpf(fr.numerator) / fr.denominator, mp.mpf(0))
    mp = _mp()
    total = mp.mpf(0)
    term = mp.ldexp(1, -n)  # i = 0
    i = 0
    while True:
        total += term
        if i == n:
            return FValue(n, 2 * n * total, mp.mpf(0))
        ratio = mp.mpf(n - i) / (i + 1) * mp.ldexp(1, -i)
        nxt = term * ratio
        if ratio <= 0.5 and nxt < total * mp.ldexp(1, -PREC_BITS):
            return FValue(n, 2 * n * total, 2 * n * nxt * 2)
        term = nxt
        i += 1


def f(n: int) -> float:
    return float(f_value(n).value)


def g(n: int, M: int):
    """exp(-n/2 + 2M - 2M^2/n), the Hoeffding tail for Bin(n, 1/2) below n/2 - M."""
    if M > n / 2:
        raise ValueError(f"g(n, M) needs M <= n/2, got n={n}, M={M}")
    if M < 0:
        raise ValueError("M must be nonnegative")
    mp = _mp()
    return mp.exp(mp.mpf(-n) / 2 + 2 * M - mp.mpf(2 * M * M) / n)


def g_continuous(n: int):
    """Upper bound for g(n, floor(n^(2/3))) with the floor replaced by its bounds."""
    mp = _mp()
    x = mp.cbrt(mp.mpf(n))
    return mp.exp(-mp.mpf(n) / 2 + 2 * x**2 - 2 * x + 4 / x - mp.mpf(2) / n)


def small_clique_part(n: int) -> Fraction:
    """2^-n * sum_{i<=5} C(n,i) 2^(-C(i,2))."""
    return sum(Fraction(math.comb(n, i), 2 ** (n + i * (i - 1) // 2)) for i in range(6))


def integer_two_thirds(n: int) -> int:
    """floor(n^(2/3)) computed in integers."""
    M = math.floor(n ** (2 / 3))
    while (M + 1) ** 3 <= n * n:
        M += 1
    while M**3 > n * n:
        M -= 1
    return M


def h(n: int):
    M = integer_two_thirds(n)
    mp = _mp()
    part = small_clique_part(n)
    return mp.mpf(part.numerator) / part.denominator + mp.ldexp(g(n, M), -15)


def tail_bounds(n: int, M: int) -> dict:
    return {"g": g(n, M), "h": h(n)}


def pi9(t9: int = T9) -> Fraction:
    return 1 - Fraction(t9, 2**36)


def pi_2n_bound(pi_n, n: int, c_n: int, t_n: int) -> Fraction:
    """pi_n^2 + 2 pi_n (1 - pi_n) n c(n) / (2^n t(n)) + (1 - pi_n)^2."""
    if t_n <= 0 or c_n <= 0:
        raise ValueError("t(n) and c(n) must be positive")
    p = Fraction(pi_n)
    if not 0 <= p <= 1:
        raise ValueError("pi_n must lie in [0, 1]")
    return p * p + 2 * p * (1 - p) * Fraction(n * c_n, 2**n * t_n) + (1 - p) ** 2


def pi_step(pi_n, n: int):
    return _mp().mpf(Fraction(pi_n).numerator) / Fraction(pi_n).denominator + f_value(n).value


def additive_tail(n: int, k: int):
    mp = _mp()
    return mp.fsum(f_value(i).value for i in range(n, n + k))


def f_max(lo: int = 18, hi: int = 10**4) -> tuple[int, float]:
    best = max(range(lo, hi + 1), key=lambda i: f_value(i).value)
    return best, float(f_value(best).value)


@dataclass
class BoundsReport:
    f_values: dict[int, float] = field(default_factory=dict)
    g_values: dict[tuple[int, int], float] = field(default_factory=dict)
    h_values: dict[int, float] = field(default_factory=dict)
    pi9: float = 0.0
    pi_bound: float = 0.0
    beta: float = 0.0376
    precision: str = PRECISION_NOTE

    @property
    def contraction_holds(self) -> bool:
        return self.pi_bound**2 + self.beta < self.pi_bound


def bounds_report(f_ns=(18,), h_ns=(18,)) -> BoundsReport:
    p9 = pi9()
    rep = BoundsReport(pi9=float(p9), pi_bound=float(pi_2n_bound(p9, 9, C9, T9)))
    for n in f_ns:
        rep.f_values[n] = f(n)
    for n in h_ns:
        M = integer_two_thirds(n)
        rep.g_values[(n, M)] = float(g(n, M))
        rep.h_values[n] = float(h(n))
    return rep
