"""Minkowski's question-mark function, evaluated exactly.

For x = [a0; a1, a2, ...],

    ?(x) = a0 + 2 * sum_{k>=1} (-1)^(k+1) / 2^(a1 + ... + ak).

Rationals have finite expansions, so the sum is a dyadic rational.  A
quadratic irrational has an eventually periodic expansion; each period
multiplies the remaining tail by (-1)^L / 2^(sum of the period), so the tail
is a geometric series with a rational sum.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .arith import QuadIrrational, cf_expand

__all__ = [
    "is_dyadic",
    "question_mark",
    "question_mark_partial",
    "question_mark_quad",
    "scale_embedding",
]


def is_dyadic(q: Fraction) -> bool:
    d = Fraction(q).denominator
    return d & (d - 1) == 0


def _signed_sum(terms, first_sign: int = 1) -> tuple[int, int]:
    """``(N, S)`` with sum_k sign_k / 2^(a_1 + ... + a_k) = N / 2^S.

    Signs alternate starting from ``first_sign``.  Integers only: each term
    shifts the running numerator, so no intermediate gcds are taken.
    """
    num, total, sign = 0, 0, first_sign
    for a in terms:
        num = (num << a) + sign
        total += a
        sign = -sign
    return num, total


def _series(terms) -> Fraction:
    num, total = _signed_sum(terms)
    return Fraction(num, 1 << total)


def question_mark(x) -> Fraction:
    """?(x) for rational ``0 <= x <= 1``; always a dyadic rational."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"?(x) is evaluated on [0, 1] only, got {x}")
    cf = cf_expand(x)
    a0, rest = cf.preperiod[0], cf.preperiod[1:]
    return a0 + 2 * _series(rest)


def question_mark_quad(x: QuadIrrational) -> Fraction:
    """?(x) for a quadratic irrational in (0, 1), in closed form.

    >>> question_mark_quad(QuadIrrational(-1, 1, 1, 2))
    Fraction(2, 5)
    """
    if isinstance(x, Rational):
        raise TypeError("rational input: use question_mark")
    if not (0 < x < 1):
        raise ValueError(f"{x} is not in (0, 1)")
    cf = cf_expand(x)
    a0, head = cf.preperiod[0], cf.preperiod[1:]
    finite = _series(head)
    # the period contributes sign * 2^-s0 * (n / 2^P) per pass, shrinking by (-1)^L / 2^P
    n, P = _signed_sum(cf.period, 1 if len(head) % 2 == 0 else -1)
    L = len(cf.period)
    tail = Fraction(n, (1 << P) - (-1) ** L) / (1 << sum(head))
    return a0 + 2 * (finite + tail)


def question_mark_partial(x, n_terms: int) -> Fraction:
    """Truncation of the series after ``n_terms`` partial quotients past a0."""
    cf = cf_expand(x)
    terms = cf.terms()
    a0 = next(terms)
    head = [a for _, a in zip(range(n_terms), terms)]
    return a0 + 2 * _series(head)


def _image(v) -> Fraction:
    return question_mark(v) if isinstance(v, Rational) else question_mark_quad(v)


def scale_embedding(theta: QuadIrrational, N: int):
    """Points m + n*theta of [0, 1] with |m|, |n| <= N and their ?-images,
    sorted by value.

    Returns a list of ``((m, n), value, image)``.
    """
    if not isinstance(theta, QuadIrrational) or not (0 < theta < 1):
        raise ValueError("theta must be a quadratic irrational in (0, 1)")
    if N < 1:
        raise ValueError("N must be >= 1")
    pts = []
    for n in range(-N, N + 1):
        for m in range(-N, N + 1):
            v = m + n * theta if n else Fraction(m)
            if 0 <= v <= 1:
                pts.append(((m, n), v))
    pts.sort(key=lambda t: t[1])
    return [(mn, v, _image(v)) for mn, v in pts]

