"""Exact arithmetic in real quadratic fields.

Kronecker symbols, continued fractions of rationals and quadratic
irrationals, and fundamental units of real quadratic orders.  Nothing in
here touches floating point except ``__float__`` for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational

from .config import DEFAULT_LIMITS
from .errors import BoundExceeded

__all__ = [
    "ContinuedFraction",
    "PellSolution",
    "QuadIrrational",
    "cf_expand",
    "factorize",
    "fundamental_pell",
    "is_square",
    "is_squarefree",
    "kronecker",
    "quad",
]


# --------------------------------------------------------------------------
# integer helpers
# --------------------------------------------------------------------------

def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


@lru_cache(maxsize=4096)
def _split_square(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``s*s*m`` with ``m`` square-free; return ``(s, m)``."""
    s, m = 1, 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        m *= p ** (e % 2)
    return s, m


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        raise ValueError("Kronecker symbol (a/0) is not supported")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# --------------------------------------------------------------------------
# quadratic irrationals
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadIrrational:
    """The real number ``(a + b*sqrt(D)) / c``.

    The constructor normalizes: square factors of ``D`` move into ``b``,
    ``c`` is made positive and ``gcd(a, b, c) = 1``.  A value that turns out
    rational is refused; use :func:`quad` when that can happen.
    """

    a: int
    b: int
    c: int
    D: int

    def __post_init__(self):
        a, b, c, D = self.a, self.b, self.c, self.D
        if D <= 0:
            raise ValueError(f"radicand must be positive, got {D}")
        if c == 0:
            raise ZeroDivisionError("denominator is zero")
        s, D = _split_square(D)
        b *= s
        if b == 0 or D == 1:
            raise ValueError("value is rational, not a quadratic irrational")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "D", D)

    # -- conversions -------------------------------------------------------
    @classmethod
    def _from_parts(cls, x: Fraction, y: Fraction, D: int):
        # x + y*sqrt(D)
        if y == 0:
            return x
        den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
        return cls(int(x * den), int(y * den), den, D)

    def parts(self) -> tuple[Fraction, Fraction]:
        """``(x, y)`` with value ``x + y*sqrt(D)``."""
        return Fraction(self.a, self.c), Fraction(self.b, self.c)

    def _coerce(self, other) -> tuple[Fraction, Fraction] | None:
        if isinstance(other, QuadIrrational):
            if other.D != self.D:
                raise ValueError(
                    f"cannot mix Q(sqrt{self.D}) and Q(sqrt{other.D})")
            return other.parts()
        if isinstance(other, Rational):
            return Fraction(other), Fraction(0)
        return None

    def __float__(self):
        return (self.a + self.b * self.D ** 0.5) / self.c

    def __str__(self):
        sign = "+" if self.b > 0 else "-"
        coef = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        core = f"{self.a}{sign}{coef}sqrt{self.D}" if self.a else (
            f"{'-' if self.b < 0 else ''}{coef}sqrt{self.D}")
        return core if self.c == 1 else f"({core})/{self.c}"

    # -- field operations --------------------------------------------------
    def conjugate(self) -> "QuadIrrational":
        return QuadIrrational(self.a, -self.b, self.c, self.D)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.D, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def __neg__(self):
        return QuadIrrational(-self.a, -self.b, self.c, self.D)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = self.parts()
        return self._from_parts(x + o[0], y + o[1], self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = self.parts()
        return self._from_parts(x - o[0], y - o[1], self.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = self.parts()
        u, v = o
        return self._from_parts(x * u + y * v * self.D, x * v + y * u, self.D)

    __rmul__ = __mul__

    def _inverse_parts(self) -> tuple[Fraction, Fraction]:
        x, y = self.parts()
        n = x * x - y * y * self.D
        return x / n, -y / n

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            if o[0] == 0:
                raise ZeroDivisionError("division by zero")
            x, y = self.parts()
            return self._from_parts(x / o[0], y / o[0], self.D)
        return self * QuadIrrational._from_parts(o[0], o[1], self.D)._inverse_as_quad()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._inverse_as_quad() * o[0]

    def _inverse_as_quad(self) -> "QuadIrrational":
        x, y = self._inverse_parts()
        return self._from_parts(x, y, self.D)

    # -- order -------------------------------------------------------------
    def sign(self) -> int:
        return _sign_of(*self.parts(), self.D)

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        x, y = self.parts()
        return _sign_of(x - o[0], y - o[1], self.D)

    def __lt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __floor__(self) -> int:
        r = isqrt(self.b * self.b * self.D)
        whole = self.a + r if self.b > 0 else self.a - r - 1
        return whole // self.c


def _sign_of(x: Fraction, y: Fraction, D: int) -> int:
    """Sign of ``x + y*sqrt(D)`` for square-free ``D > 1``."""
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    return sx if x * x > y * y * D else sy


def quad(a: int, b: int, c: int, D: int):
    """``(a + b*sqrt(D)) / c`` as a :class:`QuadIrrational`, or a ``Fraction``
    when the value happens to be rational."""
    if c == 0:
        raise ZeroDivisionError("denominator is zero")
    if D < 0:
        raise ValueError("radicand must be non-negative")
    s, m = _split_square(D) if D else (0, 1)
    if b * s == 0 or m == 1:
        return Fraction(a + b * s, c)
    return QuadIrrational(a, b, c, D)


# --------------------------------------------------------------------------
# continued fractions
# --------------------------------------------------------------------------

def _mobius(quotients, tail=None):
    """Apply ``[q0; q1, ..., qk, tail]``; with ``tail=None`` the expansion is finite."""
    if tail is None:
        value = Fraction(quotients[-1])
        quotients = quotients[:-1]
    else:
        value = tail
    for q in reversed(quotients):
        value = q + 1 / value
    return value


@dataclass(frozen=True)
class ContinuedFraction:
    """``[preperiod; period, period, ...]`` with an empty period for rationals.

    ``radicand`` is the square-free D with the value in Q(sqrt(D)).  It lets
    :meth:`value` avoid factoring the large discriminant a long period
    produces; without it that discriminant is factored by trial division.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()
    radicand: int | None = field(default=None, compare=False)

    @property
    def is_rational(self) -> bool:
        return not self.period

    def value(self):
        """Reconstruct the exact number (``Fraction`` or :class:`QuadIrrational`)."""
        if not self.period:
            return _mobius(list(self.preperiod))
        # purely periodic tail y = [period, y]: solve m10*y^2 + (m11-m00)*y - m01 = 0
        m00, m01, m10, m11 = 1, 0, 0, 1
        for q in self.period:
            m00, m01, m10, m11 = m00 * q + m01, m00, m10 * q + m11, m10
        disc = (m11 - m00) ** 2 + 4 * m01 * m10
        if self.radicand is None:
            tail = QuadIrrational(m00 - m11, 1, 2 * m10, disc)
        else:
            s2, rem = divmod(disc, self.radicand)
            s = isqrt(s2)
            if rem or s * s != s2:
                raise ValueError(f"period does not lie in Q(sqrt{self.radicand})")
            tail = QuadIrrational(m00 - m11, s, 2 * m10, self.radicand)
        if not self.preperiod:
            return tail
        return _mobius(list(self.preperiod), tail)

    def terms(self):
        """Partial quotients, forever for a periodic expansion."""
        yield from self.preperiod
        while self.period:
            yield from self.period

    def __str__(self):
        head = ", ".join(map(str, self.preperiod))
        if not self.period:
            return f"[{head}]"
        return f"[{head}; ({', '.join(map(str, self.period))})]"


def _floor_surd(P: int, d: int, Q: int) -> int:
    """floor((P + sqrt(d)) / Q) for non-square d > 0."""
    r = isqrt(d)
    if Q > 0:
        return (P + r) // Q
    return (-P - r - 1) // (-Q)


def _surd_states(P: int, d: int, Q: int, max_steps: int):
    """Run the complete-quotient recursion for ``(P + sqrt(d)) / Q``.

    Requires ``Q | d - P*P``.  Returns ``(states, quotients, start)`` where
    ``states[start:]`` is one full period.
    """
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    quotients: list[int] = []
    while (P, Q) not in seen:
        if len(states) >= max_steps:
            raise BoundExceeded(
                f"no period found within {max_steps} continued-fraction steps",
                bound=max_steps)
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        q = _floor_surd(P, d, Q)
        quotients.append(q)
        P = q * Q - P
        Q = (d - P * P) // Q
    return states, quotients, seen[(P, Q)]


def cf_expand(x, max_steps: int = DEFAULT_LIMITS.pell_steps) -> ContinuedFraction:
    """Continued fraction of a non-negative rational or a quadratic irrational.

    Rational expansions end in a partial quotient >= 2 whenever they have
    more than one term, so every rational has exactly one expansion.

    >>> str(cf_expand(Fraction(1, 2)))
    '[0, 2]'
    >>> str(cf_expand(QuadIrrational(0, 1, 1, 2)))
    '[1; (2)]'
    """
    if isinstance(x, QuadIrrational):
        if x.sign() < 0:
            raise ValueError("expansion of negative numbers is not supported")
        d = x.b * x.b * x.D
        P, Q = (x.a, x.c) if x.b > 0 else (-x.a, -x.c)
        if (d - P * P) % Q:
            P, d, Q = P * abs(Q), d * Q * Q, Q * abs(Q)
        _, quotients, start = _surd_states(P, d, Q, max_steps)
        if start == 0:
            # keep a0 in the preperiod so every expansion reads [a0; ...]
            start = 1
            quotients.append(quotients[0])
        return ContinuedFraction(tuple(quotients[:start]), tuple(quotients[start:]), x.D)
    if isinstance(x, Rational):
        x = Fraction(x)
        if x < 0:
            raise ValueError("expansion of negative numbers is not supported")
        p, q = x.numerator, x.denominator
        out = []
        while q:
            a, r = divmod(p, q)
            out.append(a)
            p, q = q, r
        return ContinuedFraction(tuple(out))
    raise TypeError(f"cannot expand {type(x).__name__}")


# --------------------------------------------------------------------------
# Pell equation x^2 - disc*y^2 = +-4
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PellSolution:
    """``(x + y*sqrt(disc)) / 2``, the fundamental unit of the order of ``disc``."""

    x: int
    y: int
    sign: int  # x^2 - disc*y^2, either +4 or -4
    disc: int

    @property
    def norm(self) -> int:
        return self.sign // 4


def check_discriminant(disc: int) -> None:
    if disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a discriminant (must be 0 or 1 mod 4)")


@lru_cache(maxsize=4096)
def fundamental_pell(disc: int, max_steps: int = DEFAULT_LIMITS.pell_steps) -> PellSolution:
    """Least solution of ``x^2 - disc*y^2 = +-4`` with ``x, y > 0``.

    Computed as the product of the complete quotients over one period of the
    expansion of ``(delta + sqrt(disc)) / 2``, whose lattice ``Z + Z*omega``
    is the order of discriminant ``disc`` itself.

    >>> fundamental_pell(5)
    PellSolution(x=1, y=1, sign=-4, disc=5)
    """
    if disc <= 0 or is_square(disc):
        raise ValueError(f"need a positive non-square discriminant, got {disc}")
    check_discriminant(disc)
    delta = disc % 2
    states, _, start = _surd_states(delta, disc, 2, max_steps)
    u, v = Fraction(1), Fraction(0)  # running product u + v*sqrt(disc)
    for P, Q in states[start:]:
        p, q = Fraction(P, Q), Fraction(1, Q)
        u, v = u * p + v * q * disc, u * q + v * p
    x, y = 2 * u, 2 * v
    if x < 0:
        x, y = -x, -y
    assert x.denominator == 1 and y.denominator == 1 and y > 0
    x, y = int(x), int(y)
    sign = x * x - disc * y * y
    assert sign in (4, -4)
    return PellSolution(x, y, sign, disc)
