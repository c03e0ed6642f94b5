"""Quadratic orders Z + f*O_K and their class numbers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Literal

from .arith import factorize, fundamental_pell, is_squarefree, kronecker
from .config import DEFAULT_LIMITS
from .errors import BoundExceeded, SearchExhausted
from .qforms import class_number_definite, class_numbers_indefinite

__all__ = [
    "QuadOrder",
    "class_number_order",
    "conductor_search",
    "fundamental_discriminant",
    "is_fundamental",
    "order_from_cm_input",
    "split_discriminant",
    "unit_index",
]


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for square-free ``m != 1``."""
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"{m} is not a square-free integer other than 0, 1")
    return m if m % 4 == 1 else 4 * m


def split_discriminant(disc: int) -> tuple[int, int]:
    """Write ``disc = f^2 * d_K`` with ``d_K`` fundamental; return ``(d_K, f)``."""
    if disc % 4 not in (0, 1) or disc in (0, 1):
        raise ValueError(f"{disc} is not a quadratic discriminant")
    s = 1
    for p, e in factorize(disc).items():
        s *= p ** (e // 2)
    m = disc // (s * s)  # square-free, same sign as disc
    if m == 1:
        raise ValueError(f"{disc} is a perfect square")
    if m % 4 == 1:
        return m, s
    # m = 2, 3 mod 4 forces disc = 0 mod 4, so s is even
    return 4 * m, s // 2


@dataclass(frozen=True)
class QuadOrder:
    """The order of conductor ``f`` in the quadratic field of discriminant ``d_K``."""

    d_K: int
    f: int = 1

    def __post_init__(self):
        if not is_fundamental(self.d_K):
            raise ValueError(f"{self.d_K} is not a fundamental discriminant")
        if self.f < 1:
            raise ValueError(f"conductor must be >= 1, got {self.f}")

    @property
    def disc(self) -> int:
        return self.f * self.f * self.d_K

    @property
    def is_real(self) -> bool:
        return self.d_K > 0

    @property
    def is_maximal(self) -> bool:
        return self.f == 1

    @classmethod
    def from_disc(cls, disc: int) -> "QuadOrder":
        return cls(*split_discriminant(disc))

    def __str__(self):
        return f"O(d_K={self.d_K}, f={self.f})"


def order_from_cm_input(D: int, f: int = 1,
                        sign: Literal["imaginary", "real"] = "imaginary") -> QuadOrder:
    """Order of conductor ``f`` in Q(sqrt(-D)) or Q(sqrt(D))."""
    if D <= 1 or not is_squarefree(D):
        raise ValueError(f"D must be a square-free integer > 1, got {D}")
    if sign not in ("imaginary", "real"):
        raise ValueError(f"sign must be 'imaginary' or 'real', got {sign!r}")
    m = -D if sign == "imaginary" else D
    return QuadOrder(fundamental_discriminant(m), f)


def _mul_mod(x, y, tr, nm, mod):
    # (A + B*w)(C + E*w) with w^2 = tr*w - nm
    a, b = x
    c, e = y
    be = b * e
    return ((a * c - be * nm) % mod, (a * e + b * c + be * tr) % mod)


def unit_index(o: QuadOrder, max_power: int = DEFAULT_LIMITS.unit_power) -> int:
    """``[O_K^* : O^*]`` for the order ``o``.

    Imaginary fields: 3 or 2 for the extra roots of unity of d_K = -3, -4,
    else 1.  Real fields: least m with eps^m in Z + f*O_K, where eps is the
    fundamental unit of O_K.  By CRT this is the lcm of the indices for the
    prime powers exactly dividing f.
    """
    if o.f == 1:
        return 1
    if not o.is_real:
        return {-3: 3, -4: 2}.get(o.d_K, 1)
    return lcm(*(_real_unit_index(o.d_K, p**e, max_power)
                 for p, e in factorize(o.f).items()))


@lru_cache(maxsize=None)
def _real_unit_index(d_K: int, q: int, max_power: int) -> int:
    # eps^m lies in Z + q*O_K iff q divides its w-coordinate in the basis
    # (1, w), w = (d_K + sqrt(d_K))/2.  The index divides the order
    # psi(q) = q*(1 - (d_K/p)/p) of (O_K/q)^* / (Z/q)^*.
    unit = fundamental_pell(d_K)
    tr, nm = d_K, (d_K * d_K - d_K) // 4
    eps = ((unit.x - unit.y * d_K) // 2 % q, unit.y % q)

    def power_is_rational(m):
        acc, base = (1, 0), eps
        while m:
            if m & 1:
                acc = _mul_mod(acc, base, tr, nm, q)
            base = _mul_mod(base, base, tr, nm, q)
            m >>= 1
        return acc[1] == 0

    (p, _), = factorize(q).items()
    n = q // p * (p - kronecker(d_K, p))
    for r in factorize(n):
        while n % r == 0 and power_is_rational(n // r):
            n //= r
    if n > max_power:
        raise BoundExceeded(
            f"unit index {n} of Z + {q}*O_K (d_K={d_K}) exceeds {max_power}",
            bound=max_power)
    return n


def class_number_maximal(d_K: int) -> int:
    if d_K < 0:
        return class_number_definite(d_K)
    return class_numbers_indefinite(d_K)[1]


def class_number_order(o: QuadOrder, max_power: int = DEFAULT_LIMITS.unit_power,
                       h_maximal: int | None = None) -> int:
    """Wide class number of ``o`` from the conductor formula

        h(O_f) = h(O_K) * f * prod_{p | f} (1 - (d_K/p)/p) / [O_K^* : O_f^*].

    ``h_maximal`` may be supplied to skip recomputing h(O_K).
    """
    h_K = class_number_maximal(o.d_K) if h_maximal is None else h_maximal
    if o.f == 1:
        return h_K
    primes = factorize(o.f)
    num = h_K * o.f
    den = 1
    for p in primes:
        num *= p - kronecker(o.d_K, p)
        den *= p
    assert num % den == 0
    num //= den
    u = unit_index(o, max_power)
    if num % u:
        raise AssertionError(f"unit index {u} does not divide {num} for {o}")
    return num // u


def conductor_search(D: int, h_target: int, bound: int = DEFAULT_LIMITS.conductor,
                     max_power: int = DEFAULT_LIMITS.unit_power) -> int:
    """Least ``f'`` in ``[1, bound]`` with h(Z + f'*O_k) = h_target, k = Q(sqrt(D))."""
    if h_target < 1:
        raise ValueError("h_target must be >= 1")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    d_K = order_from_cm_input(D, 1, "real").d_K
    h_K = class_number_maximal(d_K)
    for f in range(1, bound + 1):
        if class_number_order(QuadOrder(d_K, f), max_power, h_maximal=h_K) == h_target:
            return f
    raise SearchExhausted(
        f"no conductor f' <= {bound} gives class number {h_target} in Q(sqrt{D})",
        bound=bound)
