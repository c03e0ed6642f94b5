"""Finite abelian groups in invariant-factor form."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import prod

from .arith import factorize


def _prime_powers(divisors) -> dict[int, list[int]]:
    """Group the prime-power parts of a list of cyclic orders by prime."""
    out: dict[int, list[int]] = {}
    for d in divisors:
        for p, e in factorize(d).items():
            out.setdefault(p, []).append(e)
    return out


def _chain_from_prime_powers(pp: dict[int, list[int]]) -> tuple[int, ...]:
    length = max((len(v) for v in pp.values()), default=0)
    chain = [1] * length
    for p, exps in pp.items():
        # largest exponent goes into the last invariant factor
        for i, e in enumerate(sorted(exps, reverse=True)):
            chain[length - 1 - i] *= p**e
    return tuple(d for d in chain if d > 1)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Z/d1 + Z/d2 + ... with d1 | d2 | ... and every d_i >= 2.

    The empty tuple is the trivial group.  Use :meth:`from_cyclic_orders` to
    normalize an arbitrary list of cyclic factors.
    """

    elementary_divisors: tuple[int, ...] = ()

    def __post_init__(self):
        ds = tuple(int(d) for d in self.elementary_divisors)
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2: {ds}")
        if any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"not a divisor chain: {ds}")
        object.__setattr__(self, "elementary_divisors", ds)

    @classmethod
    def from_cyclic_orders(cls, orders) -> "AbelianGroupStructure":
        return cls(_chain_from_prime_powers(_prime_powers(o for o in orders if o > 1)))

    @classmethod
    def from_element_orders(cls, element_orders) -> "AbelianGroupStructure":
        """Recover the structure from the multiset of element orders.

        For each prime p, the number of elements killed by p^i is
        p^(sum_j min(i, e_j)), so successive ratios count the cyclic factors
        of order at least p^i.
        """
        element_orders = list(element_orders)
        n = len(element_orders)
        counts = Counter(element_orders)
        pp: dict[int, list[int]] = {}
        for p, top in factorize(n).items() if n > 1 else ():
            killed = []
            for i in range(top + 1):
                q = p**i
                killed.append(sum(c for o, c in counts.items() if q % o == 0))
            # factors of order >= p^i: log_p(killed[i] / killed[i-1])
            at_least = []
            for i in range(1, top + 1):
                ratio = killed[i] // killed[i - 1]
                at_least.append(_log(ratio, p))
            exps = []
            for i in range(1, top + 1):
                nxt = at_least[i] if i < top else 0
                exps += [i] * (at_least[i - 1] - nxt)
            pp[p] = exps
        g = cls(_chain_from_prime_powers(pp))
        if g.order != n:
            raise ValueError("element orders do not describe an abelian group")
        return g

    @property
    def order(self) -> int:
        return prod(self.elementary_divisors)

    @property
    def rank(self) -> int:
        return len(self.elementary_divisors)

    @property
    def is_trivial(self) -> bool:
        return not self.elementary_divisors

    def primary_part(self, p: int) -> "AbelianGroupStructure":
        parts = []
        for d in self.elementary_divisors:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            parts.append(q)
        return AbelianGroupStructure.from_cyclic_orders(parts)

    def odd_part(self) -> "AbelianGroupStructure":
        parts = []
        for d in self.elementary_divisors:
            while d % 2 == 0:
                d //= 2
            parts.append(d)
        return AbelianGroupStructure.from_cyclic_orders(parts)

    def __add__(self, other: "AbelianGroupStructure") -> "AbelianGroupStructure":
        if not isinstance(other, AbelianGroupStructure):
            return NotImplemented
        return AbelianGroupStructure.from_cyclic_orders(
            self.elementary_divisors + other.elementary_divisors)

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in self.elementary_divisors)


def _log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise ValueError("element orders do not describe an abelian group")
        n //= p
        e += 1
    return e
