"""Binary quadratic forms ax^2 + bxy + cy^2.

Positive definite forms get full treatment (reduction, composition, class
group structure).  Indefinite forms only need reduced-form cycles, which is
enough to count narrow and wide classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .abelian import AbelianGroupStructure
from .arith import check_discriminant, fundamental_pell, is_square
from .config import DEFAULT_LIMITS
from .errors import BoundExceeded

__all__ = [
    "AbelianGroupStructure",
    "BinaryQuadraticForm",
    "class_group_definite",
    "class_numbers_indefinite",
    "compose",
    "enumerate_reduced",
    "indefinite_cycles",
    "principal_form",
    "reduce_definite",
    "wide_classes_indefinite",
]


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def inverse(self) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


Form = BinaryQuadraticForm


def principal_form(disc: int) -> Form:
    check_discriminant(disc)
    k = disc % 2
    return Form(1, k, (k - disc) // 4)


def _check_definite(f: Form) -> None:
    if f.disc >= 0 or f.a <= 0:
        raise ValueError(f"{f} is not positive definite")
    if not f.is_primitive:
        raise ValueError(f"{f} is not primitive")


def reduce_definite(f: Form) -> Form:
    """The reduced form properly equivalent to a positive definite ``f``.

    Reduced means ``|b| <= a <= c`` with ``b >= 0`` when ``|b| == a`` or
    ``a == c``.
    """
    _check_definite(f)
    a, b, c = f
    while True:
        if not -a < b <= a:
            # translate x -> x + k*y to bring b into (-a, a]
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)


def enumerate_reduced(disc: int) -> list[Form]:
    """All primitive reduced positive definite forms of discriminant ``disc``."""
    if disc >= 0:
        raise ValueError(f"need a negative discriminant, got {disc}")
    check_discriminant(disc)
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % four_a:
                continue
            c = num // four_a
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(Form(a, b, c))
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose(f: Form, g: Form) -> Form:
    """Reduced representative of the Gauss composite of two definite classes."""
    _check_definite(f)
    _check_definite(g)
    disc = f.disc
    if g.disc != disc:
        raise ValueError(f"discriminants differ: {f.disc} vs {g.disc}")
    a1, b1, _ = f
    a2, b2, _ = g
    s = (b1 + b2) // 2
    e1, u, v = _xgcd(a1, a2)
    e, w, x = _xgcd(e1, s)
    # e = (w*u)*a1 + (w*v)*a2 + x*s
    j, k, l = w * u, w * v, x
    a3 = a1 * a2 // (e * e)
    b3 = (j * a1 * b2 + k * a2 * b1 + l * (b1 * b2 + disc) // 2) // e
    b3 %= 2 * a3
    c3 = (b3 * b3 - disc) // (4 * a3)
    return reduce_definite(Form(a3, b3, c3))


def _power(f: Form, n: int) -> Form:
    result = principal_form(f.disc)
    base = f
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def class_group_definite(disc: int, max_class_number: int = DEFAULT_LIMITS.class_number
                         ) -> AbelianGroupStructure:
    """Structure of the form class group of a negative discriminant.

    Builds the Cayley table over the reduced forms, reads off every element
    order from it, and converts the order statistics into invariant factors.
    """
    forms = enumerate_reduced(disc)
    h = len(forms)
    if h > max_class_number:
        raise BoundExceeded(f"class number {h} of {disc} exceeds bound {max_class_number}",
                            bound=max_class_number)
    table = cayley_table(forms)
    index = {f: i for i, f in enumerate(forms)}
    identity = index[principal_form(disc)]
    orders = []
    for i in range(h):
        n, cur = 1, i
        while cur != identity:
            cur = table[cur][i]
            n += 1
        orders.append(n)
    return AbelianGroupStructure.from_element_orders(orders)


def cayley_table(forms: list[Form]) -> list[list[int]]:
    """``table[i][j]`` is the index of ``forms[i] * forms[j]``."""
    index = {f: i for i, f in enumerate(forms)}
    h = len(forms)
    table = [[0] * h for _ in range(h)]
    for i in range(h):
        for j in range(i, h):
            k = index[compose(forms[i], forms[j])]
            table[i][j] = table[j][i] = k
    return table


@lru_cache(maxsize=None)
def class_number_definite(disc: int) -> int:
    return len(enumerate_reduced(disc))


# --------------------------------------------------------------------------
# indefinite forms
# --------------------------------------------------------------------------

def _check_indefinite(disc: int) -> None:
    if disc <= 0 or is_square(disc):
        raise ValueError(f"need a positive non-square discriminant, got {disc}")
    check_discriminant(disc)


def _is_reduced_indefinite(a: int, b: int, disc: int) -> bool:
    # 0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b
    if b <= 0 or b * b >= disc:
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= disc:
        return False
    return t - b < 0 or (t - b) ** 2 < disc


def reduced_indefinite(disc: int) -> list[Form]:
    """All primitive reduced indefinite forms of discriminant ``disc``."""
    _check_indefinite(disc)
    out = []
    r = isqrt(disc)
    for b in range(2 - disc % 2, r + 1, 2):
        n = (disc - b * b) // 4  # a*c = -n
        for a in range(1, r + 1):
            if n % a:
                continue
            for sa in (a, -a):
                if not _is_reduced_indefinite(sa, b, disc):
                    continue
                f = Form(sa, b, -n // sa)
                if f.is_primitive:
                    out.append(f)
    return out


def rho(f: Form) -> Form:
    """Reduction step (a, b, c) -> (c, b', a') with b' = -b mod 2c chosen in
    (sqrt(disc) - 2|c|, sqrt(disc)) when |c| < sqrt(disc), else in (-|c|, |c|]."""
    a, b, c = f
    disc = f.disc
    r = isqrt(disc)
    m = 2 * abs(c)
    if c * c < disc:
        # largest b' <= r with b' = -b mod m; then b' > sqrt(disc) - m holds
        b2 = r - ((r + b) % m)
    else:
        b2 = -b % m
        if b2 > abs(c):
            b2 -= m
    return Form(c, b2, (b2 * b2 - disc) // (4 * c))


def indefinite_cycles(disc: int) -> list[list[Form]]:
    """Partition the reduced forms into rho-cycles; one cycle per narrow class."""
    forms = reduced_indefinite(disc)
    unseen = set(forms)
    cycles = []
    for f in forms:
        if f not in unseen:
            continue
        cycle = [f]
        unseen.discard(f)
        g = rho(f)
        while g != f:
            if g not in unseen:
                raise AssertionError(f"rho left the reduced set at {g}")
            unseen.discard(g)
            cycle.append(g)
            g = rho(g)
        cycles.append(cycle)
    return cycles


def wide_classes_indefinite(disc: int) -> list[list[Form]]:
    """Group narrow cycles into wide classes.

    (a, b, c) and (-a, b, -c) give GL(2, Z)-conjugate multiplication
    matrices, i.e. the same ideal class up to an element of negative norm.
    """
    cycles = indefinite_cycles(disc)
    where = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    merged: list[list[Form]] = []
    taken = set()
    for i, cyc in enumerate(cycles):
        if i in taken:
            continue
        f = cyc[0]
        j = where[Form(-f.a, f.b, -f.c)]
        taken.update((i, j))
        merged.append(cyc if i == j else cyc + cycles[j])
    return merged


def class_numbers_indefinite(disc: int) -> tuple[int, int]:
    """``(h_narrow, h_wide)`` for a positive non-square discriminant.

    ``h_narrow`` counts rho-cycles; ``h_wide`` halves it unless the
    fundamental unit of the order has norm -1.
    """
    _check_indefinite(disc)
    h_narrow = len(indefinite_cycles(disc))
    if fundamental_pell(disc).sign == -4:
        return h_narrow, h_narrow
    if h_narrow % 2:
        raise AssertionError(f"odd narrow class number {h_narrow} with unit of norm +1")
    return h_narrow, h_narrow // 2
