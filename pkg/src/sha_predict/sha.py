"""Predicted Shafarevich-Tate groups from class groups.

Two assembly rules live here:

* ``general``: with Cl = Z/2^k + Cl_odd, Sha = Cl + Cl when k is even and
  Z/2^k + Cl_odd + Cl_odd when k is odd.
* ``cm``: for a CM elliptic curve with CM order R, Sha = Cl(R) + Cl(R).

plus the local matrices L_v and Fr_v and the sign-flip map between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .abelian import AbelianGroupStructure
from .arith import is_prime
from .config import DEFAULT_LIMITS, Limits
from .errors import DecompositionError, SearchExhausted
from .matrices import IntMatrix, as_matrix
from .orders import (QuadOrder, class_number_order, conductor_search,
                     order_from_cm_input)
from .qforms import class_group_definite

__all__ = [
    "CMCurveReport",
    "ShaPrediction",
    "companion_Fr",
    "companion_L",
    "declared_charpoly",
    "functor_map",
    "functor_map_inverse",
    "sha_cm_curve",
    "sha_from_class_group",
    "two_adic_valuation",
]


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0) is undefined")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class ShaPrediction:
    input_class_group: AbelianGroupStructure
    k: int
    parity: Literal["even", "odd"]
    result: AbelianGroupStructure
    rule: Literal["general", "cm"] = "general"

    @property
    def order(self) -> int:
        return self.result.order


def sha_from_class_group(G: AbelianGroupStructure) -> ShaPrediction:
    """Assemble Sha from a class group whose 2-part is cyclic.

    >>> sha_from_class_group(AbelianGroupStructure((3,))).result
    AbelianGroupStructure(elementary_divisors=(3, 3))
    """
    two_part = G.primary_part(2)
    if two_part.rank > 1:
        raise DecompositionError(
            f"class group {G} has non-cyclic 2-part {two_part}; "
            "Z/2^k + odd part decomposition does not apply")
    k = two_adic_valuation(G.order)
    if k % 2 == 0:
        return ShaPrediction(G, k, "even", G + G)
    odd = G.odd_part()
    twos = AbelianGroupStructure.from_cyclic_orders([2**k])
    return ShaPrediction(G, k, "odd", twos + odd + odd)


@dataclass(frozen=True)
class CMCurveReport:
    D: int
    f: int
    R: QuadOrder
    cl_R: AbelianGroupStructure
    f_prime: int | None
    Lambda: QuadOrder | None
    h_Lambda: int | None
    sha: ShaPrediction
    warnings: tuple[str, ...] = field(default=())


def sha_cm_curve(D: int, f: int = 1, *, limits: Limits = DEFAULT_LIMITS,
                 conductor_bound: int | None = None,
                 require_lambda: bool = True) -> CMCurveReport:
    """Run the CM pipeline for R = Z + f*O_K, K = Q(sqrt(-D)).

    Cl(R) comes from the definite form class group; Lambda = Z + f'*O_k with
    k = Q(sqrt(D)) and f' the least conductor whose class number equals
    |Cl(R)|.  Sha is Cl(R) + Cl(R).

    When no f' exists within the bound, ``SearchExhausted`` propagates unless
    ``require_lambda`` is false, in which case Lambda is left empty and a
    warning is recorded.
    """
    R = order_from_cm_input(D, f, "imaginary")
    cl_R = class_group_definite(R.disc, limits.class_number)
    h = cl_R.order
    warnings = []
    bound = limits.conductor if conductor_bound is None else conductor_bound
    try:
        f_prime = conductor_search(D, h, bound, limits.unit_power)
    except SearchExhausted as exc:
        if require_lambda:
            raise
        warnings.append(str(exc))
        f_prime = lam = h_lam = None
    else:
        lam = order_from_cm_input(D, f_prime, "real")
        h_lam = class_number_order(lam, limits.unit_power)
        assert h_lam == h
    k = two_adic_valuation(h)
    sha = ShaPrediction(cl_R, k, "even" if k % 2 == 0 else "odd", cl_R + cl_R, "cm")
    if k % 2:
        try:
            thm = sha_from_class_group(cl_R)
            warnings.append(
                f"v2(|Cl(R)|) = {k} is odd: the general assembly rule would give "
                f"{thm.result} (order {thm.order}) instead of Cl(R) + Cl(R)")
        except DecompositionError as exc:
            warnings.append(str(exc))
    return CMCurveReport(D, f, R, cl_R, f_prime, lam, h_lam, sha, tuple(warnings))


# --------------------------------------------------------------------------
# L_v and Fr_v
# --------------------------------------------------------------------------

def _first_column_matrix(col) -> IntMatrix:
    n = len(col)
    rows = []
    for i, c in enumerate(col):
        rows.append(tuple(c if j == 0 else int(j == i + 1) for j in range(n)))
    return IntMatrix(tuple(rows))


def _check_inputs(a, p):
    a = [int(x) for x in a]
    if len(a) % 2 == 0:
        raise ValueError(f"need 2n-1 coefficients, got {len(a)}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return a


def companion_L(a, p: int) -> IntMatrix:
    """First column (a1, ..., a_{2n-1}, p), ones on the superdiagonal.

    >>> print(companion_L([1], 2))
    [[1, 1], [2, 0]]
    """
    a = _check_inputs(a, p)
    return _first_column_matrix(a + [p])


def companion_Fr(a, p: int, hasse: bool = False) -> IntMatrix:
    """First column (a1, -a2, a3, ..., a_{2n-1}, -p), ones on the superdiagonal.

    With ``hasse`` set, a 2x2 input must satisfy |a1| <= 2*sqrt(p).
    """
    a = _check_inputs(a, p)
    if hasse and len(a) == 1 and a[0] * a[0] > 4 * p:
        raise ValueError(f"|a1| = {abs(a[0])} violates the Hasse bound 2*sqrt({p})")
    return _first_column_matrix(_alternate(a + [p]))


def _alternate(col):
    return [c if i % 2 == 0 else -c for i, c in enumerate(col)]


def declared_charpoly(a, p: int, kind: Literal["L", "Fr"]) -> tuple[int, ...]:
    """Coefficients of det(xI - M), highest first, as the matrix layout dictates.

    L:  x^2n - a1 x^(2n-1) - a2 x^(2n-2) - ... - a_{2n-1} x - p
    Fr: x^2n - a1 x^(2n-1) + a2 x^(2n-2) - ... - a_{2n-1} x + p
    """
    col = list(a) + [p]
    if kind == "L":
        return (1, *(-c for c in col))
    if kind == "Fr":
        return (1, *((-1) ** i * c for i, c in enumerate(col, start=1)))
    raise ValueError(f"kind must be 'L' or 'Fr', got {kind!r}")


def _split_companion(M: IntMatrix, last_sign: int) -> list[int]:
    n = M.n
    if n % 2:
        raise ValueError(f"expected an even-dimensional matrix, got {n}x{n}")
    for i in range(n):
        for j in range(1, n):
            want = int(j == i + 1)
            if M[i, j] != want:
                raise ValueError(f"entry ({i},{j}) is {M[i, j]}, expected {want}")
    col = [M[i, 0] for i in range(n)]
    if not is_prime(last_sign * col[-1]):
        raise ValueError(f"last first-column entry {col[-1]} is not {'-' if last_sign < 0 else ''}p")
    return col


def functor_map(Fr) -> IntMatrix:
    """Fr_v -> L_v: undo the alternating signs down the first column."""
    col = _split_companion(as_matrix(Fr), -1)
    return _first_column_matrix(_alternate(col))


def functor_map_inverse(L) -> IntMatrix:
    """L_v -> Fr_v."""
    col = _split_companion(as_matrix(L), +1)
    return _first_column_matrix(_alternate(col))
