"""Latimer-MacDuffee for quadratic characteristic polynomials.

GL(2, Z)-similarity classes of integer matrices with a fixed irreducible
characteristic polynomial x^2 + c1*x + c0 correspond to classes of
Z[lambda]-modules in Q(lambda).  For an ideal with basis (w1, w2), the
matrix of multiplication by lambda in that basis represents its class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import QuadIrrational, is_square
from .matrices import IntMatrix, as_matrix
from .orders import split_discriminant
from .qforms import BinaryQuadraticForm, enumerate_reduced, wide_classes_indefinite

__all__ = [
    "IntMatrix",
    "MonicIntPolynomial",
    "dominant_eigenvalue",
    "ideal_class_matrices",
    "matrices_with_charpoly",
    "module_matrix",
    "perron_residual",
    "perron_vector_lattice",
    "similar_over_Z",
    "similarity_partition",
]


@dataclass(frozen=True)
class MonicIntPolynomial:
    """x^2 + c1*x + c0 with non-square discriminant."""

    c1: int
    c0: int

    def __post_init__(self):
        if is_square(self.disc):
            raise ValueError(f"{self} is reducible over Q")

    @property
    def disc(self) -> int:
        return self.c1 * self.c1 - 4 * self.c0

    @classmethod
    def for_discriminant(cls, disc: int) -> "MonicIntPolynomial":
        """The polynomial whose root generates the order of discriminant ``disc``."""
        c1 = -(disc % 2)
        return cls(c1, (c1 * c1 - disc) // 4)

    @classmethod
    def parse(cls, text: str) -> "MonicIntPolynomial":
        """Read ``x^2 + c1*x + c0`` written like ``"x^2-x-1"`` or ``"x**2 - 10"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        coeffs: dict[int, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = re.fullmatch(r"(\d*)\*?x(?:\^(\d+))?|(\d+)", body)
            if m is None:
                raise ValueError(f"cannot parse term {sign}{body!r} in {text!r}")
            if m.group(3) is not None:
                deg, c = 0, int(m.group(3))
            else:
                deg = int(m.group(2) or 1)
                c = int(m.group(1) or 1)
            coeffs[deg] = coeffs.get(deg, 0) + (c if sign == "+" else -c)
        if max(coeffs) != 2 or any(d > 2 for d in coeffs):
            raise ValueError(f"only degree-2 polynomials are supported, got {text!r}")
        if coeffs[2] != 1:
            raise ValueError(f"polynomial must be monic, got {text!r}")
        return cls(coeffs.get(1, 0), coeffs.get(0, 0))

    def __call__(self, x):
        return x * x + self.c1 * x + self.c0

    def __str__(self):
        def term(c, mono):
            if c == 0:
                return ""
            sign = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 and mono else str(abs(c))
            return f"{sign}{mag}{mono}"
        return "x^2" + term(self.c1, "x") + term(self.c0, "")


def _as_poly(f) -> MonicIntPolynomial:
    if isinstance(f, MonicIntPolynomial):
        return f
    if isinstance(f, str):
        return MonicIntPolynomial.parse(f)
    c1, c0 = f
    return MonicIntPolynomial(c1, c0)


def module_matrix(form: BinaryQuadraticForm, poly: MonicIntPolynomial, s: int = 1) -> IntMatrix:
    """Matrix of lambda on the basis (a, (-b + sqrt(disc(form)))/2).

    ``lambda = (-c1 + s*sqrt(disc(form)))/2`` is the root of ``poly``, so
    ``disc(poly) = s^2 * disc(form)``.  Rows are images: lambda*w_i = sum_j M_ij w_j.
    """
    a, b, c = form
    if s * s * form.disc != poly.disc:
        raise ValueError(f"disc {poly.disc} is not {s}^2 * {form.disc}")
    r = (s * b - poly.c1) // 2
    return IntMatrix(((r, s * a), (-s * c, r - s * b)))


def _class_forms(disc: int) -> list[BinaryQuadraticForm]:
    if disc < 0:
        return enumerate_reduced(disc)
    return [cls[0] for cls in wide_classes_indefinite(disc)]


def ideal_class_matrices(f, include_overorders: bool = False) -> list[IntMatrix]:
    """One matrix with characteristic polynomial ``f`` per ideal class of Z[lambda].

    With ``include_overorders`` the list also covers modules whose multiplier
    ring is a larger order (non-invertible Z[lambda]-ideals); together these
    exhaust the GL(2, Z)-similarity classes.  For maximal Z[lambda] the two
    lists coincide.
    """
    poly = _as_poly(f)
    d_K, F = split_discriminant(poly.disc)
    conductors = [g for g in range(1, F + 1) if F % g == 0] if include_overorders else [F]
    out = []
    for g in sorted(conductors, reverse=True):
        s = F // g
        for form in _class_forms(g * g * d_K):
            m = module_matrix(form, poly, s)
            assert m.trace == -poly.c1 and m.det == poly.c0
            out.append(m)
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (pivot rows, pivot columns, free columns)."""
    A = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                fac = A[i][col]
                A[i] = [x - fac * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    return A[:r], pivots, free


def _search_order(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def similar_over_Z(A, B, bound: int) -> IntMatrix | None:
    """Search for U with entries in [-bound, bound], det U = +-1 and U A = B U.

    The equation is linear in U, so its rational solution space is computed
    first and every integer point of it inside the box is visited through
    the free coordinates.  ``None`` means only "nothing within bound".
    """
    A, B = as_matrix(A), as_matrix(B)
    n = A.n
    if B.n != n:
        raise ValueError("matrices differ in size")
    if A == B:
        return IntMatrix.identity(n)
    # unknown U[i][k] sits at index i*n + k; equation (i, j): sum_k U_ik A_kj - B_ik U_kj
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[i * n + k] += A[k, j]
                row[k * n + j] -= B[i, k]
            eqs.append(row)
    rref, pivots, free = _nullspace(eqs, n * n)
    if not free:
        return None
    values = list(_search_order(bound))
    for choice in product(values, repeat=len(free)):
        u = [Fraction(0)] * (n * n)
        for c, v in zip(free, choice):
            u[c] = Fraction(v)
        ok = True
        for row, pc in zip(rref, pivots):
            val = -sum(row[c] * u[c] for c in free)
            if val.denominator != 1 or abs(val) > bound:
                ok = False
                break
            u[pc] = val
        if not ok:
            continue
        U = IntMatrix(tuple(tuple(int(u[i * n + k]) for k in range(n)) for i in range(n)))
        if abs(U.det) == 1:
            return U
    return None


def matrices_with_charpoly(f, entry_bound: int) -> list[IntMatrix]:
    """Every 2x2 integer matrix with entries in [-entry_bound, entry_bound] and
    characteristic polynomial ``f``."""
    poly = _as_poly(f)
    out = []
    for p in range(-entry_bound, entry_bound + 1):
        s = -poly.c1 - p
        if abs(s) > entry_bound:
            continue
        qr = p * s - poly.c0
        for q in range(-entry_bound, entry_bound + 1):
            if q == 0 or qr % q:
                continue
            r = qr // q
            if abs(r) <= entry_bound:
                out.append(IntMatrix(((p, q), (r, s))))
    return out


def similarity_partition(mats, conj_bound: int) -> list[list[IntMatrix]]:
    """Group matrices into cells, joining two when a conjugator within
    ``conj_bound`` links one to a cell's first member."""
    cells: list[list[IntMatrix]] = []
    for m in mats:
        for cell in cells:
            if similar_over_Z(cell[0], m, conj_bound) is not None:
                cell.append(m)
                break
        else:
            cells.append([m])
    return cells


# --------------------------------------------------------------------------
# Perron-Frobenius data
# --------------------------------------------------------------------------

def _check_perron(B: IntMatrix) -> None:
    if B.n != 2:
        raise ValueError("only 2x2 matrices are supported")
    if any(x < 0 for r in B for x in r):
        raise ValueError(f"{B} has negative entries")
    if B[0, 1] == 0 or B[1, 0] == 0:
        raise ValueError(f"{B} is reducible; no Perron-Frobenius eigenvector")
    disc = B.trace ** 2 - 4 * B.det
    if is_square(disc):
        raise ValueError(f"{B} has rational eigenvalues")


def dominant_eigenvalue(B) -> QuadIrrational:
    B = as_matrix(B)
    _check_perron(B)
    return QuadIrrational(B.trace, 1, 2, B.trace ** 2 - 4 * B.det)


def perron_vector_lattice(B) -> tuple[QuadIrrational, tuple[int, QuadIrrational]]:
    """``theta`` with ``(1, theta)`` the Perron-Frobenius eigenvector of ``B``,
    and the lattice basis ``(1, theta)`` of Z + Z*theta.

    >>> theta, _ = perron_vector_lattice([[1, 1], [1, 0]])
    >>> print(theta)
    (-1+sqrt5)/2
    """
    B = as_matrix(B)
    _check_perron(B)
    (b11, b12), (b21, b22) = B.rows
    disc = (b11 - b22) ** 2 + 4 * b12 * b21
    theta = QuadIrrational(b22 - b11, 1, 2 * b12, disc)
    return theta, (1, theta)


def perron_residual(B, theta):
    """``B (1, theta)^T - lambda (1, theta)^T``; zero in both slots when exact."""
    B = as_matrix(B)
    lam = dominant_eigenvalue(B)
    (b11, b12), (b21, b22) = B.rows
    return (b11 + b12 * theta - lam, b21 + b22 * theta - lam * theta)
