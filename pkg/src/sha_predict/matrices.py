"""Small square integer matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                               for r in self.rows))

    @property
    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    @property
    def det(self) -> int:
        # leading coefficient convention: det = (-1)^n * charpoly[-1]
        return (-1) ** self.n * self.charpoly()[-1]

    def charpoly(self) -> tuple[int, ...]:
        """Coefficients of det(xI - M), highest degree first (leading 1).

        Faddeev-LeVerrier recursion in exact rationals.
        """
        n = self.n
        A = [[Fraction(x) for x in r] for r in self.rows]
        coeffs = [Fraction(1)]
        M = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            # M_k = A @ M_{k-1} + c_{k-1} I
            AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
                  for i in range(n)]
            for i in range(n):
                AM[i][i] += coeffs[-1]
            M = AM
            AM2 = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
                   for i in range(n)]
            coeffs.append(-sum(AM2[i][i] for i in range(n)) / k)
        assert all(c.denominator == 1 for c in coeffs)
        return tuple(int(c) for c in coeffs)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(tuple(tuple(r) for r in m))
