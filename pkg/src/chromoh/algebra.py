"""The three two-dimensional algebras on the basis {1, x}.

``A = Q[x]/(x^2)`` drives the chromatic differential ``d``, the non-unital
``B`` (only ``x*x = 1``) drives ``Phi``, and ``C = Q[x]/(x^2 - 1)`` drives
``Phi + d``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

ONE = 0
X = 1


class AlgebraKind(enum.Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def unital(self) -> bool:
        return self is not AlgebraKind.B

    @property
    def keeps_non_merging(self) -> bool:
        # An edge inside one component acts as the identity for A and C and
        # as zero for B, which is what makes (Phi + d) - d equal Phi.
        return self is not AlgebraKind.B


# product of basis elements as a coefficient vector (coef of 1, coef of x)
_TABLES: dict[AlgebraKind, dict[tuple[int, int], tuple[int, int]]] = {
    AlgebraKind.A: {
        (ONE, ONE): (1, 0),
        (ONE, X): (0, 1),
        (X, ONE): (0, 1),
        (X, X): (0, 0),
    },
    AlgebraKind.B: {
        (ONE, ONE): (0, 0),
        (ONE, X): (0, 0),
        (X, ONE): (0, 0),
        (X, X): (1, 0),
    },
    AlgebraKind.C: {
        (ONE, ONE): (1, 0),
        (ONE, X): (0, 1),
        (X, ONE): (0, 1),
        (X, X): (1, 0),
    },
}


def basis_product(kind: AlgebraKind, a: int, b: int) -> tuple[int, int]:
    """Product of two basis elements (``ONE`` or ``X``) as ``(c_1, c_x)``."""
    return _TABLES[kind][(a, b)]


@dataclass(frozen=True)
class AlgElem:
    """The element ``one * 1 + x * x`` with exact rational coefficients."""

    one: Fraction = Fraction(0)
    x: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "one", Fraction(self.one))
        object.__setattr__(self, "x", Fraction(self.x))

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.one + other.one, self.x + other.x)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.one - other.one, self.x - other.x)

    def __neg__(self) -> "AlgElem":
        return AlgElem(-self.one, -self.x)

    def scale(self, c) -> "AlgElem":
        return AlgElem(self.one * c, self.x * c)

    def coefficient(self, basis: int) -> Fraction:
        return self.one if basis == ONE else self.x

    def is_zero(self) -> bool:
        return self.one == 0 and self.x == 0


UNIT = AlgElem(1, 0)
XELEM = AlgElem(0, 1)
# idempotent-type basis of C: a0 * a0 = a0, a1 * a1 = -a1, a0 * a1 = 0
A0 = AlgElem(Fraction(1, 2), Fraction(1, 2))
A1 = AlgElem(Fraction(-1, 2), Fraction(1, 2))


def mult(kind: AlgebraKind, a: AlgElem, b: AlgElem) -> AlgElem:
    """Bilinear product in the algebra ``kind``."""
    one = Fraction(0)
    x = Fraction(0)
    for p in (ONE, X):
        cp = a.coefficient(p)
        if not cp:
            continue
        for q in (ONE, X):
            cq = b.coefficient(q)
            if not cq:
                continue
            r1, rx = basis_product(kind, p, q)
            one += cp * cq * r1
            x += cp * cq * rx
    return AlgElem(one, x)
