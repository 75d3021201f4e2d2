"""Builders for the concrete coalgebras and algebras used throughout.

Provided here:

* the divided power coalgebra truncation ``make_kn(n)``, with basis
  c_0, ..., c_{n-1}, comultiplication c_k -> sum_{i+j=k} c_i (x) c_j and
  counit eps(c_i) = delta_{0,i};
* exact rational quaternions (``QuatElem``) with the order-3 automorphism
  ``sigma``: 1 -> 1, i -> j, j -> k, k -> i;
* the skew truncation ``make_ore_An(n)`` = D_sigma[X]/(X^n), a 4n-dimensional
  algebra with products (a x^i)(b x^j) = a sigma^i(b) x^{i+j};
* its dual coalgebra two ways: by brute-force transposition
  (``dualize_algebra``) and by the closed comultiplication formula
  (``make_Cn_closed_form``), which agree tensor for tensor;
* a multi-group-like coalgebra for fixtures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coalg.structures import (
    Coalgebra,
    FDAlgebra,
    require_valid_algebra,
)
from .errors import PreconditionError, UnsupportedFieldError
from .exactla import QQ, Field

QUAT_NAMES = ("1", "i", "j", "k")


@dataclass(frozen=True)
class QuatElem:
    """Quaternion a + b*i + c*j + d*k with exact rational coefficients.

    Basis products follow i*j = -j*i = k, j*k = -k*j = i, k*i = -i*k = j and
    i^2 = j^2 = k^2 = -1; nonzero elements are invertible.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a=0, b=0, c=0, d=0) -> "QuatElem":
        return QuatElem(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @staticmethod
    def basis(index: int) -> "QuatElem":
        coeffs = [0, 0, 0, 0]
        coeffs[index] = 1
        return QuatElem.of(*coeffs)

    @property
    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def add(self, other: "QuatElem") -> "QuatElem":
        return QuatElem(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def sub(self, other: "QuatElem") -> "QuatElem":
        return QuatElem(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def neg(self) -> "QuatElem":
        return QuatElem(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s) -> "QuatElem":
        s = Fraction(s)
        return QuatElem(s * self.a, s * self.b, s * self.c, s * self.d)

    def mul(self, other: "QuatElem") -> "QuatElem":
        a1, b1, c1, d1 = self.coeffs
        a2, b2, c2, d2 = other.coeffs
        return QuatElem(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self) -> "QuatElem":
        return QuatElem(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> "QuatElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero quaternion")
        return self.conjugate().scale(Fraction(1) / n)

    def as_signed_basis(self):
        """Return (sign, index) when the element is +-1, +-i, +-j, +-k, else None."""
        nonzero = [(idx, x) for idx, x in enumerate(self.coeffs) if x != 0]
        if len(nonzero) != 1:
            return None
        idx, x = nonzero[0]
        if x == 1:
            return (1, idx)
        if x == -1:
            return (-1, idx)
        return None

    def __str__(self):
        parts = []
        for x, label in zip(self.coeffs, QUAT_NAMES):
            if x != 0:
                parts.append(f"{x}" if label == "1" else f"{x}*{label}")
        return " + ".join(parts) if parts else "0"


QUAT_ONE = QuatElem.basis(0)
QUAT_I = QuatElem.basis(1)
QUAT_J = QuatElem.basis(2)
QUAT_K = QuatElem.basis(3)
QUAT_BASIS = (QUAT_ONE, QUAT_I, QUAT_J, QUAT_K)


def sigma(q: QuatElem) -> QuatElem:
    """Linear extension of 1 -> 1, i -> j, j -> k, k -> i; an automorphism of D."""
    return QuatElem(q.a, q.d, q.b, q.c)


def sigma_power(q: QuatElem, k: int) -> QuatElem:
    for _ in range(k % 3):
        q = sigma(q)
    return q


@dataclass(frozen=True)
class OreBasisIndex:
    """Basis element u * x^power of the skew truncation, with u a quaternion unit."""

    unit_index: int
    power: int

    def flat(self, n: int) -> int:
        if not 0 <= self.power < n:
            raise PreconditionError(f"power {self.power} out of range for truncation {n}")
        return 4 * self.power + self.unit_index

    @property
    def label(self) -> str:
        u = QUAT_NAMES[self.unit_index]
        return u if self.power == 0 else f"{u}x^{self.power}"


def make_kn(n: int, fld: Field = QQ) -> Coalgebra:
    """Divided power coalgebra truncation of dimension n."""
    if n < 1:
        raise PreconditionError("make_kn needs n >= 1")
    zero, one = fld.zero, fld.one
    delta = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(k + 1):
            delta[k][i][k - i] = one
    eps = tuple(one if i == 0 else zero for i in range(n))
    names = tuple(f"c{i}" for i in range(n))
    return Coalgebra(fld, n, tuple(tuple(tuple(r) for r in s) for s in delta), eps, names)


def make_group_likes(n: int, fld: Field = QQ) -> Coalgebra:
    """Direct sum of n group-like points: delta(g_i) = g_i (x) g_i, eps = 1."""
    if n < 1:
        raise PreconditionError("make_group_likes needs n >= 1")
    zero, one = fld.zero, fld.one
    delta = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        delta[i][i][i] = one
    eps = tuple(one for _ in range(n))
    names = tuple(f"g{i}" for i in range(n))
    return Coalgebra(fld, n, tuple(tuple(tuple(r) for r in s) for s in delta), eps, names)


def make_quaternion_algebra() -> FDAlgebra:
    """The rational quaternions D as a 4-dimensional algebra over Q."""
    mult = [[[Fraction(0)] * 4 for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for j in range(4):
            prod = QUAT_BASIS[i].mul(QUAT_BASIS[j])
            for k, coeff in enumerate(prod.coeffs):
                mult[i][j][k] = coeff
    unit = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    return FDAlgebra(QQ, 4, tuple(tuple(tuple(r) for r in s) for s in mult), unit, QUAT_NAMES)


def make_ore_An(n: int) -> FDAlgebra:
    """Skew truncation D_sigma[X]/(X^n) over Q, dimension 4n.

    Basis elements u x^l are ordered by power, then by 1, i, j, k; products
    follow (a x^i)(b x^j) = a sigma^i(b) x^{i+j}, truncated at x^n.
    """
    if n < 1:
        raise PreconditionError("make_ore_An needs n >= 1")
    dim = 4 * n
    zero = Fraction(0)
    mult = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for li in range(n):
        for ui in range(4):
            a = QUAT_BASIS[ui]
            row = 4 * li + ui
            for lj in range(n):
                if li + lj >= n:
                    continue
                for uj in range(4):
                    b = QUAT_BASIS[uj]
                    prod = a.mul(sigma_power(b, li))
                    col = 4 * lj + uj
                    out_base = 4 * (li + lj)
                    for k, coeff in enumerate(prod.coeffs):
                        if coeff != 0:
                            mult[row][col][out_base + k] = coeff
    unit = tuple(Fraction(1) if i == 0 else zero for i in range(dim))
    names = tuple(OreBasisIndex(u, l).label for l in range(n) for u in range(4))
    return FDAlgebra(QQ, dim, tuple(tuple(tuple(r) for r in s) for s in mult), unit, names)


def dualize_algebra(a: FDAlgebra) -> Coalgebra:
    """Coalgebra dual to an algebra, by transposing the structure constants.

    The comultiplication coefficient of E_j (x) E_k in delta(E_i) is the
    coefficient of b_i in b_j * b_k, and the counit reads off the unit
    coordinates.  Refuses algebras that fail validation.
    """
    require_valid_algebra(a)
    n = a.dim
    delta = tuple(
        tuple(tuple(a.mult[j][k][i] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    names = None
    if a.basis_names:
        names = tuple(f"{x}*" for x in a.basis_names)
    return Coalgebra(a.field, n, delta, a.unit, names)


def make_Cn_closed_form(n: int) -> Coalgebra:
    """Dual coalgebra of the skew truncation, built from the closed formula.

    On the dual basis E_p^c (0 <= p < n, c among 1, i, j, k) the
    comultiplication of E_p^c collects E_i^a (x) E_j^b over all splits
    i + j = p and unit pairs with a sigma^i(b) = +-c, with coefficient the
    ratio of a sigma^i(b) to c (always +-1); the counit is 1 exactly on
    E_0^1.
    """
    if n < 1:
        raise PreconditionError("make_Cn_closed_form needs n >= 1")
    dim = 4 * n
    zero, one = Fraction(0), Fraction(1)
    delta = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for p in range(n):
        for ci in range(4):
            row = 4 * p + ci
            c_inv = QUAT_BASIS[ci].inverse()
            for i in range(p + 1):
                j = p - i
                for ai in range(4):
                    for bi in range(4):
                        prod = QUAT_BASIS[ai].mul(sigma_power(QUAT_BASIS[bi], i))
                        signed = prod.as_signed_basis()
                        if signed is None or signed[1] != ci:
                            continue
                        ratio = c_inv.mul(prod)
                        coeff = ratio.a
                        delta[row][4 * i + ai][4 * j + bi] = coeff
    eps = tuple(one if idx == 0 else zero for idx in range(dim))
    names = tuple(
        f"E{p}^{QUAT_NAMES[ci]}" for p in range(n) for ci in range(4)
    )
    return Coalgebra(QQ, dim, tuple(tuple(tuple(r) for r in s) for s in delta), eps, names)


def construct(kind: str, n: int, fld: Field = QQ) -> Coalgebra:
    """Dispatch for the construct command: kn, quat-cn, or group-likes."""
    if kind == "kn":
        return make_kn(n, fld)
    if kind == "group-likes":
        return make_group_likes(n, fld)
    if kind == "quat-cn":
        if not fld.is_rationals:
            raise UnsupportedFieldError(
                "the quaternion family is only constructed over Q, where D is a division algebra")
        return make_Cn_closed_form(n)
    raise PreconditionError(f"unknown construction kind {kind!r}")
