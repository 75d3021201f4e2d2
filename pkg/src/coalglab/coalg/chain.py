"""Simplicity testing, subcomodule enumeration, and the chain decision.

Over GF(p) with p^dim within budget, simplicity is decided exactly by
spinning every nonzero vector.  Over the rationals (or large finite fields)
a Norton-style test is used: pick a random element of the acting algebra,
split off an irreducible factor of its characteristic polynomial, and spin
null vectors of the factor image in the module and in its transpose.  When
the factor's nullity equals its degree the verdict is certified either way;
otherwise the result of the seeded trials is reported with certified=False.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from ..errors import BudgetExceededError, PreconditionError, UnsupportedFieldError
from ..exactla import Field, Matrix, Subspace, left_kernel, perp, subspace_sum
from .filtration import FiltrationReport, coradical_filtration
from .structures import (
    Coalgebra,
    Comodule,
    quotient_comodule,
    regular_comodule,
    sub_comodule,
)

DEFAULT_ENUMERATION_BUDGET = 3 ** 8


def spin(m: Comodule, vector, mats=None) -> Subspace:
    """Smallest subspace containing ``vector`` stable under the dual action."""
    if mats is None:
        mats = m.basis_action_matrices()
    f = m.coalgebra.field
    span = Subspace.from_vectors(f, m.dim, [vector])
    queue = list(span.basis.entries)
    while queue:
        v = queue.pop()
        for mat in mats:
            w = mat.apply_row(v)
            if not span.contains_vector(w):
                span = subspace_sum(span, Subspace.from_vectors(f, m.dim, [w]))
                queue.append(w)
    return span


def is_subcomodule(m: Comodule, s: Subspace, mats=None) -> bool:
    if mats is None:
        mats = m.basis_action_matrices()
    return all(
        s.contains_vector(mat.apply_row(v))
        for v in s.basis.entries
        for mat in mats
    )


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    certified: bool
    witness: Optional[Subspace]
    method: str
    seed: Optional[int] = None
    trials_used: int = 0

    def __bool__(self):
        return self.simple


def _all_vectors(p: int, dim: int):
    return itertools.product(range(p), repeat=dim)


def _exhaustive_simplicity(m: Comodule) -> SimplicityReport:
    mats = m.basis_action_matrices()
    for vec in _all_vectors(m.coalgebra.field.p, m.dim):
        if all(x == 0 for x in vec):
            continue
        span = spin(m, vec, mats)
        if span.dim < m.dim:
            return SimplicityReport(False, True, span, "exhaustive-spin")
    return SimplicityReport(True, True, None, "exhaustive-spin")


def _charpoly_factors(theta: Matrix):
    """Irreducible factors of the characteristic polynomial, smallest degree first."""
    f = theta.field
    x = sympy.Symbol("x")
    if f.is_rationals:
        entries = [[sympy.Rational(a.numerator, a.denominator) for a in row] for row in theta.entries]
        poly = sympy.Matrix(entries).charpoly(x)
        factors = sympy.Poly(poly.as_expr(), x, domain="QQ").factor_list()[1]
    else:
        entries = [[int(a) for a in row] for row in theta.entries]
        poly = sympy.Matrix(entries).charpoly(x)
        factors = sympy.Poly(poly.as_expr(), x, modulus=f.p).factor_list()[1]
    out = []
    for fac, _mult in factors:
        coeffs = fac.all_coeffs()
        if f.is_rationals:
            converted = [Fraction(int(c.p), int(c.q)) if hasattr(c, "q") else Fraction(int(c)) for c in coeffs]
        else:
            converted = [f.of(int(c)) for c in coeffs]
        out.append(tuple(converted))
    out.sort(key=len)
    return out


def _evaluate_poly(theta: Matrix, coeffs) -> Matrix:
    f = theta.field
    result = Matrix.zeros(f, theta.rows, theta.cols)
    for c in coeffs:
        result = result.matmul(theta)
        if c != 0:
            result = result.add(Matrix.identity(f, theta.rows).scale(c))
    return result


def _random_algebra_element(rng, mats, f: Field) -> Matrix:
    n = mats[0].rows
    theta = Matrix.zeros(f, n, n)
    for mat in mats:
        c = rng.randint(-3, 3) if f.is_rationals else rng.randrange(f.p)
        if c != 0:
            theta = theta.add(mat.scale(f.of(c)))
    if len(mats) >= 2 and rng.random() < 0.5:
        a, b = rng.sample(range(len(mats)), 2)
        theta = theta.add(mats[a].matmul(mats[b]))
    return theta


def _norton_simplicity(m: Comodule, seed: int, trials: int) -> SimplicityReport:
    f = m.coalgebra.field
    mats = m.basis_action_matrices()
    transposed = tuple(mat.transpose() for mat in mats)
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        # Cheap reducibility probe: a random vector spinning to a proper
        # subspace certifies a proper subcomodule.
        probe = tuple(f.of(rng.randint(-3, 3)) if f.is_rationals else f.of(rng.randrange(f.p))
                      for _ in range(m.dim))
        if any(x != 0 for x in probe):
            span = spin(m, probe, mats)
            if span.dim < m.dim:
                return SimplicityReport(False, True, span, "norton", seed, trial)
        theta = _random_algebra_element(rng, mats, f)
        if theta.is_zero():
            continue
        for coeffs in _charpoly_factors(theta):
            image = _evaluate_poly(theta, coeffs)
            null = left_kernel(image)
            if null.is_zero():
                continue
            for v in null.basis.entries:
                span = spin(m, v, mats)
                if span.dim < m.dim:
                    return SimplicityReport(False, True, span, "norton", seed, trial)
            tnull = left_kernel(image.transpose())
            for w in tnull.basis.entries:
                tspan = spin(m, w, transposed)
                if tspan.dim < m.dim:
                    # The annihilator of a proper transpose subcomodule is a
                    # proper nonzero subcomodule of m.
                    return SimplicityReport(False, True, perp(tspan), "norton", seed, trial)
            if null.dim == len(coeffs) - 1:
                # Nullity equals the factor degree: the null space is an
                # irreducible module for the chosen element, so the spins
                # above certify simplicity.
                return SimplicityReport(True, True, None, "norton", seed, trial)
    return SimplicityReport(True, False, None, "norton", seed, trials)


def is_simple_comodule(
    m: Comodule,
    seed: int = 0,
    trials: int = 12,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> SimplicityReport:
    """Decide whether a comodule has no proper nonzero subcomodule.

    Exact over finite fields within the enumeration budget; Norton-style with
    a certified flag otherwise.  One-dimensional comodules are simple.
    """
    if m.dim == 0:
        raise PreconditionError("the zero comodule is not an input to simplicity testing")
    if m.dim == 1:
        return SimplicityReport(True, True, None, "dimension-one")
    f = m.coalgebra.field
    if not f.is_rationals and f.p ** m.dim <= budget:
        return _exhaustive_simplicity(m)
    return _norton_simplicity(m, seed, trials)


def enumerate_subcomodules(m: Comodule, budget: int = DEFAULT_ENUMERATION_BUDGET) -> tuple:
    """Complete subcomodule lattice over a small finite field.

    Spins every vector and closes the resulting cyclic subcomodules under
    sums; sorted by dimension.  Requires GF(p) with p^dim within budget.
    """
    f = m.coalgebra.field
    if f.is_rationals:
        raise UnsupportedFieldError("subcomodule enumeration needs a finite field")
    if f.p ** m.dim > budget:
        raise BudgetExceededError(
            f"{f.p}^{m.dim} vectors exceed the enumeration budget {budget}")
    mats = m.basis_action_matrices()
    zero = Subspace.zero(f, m.dim)
    found = {_key(zero): zero}
    for vec in _all_vectors(f.p, m.dim):
        if all(x == 0 for x in vec):
            continue
        span = spin(m, vec, mats)
        found.setdefault(_key(span), span)
    frontier = list(found.values())
    while frontier:
        fresh = []
        for s in frontier:
            for t in list(found.values()):
                u = subspace_sum(s, t)
                k = _key(u)
                if k not in found:
                    found[k] = u
                    fresh.append(u)
        frontier = fresh
    return tuple(sorted(found.values(), key=_key))


def _key(s: Subspace):
    return (s.dim, tuple(tuple(str(x) for x in row) for row in s.basis.entries))


@dataclass(frozen=True)
class FactorEvidence:
    """Zero-or-simple evidence for one coradical filtration factor."""

    step: int
    dim: int
    simple: bool
    certified: bool


@dataclass(frozen=True)
class ChainReport:
    chain: bool
    factors: tuple
    filtration: FiltrationReport
    certified: bool
    seed: int

    @property
    def lattice_dims(self) -> Optional[tuple]:
        """Dims of the full subcomodule chain 0 < C_0 < ... < C when chain."""
        if not self.chain:
            return None
        return (0,) + self.filtration.step_dims


def filtration_factor(c: Coalgebra, report: FiltrationReport, k: int) -> Comodule:
    """The quotient comodule steps[k] / steps[k-1] of the regular comodule."""
    regular = regular_comodule(c)
    step = report.steps[k]
    sub = sub_comodule(regular, step)
    if k == 0:
        return sub
    previous = report.steps[k - 1]
    coords = []
    for row in previous.basis.entries:
        coord = step.coords_of(row)
        if coord is None:
            raise PreconditionError("filtration steps are not nested")
        coords.append(coord)
    inner = Subspace.from_vectors(c.field, step.dim, coords)
    return quotient_comodule(sub, inner)


def is_chain(c: Coalgebra, seed: int = 0, trials: int = 12,
             budget: int = DEFAULT_ENUMERATION_BUDGET) -> ChainReport:
    """Chain decision: every coradical filtration factor is zero or simple.

    On success the subcomodule lattice is the chain 0 < C_0 < C_1 < ... < C.
    Randomized-only simplicity verdicts leave certified False on the report.
    """
    report = coradical_filtration(c)
    factors = []
    verdict = True
    certified = True
    for k in range(len(report.steps)):
        factor = filtration_factor(c, report, k)
        if factor.dim == 0:
            factors.append(FactorEvidence(k, 0, True, True))
            continue
        simplicity = is_simple_comodule(factor, seed=seed + k, trials=trials, budget=budget)
        factors.append(FactorEvidence(k, factor.dim, simplicity.simple, simplicity.certified))
        certified = certified and simplicity.certified
        if not simplicity.simple:
            verdict = False
            break
    return ChainReport(verdict, tuple(factors), report, certified, seed)
