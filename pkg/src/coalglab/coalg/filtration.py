"""Coradical filtration and socles.

The filtration steps are the annihilators of the radical powers of the dual
algebra: step k is the perp of J^(k+1).  ``radical_powers[i]`` stores J^i
with J^0 the full dual space, so ``steps[k] == perp(radical_powers[k+1])``
holds index for index.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import StructuralError
from ..exactla import Subspace, contains, left_kernel, perp, subspace_intersect
from .radical import jacobson_radical, multiply_subspaces
from .structures import Coalgebra, Comodule, dual_algebra


@dataclass(frozen=True)
class FiltrationReport:
    """Strictly increasing subcoalgebra steps and the dual radical powers."""

    steps: tuple
    radical_powers: tuple
    terminated: bool

    @property
    def step_dims(self) -> tuple:
        return tuple(s.dim for s in self.steps)


def coradical_filtration(c: Coalgebra) -> FiltrationReport:
    """Filtration steps perp(J^(k+1)) until the full space is reached.

    An explicit guard of dim + 1 iterations protects against corrupted
    structure constants; termination is otherwise automatic in finite
    dimension.
    """
    a = dual_algebra(c)
    radical = jacobson_radical(a)
    powers = [Subspace.full(c.field, c.dim), radical]
    steps = [perp(radical)]
    guard = c.dim + 1
    while not steps[-1].is_full():
        if len(steps) > guard:
            raise StructuralError("filtration failed to stabilize within dim + 1 steps")
        powers.append(multiply_subspaces(a, powers[-1], radical))
        nxt = perp(powers[-1])
        if not contains(nxt, steps[-1]) or nxt.dim <= steps[-1].dim:
            raise StructuralError("filtration steps are not strictly increasing")
        steps.append(nxt)
    return FiltrationReport(tuple(steps), tuple(powers), True)


def socle(m: Comodule) -> Subspace:
    """Largest semisimple subcomodule: kernel of the radical action.

    A vector is in the socle iff every functional of the dual radical kills
    it under the induced action f.v = (id (x) f) rho(v).
    """
    c = m.coalgebra
    radical = jacobson_radical(dual_algebra(c))
    result = Subspace.full(c.field, m.dim)
    for functional in radical.basis.entries:
        mat = m.action_matrix(functional)
        result = subspace_intersect(result, left_kernel(mat))
        if result.is_zero():
            break
    return result
