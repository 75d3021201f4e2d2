"""coalglab: exact-arithmetic toolkit for finite-dimensional coalgebras,
their dual algebras, and finitely generated modules over chain rings.

The core lives in :mod:`coalglab.exactla` (exact linear algebra),
:mod:`coalglab.coalg` (coalgebra structures and decision procedures),
:mod:`coalglab.constructors` (divided power and quaternion families),
:mod:`coalglab.chainmod` (module splitting over truncated series rings), and
:mod:`coalglab.isomo` (divided power recognition).  A FastAPI service wraps
the core in :mod:`coalglab.service`, and :mod:`coalglab.cli` is a thin
command-line client over the same handlers.
"""

__version__ = "0.1.0"
