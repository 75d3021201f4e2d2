"""Coalgebra core: validation, dualization, radicals, filtration, socles,
perp correspondence, and the chain decision procedure."""
from .chain import (
    ChainReport,
    FactorEvidence,
    SimplicityReport,
    enumerate_subcomodules,
    filtration_factor,
    is_chain,
    is_simple_comodule,
    is_subcomodule,
    spin,
)
from .filtration import FiltrationReport, coradical_filtration, socle
from .radical import (
    check_ideal,
    check_subcoalgebra,
    coideal_perp,
    enumerate_basis_ideals,
    ideal_generated_by,
    ideal_perp,
    ideal_power,
    is_ideal,
    is_subcoalgebra,
    jacobson_radical,
    multiply_subspaces,
    quotient_algebra,
)
from .structures import (
    Coalgebra,
    Comodule,
    FDAlgebra,
    ValidationReport,
    Violation,
    co_opposite,
    dual_algebra,
    invert_matrix,
    quotient_comodule,
    regular_comodule,
    require_valid_algebra,
    require_valid_coalgebra,
    sub_comodule,
    transport,
    validate_algebra,
    validate_coalgebra,
    validate_comodule,
)

__all__ = [name for name in dir() if not name.startswith("_")]
