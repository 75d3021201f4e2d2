"""Exception hierarchy shared by all coalglab modules."""
from __future__ import annotations


class CoalglabError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(CoalglabError):
    """Operands live over different base fields."""


class DimensionMismatchError(CoalglabError):
    """Shapes or ambient dimensions are incompatible."""


class StructuralError(CoalglabError):
    """A value violates a structural invariant (shape, echelon form, ...)."""


class InvalidCoalgebraError(CoalglabError):
    """A coalgebra failed axiom validation; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"coalgebra fails validation: {report.summary()}")


class InvalidAlgebraError(CoalglabError):
    """An algebra failed associativity/unit validation; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"algebra fails validation: {report.summary()}")


class UnsupportedFieldError(CoalglabError):
    """The requested operation is not exact over this field and is refused."""


class NotAnIdealError(CoalglabError):
    """A subspace handed to an ideal operation is not an ideal."""


class NotACoidealError(CoalglabError):
    """A subspace handed to a coideal/subcoalgebra operation is not one."""


class NotASubcomoduleError(CoalglabError):
    """A subspace is not stable under the comodule structure."""


class BudgetExceededError(CoalglabError):
    """An enumeration would exceed the configured budget."""


class PreconditionError(CoalglabError):
    """An operation received input outside its stated domain."""


class ParseError(CoalglabError):
    """A serialized file or payload could not be parsed."""

    def __init__(self, message: str, context: str | None = None):
        self.context = context
        super().__init__(message if context is None else f"{context}: {message}")
