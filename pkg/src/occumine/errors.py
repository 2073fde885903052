"""Exception types shared across the package."""


class OccumineError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OccumineError):
    """Malformed input file.

    Carries the 1-based line number and, where it applies, the 1-based
    column of the offending token.
    """

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class MissingUtilityError(OccumineError):
    """An item occurs in the data but has no unit-utility entry."""

    def __init__(self, item: str, line: int | None = None):
        self.item = item
        self.line = line
        suffix = "" if line is None else f" (line {line})"
        super().__init__(f"no unit utility defined for item {item!r}{suffix}")


class DatabaseValidationError(OccumineError):
    """A database failed invariant validation before mining."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            head += f"; and {more} more"
        super().__init__(f"invalid database: {head}")


class UndefinedMeasureError(OccumineError):
    """A measure was requested for a pattern with no supporting transaction."""


class EnumerationBudgetError(OccumineError):
    """The exhaustive miner hit its cap on examined itemsets."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"enumeration budget of {budget} itemsets exceeded")


class JoinChainError(OccumineError):
    """A list join saw a tid that its prefix list lacks (broken join chain)."""


class PlanError(OccumineError):
    """A benchmark plan violates the one-varying-parameter rule or is malformed."""
