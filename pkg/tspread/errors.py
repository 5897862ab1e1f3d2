"""
Error hierarchy for the tspread library.

Library code raises; only the command-line layer catches and turns the
exception into a message and an exit code.
"""


class TSpreadError(ValueError):
    """Base class for errors caused by the caller's input."""


class ContractViolation(TSpreadError):
    """Malformed monomial, degree mismatch or ambient mismatch."""


class OutOfRange(TSpreadError):
    """An index or ambient size falls outside the admissible range."""


class PreconditionError(TSpreadError):
    """The hypotheses of a closed-form result are not met."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class OracleCapExceeded(OutOfRange):
    """The brute-force oracle was asked for more variables than its cap."""

    def __init__(self, n: int, cap: int, what: str = "oracle"):
        super().__init__(f"{what} refuses n={n}: cap is {cap} (see TSPREAD_ORACLE_CAP)")
        self.n = n
        self.cap = cap


class InternalInconsistency(RuntimeError):
    """A closed form broke a property it is guaranteed to have."""
