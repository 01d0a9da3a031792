"""Exception hierarchy shared by every cubesum module."""

from __future__ import annotations


class CubesumError(Exception):
    """Base class for all library errors."""


class UnboundVariable(CubesumError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"variable {self.name!r} has no binding"


class InexactDivision(CubesumError, ArithmeticError):
    """The divisor does not divide the dividend in Z[vars].

    ``term`` is the (monomial, coefficient) of the remainder that could not be
    cancelled; ``remainder`` is the partial remainder at that point.
    """

    def __init__(self, term, remainder, divisor):
        self.term = term
        self.remainder = remainder
        self.divisor = divisor
        super().__init__(f"{divisor} does not divide remainder term {term!r} (remainder {remainder})")


class UnknownIdentity(CubesumError, KeyError):
    def __init__(self, name: str, known=()):
        self.name = name
        self.known = tuple(known)
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown identity {self.name!r}; known ids: {', '.join(self.known)}"


class UnknownFamily(UnknownIdentity):
    def __str__(self) -> str:
        return f"unknown family {self.name!r}; known families: {', '.join(self.known)}"


class ResidueMismatch(CubesumError, ValueError):
    def __init__(self, j: int, shift: int):
        self.j = j
        self.shift = shift
        super().__init__(f"shift {shift} is not congruent to {j} mod 6; the division by 6 would be inexact")


class DerivationError(CubesumError):
    """An ansatz did not have the shape a derivation step requires."""


class BudgetExceeded(CubesumError):
    def __init__(self, states: int, budget: int):
        self.states = states
        self.budget = budget
        super().__init__(f"search space has {states} candidate states, budget is {budget}; shrink bounds or shard")


class NoFourCubeFamilyMatch(CubesumError):
    def __init__(self, n: int, tried):
        self.n = n
        self.tried = tuple(tried)
        super().__init__(
            f"{n} matches no four-cube family (tried: {'; '.join(self.tried)}); try `cubesum search`"
        )


class ParseError(CubesumError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{message}{where}")


class CheckpointMismatch(CubesumError, ValueError):
    """A checkpoint file belongs to a different search space or shard."""
