"""Exact verification that a representation's cubes sum to its target.

Symbolic expansion is the criterion; integer spot checks evaluate each cube
directly without expanding anything and serve as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .poly import Monomial, Polynomial
from .representation import Representation


@dataclass(frozen=True)
class SpotCheck:
    point: dict[str, int]
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verification.

    ``residual`` is ``sum(cubes**3) - target`` for symbolic checks and ``None``
    for spot-check-only reports.  ``first_bad_term`` is the graded-lex-least
    term of a nonzero residual.
    """

    ok: bool
    residual: Polynomial | None
    first_bad_term: tuple[Monomial, int] | None = None
    numeric_spot_checks: tuple[SpotCheck, ...] = ()

    def describe_bad_term(self) -> str | None:
        if self.first_bad_term is None or self.residual is None:
            return None
        mono, c = self.first_bad_term
        term = Polynomial(self.residual.variables, {mono: c})
        return term.to_text()

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "residual": self.residual.to_json() if self.residual is not None else None,
            "first_bad_term": (
                {"e": list(self.first_bad_term[0]), "c": str(self.first_bad_term[1])}
                if self.first_bad_term
                else None
            ),
            "spot_checks": [
                {"point": s.point, "lhs": str(s.lhs), "rhs": str(s.rhs)} for s in self.numeric_spot_checks
            ],
        }


def _cube_by_mul(p: Polynomial) -> Polynomial:
    return (p * p) * p


def residual(r: Representation, method: str = "pow") -> Polynomial:
    """Expanded ``sum(c**3) - target``.

    ``method="pow"`` cubes through ``Polynomial.__pow__`` (multinomial
    expansion); ``method="mul"`` through two generic multiplications.
    """
    if method == "pow":
        cube = lambda p: p**3  # noqa: E731
    elif method == "mul":
        cube = _cube_by_mul
    else:
        raise ValueError(f"unknown expansion method {method!r}")
    total = -r.target
    for c in r.cubes:
        total = total + cube(c)
    return total


def verifier_check(r: Representation, method: str = "pow") -> VerificationReport:
    res = residual(r, method)
    if res.is_zero():
        return VerificationReport(True, res)
    first = res.sorted_terms(descending=False)[0]
    return VerificationReport(False, res, first)


def verifier_spot_check(r: Representation, points: Iterable[Mapping[str, int]]) -> VerificationReport:
    """Evaluate both sides at each integer point; raises UnboundVariable on a missing binding."""
    checks = []
    for point in points:
        point = {k: int(v) for k, v in point.items()}
        lhs = sum(c.evaluate(point) ** 3 for c in r.cubes)
        rhs = r.target.evaluate(point)
        checks.append(SpotCheck(point, lhs, rhs))
    return VerificationReport(all(s.ok for s in checks), None, None, tuple(checks))


def verify(r: Representation) -> bool:
    return verifier_check(r).ok
