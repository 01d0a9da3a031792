"""Representations: a target polynomial together with the polynomials whose cubes sum to it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .errors import ParseError
from .poly import Polynomial, PolyLike, grlex_key


def cube_sort_key(p: Polynomial) -> tuple:
    """Order cubes by degree, leading monomial, then coefficient sequence.

    All polynomials compared must share one variable tuple.
    """
    terms = p.sorted_terms()
    if not terms:
        return (-1, (), (), ())
    lead = grlex_key(terms[0][0])
    return (p.degree, lead, tuple(c for _, c in terms), tuple((grlex_key(m), c) for m, c in terms))


@dataclass(frozen=True)
class Representation:
    """``sum(c**3 for c in cubes) == target``, asserted by construction, checked by the verifier.

    All polynomials are re-expressed over one shared variable tuple and the
    cubes are stored in canonical order, so two representations of the same
    identity compare (and serialize) identically.  ``id`` and ``params`` are
    metadata and take no part in equality.
    """

    target: Polynomial
    cubes: tuple[Polynomial, ...]
    id: str | None = field(default=None, compare=False)
    params: Mapping[str, Any] = field(default_factory=dict, compare=False)
    variables: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        target = Polynomial.coerce(self.target)
        cubes = [Polynomial.coerce(c) for c in self.cubes]
        used: list[str] = list(self.variables or ())
        for p in (*cubes, target):
            for v in p.used_variables():
                if v not in used:
                    used.append(v)
        vs = tuple(used)
        cubes = sorted((c.with_variables(vs) for c in cubes), key=cube_sort_key)
        object.__setattr__(self, "target", target.with_variables(vs))
        object.__setattr__(self, "cubes", tuple(cubes))
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def arity(self) -> int:
        return len(self.cubes)

    def sum_of_cubes(self) -> Polynomial:
        total = Polynomial.const(0, self.variables)
        for c in self.cubes:
            total = total + c**3
        return total

    def substitute(self, bindings: Mapping[str, PolyLike], **meta) -> "Representation":
        order = [v for v in self.variables if v not in bindings]
        return Representation(
            self.target.substitute(bindings),
            tuple(c.substitute(bindings) for c in self.cubes),
            id=meta.get("id", self.id),
            params=meta.get("params", self.params),
            variables=tuple(order),
        )

    def scale(self, a: int) -> "Representation":
        """Multiply every cube by ``a``; the target picks up ``a**3``."""
        params = dict(self.params)
        params["scale"] = params.get("scale", 1) * a
        return Representation(
            self.target * a**3,
            tuple(c * a for c in self.cubes),
            id=self.id,
            params=params,
            variables=self.variables,
        )

    def has_zero_cube(self) -> bool:
        return any(c.is_zero() for c in self.cubes)

    # --- rendering ---

    def to_text(self) -> str:
        lhs = " + ".join(f"({c.to_text()})^3" for c in self.cubes) or "0"
        return f"{lhs} = {self.target.to_text()}"

    def to_latex(self) -> str:
        lhs = " + ".join(f"\\left({c.to_latex()}\\right)^{{3}}" for c in self.cubes) or "0"
        return f"{lhs} = {self.target.to_latex()}"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": {k: _param_json(v) for k, v in self.params.items()},
            "target": self.target.to_json(),
            "cubes": [c.to_json() for c in self.cubes],
        }

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_json(), **kwargs)

    @classmethod
    def from_json(cls, data: Mapping) -> "Representation":
        if not isinstance(data, Mapping):
            raise ParseError("representation JSON must be an object")
        try:
            target = Polynomial.from_json(data["target"])
            cubes = tuple(Polynomial.from_json(c) for c in data["cubes"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed representation JSON: missing {exc}") from exc
        params = data.get("params") or {}
        if not isinstance(params, Mapping):
            raise ParseError("params must be an object")
        declared: list[str] = []
        for p in (*cubes, target):
            declared += [v for v in p.variables if v not in declared]
        return cls(target, cubes, id=data.get("id"), params=params, variables=tuple(declared))

    @classmethod
    def loads(cls, text: str) -> "Representation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
        return cls.from_json(data)

    def __str__(self) -> str:
        return self.to_text()


def _param_json(v: Any) -> Any:
    if isinstance(v, Polynomial):
        return v.to_text()
    return v


def representation(target: PolyLike, cubes: Iterable[PolyLike], **meta) -> Representation:
    return Representation(Polynomial.coerce(target), tuple(Polynomial.coerce(c) for c in cubes), **meta)
