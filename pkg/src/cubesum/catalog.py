"""Constructors for the known sum-of-cubes polynomial identities.

Every constructor builds its identity symbolically and binds parameters by
substitution, so passing a name keeps a parameter symbolic and passing an int
fixes it.  Formulas are transcribed as published; the derivation engine
re-derives the parametrized families independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from .errors import NoFourCubeFamilyMatch, UnknownIdentity
from .poly import Polynomial, parse, variables
from .representation import Representation

Param = Union[int, str, Polynomial]


def _bind(rep: Representation, defaults: dict[str, str], given: dict[str, Param]) -> Representation:
    bindings: dict[str, Polynomial | int] = {}
    params: dict[str, int | str] = {}
    for name, value in given.items():
        if isinstance(value, str):
            params[name] = value
            if value != defaults[name]:
                bindings[defaults[name]] = Polynomial.var(value)
        elif isinstance(value, Polynomial):
            params[name] = value.to_text()
            bindings[defaults[name]] = value
        else:
            params[name] = int(value)
            bindings[defaults[name]] = int(value)
    if not bindings:
        return Representation(rep.target, rep.cubes, id=rep.id, params=params, variables=rep.variables)
    return rep.substitute(bindings, params=params)


def _fixed(rid: str, target: int, *cubes: str) -> Representation:
    return Representation(Polynomial.const(target), tuple(parse(c) for c in cubes), id=rid)


# --- three-cube identities ---

def werebrusow() -> Representation:
    return _fixed("werebrusow", 2, "1 + 6*t^3", "1 - 6*t^3", "-6*t^2")


def mahler() -> Representation:
    return _fixed("mahler", 1, "9*t^4", "3*t - 9*t^4", "1 - 9*t^3")


# --- four-cube identities ---

@lru_cache(maxsize=None)
def _sum_pq_symbolic() -> Representation:
    t, p, q = variables("t", "p", "q")
    s = p + q
    cubes = (
        2 * s * t**2 + 4 * q * t + q,
        2 * s * t**2 + 4 * q * t - p + 2 * q,
        -2 * s * t**2 + (p - 3 * q) * t + p,
        -2 * s * t**2 - (p + 5 * q) * t + p - 2 * q,
    )
    return Representation(p**3 + q**3, cubes, id="four_pq", variables=("t", "p", "q"))


def four_cubes_sum_pq(p: Param = "p", q: Param = "q") -> Representation:
    """Four cubes in ``t`` summing to ``p**3 + q**3``."""
    return _bind(_sum_pq_symbolic(), {"p": "p", "q": "q"}, {"p": p, "q": q})


@lru_cache(maxsize=None)
def _two_diff_symbolic() -> Representation:
    t, p, q = variables("t", "p", "q")
    cubes = (p * t - q**2, -p * t - q**2, q * t + p**2, -q * t + p**2)
    return Representation(2 * (p**6 - q**6), cubes, id="four_even", variables=("t", "p", "q"))


def four_cubes_two_diff(p: Param = "p", q: Param = "q") -> Representation:
    """Four cubes in ``t`` summing to ``2*(p**6 - q**6)``."""
    return _bind(_two_diff_symbolic(), {"p": "p", "q": "q"}, {"p": p, "q": q})


@lru_cache(maxsize=None)
def _one_bivariate_symbolic() -> Representation:
    m1, m2 = variables("m1", "m2")
    w = 2 * m2**2 - 1
    cubes = (
        2 * w**2 * m1**2 + 4 * m2 * w * m1 + 2 * m2**2,
        -2 * w**2 * m1**2 - (4 * m2 - 1) * w * m1 - (2 * m2 + 1) * (m2 - 1),
        -2 * w**2 * m1**2 - (4 * m2 + 1) * w * m1 - (m2 + 1) * (2 * m2 - 1),
        2 * w**2 * m1**2 + 4 * m2 * w * m1 + 2 * m2**2 - 1,
    )
    return Representation(Polynomial.const(1), cubes, id="one_bivariate", variables=("m1", "m2"))


def one_bivariate(m1: Param = "m1", m2: Param = "m2") -> Representation:
    """Four cubes of polynomials in ``m1, m2`` summing to 1."""
    return _bind(_one_bivariate_symbolic(), {"m1": "m1", "m2": "m2"}, {"m1": m1, "m2": m2})


@lru_cache(maxsize=None)
def _two_trivariate_symbolic() -> Representation:
    t, g, h = variables("t", "g", "h")
    s = g**3 + h**3
    cubes = (
        6 * t**3 * s**2 + 1,
        -6 * t**3 * s**2 + 1,
        -6 * g * t**2 * s,
        -6 * h * t**2 * s,
    )
    return Representation(Polynomial.const(2), cubes, id="two_trivariate", variables=("t", "g", "h"))


def two_trivariate(g: Param = "g", h: Param = "h") -> Representation:
    """Four cubes in ``t, g, h`` summing to 2."""
    return _bind(_two_trivariate_symbolic(), {"g": "g", "h": "h"}, {"g": g, "h": h})


def one_quadratic() -> Representation:
    return _fixed("one_quadratic", 1, "2*t^2", "2*t^2 - 1", "-2*t^2 - t + 1", "-2*t^2 + t + 1")


def one_cubic() -> Representation:
    return _fixed(
        "one_cubic", 1,
        "8*t^3 - 2*t^2 - 4*t + 1", "8*t^3 - 6*t^2 - 3*t + 2",
        "-8*t^3 + 2*t^2 + 3*t", "-8*t^3 + 6*t^2 + 4*t - 2",
    )


def one_deg6() -> Representation:
    return _fixed("one_deg6", 1, "3*t^6 + 3*t^3 + 1", "-3*t^3*(t^3 + 1)", "-3*t^4 - 2*t", "-t")


def two_quadratic() -> Representation:
    return _fixed("two_quadratic", 2, "t^2", "t^2", "-t^2 + t + 1", "-t^2 - t + 1")


def two_cubic_3() -> Representation:
    return _fixed("two_cubic_3", 2, "3*t^3 + 1", "-3*t^3 + 1", "-3*t^2", "-3*t^2")


def two_cubic_18() -> Representation:
    return _fixed("two_cubic_18", 2, "18*t^3 + 1", "-18*t^3 + 1", "-6*t^2", "-12*t^2")


# --- five cubes: one identity per residue of n mod 6 ---

# (first cube, second cube, doubled cube, last cube); target is 6*m + j
_FIVE_CUBES = {
    0: ("36*t^3 + m + 1", "36*t^3 + m - 1", "-36*t^3 - m", "-6*t"),
    1: ("36*t^3 - 18*t^2 + 3*t + m + 1", "36*t^3 - 18*t^2 + 3*t + m - 1",
        "-36*t^3 + 18*t^2 - 3*t - m", "-6*t + 1"),
    2: ("36*t^3 - 36*t^2 + 12*t + m", "36*t^3 - 36*t^2 + 12*t + m - 2",
        "-36*t^3 + 36*t^2 - 12*t - m + 1", "-6*t + 2"),
    3: ("36*t^3 - 54*t^2 + 27*t + m - 3", "36*t^3 - 54*t^2 + 27*t + m - 5",
        "-36*t^3 + 54*t^2 - 27*t - m + 4", "-6*t + 3"),
    4: ("36*t^3 + 36*t^2 + 12*t + m + 3", "36*t^3 + 36*t^2 + 12*t + m + 1",
        "-36*t^3 - 36*t^2 - 12*t - m - 2", "-6*t - 2"),
    5: ("36*t^3 + 18*t^2 + 3*t + m + 2", "36*t^3 + 18*t^2 + 3*t + m",
        "-36*t^3 - 18*t^2 - 3*t - m - 1", "-6*t - 1"),
}


@lru_cache(maxsize=None)
def _five_symbolic(j: int) -> Representation:
    a, b, doubled, last = (parse(s, ("t", "m")) for s in _FIVE_CUBES[j])
    m = Polynomial.var("m")
    return Representation(6 * m + j, (a, b, doubled, doubled, last), id="five_residue", variables=("t", "m"))


def five_cubes_residue(j: int, m: Param = "m") -> Representation:
    """Five cubes in ``t`` (one listed twice) summing to ``6*m + j``."""
    if not isinstance(j, int) or not 0 <= j <= 5:
        raise ValueError(f"residue j must be an integer in 0..5, got {j!r}")
    rep = _bind(_five_symbolic(j), {"m": "m"}, {"m": m})
    return Representation(rep.target, rep.cubes, id=rep.id, params={"j": j, **rep.params},
                          variables=rep.variables)


def scale_representation(r: Representation, a: int) -> Representation:
    return r.scale(a)


# --- registry ---

@dataclass(frozen=True)
class IdentityFamily:
    id: str
    arity: int
    symbolic_params: tuple[str, ...]
    free_vars: tuple[str, ...]
    description: str
    build: Callable[..., Representation]

    @property
    def is_family(self) -> bool:
        return bool(self.symbolic_params)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "arity": self.arity,
            "symbolic_params": list(self.symbolic_params),
            "free_vars": list(self.free_vars),
            "description": self.description,
        }


def _one_bivariate_system() -> Representation:
    rep = one_bivariate()
    return Representation(rep.target, rep.cubes, id="one_bivariate_system", variables=rep.variables)


_ENTRIES = (
    IdentityFamily("five_residue", 5, ("j", "m"), ("t",),
                   "6m + j as five cubes in t, one identity per residue j mod 6", five_cubes_residue),
    IdentityFamily("four_even", 4, ("p", "q"), ("t",),
                   "2(p^6 - q^6) as four cubes of linear polynomials in t", four_cubes_two_diff),
    IdentityFamily("four_pq", 4, ("p", "q"), ("t",),
                   "p^3 + q^3 as four cubes of quadratics in t", four_cubes_sum_pq),
    IdentityFamily("mahler", 3, (), ("t",), "Mahler (1936): 1 as three cubes", mahler),
    IdentityFamily("one_bivariate", 4, ("m1", "m2"), (),
                   "1 as four cubes of polynomials in m1, m2", one_bivariate),
    IdentityFamily("one_bivariate_system", 4, (), ("m1", "m2"),
                   "1 as four cubes, the (m1, m2) system with both parameters symbolic", _one_bivariate_system),
    IdentityFamily("one_cubic", 4, (), ("t",), "1 as four cubes of cubics", one_cubic),
    IdentityFamily("one_deg6", 4, (), ("t",), "1 as four cubes, largest of degree 6", one_deg6),
    IdentityFamily("one_quadratic", 4, (), ("t",), "1 as four cubes of quadratics", one_quadratic),
    IdentityFamily("two_cubic_18", 4, (), ("t",), "2 as four cubes, leading coefficient 18", two_cubic_18),
    IdentityFamily("two_cubic_3", 4, (), ("t",), "2 as four cubes, leading coefficient 3", two_cubic_3),
    IdentityFamily("two_quadratic", 4, (), ("t",), "2 as four cubes of quadratics", two_quadratic),
    IdentityFamily("two_trivariate", 4, ("g", "h"), ("t",),
                   "2 as four cubes of polynomials in t, g, h", two_trivariate),
    IdentityFamily("werebrusow", 3, (), ("t",), "Werebrusow (1908): 2 as three cubes", werebrusow),
)

CATALOG: dict[str, IdentityFamily] = {e.id: e for e in sorted(_ENTRIES, key=lambda e: e.id)}
FIXED_IDS = tuple(k for k, e in CATALOG.items() if not e.is_family)
FAMILY_IDS = tuple(k for k, e in CATALOG.items() if e.is_family)


def catalog_entries() -> list[IdentityFamily]:
    return list(CATALOG.values())


def catalog_fixed(identity: str) -> Representation:
    """The fixed identity ``identity``; a family id gives its fully symbolic instance."""
    try:
        entry = CATALOG[identity]
    except KeyError:
        raise UnknownIdentity(identity, CATALOG) from None
    if identity == "five_residue":
        return five_cubes_residue(0)
    return entry.build()


def build(identity: str, **params: Param) -> Representation:
    try:
        entry = CATALOG[identity]
    except KeyError:
        raise UnknownIdentity(identity, CATALOG) from None
    if not params:
        return catalog_fixed(identity)
    unknown = set(params) - set(entry.symbolic_params)
    if unknown:
        raise ValueError(f"{identity} takes parameters {entry.symbolic_params}, got {sorted(unknown)}")
    if identity == "five_residue":
        params.setdefault("j", 0)
    return entry.build(**params)


# --- integer representations ---

def _sum_of_two_cubes(n: int) -> list[tuple[int, int]]:
    """All integer (p, q) with p**3 + q**3 == n, for n != 0.

    p + q = s divides n and p*p - p*q + q*q = n / s > 0, which pins p, q as
    the roots of x**2 - s*x + (s*s - n/s)/3.
    """
    from math import isqrt

    from sympy import divisors

    sign = 1 if n > 0 else -1
    sols = []
    for d in divisors(abs(n)):
        s = sign * d
        k = n // s
        if (s * s - k) % 3:
            continue
        prod = (s * s - k) // 3
        disc = s * s - 4 * prod
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc or (s + r) % 2:
            continue
        for p in {(s + r) // 2, (s - r) // 2}:
            sols.append((p, s - p))
    return sols


def _two_sixth_difference(n: int) -> list[tuple[int, int]]:
    """All integer (p, q) with 2*(p**6 - q**6) == n, for n != 0."""
    from sympy import integer_nthroot

    if n % 2:
        return []
    half = n // 2
    # |p^6 - q^6| >= max(|p|,|q|)^5 when |p| != |q|
    bound = integer_nthroot(abs(half), 5)[0] + 1
    sols = []
    for a in range(bound + 1):
        rest = a**6 - half
        if rest < 0:
            continue
        b, exact = integer_nthroot(rest, 6)
        if not exact:
            continue
        for p in {a, -a}:
            for q in {b, -b}:
                sols.append((p, q))
    return sols


def _preference(pq: tuple[int, int]) -> tuple[int, int, int]:
    p, q = pq
    return (abs(p) + abs(q), -p, -q)


def find_four_cube_family(n: int) -> tuple[str, int, int]:
    """Pick the family instance used to write ``n`` as four cubes.

    The p**3 + q**3 shape is tried before 2*(p**6 - q**6); within a shape the
    smallest |p| + |q| wins and ties go to the lexicographically larger (p, q).
    """
    if n == 0:
        return ("four_pq", 0, 0)
    sols = _sum_of_two_cubes(n)
    if sols:
        return ("four_pq", *min(sols, key=_preference))
    sols = _two_sixth_difference(n)
    if sols:
        return ("four_even", *min(sols, key=_preference))
    raise NoFourCubeFamilyMatch(
        n,
        [
            f"p^3 + q^3 over every p + q dividing {n}",
            "2(p^6 - q^6) with max(|p|,|q|) <= (|n|/2)^(1/5) + 1" if n % 2 == 0 else "2(p^6 - q^6) needs even n",
        ],
    )


def represent(n: int, cubes: int = 5) -> Representation:
    """Write the integer ``n`` as a sum of ``cubes`` (4 or 5) cubes of polynomials in ``t``."""
    n = int(n)
    if cubes == 5:
        j = n % 6
        return five_cubes_residue(j, (n - j) // 6)
    if cubes == 4:
        family, p, q = find_four_cube_family(n)
        if family == "four_pq":
            return four_cubes_sum_pq(p, q)
        return four_cubes_two_diff(p, q)
    raise ValueError(f"cubes must be 4 or 5, got {cubes}")
