"""Re-derive the parametrized identity families from their ansatz.

Each derivation starts from a structured guess for the summands, expands the
cube sum, solves for one unknown that enters linearly once common factors are
removed, and makes the solution integral by a parametrization followed by an
exact division.  Every step is recorded in a :class:`DerivationTrace`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DerivationError, ResidueMismatch, UnknownFamily
from .poly import Polynomial, variables
from .representation import Representation


@dataclass(frozen=True)
class Step:
    """``lhs = rhs`` (or ``lhs = rhs / denominator``) after one derivation step."""

    description: str
    lhs: Polynomial
    rhs: Polynomial
    denominator: Polynomial | None = None

    def equation(self) -> str:
        if self.denominator is None or self.denominator == 1:
            return f"{self.lhs} = {self.rhs}"
        return f"{self.lhs} = ({self.rhs}) / ({self.denominator})"


@dataclass
class DerivationTrace:
    ansatz: tuple[Polynomial, ...]
    target: Polynomial
    steps: list[Step] = field(default_factory=list)
    substitutions: list[tuple[str, Polynomial]] = field(default_factory=list)
    solved: dict[str, Polynomial] = field(default_factory=dict)
    family: str = ""
    variables: tuple[str, ...] = ()

    def note(self, description: str, lhs, rhs, denominator=None) -> None:
        self.steps.append(Step(description, Polynomial.coerce(lhs), Polynomial.coerce(rhs),
                               None if denominator is None else Polynomial.coerce(denominator)))

    def bind(self, name: str, value: Polynomial, solved: bool = False) -> None:
        self.substitutions.append((name, value))
        if solved:
            self.solved[name] = value

    def replay(self) -> Representation:
        """Apply the recorded bindings, in order, to the ansatz and target."""
        cubes = list(self.ansatz)
        target = self.target
        for name, value in self.substitutions:
            cubes = [c.substitute({name: value}) for c in cubes]
            target = target.substitute({name: value})
        return Representation(target, tuple(cubes), id=self.family, variables=self.variables)

    def explain(self) -> str:
        lines = []
        for i, step in enumerate(self.steps, 1):
            lines.append(f"{i}. {step.description}")
            lines.append(f"   {step.equation()}")
        return "\n".join(lines)

    def to_json(self) -> list[dict]:
        return [
            {
                "step": i,
                "description": s.description,
                "lhs": s.lhs.to_text(),
                "rhs": s.rhs.to_text(),
                "denominator": None if s.denominator is None else s.denominator.to_text(),
            }
            for i, s in enumerate(self.steps, 1)
        ]


def _cube_sum(xs) -> Polynomial:
    total = Polynomial.const(0)
    for x in xs:
        total = total + x**3
    return total


def _cancel_common(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Strip the shared integer content and shared monomial factor of a fraction."""
    vs = tuple(dict.fromkeys(num.variables + den.variables))
    num, den = num.with_variables(vs), den.with_variables(vs)
    g = math.gcd(num.content(), den.content())
    if num:
        mono = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
    else:
        mono = den.monomial_content()
    common = Polynomial(vs, {mono: g})
    num, den = num.divide_exact(common), den.divide_exact(common)
    if den.leading_term()[1] < 0:
        num, den = -num, -den
    return num.compact(), den.compact()


def solve_nonzero_root(equation: Polynomial, unknown: str) -> tuple[Polynomial, Polynomial]:
    """Nonzero root of ``equation == 0`` as ``(numerator, denominator)``.

    After dividing out the largest power of ``unknown`` the equation must be
    linear in it: ``a*unknown + b == 0`` gives ``-b / a``.
    """
    coeffs = equation.coefficients_in(unknown)
    if not coeffs:
        raise DerivationError(f"equation is identically zero; {unknown} is unconstrained")
    low, high = min(coeffs), max(coeffs)
    if high - low != 1:
        raise DerivationError(
            f"after removing {unknown}^{low} the equation has degree {high - low} in {unknown}, expected 1"
        )
    return _cancel_common(-coeffs[low], coeffs[high])


def _finish(trace: DerivationTrace, family: str, order: tuple[str, ...], params: dict) -> tuple[Representation, DerivationTrace]:
    trace.family = family
    trace.variables = order
    rep = trace.replay()
    trace.note("resulting identity: sum of cubes minus target", rep.sum_of_cubes() - rep.target, 0)
    return Representation(rep.target, rep.cubes, id=family, params=params, variables=order), trace


def derive_four_pq() -> tuple[Representation, DerivationTrace]:
    """Four cubes summing to p^3 + q^3 from x = (-y+p, -y+q, y+m, y-m)."""
    t, p, q, y, m = variables("t", "p", "q", "y", "m")
    ansatz = (-y + p, -y + q, y + m, y - m)
    target = p**3 + q**3
    trace = DerivationTrace(ansatz, target)
    eq = _cube_sum(ansatz) - target
    trace.note("expand x1^3 + x2^3 + x3^3 + x4^3 - (p^3 + q^3); the y^3 terms cancel", eq, 0)
    num, den = solve_nonzero_root(eq, "y")
    trace.note("divide by y and solve the remaining linear equation", y, num, den)
    m_param = (p + q) * t + q
    trace.bind("m", m_param)
    num = num.substitute({"m": m_param})
    trace.note("set m = (p + q)*t + q", m, m_param)
    y_val = num.divide_exact(den).with_variables(("t", "p", "q"))
    trace.note("the numerator is now divisible by the denominator", y, y_val)
    trace.bind("y", y_val, solved=True)
    return _finish(trace, "four_pq", ("t", "p", "q"), {"p": "p", "q": "q"})


def derive_four_even(p_sym: str = "p", q_sym: str = "q") -> tuple[Representation, DerivationTrace]:
    """Four cubes summing to 2(p^6 - q^6) from (pt+u, -pt+u, qt+v, -qt+v)."""
    t, p, q, u, v = variables("t", p_sym, q_sym, "u", "v")
    ansatz = (p * t + u, -p * t + u, q * t + v, -q * t + v)
    total = _cube_sum(ansatz)
    by_t = total.coefficients_in("t")
    trace = DerivationTrace(ansatz, by_t.get(0, Polynomial.const(0)))
    trace.note("expand the sum of cubes as a cubic in t", total, total)
    for k in (3, 1):
        c = by_t.get(k, Polynomial.const(0))
        if c:
            raise DerivationError(f"coefficient of t^{k} is {c}, expected 0")
        trace.note(f"coefficient of t^{k} vanishes", Polynomial.const(0), c)
    quad = by_t[2]
    trace.note("coefficient of t^2", quad, 0)
    choice = {"u": -(q**2), "v": p**2}
    if quad.substitute(choice):
        raise DerivationError("u = -q^2, v = p^2 does not annihilate the t^2 coefficient")
    trace.bind("u", choice["u"], solved=True)
    trace.bind("v", choice["v"], solved=True)
    trace.note("choose u = -q^2", u, choice["u"])
    trace.note("choose v = p^2", v, choice["v"])
    trace.note("the sum reduces to its constant term", total.substitute(choice), trace.target.substitute(choice))
    return _finish(trace, "four_even", ("t", p_sym, q_sym), {"p": p_sym, "q": q_sym})


def derive_one_bivariate() -> tuple[Representation, DerivationTrace]:
    """Four cubes summing to 1 from x = (py+1, -py+m, -py-m, py)."""
    p, y, m, m1, m2 = variables("p", "y", "m", "m1", "m2")
    ansatz = (p * y + 1, -p * y + m, -p * y - m, p * y)
    trace = DerivationTrace(ansatz, Polynomial.const(1))
    eq = _cube_sum(ansatz) - 1
    trace.note("expand x1^3 + x2^3 + x3^3 + x4^3 - 1; the y^3 terms cancel", eq, 0)
    num, den = solve_nonzero_root(eq, "y")
    trace.note("divide by y and solve for the nonzero root", y, num, den)
    m_param = p * m1 + m2
    trace.bind("m", m_param)
    num = num.substitute({"m": m_param})
    trace.note("set m = p*m1 + m2", m, m_param)
    p_index = num.variables.index("p")
    divisible = Polynomial(num.variables, {e: c for e, c in num.terms.items() if e[p_index]})
    leftover = num - divisible
    whole = divisible.divide_exact(den)
    trace.note("split y into a polynomial part and a fraction over p", y - whole, leftover, den)
    p_param = 2 * m2**2 - 1
    num = num.substitute({"p": p_param})
    den = den.substitute({"p": p_param})
    trace.note("set p = 2*m2^2 - 1 to clear the denominator", p, p_param)
    y_val = num.divide_exact(den).with_variables(("m1", "m2"))
    trace.note("solved y", y, y_val)
    trace.bind("y", y_val, solved=True)
    trace.bind("p", p_param)
    return _finish(trace, "one_bivariate", ("m1", "m2"), {"m1": "m1", "m2": "m2"})


def derive_two_trivariate(premultiply: bool = True) -> tuple[Representation, DerivationTrace]:
    """Four cubes summing to 2 from (p+1, -p+1, q, r) with p, q, r proportional.

    ``premultiply=False`` sets f = t instead of t*(g^3 + h^3), which leaves the
    solution for m fractional and raises InexactDivision.
    """
    t, p, q, r, f, g, h, m = variables("t", "p", "q", "r", "f", "g", "h", "m")
    ansatz = (p + 1, -p + 1, q, r)
    trace = DerivationTrace(ansatz, Polynomial.const(2))
    eq = _cube_sum(ansatz) - 2
    trace.note("expand and subtract 2", eq, 0)
    prop = {"p": f * m, "q": g * m, "r": h * m}
    for name, value in prop.items():
        trace.bind(name, value)
    eq = eq.substitute(prop)
    trace.note("set p = f*m, q = g*m, r = h*m", eq, 0)
    num, den = solve_nonzero_root(eq, "m")
    trace.note("divide by m^2 and solve for m", m, num, den)
    f_param = t * (g**3 + h**3) if premultiply else t
    trace.bind("f", f_param)
    num = num.substitute({"f": f_param})
    trace.note("set f = t*(g^3 + h^3)" if premultiply else "set f = t", f, f_param)
    m_val = num.divide_exact(den).with_variables(("t", "g", "h"))
    trace.note("solved m", m, m_val)
    trace.bind("m", m_val, solved=True)
    return _finish(trace, "two_trivariate", ("t", "g", "h"), {"g": "g", "h": "h"})


# shift added to the base identity for each residue j
DEFAULT_SHIFTS = {0: 0, 1: 1, 2: 2, 3: 3, 4: -2, 5: -1}


def derive_five_residue(j: int, shift: int | None = None) -> tuple[Representation, DerivationTrace]:
    """Five cubes summing to 6m + j.

    Starts from 6r = (r+1)^3 + (r-1)^3 - 2r^3, adds (-6t + shift)^3 to both
    sides and solves 6r + (-6t + shift)^3 = 6m + j for r.  The solution is
    integral exactly when shift = j (mod 6).
    """
    if not isinstance(j, int) or not 0 <= j <= 5:
        raise ValueError(f"residue j must be an integer in 0..5, got {j!r}")
    if shift is None:
        shift = DEFAULT_SHIFTS[j]
    if (shift - j) % 6:
        raise ResidueMismatch(j, shift)
    t, m, r = variables("t", "m", "r")
    base = (r + 1, r - 1, -r, -r)
    ansatz = base + (-6 * t + shift,)
    target = 6 * m + j
    trace = DerivationTrace(ansatz, target)
    trace.note("base identity: (r + 1)^3 + (r - 1)^3 + (-r)^3 + (-r)^3 expands to 6*r", _cube_sum(base), 6 * r)
    trace.note(f"add ({ansatz[-1]})^3 to both sides and expand", _cube_sum(ansatz), 6 * r + ansatz[-1] ** 3)
    eq = 6 * r + ansatz[-1] ** 3 - target
    trace.note(f"equate the right side to 6*m + {j}", eq, 0)
    coeffs = eq.coefficients_in("r")
    num, den = -coeffs[0], coeffs[1]
    trace.note("solve for r", r, num, den)
    r_val = num.divide_exact(den).with_variables(("t", "m"))
    trace.note(f"({shift})^3 = {j} (mod 6), so the division by 6 is exact", r, r_val)
    trace.bind("r", r_val, solved=True)
    return _finish(trace, "five_residue", ("t", "m"), {"j": j, "m": "m", "shift": shift})


DERIVATIONS = {
    "five_residue": derive_five_residue,
    "four_even": derive_four_even,
    "four_pq": derive_four_pq,
    "one_bivariate": derive_one_bivariate,
    "two_trivariate": derive_two_trivariate,
}


def derive(family: str, **kwargs) -> tuple[Representation, DerivationTrace]:
    try:
        fn = DERIVATIONS[family]
    except KeyError:
        raise UnknownFamily(family, DERIVATIONS) from None
    if family == "five_residue":
        kwargs.setdefault("j", 0)
    return fn(**kwargs)
