"""Exact sparse multivariate polynomials over the integers.

A polynomial stores an ordered tuple of variable names and a map from exponent
tuples (one entry per variable) to nonzero Python ints.  Values are immutable;
every operation returns a new polynomial in canonical form.

Operands over different variable lists are unified by name: the result's
variables are the left operand's followed by any new names from the right
operand.  Equality and hashing ignore variables that occur with exponent zero,
so ``t + 1`` over ``("t",)`` equals ``t + 1`` over ``("t", "m")``.

Terms are ordered graded-lexicographically (total degree, then exponent tuple);
text, JSON and LaTeX output list terms from the largest down.
"""

from __future__ import annotations

import ast
import math
import re
from collections import Counter
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Union

from .errors import InexactDivision, ParseError, UnboundVariable

Monomial = tuple[int, ...]
Scalar = int
PolyLike = Union["Polynomial", int]

# Largest multiset count for which poly_pow expands by the multinomial theorem.
_MULTINOMIAL_LIMIT = 50_000


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


def _unify(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return a + tuple(v for v in b if v not in a)


def _remap(terms: Mapping[Monomial, int], src: tuple[str, ...], dst: tuple[str, ...]) -> dict[Monomial, int]:
    """Re-express ``terms`` over ``dst``; every variable used in ``terms`` must be in ``dst``."""
    if src == dst:
        return dict(terms)
    pos = {v: i for i, v in enumerate(dst)}
    out: dict[Monomial, int] = {}
    for mono, c in terms.items():
        e = [0] * len(dst)
        for v, k in zip(src, mono):
            if k:
                e[pos[v]] = k
        out[tuple(e)] = c
    return out


class Polynomial:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[Monomial, int] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) < n:
                mono = mono + (0,) * (n - len(mono))
            elif len(mono) > n:
                if any(mono[n:]):
                    raise ValueError(f"monomial {mono} has more exponents than variables {variables}")
                mono = mono[:n]
            if any(k < 0 for k in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = int(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._vars = variables
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Monomial, int]) -> "Polynomial":
        # trusted constructor: terms already canonical over variables
        p = object.__new__(cls)
        p._vars = variables
        p._terms = terms
        p._hash = None
        return p

    # --- constructors ---

    @classmethod
    def const(cls, value: int, variables: Iterable[str] = ()) -> "Polynomial":
        variables = tuple(variables)
        return cls._raw(variables, {(0,) * len(variables): int(value)} if value else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls._raw((name,), {(1,): 1})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], var: str = "t") -> "Polynomial":
        """Univariate polynomial from ascending coefficients ``[c0, c1, ...]``."""
        return cls._raw((var,), {(i,): int(c) for i, c in enumerate(coeffs) if c})

    @staticmethod
    def coerce(value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return Polynomial.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    # --- inspection ---

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self._vars)
        for mono in self._terms:
            for i, k in enumerate(mono):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self._vars, used) if u)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self._vars), 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        if var not in self._vars:
            return 0 if self._terms else -1
        i = self._vars.index(var)
        return max((m[i] for m in self._terms), default=-1)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=descending)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def leading_term(self) -> tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=grlex_key)
        return mono, self._terms[mono]

    def coefficient(self, exponents: Mapping[str, int]) -> int:
        """Coefficient of the monomial given as ``{name: exponent}``; absent names mean 0."""
        for v, k in exponents.items():
            if k and v not in self._vars:
                return 0
        mono = tuple(exponents.get(v, 0) for v in self._vars)
        return self._terms.get(mono, 0)

    def coefficients_in(self, var: str) -> dict[int, "Polynomial"]:
        """Split into ``{k: coefficient of var**k}``; the coefficients no longer mention ``var``."""
        if var not in self._vars:
            return {0: self} if self._terms else {}
        i = self._vars.index(var)
        rest = self._vars[:i] + self._vars[i + 1:]
        parts: dict[int, dict[Monomial, int]] = {}
        for mono, c in self._terms.items():
            parts.setdefault(mono[i], {})[mono[:i] + mono[i + 1:]] = c
        return {k: Polynomial._raw(rest, t) for k, t in sorted(parts.items())}

    def content(self) -> int:
        """Non-negative gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self._terms.values()) if self._terms else 0

    def monomial_content(self) -> Monomial:
        """Exponent-wise minimum over all terms: the largest monomial dividing every term."""
        if not self._terms:
            return (0,) * len(self._vars)
        return tuple(min(col) for col in zip(*self._terms)) if self._vars else ()

    # --- variable bookkeeping ---

    def with_variables(self, variables: Iterable[str]) -> "Polynomial":
        """Re-express over ``variables``; they must include every variable actually used."""
        variables = tuple(variables)
        missing = set(self.used_variables()) - set(variables)
        if missing:
            raise ValueError(f"cannot drop variables {sorted(missing)} that occur in {self}")
        return Polynomial._raw(variables, _remap(self._terms, self._vars, variables))

    def compact(self) -> "Polynomial":
        """Drop variables that never occur."""
        return self.with_variables(self.used_variables())

    def _name_key(self) -> frozenset:
        return frozenset(
            (tuple(sorted((v, k) for v, k in zip(self._vars, m) if k)), c) for m, c in self._terms.items()
        )

    # --- arithmetic ---

    def _aligned(self, other: "Polynomial") -> tuple[tuple[str, ...], dict, dict]:
        vs = _unify(self._vars, other._vars)
        return vs, _remap(self._terms, self._vars, vs), _remap(other._terms, other._vars, vs)

    def __add__(self, other: PolyLike) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        vs, a, b = self._aligned(other)
        for m, c in b.items():
            s = a.get(m, 0) + c
            if s:
                a[m] = s
            else:
                a.pop(m, None)
        return Polynomial._raw(vs, a)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __sub__(self, other: PolyLike) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return (-self) + other

    def scale(self, k: int) -> "Polynomial":
        if not k:
            return Polynomial._raw(self._vars, {})
        return Polynomial._raw(self._vars, {m: c * k for m, c in self._terms.items()})

    def __mul__(self, other: PolyLike) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        vs, a, b = self._aligned(other)
        out: dict[Monomial, int] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw(vs, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative int, got {k!r}")
        if k == 0:
            return Polynomial.const(1, self._vars)
        if k == 1 or len(self._terms) <= 1:
            return Polynomial._raw(
                self._vars, {tuple(e * k for e in m): c**k for m, c in self._terms.items()}
            )
        if math.comb(len(self._terms) + k - 1, k) <= _MULTINOMIAL_LIMIT:
            return self._pow_multinomial(k)
        return self._pow_binary(k)

    def _pow_multinomial(self, k: int) -> "Polynomial":
        # sum over multisets of k terms: k!/prod(mult!) * prod(c_i^mult)
        items = list(self._terms.items())
        n_vars = len(self._vars)
        fk = math.factorial(k)
        out: dict[Monomial, int] = {}
        for combo in combinations_with_replacement(range(len(items)), k):
            coeff = fk
            exps = [0] * n_vars
            for idx, mult in Counter(combo).items():
                mono, c = items[idx]
                coeff = coeff // math.factorial(mult) * c**mult
                for i, e in enumerate(mono):
                    exps[i] += e * mult
            m = tuple(exps)
            out[m] = out.get(m, 0) + coeff
        return Polynomial._raw(self._vars, {m: c for m, c in out.items() if c})

    def _pow_binary(self, k: int) -> "Polynomial":
        result = Polynomial.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # --- comparison ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        if len(self._terms) != len(other._terms):
            return False
        return self._name_key() == other._name_key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.constant_term()) if self.is_constant() else hash(self._name_key())
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # --- substitution, evaluation, division ---

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "Polynomial":
        """Simultaneously replace variables by polynomials (or ints).

        Bound variables disappear from the ambient list unless a binding
        reintroduces them; bindings for absent variables are no-ops.
        """
        active = {v: Polynomial.coerce(p) for v, p in bindings.items() if v in self._vars}
        if not active:
            return self
        keep = tuple(v for v in self._vars if v not in active)
        out_vars = keep
        for p in active.values():
            out_vars = _unify(out_vars, p._vars)
        keep_idx = [i for i, v in enumerate(self._vars) if v not in active]
        bound_idx = [(i, active[v]) for i, v in enumerate(self._vars) if v in active]
        powers: dict[tuple[int, int], Polynomial] = {}
        result = Polynomial._raw(out_vars, {})
        # group terms by the exponents of the bound variables
        groups: dict[tuple[int, ...], dict[Monomial, int]] = {}
        for mono, c in self._terms.items():
            key = tuple(mono[i] for i, _ in bound_idx)
            rest = tuple(mono[i] for i in keep_idx)
            groups.setdefault(key, {})[rest] = c
        for key, rest_terms in groups.items():
            factor = Polynomial.const(1, out_vars)
            for (i, p), e in zip(bound_idx, key):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = p**e
                    factor = factor * powers[(i, e)]
            result = result + factor * Polynomial._raw(keep, rest_terms)
        return result.with_variables(out_vars)

    def evaluate(self, point: Mapping[str, int]) -> int:
        used = self.used_variables()
        for v in used:
            if v not in point:
                raise UnboundVariable(v)
        values = [int(point[v]) if v in used else 0 for v in self._vars]
        total = 0
        for mono, c in self._terms.items():
            term = c
            for x, k in zip(values, mono):
                if k:
                    term *= x**k
            total += term
        return total

    def __call__(self, **point: int) -> int:
        return self.evaluate(point)

    def divide_exact(self, divisor: PolyLike) -> "Polynomial":
        """Quotient q with q * divisor == self, or InexactDivision.

        Uses leading-term reduction in graded-lex order, which always succeeds
        when the division is exact in Z[vars].
        """
        divisor = Polynomial.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            d = divisor.constant_term()
            for mono, c in self.sorted_terms(descending=False):
                if c % d:
                    raise InexactDivision((mono, c), self, divisor)
            return Polynomial._raw(self._vars, {m: c // d for m, c in self._terms.items()})
        vs = _unify(self._vars, divisor._vars)
        rem = self.with_variables(vs)
        div = divisor.with_variables(vs)
        lm_b, lc_b = div.leading_term()
        quotient: dict[Monomial, int] = {}
        while rem:
            lm_r, lc_r = rem.leading_term()
            shift = tuple(x - y for x, y in zip(lm_r, lm_b))
            if any(s < 0 for s in shift) or lc_r % lc_b:
                raise InexactDivision((lm_r, lc_r), rem, divisor)
            q = lc_r // lc_b
            quotient[shift] = q
            rem = rem - div * Polynomial._raw(vs, {shift: q})
        return Polynomial._raw(vs, quotient)

    # --- rendering ---

    def _monomial_text(self, mono: Monomial, mul: str = "*", power=lambda v, k: f"{v}^{k}") -> str:
        return mul.join(v if k == 1 else power(v, k) for v, k in zip(self._vars, mono) if k)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            mt = self._monomial_text(mono)
            mag = abs(c)
            body = str(mag) if not mt else (mt if mag == 1 else f"{mag}*{mt}")
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"

        def name(v: str) -> str:
            m = re.fullmatch(r"([A-Za-z]+)_?(\d+)", v)
            return f"{m.group(1)}_{{{m.group(2)}}}" if m else v

        parts: list[str] = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            mt = " ".join(
                name(v) if k == 1 else f"{name(v)}^{{{k}}}" for v, k in zip(self._vars, mono) if k
            )
            mag = abs(c)
            body = str(mag) if not mt else (mt if mag == 1 else f"{mag} {mt}")
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "vars": list(self._vars),
            "terms": [{"e": list(m), "c": str(c)} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        try:
            variables = tuple(data["vars"])
            if not all(isinstance(v, str) for v in variables):
                raise ParseError("variable names must be strings")
            terms: dict[Monomial, int] = {}
            for term in data["terms"]:
                e = term["e"]
                if len(e) != len(variables) or not all(isinstance(k, int) and k >= 0 for k in e):
                    raise ParseError(f"bad exponent vector {e!r} for variables {list(variables)}")
                c = term["c"]
                if isinstance(c, str):
                    c = int(c)
                elif not isinstance(c, int) or isinstance(c, bool):
                    raise ParseError(f"coefficient {c!r} must be a decimal string")
                m = tuple(e)
                if m in terms:
                    raise ParseError(f"duplicate monomial {list(m)}")
                terms[m] = c
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed polynomial JSON: {exc!r}") from exc
        return cls(variables, terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r}, vars={self._vars})"


# --- parsing ---

def _build(node: ast.AST) -> Polynomial:
    if isinstance(node, ast.Expression):
        return _build(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Polynomial.const(node.value)
    if isinstance(node, ast.Name):
        return Polynomial.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _build(node.operand)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _build(node.left)
            exp = _build(node.right)
            if not exp.is_constant() or exp.constant_term() < 0:
                raise ParseError("exponents must be non-negative integers", 1, node.right.col_offset)
            return base ** exp.constant_term()
        ops = {ast.Add: Polynomial.__add__, ast.Sub: Polynomial.__sub__, ast.Mult: Polynomial.__mul__}
        for kind, fn in ops.items():
            if isinstance(node.op, kind):
                return fn(_build(node.left), _build(node.right))
    raise ParseError(f"unsupported syntax {ast.dump(node)[:40]}", getattr(node, "lineno", 1),
                     getattr(node, "col_offset", None))


def _original_column(src: str, col: int) -> int:
    # each '^' in src became two characters in the Python source
    shifted = 0
    for i, ch in enumerate(src):
        if i + shifted >= col:
            return i
        if ch == "^":
            shifted += 1
    return len(src)


def parse(text: str, variables: Iterable[str] | None = None) -> Polynomial:
    """Parse ``36*t^3 - 54*t^2 + 27*t + m - 3`` style text.

    Accepts ``+ - *``, ``^`` or ``**`` with integer exponents, parentheses and
    integer literals.  Variable order is order of first appearance unless
    ``variables`` is given.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial", 1, 0)
    pysrc = src.replace("^", "**")
    try:
        tree = ast.parse(pysrc, mode="eval")
    except SyntaxError as exc:
        col = _original_column(src, (exc.offset or 1) - 1)
        raise ParseError(f"cannot parse polynomial {src!r}: {exc.msg}", exc.lineno or 1, col) from None
    poly = _build(tree)
    order = []
    for name in re.findall(r"[A-Za-z_]\w*", src):
        if name not in order:
            order.append(name)
    if variables is not None:
        order = list(variables) + [v for v in order if v not in variables]
    return poly.with_variables(order)


# --- function-style aliases ---

def poly_add(a: PolyLike, b: PolyLike) -> Polynomial:
    return Polynomial.coerce(a) + Polynomial.coerce(b)


def poly_mul(a: PolyLike, b: PolyLike) -> Polynomial:
    return Polynomial.coerce(a) * Polynomial.coerce(b)


def poly_pow(a: PolyLike, k: int) -> Polynomial:
    return Polynomial.coerce(a) ** k


def poly_substitute(a: PolyLike, bindings: Mapping[str, PolyLike]) -> Polynomial:
    return Polynomial.coerce(a).substitute(bindings)


def poly_eval(a: PolyLike, point: Mapping[str, int]) -> int:
    return Polynomial.coerce(a).evaluate(point)


def poly_divide_exact(a: PolyLike, b: PolyLike) -> Polynomial:
    return Polynomial.coerce(a).divide_exact(b)


def var(name: str) -> Polynomial:
    return Polynomial.var(name)


def variables(*names: str) -> tuple[Polynomial, ...]:
    return tuple(Polynomial.var(n) for n in names)
