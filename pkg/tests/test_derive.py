import json

import pytest

from cubesum.catalog import (
    five_cubes_residue,
    four_cubes_sum_pq,
    four_cubes_two_diff,
    one_bivariate,
    two_trivariate,
)
from cubesum.derive import (
    DEFAULT_SHIFTS,
    derive,
    derive_five_residue,
    derive_four_even,
    derive_four_pq,
    derive_one_bivariate,
    derive_two_trivariate,
    solve_nonzero_root,
)
from cubesum.errors import InexactDivision, ResidueMismatch, UnknownFamily
from cubesum.poly import parse, variables
from cubesum.verify import verify

t, p, q, m, m1, m2, g, h = variables("t", "p", "q", "m", "m1", "m2", "g", "h")

PAIRS = [
    (derive_four_pq, four_cubes_sum_pq),
    (derive_four_even, four_cubes_two_diff),
    (derive_one_bivariate, one_bivariate),
    (derive_two_trivariate, two_trivariate),
]


@pytest.mark.parametrize("derivation,constructor", PAIRS)
def test_derivation_matches_catalog(derivation, constructor):
    rep, trace = derivation()
    expected = constructor()
    assert rep == expected
    assert rep.cubes == expected.cubes
    assert rep.dumps() == expected.dumps()
    assert verify(rep)


@pytest.mark.parametrize("derivation", [d for d, _ in PAIRS])
def test_replay_is_byte_identical(derivation):
    rep, trace = derivation()
    again = trace.replay()
    assert again.to_json()["cubes"] == rep.to_json()["cubes"]
    assert again.to_json()["target"] == rep.to_json()["target"]
    # a second run produces the same bytes
    assert derivation()[0].dumps() == rep.dumps()


def test_four_pq_trace_records_y():
    rep, trace = derive_four_pq()
    assert trace.solved["y"] == -2 * (p + q) * t**2 - 4 * q * t + p - q
    assert dict(trace.substitutions)["m"] == (p + q) * t + q
    bound = rep.substitute({"p": 2, "q": -1})
    assert bound == four_cubes_sum_pq(2, -1)
    assert bound.target == 7


def test_four_pq_solution_before_parametrization():
    y = variables("y")[0]
    eq = (-y + p) ** 3 + (-y + q) ** 3 + (y + m) ** 3 + (y - m) ** 3 - p**3 - q**3
    num, den = solve_nonzero_root(eq, "y")
    # y = -(2m^2 - p^2 - q^2) / (p + q), up to a common sign
    assert num * (p + q) == -(2 * m**2 - p**2 - q**2) * den


def test_four_even_trace():
    rep, trace = derive_four_even()
    assert trace.solved == {"u": -(q**2), "v": p**2}
    u, v = variables("u", "v")
    total = sum(((p * t + u) ** 3, (-p * t + u) ** 3, (q * t + v) ** 3, (-q * t + v) ** 3), parse("0"))
    by_t = total.coefficients_in("t")
    assert 3 not in by_t and 1 not in by_t
    assert by_t[2] == 6 * (p**2 * u + q**2 * v)
    assert by_t[2].substitute(trace.solved) == 0


def test_one_bivariate_trace():
    rep, trace = derive_one_bivariate()
    assert trace.solved["y"] == parse("4*m1^2*m2^2 - 2*m1^2 + 4*m1*m2 + 1")
    subs = dict(trace.substitutions)
    assert subs["m"] == parse("p*m1 + m2")
    assert subs["p"] == 2 * m2**2 - 1


def test_one_bivariate_y_before_clearing_p():
    pp, y = variables("p", "y")
    eq = (pp * y + 1) ** 3 + (-pp * y + m) ** 3 + (-pp * y - m) ** 3 + (pp * y) ** 3 - 1
    num, den = solve_nonzero_root(eq, "y")
    assert num * pp == (2 * m**2 - 1) * den
    # after m = p*m1 + m2: y = 2p*m1^2 + 4*m1*m2 + (2*m2^2 - 1)/p
    num = num.substitute({"m": pp * m1 + m2})
    assert num * pp == (2 * pp**2 * m1**2 + 4 * pp * m1 * m2 + 2 * m2**2 - 1) * den


def test_two_trivariate_trace():
    rep, trace = derive_two_trivariate()
    assert trace.solved["m"] == -6 * t**2 * (g**3 + h**3)
    pp = variables("p")[0]
    assert (pp + 1) ** 3 + (-pp + 1) ** 3 - 2 == 6 * pp**2


def test_two_trivariate_without_premultiply():
    with pytest.raises(InexactDivision):
        derive_two_trivariate(premultiply=False)


@pytest.mark.parametrize("j", range(6))
def test_five_residue_default_shifts(j):
    rep, trace = derive_five_residue(j)
    assert rep == five_cubes_residue(j)
    assert rep.cubes == five_cubes_residue(j).cubes
    assert trace.replay().cubes == rep.cubes


def test_five_residue_three_trace():
    rep, trace = derive_five_residue(3, 3)
    assert trace.solved["r"] == parse("36*t^3 - 54*t^2 + 27*t + m - 4")


def test_five_residue_nonstandard_default_shifts():
    assert DEFAULT_SHIFTS[4] == -2 and DEFAULT_SHIFTS[5] == -1
    assert derive_five_residue(4, -2)[0] == five_cubes_residue(4)
    assert derive_five_residue(5, -1)[0] == five_cubes_residue(5)
    assert derive_five_residue(4, 4)[0] != five_cubes_residue(4)


def test_five_residue_mismatch():
    with pytest.raises(ResidueMismatch):
        derive_five_residue(1, 2)


@pytest.mark.parametrize("j", range(6))
def test_five_residue_all_shifts(j):
    shifts = [s for s in range(-25, 26) if (s - j) % 6 == 0]
    assert shifts
    for s in shifts:
        rep, _ = derive_five_residue(j, s)
        assert rep.target == 6 * m + j
        assert -6 * t + s in rep.cubes
        assert verify(rep)
    for s in range(-25, 26):
        if (s - j) % 6:
            with pytest.raises(ResidueMismatch):
                derive_five_residue(j, s)


def test_derive_dispatch():
    assert derive("four_pq")[0] == four_cubes_sum_pq()
    assert derive("five_residue", j=4)[0] == five_cubes_residue(4)
    with pytest.raises(UnknownFamily):
        derive("bogus")


def test_explain_is_numbered_and_mentions_solution():
    _, trace = derive_four_pq()
    text = trace.explain()
    lines = [ln for ln in text.splitlines() if ln and ln[0].isdigit()]
    assert lines[0].startswith("1.")
    assert "m = (p + q)*t + q" in text or "m = p*t + q*t + q" in text
    json.dumps(trace.to_json())
