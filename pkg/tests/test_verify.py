import random

import pytest

from cubesum.catalog import CATALOG, build, catalog_fixed, five_cubes_residue, mahler, werebrusow
from cubesum.errors import UnboundVariable
from cubesum.poly import Polynomial
from cubesum.representation import Representation
from cubesum.verify import residual, verifier_check, verifier_spot_check, verify

from helpers import rep


def test_werebrusow_ok():
    report = verifier_check(werebrusow())
    assert report.ok and report.residual.is_zero() and report.first_bad_term is None


def test_trivial_cancellation():
    assert verifier_check(rep(1, "t", "-t", "1")).ok


def test_off_by_one_target():
    report = verifier_check(rep(2, "t", "-t", "1"))
    assert not report.ok
    assert report.residual == -1
    assert report.first_bad_term == ((0,), -1)
    assert report.describe_bad_term() == "-1"


def test_first_bad_term_is_grlex_least():
    r = rep(0, "t^2 + 1")
    report = verifier_check(r)
    # residual t^6 + 3t^4 + 3t^2 + 1; the least term is the constant
    assert report.first_bad_term == ((0,), 1)
    r = rep(1, "t^2 + 1")
    assert verifier_check(r).first_bad_term == ((2,), 3)


def test_spot_check_examples():
    r = five_cubes_residue(3, 0)
    report = verifier_spot_check(r, [{"t": v} for v in range(-2, 3)])
    assert report.ok and report.residual is None
    assert [s.lhs for s in report.numeric_spot_checks] == [3] * 5
    assert verifier_spot_check(r, []).ok
    big = verifier_spot_check(mahler(), [{"t": 10**10}])
    assert big.ok and big.numeric_spot_checks[0].lhs == 1


def test_spot_check_unbound():
    with pytest.raises(UnboundVariable):
        verifier_spot_check(five_cubes_residue(3), [{"t": 1}])


def test_spot_check_detects_bad_identity():
    report = verifier_spot_check(rep(2, "t", "-t", "1"), [{"t": 0}, {"t": 5}])
    assert not report.ok
    assert all(not s.ok for s in report.numeric_spot_checks)


def _random_poly(rng, variables, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * len(variables)
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(len(variables))] += 1
        terms[tuple(e)] = rng.choice([-1, 1]) * rng.randint(1, 50)
    return Polynomial(variables, terms)


def _random_instance(rng):
    identity = rng.choice(sorted(CATALOG))
    entry = CATALOG[identity]
    if entry.is_family and rng.random() < 0.6:
        params = {}
        for name in entry.symbolic_params:
            params[name] = rng.randint(0, 5) if name == "j" else rng.randint(-5, 5)
        return build(identity, **params)
    return catalog_fixed(identity)


def _perturb(rng, r):
    variables = r.variables or ("t",)
    while True:
        delta = _random_poly(rng, variables)
        if not delta.is_zero():
            break
    k = rng.randrange(r.arity)
    cubes = list(r.cubes)
    cubes[k] = cubes[k] + delta
    return Representation(r.target, tuple(cubes), variables=r.variables)


def test_planted_faults_are_all_rejected():
    rng = random.Random(20240601)
    accepted = 0
    for _ in range(1000):
        bad = _perturb(rng, _random_instance(rng))
        if verifier_check(bad).ok:
            accepted += 1
    assert accepted == 0


def test_check_agrees_with_spot_checks():
    rng = random.Random(7)
    for identity in sorted(CATALOG):
        r = catalog_fixed(identity)
        used = sorted(set().union(*(c.used_variables() for c in r.cubes), r.target.used_variables()))
        for _ in range(20):
            points = [{v: rng.randint(-10, 10) for v in used} for _ in range(3)]
            assert verifier_spot_check(r, points).ok


def test_spot_checks_catch_planted_faults_mostly():
    # evaluation is an independent route: a fault it sees must also be seen symbolically
    rng = random.Random(11)
    for _ in range(200):
        bad = _perturb(rng, _random_instance(rng))
        used = sorted(set().union(*(c.used_variables() for c in bad.cubes), bad.target.used_variables()))
        points = [{v: rng.randint(-10, 10) for v in used} for _ in range(5)]
        if not verifier_spot_check(bad, points).ok:
            assert not verifier_check(bad).ok


@pytest.mark.parametrize("identity", sorted(CATALOG))
def test_pow_and_mul_residuals_agree(identity):
    r = catalog_fixed(identity)
    assert residual(r, "pow") == residual(r, "mul")
    s = Representation(r.target + 1, r.cubes, variables=r.variables)
    assert residual(s, "pow") == residual(s, "mul") == -1


def test_pow_and_mul_residuals_agree_on_random_faults():
    rng = random.Random(3)
    for _ in range(100):
        bad = _perturb(rng, _random_instance(rng))
        a, b = residual(bad, "pow"), residual(bad, "mul")
        assert a == b and a.terms == b.terms


def test_unknown_method():
    with pytest.raises(ValueError):
        residual(werebrusow(), "fft")


def test_report_json():
    data = verifier_check(rep(2, "t", "-t", "1")).to_json()
    assert data["ok"] is False
    assert data["first_bad_term"] == {"e": [0], "c": "-1"}
    assert Polynomial.from_json(data["residual"]) == -1
    assert verify(werebrusow())
