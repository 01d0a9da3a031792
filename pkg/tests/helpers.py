"""Shared helpers for the test suite."""

from cubesum.poly import parse
from cubesum.representation import Representation


def rep(target, *cubes, variables=None):
    return Representation(parse(str(target)), tuple(parse(c) for c in cubes), variables=variables)


def same_cubes(r, *expected, target=None):
    """True when ``r`` has exactly the expected cube multiset (and target)."""
    want = rep(target if target is not None else r.target.to_text(), *expected)
    return r.cubes == want.cubes and r.target == want.target
