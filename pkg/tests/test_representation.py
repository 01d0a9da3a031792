import json

import pytest

from cubesum.catalog import CATALOG, catalog_fixed, five_cubes_residue, werebrusow
from cubesum.errors import ParseError
from cubesum.representation import Representation

from helpers import rep


def test_cubes_are_canonically_ordered():
    a = rep(2, "1 + 6*t^3", "1 - 6*t^3", "-6*t^2")
    b = rep(2, "-6*t^2", "1 - 6*t^3", "1 + 6*t^3")
    assert a.cubes == b.cubes
    assert a.dumps() == b.dumps()


def test_json_shape():
    data = werebrusow().to_json()
    assert set(data) == {"id", "params", "target", "cubes"}
    assert data["id"] == "werebrusow"
    assert len(data["cubes"]) == 3


@pytest.mark.parametrize("identity", sorted(CATALOG))
def test_json_round_trip_is_byte_stable(identity):
    r = catalog_fixed(identity)
    again = Representation.loads(r.dumps())
    assert again == r
    assert again.dumps() == r.dumps()


def test_doubled_cube_kept_twice():
    r = five_cubes_residue(2, 1)
    assert r.arity == 5
    assert len(set(r.cubes)) == 4


def test_loads_reports_position():
    with pytest.raises(ParseError) as info:
        Representation.loads('{\n  "target": [}')
    assert info.value.line == 2


@pytest.mark.parametrize(
    "data",
    [
        {"cubes": []},
        {"target": {"vars": [], "terms": []}},
        {"target": {"vars": [], "terms": []}, "cubes": "x"},
    ],
)
def test_from_json_rejects_bad_shapes(data):
    with pytest.raises(ParseError):
        Representation.from_json(data)


def test_substitute_and_text():
    r = five_cubes_residue(3).substitute({"m": 0})
    assert r == five_cubes_residue(3, 0)
    assert r.to_text().endswith("= 3")
    assert json.loads(r.dumps())["target"] == {"vars": ["t"], "terms": [{"e": [0], "c": "3"}]}


def test_has_zero_cube():
    assert rep(0, "t", "-t", "0").has_zero_cube()
    assert not werebrusow().has_zero_cube()
