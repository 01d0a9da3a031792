import io
import json
import re

import pytest

from cubesum.catalog import FAMILY_IDS, FIXED_IDS, four_cubes_sum_pq, five_cubes_residue, mahler, werebrusow
from cubesum.cli import cmd_catalog, cmd_represent, main
from cubesum.poly import parse
from cubesum.representation import Representation
from cubesum.verify import verify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_represent_seven_four_cubes(capsys):
    code, out, _ = run(capsys, "--format", "json", "represent", "7", "--cubes", "4")
    assert code == 0
    assert Representation.from_json(json.loads(out)) == four_cubes_sum_pq(2, -1)


def test_represent_three_five_cubes(capsys):
    code, out, _ = run(capsys, "represent", "3", "--cubes", "5", "--format", "json")
    assert code == 0
    assert Representation.from_json(json.loads(out)) == five_cubes_residue(3, 0)


def test_represent_three_four_cubes_has_no_match(capsys):
    code, _, err = run(capsys, "represent", "3", "--cubes", "4")
    assert code == 3
    assert "p^3 + q^3" in err


def test_represent_then_verify_pipeline(capsys, monkeypatch):
    for n in (-11, 0, 3, 7, 9, 126, 1000):
        for cubes in ("4", "5"):
            code, out, _ = run(capsys, "--format", "json", "represent", str(n), "--cubes", cubes)
            if code == 3:
                continue
            assert code == 0
            monkeypatch.setattr("sys.stdin", io.StringIO(out))
            code, _, _ = run(capsys, "verify", "-")
            assert code == 0


def test_verify_file_and_perturbed_file(capsys, tmp_path):
    good = tmp_path / "w.json"
    good.write_text(werebrusow().dumps())
    code, out, _ = run(capsys, "verify", str(good))
    assert code == 0 and out.startswith("OK")

    data = werebrusow().to_json()
    data["cubes"][0]["terms"][0]["c"] = str(int(data["cubes"][0]["terms"][0]["c"]) + 1)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "first bad term" in out

    code, out, _ = run(capsys, "--format", "json", "verify", str(bad))
    report = json.loads(out)[0]
    assert report["ok"] is False and report["first_bad_term"] is not None


def test_verify_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"target": ')
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    assert "line 1" in err


def test_verify_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_accepts_search_output(capsys, tmp_path):
    out_file = tmp_path / "res.json"
    code, _, _ = run(capsys, "search", "2", "--max-degree", "2", "--coeff-bound", "1", "--out", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(out_file))
    assert code == 0 and out.count("OK") >= 1


def test_derive_four_pq_explain(capsys):
    code, out, _ = run(capsys, "derive", "four_pq", "--explain")
    assert code == 0
    assert out.lstrip().startswith("1.")
    assert "y" in out and "four_pq" in out


def test_derive_five_residue_j4(capsys):
    code, out, _ = run(capsys, "--format", "json", "derive", "five_residue", "--j", "4")
    assert code == 0
    assert Representation.from_json(json.loads(out)) == five_cubes_residue(4)


def test_derive_bad_shift(capsys):
    code, _, _ = run(capsys, "derive", "five_residue", "--j", "1", "--shift", "2")
    assert code == 2


def test_derive_bogus(capsys):
    code, _, err = run(capsys, "derive", "bogus")
    assert code == 2 and "bogus" in err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--format", "json")
    assert code == 0
    entries = json.loads(out)
    fixed = [e for e in entries if not e["symbolic_params"]]
    families = [e for e in entries if e["symbolic_params"]]
    assert len(fixed) >= 9 and len(families) == 5
    assert [e["id"] for e in entries] == sorted(e["id"] for e in entries)
    text = cmd_catalog("list")
    for identity in FIXED_IDS + FAMILY_IDS:
        assert identity in text


def test_catalog_show(capsys):
    code, out, _ = run(capsys, "catalog", "show", "mahler", "--format", "json")
    assert code == 0
    assert Representation.from_json(json.loads(out)) == mahler()
    code, out, _ = run(capsys, "catalog", "show", "four_pq", "--param", "p=2", "--param", "q=1")
    assert code == 0 and "= 9" in out
    code, _, _ = run(capsys, "catalog", "show", "nope")
    assert code == 2
    code, _, _ = run(capsys, "catalog", "show")
    assert code == 2


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "2*t^2 - 4*t - 1", "t=1")
    assert code == 0 and out.strip() == "-3"
    code, _, _ = run(capsys, "eval", "t + m", "t=1")
    assert code == 2
    code, _, _ = run(capsys, "eval", "t +* 1", "t=1")
    assert code == 2


def test_search_command(capsys):
    code, out, _ = run(capsys, "--seed", "5", "search", "2", "--max-degree", "2", "--coeff-bound", "1",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    found = [Representation.from_json(r) for r in data["found"]]
    assert all(verify(r) for r in found)
    code, out, _ = run(capsys, "search", "2", "--max-degree", "2", "--coeff-bound", "1", "--shard", "1/3")
    assert code == 0
    code, _, _ = run(capsys, "search", "1", "--budget", "10")
    assert code == 3


def test_search_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("CUBESUM_BUDGET", "10")
    code, _, err = run(capsys, "search", "1")
    assert code == 3 and "budget" in err.lower()


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["search", "1", "--shard", "5/4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def _from_latex(src):
    src = src.replace(r"\left(", "(").replace(r"\right)", ")")
    src = re.sub(r"_\{(\d+)\}", r"\1", src)
    src = src.replace("{", "(").replace("}", ")")
    return re.sub(r"(?<=[\w)])\s+(?=[\w(])", "*", src)


@pytest.mark.parametrize(
    "identity", ["werebrusow", "mahler", "one_deg6", "two_trivariate", "five_residue", "one_bivariate"]
)
def test_formats_denote_the_same_identity(capsys, identity):
    _, js, _ = run(capsys, "catalog", "show", identity, "--format", "json")
    _, text, _ = run(capsys, "catalog", "show", identity, "--format", "text")
    _, latex, _ = run(capsys, "catalog", "show", identity, "--format", "latex")
    oracle = Representation.from_json(json.loads(js))

    body = text.split(": ", 1)[1].split("    [")[0].strip()
    lhs, rhs = body.rsplit(" = ", 1)
    assert parse(lhs) == oracle.sum_of_cubes()
    assert parse(rhs) == oracle.target

    lhs, rhs = _from_latex(latex.strip()).rsplit(" = ", 1)
    assert parse(lhs) == oracle.sum_of_cubes()
    assert parse(rhs) == oracle.target


def test_cmd_represent_returns_verified():
    rep, text = cmd_represent(10**12 + 5)
    assert verify(rep) and rep.target == 10**12 + 5
    assert "=" in text
