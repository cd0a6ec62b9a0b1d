import json

from qtwo import formal_groups
from qtwo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cobar_json(capsys):
    code, out, _ = run(capsys, "cobar", "--smax", "2", "--wmin", "0", "--wmax", "8")
    rows = json.loads(out)
    assert code == 0 and {"s": 1, "t": 4, "rank": 1, "names": ["α"]} in rows


def test_anss_json_and_svg(capsys):
    code, out, _ = run(capsys, "anss", "--page", "2", "--stems", "0..20")
    assert code == 0 and json.loads(out)["page"] == 2
    code, out, _ = run(capsys, "anss", "--page", "inf", "--stems", "-5..150", "--format", "svg")
    assert code == 0 and out.startswith("<svg")


def test_fgl(capsys):
    code, out, _ = run(capsys, "fgl", "--b4", "-2", "--m", "3", "--prec", "11", "--mod", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"] == [{"deg": 9, "value": "-1"}]
    code, _, err = run(capsys, "fgl", "--prec", str(formal_groups.MAX_FGL_PREC + 1))
    assert code == 2 and "prec" in err


def test_curve_commands(capsys):
    code, out, _ = run(capsys, "curve", "quotient", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["q2"] == "-2 * q2" and data["q4"] == "1 * q2^2 + -4 * q4"
    code, out, _ = run(capsys, "curve", "maps", "--format", "json")
    assert code == 0 and all(json.loads(out)["relations"].values())
    code, out, _ = run(capsys, "curve", "relations", "--ext-degree", "4")
    assert code == 0 and "pass  F^2 = [-3]" in out
    code, _, _ = run(capsys, "curve", "relations", "--ext-degree", "3")
    assert code == 2


def test_patterns(capsys):
    code, out, _ = run(capsys, "patterns", "--target", "sphere", "--stems", "-2..2")
    data = json.loads(out)
    assert code == 0 and data["target"] == "Sphere" and [r["stem"] for r in data["rows"]] == [-2, -1, 0, 1, 2]


def test_quat(capsys):
    code, out, _ = run(capsys, "quat", "verify")
    assert code == 0 and "(expected fail)" in out
    code, out, _ = run(capsys, "quat", "subgroup", "--gens", "t,sigma", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 8 and data["stable"] and len(data["table"]) == 8


def test_groupring(capsys):
    code, out, _ = run(capsys, "groupring", "--p", "3", "--k", "2")
    assert code == 0 and out.strip() == "9"
    code, _, _ = run(capsys, "groupring", "--p", "6")
    assert code == 2


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all", "--seed", "0x5EED")
    data = json.loads(out)
    assert code == 0 and data["all_as_expected"] and len(data["checks"]) == 13


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "patterns", "--format", "svg")[0] == 2
    assert run(capsys, "anss", "--stems", "5")[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "groupring", "--out", str(tmp_path / "missing" / "x.txt"))[0] == 2
    target = tmp_path / "g.txt"
    assert run(capsys, "groupring", "--out", str(target))[0] == 0
    assert target.read_text() == "3\n"
