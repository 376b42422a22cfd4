import json
import subprocess
import sys

import pytest

from cgtools.bsgs import PermGroup
from cgtools.cli import emit_json, run
from cgtools.coset_table import CosetTable
from cgtools.words import parse_presentation
from corpus import perm_group

MENNICKE = "<x,y,z|x^y*x^-3,y^z*y^-2,z^x*z^-4>"
S3 = "<a,b | a^2, b^3, (a*b)^2>"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def m11_file(tmp_path):
    path = tmp_path / "m11.perms"
    path.write_text(perm_group("M11").to_text())
    return str(path)


def test_enumerate_mennicke_over_x(capsys):
    code, out, _ = call(capsys, "enumerate", "--presentation", MENNICKE, "--subgroup", "x", "--json")
    assert code == 0
    rec = json.loads(out)
    assert list(rec) == ["index", "max_active", "total_defined", "strategy"]
    assert rec["index"] == 105 and rec["strategy"] == "felsch"
    code, out, _ = call(capsys, "enumerate", "--presentation", MENNICKE, "--subgroup", "x",
                        "--strategy", "hlt")
    assert code == 0 and "index 105" in out.splitlines()


def test_enumerate_table_round_trips(capsys):
    code, out, _ = call(capsys, "enumerate", "--presentation", S3, "--table", "--json")
    rec = json.loads(out)
    t = CosetTable.from_dump(rec["table"])
    assert len(t) == 6 and t.is_standard()
    assert CosetTable.from_dump(t.dump()) == t


def test_order(capsys):
    code, out, _ = call(capsys, "order", "--presentation", "<x|x^5>")
    assert (code, out) == (0, "5\n")
    code, out, _ = call(capsys, "order", "--presentation", S3, "--json")
    assert out == '{"order":"6"}\n'


def test_limit_exit_code_and_stats(capsys):
    code, out, err = call(capsys, "enumerate", "--presentation", "<a,b|[a,b]>",
                          "--max-cosets", "100")
    assert code == 1
    assert "index none" in out and "total_defined 100" in out
    assert err.startswith("error:")
    code, out, _ = call(capsys, "order", "--presentation", "<a,b|[a,b]>", "--max-cosets", "50",
                        "--json")
    assert code == 1 and json.loads(out) == {"order": None}


@pytest.mark.parametrize("argv", [
    ["order", "--presentation", "<a|a^2"],
    ["order"],
    ["bogus"],
    ["lowindex", "--presentation", S3],
    ["enumerate", "--presentation", S3, "--max-cosets", "0"],
    ["enumerate", "--presentation", S3, "--strategy", "fast"],
    ["enumerate", "--presentation", S3, "--subgroup", "q"],
    ["member", "--group", "(1,2)", "--perm", "(1,9)"],
    ["blocks", "--group", "(1,2)(3,4)", "--pair", "1"],
    ["abelian", "--matrix", "2 2 1 2 3"],
    ["setstab", "--group", "(1,2,3)", "--set", "x"],
    ["bsgs", "--group", "@/nonexistent/file"],
])
def test_input_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_lowindex(capsys):
    code, out, _ = call(capsys, "lowindex", "--presentation", S3, "--index", "3", "--json")
    rec = json.loads(out)
    assert sorted(s["index"] for s in rec["subgroups"]) == [1, 2, 3, 3, 3]
    code, out, _ = call(capsys, "lowindex", "--presentation", S3, "--index", "3", "--classes",
                        "--probe", "--json")
    rec = json.loads(out)
    assert sorted(s["index"] for s in rec["subgroups"]) == [1, 2, 3]
    assert all(s["abelian"]["free_rank"] == 0 for s in rec["subgroups"])
    code, out, _ = call(capsys, "lowindex", "--presentation", "<a,b|a^2>", "--index", "2", "--probe")
    assert "infinite" in out


def test_rewrite_and_simplify(capsys):
    code, out, _ = call(capsys, "rewrite", "--presentation", "<a|a^4>", "--subgroup", "a^2",
                        "--simplify")
    q = parse_presentation(out)
    assert q.rank == 1 and [len(r.letters) for r in q.relators] == [2]
    code, out, _ = call(capsys, "simplify", "--presentation", "<a,b | b, a^2>", "--json")
    assert json.loads(out) == {"generators": ["a"], "relators": ["a^2"]}


def test_abelian(capsys):
    code, out, _ = call(capsys, "abelian", "--presentation", "<a,b | a*b*a*b^-1>", "--json")
    assert json.loads(out) == {"torsion": [2], "free_rank": 1}
    code, out, _ = call(capsys, "abelian", "--matrix", "2 2\n2 4\n6 8", "--json")
    assert json.loads(out) == {"diagonal": [2, 4], "rank": 2}


def test_bsgs_from_file(capsys, m11_file):
    for src in (m11_file, "@" + m11_file):
        code, out, _ = call(capsys, "bsgs", "--group", src)
        assert code == 0 and "order 7920" in out.splitlines()
    code, out, _ = call(capsys, "bsgs", "--group", m11_file, "--json", "--seed", "3")
    rec = json.loads(out)
    assert rec["order"] == "7920" and rec["orbit_lengths"] == [11, 10, 9, 8]


def test_permutation_commands(capsys):
    s4 = "(1,2);(1,2,3,4)"
    assert call(capsys, "member", "--group", s4, "--perm", "(1,3)")[1] == "yes\n"
    a4 = "(1,2,3);(2,3,4)"
    assert call(capsys, "member", "--group", a4, "--perm", "(1,3)")[1] == "no\n"
    assert call(capsys, "blocks", "--group", "(1,2,3,4);(1,3)", "--pair", "1,3")[1] == "{1,3} {2,4}\n"
    assert call(capsys, "blocks", "--group", "(1,2,3,4,5);(1,2,3)")[1] == "primitive yes\n"
    _, out, _ = call(capsys, "closure", "--group", s4, "--subgroup", "(1,2,3)", "--json")
    assert json.loads(out)["order"] == "12"
    _, out, _ = call(capsys, "series", "--group", s4, "--json")
    rec = json.loads(out)
    assert rec["derived"] == ["24", "12", "4", "1"]
    assert (rec["soluble"], rec["nilpotent"], rec["perfect"]) == (True, False, False)
    _, out, _ = call(capsys, "centralizer", "--group", s4, "--perm", "(1,2)(3,4)", "--json")
    assert json.loads(out)["order"] == "8"
    _, out, _ = call(capsys, "setstab", "--group", s4, "--set", "1,2")
    assert out.splitlines()[0] == "order 4"
    _, out, _ = call(capsys, "conjugate", "--group", a4, "--perm", "(1,2,3)", "--target", "(1,3,2)",
                     "--json")
    assert json.loads(out) == {"conjugate": False, "witness": None}
    _, out, _ = call(capsys, "conjugate", "--group", s4, "--perm", "(1,2)", "--target", "(3,4)")
    assert out.startswith("yes ")


def test_group_text_round_trip(capsys):
    g = perm_group("PSL27")
    assert PermGroup.from_text(g.to_text()).generators == g.generators


def test_emit_json():
    assert emit_json({"subgroups": []}) == '{"subgroups":[]}'
    assert emit_json({"order": "210"}) == '{"order":"210"}'
    assert emit_json({"n": 2**60, "m": 5}) == '{"n":"%d","m":5}' % 2**60


def test_determinism(capsys):
    argv = ["bsgs", "--group", "(1,2,3,4,5);(1,2)", "--seed", "11", "--table", "--json"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first
    argv = ["lowindex", "--presentation", S3, "--index", "6", "--table"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cgtools", "order", "--presentation", "<x|x^5>"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "5\n"
    proc = subprocess.run([sys.executable, "-m", "cgtools", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "enumerate" in proc.stdout
