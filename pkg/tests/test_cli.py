import json

import pytest

from corpus import TEXTS
from triquiver.bqformat import parse_bq, quiver_section, to_dot, write_bq
from triquiver.cli import VerificationReport, main
from triquiver.construction import build_group_pair, pentagon
from triquiver.errors import ParseError
from triquiver.pathalgebra import BoundQuiver
from triquiver.presentations import parse_presentation


@pytest.fixture
def grp(tmp_path):
    def make(name, text=None):
        p = tmp_path / f"{name}.grp"
        p.write_text(text if text is not None else TEXTS[name])
        return str(p)
    return make


@pytest.fixture
def pentagon_files(tmp_path):
    q, ad, adbcd = pentagon()
    paths = []
    for k, ideal in enumerate([(ad,), (adbcd,)], start=1):
        p = tmp_path / f"pentagon_I{k}.bq"
        p.write_text(write_bq(BoundQuiver(q, ideal, "v")))
        paths.append(str(p))
    return paths


def test_bq_round_trip():
    gp = build_group_pair(parse_presentation(TEXTS["S3"]))
    for bq in (gp.bound_J, gp.bound_Jbar):
        text = write_bq(bq)
        back = parse_bq(text)
        assert back == bq
        assert write_bq(back) == text


def test_bq_fractions_and_stationary():
    text = "vertex x\nvertex y\nvertex z\narrow a x y\narrow b y z\narrow c x z\nbase x\nrelations\n3/2*a.b + -1*c\n"
    bq = parse_bq(text)
    assert len(bq.ideal[0]) == 2
    assert parse_bq("vertex x\nbase x\nrelations\n").ideal == ()
    with pytest.raises(ParseError):
        parse_bq("vertex x\nrelations\n1*@x + 1*@y\n")


@pytest.mark.parametrize("text", [
    "vertex x\narrow a x y\n",
    "vertex x\nvertex y\narrow a x y\nrelations\n1*b\n",
    "vertex x\nvertex y\narrow a x y\nrelations\nq*a\n",
    "vertex x\nvertex y\nvertex z\narrow a x y\narrow b y z\nrelations\n1*a + 1*a.b\n",
    "frobnicate\n",
])
def test_bq_parse_errors(text):
    with pytest.raises(ParseError):
        parse_bq(text)


def test_normalize(grp, capsys):
    assert main(["normalize", grp("Z+Z2")]) == 0
    out = capsys.readouterr().out
    assert "n = 10" in out and "[9..10]" in out
    assert main(["normalize", grp("free", "generators: a b\nrelators:\n")]) == 0
    assert "H is empty; m = 2" in capsys.readouterr().out
    assert main(["normalize", grp("bad", "generators: a\nrelators: a*\n")]) == 2


def test_build(grp, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["build", grp("Z+Z2"), "-o", str(out)]) == 0
    j, jbar = (out / "Q_G_J.bq").read_text(), (out / "Q_G_Jbar.bq").read_text()
    head = quiver_section(parse_bq(j).quiver)
    assert j.startswith(head) and jbar.startswith(head)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["n"] == 10 and len(manifest["lassos"]) == 4 and len(manifest["cross_lassos"]) == 6
    assert main(["build", grp("Z+Z2"), "-o", str(out)]) == 1
    assert main(["build", grp("Z+Z2"), "-o", str(out), "--force"]) == 0


def test_build_trivial_group(grp, tmp_path):
    out = tmp_path / "triv"
    assert main(["build", grp("triv", "generators: a\nrelators: a\n"), "-o", str(out)]) == 0
    bq = parse_bq((out / "Q_G_J.bq").read_text())
    assert len(bq.quiver.vertices) == 4 and len(bq.quiver.arrows) == 4


def test_pi1_pentagon(pentagon_files, capsys):
    i1, i2 = pentagon_files
    assert main(["pi1", i1]) == 0
    assert capsys.readouterr().out.splitlines()[1].strip() == "relators:"
    assert main(["pi1", i2, "--verify"]) == 0
    assert "Finite(1)" in capsys.readouterr().out


def test_pi1_names_non_minimal_generator(tmp_path, capsys):
    q, ad, adbcd = pentagon()
    p = tmp_path / "bad.bq"
    p.write_text(write_bq(BoundQuiver(q, (ad, adbcd), "v")))
    assert main(["pi1", str(p)]) == 1
    assert "#1" in capsys.readouterr().err


def test_verify_z_plus_z2(grp, capsys):
    assert main(["verify", grp("Z+Z2"), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["overall"] == "pass"
    ab = next(c for c in rep["checks"] if c["name"] == "abelianization")
    assert "Z + Z2" in ab["detail"]


def test_verify_s3(grp, capsys):
    assert main(["verify", grp("S3")]) == 0
    out = capsys.readouterr().out
    assert "pi_1 Finite(6)" in out and "Finite(1)" in out


def test_verify_inconclusive_exit(grp):
    # enumeration bound too small to finish S3: inconclusive, not failure
    assert main(["verify", grp("S3"), "--max-cosets", "3"]) == 3


def test_theorem_malformed_writes_nothing(grp, tmp_path):
    out = tmp_path / "th"
    assert main(["theorem", grp("Z3"), grp("bad", "generators: a\nrelators: b\n"), "-o", str(out)]) == 2
    assert not out.exists()


def test_theorem_single_matches_build(grp, tmp_path):
    assert main(["theorem", grp("Z3"), "-o", str(tmp_path / "th")]) == 0
    assert main(["build", grp("Z3"), "-o", str(tmp_path / "b")]) == 0
    assert (tmp_path / "th" / "Qhat_I1.bq").read_text() == (tmp_path / "b" / "Q_G_J.bq").read_text()


def test_dot(tmp_path, grp, pentagon_files, capsys):
    main(["build", grp("Z+Z2"), "-o", str(tmp_path / "o")])
    capsys.readouterr()
    assert main(["dot", str(tmp_path / "o" / "Q_G_J.bq")]) == 0
    first = capsys.readouterr().out
    main(["dot", str(tmp_path / "o" / "Q_G_J.bq")])
    assert capsys.readouterr().out == first
    assert first.count("->") == 30
    assert len([ln for ln in first.splitlines() if ln.strip().endswith('";') and "->" not in ln]) == 21
    q, _, _ = pentagon()
    dot = to_dot(q)
    assert dot.count("->") == 4 and dot.count('";\n') == 4


def test_missing_file_is_usage_error():
    assert main(["dot", "/nonexistent/file.bq"]) == 2


def test_report_overall():
    rep = VerificationReport()
    rep.add("a", True)
    rep.add("b", False, inconclusive=True)
    assert (rep.overall, rep.exit_code) == ("inconclusive", 3)
    rep.add("c", False)
    assert (rep.overall, rep.exit_code) == ("fail", 1)
