"""Command-line front end and report round-trips."""

import json

import pytest

from wittlab.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, (json.loads(out) if out.strip() else None)


def test_ring_check(capsys):
    status, rep = run(capsys, "ring", "check", "--ring", "ex1")
    assert status == 0
    assert rep["groebner_basis"] == ["x^3+y^3+z^3"]
    assert rep["ring"]["fingerprint"] and rep["version"]


def test_inline_ring_and_ring_file(capsys, tmp_path):
    path = tmp_path / "r.ring"
    path.write_text("prime 3\nvars x y\nmod x^2-y\n")
    status, rep = run(capsys, "ring", "check", "--ring", str(path))
    assert status == 0 and rep["ring"]["prime"] == 3
    status, rep2 = run(capsys, "ring", "check", "--ring", "prime 3; vars x y; mod x^2-y")
    assert rep2["ring"]["fingerprint"] == rep["ring"]["fingerprint"]


def test_witt_eval(capsys):
    _, rep = run(capsys, "witt", "eval", "--ring", "ex3", "--n", "2", "[x]", "+", "[y]")
    assert rep["value"] == "(x+y; x*y)"
    _, rep = run(capsys, "witt", "eval", "--ring", "ex3", "--n", "2", "(1; 0)", "--frobenius", "1",
                 "--verschiebung")
    assert rep["value"] == "(0; 1; 0)"


def test_ideal_member(capsys):
    _, rep = run(capsys, "ideal", "member", "--ring", "ex3", "--ideal", "[x],[y]",
                 "--elem", "(x*y; x^2)")
    assert rep["verdict"] == "member" and rep["certificate"]["kind"] == "membership"
    _, rep = run(capsys, "ideal", "member", "--ring", "ex3", "--ideal", "([x],[y])^2",
                 "--elem", "(x; 0)")
    assert rep["verdict"] == "nonmember" and rep["layer"] == 0


def test_tc_commands(capsys):
    _, rep = run(capsys, "tc", "certify", "--ring", "ex1", "--alpha", "(z^2; 0)",
                 "--ideal", "[x],[y]", "--E", "3")
    assert rep["verdict"] == "certified" and rep["certificate"]["multiplier"] == "x"
    assert rep["bounds"] == {"E": 3, "D": 4, "D_lift": 4, "M": 8, "n": 2}
    _, rep = run(capsys, "tc", "refute", "--ring", "ex1", "--z", "z", "--ideal", "[x],[y]",
                 "--E", "4", "--cand-deg", "6")
    assert rep["verdict"] == "refuted" and len(rep["failures"]) == 84
    _, rep = run(capsys, "tc", "lift-search", "--ring", "ex2", "--z", "z",
                 "--ideal", "[x],[y]", "--E", "2")
    assert rep["verdict"] == "certified" and rep["lift"] == "(z; 0)"


def test_bs_and_verify(capsys, tmp_path):
    out = tmp_path / "bs.json"
    status, _ = run(capsys, "bs", "--ring", "ex1", "--a", "z^2", "--ideal", "[x],[y]",
                    "--E", "3", "--out", str(out))
    assert status == 0
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "certified" and "--out" not in rep["command"]
    status, v = run(capsys, "verify", str(out))
    assert status == 0 and v["certificates_checked"] == 2


def test_lc_commands(capsys):
    _, rep = run(capsys, "lc", "class", "--ring", "ex3", "--sop", "x,y", "--rep", "(x; 0)")
    assert rep["verdict"] == "zero" and rep["certificate"]["kind"] == "membership"
    _, rep = run(capsys, "lc", "torsion", "--ring", "ex3", "--sop", "x,y", "--rep", "(1; x)",
                 "--ideal", "[x],[y],[x+y]")
    assert rep["verdict"] == "not_torsion_up_to_bound"
    assert [a["verdict"] for a in rep["actions"]] == ["zero", "zero", "nonzero_up_to_6"]


def test_qtc_command(capsys):
    _, rep = run(capsys, "qtc", "--ring", "ex3", "--sop", "x,y", "--n", "2", "--vmax", "1",
                 "--E", "3", "--cand-deg-z", "2")
    assert rep["verdict"] == "no_candidate_certified" and rep["bounds"]["v_max"] == 1


@pytest.mark.parametrize("which", ["1", "3"])
def test_examples_deterministic_and_verifiable(capsys, tmp_path, which):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["examples", "run", which, "--out", str(a)]) == 0
    assert main(["examples", "run", which, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["verify", str(a)]) == 0
    capsys.readouterr()


def test_verify_rejects_tampering_and_stale_fingerprint(capsys, tmp_path):
    path = tmp_path / "r.json"
    main(["tc", "certify", "--ring", "ex1", "--alpha", "(z^2; 0)", "--ideal", "[x],[y]",
          "--E", "3", "--out", str(path)])
    rep = json.loads(path.read_text())

    # a report from another library version with the same ring still verifies
    rep["version"] = "9.9.9"
    path.write_text(json.dumps(rep))
    assert main(["verify", str(path)]) == 0

    bad = json.loads(json.dumps(rep))
    layer = bad["certificate"]["frobenius_layers"][1][0]
    layer[0] = layer[0] + "+x^9"
    path.write_text(json.dumps(bad))
    assert main(["verify", str(path)]) == 1

    stale = json.loads(json.dumps(rep))
    stale["ring"]["mods"] = ["x^3+y^3+z^4"]
    path.write_text(json.dumps(stale))
    assert main(["verify", str(path)]) == 2

    path.write_text("{not json")
    assert main(["verify", str(path)]) == 2
    capsys.readouterr()


def test_input_errors_exit_2(capsys, monkeypatch):
    assert main(["ring", "check", "--ring", "prime 4; vars x"]) == 2
    assert main(["ideal", "member", "--ring", "ex3", "--ideal", "x,y", "--elem", "(x; 0)"]) == 2
    monkeypatch.setenv("WITTLAB_THREADS", "0")
    assert main(["ring", "check", "--ring", "ex1"]) == 2
    monkeypatch.setenv("WITTLAB_THREADS", "4")
    assert main(["ring", "check", "--ring", "ex1"]) == 0
    capsys.readouterr()
