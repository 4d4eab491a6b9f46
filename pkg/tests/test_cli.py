from __future__ import annotations

import json

import pytest

from curkit.cli import EXIT_BUDGET, EXIT_CONSTRUCT, EXIT_FALSE, EXIT_INPUT, EXIT_OK, main
from curkit.geometry import Representation

TRI = "n=3\n0 1\n1 2\n0 2\n"
PATH3 = "n=3\n0 1\n1 2\n"
CLASSIC = "n=3\n-\n0\n1\n0 2\n1 2\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_screen_text(files, capsys):
    code, out, _ = run(capsys, "screen", files("tri.cplx", TRI))
    assert code == EXIT_OK
    assert out.splitlines()[0] == "NOT_CUR: not collapsible"


def test_screen_json(files, capsys):
    code, out, _ = run(capsys, "screen", files("p3.cplx", PATH3), "--json")
    assert code == EXIT_OK
    assert json.loads(out)["kind"] == "CUR"


def test_screen_bad_input(files, capsys):
    code, out, _ = run(capsys, "screen", files("bad.cplx", "n=2\n0 5\n"))
    assert code == EXIT_INPUT
    code, *_ = run(capsys, "screen", files("junk.cplx", "hello\n"))
    assert code == EXIT_INPUT


def test_screen_budget_exhausted(files, capsys):
    strip = "n=6\n0 1 2\n1 2 3\n2 3 4\n3 4 5\n"
    code, out, _ = run(capsys, "screen", files("strip.cplx", strip), "--budget", "1")
    assert code == EXIT_BUDGET
    assert out.startswith("UNKNOWN")


def test_screen_directory(tmp_path, capsys):
    d = tmp_path / "batch"
    d.mkdir()
    (d / "b_tri.cplx").write_text(TRI)
    (d / "a_path.cplx").write_text(PATH3)
    code, out, _ = run(capsys, "screen", str(d))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].endswith("a_path.cplx: CUR: cone with apex 1")
    assert lines[1].endswith("b_tri.cplx: NOT_CUR: not collapsible")
    code, out2, _ = run(capsys, "screen", str(d), "--jobs", "2")
    assert out2 == out


def test_code_screen(files, capsys):
    code, out, _ = run(capsys, "code-screen", files("c.code", CLASSIC))
    assert code == EXIT_OK
    assert out.startswith("NON_CONVEX at {2} (first kind")
    code, out, _ = run(capsys, "code-screen", files("s.code", "n=2\n0\n1\n0 1\n"))
    assert out.startswith("locally perfect within battery")
    code, *_ = run(capsys, "code-screen", files("e.code", ""))
    assert code == EXIT_INPUT


def test_construct_verify_code_of(files, tmp_path, capsys):
    rep = str(tmp_path / "p3.rep")
    code, out, _ = run(capsys, "construct", "path", "3", "-o", rep)
    assert code == EXIT_OK
    code, out, _ = run(capsys, "verify", rep, files("p3.cplx", PATH3))
    assert code == EXIT_OK and out.startswith("true")
    code, out, _ = run(capsys, "verify", rep, files("tri.cplx", TRI))
    assert code == EXIT_FALSE and out.startswith("false")
    code, out, _ = run(capsys, "code-of", rep)
    assert out == "n=3\n0\n1\n2\n0 1\n1 2\n"


def test_construct_kinds(files, tmp_path, capsys):
    s2 = str(tmp_path / "s2.rep")
    assert run(capsys, "construct", "suspension", "2", "-o", s2)[0] == EXIT_OK
    assert Representation.load(s2).dim == 2
    assert run(capsys, "construct", "cone", files("tp.cplx", "n=2\n0\n1\n"))[0] == EXIT_OK
    assert run(capsys, "construct", "generic", files("p3.cplx", PATH3))[0] == EXIT_OK
    assert run(capsys, "construct", "tree", files("p3b.cplx", PATH3))[0] == EXIT_OK
    p2 = str(tmp_path / "p2.rep")
    run(capsys, "construct", "path", "2", "-o", p2)
    code, out, _ = run(capsys, "construct", "building", p2, "0", "0", "-o", str(tmp_path / "b.rep"))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "construct", "join", p2, p2)
    assert code == EXIT_OK


def test_construct_errors(files, tmp_path, capsys):
    assert run(capsys, "construct", "tree", files("tri.cplx", TRI))[0] == EXIT_INPUT
    assert run(capsys, "construct", "path", "0")[0] == EXIT_INPUT
    assert run(capsys, "construct", "path")[0] == EXIT_INPUT


def test_construct_failure_exit(monkeypatch, tmp_path, capsys):
    # a construction whose output does not verify is reported as an internal failure
    import curkit.cli as cli
    from curkit.constructions import two_point_representation
    from curkit.complex import path

    monkeypatch.setattr(cli, "path_representation", lambda m: two_point_representation())
    monkeypatch.setattr(cli, "path", lambda m: path(2))
    assert run(capsys, "construct", "path", "2")[0] == EXIT_CONSTRUCT


def test_dual_collapse_betti(files, capsys):
    p = files("p3.cplx", PATH3)
    code, out, _ = run(capsys, "dual", p)
    assert out == "n=3\n1\n"
    code, out, _ = run(capsys, "collapse", p)
    assert out == "{0} -> {0 1}\n{1} -> {1 2}\n{} -> {2}\n"
    code, out, _ = run(capsys, "collapse", p, "--onto", files("st.cplx", "n=3\n0 1\n"))
    assert out == "{2} -> {1 2}\n"
    code, out, _ = run(capsys, "collapse", files("tri.cplx", TRI), "--json")
    assert json.loads(out) == {"result": "NO"}
    code, out, _ = run(capsys, "betti", files("t2.cplx", TRI), "--field", "GF2")
    assert out.strip() == "0 0 1"


def test_env_budget(files, capsys, monkeypatch):
    monkeypatch.setenv("CUR_BUDGET", "-3")
    assert run(capsys, "screen", files("p3.cplx", PATH3))[0] == EXIT_INPUT


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["screen", "x", "--frobnicate"])
    with pytest.raises(SystemExit):
        main(["screen", "x", "--budget", "0"])
