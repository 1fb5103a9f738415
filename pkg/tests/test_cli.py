
import pytest

from nclrobots.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from nclrobots.formats import serialize_graph, serialize_orientation
from nclrobots.generate import k4
from nclrobots.ncl import enumerate_valid_orientations


@pytest.fixture()
def files(tmp_path):
    g = k4("AAAO")
    (tmp_path / "g.ncl").write_text(serialize_graph(g))
    orients = list(enumerate_valid_orientations(g))
    (tmp_path / "a.orient").write_text(serialize_orientation(orients[0]))
    (tmp_path / "b.orient").write_text(serialize_orientation(orients[-1]))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(files, capsys):
    assert run(capsys, "validate", files / "g.ncl")[:2] == (EXIT_OK, "valid\n")
    (files / "bad.ncl").write_text("format ncl-graph v1\nvertex a OR\nvertex b OR\nedge e0 a b 2\n")
    assert run(capsys, "validate", files / "bad.ncl")[0] == EXIT_FAIL


def test_usage_errors(files, capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "validate", files / "missing.ncl")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--problem", "f2f", files / "g.ncl")[0] == EXIT_USAGE
    (files / "junk.ncl").write_text("format ncl-graph v1\nvertex a\n")
    code, _, err = run(capsys, "validate", files / "junk.ncl")
    assert code == EXIT_USAGE and "line 2" in err


def test_reduce_then_solve_matches_ncl(files, capsys):
    code, ncl, _ = run(capsys, "solve-ncl", "--problem", "f2f", files / "g.ncl", files / "a.orient", files / "b.orient")
    assert code == EXIT_OK
    code, _, _ = run(capsys, "reduce", "--problem", "f2f", "--variant", "m2m", files / "g.ncl",
                     files / "a.orient", files / "b.orient", "-o", files / "q.mp")
    assert code == EXIT_OK
    for variant in ("m2m", "labeled"):
        code, mp, _ = run(capsys, "solve-mp", "--variant", variant, "--witness", files / "q.mp")
        assert code == EXIT_OK and mp.split()[0] == ncl.split()[0]
    assert run(capsys, "solve-mp", "--variant", "s2s", files / "q.mp")[0] == EXIT_USAGE


def test_small_cap_is_inconclusive(files, capsys):
    run(capsys, "reduce", "--problem", "e2e", files / "g.ncl", "e0", "v0", "e5", "v3", "-o", files / "e.mp")
    code, out, _ = run(capsys, "solve-mp", "--variant", "s2s", "--cap", "3", files / "e.mp")
    assert code == EXIT_OK and out.strip() == "INCONCLUSIVE"


def test_embed_render_and_crosscheck(files, capsys):
    assert run(capsys, "embed", files / "g.ncl", "-o", files / "g.emb")[0] == EXIT_OK
    assert (files / "g.emb").read_text().startswith("format grid-embedding v1")
    run(capsys, "reduce", "--problem", "f2e", files / "g.ncl", files / "a.orient", "e1", "-o", files / "f.mp")
    assert run(capsys, "render", files / "f.mp", "-o", files / "f.svg")[0] == EXIT_OK
    assert "<svg" in (files / "f.svg").read_text()
    code, out, _ = run(capsys, "crosscheck", "--trials", "3", files / "g.ncl")
    assert code == EXIT_OK and "disagree=0" in out


def test_verify_gadgets_connector(capsys):
    code, out, _ = run(capsys, "verify-gadgets", "--kind", "CONNECTOR")
    assert code == EXIT_OK and out.startswith("CONNECTOR: ok")
