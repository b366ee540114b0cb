import subprocess
import sys

import pytest

from freegog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce(capsys):
    assert run(capsys, "reduce", "a*b*b^-1*a") == (0, "a^2\n", "")


def test_reduce_with_alphabet(capsys):
    code, out, _ = run(capsys, "reduce", "y*x*x^-1", "--alphabet", "x,y")
    assert (code, out) == (0, "y\n")


def test_reduce_syntax_error(capsys):
    code, _, err = run(capsys, "reduce", "a^")
    assert code == 2 and "error" in err


def test_compose(capsys):
    f = "a -> a*b; b -> b; inverse:; a -> a*b^-1; b -> b"
    g = "a -> b; b -> a; inverse:; a -> b; b -> a"
    code, out, _ = run(capsys, "compose", f, g)
    assert code == 0 and out.splitlines()[:2] == ["a -> b*a", "b -> a"]


def test_compose_from_files(capsys, tmp_path):
    p = tmp_path / "f.aut"
    p.write_text("a -> a*b\nb -> b\ninverse:\na -> a*b^-1\nb -> b\n")
    code, out, _ = run(capsys, "compose", str(p), str(p))
    assert code == 0 and out.startswith("a -> a*b^2")


def test_inner(capsys):
    assert run(capsys, "inner", "a -> a; b -> a^-1*b*a; inverse:; a -> a; b -> a*b*a^-1")[:2] == (0, "inner: Ad(a)\n")
    code, out, _ = run(capsys, "inner", "a -> b; b -> a; inverse:; a -> b; b -> a")
    assert (code, out) == (1, "not inner\n")


def test_bad_inverse_is_usage_error(capsys):
    code, _, err = run(capsys, "inner", "a -> a*b; b -> b; inverse:; a -> a; b -> b")
    assert code == 2 and "error" in err


def test_commute(capsys):
    f = "a -> a^-1; b -> b; inverse:; a -> a^-1; b -> b"
    g = "a -> b; b -> a; inverse:; a -> b; b -> a"
    assert run(capsys, "commute", f, f)[0] == 0
    code, out, _ = run(capsys, "commute", f, g)
    assert (code, out) == (1, "do not commute in Out\n")


def test_mu(capsys):
    code, out, _ = run(capsys, "mu", "Psi", "--equivariant", "R")
    lines = out.splitlines()
    assert code == 0 and [ln.split(":")[0] for ln in lines] == ["u", "v", "w"]
    assert "nontrivial" in lines[0] and " trivial" in lines[1]
    assert all("in McCool group" in ln for ln in lines)


def test_mu_refuses_graph_map(capsys):
    assert run(capsys, "mu", "R")[0] == 2


def test_mu_unknown(capsys):
    code, _, err = run(capsys, "mu", "Nope")
    assert code == 2 and "Psi" in err


def test_twist_rank(capsys):
    code, out, _ = run(capsys, "twist-rank", "section4")
    assert code == 0 and out.startswith("rank 2; 300 pairs") and "0 outer-equal collisions" in out


def test_twist_rank_unsupported(capsys):
    assert run(capsys, "twist-rank", "figure2") == (1, "unsupported vertex group type\n", "")


def test_run_filtered_json(capsys):
    code, out, _ = run(capsys, "run", "section4", "--checks", "phi-*", "--json", "--no-timing")
    assert code == 0 and len(out.splitlines()) == 3 and '"millis": null' in out


def test_run_empty_filter(capsys):
    code, out, _ = run(capsys, "run", "section4", "--checks")
    assert code == 0 and out.splitlines()[-1] == "# 0 pass, 0 fail, 0 unverified, 0 unsupported"


def test_run_failing_scenario(capsys, tmp_path):
    p = tmp_path / "f.gog"
    p.write_text("vertex u : a,b\nvertex v : c,d\nedge e : u -> v ; z -> a*b | c\n"
                 "check r : twist-rank 2\n")
    code, out, _ = run(capsys, "run", str(p), "--no-timing")
    assert code == 1 and "FAIL" in out


def test_run_parse_error(capsys, tmp_path):
    p = tmp_path / "f.gog"
    p.write_text("vertex u : a,b\nnonsense\n")
    code, _, err = run(capsys, "run", str(p))
    assert code == 2 and "line 2" in err


def test_run_missing_file(capsys):
    assert run(capsys, "run", "/nonexistent/x.gog")[0] == 2


def test_run_data_resource(capsys):
    code, out, _ = run(capsys, "run", "data:figure2.gog", "--no-timing")
    assert code == 0 and "UNSUPPORTED" in out


def test_byte_identical_reports():
    cmd = [sys.executable, "-m", "freegog", "run", "section4", "--checks", "R-*", "twist-table",
           "--no-timing", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"PASS" in a


def test_g_override(capsys):
    code, out, _ = run(capsys, "run", "section4", "--g", "a", "--checks", "R-valid", "--no-timing")
    assert code == 0 and "g = a," in out
