from importlib import resources

import pytest

from freegog.harness import resolve_scenario, run_scenario
from freegog.scenario import ScenarioError, parse_scenario, validation_errors
from freegog.section4 import FIGURE2_TEXT, scenario_text

HEAD = """\
vertex u : a,b
vertex v : c,d
edge e : u -> v ; z -> a*b | c
base v
"""


def test_data_files_match_generators():
    data = resources.files("freegog").joinpath("data")
    assert data.joinpath("section4.gog").read_text(encoding="utf-8") == scenario_text()
    assert data.joinpath("figure2.gog").read_text(encoding="utf-8") == FIGURE2_TEXT


def test_section4_validates():
    sc = parse_scenario(scenario_text())
    assert validation_errors(sc) == []
    assert sc.base == "v" and sc.grids["r"] == tuple(range(-3, 4))
    assert set(sc.gogauts) >= {"R", "R2", "D11", "Psi", "Psi_mixed", "R_bad"}
    assert sc.twists["D11"].vector() == (1, 1)


def test_minimal():
    sc = parse_scenario(HEAD + "check r : twist-rank 1\n")
    assert [c.name for c in sc.checks] == ["r"]
    assert run_scenario(sc).counts()["pass"] == 1


@pytest.mark.parametrize("text,line,msg", [
    ("vertex u : a,b\nfrobnicate\n", 2, "cannot parse"),
    (HEAD + "check x : teleport R\n", 5, "unknown check kind"),
    (HEAD + "check x : valid\n", 5, "takes 1 arguments"),
    (HEAD + "check x : valid R\n", 5, "R"),
    (HEAD + "gogaut R\n  delta e = c\n", 5, "missing 'end'"),
    ("vertex u : a,b\nedge e : u -> w ; z -> a | a\n", 2, "unknown vertex"),
    ("vertex u : a,b\nvertex v : c,d\nedge e : u -> v ; z -> a*a | c\n", 3, "proper power"),
    (HEAD + "aut f\n  a -> b\n  b -> a\nend\n", 5, "inverse"),
    (HEAD + "base q\n", 5, "unknown base"),
    (HEAD + "grid r = 3..1\n", 5, "empty grid"),
])
def test_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    assert info.value.line == line
    assert f"line {line}:" in str(info.value) and msg in str(info.value)


def test_invalid_gogaut_reported():
    text = HEAD + "gogaut B\n  delta e = d\nend\ncheck b : valid B\n"
    sc = parse_scenario(text)
    assert validation_errors(sc) and "B" in validation_errors(sc)[0]
    with pytest.raises(ScenarioError):
        run_scenario(sc)


def test_invalid_gogaut_allowed_when_expected():
    text = HEAD + "gogaut B\n  delta e = d\nend\ncheck b : invalid B\n"
    rep = run_scenario(parse_scenario(text))
    assert rep.counts()["pass"] == 1


def test_expect_fail_inverts():
    text = HEAD + "gogaut T\n  twist e = 1\nend\ncheck t : mu-trivial T expect fail\n"
    rep = run_scenario(parse_scenario(text))
    assert rep.failed and "expected not to hold" in rep.failed[0].witness


def test_twist_block_is_exclusive():
    with pytest.raises(ScenarioError):
        parse_scenario(HEAD + "gogaut T\n  twist e = 1\n  delta e = c\nend\n")


def test_nonfree_is_data_only():
    sc = parse_scenario(FIGURE2_TEXT)
    assert not sc.supported
    rep = run_scenario(sc)
    assert [r.status for r in rep.results] == ["unsupported"]
    assert rep.ok


def test_nonfree_cannot_mix():
    with pytest.raises(ScenarioError):
        parse_scenario(HEAD + "nonfree vertex x : <t>\n")


def test_generic_run_of_section4():
    rep = run_scenario(resolve_scenario("data:section4.gog"))
    assert rep.ok and rep.counts()["pass"] == len(rep.results) == 15


def test_empty_filter_is_noop():
    rep = run_scenario(resolve_scenario("section4"), checks=[])
    assert rep.results == []


def test_filter_globs():
    rep = run_scenario(resolve_scenario("section4"), checks=["R-*"])
    assert {r.name for r in rep.results} == {
        "R-valid", "R-reversed-valid", "R-bad-invalid", "R-induces-phi",
        "R-reversed-not-phi", "R-root", "R-not-root-of-D22", "R-lengths"}


def test_g_override_only_for_builtin(tmp_path):
    p = tmp_path / "s.gog"
    p.write_text(HEAD)
    with pytest.raises(ValueError):
        resolve_scenario(str(p), g="a")
    assert resolve_scenario(str(p)).base == "v"


def test_load_from_file(tmp_path):
    p = tmp_path / "s.gog"
    p.write_text(scenario_text("a"))
    sc = resolve_scenario(str(p))
    assert run_scenario(sc).ok
