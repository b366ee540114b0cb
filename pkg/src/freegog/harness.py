"""Running scenario files and the built-in corpus."""
from __future__ import annotations

import fnmatch
import random
from importlib import resources
from typing import Optional, Sequence

from .automorphisms import inner_witness, outer_commutes, outer_equal
from .gogaut import (induced_aut, is_root_of_dehn_twist, mu, twist_kernel_rank,
                     validate)
from .graph import random_loop, translation_length
from .report import CheckResult, Report, timed
from .scenario import Scenario, ScenarioError, load_scenario, parse_scenario, validation_errors

__all__ = ["run_scenario", "resolve_scenario", "BUILTIN", "SAMPLE_LOOPS"]

BUILTIN = ("section4", "figure2")
SAMPLE_LOOPS = 200


def resolve_scenario(name: str, g: Optional[str] = None) -> Scenario:
    """A scenario by file path or built-in name."""
    if name == "section4":
        from .section4 import scenario_text
        return parse_scenario(scenario_text(g or "a*b"))
    if name == "figure2":
        from .section4 import FIGURE2_TEXT
        return parse_scenario(FIGURE2_TEXT)
    if g is not None:
        raise ValueError("--g applies only to the built-in section4 scenario")
    if name.startswith("data:"):
        text = resources.files("freegog").joinpath("data", name[5:]).read_text(encoding="utf-8")
        return parse_scenario(text)
    return load_scenario(name)


def _outcome(sc: Scenario, kind: str, args: tuple, seed: int) -> tuple:
    """``(held, witness)`` for one declarative check."""
    A, G = sc.auts, sc.gogauts
    base = sc.base
    if kind == "valid":
        d = validate(G[args[0]])
        return not d, "; ".join(d) or "all edge equations hold"
    if kind == "invalid":
        d = validate(G[args[0]])
        return bool(d), "; ".join(d) or "all edge equations hold"
    if kind in ("induces", "induces-outer"):
        f = induced_aut(G[args[0]], base)
        want = A[args[1]]
        if f.domain != want.domain:
            return False, f"induced map is over {f.domain}, {args[1]} over {want.domain}"
        held = f == want if kind == "induces" else outer_equal(f, want)
        return held, repr(f)
    if kind == "root":
        held = is_root_of_dehn_twist(G[args[0]], sc.twists[args[1]], int(args[2]), base)
        return held, f"{args[0]}^{args[2]} vs {sc.twists[args[1]]!r}"
    if kind == "commute":
        return outer_commutes(A[args[0]], A[args[1]]), ""
    if kind == "equal":
        return A[args[0]] == A[args[1]], ""
    if kind == "outer-equal":
        return outer_equal(A[args[0]], A[args[1]]), ""
    if kind == "inner":
        w = inner_witness(A[args[0]])
        return w is not None, f"Ad({w})" if w is not None else "no conjugator"
    if kind == "twist-rank":
        tr = twist_kernel_rank(sc.gog, base)
        return tr.rank == int(args[0]) and tr.certified, f"rank {tr.rank}, {tr.pairs_checked} pairs, {len(tr.collisions)} collisions"
    if kind == "mu-trivial":
        ents = mu(G[args[0]])
        return all(e.trivial for e in ents), "; ".join(e.line() for e in ents)
    if kind == "length-invariant":
        a = G[args[0]]
        if a.vertex_map[base] != base:
            raise ValueError(f"{args[0]} moves the base vertex")
        rng = random.Random(seed)
        for _ in range(SAMPLE_LOOPS):
            p = random_loop(sc.gog, base, 12, 3, rng)
            if translation_length(a(p)) != translation_length(p):
                return False, f"length changes on {p}"
        return True, f"{SAMPLE_LOOPS} loops"
    raise ValueError(f"unknown check kind {kind}")


def run_scenario(sc: Scenario, checks: Optional[Sequence[str]] = None, seed: int = 0,
                 title: str = "scenario") -> Report:
    """Execute the declared checks; ``checks`` holds glob patterns, ``None`` means all."""
    report = Report(title)
    selected = [c for c in sc.checks
                if checks is None or any(fnmatch.fnmatchcase(c.name, p) for p in checks)]
    if not sc.supported:
        for c in selected:
            report.results.append(CheckResult(c.name, f"scenario line {c.line}", "unsupported",
                                              "unsupported vertex group type", 0.0))
        return report
    errs = validation_errors(sc)
    if errs:
        raise ScenarioError(0, "validation failed: " + "; ".join(errs))
    for c in selected:
        def fn(c=c):
            held, witness = _outcome(sc, c.kind, c.args, seed)
            ok = held if c.expect == "pass" else not held
            note = "" if c.expect == "pass" else " (expected not to hold)"
            return ok, witness + note
        report.results.append(timed(c.name, f"scenario line {c.line}: {c.kind} {' '.join(c.args)}", fn))
    return report
