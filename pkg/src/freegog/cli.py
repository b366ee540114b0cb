"""Command-line interface: ``freegog <subcommand> ...``.

Exit status: 0 on success, 1 when a check fails or a decision is negative
for ``commute``/``inner``, 2 on usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

from .automorphisms import compose, format_aut, inner_witness, outer_commutes, parse_aut
from .gogaut import mu, twist_kernel_rank
from .harness import resolve_scenario, run_scenario
from .scenario import ScenarioError
from .words import Alphabet, WordSyntaxError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*")


def _read_aut(arg: str):
    """An automorphism from a file or inline text (``;`` separates lines)."""
    text = open(arg, encoding="utf-8").read() if os.path.exists(arg) else arg
    return parse_aut(text)


def _alphabet_for(text: str, given) -> Alphabet:
    if given:
        return Alphabet(n.strip() for n in given.split(","))
    names = []
    for n in _NAME.findall(text):
        if n not in names:
            names.append(n)
    return Alphabet(names or ["x"])


def cmd_reduce(ns) -> int:
    A = _alphabet_for(ns.word, ns.alphabet)
    print(A.word(ns.word))
    return 0


def cmd_compose(ns) -> int:
    f, g = _read_aut(ns.first), _read_aut(ns.second)
    if g.domain != f.codomain:
        g = parse_aut(open(ns.second).read() if os.path.exists(ns.second) else ns.second, f.codomain)
    print(format_aut(compose(f, g)))
    return 0


def cmd_inner(ns) -> int:
    w = inner_witness(_read_aut(ns.aut))
    if w is None:
        print("not inner")
        return 1
    print(f"inner: Ad({w})")
    return 0


def cmd_commute(ns) -> int:
    f = _read_aut(ns.first)
    text = open(ns.second).read() if os.path.exists(ns.second) else ns.second
    g = parse_aut(text, f.domain)
    ok = outer_commutes(f, g)
    print("commute in Out" if ok else "do not commute in Out")
    return 0 if ok else 1


def cmd_mu(ns) -> int:
    sc = resolve_scenario(ns.scenario, ns.g)
    if ns.gogaut not in sc.gogauts:
        raise ValueError(f"no gogaut {ns.gogaut!r} in {ns.scenario}; have {sorted(sc.gogauts)}")
    eq = sc.gogauts[ns.equivariant] if ns.equivariant else None
    for entry in mu(sc.gogauts[ns.gogaut], equivariant_wrt=eq):
        print(entry.line())
    return 0


def cmd_twist_rank(ns) -> int:
    sc = resolve_scenario(ns.scenario, ns.g)
    if not sc.supported:
        print("unsupported vertex group type")
        return 1
    tr = twist_kernel_rank(sc.gog, sc.base)
    print(f"rank {tr.rank}; {tr.pairs_checked} pairs over {{-2..2}}^{tr.rank}, "
          f"{len(tr.collisions)} outer-equal collisions")
    return 0 if tr.certified else 1


def _emit(report, ns) -> int:
    timing = not ns.no_timing
    sys.stdout.write(report.jsonl(timing) if ns.json else report.text(timing))
    return 0 if report.ok else 1


def cmd_run(ns) -> int:
    checks = ns.checks
    if ns.scenario == "section4":
        from .section4 import run_section4
        report = run_section4(ns.g or "a*b", checks, ns.seed)
    else:
        sc = resolve_scenario(ns.scenario, ns.g)
        report = run_scenario(sc, checks, ns.seed, title=ns.scenario)
    return _emit(report, ns)


def cmd_verify_section4(ns) -> int:
    from .section4 import run_section4
    return _emit(run_section4(ns.g or "a*b", None, ns.seed), ns)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freegog", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("reduce", help="freely reduce a word")
    s.add_argument("word")
    s.add_argument("--alphabet", help="comma-separated generators (default: names in order of appearance)")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("compose", help="compose two automorphisms, first one applied first")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("inner", help="decide innerness, printing a conjugator")
    s.add_argument("aut")
    s.set_defaults(fn=cmd_inner)

    s = sub.add_parser("commute", help="decide commutation in Out")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(fn=cmd_commute)

    s = sub.add_parser("mu", help="per-vertex outer classes and McCool report")
    s.add_argument("gogaut")
    s.add_argument("--scenario", default="section4")
    s.add_argument("--equivariant", metavar="GOGAUT", help="also test equivariance against this automorphism")
    s.add_argument("--g", help="override g in the built-in scenario")
    s.set_defaults(fn=cmd_mu)

    s = sub.add_parser("twist-rank", help="rank of the twist group, with certificate")
    s.add_argument("scenario")
    s.add_argument("--g")
    s.set_defaults(fn=cmd_twist_rank)

    for name, fn in (("run", cmd_run), ("verify-section4", cmd_verify_section4)):
        s = sub.add_parser(name, help="run a scenario's checks" if name == "run" else "run the built-in corpus")
        if name == "run":
            s.add_argument("scenario", help="file path, data:<file>, section4 or figure2")
            s.add_argument("--checks", nargs="*", metavar="GLOB",
                           help="only checks matching these patterns (none given: run nothing)")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--g", help="override g (a word in a, b) for section4")
        s.add_argument("--json", action="store_true", help="one JSON record per check")
        s.add_argument("--no-timing", action="store_true", help="omit timings for byte-identical reports")
        s.set_defaults(fn=fn)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.fn(ns)
    except (ScenarioError, WordSyntaxError, ValueError, KeyError, OSError) as exc:
        print(f"freegog: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
