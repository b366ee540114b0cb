"""Line-oriented scenario files.

::

    vertex u : a,b
    edge e_u : u -> v ; z -> a*b | g
    base v
    grid r = -3..3
    aut phi
      a -> alpha
      ...
      inverse:
      ...
    end
    gogaut R
      map u->w
      iso u: a -> alpha, b -> beta
      inverse u: alpha -> a, beta -> b
      delta e_w = g
      twist e_u = 1
    end
    check R-valid : valid R
    check not-root : root R D22 2 expect fail

``nonfree vertex`` / ``nonfree edge`` lines record graphs of groups whose
vertex groups are not free; such scenarios parse and validate but support
no computation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .automorphisms import FreeAut, NotInvertible
from .gogaut import DehnTwistData, GoGAut, twist_gogaut, validate
from .graph import GraphOfGroups
from .words import Alphabet, WordSyntaxError

__all__ = ["Scenario", "ScenarioError", "Check", "parse_scenario", "load_scenario",
           "CHECK_KINDS", "NonFreeGraph", "validation_errors"]

CHECK_KINDS = {
    "valid": 1, "invalid": 1, "induces": 2, "induces-outer": 2, "root": 3,
    "commute": 2, "equal": 2, "outer-equal": 2, "inner": 1, "twist-rank": 1,
    "mu-trivial": 1, "length-invariant": 1,
}


class ScenarioError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Check:
    name: str
    kind: str
    args: tuple
    expect: str = "pass"
    line: int = 0


@dataclass
class NonFreeGraph:
    vertices: dict = field(default_factory=dict)   # name -> generator text
    edges: dict = field(default_factory=dict)      # name -> (src, dst, edge group text)


@dataclass
class Scenario:
    gog: Optional[GraphOfGroups]
    base: Optional[str]
    auts: dict = field(default_factory=dict)
    gogauts: dict = field(default_factory=dict)
    twists: dict = field(default_factory=dict)     # gogaut name -> DehnTwistData for pure twists
    grids: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    nonfree: Optional[NonFreeGraph] = None
    source: str = ""

    @property
    def supported(self) -> bool:
        return self.gog is not None


_VERTEX = re.compile(r"^vertex\s+(\S+)\s*:\s*(.+)$")
_EDGE = re.compile(r"^edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*;\s*z\s*->\s*(.+?)\s*\|\s*(.+)$")
_NF_VERTEX = re.compile(r"^nonfree\s+vertex\s+(\S+)\s*:\s*(.+)$")
_NF_EDGE = re.compile(r"^nonfree\s+edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*;\s*(.+)$")
_GRID = re.compile(r"^grid\s+(\S+)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)$")
_CHECK = re.compile(r"^check\s+(\S+)\s*:\s*(\S+)((?:\s+\S+)*?)(\s+expect\s+(pass|fail))?$")
_MAP = re.compile(r"^map\s+(\S+)\s*->\s*(\S+)$")
_ISO = re.compile(r"^(iso|inverse)\s+(\S+)\s*:\s*(.+)$")
_ASSIGN = re.compile(r"^(delta|twist|sign)\s+(\S+)\s*=\s*(\S+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _pairs(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if "->" not in part:
            raise ValueError(f"expected 'x -> word', got {part.strip()!r}")
        lhs, rhs = part.split("->", 1)
        out[lhs.strip()] = rhs.strip()
    return out


def _letter_inverse(dom: Alphabet, cod: Alphabet, images: dict) -> Optional[dict]:
    """Invert a map sending generators to generators or their inverses."""
    inv = {}
    for x, img in images.items():
        w = cod.word(img)
        if len(w) != 1:
            return None
        y = cod.names[abs(w.letters[0]) - 1]
        if y in inv:
            return None
        inv[y] = x if w.letters[0] > 0 else f"{x}^-1"
    return inv if set(inv) == set(cod.names) else None


def parse_scenario(text: str) -> Scenario:
    lines = text.splitlines()
    vertices: dict = {}
    edges: list = []
    base = None
    grids: dict = {}
    checks: list = []
    aut_blocks: list = []
    gog_blocks: list = []
    nonfree = NonFreeGraph()
    i = 0
    while i < len(lines):
        n = i + 1
        line = _strip(lines[i])
        i += 1
        if not line:
            continue
        if line.startswith("nonfree"):
            m = _NF_VERTEX.match(line)
            if m:
                nonfree.vertices[m.group(1)] = m.group(2).strip()
                continue
            m = _NF_EDGE.match(line)
            if m:
                nonfree.edges[m.group(1)] = (m.group(2), m.group(3), m.group(4).strip())
                continue
            raise ScenarioError(n, f"bad nonfree line {line!r}")
        m = _VERTEX.match(line)
        if m:
            name = m.group(1)
            if name in vertices:
                raise ScenarioError(n, f"duplicate vertex {name}")
            try:
                vertices[name] = Alphabet(g.strip() for g in m.group(2).split(","))
            except ValueError as exc:
                raise ScenarioError(n, str(exc)) from None
            continue
        m = _EDGE.match(line)
        if m:
            edges.append((n, m.groups()))
            continue
        if line.startswith("base"):
            parts = line.split()
            if len(parts) != 2:
                raise ScenarioError(n, "expected 'base <vertex>'")
            base = (n, parts[1])
            continue
        m = _GRID.match(line)
        if m:
            lo, hi = int(m.group(2)), int(m.group(3))
            if lo > hi:
                raise ScenarioError(n, "empty grid")
            grids[m.group(1)] = tuple(range(lo, hi + 1))
            continue
        m = _CHECK.match(line)
        if m:
            kind = m.group(2)
            args = tuple(m.group(3).split())
            if kind not in CHECK_KINDS:
                raise ScenarioError(n, f"unknown check kind {kind!r}")
            if len(args) != CHECK_KINDS[kind]:
                raise ScenarioError(n, f"check {kind} takes {CHECK_KINDS[kind]} arguments")
            checks.append(Check(m.group(1), kind, args, m.group(5) or "pass", n))
            continue
        head = line.split()
        if head[0] in ("aut", "gogaut") and len(head) == 2:
            body = []
            while True:
                if i >= len(lines):
                    raise ScenarioError(n, f"{head[0]} {head[1]} is missing 'end'")
                inner = _strip(lines[i])
                i += 1
                if inner == "end":
                    break
                if inner:
                    body.append((i, inner))
            (aut_blocks if head[0] == "aut" else gog_blocks).append((n, head[1], body))
            continue
        raise ScenarioError(n, f"cannot parse {line!r}")

    sc = Scenario(None, None, grids=grids, checks=checks, source=text)
    if nonfree.vertices or nonfree.edges:
        if vertices or edges:
            raise ScenarioError(1, "a scenario cannot mix free and nonfree vertex groups")
        for name, (src, dst, _) in nonfree.edges.items():
            for v in (src, dst):
                if v not in nonfree.vertices:
                    raise ScenarioError(1, f"nonfree edge {name}: unknown vertex {v}")
        sc.nonfree = nonfree
        sc.base = base[1] if base else next(iter(nonfree.vertices))
        if aut_blocks or gog_blocks:
            raise ScenarioError(aut_blocks[0][0] if aut_blocks else gog_blocks[0][0],
                                "automorphisms need free vertex groups")
        return sc

    if not vertices:
        raise ScenarioError(1, "no vertices declared")
    specs = []
    for n, (name, src, dst, sw, dw) in edges:
        for v in (src, dst):
            if v not in vertices:
                raise ScenarioError(n, f"edge {name}: unknown vertex {v}")
        try:
            specs.append((name, src, dst, vertices[src].word(sw), vertices[dst].word(dw)))
        except WordSyntaxError as exc:
            raise ScenarioError(n, f"edge {name}: {exc}") from None
    try:
        gog = GraphOfGroups(vertices, specs)
    except ValueError as exc:
        raise ScenarioError(edges[0][0] if edges else 1, str(exc)) from None
    sc.gog = gog
    if base is None:
        sc.base = gog.vertices[0]
    elif base[1] not in vertices:
        raise ScenarioError(base[0], f"unknown base vertex {base[1]}")
    else:
        sc.base = base[1]

    for n, name, body in aut_blocks:
        sc.auts[name] = _parse_aut_block(n, name, body)
    for n, name, body in gog_blocks:
        a, twist = _parse_gogaut_block(gog, n, name, body)
        sc.gogauts[name] = a
        if twist is not None:
            sc.twists[name] = twist
    for c in checks:
        _resolve_check(sc, c)
    return sc


def _parse_aut_block(n: int, name: str, body: list) -> FreeAut:
    fwd, bwd, cur = [], [], None
    cur = fwd
    for ln, text in body:
        if text == "inverse:":
            cur = bwd
            continue
        if "->" not in text:
            raise ScenarioError(ln, f"expected 'x -> word', got {text!r}")
        lhs, rhs = text.split("->", 1)
        cur.append((ln, lhs.strip(), rhs.strip()))
    if not bwd:
        raise ScenarioError(n, f"aut {name} needs an 'inverse:' block")
    try:
        A = Alphabet(x for _, x, _ in fwd)
        return FreeAut(A, {x: w for _, x, w in fwd}, {x: w for _, x, w in bwd})
    except (ValueError, NotInvertible) as exc:
        raise ScenarioError(n, f"aut {name}: {exc}") from None


def _parse_gogaut_block(gog: GraphOfGroups, n: int, name: str, body: list):
    vmap, emap, isos, invs, deltas, twists, signs = {}, {}, {}, {}, {}, {}, {}
    for ln, text in body:
        m = _MAP.match(text)
        if m:
            src, dst = m.groups()
            if src in gog.alphabets:
                vmap[src] = dst
            else:
                emap[src] = dst
            continue
        m = _ISO.match(text)
        if m:
            kind, v, rest = m.groups()
            try:
                (isos if kind == "iso" else invs)[v] = (ln, _pairs(rest))
            except ValueError as exc:
                raise ScenarioError(ln, str(exc)) from None
            continue
        m = _ASSIGN.match(text)
        if m:
            kind, e, val = m.groups()
            try:
                gog.edge(e)
            except KeyError as exc:
                raise ScenarioError(ln, str(exc)) from None
            if kind == "delta":
                deltas[e] = val
            elif kind == "twist":
                twists[e] = int(val)
            else:
                signs[e] = int(val)
            continue
        raise ScenarioError(ln, f"cannot parse {text!r} in gogaut {name}")
    if twists and (vmap or emap or isos or deltas):
        raise ScenarioError(n, f"gogaut {name}: 'twist' lines describe a pure twist and cannot be mixed")
    try:
        if twists:
            d = DehnTwistData(gog, twists)
            return twist_gogaut(d), d
        for v in vmap:
            if v not in gog.alphabets or vmap[v] not in gog.alphabets:
                raise ValueError(f"unknown vertex in map {v}->{vmap[v]}")
        fisos = {}
        for v, (ln, images) in isos.items():
            dom = gog.alphabets[v]
            cod = gog.alphabets[vmap.get(v, v)]
            if v in invs:
                back = invs[v][1]
            else:
                back = _letter_inverse(dom, cod, images)
                if back is None:
                    raise ScenarioError(ln, f"iso {v} is not a letter permutation; give 'inverse {v}: ...'")
            fisos[v] = FreeAut(dom, images, back, codomain=cod)
        a = GoGAut(gog, vmap, emap, fisos, signs, deltas)
    except ScenarioError:
        raise
    except (ValueError, KeyError) as exc:
        raise ScenarioError(n, f"gogaut {name}: {exc}") from None
    return a, None


def _resolve_check(sc: Scenario, c: Check):
    def need(table, key, what):
        if key not in table:
            raise ScenarioError(c.line, f"check {c.name}: unknown {what} {key!r}")

    k, a = c.kind, c.args
    if k in ("valid", "invalid", "mu-trivial", "length-invariant"):
        need(sc.gogauts, a[0], "gogaut")
    elif k in ("induces", "induces-outer"):
        need(sc.gogauts, a[0], "gogaut")
        need(sc.auts, a[1], "aut")
    elif k == "root":
        need(sc.gogauts, a[0], "gogaut")
        need(sc.twists, a[1], "twist")
        if not a[2].isdigit() or int(a[2]) < 1:
            raise ScenarioError(c.line, "root needs a positive integer power")
    elif k in ("commute", "equal", "outer-equal"):
        need(sc.auts, a[0], "aut")
        need(sc.auts, a[1], "aut")
    elif k == "inner":
        need(sc.auts, a[0], "aut")
    elif k == "twist-rank":
        if not a[0].isdigit():
            raise ScenarioError(c.line, "twist-rank needs an integer")


def validation_errors(sc: Scenario) -> list:
    """Objects that fail validation; checks must not run while this is nonempty.

    GoGAuts named in ``invalid`` checks are exempt, being invalid on purpose.
    """
    exempt = {c.args[0] for c in sc.checks if c.kind == "invalid"}
    out = []
    for name, a in sc.gogauts.items():
        if name in exempt:
            continue
        diag = validate(a)
        if diag:
            out.append(f"gogaut {name}: " + "; ".join(diag))
    return out


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
