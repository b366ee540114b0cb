"""Automorphisms of graphs of groups, Dehn twists and their roots.

A :class:`GoGAut` acts on the path group by ``g -> f_v(g)`` on vertex
elements and ``e -> delta(~e)^-1 * F(e) * delta(e)`` on edges, where
``delta(e)`` lives in the vertex group at ``F(terminal(e))``.  Edge-group
maps are recorded as signs, ``z_e -> z_F(e)^sign``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .automorphisms import (FreeAut, McCool, OuterAutClass, compose, identity,
                            is_inner, mccool_membership, outer_equal)
from .graph import GraphOfGroups, Marking, PathWord, free_basis
from .words import Word, conjugacy_witness, power_of

__all__ = [
    "GoGAut", "DehnTwistData", "validate", "induced_aut", "compose_gog",
    "twist_gogaut", "twist_aut", "twistor_exponents", "is_root_of_dehn_twist",
    "mu", "MuEntry", "vertex_return_map", "twist_kernel_rank", "TwistRank",
]


class GoGAut:
    def __init__(self, gog: GraphOfGroups, vertex_map: Optional[Mapping] = None,
                 edge_map: Optional[Mapping] = None, vertex_isos: Optional[Mapping] = None,
                 edge_signs: Optional[Mapping] = None, deltas: Optional[Mapping] = None):
        self.gog = gog
        vmap = {v: v for v in gog.vertices}
        vmap.update(vertex_map or {})
        self.vertex_map = vmap

        emap: dict = {}
        for key, val in (edge_map or {}).items():
            e, f = gog.edge(key), gog.edge(val)
            emap[e.index] = f.index
            emap[e.index ^ 1] = f.index ^ 1
        for e in gog.edges:
            if e.index in emap:
                continue
            src, dst = vmap[e.source], vmap[e.target]
            cands = [f for f in gog.edges if f.source == src and f.target == dst]
            if len(cands) != 1:
                raise ValueError(f"cannot infer the image of edge {e.name}; give it in edge_map")
            emap[e.index] = cands[0].index
        self.edge_map = emap

        isos = {}
        for v in gog.vertices:
            f = (vertex_isos or {}).get(v)
            if f is None:
                if vmap[v] != v:
                    raise ValueError(f"vertex {v} moves to {vmap[v]}; its isomorphism is required")
                f = identity(gog.alphabets[v])
            if f.domain != gog.alphabets[v] or f.codomain != gog.alphabets[vmap[v]]:
                raise ValueError(f"isomorphism at {v} must map G_{v} onto G_{vmap[v]}")
            isos[v] = f
        self.vertex_isos = isos

        dl = {}
        for e in gog.edges:
            dl[e.index] = gog.alphabets[vmap[e.target]].identity
        for key, w in (deltas or {}).items():
            e = gog.edge(key)
            home = gog.alphabets[vmap[e.target]]
            if isinstance(w, str):
                w = home.word(w)
            if w.alphabet != home:
                raise ValueError(f"delta({e.name}) must lie in G_{vmap[e.target]}")
            dl[e.index] = w
        self.deltas = dl

        signs = {}
        given = {gog.edge(k).index: int(s) for k, s in (edge_signs or {}).items()}
        for e in gog.edges:
            s = given.get(e.index, given.get(e.index ^ 1))
            if s is None:
                s = self._infer_sign(e)
            if s not in (1, -1):
                raise ValueError("edge signs must be +1 or -1")
            signs[e.index] = s
        self.edge_signs = signs

    def _infer_sign(self, e) -> int:
        fe = self.gog.edges[self.edge_map[e.index]]
        lhs = self.vertex_isos[e.target](e.image)
        if conjugacy_witness(lhs, fe.image) is not None:
            return 1
        if conjugacy_witness(lhs, fe.image.inverse()) is not None:
            return -1
        return 1

    @classmethod
    def identity(cls, gog: GraphOfGroups) -> "GoGAut":
        return cls(gog)

    def image_edge(self, e):
        return self.gog.edges[self.edge_map[self.gog.edge(e).index]]

    def apply_vertex(self, v: str, w: Word) -> Word:
        return self.vertex_isos[v](w)

    def apply_edge(self, e) -> PathWord:
        e = self.gog.edge(e)
        fe = self.gog.edges[self.edge_map[e.index]]
        d_in = self.deltas[e.index ^ 1].inverse()
        return PathWord(self.gog, fe.source, (d_in, self.deltas[e.index]), (fe.index,))

    def __call__(self, p: PathWord) -> PathWord:
        v = p.start
        out = PathWord.vertex(self.gog, self.vertex_map[v], self.apply_vertex(v, p.elements[0]))
        for e_idx, g in zip(p.edges, p.elements[1:]):
            out = out * self.apply_edge(e_idx)
            v = self.gog.edges[e_idx].target
            out = out * PathWord.vertex(self.gog, self.vertex_map[v], self.apply_vertex(v, g))
        return out

    @property
    def graph_map_trivial(self) -> bool:
        return (all(self.vertex_map[v] == v for v in self.gog.vertices)
                and all(self.edge_map[e.index] == e.index for e in self.gog.edges))

    def inverse(self) -> "GoGAut":
        gog = self.gog
        vinv = {w: v for v, w in self.vertex_map.items()}
        einv = {self.edge_map[e.index]: e.index for e in gog.edges}
        isos = {self.vertex_map[v]: f.inverse() for v, f in self.vertex_isos.items()}
        deltas = {}
        for e in gog.edges:
            fe = self.edge_map[e.index]
            back = self.vertex_isos[e.target].inverse()
            deltas[fe] = back(self.deltas[e.index]).inverse()
        signs = {self.edge_map[e.index]: self.edge_signs[e.index] for e in gog.edges}
        return GoGAut(gog, vinv, {gog.edges[k].name: gog.edges[v].name for k, v in einv.items()},
                      isos, signs, {gog.edges[k].name: w for k, w in deltas.items()})

    def __pow__(self, k: int) -> "GoGAut":
        if k < 0:
            return self.inverse() ** (-k)
        out = GoGAut.identity(self.gog)
        for _ in range(k):
            out = compose_gog(out, self)
        return out

    def validate(self) -> list:
        return validate(self)

    def __repr__(self):
        moved = {v: w for v, w in self.vertex_map.items() if v != w}
        ds = {self.gog.edges[i].name: str(w) for i, w in self.deltas.items() if w.letters}
        return f"GoGAut(map={moved}, deltas={ds})"


def validate(a: GoGAut) -> list:
    """Diagnostics for every violated axiom; empty when ``a`` is valid."""
    gog = a.gog
    out = []
    if sorted(a.vertex_map.values()) != sorted(gog.vertices):
        out.append("vertex map is not a bijection")
    if sorted(a.edge_map.values()) != sorted(range(len(gog.edges))):
        out.append("edge map is not a bijection")
    for e in gog.edges:
        fe = gog.edges[a.edge_map[e.index]]
        if a.edge_map[e.index ^ 1] != fe.index ^ 1:
            out.append(f"edge map does not commute with reversal at {e.name}")
        if fe.source != a.vertex_map[e.source] or fe.target != a.vertex_map[e.target]:
            out.append(f"edge map does not commute with endpoints at {e.name}")
            continue
        if a.edge_signs[e.index] != a.edge_signs[e.index ^ 1]:
            out.append(f"edge signs differ on {e.name} and its reverse")
        lhs = a.vertex_isos[e.target](e.image)
        d = a.deltas[e.index]
        rhs = (fe.image ** a.edge_signs[e.index]).conjugate(d)
        if lhs != rhs:
            out.append(f"compatibility fails at {e.name}: f(alpha(z)) = {lhs} but "
                       f"delta^-1 alpha_F(e)(f_e(z)) delta = {rhs}")
    return out


def compose_gog(a: GoGAut, b: GoGAut) -> GoGAut:
    """``a`` first, then ``b``; deltas read off from the image of each edge."""
    if a.gog is not b.gog:
        raise ValueError("automorphisms of different graphs of groups")
    gog = a.gog
    vmap = {v: b.vertex_map[a.vertex_map[v]] for v in gog.vertices}
    emap = {e.name: gog.edges[b.edge_map[a.edge_map[e.index]]].name for e in gog.edges}
    isos = {v: compose(a.vertex_isos[v], b.vertex_isos[a.vertex_map[v]]) for v in gog.vertices}
    signs = {e.name: a.edge_signs[e.index] * b.edge_signs[a.edge_map[e.index]] for e in gog.edges}
    deltas = {}
    for e in gog.edges:
        fa = a.edge_map[e.index]
        deltas[e.name] = b.deltas[fa] * b.vertex_isos[a.vertex_map[e.target]](a.deltas[e.index])
    return GoGAut(gog, vmap, emap, isos, signs, deltas)


def induced_aut(a: GoGAut, base: str, marking: Optional[Marking] = None,
                connecting_path: Optional[PathWord] = None):
    """The automorphism of ``pi1(gog, base)`` induced by ``a``, in a free basis.

    Returns a :class:`FreeAut` when ``a`` fixes ``base``.  Otherwise a path
    from ``base`` to its image is required and the result is an
    :class:`OuterAutClass`.
    """
    marking = marking or free_basis(a.gog, base)
    if marking.base != base:
        raise ValueError("marking is based elsewhere")
    F = marking.alphabet
    ainv = a.inverse()
    moved = a.vertex_map[base] != base
    if moved:
        if connecting_path is None:
            raise ValueError(f"{base} moves to {a.vertex_map[base]}; supply a connecting path")
        c = connecting_path
        if c.start != base or c.end != a.vertex_map[base]:
            raise ValueError("connecting path must run from the base to its image")
        c_back = ainv(c).inverse()  # base -> a^-1(base)
        fwd = [marking.to_word(c * a(marking.section[x]) * c.inverse()) for x in F.names]
        bwd = [marking.to_word(c_back * ainv(marking.section[x]) * c_back.inverse()) for x in F.names]
        return OuterAutClass(FreeAut(F, fwd, bwd))
    fwd = [marking.to_word(a(marking.section[x])) for x in F.names]
    bwd = [marking.to_word(ainv(marking.section[x])) for x in F.names]
    return FreeAut(F, fwd, bwd)


class DehnTwistData:
    """Twist exponents ``n_e`` per geometric edge; ``n_~e == -n_e``."""

    def __init__(self, gog: GraphOfGroups, exponents: Mapping):
        self.gog = gog
        n = {e.index: 0 for e in gog.edges}
        for key, k in exponents.items():
            e = gog.edge(key)
            n[e.index] = int(k)
            n[e.index ^ 1] = -int(k)
        self.exponents = n

    def exponent(self, e) -> int:
        return self.exponents[self.gog.edge(e).index]

    def vector(self) -> tuple:
        return tuple(self.exponents[e.index] for e in self.gog.geometric_edges)

    def __repr__(self):
        return "DehnTwistData(" + ", ".join(
            f"{e.name}={self.exponents[e.index]}" for e in self.gog.geometric_edges) + ")"


def twist_gogaut(d: DehnTwistData) -> GoGAut:
    """Trivial graph and vertex maps, ``delta(e) = alpha_e(z)^n_e``, ``delta(~e) = 1``."""
    gog = d.gog
    deltas = {e.name: e.image ** d.exponents[e.index] for e in gog.geometric_edges}
    return GoGAut(gog, deltas=deltas, edge_signs={e.name: 1 for e in gog.geometric_edges})


def twist_aut(d: DehnTwistData, base: str, marking: Optional[Marking] = None) -> FreeAut:
    d.gog.require_efficient()
    return induced_aut(twist_gogaut(d), base, marking)


def twistor_exponents(a: GoGAut) -> Optional[DehnTwistData]:
    """Twistor exponents of ``a`` if it has the shape of a Dehn twist.

    ``delta(e) = alpha_e(z)^p`` and ``delta(~e) = alpha_~e(z)^q`` give the
    twistor ``z^(p - q)`` on ``e``.
    """
    gog = a.gog
    if not a.graph_map_trivial:
        return None
    for v, f in a.vertex_isos.items():
        if f != identity(gog.alphabets[v]):
            return None
    ex = {}
    for e in gog.geometric_edges:
        if a.edge_signs[e.index] != 1:
            return None
        p = power_of(a.deltas[e.index], e.image)
        q = power_of(a.deltas[e.index ^ 1], gog.edges[e.index ^ 1].image)
        if p is None or q is None:
            return None
        ex[e.name] = p - q
    return DehnTwistData(gog, ex)


def is_root_of_dehn_twist(r: GoGAut, d: DehnTwistData, k: int, base: str,
                          marking: Optional[Marking] = None) -> bool:
    """``r^k`` represents the twist ``d`` and ``r`` transports its twistors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if validate(r):
        return False
    for e in r.gog.edges:
        fe = r.edge_map[e.index]
        if r.edge_signs[e.index] * d.exponents[e.index] != d.exponents[fe]:
            return False
    rk = r ** k
    if rk.vertex_map[base] != base:
        raise ValueError(f"r^{k} moves the base vertex {base}")
    marking = marking or free_basis(r.gog, base)
    return outer_equal(induced_aut(rk, base, marking), twist_aut(d, base, marking))


def vertex_return_map(a: GoGAut, v: str) -> tuple:
    """``(t, f)``: least ``t >= 1`` with ``F^t(v) == v`` and the map ``a^t`` induces on ``G_v``."""
    t = 1
    w = a.vertex_map[v]
    while w != v:
        w = a.vertex_map[w]
        t += 1
    return t, (a ** t).vertex_isos[v]


@dataclass
class MuEntry:
    vertex: str
    outer: OuterAutClass
    trivial: bool
    family: list
    mccool: McCool
    equivariance: Optional[FreeAut] = None

    def line(self) -> str:
        status = "trivial" if self.trivial else "nontrivial"
        mc = "in McCool group" if self.mccool.member else "NOT in McCool group: " + "; ".join(self.mccool.failures)
        fam = ", ".join(str(w) for w in self.family)
        return f"{self.vertex}: [{self.outer.representative!r}] {status}; family {{{fam}}}: {mc}"


def mu(a: GoGAut, equivariant_wrt: Optional[GoGAut] = None) -> list:
    """Per-vertex outer classes of a graph-map-trivial automorphism.

    Each class is tested for membership in the McCool group of the incident
    edge groups; with ``equivariant_wrt`` the test also requires commuting
    with the map that automorphism induces on the vertex group after it
    first returns to the vertex.
    """
    if not a.graph_map_trivial:
        raise ValueError("mu is defined only when the graph map is the identity")
    gog = a.gog
    out = []
    for v in gog.vertices:
        f = a.vertex_isos[v]
        family = []
        for e in gog.incoming(v):
            if e.image not in family:
                family.append(e.image)
        eq = vertex_return_map(equivariant_wrt, v)[1] if equivariant_wrt is not None else None
        mc = mccool_membership(f, family, eq)
        out.append(MuEntry(v, OuterAutClass(f), is_inner(f), family, mc, eq))
    return out


@dataclass
class TwistRank:
    rank: int
    grid: tuple
    pairs_checked: int = 0
    collisions: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.collisions


def twist_kernel_rank(gog: GraphOfGroups, base: Optional[str] = None, span: int = 2) -> TwistRank:
    """Number of geometric edges, certified by pairwise outer-inequality of the
    twists with exponents in ``{-span..span}`` on every edge."""
    gog.require_efficient()
    base = base or gog.vertices[0]
    marking = free_basis(gog, base)
    edges = gog.geometric_edges
    vecs = list(itertools.product(range(-span, span + 1), repeat=len(edges)))
    auts = [twist_aut(DehnTwistData(gog, dict(zip([e.name for e in edges], v))), base, marking)
            for v in vecs]
    result = TwistRank(len(edges), (-span, span))
    for i, j in itertools.combinations(range(len(vecs)), 2):
        result.pairs_checked += 1
        if outer_equal(auts[i], auts[j]):
            result.collisions.append((vecs[i], vecs[j]))
    return result
