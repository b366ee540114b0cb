"""A finite ball in the Bass-Serre tree, used as an oracle for translation length.

Vertices are cosets ``p G_u`` of paths ``p`` starting at the base, keyed by
the normal form of ``p`` with its final vertex element dropped.  Children of
``p`` are ``p * c * e`` for out-edges ``e`` and coset representatives ``c``
of ``G_u / <alpha_~e(z)>`` drawn from words of length at most ``word_cap``,
so the ball is a subtree of the true ball, not all of it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import GraphOfGroups, PathWord, britton_reduce, coset_rep
from .words import Word, power_of

__all__ = ["TreeBall", "build_tree_ball", "RADIUS_CAP"]

RADIUS_CAP = 6


def _key(p: PathWord) -> tuple:
    nf = p.normal_form()
    return nf.edges, tuple(g.letters for g in nf.elements[:-1])


def _short_words(alphabet, cap: int) -> list:
    out = [alphabet.identity]
    letters = [i for k in range(1, alphabet.rank + 1) for i in (k, -k)]
    for n in range(1, cap + 1):
        for t in itertools.product(letters, repeat=n):
            if all(t[i] != -t[i + 1] for i in range(n - 1)):
                out.append(Word(alphabet, t, reduced=True))
    return out


@dataclass
class TreeBall:
    gog: GraphOfGroups
    base: str
    radius: int
    word_cap: int
    vertices: list = field(default_factory=list)   # PathWord with trailing identity
    depth: list = field(default_factory=list)
    parent: list = field(default_factory=list)
    label: list = field(default_factory=list)      # (edge name, stabiliser generator)
    index: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)      # c * e leading from the parent
    defects: list = field(default_factory=list)

    def __len__(self):
        return len(self.vertices)

    @property
    def is_tree(self) -> bool:
        return not self.defects

    def contains(self, p: PathWord) -> bool:
        return _key(p) in self.index

    def distance(self, x: PathWord, y: PathWord) -> int:
        return britton_reduce(x.inverse() * y).edge_length

    def tree_distance(self, i: int, j: int) -> int:
        """Distance through parent pointers, independent of Britton reduction."""
        anc = {}
        k, n = i, 0
        while k is not None:
            anc[k] = n
            k, n = self.parent[k], n + 1
        k, n = j, 0
        while k not in anc:
            k, n = self.parent[k], n + 1
        return n + anc[k]

    def geodesic(self, h: PathWord) -> list:
        """Vertices on the geodesic from the base vertex to ``h`` applied to it."""
        nf = h.normal_form()
        gog = self.gog
        out = []
        for i in range(nf.edge_length + 1):
            end = gog.edges[nf.edges[i - 1]].target if i else nf.start
            elems = nf.elements[:i] + (gog.alphabets[end].identity,)
            out.append(PathWord(gog, nf.start, elems, nf.edges[:i]))
        return out

    def fits(self, h: PathWord) -> bool:
        return all(self.contains(x) for x in self.geodesic(h))

    def min_displacement(self, h: PathWord) -> int:
        """``min d(x, h x)`` over the ball."""
        if not h.is_loop or h.start != self.base:
            raise ValueError(f"{h} is not a loop at {self.base}")
        # x^-1 h x, reduced, built from the parent's value one step at a time
        conj = [britton_reduce(h)]
        best = conj[0].edge_length
        for i in range(1, len(self.vertices)):
            c = _conj_step(self.gog, conj[self.parent[i]], self.steps[i])
            conj.append(c)
            if c.edge_length < best:
                best = c.edge_length
                if best == 0:
                    break
        return best


def _conj_step(gog, C: PathWord, s: PathWord) -> PathWord:
    """Reduced ``s^-1 C s`` for reduced ``C`` and a one-edge step ``s = r e``.

    Only the two junctions can cancel, so this avoids a full Britton pass.
    """
    r = s.elements[0]
    e = gog.edges[s.edges[0]]
    eb = e.index ^ 1
    mid = r.inverse() * C.elements[0] if len(C.elements) == 1 else None
    if mid is not None:
        w = mid * r
        k = power_of(w, gog.edges[eb].image)
        if k is not None:
            return PathWord._trusted(gog, e.target, (e.image ** k,), ())
        ident = gog.alphabets[e.target].identity
        return PathWord._trusted(gog, e.target, (ident, w, ident), (eb, e.index))
    elems = list(C.elements)
    edges = list(C.edges)
    elems[0] = r.inverse() * elems[0]
    elems[-1] = elems[-1] * r
    ident = gog.alphabets[e.target].identity
    # left junction: ~e * elems[0] * edges[0]
    if edges[0] == e.index and (k := power_of(elems[0], gog.edges[eb].image)) is not None:
        head = [(e.image ** k) * elems[1]]
        elems, edges = head + elems[2:], edges[1:]
    else:
        elems, edges = [ident] + elems, [eb] + edges
    # right junction: edges[-1] * elems[-1] * e
    if edges and edges[-1] == eb and (k := power_of(elems[-1], gog.edges[eb].image)) is not None:
        tail = elems[-2] * (e.image ** k)
        elems, edges = elems[:-2] + [tail], edges[:-1]
    else:
        elems, edges = elems + [ident], edges + [e.index]
    return PathWord._trusted(gog, e.target, elems, edges)


def build_tree_ball(gog: GraphOfGroups, base: str, radius: int, word_cap: int = 1,
                    radius_cap: int = RADIUS_CAP) -> TreeBall:
    if radius < 0 or radius > radius_cap:
        raise ValueError(f"radius must lie in 0..{radius_cap}")
    ball = TreeBall(gog, base, radius, word_cap)
    short = {v: _short_words(gog.alphabets[v], word_cap) for v in gog.vertices}
    # shortlex coset representatives per oriented edge, computed once
    reps = {}
    for e in gog.edges:
        c = gog.edges[e.index ^ 1].image
        seen = {}
        for w in short[e.source]:
            r, _ = coset_rep(w, c)
            seen.setdefault(r.letters, r)
        reps[e.index] = list(seen.values())

    root = PathWord.vertex(gog, base)
    ball.vertices.append(root)
    ball.depth.append(0)
    ball.parent.append(None)
    ball.label.append(None)
    ball.steps.append(None)
    ball.index[_key(root)] = 0
    frontier = [0]
    for d in range(radius):
        nxt = []
        for i in frontier:
            p = ball.vertices[i]
            u = p.end
            last = p.edges[-1] if p.edges else None
            for e in gog.out_edges(u):
                for r in reps[e.index]:
                    if last is not None and e.index == last ^ 1 and not r.letters:
                        continue  # back towards the root
                    # p ends in the identity and r is a coset representative,
                    # so this is already the normal form
                    elems = p.elements[:-1] + (r, gog.alphabets[e.target].identity)
                    q = PathWord._trusted(gog, base, elems, p.edges + (e.index,))
                    k = (q.edges, tuple(g.letters for g in elems[:-1]))
                    if k in ball.index:
                        ball.defects.append(f"cycle: vertex {ball.index[k]} reached again from {i}")
                        continue
                    ball.index[k] = len(ball.vertices)
                    ball.vertices.append(q)
                    ball.depth.append(d + 1)
                    ball.parent.append(i)
                    ball.label.append((e.name, e.image))
                    ball.steps.append(PathWord._trusted(gog, u, (r, elems[-1]), (e.index,)))
                    nxt.append(len(ball.vertices) - 1)
        frontier = nxt
    _check_degrees(ball, reps)
    return ball


def _check_degrees(ball: TreeBall, reps: dict):
    """Child counts must match the coset counts, less one for the edge back to the parent."""
    gog = ball.gog
    children = [0] * len(ball.vertices)
    for j, i in enumerate(ball.parent):
        if i is not None:
            children[i] += 1
    for i, p in enumerate(ball.vertices):
        if ball.depth[i] == ball.radius:
            continue
        expected = sum(len(reps[e.index]) for e in gog.out_edges(p.end))
        if ball.parent[i] is not None:
            expected -= 1
        if children[i] != expected:
            ball.defects.append(f"vertex {i}: {children[i]} children, expected {expected}")
