"""Subgroup membership through Stallings folding.

Every edge of the graph carries, besides its letter, a word in abstract
subgroup generators ``x1, x2, ...``.  Folds keep the invariant

    pot(src) * letter == subst(label) * pot(dst),   pot(base) == 1,

where ``subst`` sends ``x_i`` to the i-th generator, so reading a loop at the
base vertex yields an expression of the element in the generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .words import Alphabet, Word

__all__ = ["CoreGraph", "fold", "subgroup_membership", "Membership"]


@dataclass
class CoreGraph:
    """Folded graph; ``out[v]`` maps a signed letter to ``(w, label)``."""

    alphabet: Alphabet
    labels: Alphabet
    generators: tuple
    out: dict = field(default_factory=dict)
    base: int = 0

    def read(self, w: Word) -> Optional[tuple]:
        """Follow ``w`` from the base; return ``(end vertex, label)`` or None."""
        v = self.base
        label = self.labels.identity
        for x in w.letters:
            step = self.out.get(v, {}).get(x)
            if step is None:
                return None
            v, lab = step
            label = label * lab
        return v, label

    @property
    def num_vertices(self) -> int:
        return len(self.out)

    def rank(self) -> int:
        edges = sum(len(d) for d in self.out.values()) // 2
        return edges - self.num_vertices + 1


def fold(generators: Sequence[Word]) -> CoreGraph:
    if not generators:
        raise ValueError("need at least one generator")
    A = generators[0].alphabet
    for h in generators:
        if h.alphabet != A:
            raise ValueError("generators over different alphabets")
    X = Alphabet([f"x{i + 1}" for i in range(len(generators))])
    one = X.identity

    # edge list: [src, letter(>0), dst, label]; None marks a deleted edge
    edges: list = []
    nverts = 1
    for i, h in enumerate(generators):
        if not h.letters:
            continue
        prev = 0
        n = len(h.letters)
        for j, x in enumerate(h.letters):
            if j == n - 1:
                nxt = 0
                lab = X.gen(i)
            else:
                nxt = nverts
                nverts += 1
                lab = one
            if x > 0:
                edges.append([prev, x, nxt, lab])
            else:
                edges.append([nxt, -x, prev, lab.inverse()])
            prev = nxt

    alive = [True] * nverts

    def find_fold():
        seen = {}
        for idx, e in enumerate(edges):
            if e is None:
                continue
            src, x, dst, _ = e
            for key in ((src, x), (dst, -x)):
                if key in seen:
                    return seen[key], idx, key
                seen[key] = idx
        return None

    while True:
        hit = find_fold()
        if hit is None:
            break
        i1, i2, (p, x) = hit
        e1, e2 = edges[i1], edges[i2]

        # orient both edges as p --x--> q with labels lam
        def leg(e):
            src, letter, dst, lab = e
            if (src, letter) == (p, x):
                return dst, lab
            return src, lab.inverse()

        q1, lam1 = leg(e1)
        q2, lam2 = leg(e2)
        edges[i2] = None
        if q1 == q2:
            continue
        if q2 == 0:
            q1, q2, lam1, lam2 = q2, q1, lam2, lam1
        # merge q2 into q1
        c = lam1.inverse() * lam2
        cinv = c.inverse()
        for e in edges:
            if e is None:
                continue
            if e[0] == q2:
                e[0] = q1
                e[3] = c * e[3]
            if e[2] == q2:
                e[2] = q1
                e[3] = e[3] * cinv
        alive[q2] = False

    out: dict = {v: {} for v in range(nverts) if alive[v]}
    for e in edges:
        if e is None:
            continue
        src, x, dst, lab = e
        out[src][x] = (dst, lab)
        out[dst][-x] = (src, lab.inverse())
    return CoreGraph(A, X, tuple(generators), out)


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Optional[Word] = None  # word in x1, x2, ...

    def __bool__(self):
        return self.member


def expand(witness: Word, generators: Sequence[Word]) -> Word:
    """Substitute the subgroup generators into a witness word."""
    A = generators[0].alphabet
    out = A.identity
    for x in witness.letters:
        h = generators[abs(x) - 1]
        out = out * (h if x > 0 else h.inverse())
    return out


def subgroup_membership(generators: Sequence[Word], w: Word,
                        graph: Optional[CoreGraph] = None) -> Membership:
    """Decide ``w in <generators>``; on success the witness re-expands to ``w``."""
    if graph is None:
        graph = fold(generators)
    if w.alphabet != graph.alphabet:
        raise ValueError("word and subgroup over different alphabets")
    hit = graph.read(w)
    if hit is None or hit[0] != graph.base:
        return Membership(False)
    return Membership(True, hit[1])
