"""Independent checks of :func:`extend_homomorphism` on a graph of groups."""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from freegog.graph import (AbelianTarget, FreeTarget, PathWord, SpanningTree, britton_reduce,
                           extend_homomorphism, pi1_generators, random_loop)
from freegog.words import Alphabet, random_word


def _nullspace(rows, n):
    """Integer basis of the rational kernel of ``rows`` (Gaussian elimination)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                M[i] = [a - M[i][c] * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][free]
        m = lcm(*(x.denominator for x in v))
        basis.append([int(x * m) for x in v])
    return basis


def abelian_rho(gog, base, rng):
    """A random homomorphism pi1 -> Z^2 given on the standard generators."""
    tree = SpanningTree(gog, base)
    cols = [(u, i) for u in gog.vertices for i in range(gog.alphabets[u].rank)]
    col = {k: j for j, k in enumerate(cols)}
    rows = []
    for e in gog.geometric_edges:
        row = [0] * len(cols)
        for x in e.image.letters:
            row[col[(e.target, abs(x) - 1)]] += 1 if x > 0 else -1
        for x in gog.edges[e.index ^ 1].image.letters:
            row[col[(e.source, abs(x) - 1)]] -= 1 if x > 0 else -1
        rows.append(row)
    basis = _nullspace(rows, len(cols))
    vecs = []
    for _ in range(2):
        v = [0] * len(cols)
        for b in basis:
            c = rng.randint(-2, 2)
            v = [x + c * y for x, y in zip(v, b)]
        vecs.append(v)
    rho = {}
    for u in gog.vertices:
        for i, name in enumerate(gog.alphabets[u].names):
            rho[("vertex", u, name)] = tuple(v[col[(u, i)]] for v in vecs)
    for e in tree.non_tree_edges():
        rho[("edge", e.name)] = (rng.randint(-3, 3), rng.randint(-3, 3))
    return rho, AbelianTarget(2)


def graph_rho(gog, base):
    """Kill the vertex groups: pi1 onto the free fundamental group of the graph."""
    tree = SpanningTree(gog, base)
    names = [e.name for e in tree.non_tree_edges()] or ["t"]
    T = Alphabet(names)
    rho = {("vertex", u, n): T.identity for u in gog.vertices for n in gog.alphabets[u].names}
    for e in tree.non_tree_edges():
        rho[("edge", e.name)] = T.gen(e.name)
    return rho, FreeTarget(T)


def check_extension(gog, base, rho, target, rng, samples=20) -> list:
    """Problems found; empty when the extension passes every check."""
    problems = []
    hom = extend_homomorphism(gog, base, rho, target)
    for name, lhs, rhs in hom.edge_relation_defects():
        problems.append(f"edge relation {name}: {lhs} != {rhs}")
    tree = SpanningTree(gog, base)
    for e in gog.edges:
        if e.index in tree.tree_edges and hom.edge(e) != target.identity:
            problems.append(f"tree edge {e.name} not sent to the identity")
    for key, loop in pi1_generators(gog, base, tree).items():
        if hom(loop) != target.coerce(rho[key]):
            problems.append(f"triangle fails at {key}")
    for _ in range(samples):
        p = random_loop(gog, base, 8, 3, rng)
        if hom(p) != hom(britton_reduce(p)):
            problems.append(f"not constant on Britton class of {p}")
        # splice an edge relation e alpha_e(z)^k ~e into the loop at the base
        e = rng.choice(gog.out_edges(base))
        k = rng.randint(-2, 2)
        bump = (PathWord.edge(gog, e) * PathWord.vertex(gog, e.target, e.image ** k)
                * PathWord.edge(gog, gog.bar(e)))
        same = PathWord.vertex(gog, base, gog.bar(e).image ** k)
        if hom(p * bump) != hom(p * same):
            problems.append(f"relation splice changes the value on {p}")
    return problems


def check_random_gog(seed) -> list:
    from .strategies import random_gog
    rng = random.Random(seed)
    gog = random_gog(rng)
    base = rng.choice(gog.vertices)
    out = []
    for rho, target in (abelian_rho(gog, base, rng), graph_rho(gog, base)):
        out += check_extension(gog, base, rho, target, rng)
    return out
