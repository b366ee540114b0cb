"""Graphs of groups with free vertex groups and infinite cyclic edge groups.

Oriented edges come in pairs; edge ``i`` and ``i ^ 1`` are mutually reverse.
Each edge group is generated by an abstract ``z``; ``Edge.image`` is
``alpha_e(z)`` in the vertex group at the terminal vertex.  The path group
relation ``e * alpha_e(z) * ~e == alpha_~e(z)`` drives Britton reduction.
"""
from __future__ import annotations

import re
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .words import Alphabet, Word, cyclic_reduce, is_proper_power, power_of, word_key

__all__ = [
    "Edge", "GraphOfGroups", "PathWord", "PathSyntaxError", "SpanningTree",
    "britton_reduce", "pi1_equal", "translation_length", "coset_rep",
    "FreeTarget", "AbelianTarget", "PathHom", "HomomorphismError",
    "extend_homomorphism", "pi1_generators", "Marking", "MarkingError",
    "free_basis", "random_loop",
]


@dataclass(frozen=True)
class Edge:
    index: int
    name: str
    source: str
    target: str
    image: Word  # alpha_e(z), a word in the target vertex group

    @property
    def bar_index(self) -> int:
        return self.index ^ 1

    @property
    def declared(self) -> bool:
        return self.index % 2 == 0


class GraphOfGroups:
    """Finite connected graph of free groups with cyclic edge groups.

    ``edges`` holds tuples ``(name, source, target, source_word, target_word)``
    where the words are the images of the edge generator in the two end
    vertex groups (strings or :class:`Word`).
    """

    def __init__(self, vertices: Mapping[str, Alphabet], edges: Iterable[Sequence],
                 allow_non_efficient: bool = False):
        self.vertices = tuple(vertices)
        self.alphabets = dict(vertices)
        if not self.vertices:
            raise ValueError("a graph of groups needs a vertex")
        self.edges: list = []
        self._by_name: dict = {}
        for spec in edges:
            name, src, dst, src_word, dst_word = spec
            for v in (src, dst):
                if v not in self.alphabets:
                    raise ValueError(f"edge {name}: unknown vertex {v!r}")
            if name in self._by_name or name.startswith("~"):
                raise ValueError(f"bad or duplicate edge name {name!r}")
            if isinstance(src_word, str):
                src_word = self.alphabets[src].word(src_word)
            if isinstance(dst_word, str):
                dst_word = self.alphabets[dst].word(dst_word)
            if src_word.alphabet != self.alphabets[src] or dst_word.alphabet != self.alphabets[dst]:
                raise ValueError(f"edge {name}: images over the wrong vertex alphabets")
            i = len(self.edges)
            fwd = Edge(i, name, src, dst, dst_word)
            bwd = Edge(i + 1, "~" + name, dst, src, src_word)
            self.edges += [fwd, bwd]
            self._by_name[fwd.name] = fwd
            self._by_name[bwd.name] = bwd
        self.allow_non_efficient = allow_non_efficient
        self.defects = self._efficiency_defects()
        if self.defects:
            if not allow_non_efficient:
                raise ValueError("non-efficient graph of groups: " + "; ".join(self.defects))
            warnings.warn("non-efficient graph of groups: " + "; ".join(self.defects))
        self._check_connected()

    def _efficiency_defects(self) -> list:
        out = []
        for e in self.edges:
            if not e.image.letters:
                out.append(f"{e.name}: trivial edge image")
            elif is_proper_power(e.image) is not None:
                out.append(f"{e.name}: edge image {e.image} is a proper power")
        for v in self.vertices:
            if self.alphabets[v].rank < 2:
                out.append(f"vertex {v}: rank {self.alphabets[v].rank} < 2")
        return out

    @property
    def efficient(self) -> bool:
        return not self.defects

    def require_efficient(self):
        if self.defects:
            raise ValueError("operation needs an efficient graph of groups: " + "; ".join(self.defects))

    def _check_connected(self):
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for e in self.out_edges(v):
                if e.target not in seen:
                    seen.add(e.target)
                    todo.append(e.target)
        if len(seen) != len(self.vertices):
            raise ValueError(f"underlying graph is not connected: {sorted(set(self.vertices) - seen)}")

    def edge(self, key) -> Edge:
        if isinstance(key, Edge):
            return key
        if isinstance(key, int):
            return self.edges[key]
        try:
            return self._by_name[key]
        except KeyError:
            raise KeyError(f"unknown edge {key!r}") from None

    def bar(self, e) -> Edge:
        return self.edges[self.edge(e).index ^ 1]

    def out_edges(self, v: str) -> list:
        return [e for e in self.edges if e.source == v]

    def incoming(self, v: str) -> list:
        return [e for e in self.edges if e.target == v]

    @property
    def geometric_edges(self) -> list:
        return self.edges[0::2]

    def vertex_word(self, v: str, text) -> Word:
        if isinstance(text, Word):
            return text
        return self.alphabets[v].word(text)

    def __repr__(self):
        return f"GraphOfGroups(vertices={list(self.vertices)}, edges={[e.name for e in self.geometric_edges]})"


class PathSyntaxError(ValueError):
    pass


class PathWord:
    """``g0 e1 g1 ... en gn`` in the path group (not necessarily reduced)."""

    __slots__ = ("gog", "start", "elements", "edges")

    def __init__(self, gog: GraphOfGroups, start: str, elements: Sequence[Word],
                 edges: Sequence[int]):
        elements = tuple(elements)
        edges = tuple(gog.edge(e).index for e in edges)
        if len(elements) != len(edges) + 1:
            raise ValueError("need exactly one more vertex element than edges")
        v = start
        if v not in gog.alphabets:
            raise ValueError(f"unknown vertex {v!r}")
        for i, g in enumerate(elements):
            if g.alphabet != gog.alphabets[v]:
                raise ValueError(f"element {i} ({g}) is not in G_{v}")
            if i < len(edges):
                e = gog.edges[edges[i]]
                if e.source != v:
                    raise ValueError(f"edge {e.name} does not start at {v}")
                v = e.target
        self.gog = gog
        self.start = start
        self.elements = elements
        self.edges = edges

    @classmethod
    def _trusted(cls, gog, start, elements, edges) -> "PathWord":
        p = object.__new__(cls)
        p.gog, p.start, p.elements, p.edges = gog, start, tuple(elements), tuple(edges)
        return p

    @classmethod
    def vertex(cls, gog, v: str, word=None) -> "PathWord":
        w = gog.alphabets[v].identity if word is None else gog.vertex_word(v, word)
        return cls(gog, v, (w,), ())

    @classmethod
    def edge(cls, gog, e) -> "PathWord":
        e = gog.edge(e)
        return cls(gog, e.source, (gog.alphabets[e.source].identity,
                                   gog.alphabets[e.target].identity), (e.index,))

    @property
    def end(self) -> str:
        return self.gog.edges[self.edges[-1]].target if self.edges else self.start

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    @property
    def edge_length(self) -> int:
        return len(self.edges)

    def __mul__(self, other: "PathWord") -> "PathWord":
        if other.gog is not self.gog:
            raise ValueError("paths in different graphs of groups")
        if self.end != other.start:
            raise ValueError(f"path ends at {self.end} but next starts at {other.start}")
        mid = self.elements[-1] * other.elements[0]
        return PathWord._trusted(self.gog, self.start,
                        self.elements[:-1] + (mid,) + other.elements[1:],
                        self.edges + other.edges)

    def inverse(self) -> "PathWord":
        return PathWord._trusted(self.gog, self.end,
                        tuple(g.inverse() for g in reversed(self.elements)),
                        tuple(e ^ 1 for e in reversed(self.edges)))

    def __pow__(self, k: int) -> "PathWord":
        if not self.is_loop:
            raise ValueError("only loops have powers")
        if k < 0:
            return self.inverse() ** (-k)
        out = PathWord.vertex(self.gog, self.start)
        for _ in range(k):
            out = out * self
        return out

    def reduce(self) -> "PathWord":
        return britton_reduce(self)

    def normal_form(self) -> "PathWord":
        return _normal_form(self)

    def is_trivial(self) -> bool:
        r = britton_reduce(self)
        return not r.edges and not r.elements[0].letters

    def __eq__(self, other):
        if not isinstance(other, PathWord) or other.gog is not self.gog:
            return NotImplemented
        if (self.start, self.end) != (other.start, other.end):
            return False
        a, b = self.normal_form(), other.normal_form()
        return a.elements == b.elements and a.edges == b.edges

    def __hash__(self):
        nf = self.normal_form()
        return hash((nf.start, nf.elements, nf.edges))

    def __str__(self):
        parts = []
        for i, g in enumerate(self.elements):
            if g.letters:
                parts.append(f"`{g}`")
            if i < len(self.edges):
                parts.append(self.gog.edges[self.edges[i]].name)
        if not self.edges:
            return (parts[0] if parts else "`1`") + f"@{self.start}"
        return " * ".join(parts)

    def __repr__(self):
        return f"PathWord({str(self)!r})"

    @classmethod
    def parse(cls, gog: GraphOfGroups, text: str, start: Optional[str] = None) -> "PathWord":
        """Parse ``~e_u * `a` * e_u``; ``@v`` pins the start of an edge-free path."""
        text = text.strip()
        m = re.search(r"@\s*([A-Za-z_][\w.']*)\s*$", text)
        if m:
            start = m.group(1)
            text = text[:m.start()].strip()
        tokens = []
        pos = 0
        tok_re = re.compile(r"\s*(?:`([^`]*)`|(~?[A-Za-z_][\w.']*))\s*(\*|$)")
        while pos < len(text):
            mt = tok_re.match(text, pos)
            if not mt or mt.end() == pos:
                raise PathSyntaxError(f"cannot parse path near {text[pos:]!r}")
            tokens.append(("w", mt.group(1)) if mt.group(1) is not None else ("e", mt.group(2)))
            pos = mt.end()
        edge_toks = [t for kind, t in tokens if kind == "e"]
        if edge_toks:
            first = gog.edge(edge_toks[0])
            if start is not None and start != first.source:
                raise PathSyntaxError(f"path starts at {first.source}, not {start}")
            start = first.source
        elif start is None:
            raise PathSyntaxError("edge-free path needs '@vertex'")
        v = start
        elements = [gog.alphabets[v].identity]
        edges = []
        for kind, t in tokens:
            if kind == "w":
                elements[-1] = elements[-1] * gog.alphabets[v].word(t)
            else:
                e = gog.edge(t)
                if e.source != v:
                    raise PathSyntaxError(f"edge {e.name} does not start at {v}")
                edges.append(e.index)
                v = e.target
                elements.append(gog.alphabets[v].identity)
        return cls(gog, start, elements, edges)


def britton_reduce(p: PathWord) -> PathWord:
    """Apply ``e * alpha_e(z)^k * ~e -> alpha_~e(z)^k`` until none applies."""
    gog = p.gog
    elems = [p.elements[0]]
    edges: list = []
    for e_idx, g in zip(p.edges, p.elements[1:]):
        if edges and edges[-1] == e_idx ^ 1:
            f = gog.edges[edges[-1]]
            k = power_of(elems[-1], f.image)
            if k is not None:
                edges.pop()
                elems.pop()
                c = gog.edges[f.index ^ 1].image ** k
                elems[-1] = elems[-1] * c * g
                continue
        edges.append(e_idx)
        elems.append(g)
    return PathWord._trusted(gog, p.start, elems, edges)


def coset_rep(g: Word, c: Word) -> tuple:
    """Shortlex-least ``r`` in ``g <c>`` and ``k`` with ``g == r * c**k``."""
    C, d = cyclic_reduce(c)
    bound = (2 * len(g) + 2 * len(d)) // len(C) + 1
    best, best_k = g, 0
    for k in range(-bound, bound + 1):
        r = g * c ** (-k)
        if word_key(r) < word_key(best):
            best, best_k = r, k
    return best, best_k


def _normal_form(p: PathWord) -> PathWord:
    gog = p.gog
    r = britton_reduce(p)
    elems = list(r.elements)
    for i, e_idx in enumerate(r.edges):
        e = gog.edges[e_idx]
        before = gog.edges[e_idx ^ 1].image  # alpha_~e(z) in G_source
        rep, k = coset_rep(elems[i], before)
        if k:
            elems[i] = rep
            elems[i + 1] = (e.image ** k) * elems[i + 1]
    return PathWord._trusted(gog, r.start, elems, r.edges)


def pi1_equal(p: PathWord, q: PathWord, base: Optional[str] = None) -> bool:
    for x in (p, q):
        if not x.is_loop or (base is not None and x.start != base):
            raise ValueError(f"{x} is not a loop at {base}")
    if p.start != q.start:
        raise ValueError("loops at different base vertices")
    return (p * q.inverse()).is_trivial()


def translation_length(p: PathWord) -> int:
    """Edge count of the cyclically Britton-reduced loop (0 iff elliptic)."""
    if not p.is_loop:
        raise ValueError(f"{p} is not a loop")
    gog = p.gog
    r = britton_reduce(p)
    E = list(r.edges)
    if not E:
        return 0
    # cyclic word E[0] M[0] E[1] ... E[n-1] M[n-1]
    M = list(r.elements[1:-1]) + [r.elements[-1] * r.elements[0]]
    while len(E) >= 2 and E[0] == E[-1] ^ 1:
        last = gog.edges[E[-1]]
        k = power_of(M[-1], last.image)
        if k is None:
            break
        c = gog.edges[last.index ^ 1].image ** k
        if len(E) == 2:
            return 0
        merged = M[-2] * c * M[0]
        E = E[1:-1]
        M = M[1:-2] + [merged]
    return len(E)


class SpanningTree:
    """Breadth-first maximal tree from ``base``, edges in declaration order."""

    def __init__(self, gog: GraphOfGroups, base: str):
        if base not in gog.alphabets:
            raise ValueError(f"unknown vertex {base!r}")
        self.gog = gog
        self.base = base
        self.parent_edge: dict = {base: None}
        self.depth = {base: 0}
        order = [base]
        queue = deque([base])
        while queue:
            v = queue.popleft()
            for e in gog.out_edges(v):
                if e.target not in self.parent_edge:
                    self.parent_edge[e.target] = e.index
                    self.depth[e.target] = self.depth[v] + 1
                    order.append(e.target)
                    queue.append(e.target)
        self.order = order
        self.tree_edges = frozenset(
            x for i in self.parent_edge.values() if i is not None for x in (i, i ^ 1))

    def sigma(self, u: str) -> PathWord:
        """The reduced tree path from the base to ``u``."""
        edges = []
        v = u
        while self.parent_edge[v] is not None:
            e = self.gog.edges[self.parent_edge[v]]
            edges.append(e.index)
            v = e.source
        edges.reverse()
        gog = self.gog
        elems = [gog.alphabets[self.base].identity] + [
            gog.alphabets[gog.edges[i].target].identity for i in edges]
        return PathWord(gog, self.base, elems, edges)

    def non_tree_edges(self) -> list:
        return [e for e in self.gog.geometric_edges if e.index not in self.tree_edges]


def pi1_generators(gog: GraphOfGroups, base: str, tree: Optional[SpanningTree] = None) -> dict:
    """Standard generating loops keyed ``("vertex", u, name)`` / ``("edge", e)``."""
    tree = tree or SpanningTree(gog, base)
    out = {}
    for u in gog.vertices:
        s = tree.sigma(u)
        for name in gog.alphabets[u].names:
            out[("vertex", u, name)] = s * PathWord.vertex(gog, u, gog.alphabets[u].gen(name)) * s.inverse()
    for e in tree.non_tree_edges():
        out[("edge", e.name)] = tree.sigma(e.source) * PathWord.edge(gog, e) * tree.sigma(e.target).inverse()
    return out


class FreeTarget:
    """Target group: a free group on ``alphabet``."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    @property
    def identity(self):
        return self.alphabet.identity

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        return x.inverse()

    def coerce(self, x):
        return self.alphabet.word(x) if isinstance(x, str) else x


class AbelianTarget:
    """Target group: ``Z^rank`` as integer tuples."""

    def __init__(self, rank: int):
        self.rank = rank

    @property
    def identity(self):
        return (0,) * self.rank

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def coerce(self, x):
        if isinstance(x, int):
            x = (x,)
        x = tuple(int(a) for a in x)
        if len(x) != self.rank:
            raise ValueError(f"expected a vector of length {self.rank}")
        return x


class HomomorphismError(ValueError):
    pass


class PathHom:
    """A homomorphism from the path group, given on its generators."""

    def __init__(self, gog: GraphOfGroups, target, vertex_images: dict, edge_images: dict):
        self.gog = gog
        self.target = target
        self.vertex_images = vertex_images  # (u, i) -> element
        self.edge_images = edge_images      # oriented edge index -> element

    def vertex(self, u: str, w: Word):
        t = self.target
        out = t.identity
        for x in w.letters:
            img = self.vertex_images[(u, abs(x) - 1)]
            out = t.mul(out, img if x > 0 else t.inv(img))
        return out

    def edge(self, e):
        return self.edge_images[self.gog.edge(e).index]

    def __call__(self, p: PathWord):
        t = self.target
        v = p.start
        out = self.vertex(v, p.elements[0])
        for e_idx, g in zip(p.edges, p.elements[1:]):
            out = t.mul(out, self.edge_images[e_idx])
            v = self.gog.edges[e_idx].target
            out = t.mul(out, self.vertex(v, g))
        return out

    def edge_relation_defects(self) -> list:
        """Edges whose relation ``e alpha_e(z) ~e == alpha_~e(z)`` is not respected."""
        t = self.target
        bad = []
        for e in self.gog.edges:
            lhs = t.mul(t.mul(self.edge_images[e.index], self.vertex(e.target, e.image)),
                        self.edge_images[e.index ^ 1])
            rhs = self.vertex(e.source, self.gog.edges[e.index ^ 1].image)
            if lhs != rhs:
                bad.append((e.name, lhs, rhs))
        return bad


def extend_homomorphism(gog: GraphOfGroups, base: str, rho: Mapping, target,
                        tree: Optional[SpanningTree] = None) -> PathHom:
    """Extend ``rho`` (given on :func:`pi1_generators` keys) to the path group.

    Tree edges go to the identity, a non-tree edge ``e`` to
    ``rho(sigma(src) e sigma(dst)^-1)`` and ``g in G_u`` to
    ``rho(sigma(u) g sigma(u)^-1)``.
    """
    tree = tree or SpanningTree(gog, base)
    if tree.base != base:
        raise ValueError("tree rooted at a different vertex")
    vertex_images = {}
    for u in gog.vertices:
        for i, name in enumerate(gog.alphabets[u].names):
            key = ("vertex", u, name)
            if key not in rho:
                raise HomomorphismError(f"rho is missing generator {key}")
            vertex_images[(u, i)] = target.coerce(rho[key])
    edge_images = {}
    for e in gog.edges:
        if e.index in tree.tree_edges:
            edge_images[e.index] = target.identity
    for e in tree.non_tree_edges():
        key = ("edge", e.name)
        if key not in rho:
            raise HomomorphismError(f"rho is missing generator {key}")
        img = target.coerce(rho[key])
        edge_images[e.index] = img
        edge_images[e.index ^ 1] = target.inv(img)
    hom = PathHom(gog, target, vertex_images, edge_images)
    bad = hom.edge_relation_defects()
    if bad:
        name, lhs, rhs = bad[0]
        raise HomomorphismError(f"rho does not respect the relation at edge {name}: {lhs} != {rhs}")
    return hom


class MarkingError(ValueError):
    pass


@dataclass
class Marking:
    """An identification of ``pi1(gog, base)`` with a free group."""

    gog: GraphOfGroups
    base: str
    alphabet: Alphabet
    hom: PathHom                 # path group -> free group on ``alphabet``
    section: dict                # basis letter name -> loop at base
    tree: SpanningTree

    def to_word(self, p: PathWord) -> Word:
        if not p.is_loop or p.start != self.base:
            raise ValueError(f"{p} is not a loop at {self.base}")
        return self.hom(p)

    def to_loop(self, w: Word) -> PathWord:
        out = PathWord.vertex(self.gog, self.base)
        for x in w.letters:
            loop = self.section[self.alphabet.names[abs(x) - 1]]
            out = out * (loop if x > 0 else loop.inverse())
        return out


def free_basis(gog: GraphOfGroups, base: str) -> Marking:
    """Find a free basis of ``pi1`` by Tietze elimination over the edge relations.

    Each edge relation must contain a generator occurring exactly once (after
    earlier substitutions); otherwise :class:`MarkingError` is raised.
    """
    tree = SpanningTree(gog, base)
    # omega: all vertex generators, then one stable letter per non-tree edge
    omega = []
    for u in tree.order:
        for name in gog.alphabets[u].names:
            omega.append(("vertex", u, name))
    non_tree = tree.non_tree_edges()
    for e in non_tree:
        omega.append(("edge", e.name))
    index = {key: i + 1 for i, key in enumerate(omega)}

    def lift(u, w):
        names = gog.alphabets[u].names
        return tuple(index[("vertex", u, names[abs(x) - 1])] * (1 if x > 0 else -1) for x in w.letters)

    Om = Alphabet([f"w{i}" for i in range(len(omega))])
    subst: dict = {}

    def apply(word: tuple) -> tuple:
        out = []
        for x in word:
            if abs(x) in subst:
                img = subst[abs(x)]
                out.extend(img if x > 0 else tuple(-y for y in reversed(img)))
            else:
                out.append(x)
        return Word(Om, out).letters

    for e in gog.geometric_edges:
        A = lift(e.source, gog.edges[e.index ^ 1].image)
        B = lift(e.target, e.image)
        A, B = apply(A), apply(B)
        inv = lambda t: tuple(-y for y in reversed(t))  # noqa: E731
        if e.index in tree.tree_edges:
            rel = A + inv(B)
            sides = [B, A]
        else:
            t = index[("edge", e.name)]
            rel = (t,) + B + (-t,) + inv(A)
            sides = [A, B]
        core, _ = cyclic_reduce(Word(Om, rel))
        r = core.letters
        if not r:
            raise MarkingError(f"relation at edge {e.name} is trivial after substitution")
        counts: dict = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        stable = {index[("edge", f.name)] for f in non_tree}
        choice = None
        for side in sides:
            if len(side) == 1 and counts.get(abs(side[0])) == 1:
                choice = abs(side[0])
                break
        if choice is None:
            for x in r:
                if counts[abs(x)] == 1 and abs(x) not in stable:
                    choice = abs(x)
                    break
        if choice is None:
            raise MarkingError(f"no generator can be eliminated at edge {e.name}; "
                               "supply an explicit identification")
        pos = next(i for i, x in enumerate(r) if abs(x) == choice)
        rot = r[pos:] + r[:pos]
        rest = rot[1:]
        # x^eps * rest == 1
        value = inv(rest) if rot[0] > 0 else rest
        value = Word(Om, value).letters
        for key in list(subst):
            subst[key] = Word(Om, [y for x in subst[key] for y in (
                (value if x > 0 else inv(value)) if abs(x) == choice else (x,))]).letters
        subst[choice] = value

    remaining = [i + 1 for i in range(len(omega)) if i + 1 not in subst]
    plain = [omega[i - 1][2] if omega[i - 1][0] == "vertex" else omega[i - 1][1] for i in remaining]
    names = []
    for i, p in zip(remaining, plain):
        key = omega[i - 1]
        if key[0] == "vertex" and plain.count(p) > 1:
            names.append(f"{key[1]}.{p}")
        else:
            names.append(p)
    F = Alphabet(names)
    to_F = {om: k + 1 for k, om in enumerate(remaining)}

    def image(i):
        word = subst.get(i, (i,))
        return Word(F, [to_F[abs(x)] * (1 if x > 0 else -1) for x in word])

    rho = {key: image(index[key]) for key in omega}
    hom = extend_homomorphism(gog, base, rho, FreeTarget(F), tree=tree)
    loops = pi1_generators(gog, base, tree)
    section = {name: loops[omega[i - 1]] for name, i in zip(names, remaining)}
    for name, loop in section.items():
        if hom(loop) != F.gen(name):
            raise MarkingError(f"section check failed for {name}")
    return Marking(gog, base, F, hom, section, tree)


def random_loop(gog: GraphOfGroups, base: str, max_edges: int, word_len: int, rng) -> PathWord:
    """A random loop at ``base`` with at most ``max_edges`` edges.

    The walk takes random steps, then returns along the spanning tree, so it
    is usually, but not always, Britton-reduced.
    """
    from .words import random_word
    tree = SpanningTree(gog, base)
    budget = rng.randint(0, max_edges)
    v = base
    p = PathWord.vertex(gog, base, random_word(gog.alphabets[base], rng.randint(0, word_len), rng))
    steps = 0
    while True:
        back = tree.depth[v]
        if steps + back + 1 > budget:
            break
        e = rng.choice(gog.out_edges(v))
        if steps + 1 + tree.depth[e.target] > budget:
            break
        w = random_word(gog.alphabets[e.target], rng.randint(0, word_len), rng)
        p = p * PathWord.edge(gog, e) * PathWord.vertex(gog, e.target, w)
        v = e.target
        steps += 1
    return p * tree.sigma(v).inverse()
