"""Automorphisms of free groups, acting on the right of words.

``apply(w, compose(f, g)) == apply(apply(w, f), g)``; inner automorphisms are
``inner(h): x -> h^-1 x h``.  Automorphisms carry an explicit inverse, checked
at construction, instead of being inverted by search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from . import kernels
from .words import Alphabet, AlphabetMismatch, Word, conjugacy_witness, is_proper_power

__all__ = [
    "FreeAut", "OuterAutClass", "NotInvertible", "compose", "identity",
    "inner", "inner_witness", "is_inner", "outer_equal", "outer_commutes",
    "conjugate_aut", "mccool_membership", "McCool", "parse_aut",
    "format_aut", "images_inner_witness",
]

Images = Union[Mapping[str, Union[Word, str]], Sequence[Word]]


class NotInvertible(ValueError):
    """The supplied inverse does not invert the map."""


def _images(domain: Alphabet, codomain: Alphabet, spec: Images) -> tuple:
    if isinstance(spec, Mapping):
        if set(spec) != set(domain.names):
            raise ValueError(f"images must be given for exactly {domain.names}, got {sorted(spec)}")
        seq = [spec[name] for name in domain.names]
    else:
        seq = list(spec)
        if len(seq) != domain.rank:
            raise ValueError(f"expected {domain.rank} images, got {len(seq)}")
    out = []
    for img in seq:
        if isinstance(img, str):
            img = codomain.word(img)
        if img.alphabet != codomain:
            raise AlphabetMismatch(f"image {img} not over {codomain}")
        out.append(img)
    return tuple(out)


class FreeAut:
    """An isomorphism ``domain -> codomain`` with a verified inverse.

    ``codomain`` defaults to ``domain``; vertex isomorphisms of a graph of
    groups use distinct alphabets.
    """

    __slots__ = ("domain", "codomain", "forward", "backward", "_pos", "_neg",
                 "_bpos", "_bneg")

    def __init__(self, domain: Alphabet, forward: Images, backward: Images,
                 codomain: Optional[Alphabet] = None, check: bool = True):
        codomain = domain if codomain is None else codomain
        if domain.rank != codomain.rank:
            raise NotInvertible(f"{domain} and {codomain} have different ranks")
        self.domain = domain
        self.codomain = codomain
        self.forward = _images(domain, codomain, forward)
        self.backward = _images(codomain, domain, backward)
        self._pos = tuple(w.letters for w in self.forward)
        self._neg = tuple(kernels.inverse(t) for t in self._pos)
        self._bpos = tuple(w.letters for w in self.backward)
        self._bneg = tuple(kernels.inverse(t) for t in self._bpos)
        if check:
            for i in range(domain.rank):
                x = (i + 1,)
                if kernels.substitute(kernels.substitute(x, self._pos, self._neg),
                                      self._bpos, self._bneg) != x:
                    raise NotInvertible(f"backward(forward({domain.names[i]})) != {domain.names[i]}")
                if kernels.substitute(kernels.substitute(x, self._bpos, self._bneg),
                                      self._pos, self._neg) != x:
                    raise NotInvertible(f"forward(backward({codomain.names[i]})) != {codomain.names[i]}")

    @property
    def alphabet(self) -> Alphabet:
        if self.domain != self.codomain:
            raise ValueError("not an automorphism: domain and codomain differ")
        return self.domain

    @property
    def is_endo(self) -> bool:
        return self.domain == self.codomain

    def __call__(self, w: Word) -> Word:
        if w.alphabet != self.domain:
            raise AlphabetMismatch(f"{w} is not over {self.domain}")
        return Word(self.codomain, kernels.substitute(w.letters, self._pos, self._neg), reduced=True)

    apply = __call__

    def image(self, name: str) -> Word:
        return self.forward[self.domain.index(name)]

    def inverse(self) -> "FreeAut":
        return FreeAut(self.codomain, self.backward, self.forward, codomain=self.domain, check=False)

    def __eq__(self, other):
        return (isinstance(other, FreeAut) and self.domain == other.domain
                and self.codomain == other.codomain and self.forward == other.forward)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.forward))

    def __repr__(self):
        body = ", ".join(f"{n}->{w}" for n, w in zip(self.domain.names, self.forward))
        return f"FreeAut({body})"

    def __str__(self):
        return format_aut(self)

    def __pow__(self, k: int) -> "FreeAut":
        if k < 0:
            return self.inverse() ** (-k)
        out = identity(self.alphabet)
        for _ in range(k):
            out = compose(out, self)
        return out


def identity(alphabet: Alphabet) -> FreeAut:
    gens = alphabet.gens
    return FreeAut(alphabet, gens, gens, check=False)


def inner(h: Word) -> FreeAut:
    """``Ad(h): x -> h^-1 x h``."""
    A = h.alphabet
    hinv = h.inverse()
    return FreeAut(A, [x.conjugate(h) for x in A.gens],
                   [x.conjugate(hinv) for x in A.gens], check=False)


def compose(f: FreeAut, g: FreeAut) -> FreeAut:
    """``f`` first, then ``g``."""
    if f.codomain != g.domain:
        raise AlphabetMismatch(f"cannot compose {f.domain}->{f.codomain} with {g.domain}->{g.codomain}")
    fwd = [g(w) for w in f.forward]
    bwd = [f.inverse()(w) for w in g.backward]
    return FreeAut(f.domain, fwd, bwd, codomain=g.codomain, check=False)


def images_inner_witness(alphabet: Alphabet, images: Sequence[Word]) -> Optional[Word]:
    """``g`` with ``images[i] == x_i^g`` for every generator, or None.

    Works for any endomorphism given by images; the generator images need not
    form an automorphism.
    """
    if alphabet.rank < 2:
        raise ValueError("innerness is not decided in rank 1 (the centre is nontrivial)")
    x1, x2 = alphabet.gen(0), alphabet.gen(1)
    g0 = conjugacy_witness(x1, images[0])
    if g0 is None:
        return None
    # every solution of x1^g == images[0] is x1^k * g0
    y = images[1].conjugate(g0.inverse())
    if conjugacy_witness(x2, y) is None:
        return None
    bound = len(y) + 1
    g = None
    for k in range(-bound, bound + 1):
        if x2.conjugate(x1 ** k) == y:
            g = (x1 ** k) * g0
            break
    if g is None:
        return None
    for x, img in zip(alphabet.gens, images):
        if x.conjugate(g) != img:
            return None
    return g


def inner_witness(f: FreeAut) -> Optional[Word]:
    return images_inner_witness(f.alphabet, f.forward)


def is_inner(f: FreeAut) -> bool:
    return inner_witness(f) is not None


def outer_equal(f: FreeAut, g: FreeAut) -> bool:
    return is_inner(compose(f, g.inverse()))


def outer_commutes(f: FreeAut, g: FreeAut) -> bool:
    return outer_equal(compose(f, g), compose(g, f))


def conjugate_aut(f: FreeAut, by: FreeAut) -> FreeAut:
    """``by^-1 . f . by`` in composition order (``by`` inverse applied first)."""
    return compose(by.inverse(), compose(f, by))


@dataclass
class McCool:
    member: bool
    witnesses: list = field(default_factory=list)  # h_i with (w_i f)^{h_i} == w_i
    failures: list = field(default_factory=list)
    commutes: Optional[bool] = None

    def __bool__(self):
        return self.member


def mccool_membership(f: FreeAut, family: Sequence[Word],
                      equivariant_wrt: Optional[FreeAut] = None) -> McCool:
    """Does the outer class of ``f`` lie in the (equivariant) McCool group of
    the cyclic subgroups generated by ``family``?
    """
    A = f.alphabet
    if A.rank < 2:
        raise ValueError("McCool membership needs rank >= 2")
    for w in family:
        if w.alphabet != A:
            raise AlphabetMismatch(f"family word {w} not over {A}")
        if not w.letters:
            raise ValueError("family words must be nontrivial")
        if is_proper_power(w) is not None:
            raise ValueError(f"family word {w} is a proper power; <{w}> is not maximal cyclic")
    result = McCool(True)
    for w in family:
        h = conjugacy_witness(f(w), w)
        result.witnesses.append(h)
        if h is None:
            result.member = False
            result.failures.append(f"{w} -> {f(w)} is not conjugate to {w}")
    if equivariant_wrt is not None:
        result.commutes = outer_commutes(f, equivariant_wrt)
        if not result.commutes:
            result.member = False
            result.failures.append("does not commute with the equivariance automorphism in Out")
    return result


class OuterAutClass:
    """An element of ``Out``; equality is decided, never by representative."""

    __slots__ = ("representative",)

    def __init__(self, representative: FreeAut):
        self.representative = representative

    def __eq__(self, other):
        if not isinstance(other, OuterAutClass):
            return NotImplemented
        return outer_equal(self.representative, other.representative)

    __hash__ = None

    def is_trivial(self) -> bool:
        return is_inner(self.representative)

    def __mul__(self, other: "OuterAutClass") -> "OuterAutClass":
        return OuterAutClass(compose(self.representative, other.representative))

    def inverse(self) -> "OuterAutClass":
        return OuterAutClass(self.representative.inverse())

    def __repr__(self):
        return f"[{self.representative!r}]"


def _parse_block(lines):
    pairs = []
    for line in lines:
        if "->" not in line:
            raise ValueError(f"expected 'x -> word', got {line!r}")
        lhs, rhs = line.split("->", 1)
        pairs.append((lhs.strip(), rhs.strip()))
    return pairs


def parse_aut(text: str, alphabet: Optional[Alphabet] = None) -> FreeAut:
    """Parse ``x -> word`` lines (``;`` also separates) with an ``inverse:`` block."""
    raw = [s.strip() for chunk in text.splitlines() for s in chunk.split(";")]
    raw = [s for s in raw if s and not s.startswith("#")]
    if "inverse:" not in raw:
        raise ValueError("automorphism text needs an 'inverse:' block")
    cut = raw.index("inverse:")
    fwd = _parse_block(raw[:cut])
    bwd = _parse_block(raw[cut + 1:])
    if alphabet is None:
        alphabet = Alphabet([name for name, _ in fwd])
    return FreeAut(alphabet, {n: w for n, w in fwd}, {n: w for n, w in bwd})


def format_aut(f: FreeAut) -> str:
    lines = [f"{n} -> {w}" for n, w in zip(f.domain.names, f.forward)]
    lines.append("inverse:")
    lines += [f"{n} -> {w}" for n, w in zip(f.codomain.names, f.backward)]
    return "\n".join(lines)
