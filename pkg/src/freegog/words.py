"""Reduced words in finitely generated free groups.

Letters are stored as signed ints (``+k`` for generator ``k-1``, ``-k`` for
its inverse); the heavy lifting happens in :mod:`freegog.kernels`.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional

from . import kernels

__all__ = [
    "Alphabet", "Word", "AlphabetMismatch", "WordSyntaxError",
    "multiply", "conjugate", "cyclic_reduce", "are_conjugate",
    "conjugacy_witness", "is_proper_power", "power_of", "random_word",
    "word_key",
]

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.']*$")
_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_.']*)(?:\^(-?\d+))?$")


class AlphabetMismatch(ValueError):
    """Raised when words over different alphabets are combined."""


class WordSyntaxError(ValueError):
    pass


class Alphabet:
    """An ordered basis of a free group."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("an alphabet needs at least one generator")
        for name in names:
            if not isinstance(name, str) or not _NAME.match(name) or name == "1":
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordSyntaxError(f"unknown generator {name!r} (alphabet {self})") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(("Alphabet", self.names))

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def __str__(self):
        return "F(" + ",".join(self.names) + ")"

    @property
    def identity(self) -> "Word":
        return Word(self, (), reduced=True)

    def gen(self, name_or_index) -> "Word":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.rank:
            raise IndexError(i)
        return Word(self, (i + 1,), reduced=True)

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.rank))

    def word(self, text: str) -> "Word":
        """Parse ``a*b^-1*a^3`` style text; ``1`` is the identity."""
        text = text.strip()
        if not text:
            raise WordSyntaxError("empty word text (use '1' for the identity)")
        letters = []
        for raw in text.split("*"):
            tok = raw.strip()
            if tok == "1":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise WordSyntaxError(f"bad token {raw!r} in {text!r}")
            i = self.index(m.group(1)) + 1
            k = int(m.group(2)) if m.group(2) is not None else 1
            if k == 0:
                raise WordSyntaxError(f"zero exponent in {raw!r}")
            letters.extend([i if k > 0 else -i] * abs(k))
        return Word(self, letters)


class Word:
    """A freely reduced word; immutable and hashable."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = (), reduced: bool = False):
        letters = tuple(letters)
        if not reduced:
            r = alphabet.rank
            for x in letters:
                if x == 0 or abs(x) > r:
                    raise ValueError(f"letter {x} out of range for {alphabet}")
            letters = kernels.free_reduce(letters)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def _check(self, other: "Word"):
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.alphabet, kernels.multiply(self.letters, other.letters), reduced=True)

    def inverse(self) -> "Word":
        return Word(self.alphabet, kernels.inverse(self.letters), reduced=True)

    def __pow__(self, k: int) -> "Word":
        return Word(self.alphabet, kernels.power(self.letters, int(k)), reduced=True)

    def conjugate(self, h: "Word") -> "Word":
        """``h^-1 * self * h``."""
        self._check(h)
        inv = kernels.inverse(h.letters)
        return Word(self.alphabet,
                    kernels.multiply(kernels.multiply(inv, self.letters), h.letters),
                    reduced=True)

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (isinstance(other, Word) and self.letters == other.letters
                and self.alphabet == other.alphabet)

    def __hash__(self):
        return hash((self.alphabet.names, self.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        names = self.alphabet.names
        parts = []
        i = 0
        n = len(self.letters)
        while i < n:
            x = self.letters[i]
            j = i
            while j < n and self.letters[j] == x:
                j += 1
            run = j - i
            k = run if x > 0 else -run
            name = names[abs(x) - 1]
            parts.append(name if k == 1 else f"{name}^{k}")
            i = j
        return "*".join(parts)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def exponent_sums(self) -> tuple:
        sums = [0] * self.alphabet.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sums)


def _letter_key(x: int):
    return (abs(x), 0 if x > 0 else 1)


def word_key(w: Word):
    """Shortlex order: length first, then alphabet order with ``x < x^-1``."""
    return (len(w.letters), tuple(_letter_key(x) for x in w.letters))


def multiply(u: Word, v: Word) -> Word:
    return u * v


def conjugate(w: Word, h: Word) -> Word:
    return w.conjugate(h)


def cyclic_reduce(w: Word) -> tuple:
    """Return ``(core, conjugator)`` with ``w == conjugator^-1 * core * conjugator``."""
    k = kernels.peel_count(w.letters)
    n = len(w.letters)
    core = Word(w.alphabet, w.letters[k:n - k], reduced=True)
    conj = Word(w.alphabet, kernels.inverse(w.letters[:k]), reduced=True)
    return core, conj


def _period(letters: tuple) -> int:
    n = len(letters)
    for p in range(1, n + 1):
        if n % p == 0 and letters[:p] * (n // p) == letters:
            return p
    return n


def conjugacy_witness(u: Word, v: Word) -> Optional[Word]:
    """Shortest (then shortlex-least) ``h`` with ``u.conjugate(h) == v``, or None."""
    u._check(v)
    U, c = cyclic_reduce(u)
    V, d = cyclic_reduce(v)
    if len(U) != len(V):
        return None
    A = u.alphabet
    if not U.letters:
        return c.inverse() * d
    p = _period(U.letters)
    offsets = [i for i in range(p) if U.letters[i:] + U.letters[:i] == V.letters]
    if not offsets:
        return None
    root = Word(A, U.letters[:p], reduced=True)
    K = (len(c) + len(d)) // p + 2
    cinv = c.inverse()
    best = None
    for i in offsets:
        prefix = Word(A, U.letters[:i], reduced=True)
        for k in range(-K, K + 1):
            h = cinv * (root ** k) * prefix * d
            if best is None or word_key(h) < word_key(best):
                best = h
    return best


def are_conjugate(u: Word, v: Word) -> bool:
    return conjugacy_witness(u, v) is not None


def is_proper_power(w: Word) -> Optional[tuple]:
    """``(root, exponent)`` with exponent >= 2 and maximal, or None."""
    if not w.letters:
        raise ValueError("the identity has no well-defined root")
    U, c = cyclic_reduce(w)
    p = _period(U.letters)
    m = len(U.letters) // p
    if m < 2:
        return None
    root = Word(w.alphabet, U.letters[:p], reduced=True).conjugate(c)
    return root, m


def power_of(w: Word, z: Word) -> Optional[int]:
    """The unique ``k`` with ``w == z**k``, or None."""
    w._check(z)
    if not z.letters:
        raise ValueError("power_of needs a nontrivial base")
    Z, c = cyclic_reduce(z)
    # c w c^-1 must be a power of the cyclically reduced Z
    y = w.conjugate(c.inverse()).letters
    if not y:
        return 0
    n = len(Z.letters)
    if len(y) % n:
        return None
    m = len(y) // n
    if y == Z.letters * m:
        return m
    if y == kernels.inverse(Z.letters) * m:
        return -m
    return None


def random_word(alphabet: Alphabet, length: int, rng) -> Word:
    """Uniform reduced word of exactly ``length`` letters."""
    r = alphabet.rank
    letters = []
    while len(letters) < length:
        x = rng.randint(1, r) * rng.choice((1, -1))
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(alphabet, letters, reduced=True)
