"""Automorphisms of finite rooted trees stored as portraits.

A tree with signature ``(p1, ..., pk)`` has ``p1 * ... * pl`` vertices on
level ``l``; every internal vertex carries a rotation amount modulo the
arity of its level.  Label ``1`` is the cycle ``(1, 2, ..., p)``.

Products read left to right: ``g * h`` applies ``g`` first and then ``h``,
so that ``(g*h)|_i = g|_i * h|_{g(i)}`` and ``leaf_permutation`` is a
homomorphism for composition ``(s t)(i) = t(s(i))``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ParseError",
    "SignatureMismatch",
    "WreathSignature",
    "TreeAutomorphism",
    "LevelIndexVector",
    "identity",
    "parse",
    "render",
    "multiply",
    "inverse",
    "commutator",
    "conjugate",
    "section",
    "sections",
    "from_sections",
    "index_vector",
    "leaf_permutation",
    "from_leaf_permutation",
    "random_element",
    "as_rng",
]


class ParseError(ValueError):
    pass


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class WreathSignature:
    arities: tuple[int, ...]

    def __init__(self, arities: Iterable[int]):
        arities = tuple(int(p) for p in arities)
        if not arities:
            raise ValueError("signature needs depth >= 1")
        if any(p < 2 for p in arities):
            raise ValueError(f"every arity must be >= 2, got {arities}")
        object.__setattr__(self, "arities", arities)

    @classmethod
    def uniform(cls, arity: int, depth: int) -> WreathSignature:
        return cls([arity] * depth)

    @classmethod
    def binary(cls, depth: int) -> WreathSignature:
        return cls([2] * depth)

    @property
    def depth(self) -> int:
        return len(self.arities)

    @property
    def is_binary(self) -> bool:
        return all(p == 2 for p in self.arities)

    @property
    def comma_form(self) -> bool:
        return any(p >= 10 for p in self.arities)

    def level_size(self, level: int) -> int:
        """Number of vertices on ``level`` (0 <= level <= depth)."""
        return math.prod(self.arities[:level])

    @property
    def n_leaves(self) -> int:
        return self.level_size(self.depth)

    @property
    def n_labels(self) -> int:
        return sum(self.level_size(l) for l in range(self.depth))

    def tail(self, levels: int = 1) -> WreathSignature:
        """Signature of the subtree hanging below a vertex on ``levels``."""
        return WreathSignature(self.arities[levels:])

    def group_order(self) -> int:
        return math.prod(self.arities[l] ** self.level_size(l) for l in range(self.depth))

    def __str__(self) -> str:
        return ",".join(map(str, self.arities))


@dataclass(frozen=True)
class LevelIndexVector:
    """Active vertex counts, one entry per level."""

    counts: tuple[int, ...]

    def __getitem__(self, level: int) -> int:
        return self.counts[level]

    def __len__(self) -> int:
        return len(self.counts)

    def all_even(self) -> bool:
        return all(c % 2 == 0 for c in self.counts)


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class TreeAutomorphism:
    """Immutable portrait of a tree automorphism.

    ``levels[l]`` holds the rotation labels of the level-``l`` vertices in
    left-to-right order.
    """

    __slots__ = ("signature", "levels", "_hash")

    def __init__(self, signature: WreathSignature, levels: Sequence, *, check: bool = True):
        self.signature = signature
        if check:
            if len(levels) != signature.depth:
                raise ValueError(f"expected {signature.depth} levels, got {len(levels)}")
            levels = tuple(_frozen(lv) for lv in levels)
            for l, lv in enumerate(levels):
                if lv.shape != (signature.level_size(l),):
                    raise ValueError(
                        f"level {l}: expected {signature.level_size(l)} labels, got {lv.size}")
                p = signature.arities[l]
                if lv.size and (lv.min() < 0 or lv.max() >= p):
                    raise ValueError(f"level {l}: labels must lie in 0..{p - 1}")
        self.levels = tuple(levels)
        self._hash = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeAutomorphism):
            return NotImplemented
        return self.signature == other.signature and all(
            np.array_equal(a, b) for a, b in zip(self.levels, other.levels))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.signature.arities, tuple(lv.tobytes() for lv in self.levels)))
        return self._hash

    def __repr__(self) -> str:
        return f"TreeAutomorphism({str(self.signature)!r}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def __mul__(self, other: TreeAutomorphism) -> TreeAutomorphism:
        return multiply(self, other)

    def __pow__(self, n: int) -> TreeAutomorphism:
        base = self if n >= 0 else inverse(self)
        result = identity(self.signature)
        for _ in range(abs(n)):
            result = multiply(result, base)
        return result

    def inverse(self) -> TreeAutomorphism:
        return inverse(self)

    @property
    def root_label(self) -> int:
        return int(self.levels[0][0])

    @property
    def depth(self) -> int:
        return self.signature.depth

    def is_identity(self) -> bool:
        return not any(lv.any() for lv in self.levels)

    def flat_labels(self) -> tuple[int, ...]:
        return tuple(int(x) for lv in self.levels for x in lv)


def _check_same(g: TreeAutomorphism, h: TreeAutomorphism) -> None:
    if g.signature != h.signature:
        raise SignatureMismatch(f"signatures differ: ({g.signature}) vs ({h.signature})")


def identity(sig: WreathSignature) -> TreeAutomorphism:
    return TreeAutomorphism(
        sig, [np.zeros(sig.level_size(l), dtype=np.int64) for l in range(sig.depth)])


def parse(sig: WreathSignature, text: str) -> TreeAutomorphism:
    """Read a portrait such as ``"1|01|0110"`` or ``"2|1,2,0"``."""
    if not isinstance(text, str):
        raise ParseError(f"portrait must be a string, got {type(text).__name__}")
    parts = text.strip().split("|")
    if len(parts) != sig.depth:
        raise ParseError(f"{text!r}: expected {sig.depth} levels, got {len(parts)}")
    levels = []
    for l, part in enumerate(parts):
        part = part.strip()
        size = sig.level_size(l)
        if not part:
            raise ParseError(f"{text!r}: level {l} is empty")
        if "," in part:
            tokens = [t.strip() for t in part.split(",")]
        elif sig.comma_form:
            tokens = [part]
        else:
            tokens = list(part)
        if not all(t.isdigit() for t in tokens):
            raise ParseError(f"{text!r}: level {l} has a non-numeric label")
        labels = [int(t) for t in tokens]
        if len(labels) != size:
            raise ParseError(
                f"{text!r}: level {l} has {len(labels)} labels, expected {size}")
        p = sig.arities[l]
        if any(x >= p for x in labels):
            raise ParseError(f"{text!r}: level {l} label out of range for arity {p}")
        levels.append(labels)
    return TreeAutomorphism(sig, levels)


def render(g: TreeAutomorphism) -> str:
    sep = "," if g.signature.comma_form else ""
    return "|".join(sep.join(str(int(x)) for x in lv) for lv in g.levels)


_ZERO = _frozen([0])


@lru_cache(maxsize=None)
def _slots(p: int) -> np.ndarray:
    return _frozen(np.arange(p)[None, :])


def _vertex_images(g: TreeAutomorphism, upto: int | None = None) -> list[np.ndarray]:
    """``images[l][v]`` is the position that ``g`` sends level-``l`` vertex ``v`` to."""
    sig = g.signature
    upto = sig.depth if upto is None else upto
    images = [_ZERO]
    for l in range(upto):
        p = sig.arities[l]
        child = (_slots(p) + g.levels[l][:, None]) % p
        child += images[-1][:, None] * p
        images.append(child.ravel())
    return images


def multiply(g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
    """``g`` then ``h``: label at v is ``g(v)``-label of ``h`` plus label of ``g`` at v."""
    _check_same(g, h)
    sig = g.signature
    images = _vertex_images(g, sig.depth - 1)
    levels = [
        (g.levels[l] + h.levels[l][images[l]]) % sig.arities[l] for l in range(sig.depth)
    ]
    for lv in levels:
        lv.setflags(write=False)
    return TreeAutomorphism(sig, levels, check=False)


def inverse(g: TreeAutomorphism) -> TreeAutomorphism:
    sig = g.signature
    images = _vertex_images(g, sig.depth - 1)
    levels = []
    for l in range(sig.depth):
        lv = np.empty_like(g.levels[l])
        lv[images[l]] = (-g.levels[l]) % sig.arities[l]
        lv.setflags(write=False)
        levels.append(lv)
    return TreeAutomorphism(sig, levels, check=False)


def commutator(a: TreeAutomorphism, b: TreeAutomorphism) -> TreeAutomorphism:
    """``[a, b] = a b a^-1 b^-1``."""
    _check_same(a, b)
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)))


def conjugate(a: TreeAutomorphism, b: TreeAutomorphism) -> TreeAutomorphism:
    """``a^b = b a b^-1`` (left conjugation)."""
    _check_same(a, b)
    return multiply(multiply(b, a), inverse(b))


def section(g: TreeAutomorphism, level: int, position: int) -> TreeAutomorphism:
    """Section of ``g`` at the vertex with 1-based ``position`` on ``level``."""
    sig = g.signature
    if not 0 <= level < sig.depth:
        raise ValueError(f"level must be in 0..{sig.depth - 1}, got {level}")
    if not 1 <= position <= sig.level_size(level):
        raise ValueError(
            f"position must be in 1..{sig.level_size(level)} on level {level}, got {position}")
    sub = sig.tail(level)
    j = position - 1
    levels = []
    for m in range(sub.depth):
        width = sub.level_size(m)
        levels.append(g.levels[level + m][j * width:(j + 1) * width])
    return TreeAutomorphism(sub, levels, check=False)


def sections(g: TreeAutomorphism) -> list[TreeAutomorphism]:
    """The first-level sections ``g|_1, ..., g|_p``; requires depth >= 2."""
    sig = g.signature
    if sig.depth < 2:
        raise ValueError("depth-1 automorphisms have no nontrivial sections")
    return [section(g, 1, i) for i in range(1, sig.arities[0] + 1)]


def from_sections(root_label: int, parts: Sequence[TreeAutomorphism],
                  sig: WreathSignature | None = None) -> TreeAutomorphism:
    """Assemble ``(parts[0], ..., parts[p-1]) sigma^root_label``."""
    if not parts:
        raise ValueError("need at least one section")
    sub = parts[0].signature
    for part in parts:
        if part.signature != sub:
            raise SignatureMismatch("sections must share a signature")
    if sig is None:
        sig = WreathSignature((len(parts),) + sub.arities)
    elif sig.arities[0] != len(parts) or sig.tail() != sub:
        raise SignatureMismatch(f"sections do not fit signature ({sig})")
    root = np.array([root_label % sig.arities[0]], dtype=np.int64)
    levels = [root] + [
        np.concatenate([part.levels[m] for part in parts]) for m in range(sub.depth)
    ]
    return TreeAutomorphism(sig, levels)


def index_vector(g: TreeAutomorphism) -> LevelIndexVector:
    return LevelIndexVector(tuple(int(np.count_nonzero(lv)) for lv in g.levels))


@lru_cache(maxsize=64)
def _leaf_paths(arities: tuple[int, ...]) -> tuple:
    """Per leaf: (level, vertex on the path, letter, arity, place value) steps."""
    weights = [math.prod(arities[l + 1:]) for l in range(len(arities))]
    paths = []
    for word in itertools.product(*(range(p) for p in arities)):
        vertex = 0
        steps = []
        for l, (p, x) in enumerate(zip(arities, word)):
            steps.append((l, vertex, x, p, weights[l]))
            vertex = vertex * p + x
        paths.append(tuple(steps))
    return tuple(paths)


def leaf_permutation(g: TreeAutomorphism) -> tuple[int, ...]:
    """Images of the leaves (0-based, words in lexicographic order).

    Walks each leaf word ``x1...xk`` down the tree using the recursive
    action ``g(xw) = sigma_g(x) g|_x(w)``; deliberately independent of
    ``multiply``.
    """
    labels = [lv.tolist() for lv in g.levels]
    return tuple(
        sum(((x + labels[l][v]) % p) * w for l, v, x, p, w in steps)
        for steps in _leaf_paths(g.signature.arities)
    )


def from_leaf_permutation(sig: WreathSignature, images: Sequence[int]) -> TreeAutomorphism:
    """Recover the portrait from its leaf action.

    The label at vertex ``v`` on level ``l`` is the level-``l`` letter of the
    image of the leaf ``v 0 0 ... 0``.  Raises ``ValueError`` when the
    permutation does not come from a rotation portrait.
    """
    arities = sig.arities
    if len(images) != sig.n_leaves:
        raise ValueError(f"expected {sig.n_leaves} images, got {len(images)}")
    levels = []
    for l in range(sig.depth):
        below = math.prod(arities[l + 1:])
        p = arities[l]
        lv = []
        for v in range(sig.level_size(l)):
            leaf = v * p * below
            lv.append((images[leaf] // below) % p)
        levels.append(lv)
    g = TreeAutomorphism(sig, levels)
    if leaf_permutation(g) != tuple(images):
        raise ValueError("permutation is not induced by a cyclic portrait")
    return g


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_element(sig: WreathSignature, seed=None) -> TreeAutomorphism:
    """Uniform element of the full wreath product; ``seed`` may be a Generator."""
    rng = as_rng(seed)
    levels = [rng.integers(0, sig.arities[l], size=sig.level_size(l), dtype=np.int64)
              for l in range(sig.depth)]
    return TreeAutomorphism(sig, levels)
