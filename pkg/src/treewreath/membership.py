"""Membership tests and uniform samplers for B_k, G_k and their derived subgroups.

``B_k`` is the full binary wreath power (Sylow 2-subgroup of S_{2^k}),
``G_k`` its index-2 subgroup of elements acting evenly on the leaves
(Sylow 2-subgroup of A_{2^k}).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import (
    TreeAutomorphism,
    WreathSignature,
    as_rng,
    from_sections,
    identity,
    index_vector,
    inverse,
    multiply,
    random_element,
    sections,
)

__all__ = [
    "SubgroupKind",
    "SubgroupSpec",
    "in_derived_wreath",
    "in_derived_Bk",
    "in_Gk",
    "in_derived_Gk",
    "in_derived_Gk_by_index",
    "is_member",
    "subgroup_order",
    "random_member",
]


class SubgroupKind(enum.Enum):
    FULL = "full"
    DERIVED = "derived"
    SYLOW_A = "sylow-a"
    SYLOW_A_DERIVED = "sylow-a-derived"

    @classmethod
    def from_name(cls, name: str) -> SubgroupKind:
        try:
            return cls(name.lower().replace("_", "-"))
        except ValueError:
            raise ValueError(f"unknown subgroup kind {name!r}; "
                             f"choose from {[k.value for k in cls]}") from None


@dataclass(frozen=True)
class SubgroupSpec:
    kind: SubgroupKind
    signature: WreathSignature

    def __post_init__(self):
        if self.kind in (SubgroupKind.SYLOW_A, SubgroupKind.SYLOW_A_DERIVED):
            if not self.signature.is_binary:
                raise ValueError(f"{self.kind.value} needs a binary signature")


def _require_binary(g: TreeAutomorphism, min_depth: int = 1) -> None:
    sig = g.signature
    if not sig.is_binary:
        raise ValueError(f"binary signature required, got ({sig})")
    if sig.depth < min_depth:
        raise ValueError(f"depth >= {min_depth} required, got {sig.depth}")


def in_derived_wreath(g: TreeAutomorphism) -> bool:
    """Membership in the derived subgroup of the full wreath product ``C_pk wr ... wr C_p1``.

    Root label must vanish and the left-to-right product of the first-level
    sections must lie in the derived subgroup one level down.
    """
    while True:
        if g.root_label != 0:
            return False
        if g.depth == 1:
            return True
        g = reduce(multiply, sections(g))


def in_derived_Bk(g: TreeAutomorphism) -> bool:
    _require_binary(g)
    return index_vector(g).all_even()


def in_Gk(g: TreeAutomorphism) -> bool:
    """g = (g1, g2)s lies in G_k iff g1*g2 lies in G_{k-1}; G_1 is trivial."""
    _require_binary(g)
    while g.depth > 1:
        g1, g2 = sections(g)
        g = multiply(g1, g2)
    return g.is_identity()


def in_derived_Gk(g: TreeAutomorphism) -> bool:
    _require_binary(g, min_depth=2)
    if g.root_label != 0:
        return False
    g1, g2 = sections(g)
    return in_Gk(g1) and in_Gk(g2) and in_derived_Bk(multiply(g1, g2))


def in_derived_Gk_by_index(g: TreeAutomorphism) -> bool:
    """Parity form: even counts above the last level, and each half of the last level even."""
    _require_binary(g, min_depth=2)
    counts = index_vector(g).counts
    if any(c % 2 for c in counts[:-1]):
        return False
    last = g.levels[-1]
    half = last.size // 2
    return int(np.count_nonzero(last[:half])) % 2 == 0 and \
        int(np.count_nonzero(last[half:])) % 2 == 0


def is_member(g: TreeAutomorphism, kind: SubgroupKind) -> bool:
    """Dispatch on ``kind``; DERIVED falls back to the general wreath test off the binary case."""
    if kind is SubgroupKind.FULL:
        return True
    if kind is SubgroupKind.DERIVED:
        return in_derived_Bk(g) if g.signature.is_binary else in_derived_wreath(g)
    if kind is SubgroupKind.SYLOW_A:
        return in_Gk(g)
    if g.depth == 1:
        # G_1 is trivial, so is its derived subgroup
        _require_binary(g)
        return g.is_identity()
    return in_derived_Gk(g)


def subgroup_order(spec: SubgroupSpec) -> int:
    sig = spec.signature
    k = sig.depth
    full = sig.group_order()
    if spec.kind is SubgroupKind.FULL:
        return full
    if spec.kind is SubgroupKind.DERIVED:
        # abelianization of the cyclic tower is C_p1 x ... x C_pk
        product = 1
        for p in sig.arities:
            product *= p
        return full // product
    if spec.kind is SubgroupKind.SYLOW_A:
        return full // 2 if k >= 2 else 1
    if k == 1:
        return 1
    return 2 ** (2 ** k - k - 2)


def _even_parity_bits(rng: np.random.Generator, n: int) -> np.ndarray:
    bits = rng.integers(0, 2, size=n, dtype=np.int64)
    if bits.sum() % 2:
        bits[-1] ^= 1
    return bits


def _random_Gk(sig: WreathSignature, rng: np.random.Generator) -> TreeAutomorphism:
    if sig.depth == 1:
        return identity(sig)
    sub = sig.tail()
    g1 = random_element(sub, rng)
    h = _random_Gk(sub, rng)
    g2 = multiply(inverse(g1), h)
    return from_sections(int(rng.integers(0, 2)), [g1, g2], sig)


def random_member(spec: SubgroupSpec, seed=None) -> TreeAutomorphism:
    """Uniform draw from the subgroup described by ``spec``."""
    sig = spec.signature
    rng = as_rng(seed)
    kind = spec.kind
    if kind is SubgroupKind.FULL:
        return random_element(sig, rng)
    if not sig.is_binary:
        raise ValueError(f"sampling {kind.value} needs a binary signature")
    if kind is SubgroupKind.SYLOW_A:
        return _random_Gk(sig, rng)
    if kind is SubgroupKind.DERIVED:
        levels = [_even_parity_bits(rng, sig.level_size(l)) for l in range(sig.depth)]
        return TreeAutomorphism(sig, levels)
    if sig.depth == 1:
        return identity(sig)
    levels = [_even_parity_bits(rng, sig.level_size(l)) for l in range(sig.depth - 1)]
    half = sig.level_size(sig.depth - 1) // 2
    levels.append(np.concatenate([_even_parity_bits(rng, half), _even_parity_bits(rng, half)]))
    return TreeAutomorphism(sig, levels)
