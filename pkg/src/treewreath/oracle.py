"""Brute-force ground truth built on leaf permutations.

Nothing here calls the membership predicates: groups are produced by
label enumeration and filtered by leaf sign, derived subgroups by closure.
Permutations are tuples of 0-based leaf images and compose left to right,
``compose(a, b) = a then b``, matching ``multiply``.
"""
from __future__ import annotations

import itertools
import logging
from typing import Iterable, Iterator, Sequence

from .core import TreeAutomorphism, WreathSignature, from_leaf_permutation, leaf_permutation, render
from .membership import SubgroupKind, SubgroupSpec

__all__ = [
    "CapExceeded",
    "DEFAULT_CAP",
    "QUADRATIC_CAP",
    "ElementSet",
    "compose",
    "perm_inverse",
    "perm_sign",
    "leaf_sign",
    "enumerate_group",
    "generators",
    "derived_closure",
    "derived_closure_pairwise",
    "commutator_set",
    "commutator_width",
    "center",
    "centralizer",
]

logger = logging.getLogger(__name__)

Perm = tuple[int, ...]

DEFAULT_CAP = 2 ** 20
QUADRATIC_CAP = 2 ** 10


class CapExceeded(RuntimeError):
    pass


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(b[i] for i in a)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_commutator(a: Perm, b: Perm) -> Perm:
    return compose(compose(a, b), compose(perm_inverse(a), perm_inverse(b)))


def perm_sign(a: Perm) -> int:
    seen = [False] * len(a)
    sign = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = a[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leaf_sign(g: TreeAutomorphism) -> int:
    return perm_sign(leaf_permutation(g))


class ElementSet:
    """Deduplicated elements of one signature, kept in render order."""

    def __init__(self, signature: WreathSignature, elements: Iterable[TreeAutomorphism] = (),
                 *, closed: bool = False):
        self.signature = signature
        by_perm: dict[Perm, TreeAutomorphism] = {}
        for g in elements:
            if g.signature != signature:
                raise ValueError(f"element {g} does not have signature ({signature})")
            by_perm.setdefault(leaf_permutation(g), g)
        self._init(by_perm, closed)

    @classmethod
    def _from_pairs(cls, signature, pairs, *, closed=False) -> ElementSet:
        self = cls.__new__(cls)
        self.signature = signature
        self._init(dict(pairs), closed)
        return self

    def _init(self, by_perm: dict[Perm, TreeAutomorphism], closed: bool) -> None:
        keyed = sorted((render(g), p) for p, g in by_perm.items())
        self.members = tuple(by_perm[p] for _, p in keyed)
        self.perms = tuple(p for _, p in keyed)
        self._by_perm = by_perm
        self.closed = closed

    @classmethod
    def from_perms(cls, signature: WreathSignature, perms: Iterable[Perm],
                   *, closed: bool = False) -> ElementSet:
        self = cls.__new__(cls)
        self.signature = signature
        self._init({p: from_leaf_permutation(signature, p) for p in set(perms)}, closed)
        return self

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[TreeAutomorphism]:
        return iter(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, TreeAutomorphism):
            return item.signature == self.signature and leaf_permutation(item) in self._by_perm
        return tuple(item) in self._by_perm

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.signature == other.signature and self._by_perm.keys() == other._by_perm.keys()

    def __repr__(self) -> str:
        return f"ElementSet(({self.signature}), {len(self)} elements)"

    def perm_set(self) -> frozenset:
        return frozenset(self._by_perm)

    def renders(self) -> list[str]:
        return [render(g) for g in self.members]


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what}: size {size} exceeds cap {cap}")


def _full_elements(sig: WreathSignature) -> Iterator[TreeAutomorphism]:
    sizes = [sig.level_size(l) for l in range(sig.depth)]
    ranges = [range(sig.arities[l]) for l in range(sig.depth) for _ in range(sizes[l])]
    for flat in itertools.product(*ranges):
        levels, pos = [], 0
        for n in sizes:
            levels.append(flat[pos:pos + n])
            pos += n
        yield TreeAutomorphism(sig, levels)


def enumerate_group(spec: SubgroupSpec, cap: int = DEFAULT_CAP) -> ElementSet:
    """Every element of the group in ``spec``, found from definitions only."""
    sig = spec.signature
    _check_cap(sig.group_order(), cap, f"enumerate ({sig})")
    pairs = ((leaf_permutation(g), g) for g in _full_elements(sig))
    if spec.kind is SubgroupKind.FULL:
        return ElementSet._from_pairs(sig, pairs, closed=True)
    if spec.kind is SubgroupKind.DERIVED:
        return derived_closure(enumerate_group(SubgroupSpec(SubgroupKind.FULL, sig), cap), cap)
    even = ElementSet._from_pairs(sig, ((p, g) for p, g in pairs if perm_sign(p) == 1), closed=True)
    if spec.kind is SubgroupKind.SYLOW_A:
        return even
    return derived_closure(even, cap)


def _extend(group: set, gens: list, new: Perm) -> set:
    """Closure of ``group`` (closed under ``gens``) after adjoining ``new``."""
    if new in group:
        return group
    gens = gens + [new]
    group = set(group)
    queue = list(group)
    while queue:
        x = queue.pop()
        for s in gens:
            y = compose(x, s)
            if y not in group:
                group.add(y)
                queue.append(y)
    return group


def _identity_perm(sig: WreathSignature) -> Perm:
    return tuple(range(sig.n_leaves))


def _generate(sig: WreathSignature, gens: Sequence[Perm]) -> set:
    group = {_identity_perm(sig)}
    used: list[Perm] = []
    for s in gens:
        group = _extend(group, used, s)
        used.append(s)
    return group


def generators(elements: ElementSet) -> list[Perm]:
    """A generating set picked greedily in render order."""
    group = {_identity_perm(elements.signature)}
    gens: list[Perm] = []
    for p in elements.perms:
        if p not in group:
            group = _extend(group, gens, p)
            gens.append(p)
    if len(group) != len(elements):
        raise ValueError("element set is not closed under multiplication")
    return gens


def derived_closure(elements: ElementSet, cap: int = DEFAULT_CAP) -> ElementSet:
    """Derived subgroup as the normal closure of commutators of generators."""
    _check_cap(len(elements), cap, "derived_closure")
    sig = elements.signature
    gens = generators(elements)
    gen_inv = [perm_inverse(s) for s in gens]
    e = _identity_perm(sig)
    subgroup = {e}
    sub_gens: list[Perm] = []
    queue = [perm_commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    while queue:
        c = queue.pop()
        if c in subgroup:
            continue
        subgroup = _extend(subgroup, sub_gens, c)
        sub_gens.append(c)
        queue.extend(compose(compose(s, c), si) for s, si in zip(gens, gen_inv))
    logger.debug("derived closure of %r: %d elements", elements, len(subgroup))
    return ElementSet.from_perms(sig, subgroup, closed=True)


def derived_closure_pairwise(elements: ElementSet, cap: int = QUADRATIC_CAP) -> ElementSet:
    """Subgroup generated by every pairwise commutator; quadratic, for cross-checks."""
    comms = commutator_set(elements, cap=cap)
    return ElementSet.from_perms(
        elements.signature, _generate(elements.signature, comms.perms), closed=True)


def commutator_set(elements: ElementSet, right: ElementSet | None = None,
                   cap: int = QUADRATIC_CAP) -> ElementSet:
    """Raw set ``{[a, b] : a in elements, b in right}`` without closure."""
    right = elements if right is None else right
    if right.signature != elements.signature:
        raise ValueError("signatures differ")
    _check_cap(len(elements), cap, "commutator_set")
    _check_cap(len(right), cap, "commutator_set")
    left_inv = [(a, perm_inverse(a)) for a in elements.perms]
    right_inv = [(b, perm_inverse(b)) for b in right.perms]
    out = set()
    for a, ai in left_inv:
        for b, bi in right_inv:
            out.add(compose(compose(a, b), compose(ai, bi)))
    return ElementSet.from_perms(elements.signature, out)


def commutator_width(elements: ElementSet, cap: int = QUADRATIC_CAP) -> int:
    """Exact commutator width by breadth-first products of commutators."""
    derived = derived_closure(elements).perm_set()
    if len(derived) == 1:
        return 0
    comms = commutator_set(elements, cap=cap).perm_set()
    reached = set(comms)
    width = 1
    while not derived <= reached:
        reached = {compose(x, c) for x in reached for c in comms}
        width += 1
        if width > len(derived):
            raise RuntimeError("commutator products failed to cover the derived subgroup")
    return width


def centralizer(elements: ElementSet, sub: ElementSet, cap: int = DEFAULT_CAP) -> ElementSet:
    """``{g in elements : g s = s g for all s in sub}``."""
    _check_cap(len(elements), cap, "centralizer")
    if sub.signature != elements.signature:
        raise ValueError("signatures differ")
    big = elements.perm_set()
    if not sub.perm_set() <= big:
        raise ValueError("sub is not contained in the set")
    gens = generators(sub) if sub.closed else list(sub.perms)
    keep = [g for g, p in zip(elements.members, elements.perms)
            if all(compose(p, s) == compose(s, p) for s in gens)]
    return ElementSet(elements.signature, keep, closed=elements.closed)


def center(elements: ElementSet, cap: int = DEFAULT_CAP) -> ElementSet:
    return centralizer(elements, elements, cap)
