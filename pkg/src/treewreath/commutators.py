"""Write derived-subgroup elements as a single commutator, with explicit witnesses.

Every routine checks ``[left, right] == target`` (and the witnesses'
subgroup tags) before returning; a failed check raises
:class:`VerificationError`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .core import (
    SignatureMismatch,
    TreeAutomorphism,
    commutator,
        from_sections,
    identity,
    inverse,
    multiply,
    render,
    sections,
)
from .membership import (
    SubgroupKind,
    in_derived_Bk,
    in_derived_Gk,
    in_derived_wreath,
    is_member,
)

__all__ = [
    "NotInDerivedSubgroup",
    "VerificationError",
    "CommutatorWitness",
    "residual_product",
    "lift_commutator",
    "decompose_derived_wreath",
    "decompose_Bk_with_Gk_witness",
    "decompose_Gk",
]


class NotInDerivedSubgroup(ValueError):
    pass


class VerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CommutatorWitness:
    target: TreeAutomorphism
    left: TreeAutomorphism
    right: TreeAutomorphism
    left_tag: SubgroupKind = SubgroupKind.FULL
    right_tag: SubgroupKind = SubgroupKind.FULL

    def verify(self) -> bool:
        return (commutator(self.left, self.right) == self.target
                and is_member(self.left, self.left_tag)
                and is_member(self.right, self.right_tag))

    def swapped(self) -> CommutatorWitness:
        """``[u, v]^-1 = [v, u]``: a witness for the inverse target."""
        return CommutatorWitness(inverse(self.target), self.right, self.left,
                                 self.right_tag, self.left_tag)

    def to_dict(self) -> dict:
        return {
            "target": render(self.target),
            "left": render(self.left),
            "right": render(self.right),
            "left_set": self.left_tag.value,
            "right_set": self.right_tag.value,
            "verified": self.verify(),
        }


def _checked(w: CommutatorWitness) -> CommutatorWitness:
    if not w.verify():
        raise VerificationError(
            f"witness check failed for target {w.target}: [{w.left}, {w.right}]")
    return w


def residual_product(w: TreeAutomorphism) -> TreeAutomorphism:
    """``r_{p-1} ... r_1 r_p`` for ``w = (r_1, ..., r_p)`` with trivial root."""
    if w.root_label != 0:
        raise NotInDerivedSubgroup(f"{w}: root label must be 0")
    r = sections(w)
    head = reduce(multiply, reversed(r[:-1]))
    return multiply(head, r[-1])


def _lift(r: list[TreeAutomorphism], f: TreeAutomorphism, g: TreeAutomorphism,
          with_target: bool = True):
    """Unchecked core of :func:`lift_commutator`; returns ``(target, left, right)``.

    ``target`` is None unless ``with_target``.
    """
    r_prod = reduce(multiply, reversed(r))  # r_{p-1} ... r_1 = c^-1
    c = inverse(r_prod)
    b = [multiply(multiply(c, inverse(f)), r_prod)]
    for ri in r:
        b.append(multiply(ri, b[-1]))
    a_last = multiply(multiply(inverse(b[-1]), g), b[-1])
    e = identity(f.signature)
    left = from_sections(1, [e] * len(r) + [a_last])
    right = from_sections(0, b)
    target = None
    if with_target:
        target = from_sections(0, r + [multiply(c, commutator(f, g))])
    return target, left, right


def lift_commutator(r: Sequence[TreeAutomorphism], f: TreeAutomorphism,
                    g: TreeAutomorphism) -> CommutatorWitness:
    """Witnesses for ``w = (r_1, ..., r_{p-1}, r_1^-1 ... r_{p-1}^-1 [f, g])``.

    ``left = (e, ..., e, a_p) sigma`` and ``right = (b_1, ..., b_p)`` with
    ``b_1 = (f^-1)^c`` for ``c = r_1^-1 ... r_{p-1}^-1``, ``b_i = r_{i-1} b_{i-1}``
    and ``a_p = g^(b_p^-1)``.
    """
    r = list(r)
    if not r:
        raise ValueError("need p - 1 >= 1 sections")
    sub = f.signature
    for x in r + [g]:
        if x.signature != sub:
            raise SignatureMismatch("r, f, g must share a signature")
    return _checked(CommutatorWitness(*_lift(r, f, g)))


def decompose_derived_wreath(w: TreeAutomorphism) -> CommutatorWitness:
    """Single commutator ``[x, y] = w`` for ``w`` in the derived subgroup of the full wreath product."""
    if not in_derived_wreath(w):
        raise NotInDerivedSubgroup(f"{w} is not in the derived subgroup")
    return _checked(CommutatorWitness(w, *_decompose_wreath(w)))


# The recursive helpers return unchecked (left, right) pairs; the public
# entry points verify the final witness once.

def _decompose_wreath(w: TreeAutomorphism):
    if w.depth == 1:
        # C_p is abelian: the only derived element is e = [e, e]
        return w, w
    f, g = _decompose_wreath(residual_product(w))
    _, left, right = _lift(sections(w)[:-1], f, g, with_target=False)
    return left, right


def decompose_Bk_with_Gk_witness(w: TreeAutomorphism) -> CommutatorWitness:
    """``w = [x, y]`` with ``x`` in G_k and ``y`` in B_k, for ``w`` in B_k'."""
    if not in_derived_Bk(w):
        raise NotInDerivedSubgroup(f"{w} is not in B_k'")
    return _checked(CommutatorWitness(w, *_decompose_Bk(w),
                                      SubgroupKind.SYLOW_A, SubgroupKind.FULL))


def _decompose_Bk(w: TreeAutomorphism):
    if w.depth == 1:
        return w, w
    r1, r2 = sections(w)
    x = multiply(r1, r2)
    # x^-1 = [u, v] with u in G, hence x = [v, u] and the second factor lies in G
    u, v = _decompose_Bk(inverse(x))
    _, left, right = _lift([r1], v, u, with_target=False)
    return left, right


def decompose_Gk(w: TreeAutomorphism) -> CommutatorWitness:
    """``w = [x, y]`` with both witnesses in G_k, for ``w`` in G_k' (depth >= 2)."""
    if not in_derived_Gk(w):
        raise NotInDerivedSubgroup(f"{w} is not in G_k'")
    r1, r2 = sections(w)
    u, v = _decompose_Bk(inverse(multiply(r1, r2)))
    _, left, right = _lift([r1], v, u, with_target=False)
    return _checked(CommutatorWitness(w, left, right,
                                      SubgroupKind.SYLOW_A, SubgroupKind.SYLOW_A))
