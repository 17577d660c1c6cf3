"""Iterated wreath products of cyclic groups as rooted-tree automorphisms.

Portrait arithmetic, membership tests for the Sylow 2-subgroups of
S_{2^k} and A_{2^k} and their derived subgroups, explicit single-commutator
decompositions, and a brute-force permutation oracle to check them.
"""
from .commutators import (
    CommutatorWitness,
    NotInDerivedSubgroup,
    VerificationError,
    decompose_Bk_with_Gk_witness,
    decompose_derived_wreath,
    decompose_Gk,
    lift_commutator,
    residual_product,
)
from .core import (
    LevelIndexVector,
    ParseError,
    SignatureMismatch,
    TreeAutomorphism,
    WreathSignature,
    commutator,
    conjugate,
    from_sections,
    identity,
    index_vector,
    inverse,
    leaf_permutation,
    multiply,
    parse,
    random_element,
    render,
    section,
    sections,
)
from .membership import (
    SubgroupKind,
    SubgroupSpec,
    in_derived_Bk,
    in_derived_Gk,
    in_derived_Gk_by_index,
    in_derived_wreath,
    in_Gk,
    is_member,
    random_member,
    subgroup_order,
)

__version__ = "0.1.0"
