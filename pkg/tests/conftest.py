import functools

import pytest

from treewreath import SubgroupKind, SubgroupSpec, WreathSignature
from treewreath.oracle import enumerate_group


@functools.lru_cache(maxsize=None)
def oracle_group(kind: SubgroupKind, arities: tuple):
    return enumerate_group(SubgroupSpec(kind, WreathSignature(arities)))


def B(k):
    return oracle_group(SubgroupKind.FULL, (2,) * k)


def G(k):
    return oracle_group(SubgroupKind.SYLOW_A, (2,) * k)


def B_derived(k):
    return oracle_group(SubgroupKind.DERIVED, (2,) * k)


def G_derived(k):
    return oracle_group(SubgroupKind.SYLOW_A_DERIVED, (2,) * k)


@pytest.fixture
def b2():
    return WreathSignature.binary(2)


@pytest.fixture
def c3c3():
    return WreathSignature([3, 3])
