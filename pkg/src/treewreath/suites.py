"""Named verification suites; each returns a JSON-ready report."""
from __future__ import annotations

import time
from typing import Callable

from .commutators import (
    decompose_Bk_with_Gk_witness,
    decompose_derived_wreath,
    decompose_Gk,
)
from .core import WreathSignature, as_rng, commutator, leaf_permutation, multiply, random_element
from .membership import (
    SubgroupKind,
    SubgroupSpec,
    in_derived_Bk,
    in_derived_Gk,
    in_derived_Gk_by_index,
    in_derived_wreath,
    in_Gk,
    random_member,
    subgroup_order,
)
from .oracle import (
    DEFAULT_CAP,
    QUADRATIC_CAP,
    CapExceeded,
    center,
    commutator_set,
    commutator_width,
    compose,
    derived_closure,
    enumerate_group,
)

SUITES = ("orders", "membership", "cw", "squares", "center", "decompose", "homomorphism")

# largest group scanned element by element
EXHAUSTIVE_LIMIT = 2 ** 15


class _Report:
    def __init__(self, suite: str, sig: WreathSignature):
        self.suite = suite
        self.sig = sig
        self.checks: list[dict] = []
        self.bounds: dict = {}

    def check(self, name: str, expected, actual) -> None:
        self.checks.append(
            {"name": name, "expected": expected, "actual": actual, "pass": expected == actual})

    def as_dict(self, elapsed_ms: int) -> dict:
        return {
            "suite": self.suite,
            "signature": list(self.sig.arities),
            "bounds": self.bounds,
            "checks": self.checks,
            "elapsed_ms": elapsed_ms,
        }


def _group(kind: SubgroupKind, sig: WreathSignature, cap: int):
    return enumerate_group(SubgroupSpec(kind, sig), cap)


def _sample_depths(sig: WreathSignature, max_depth: int | None) -> list[WreathSignature]:
    """Signatures used for sampled checks: binary depths 2..max_depth, or ``sig`` itself."""
    if not sig.is_binary:
        return [sig]
    top = max(sig.depth, max_depth or sig.depth)
    return [WreathSignature.binary(k) for k in range(2, top + 1)]


def _orders(r: _Report, sig, samples, max_depth, rng, cap):
    kinds = [SubgroupKind.FULL, SubgroupKind.DERIVED]
    if sig.is_binary:
        kinds += [SubgroupKind.SYLOW_A]
        if sig.depth >= 2:
            kinds += [SubgroupKind.SYLOW_A_DERIVED]
    for kind in kinds:
        spec = SubgroupSpec(kind, sig)
        r.check(f"order {kind.value}", subgroup_order(spec), len(enumerate_group(spec, cap)))
    if sig.is_binary and sig.depth >= 2:
        r.check("index |B_k : G_k|", 2,
                subgroup_order(SubgroupSpec(SubgroupKind.FULL, sig))
                // subgroup_order(SubgroupSpec(SubgroupKind.SYLOW_A, sig)))


def _membership(r: _Report, sig, samples, max_depth, rng, cap):
    r.bounds["exhaustive_order"] = sig.group_order()
    full = _group(SubgroupKind.FULL, sig, min(cap, EXHAUSTIVE_LIMIT))
    derived = derived_closure(full, cap)
    if not sig.is_binary:
        bad = sum(in_derived_wreath(g) != (g in derived) for g in full)
        r.check("in_derived_wreath mismatches", 0, bad)
        return
    even = _group(SubgroupKind.SYLOW_A, sig, cap)
    bad_b = sum(in_derived_Bk(g) != (g in derived) for g in full)
    bad_g = sum(in_Gk(g) != (g in even) for g in full)
    r.check("in_derived_Bk mismatches", 0, bad_b)
    r.check("in_Gk mismatches", 0, bad_g)
    if sig.depth >= 2:
        even_derived = derived_closure(even, cap)
        r.check("in_derived_Gk mismatches", 0,
                sum(in_derived_Gk(g) != (g in even_derived) for g in full))
        r.check("in_derived_Gk_by_index mismatches", 0,
                sum(in_derived_Gk_by_index(g) != (g in even_derived) for g in full))


def _cw(r: _Report, sig, samples, max_depth, rng, cap):
    r.bounds["quadratic_cap"] = QUADRATIC_CAP
    groups = [("full", _group(SubgroupKind.FULL, sig, cap), 1 if sig.depth >= 2 else 0)]
    if sig.is_binary:
        expected = 1 if sig.depth >= 3 else 0
        groups.append(("sylow-a", _group(SubgroupKind.SYLOW_A, sig, cap), expected))
    for name, group, expected in groups:
        r.check(f"commutator set equals derived subgroup ({name})", True,
                commutator_set(group) == derived_closure(group))
        r.check(f"commutator_width ({name})", expected, commutator_width(group))


def _squares(r: _Report, sig, samples, max_depth, rng, cap):
    if not sig.is_binary:
        raise ValueError("squares suite needs a binary signature")
    bad_b = bad_g = 0
    if sig.group_order() <= min(cap, EXHAUSTIVE_LIMIT):
        r.bounds["exhaustive_order"] = sig.group_order()
        for g in _group(SubgroupKind.FULL, sig, cap):
            sq = multiply(g, g)
            bad_b += not in_derived_Bk(sq)
            if sig.depth >= 2 and in_Gk(g):
                bad_g += not in_derived_Gk(sq)
    depths = _sample_depths(sig, max_depth)
    r.bounds["sampled_depths"] = [s.depth for s in depths]
    r.bounds["samples_per_depth"] = samples
    for s in depths:
        for _ in range(samples):
            g = random_element(s, rng)
            bad_b += not in_derived_Bk(multiply(g, g))
            h = random_member(SubgroupSpec(SubgroupKind.SYLOW_A, s), rng)
            bad_g += not in_derived_Gk(multiply(h, h))
    r.check("g^2 outside B_k' (g in B_k)", 0, bad_b)
    r.check("g^2 outside G_k' (g in G_k)", 0, bad_g)


def _center(r: _Report, sig, samples, max_depth, rng, cap):
    full = _group(SubgroupKind.FULL, sig, cap)
    r.check("|center(full)|", sig.arities[-1], len(center(full)))
    if sig.is_binary and sig.depth >= 2:
        r.check("|center(sylow-a)|", 4 if sig.depth == 2 else 2,
                len(center(_group(SubgroupKind.SYLOW_A, sig, cap))))
    r.bounds["note"] = "centralizer isomorphism types for composite degree are not checked"


def _decompose(r: _Report, sig, samples, max_depth, rng, cap):
    fails = 0
    exhaustive = sig.group_order() <= min(cap, EXHAUSTIVE_LIMIT)
    if exhaustive:
        r.bounds["exhaustive_order"] = sig.group_order()
    if not sig.is_binary:
        targets = list(_group(SubgroupKind.DERIVED, sig, cap)) if exhaustive else []
        targets += [_random_derived_wreath(sig, rng) for _ in range(samples)]
        for w in targets:
            fails += not decompose_derived_wreath(w).verify()
        r.bounds["samples"] = samples
        r.check("decompose_derived_wreath failures", 0, fails)
        return
    fails_g = 0
    if exhaustive:
        for w in _group(SubgroupKind.DERIVED, sig, cap):
            fails += not decompose_Bk_with_Gk_witness(w).verify()
        if sig.depth >= 2:
            for w in _group(SubgroupKind.SYLOW_A_DERIVED, sig, cap):
                fails_g += not decompose_Gk(w).verify()
    depths = _sample_depths(sig, max_depth)
    r.bounds["sampled_depths"] = [s.depth for s in depths]
    r.bounds["samples_per_depth"] = samples
    for s in depths:
        for _ in range(samples):
            w = random_member(SubgroupSpec(SubgroupKind.DERIVED, s), rng)
            fails += not decompose_Bk_with_Gk_witness(w).verify()
            w = random_member(SubgroupSpec(SubgroupKind.SYLOW_A_DERIVED, s), rng)
            fails_g += not decompose_Gk(w).verify()
    r.check("decompose_Bk_with_Gk_witness failures", 0, fails)
    r.check("decompose_Gk failures", 0, fails_g)


def _random_derived_wreath(sig: WreathSignature, rng, factors: int = 3):
    w = commutator(random_element(sig, rng), random_element(sig, rng))
    for _ in range(factors - 1):
        w = multiply(w, commutator(random_element(sig, rng), random_element(sig, rng)))
    return w


def _homomorphism(r: _Report, sig, samples, max_depth, rng, cap):
    bad = 0
    if sig.group_order() <= QUADRATIC_CAP:
        r.bounds["exhaustive_pairs"] = sig.group_order() ** 2
        group = _group(SubgroupKind.FULL, sig, cap)
        for g, pg in zip(group.members, group.perms):
            for h, ph in zip(group.members, group.perms):
                bad += leaf_permutation(multiply(g, h)) != compose(pg, ph)
    s = sig
    if max_depth and len(set(sig.arities)) == 1:
        s = WreathSignature.uniform(sig.arities[0], max(sig.depth, max_depth))
    r.bounds["sampled_signature"] = list(s.arities)
    r.bounds["samples"] = samples
    for _ in range(samples):
        g, h = random_element(s, rng), random_element(s, rng)
        bad += leaf_permutation(multiply(g, h)) != compose(leaf_permutation(g), leaf_permutation(h))
    r.check("leaf_permutation(g*h) != g then h", 0, bad)


_RUNNERS: dict[str, Callable] = {
    "orders": _orders,
    "membership": _membership,
    "cw": _cw,
    "squares": _squares,
    "center": _center,
    "decompose": _decompose,
    "homomorphism": _homomorphism,
}


def run_suite(name: str, sig: WreathSignature, *, samples: int = 100,
              max_depth: int | None = None, seed: int = 0, cap: int = DEFAULT_CAP) -> dict:
    """Run one suite; raises ``CapExceeded`` if a scan would exceed ``cap``."""
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = _Report(name, sig)
    report.bounds["seed"] = seed
    start = time.perf_counter()
    _RUNNERS[name](report, sig, samples, max_depth, as_rng(seed), cap)
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return report.as_dict(elapsed)


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])


__all__ = ["SUITES", "run_suite", "report_passed", "CapExceeded"]
