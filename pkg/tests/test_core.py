import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from treewreath.core import (
    ParseError,
    SignatureMismatch,
    TreeAutomorphism,
    WreathSignature,
    commutator,
    conjugate,
    from_leaf_permutation,
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
from treewreath.oracle import compose, perm_inverse

from conftest import B


def P(arities, text):
    return parse(WreathSignature(arities), text)


signatures = st.one_of(
    st.integers(1, 6).map(WreathSignature.binary),
    st.lists(st.integers(2, 4), min_size=1, max_size=4).map(WreathSignature),
)


@st.composite
def elements(draw, n=1, sig=None):
    sig = draw(signatures) if sig is None else sig
    seeds = draw(st.lists(st.integers(0, 2 ** 32), min_size=n, max_size=n))
    return [random_element(sig, s) for s in seeds]


def test_signature_validation():
    with pytest.raises(ValueError):
        WreathSignature([])
    with pytest.raises(ValueError):
        WreathSignature([2, 1])
    sig = WreathSignature([2, 3, 2])
    assert [sig.level_size(l) for l in range(4)] == [1, 2, 6, 12]
    assert sig.tail() == WreathSignature([3, 2])
    assert WreathSignature.binary(3).group_order() == 128


def test_identity_render():
    assert render(identity(WreathSignature.binary(2))) == "0|00"
    assert render(identity(WreathSignature([3, 3]))) == "0|000"


def test_parse_examples():
    g = P((2, 2), "1|01")
    assert g.root_label == 1
    assert g.levels[1].tolist() == [0, 1]
    t = P((3, 3), "2|1,2,0")
    assert t.levels[0].tolist() == [2] and t.levels[1].tolist() == [1, 2, 0]
    assert render(t) == "2|120"


@pytest.mark.parametrize("text", ["1|011", "1|0", "2|00", "1", "1|0a", "|00", "1|00|00", "1|0,1,1"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        P((2, 2), text)


def test_comma_form_for_large_arity():
    sig = WreathSignature([10, 2])
    g = parse(sig, "7|0,1,0,1,0,1,0,1,0,1")
    assert render(g) == "7|0,1,0,1,0,1,0,1,0,1"
    assert parse(sig, render(g)) == g
    with pytest.raises(ParseError):
        parse(sig, "7|0101010101")
    big = WreathSignature([12])
    assert parse(big, "11").root_label == 11


def test_render_roundtrip_random():
    rng = np.random.default_rng(7)
    for i in range(1000):
        depth = int(rng.integers(1, 7))
        sig = WreathSignature(rng.integers(2, 5, size=depth))
        g = random_element(sig, rng)
        assert parse(sig, render(g)) == g


def test_render_injective_on_B2():
    assert len(set(B(2).renders())) == 8


def test_direct_products():
    assert render(multiply(P((2,), "1"), P((2,), "1"))) == "0"
    assert render(multiply(P((2, 2), "1|00"), P((2, 2), "0|10"))) == "1|01"
    assert render(multiply(P((3, 3), "1|000"), P((3, 3), "1|000"))) == "2|000"


def test_product_matches_leaf_composition():
    g, h = P((2, 2), "1|00"), P((2, 2), "0|10")
    # g swaps halves, h swaps leaves 1,2: g then h sends 1->3, 2->4, 3->2, 4->1
    assert compose(leaf_permutation(g), leaf_permutation(h)) == (2, 3, 1, 0)
    assert leaf_permutation(multiply(g, h)) == (2, 3, 1, 0)


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        multiply(P((2, 2), "0|00"), P((2,), "0"))
    with pytest.raises(SignatureMismatch):
        commutator(P((2, 2), "0|00"), P((2, 2, 2), "0|00|0000"))


def test_inverse_examples():
    sig = WreathSignature.binary(2)
    assert inverse(identity(sig)) == identity(sig)
    g = P((2, 2), "1|10")
    assert render(inverse(g)) == "1|01"
    assert multiply(g, inverse(g)).is_identity()


def test_inverse_exhaustive_B3():
    for g in B(3):
        assert multiply(g, inverse(g)).is_identity()
        assert multiply(inverse(g), g).is_identity()


def test_inverse_section_rule():
    rng = np.random.default_rng(3)
    sig = WreathSignature([3, 2, 3])
    for _ in range(50):
        g = random_element(sig, rng)
        gi = inverse(g)
        assert gi.root_label == (-g.root_label) % 3
        for i, s in enumerate(sections(g)):
            image = (i + g.root_label) % 3
            assert sections(gi)[image] == inverse(s)


def test_commutator_examples():
    g = P((2, 2), "1|01")
    assert commutator(g, g).is_identity()
    assert commutator(g, identity(g.signature)).is_identity()
    assert render(commutator(P((2, 2), "1|00"), P((2, 2), "0|01"))) == "0|11"


def test_conjugate_examples():
    a = P((2, 2), "0|10")
    assert conjugate(a, identity(a.signature)) == a
    assert render(conjugate(a, P((2, 2), "1|00"))) == "0|01"


def _parities(g):
    return tuple(c % 2 for c in index_vector(g).counts)


def test_conjugation_preserves_index_parity_B3():
    group = list(B(3))
    for a in group:
        for b in group:
            assert _parities(conjugate(a, b)) == _parities(a)


def test_conjugation_can_change_index_counts():
    # exact counts are not a conjugation invariant; only their parities are
    a, b = P((2, 2, 2), "1|11|0000"), P((2, 2, 2), "1|00|0010")
    c = conjugate(a, b)
    assert render(c) == "1|11|0110"
    assert index_vector(a).counts == (1, 2, 0)
    assert index_vector(c).counts == (1, 2, 2)
    # same answer from the leaf action alone
    pa, pb = leaf_permutation(a), leaf_permutation(b)
    assert leaf_permutation(c) == compose(compose(pb, pa), perm_inverse(pb))


@given(elements(n=2))
@settings(max_examples=100, deadline=None)
def test_conjugation_preserves_label_sums_random(pair):
    a, b = pair
    c = conjugate(a, b)
    for l, p in enumerate(a.signature.arities):
        assert int(c.levels[l].sum()) % p == int(a.levels[l].sum()) % p


def test_section_examples():
    g = P((2, 2), "1|01")
    assert section(g, 0, 1) == g
    assert render(section(g, 1, 2)) == "1"
    assert section(g, 1, 2).signature == WreathSignature.binary(1)
    h = P((2, 2, 2), "1|01|0110")
    assert render(section(h, 1, 2)) == "1|10"
    assert render(section(h, 2, 3)) == "1"
    with pytest.raises(ValueError):
        section(g, 1, 3)
    with pytest.raises(ValueError):
        section(g, 2, 1)


@given(elements())
@settings(max_examples=200, deadline=None)
def test_sections_reassemble(gs):
    (g,) = gs
    if g.depth == 1:
        return
    assert from_sections(g.root_label, sections(g), g.signature) == g


def test_index_vector_examples():
    assert index_vector(identity(WreathSignature.binary(3))).counts == (0, 0, 0)
    assert index_vector(P((2, 2), "1|01")).counts == (1, 1)
    assert index_vector(P((3, 3), "2|120")).counts == (1, 2)


def test_leaf_permutation_examples():
    assert leaf_permutation(identity(WreathSignature.binary(2))) == (0, 1, 2, 3)
    assert leaf_permutation(P((2, 2), "0|10")) == (1, 0, 2, 3)
    # (1 3)(2 4) in 1-based leaf numbering
    assert leaf_permutation(P((2, 2), "1|00")) == (2, 3, 0, 1)


def test_leaf_permutation_by_recursive_action():
    # direct recursion g(xw) = sigma_g(x) g|_x(w) on words
    def act(g, word):
        if not word:
            return ()
        p = g.signature.arities[0]
        x = word[0]
        y = (x + g.root_label) % p
        if g.depth == 1:
            return (y,)
        return (y,) + act(section(g, 1, x + 1), word[1:])

    rng = np.random.default_rng(11)
    for arities in [(2, 2, 2), (3, 2), (2, 3, 2)]:
        sig = WreathSignature(arities)
        words = list(itertools.product(*(range(p) for p in arities)))
        for _ in range(20):
            g = random_element(sig, rng)
            images = [words.index(act(g, w)) for w in words]
            assert leaf_permutation(g) == tuple(images)


def test_from_leaf_permutation_roundtrip():
    rng = np.random.default_rng(5)
    for arities in [(2, 2, 2), (3, 3), (2, 3, 4)]:
        sig = WreathSignature(arities)
        for _ in range(20):
            g = random_element(sig, rng)
            assert from_leaf_permutation(sig, leaf_permutation(g)) == g
    with pytest.raises(ValueError):
        # a 3-cycle on the leaves of B_2 is not a tree automorphism
        from_leaf_permutation(WreathSignature.binary(2), (1, 2, 0, 3))


def test_random_element_deterministic():
    sig = WreathSignature([2, 3, 2])
    assert random_element(sig, 42) == random_element(sig, 42)
    assert random_element(sig, 42) != random_element(sig, 43)


def test_random_element_label_frequencies():
    sig = WreathSignature([3, 3, 3])
    rng = np.random.default_rng(2024)
    draws = 10_000
    counts = np.zeros(3)
    for _ in range(draws):
        g = random_element(sig, rng)
        counts += np.bincount(np.concatenate(g.levels), minlength=3)
    n = draws * sig.n_labels
    expected = n / 3
    sigma = np.sqrt(n * (1 / 3) * (2 / 3))
    assert np.all(np.abs(counts - expected) < 5 * sigma)


@given(elements())
@settings(max_examples=100, deadline=None)
def test_random_element_invariants(gs):
    (g,) = gs
    for l, lv in enumerate(g.levels):
        assert lv.size == g.signature.level_size(l)
        assert 0 <= lv.min() and lv.max() < g.signature.arities[l]


def test_identity_law_random():
    rng = np.random.default_rng(1)
    for _ in range(100):
        sig = WreathSignature(rng.integers(2, 5, size=int(rng.integers(1, 5))))
        g = random_element(sig, rng)
        e = identity(sig)
        assert multiply(e, g) == g and multiply(g, e) == g


def test_associativity_exhaustive_B2():
    group = list(B(2))
    for g, h, l in itertools.product(group, repeat=3):
        assert multiply(multiply(g, h), l) == multiply(g, multiply(h, l))


@given(elements(n=3))
@settings(max_examples=300, deadline=None)
def test_associativity_random(triple):
    g, h, l = triple
    assert multiply(multiply(g, h), l) == multiply(g, multiply(h, l))


@given(elements(n=2))
@settings(max_examples=300, deadline=None)
def test_homomorphism_random(pair):
    g, h = pair
    assert leaf_permutation(multiply(g, h)) == compose(leaf_permutation(g), leaf_permutation(h))


@given(elements())
@settings(max_examples=200, deadline=None)
def test_inverse_random(gs):
    (g,) = gs
    assert multiply(g, inverse(g)).is_identity()


def test_group_order_by_enumeration():
    assert len(B(3)) == 2 ** 7 == WreathSignature.binary(3).group_order()
    assert WreathSignature([3, 3]).group_order() == 3 ** 4


def test_values_are_immutable():
    g = P((2, 2), "1|01")
    with pytest.raises(ValueError):
        g.levels[1][0] = 1
    assert hash(g) == hash(P((2, 2), "1|01"))


def test_constructor_validation():
    sig = WreathSignature.binary(2)
    with pytest.raises(ValueError):
        TreeAutomorphism(sig, [[0], [0, 2]])
    with pytest.raises(ValueError):
        TreeAutomorphism(sig, [[0], [0, 1, 1]])
