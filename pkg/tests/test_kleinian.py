from itertools import product

import pytest

from codetower import f2
from codetower.kleinian import (
    DELTA4_PLUS,
    EPSILON2,
    Equivalence,
    KleinianCode,
    KleinianWord,
    k_direct_sum,
    k_dual,
    k_enumerate,
    k_equivalent,
    k_inner,
    k_macwilliams,
    k_weight_enumerator,
    word_from_string,
    word_to_string,
)

# product table of the four-group pairing, written out by hand
TABLE = {(x, y): int(x != "0" and y != "0" and x != y) for x in "0abc" for y in "0abc"}


def table_inner(x, y):
    return sum(TABLE[p] for p in zip(x, y)) % 2


def table_weight(x):
    return sum(ch != "0" for ch in x)


def brute_words(K):
    return {word_to_string(w, K.length) for w in K.codewords()}


def test_encoding_round_trip():
    for s in ("0", "a", "b", "c", "abc0", "cc0a"):
        assert word_to_string(word_from_string(s), len(s)) == s
    assert word_from_string("a") == 0b01 and word_from_string("b") == 0b10 and word_from_string("c") == 0b11


def test_inner_examples():
    a, b = KleinianWord.parse("a"), KleinianWord.parse("b")
    assert k_inner(a, b) == 1
    assert k_inner(a, a) == 0
    assert k_inner(KleinianWord.parse("ab"), KleinianWord.parse("ba")) == 0


def test_inner_matches_table_everywhere():
    for x, y in product(("".join(p) for p in product("0abc", repeat=2)), repeat=2):
        assert k_inner(KleinianWord.parse(x), KleinianWord.parse(y)) == table_inner(x, y)


def test_inner_length_mismatch():
    with pytest.raises(ValueError):
        k_inner(KleinianWord.parse("a"), KleinianWord.parse("ab"))


def test_dual_examples():
    assert k_dual(EPSILON2) == EPSILON2
    assert k_dual(DELTA4_PLUS) == DELTA4_PLUS
    assert len(k_dual(KleinianCode.zero(1))) == 4


def test_dual_against_table():
    K = KleinianCode.from_words(3, ["ab0", "0cc"])
    every = ["".join(p) for p in product("0abc", repeat=3)]
    want = {x for x in every if all(table_inner(x, k) == 0 for k in brute_words(K))}
    assert brute_words(k_dual(K)) == want


def test_weight_enumerator_examples():
    # eps2 = {00, aa, bb, cc}: one word of weight 0 and three of weight 2
    assert k_weight_enumerator(EPSILON2).coeffs == (1, 0, 3)
    assert k_weight_enumerator(DELTA4_PLUS).coeffs == (1, 0, 6, 0, 9)
    assert k_weight_enumerator(KleinianCode.zero(5)).coeffs == (1, 0, 0, 0, 0, 0)


def test_weight_enumerator_against_table():
    K = KleinianCode.from_words(4, ["abc0", "0aab"])
    c = [0] * 5
    for w in brute_words(K):
        c[table_weight(w)] += 1
    assert k_weight_enumerator(K).coeffs == tuple(c)


def test_weight_enumerator_guard():
    with pytest.raises(ValueError):
        k_weight_enumerator(KleinianCode.zero(9))


def test_macwilliams_even_codes_up_to_length_3():
    for n in range(1, 4):
        for K in k_enumerate(n, even=True):
            W = k_weight_enumerator(K)
            assert k_macwilliams(W, len(K)) == k_weight_enumerator(k_dual(K))


def test_equivalence_examples():
    renamed = KleinianCode.from_words(2, ["cc", "bb"])
    w = k_equivalent(EPSILON2, renamed)
    assert w is not None and w.apply(EPSILON2) == renamed
    eps22 = k_direct_sum(EPSILON2, EPSILON2)
    assert k_equivalent(eps22, DELTA4_PLUS) is None
    w = k_equivalent(DELTA4_PLUS, k_dual(k_dual(DELTA4_PLUS)))
    assert w is not None and w.apply(DELTA4_PLUS) == DELTA4_PLUS


def test_equivalence_witness_is_a_bijection():
    K = KleinianCode.from_words(4, ["ab00", "0cca", "b00b"])
    eq = Equivalence((2, 0, 3, 1), (("b", "a", "c"), ("a", "b", "c"), ("c", "b", "a"), ("a", "c", "b")))
    J = eq.apply(K)
    w = k_equivalent(K, J)
    assert w is not None
    image = {w.apply_word(x, 4) for x in K.codewords()}
    assert image == set(J.codewords())


def test_enumeration_counts():
    assert len(k_enumerate(2, even=True, self_dual=True)) == 1
    assert len(k_enumerate(4, even=True, self_dual=True)) == 2
    fam = [(1, 0, 0, 0, 3), (1, 0, 2, 0, 5), (1, 0, 6, 0, 9)]
    assert len(k_enumerate(4, even=True, enumerators=fam)) == 4


def test_enumeration_matches_brute_force_at_length_2():
    # every subgroup of K^2 by brute force over subsets closed under addition
    reps = k_enumerate(2)
    seen = set()
    for r in range(5):
        for basis in f2.subspaces(4, r):
            K = KleinianCode(2, basis)
            seen.add(next(i for i, R in enumerate(reps) if k_equivalent(R, K) is not None))
    assert seen == set(range(len(reps)))


def test_enumeration_rejects_long_codes():
    with pytest.raises(ValueError):
        k_enumerate(5)


def test_enumeration_is_deterministic():
    a = k_enumerate(3, even=True)
    b = k_enumerate(3, even=True)
    assert a == b
