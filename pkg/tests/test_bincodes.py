import pytest

from codetower import f2
from codetower.bincodes import (
    BinaryCode,
    CosetLabel,
    code_dual,
    code_equivalent,
    construction_a_code,
    construction_b_code,
    coset_weight_enumerator,
    d4,
    d4_even,
    embed_self_dual,
    enumerate_doubly_even_containing_allones,
    enumerator_polynomial,
    hat_map,
    is_doubly_even,
    is_self_dual,
    kleinian_substitution,
    named_code,
    permute_code,
    recover_kleinian,
    tetrad,
    weight_enumerator,
)
from codetower.corpus import even_kleinian, named_kleinian
from codetower.errors import HypothesisViolation
from codetower.kleinian import DELTA4_PLUS, EPSILON2, KleinianCode, k_equivalent


def s(v, n):
    return f2.to_string(v, n)


def test_hat_map_examples():
    assert s(hat_map("a"), 4) == "1100"
    assert s(hat_map("0"), 4) == "0000"
    assert s(hat_map("bc"), 8) == "10100110"


def test_construction_a_examples():
    assert code_equivalent(construction_a_code(EPSILON2), named_code("e8")) is not None
    assert code_equivalent(construction_a_code(DELTA4_PLUS), named_code("d16plus")) is not None
    assert construction_a_code(KleinianCode.zero(3)) == d4(3)


def test_construction_b_examples():
    eps22 = named_kleinian("eps2^2")
    B = construction_b_code(eps22)
    assert (B.length, B.dim) == (16, 7)
    assert code_equivalent(B, construction_b_code(DELTA4_PLUS)) is not None
    for K in even_kleinian().values():
        A, B = construction_a_code(K), construction_b_code(K)
        assert A.contains_code(B) and A.dim == B.dim + 1


def test_e8_enumerator():
    # the 16 codewords of C(eps2) enumerated directly
    words = f2.span(construction_a_code(EPSILON2).basis)
    c = [0] * 9
    for w in words:
        c[bin(w).count("1")] += 1
    assert c == [1, 0, 0, 0, 14, 0, 0, 0, 1]
    assert weight_enumerator(named_code("e8")).coeffs == tuple(c)


def test_coset_enumerator_remark():
    for K in even_kleinian().values():
        C = construction_b_code(K)
        n = C.length
        got = coset_weight_enumerator(CosetLabel.of(C, tetrad(0, n)))[4]
        assert 4 * got == n + 4 * C.weight_count(4)


def test_coset_of_codeword_is_code():
    C = named_code("e8")
    x = C.basis[1]
    assert coset_weight_enumerator(CosetLabel.of(C, x)) == weight_enumerator(C)


def test_coset_rep_is_lexicographic_minimum():
    C = BinaryCode.from_words(6, ["110100", "011010"])
    x = f2.from_string("101111")
    lab = CosetLabel.of(C, x)
    assert s(lab.rep, 6) == min(s(w, 6) for w in lab.words())


def test_duality_and_parity():
    e8 = named_code("e8")
    assert is_self_dual(e8) and is_doubly_even(e8)
    assert is_doubly_even(d4_even(4))
    C = BinaryCode.from_words(7, ["1100110", "0011011"])
    assert code_dual(code_dual(C)) == C


def test_equivalence_examples():
    eps22 = named_kleinian("eps2^2")
    assert code_equivalent(construction_a_code(eps22), named_code("e8^2")) is not None
    assert code_equivalent(named_code("e8^2"), named_code("d16plus")) is None
    assert code_equivalent(named_code("e8"), named_code("e8")) is not None


def test_equivalence_witness_maps_code():
    C = named_code("d16plus")
    perm = (3, 7, 0, 12, 5, 1, 15, 9, 2, 4, 14, 6, 10, 8, 13, 11)
    D = permute_code(C, perm)
    w = code_equivalent(C, D)
    assert w is not None and permute_code(C, w) == D


def test_recovery_examples():
    eps22 = named_kleinian("eps2^2")
    C = construction_b_code(eps22)
    rec = recover_kleinian(C, tetrad(0, 16))
    assert k_equivalent(rec.kleinian, eps22) is not None
    assert permute_code(C, rec.perm) == construction_b_code(rec.kleinian)
    rec = recover_kleinian(construction_a_code(DELTA4_PLUS))
    assert k_equivalent(rec.kleinian, DELTA4_PLUS) is not None
    with pytest.raises(HypothesisViolation):
        recover_kleinian(named_code("e8"), f2.from_string("11110000"))


def test_recovery_hypothesis_failure_is_distinct():
    C = BinaryCode.from_words(8, ["11110000", "00001111"])
    with pytest.raises(HypothesisViolation):
        recover_kleinian(C, f2.from_string("11000000"))


def test_recovery_round_trip_all_even_codes():
    for K in even_kleinian().values():
        C = construction_b_code(K)
        rec = recover_kleinian(C, tetrad(0, C.length))
        assert k_equivalent(rec.kleinian, K) is not None


def test_embed_self_dual():
    ones = BinaryCode.from_words(8, ["11111111"])
    E = embed_self_dual(ones)
    assert code_equivalent(E, named_code("e8")) is not None
    e8 = named_code("e8")
    assert embed_self_dual(e8) == e8
    E = embed_self_dual(construction_b_code(named_kleinian("eps2^2")))
    assert is_self_dual(E) and is_doubly_even(E)
    assert any(code_equivalent(E, named_code(x)) is not None for x in ("e8^2", "d16plus"))


def test_length_8_classes_containing_all_ones():
    classes = enumerate_doubly_even_containing_allones(8)
    assert sorted(C.dim for C in classes) == [1, 2, 3, 4]
    assert all(f2.from_string("1" * 8) in C for C in classes)
    assert code_equivalent(classes[-1], named_code("e8")) is not None


def test_substitution_identity_small_case():
    # eps2: 1 word of weight 0, 3 of weight 2 -> (X^4+Y^4)^2 + 3 (2X^2Y^2)^2
    assert kleinian_substitution(EPSILON2) == enumerator_polynomial(named_code("e8"))
    assert kleinian_substitution(EPSILON2) == {(0, 8): 1, (4, 4): 14, (8, 0): 1}


def test_substitution_plus_variant_sign_for_odd_length():
    K = even_kleinian()["K3.0"]
    assert kleinian_substitution(K, plus=True) == enumerator_polynomial(construction_b_code(K))
