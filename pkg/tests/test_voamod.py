from fractions import Fraction

import pytest

from codetower.bincodes import code_equivalent, construction_a_code, construction_b_code, named_code
from codetower.corpus import named_kleinian
from codetower.errors import HypothesisViolation
from codetower.lattices import Lattice, construction_a_lattice, construction_b_lattice, named_lattice
from codetower.qseries import weight_coefficient
from codetower.voamod import (
    Twisted,
    TwistedUnsupported,
    UntwistedPair,
    UntwistedSplit,
    all_self_dual_simple_current,
    character_of,
    classify_pair_mixed,
    classify_pair_plus,
    fusion_group,
    is_simple_current,
    lowest_weight,
    module_census,
    twisted_weight_one,
    verify_verdict,
)

E8 = named_lattice("E8")
S = named_lattice("sqrt2E8")


def test_e8_census():
    labels = module_census(E8)
    assert len(labels) == 4
    assert sum(isinstance(m, Twisted) for m in labels) == 2
    assert fusion_group(E8).order == 4
    assert all(is_simple_current(m, E8) for m in labels)


def test_sqrt2e8_census():
    labels = module_census(S)
    assert len(labels) == 1024
    info = fusion_group(S)
    assert info.order == 1024 and info.k == 8
    assert lowest_weight(Twisted(0, 1), S) == Fraction(1, 2)
    assert lowest_weight(Twisted(0, -1), S) == 1


def test_mixed_norm_lattice_not_all_simple_current():
    L = Lattice.from_generators([[1, 0], [0, 2]])  # A1 + 2 A1: generators of norm 2 and 8
    assert not all_self_dual_simple_current(L)
    labels = module_census(L)
    assert any(isinstance(m, UntwistedPair) for m in labels)
    assert any(isinstance(m, TwistedUnsupported) for m in labels)
    with pytest.raises(HypothesisViolation):
        fusion_group(L)


def test_lowest_weights_untwisted():
    labels = module_census(S)
    triv = [m for m in labels if isinstance(m, UntwistedSplit) and m.is_trivial_coset()]
    assert sorted(lowest_weight(m, S) for m in triv) == [0, 1]
    others = [m for m in labels if isinstance(m, UntwistedSplit) and not m.is_trivial_coset()]
    # nonzero cosets of sqrt2E8 in its dual: (E8/sqrt2)-vectors of norm 1 or 2
    assert {lowest_weight(m, S) for m in others} == {Fraction(1, 2), 1}


def test_character_lowest_terms_match_weights():
    for m in module_census(S)[:6]:
        ch = character_of(m, S, 3)
        assert ch.valuation() + Fraction(8, 24) == lowest_weight(m, S)


def test_non_even_rejected():
    with pytest.raises(HypothesisViolation):
        module_census(Lattice.from_generators([[1]], 2, (1,)))


def test_twisted_weight_one_rank16():
    for k in (0, 2, 4, 6):
        dimT = 2 ** ((16 - k) // 2)
        assert twisted_weight_one(16, dimT) == dimT


def test_plus_isomorphic_and_exceptional():
    a = construction_b_lattice(named_code("e8^2"))
    b = construction_b_lattice(named_code("d16plus"))
    v = classify_pair_plus(a, b)
    assert v.outcome == "Isomorphic" and verify_verdict(v, a, b)
    v = classify_pair_plus(named_lattice("E8^2"), named_lattice("D16+"))
    assert v.outcome == "ExceptionalPair"
    assert verify_verdict(v, named_lattice("E8^2"), named_lattice("D16+"))


def test_plus_not_isomorphic_is_symmetric():
    L = construction_b_lattice(named_code("e8"))
    for a, b in ((E8, S), (E8, L), (L, S)):
        v, w = classify_pair_plus(a, b), classify_pair_plus(b, a)
        assert v.outcome == w.outcome == "NotIsomorphic"
        assert v.certificate["invariant"] == w.certificate["invariant"]
        assert (v.certificate["L"], v.certificate["N"]) == (w.certificate["N"], w.certificate["L"])
        assert verify_verdict(v, a, b)


def test_mixed_code_pair():
    C = named_code("e8")
    L, N = construction_a_lattice(C), construction_b_lattice(C)
    v = classify_pair_mixed(L, N)
    assert v.outcome == "CodeLatticePair"
    assert code_equivalent(v.code, C) is not None
    assert verify_verdict(v, L, N)


def test_mixed_from_kleinian_code():
    K = named_kleinian("eps2^2")
    L = construction_a_lattice(construction_a_code(K))
    N = construction_b_lattice(construction_a_code(K))
    v = classify_pair_mixed(L, N)
    assert v.outcome == "CodeLatticePair" and verify_verdict(v, L, N)
    assert construction_b_code(K).length == 4 * K.length


def test_mixed_negative():
    v = classify_pair_mixed(E8, S)
    assert v.outcome == "NotIsomorphic" and verify_verdict(v, E8, S)
    ch = character_of(module_census(E8)[0], E8, 3)
    assert weight_coefficient(ch, 8, 1) == 120


def test_rank_mismatch():
    with pytest.raises(ValueError):
        classify_pair_plus(E8, named_lattice("E8^2"))
