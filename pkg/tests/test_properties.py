import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from codetower import f2
from codetower.bincodes import BinaryCode, code_dual, code_equivalent, permute_code, weight_enumerator
from codetower.checks import code_properties, lattice_properties, random_corpus_lattice
from codetower.kleinian import (
    KleinianCode,
    k_dual,
    k_equivalent,
    k_weight_enumerator,
    word_from_string,
    word_to_string,
)
from codetower.qseries import QSeries

kleinian_codes = st.integers(1, 5).flatmap(
    lambda n: st.builds(lambda rows: KleinianCode(n, f2.rref(rows)), st.lists(st.integers(0, 4 ** n - 1), max_size=2 * n))
)
binary_codes = st.integers(1, 12).flatmap(
    lambda n: st.builds(lambda rows: BinaryCode(n, f2.rref(rows)), st.lists(st.integers(0, 2 ** n - 1), max_size=n))
)


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1))
def test_corpus_lattice_properties(seed):
    name, M = random_corpus_lattice(random.Random(seed))
    assert lattice_properties(M) == [], name


@given(kleinian_codes)
def test_kleinian_duality(K):
    D = k_dual(K)
    assert k_dual(D) == K
    assert len(K) * len(D) == 4 ** K.length
    assert code_properties(K, BinaryCode(1, ())) == []


def relabel(K, perm, maps):
    rows = []
    for w in K.basis:
        s = word_to_string(w, K.length)
        t = "".join(maps[i].get(s[perm[i]], s[perm[i]]) for i in range(K.length))
        rows.append(word_from_string(t))
    return KleinianCode(K.length, f2.rref(rows))


@given(kleinian_codes, st.data())
def test_kleinian_equivalence_under_relabel(K, data):
    n = K.length
    perm = data.draw(st.permutations(range(n)))
    maps = [dict(zip("abc", data.draw(st.permutations("abc")))) for _ in range(n)]
    J = relabel(K, perm, maps)
    assert k_weight_enumerator(J) == k_weight_enumerator(K)
    assert k_equivalent(K, J) is not None
    assert k_dual(J) == relabel(k_dual(K), perm, maps)


@given(binary_codes)
def test_binary_duality(C):
    D = code_dual(C)
    assert code_dual(D) == C
    assert C.dim + D.dim == C.length
    assert all(f2.dot(a, b) == 0 for a in C.basis for b in D.basis)


@given(binary_codes, st.data())
def test_binary_equivalence_under_permutation(C, data):
    perm = data.draw(st.permutations(range(C.length)))
    D = permute_code(C, perm)
    assert weight_enumerator(D) == weight_enumerator(C)
    assert code_equivalent(C, D) is not None


series = st.dictionaries(st.integers(0, 24).map(lambda k: Fraction(k, 4)), st.integers(-5, 5), max_size=6).map(
    lambda d: QSeries.from_terms(d, 6)
)


@given(series, series, series)
def test_qseries_ring_identities(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == QSeries.from_terms({}, 6)


@given(series)
def test_qseries_inverse(a):
    u = QSeries.one(6) + a.shift(1)
    assert u * u.inverse() == QSeries.one(6)
