from fractions import Fraction
from itertools import product

import pytest

from codetower.bincodes import BinaryCode, code_dual, named_code
from codetower.errors import GuardError, HypothesisViolation
from codetower.kleinian import DELTA4_PLUS, EPSILON2
from codetower.lattices import (
    Lattice,
    apply_linear,
    construction_a_lattice,
    construction_b_lattice,
    count_vectors,
    detect_construction_b,
    direct_sum,
    discriminant_group,
    dual_lattice,
    embed_unimodular,
    epsilon_automorphism,
    even_overlattices,
    frame_vector,
    lattice_isometric,
    lattice_sum,
    named_lattice,
    rho_isomorphism,
    rho_matrix,
    scale_sqrt2,
    short_vectors,
    theta_from_code,
    theta_series,
)
from codetower.intlinalg import matmul, transpose


def code_vectors(C, plus=False, limit=2):
    """Norm counts of L(C) (or L+(C)) by brute force over x/2 with |x_i| <= limit.

    x in Z^n lies in L(C) iff x mod 2 is a codeword; L+(C) is the part with
    sum(x) divisible by 4."""
    words = set(C.codewords())
    counts = {}
    for x in product(range(-limit, limit + 1), repeat=C.length):
        w = sum(1 << i for i, a in enumerate(x) if a % 2)
        if w not in words:
            continue
        if plus and sum(x) % 4:
            continue
        nm = Fraction(sum(a * a for a in x), 2)
        counts[nm] = counts.get(nm, 0) + 1
    return counts


def sigma3(m):
    return sum(d ** 3 for d in range(1, m + 1) if m % d == 0)


E8 = named_lattice("E8")
LPE8 = construction_b_lattice(named_code("e8"))


def test_e8_basic():
    assert E8.rank == 8 and E8.is_even() and E8.determinant() == 1
    assert dual_lattice(E8) == E8
    assert str(discriminant_group(E8)) == "trivial"


def test_e8_theta_against_sigma3():
    th = theta_series(E8, 6)
    for m in range(1, 6):
        assert th.coefficient(m) == 240 * sigma3(m)


def test_short_vectors_against_brute_force():
    e8 = named_code("e8")
    bf = code_vectors(e8)
    sv = short_vectors(E8, 4)
    assert len(sv[Fraction(2)]) == bf[Fraction(2)] == 240
    assert len(sv[Fraction(4)]) == bf[Fraction(4)] == 2160
    bfp = code_vectors(e8, plus=True)
    assert count_vectors(LPE8, 2) == bfp[Fraction(2)] == 112
    assert count_vectors(LPE8, 4) == bfp[Fraction(4)]


def test_coset_count_against_brute_force():
    bf, bfp = code_vectors(named_code("e8")), code_vectors(named_code("e8"), plus=True)
    coset = bf[Fraction(2)] - bfp[Fraction(2)]
    assert count_vectors(LPE8, 2, frame_vector(8, 0)) == coset == 128 == 2 * 8 + 112


def test_zero_code_lattice():
    L = construction_a_lattice(BinaryCode(5, ()))
    assert [[int(x) for x in r] for r in L.gram] == [[2 if i == j else 0 for j in range(5)] for i in range(5)]


def test_construction_b_index_two():
    L = construction_a_lattice(named_code("e8"))
    assert L.contains_lattice(LPE8) and LPE8.determinant() == 4 * L.determinant()
    assert not LPE8.contains(frame_vector(8, 0))


def test_construction_requires_doubly_even():
    C = BinaryCode.from_words(4, ["1100"])
    with pytest.raises(HypothesisViolation):
        construction_a_lattice(C)


def test_unimodular_rank16():
    for name in ("E8^2", "D16+"):
        L = named_lattice(name)
        assert L.determinant() == 1 and count_vectors(L, 2) == 480
    assert direct_sum(E8, E8) == named_lattice("E8^2")


def test_dual_examples():
    S = named_lattice("sqrt2E8")
    assert lattice_isometric(scale_sqrt2(dual_lattice(S)), E8) is not None
    C = named_code("e8")
    n = C.length
    want = lattice_sum(construction_a_lattice(code_dual(C)), tuple(Fraction(1, 4) for _ in range(n)))
    D = dual_lattice(LPE8)
    assert D.contains_lattice(want) and want.contains_lattice(D)


def test_discriminant_examples():
    assert discriminant_group(named_lattice("sqrt2E8")).invariant_factors == (2,) * 8
    d = discriminant_group(LPE8)
    assert d.order == LPE8.determinant() == 4


def test_theta_identities_for_named_codes():
    for name in ("e8", "e8^2", "d16plus"):
        C = named_code(name)
        assert theta_series(construction_a_lattice(C), 6) == theta_from_code(C, 6)
        assert theta_series(construction_b_lattice(C), 6) == theta_from_code(C, 6, plus=True)


def test_theta_nonnegative_and_constant_term():
    th = theta_series(LPE8, 5)
    assert th.coefficient(0) == 1 and th.is_nonnegative()


def test_short_vector_guard():
    with pytest.raises(GuardError):
        short_vectors(E8, 40)


def test_isometry_examples():
    a = construction_b_lattice(named_code("e8^2"))
    b = construction_b_lattice(named_code("d16plus"))
    W = lattice_isometric(a, b)
    assert W is not None and W.verify(a, b)
    assert lattice_isometric(named_lattice("E8^2"), named_lattice("D16+")) is None
    W = lattice_isometric(E8, E8)
    assert W is not None and W.verify(E8, E8)


def test_isometry_under_coordinate_change():
    perm = [5, 2, 7, 0, 3, 1, 6, 4]
    R = [[Fraction(int(perm[i] == j) * (-1 if i % 3 == 0 else 1)) for j in range(8)] for i in range(8)]
    M = apply_linear(LPE8, R)
    W = lattice_isometric(LPE8, M)
    assert W is not None and W.verify(LPE8, M)


def test_rho_examples():
    for K in (EPSILON2, DELTA4_PLUS):
        rho_isomorphism(K)
    R = rho_matrix(1)
    G = matmul(R, transpose(R))
    assert G == [[1 if i == j else 0 for j in range(4)] for i in range(4)]


def test_detection_examples():
    det = detect_construction_b(LPE8, frame_vector(8, 0))
    from codetower.bincodes import code_equivalent

    assert code_equivalent(det.code, named_code("e8")) is not None
    with pytest.raises(HypothesisViolation):
        detect_construction_b(E8, frame_vector(8, 0))


def test_detection_rank16_family():
    from codetower.bincodes import construction_b_code
    from codetower.corpus import wk_family

    for k, Ks in wk_family().items():
        L = construction_b_lattice(construction_b_code(Ks[0]))
        det = detect_construction_b(L, frame_vector(16, 0))
        assert det.code.dim == k


def test_embed_unimodular():
    assert lattice_isometric(embed_unimodular(named_lattice("sqrt2E8")), E8) is not None
    assert embed_unimodular(E8) == E8
    U = embed_unimodular(construction_b_lattice(named_code("e8^2")))
    assert U.determinant() == 1 and U.is_even() and U.rank == 16


def test_epsilon_automorphism():
    C = named_code("e8")
    assert epsilon_automorphism(LPE8, C, 0) == [[Fraction(int(i == j)) for j in range(8)] for i in range(8)]
    E = epsilon_automorphism(LPE8, C, 0xFF)
    assert all(E[i][i] == -1 for i in range(8))
    with pytest.raises(HypothesisViolation):
        epsilon_automorphism(LPE8, C, 0b1)


def test_overlattices_small():
    assert len(even_overlattices(E8)) == 1
    classes = even_overlattices(LPE8)
    assert any(lattice_isometric(c.lattice, E8) is not None for c in classes)


def test_from_generators_rejects_large_denominator():
    with pytest.raises(GuardError):
        Lattice.from_generators([[Fraction(1, 16)]])
