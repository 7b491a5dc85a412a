from fractions import Fraction

import pytest

from codetower.lattices import named_lattice, theta_series
from codetower.qseries import (
    QSeries,
    ch_twisted_pm,
    ch_VL,
    ch_VLminus,
    ch_VLplus,
    eta,
    eta_quotient_untwisted,
    theta_k,
    weight_coefficient,
)


def pentagonal(N):
    """prod (1 - q^i) via Euler's pentagonal number theorem, terms below q^N."""
    out = {}
    k = 0
    while True:
        hits = False
        for j in {k, -k}:
            e = j * (3 * j - 1) // 2
            if e < N:
                out[e] = (-1) ** (j % 2)
                hits = True
        if not hits:
            break
        k += 1
    return out


def test_eta_matches_pentagonal_theorem():
    N = 40
    s = eta(1, N)
    want = pentagonal(N)
    for m in range(N):
        assert s.coefficient(Fraction(1, 24) + m) == want.get(m, 0)


def test_eta_scaled_nomes():
    N = 12
    s = eta(2, N)
    want = pentagonal(N)
    for m in range(N // 2):
        assert s.coefficient(Fraction(1, 12) + 2 * m) == want.get(m, 0)
        assert s.coefficient(Fraction(1, 12) + 2 * m + 1) == 0
    h = eta(Fraction(1, 2), 6)
    for m in range(12):
        assert h.coefficient(Fraction(1, 48) + Fraction(m, 2)) == want.get(m, 0)
    with pytest.raises(ValueError):
        eta(3)


def test_jacobi_identity():
    N = 20
    assert theta_k(3, N) ** 4 == theta_k(2, N) ** 4 + theta_k(4, N) ** 4


def test_geometric_inverse():
    one = QSeries.one(15)
    s = QSeries.from_terms({0: 1, 1: -1}, 15)
    g = s.inverse()
    assert all(g.coefficient(m) == 1 for m in range(15))
    assert s * g == one


def test_arithmetic_and_truncation():
    a = QSeries.from_terms({0: 1, Fraction(1, 2): 3}, 4)
    b = QSeries.from_terms({0: 2, 3: 1, 5: 7}, 4)
    assert (a + b).coefficient(0) == 3
    assert (a - a) == QSeries.from_terms({}, 4)
    assert (a * b).coefficient(Fraction(7, 2)) == 3
    with pytest.raises(ValueError):
        b.coefficient(4)
    with pytest.raises(ArithmeticError):
        a.divexact(2)


def test_e8_character():
    E8 = named_lattice("E8")
    ch = ch_VL(E8, 4)
    assert [ch.coefficient(Fraction(-1, 3) + m) for m in range(4)] == [1, 248, 4124, 34752]


def test_e8_plus_minus_split():
    E8 = named_lattice("E8")
    plus, minus = ch_VLplus(E8, 5), ch_VLminus(E8, 5)
    assert weight_coefficient(plus, 8, 1) == 120
    assert weight_coefficient(minus, 8, 1) == 128
    assert plus + minus == ch_VL(E8, 5)
    assert plus.is_nonnegative() and minus.is_nonnegative()


def test_untwisted_quotient_is_integral():
    for n in (1, 8, 16):
        s = eta_quotient_untwisted(n, 6)
        assert all(isinstance(c, int) for _, c in s.terms())
        assert s.coefficient(-Fraction(n, 24)) == 1


def test_rank16_lowest_twisted_weights():
    plus = ch_twisted_pm(16, 1, 1, 4)
    minus = ch_twisted_pm(16, 1, -1, 4)
    assert plus.valuation() + Fraction(16, 24) == 1
    assert minus.valuation() + Fraction(16, 24) == Fraction(3, 2)


def test_twisted_signs_sum():
    n, dimT, N = 16, 4, 4
    total = ch_twisted_pm(n, dimT, 1, N) + ch_twisted_pm(n, dimT, -1, N)
    R = 2 * N + 2
    want = (eta(1, R) ** n / eta(Fraction(1, 2), R) ** n).scale(dimT).truncate(total.prec)
    assert total == want


def test_theta_based_character_consistency():
    L = named_lattice("D16+")
    th = theta_series(L, 5)
    assert ch_VL(L, 5, theta=th) == ch_VL(L, 5)
    assert weight_coefficient(ch_VLplus(L, 5), 16, 1) == 240
