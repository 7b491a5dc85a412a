"""
Named objects used by the checks, the tests and the CLI: the even Kleinian
codes of length <= 4, the doubly-even codes built from them, and the lattices
derived from both.
"""

from functools import lru_cache

from .bincodes import construction_a_code, construction_b_code, named_code
from .kleinian import DELTA4_PLUS, EPSILON2, k_direct_sum, k_enumerate
from .lattices import (
    Lattice,
    construction_a_lattice,
    construction_b_lattice,
    direct_sum,
    named_lattice,
    scale_sqrt2,
)


@lru_cache(maxsize=None)
def even_kleinian():
    """{"K<n>.<i>": K} for one code per class of even Kleinian codes, n <= 4."""
    out = {}
    for n in range(1, 5):
        for i, K in enumerate(k_enumerate(n, even=True)):
            out["K%d.%d" % (n, i)] = K
    return out


def named_kleinian(name):
    if name == "eps2":
        return EPSILON2
    if name == "eps2^2":
        return k_direct_sum(EPSILON2, EPSILON2)
    if name == "delta4+":
        return DELTA4_PLUS
    return even_kleinian()[name]


def wk_enumerator(k):
    """Coefficients (c0..c4) of the length-4 enumerator family indexed by
    k = dim C+(K) in {5, 6, 7}."""
    a = 2 ** (k - 4)
    return (1, 0, a - 2, 0, a + 1)


@lru_cache(maxsize=None)
def wk_family():
    """{k: [K, ...]}: even Kleinian classes of length 4 in the family."""
    out = {}
    for k in (5, 6, 7):
        out[k] = k_enumerate(4, even=True, enumerators=[wk_enumerator(k)])
    return out


@lru_cache(maxsize=None)
def code_corpus():
    """Doubly-even codes: e8, e8^2, d16plus and C+(K) for every even K."""
    out = {"e8": named_code("e8"), "e8^2": named_code("e8^2"), "d16plus": named_code("d16plus")}
    for name, K in even_kleinian().items():
        out["C+(%s)" % name] = construction_b_code(K)
    return out


@lru_cache(maxsize=None)
def small_lattices():
    """Lattices of rank <= 16 that keep the dual denominator within 1/8."""
    out = {
        "E8": named_lattice("E8"),
        "sqrt2E8": named_lattice("sqrt2E8"),
        "E8^2": named_lattice("E8^2"),
        "D16+": named_lattice("D16+"),
        "L+(e8)": construction_b_lattice(named_code("e8")),
        "A1": Lattice.from_generators([[1]]),
        "A1+2A1": Lattice.from_generators([[1, 0], [0, 2]]),
        "D4": construction_a_lattice(named_code("d4^1")),
        "D4^2": construction_a_lattice(named_code("d4^2")),
        "L+(d4^2)": construction_b_lattice(named_code("d4^2")),
        "E8+sqrt2E8": direct_sum(named_lattice("E8"), named_lattice("sqrt2E8")),
        "sqrt2E8^2": scale_sqrt2(named_lattice("E8^2")),
    }
    for name, K in even_kleinian().items():
        C = construction_b_code(K)
        if C.length <= 12:
            out["L(C+(%s))" % name] = construction_a_lattice(C)
            out["L+(C+(%s))" % name] = construction_b_lattice(C)
    return out


def rank16_twisted_corpus():
    """Rank-16 lattices L with sqrt(2) L* even: the two unimodular ones and
    L+(C) for the self-dual codes and the C+(K) family."""
    out = {
        "E8^2": named_lattice("E8^2"),
        "D16+": named_lattice("D16+"),
        "L+(e8^2)": construction_b_lattice(named_code("e8^2")),
        "L+(d16plus)": construction_b_lattice(named_code("d16plus")),
    }
    for k, Ks in sorted(wk_family().items()):
        for i, K in enumerate(Ks):
            out["L+(C+(WK%d.%d))" % (k, i)] = construction_b_lattice(construction_b_code(K))
    return out


def curated_plus_pairs():
    """Ten pairs of equal rank whose lattices are not isometric."""
    lat = small_lattices()
    wk = rank16_twisted_corpus()
    e8 = lat["E8"]
    return [
        ("L+(e8)", lat["L+(e8)"], "sqrt2E8", lat["sqrt2E8"]),
        ("E8", e8, "sqrt2E8", lat["sqrt2E8"]),
        ("E8", e8, "L+(e8)", lat["L+(e8)"]),
        ("D4^2", lat["D4^2"], "L+(e8)", lat["L+(e8)"]),
        ("D4^2", lat["D4^2"], "L+(d4^2)", lat["L+(d4^2)"]),
        ("E8^2", lat["E8^2"], "L+(e8^2)", wk["L+(e8^2)"]),
        ("L+(e8^2)", wk["L+(e8^2)"], "sqrt2E8^2", lat["sqrt2E8^2"]),
        ("E8+sqrt2E8", lat["E8+sqrt2E8"], "L+(d16plus)", wk["L+(d16plus)"]),
        ("L+(C+(WK5.0))", wk["L+(C+(WK5.0))"], "L+(C+(WK6.0))", wk["L+(C+(WK6.0))"]),
        ("L+(C+(WK6.0))", wk["L+(C+(WK6.0))"], "L+(C+(WK7.0))", wk["L+(C+(WK7.0))"]),
    ]


def construction_pairs():
    """(name, C(K), C+(K)) for even K of length <= 4 with C(K) in the code corpus."""
    out = []
    for name, K in even_kleinian().items():
        out.append((name, construction_a_code(K), construction_b_code(K)))
    return out


__all__ = [
    "even_kleinian",
    "named_kleinian",
    "wk_enumerator",
    "wk_family",
    "code_corpus",
    "small_lattices",
    "rank16_twisted_corpus",
    "curated_plus_pairs",
    "construction_pairs",
]
