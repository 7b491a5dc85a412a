"""
Registry of named verification checks.

Each check returns ``(ok, certificate)``.  ``run_check`` wraps it into a
Report; a SearchDefect raised inside a check (hypothesis satisfied but a
constructive search failed) becomes status "defect".
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import f2
from .bincodes import (
    BinaryCode,
    CosetLabel,
    classify_code_pair,
    code_dual,
    code_equivalent,
    construction_a_code,
    construction_b_code,
    coset_weight_enumerator,
    enumerate_doubly_even_containing_allones,
    enumerator_polynomial,
    is_doubly_even,
    is_self_dual,
    kleinian_substitution,
    named_code,
    recover_kleinian,
    tetrad,
)
from .corpus import (
    code_corpus,
    curated_plus_pairs,
    even_kleinian,
    named_kleinian,
    rank16_twisted_corpus,
    small_lattices,
    wk_family,
)
from .errors import HypothesisViolation, SearchDefect
from .kleinian import KleinianCode, k_dual, k_enumerate, k_equivalent
from .lattices import (
    Lattice,
    _discriminant_data,
    construction_a_lattice,
    construction_b_lattice,
    count_vectors,
    discriminant_group,
    dual_lattice,
    even_overlattices,
    frame_vector,
    lattice_isometric,
    lattice_sum,
    named_lattice,
    rho_isomorphism,
    scale_lattice,
    scale_sqrt2,
    theta_from_code,
    theta_series,
)
from .qseries import DEFAULT_PRECISION, ch_twisted_pm, ch_untwisted_pm, ch_VL, ch_VLminus, ch_VLplus
from .textio import format_code, format_lattice, parse_code, parse_lattice
from .voamod import classify_pair_mixed, classify_pair_plus, twisted_weight_one, verify_verdict

STATUS_EXIT = {"pass": 0, "fail": 1, "defect": 2}


@dataclass
class Report:
    check: str
    status: str
    wall_ms: int
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        return {"check": self.check, "status": self.status, "wall_ms": self.wall_ms, "certificate": self.certificate}


class _Collector:
    """Accumulates named sub-assertions into a certificate."""

    def __init__(self):
        self.cert = {}
        self.failed = []

    def expect(self, name, value, want=True):
        self.cert[name] = value
        if value != want:
            self.failed.append(name)

    def note(self, name, value):
        self.cert[name] = value

    def result(self):
        if self.failed:
            self.cert["failed"] = self.failed
        return not self.failed, self.cert


def _words(K):
    return K.words()


# -- codes -----------------------------------------------------------------


def check_kleinian_classification(prec, trace=False):
    c = _Collector()
    counts = {}
    for n in range(1, 5):
        reps = k_enumerate(n, even=True, self_dual=True)
        counts[str(n)] = len(reps)
        ok = all(K == k_dual(K) and K.is_even() for K in reps)
        c.expect("n=%d representatives even and self-dual" % n, ok)
        if n in (2, 4):
            c.note("n=%d representatives" % n, [_words(K) for K in reps])
    c.expect("even self-dual classes at n=2", counts["2"], 1)
    c.expect("even self-dual classes at n=4", counts["4"], 2)
    c.note("even self-dual classes by length", counts)
    reps4 = k_enumerate(4, even=True, self_dual=True)
    named = [named_kleinian("eps2^2"), named_kleinian("delta4+")]
    matched = [[k_equivalent(R, K) is not None for K in named] for R in reps4]
    c.expect("n=4 classes are eps2^2 and delta4+", sorted(map(tuple, matched)), [(False, True), (True, False)])
    c.expect("n=2 class is eps2", k_equivalent(k_enumerate(2, even=True, self_dual=True)[0], named_kleinian("eps2")) is not None)
    return c.result()


def check_code_constructions(prec, trace=False):
    c = _Collector()
    eps2, eps22, delta = named_kleinian("eps2"), named_kleinian("eps2^2"), named_kleinian("delta4+")
    pairs = [
        ("C(eps2) ~ e8", construction_a_code(eps2), named_code("e8")),
        ("C(eps2^2) ~ e8^2", construction_a_code(eps22), named_code("e8^2")),
        ("C(delta4+) ~ d16plus", construction_a_code(delta), named_code("d16plus")),
        ("C+(eps2^2) ~ C+(delta4+)", construction_b_code(eps22), construction_b_code(delta)),
    ]
    for name, a, b in pairs:
        w = code_equivalent(a, b)
        c.expect(name, w is not None)
        if w is not None:
            c.note(name + " permutation", list(w))
    bad = []
    for name, K in even_kleinian().items():
        A, B = construction_a_code(K), construction_b_code(K)
        if kleinian_substitution(K) != enumerator_polynomial(A):
            bad.append(name + " C")
        if kleinian_substitution(K, plus=True) != enumerator_polynomial(B):
            bad.append(name + " C+")
        if not (A.contains_code(B) and A.dim == B.dim + 1 and is_doubly_even(A) and is_doubly_even(B)):
            bad.append(name + " index/doubly-even")
        if K == k_dual(K) and not is_self_dual(A):
            bad.append(name + " self-duality")
    c.note("even Kleinian codes checked", len(even_kleinian()))
    c.expect("substitution identity and index-2 failures", bad, [])
    return c.result()


def check_code_counts(prec, trace=False):
    c = _Collector()
    for name in ("e8^2", "d16plus"):
        E = named_code(name)
        c.expect("|E(4)| for %s" % name, E.weight_count(4), 28)
        c.expect("%s doubly-even self-dual" % name, is_doubly_even(E) and is_self_dual(E))
    c.expect("e8^2 and d16plus inequivalent", code_equivalent(named_code("e8^2"), named_code("d16plus")), None)
    classes = enumerate_doubly_even_containing_allones(8)
    c.expect("doubly-even length-8 classes containing 1^8", len(classes), 4)
    c.expect("their dimensions", sorted(C.dim for C in classes), [1, 2, 3, 4])
    c.expect("dimension-4 class ~ e8", code_equivalent(max(classes, key=lambda C: C.dim), named_code("e8")) is not None)
    fam = wk_family()
    c.expect("family classes by k", {str(k): len(v) for k, v in fam.items()}, {"5": 1, "6": 1, "7": 2})
    c.expect("family classes total", sum(len(v) for v in fam.values()), 4)
    c4 = {}
    for k, Ks in fam.items():
        for K in Ks:
            C = construction_b_code(K)
            c4.setdefault(str(k), []).append([C.dim, C.weight_count(4)])
    c.expect("dim C+(K) = k and |C(4)| = 2^(k-3) - 4", c4, {str(k): [[k, 2 ** (k - 3) - 4]] * len(fam[k]) for k in fam})
    sd = fam[7]
    named = [named_kleinian("eps2^2"), named_kleinian("delta4+")]
    c.expect(
        "k=7 classes are the self-dual codes",
        sorted(tuple(k_equivalent(K, J) is not None for J in named) for K in sd),
        [(False, True), (True, False)],
    )
    return c.result()


def check_kleinian_recovery(prec, trace=False):
    c = _Collector()
    bad, remark = [], []
    for name, K in even_kleinian().items():
        C = construction_b_code(K)
        n = C.length
        u1 = tetrad(0, n)
        cnt = coset_weight_enumerator(CosetLabel.of(C, u1))[4]
        if 4 * cnt != n + 4 * C.weight_count(4):
            remark.append(name)
        rec = recover_kleinian(C, u1)
        if k_equivalent(rec.kleinian, K) is None:
            bad.append(name + " coset mode")
        rec2 = recover_kleinian(construction_a_code(K))
        if rec2 is None or k_equivalent(rec2.kleinian, K) is None:
            bad.append(name + " frame mode")
    c.note("even Kleinian codes checked", len(even_kleinian()))
    c.expect("recovery failures", bad, [])
    c.expect("codes violating |(u1+C)(4)| = n/4 + |C(4)|", remark, [])
    try:
        recover_kleinian(named_code("e8"), 1)
        c.expect("e8 rejects every coset", False)
    except HypothesisViolation:
        c.expect("e8 rejects every coset", True)
    return c.result()


# -- lattices --------------------------------------------------------------


def check_lattice_identities(prec, trace=False):
    c = _Collector()
    theta_bad, count_bad = [], []
    for name, C in code_corpus().items():
        L, Lp = construction_a_lattice(C), construction_b_lattice(C)
        if theta_series(L, prec) != theta_from_code(C, prec):
            theta_bad.append("L(%s)" % name)
        if theta_series(Lp, prec) != theta_from_code(C, prec, plus=True):
            theta_bad.append("L+(%s)" % name)
        n, c4 = C.length, C.weight_count(4)
        nl, nlp = count_vectors(L, 2), count_vectors(Lp, 2)
        ncos = count_vectors(Lp, 2, frame_vector(n, 0))
        if nl != 2 * n + 16 * c4 or nlp != 8 * c4 or ncos != 2 * n + nlp:
            count_bad.append(name)
    c.note("codes checked", len(code_corpus()))
    c.note("precision", prec)
    c.expect("theta identity failures", theta_bad, [])
    c.expect("norm-2 count failures", count_bad, [])
    for name in ("eps2", "eps2^2", "delta4+"):
        try:
            rho_isomorphism(named_kleinian(name))
            c.expect("rho carries L(C+(%s)) onto L+(C(%s))" % (name, name), True)
        except SearchDefect:
            c.expect("rho carries L(C+(%s)) onto L+(C(%s))" % (name, name), False)
    for name in ("E8^2", "D16+"):
        c.expect("|%s(2)|" % name, count_vectors(named_lattice(name), 2), 480)
    return c.result()


def check_isometry_engine(prec, trace=False):
    c = _Collector()
    a = construction_b_lattice(named_code("e8^2"))
    b = construction_b_lattice(named_code("d16plus"))
    t = time.perf_counter()
    W = lattice_isometric(a, b)
    c.note("L+ search seconds", round(time.perf_counter() - t, 3))
    c.expect("L+(e8^2) ~ L+(d16plus) witness verifies", W is not None and W.verify(a, b))
    if W is not None:
        c.note("witness", W.to_json(a))
    t = time.perf_counter()
    c.expect("E8^2 ~ D16+", lattice_isometric(named_lattice("E8^2"), named_lattice("D16+")), None)
    c.note("unimodular search seconds", round(time.perf_counter() - t, 3))
    return c.result()


def check_overlattices(prec, trace=False):
    c = _Collector()
    classes = even_overlattices(named_lattice("sqrt2E8"))
    discs = [str(x.discriminant) for x in classes]
    c.expect("classes", len(classes), 5)
    c.expect("discriminant groups pairwise distinct", len(set(discs)) == len(discs))
    c.note("discriminant groups", discs)
    c.note("overlattices per class", [x.count for x in classes])
    c.expect("unimodular class ~ E8", any(x.discriminant.order == 1 and lattice_isometric(x.lattice, named_lattice("E8")) is not None for x in classes))
    return c.result()


# -- characters and verdicts -------------------------------------------------


def check_characters(prec, trace=False):
    c = _Collector()
    P, D = named_lattice("E8^2"), named_lattice("D16+")
    c.expect("ch V+ (E8^2) = ch V+ (D16+)", ch_VLplus(P, prec) == ch_VLplus(D, prec))
    bad, neg = [], []
    for name, C in code_corpus().items():
        L, Lp = construction_a_lattice(C), construction_b_lattice(C)
        n = C.length
        plus = ch_VLplus(L, prec)
        parts = ch_VLplus(Lp, prec) + ch_untwisted_pm(Lp, frame_vector(n, 0), prec)
        if parts != plus or ch_VL(Lp, prec) != plus:
            bad.append(name)
        for s in (plus, parts, ch_VLminus(L, prec), ch_VLminus(Lp, prec)):
            if not s.is_nonnegative():
                neg.append(name)
                break
    c.note("codes checked", len(code_corpus()))
    c.expect("decomposition failures", bad, [])
    l2 = {}
    for name, L in rank16_twisted_corpus().items():
        order = discriminant_group(L).order
        k = order.bit_length() - 1
        if k % 2:
            l2[name] = "odd exponent"
            continue
        k //= 2
        dimT = 2 ** (8 - k)
        nl = count_vectors(L, 2)
        tw = ch_twisted_pm(16, dimT, 1, prec)
        if not (tw.is_nonnegative() and ch_twisted_pm(16, dimT, -1, prec).is_nonnegative()):
            neg.append(name + " twisted")
        minus_w1 = ch_VLminus(L, prec).coefficient(1 - Fraction(16, 24))
        l2[name] = {
            "k": k,
            "|L(2)|": nl,
            "2^(9-k)-32": 2 ** (9 - k) - 32,
            "twisted weight-one": twisted_weight_one(16, dimT, 1, prec),
            "V_L^- weight-one": minus_w1,
        }
    c.expect("negative coefficients", neg, [])
    ok = all(
        isinstance(v, dict) and v["|L(2)|"] == v["2^(9-k)-32"] and v["twisted weight-one"] == v["V_L^- weight-one"]
        for v in l2.values()
    )
    c.expect("|L(2)| = 2^(9-k) - 32 across the rank-16 corpus", ok)
    c.expect("(k, |L(2)|) = (0, 480) present", any(isinstance(v, dict) and (v["k"], v["|L(2)|"]) == (0, 480) for v in l2.values()))
    c.note("rank-16 corpus", l2)
    return c.result()


def check_verdicts(prec, trace=False):
    c = _Collector()
    P, D = named_lattice("E8^2"), named_lattice("D16+")
    v = classify_pair_plus(P, D, prec, trace=True)
    c.expect("(E8^2, D16+)", v.outcome, "ExceptionalPair")
    c.expect("(E8^2, D16+) certificate verifies", verify_verdict(v, P, D))
    if trace:
        c.note("(E8^2, D16+) trace", v.trace)
    plus_step = [s for s in v.trace if s.get("step") == "twisted plus (n = 16)"]
    c.expect("trace reproduces |L(2)| = 2^(9-k) - 32 at k = 0", bool(plus_step) and plus_step[0].get("holds") is True and plus_step[0].get("k") == 0)
    curated = {}
    for na, a, nb, b in curated_plus_pairs():
        v = classify_pair_plus(a, b, prec)
        curated["%s | %s" % (na, nb)] = [v.outcome, v.certificate.get("invariant"), verify_verdict(v, a, b)]
    c.note("curated pairs", curated)
    c.expect("curated pairs all NotIsomorphic and verified", all(x[0] == "NotIsomorphic" and x[2] for x in curated.values()))
    c.expect("curated pairs count", len(curated), 10)
    mixed = {}
    codes = [("e8", named_code("e8")), ("e8^2", named_code("e8^2")), ("d16plus", named_code("d16plus"))]
    codes.append(("C(eps2^2)", construction_a_code(named_kleinian("eps2^2"))))
    for name, C in codes:
        L, N = construction_a_lattice(C), construction_b_lattice(C)
        v = classify_pair_mixed(L, N, prec)
        mixed[name] = [v.outcome, verify_verdict(v, L, N)]
    c.note("mixed pairs", mixed)
    c.expect("mixed pairs all CodeLatticePair and verified", all(x == ["CodeLatticePair", True] for x in mixed.values()))
    code_pairs = {}
    for name, K in even_kleinian().items():
        C, Dc = construction_a_code(K), construction_b_code(K)
        got, _ = classify_code_pair(C, Dc)
        code_pairs[name] = got is not None and code_equivalent(construction_b_code(got), Dc) is not None
    c.expect("code pairs (C(K), C+(K)) recover K", all(code_pairs.values()))
    c.note("code pairs checked", len(code_pairs))
    return c.result()


# -- randomized properties ---------------------------------------------------


def random_corpus_lattice(rng):
    """An intermediate lattice L <= M <= L* for a random corpus lattice L,
    with coordinates permuted when the ambient form allows it."""
    lat = small_lattices()
    names = sorted(lat)
    name = rng.choice(names)
    L = lat[name]
    factors, lift = _discriminant_data(L)
    extra = []
    for _ in range(rng.randrange(0, 3)):
        if factors:
            extra.append(lift(tuple(rng.randrange(s) for s in factors)))
    M = lattice_sum(L, *extra) if extra else L
    if len(set(M.form)) == 1 and M.dim > 1:
        perm = list(range(M.dim))
        rng.shuffle(perm)
        sign = [rng.choice((1, -1)) for _ in perm]
        rows = [[Fraction(sign[j] * v[j]) for j in perm] for v in M.vectors()]
        M = Lattice.from_generators(rows, 1, M.form)
    return name, M


def lattice_properties(M):
    """Failed property names for one lattice."""
    bad = []
    Md = dual_lattice(M)
    if dual_lattice(Md) != M:
        bad.append("dual involution")
    if Lattice.from_generators(M.basis, M.denom, M.form) != M:
        bad.append("hnf idempotence")
    if parse_lattice(format_lattice(M)) != M:
        bad.append("parse/print")
    if M.is_even() and not Md.contains_lattice(M):
        bad.append("even implies L in L*")
    if scale_sqrt2(Md).is_even() and not M.contains_lattice(scale_lattice(Md, 2)):
        bad.append("sqrt2 L* even implies 2 L* in L")
    return bad


def random_kleinian(rng, n):
    rows = [rng.randrange(1 << (2 * n)) for _ in range(rng.randrange(0, 2 * n + 1))]
    return KleinianCode(n, f2.rref(rows))


def random_binary(rng, n):
    rows = [rng.randrange(1 << n) for _ in range(rng.randrange(0, n + 1))]
    return BinaryCode(n, f2.rref(rows))


def code_properties(K, C):
    bad = []
    if k_dual(k_dual(K)) != K:
        bad.append("kleinian dual involution")
    if len(K) * len(k_dual(K)) != 4 ** K.length:
        bad.append("|K||K^perp| = 4^n")
    if parse_code(format_code(K)) != K:
        bad.append("kleinian parse/print")
    if code_dual(code_dual(C)) != C:
        bad.append("binary dual involution")
    if parse_code(format_code(C)) != C:
        bad.append("binary parse/print")
    return bad


def check_properties(prec, trace=False, count=200, seed=20260316):
    c = _Collector()
    rng = random.Random(seed)
    failures = []
    implications = 0
    for i in range(count):
        name, M = random_corpus_lattice(rng)
        bad = lattice_properties(M)
        if scale_sqrt2(dual_lattice(M)).is_even():
            implications += 1
        failures += ["lattice %d (%s): %s" % (i, name, b) for b in bad]
        n = rng.randrange(1, 7)
        bad = code_properties(random_kleinian(rng, n), random_binary(rng, 4 * n))
        failures += ["codes %d: %s" % (i, b) for b in bad]
    c.note("lattices", count)
    c.note("lattices with sqrt2 L* even", implications)
    c.expect("failures", failures, [])
    return c.result()


# -- registry ----------------------------------------------------------------

CHECKS = {
    "kleinian-classification": ("even self-dual Kleinian classes at lengths 2 and 4", check_kleinian_classification),
    "code-constructions": ("Constructions A/B on codes and the enumerator substitution", check_code_constructions),
    "code-counts": ("weight-4 counts and small code classifications", check_code_counts),
    "kleinian-recovery": ("recovery of K from C+(K) and a rich coset", check_kleinian_recovery),
    "lattice-identities": ("theta identities, rho and norm-2 counts", check_lattice_identities),
    "isometry-engine": ("isometry witnesses at rank 16", check_isometry_engine),
    "overlattices-sqrt2e8": ("even overlattices of sqrt(2) E8", check_overlattices),
    "characters": ("character identities and the twisted weight-one count", check_characters),
    "verdicts": ("pair classifications with certificates", check_verdicts),
    "properties": ("randomized duality, HNF and round-trip properties", check_properties),
}


def run_check(check_id, precision=DEFAULT_PRECISION, trace=False):
    if check_id not in CHECKS:
        raise KeyError(check_id)
    t = time.perf_counter()
    try:
        ok, cert = CHECKS[check_id][1](precision, trace)
        status = "pass" if ok else "fail"
    except SearchDefect as e:
        status, cert = "defect", {"defect": str(e)}
    ms = int(round((time.perf_counter() - t) * 1000))
    return Report(check_id, status, ms, cert)
