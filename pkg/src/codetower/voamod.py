"""
Bookkeeping for irreducible V_L^+ modules and the isomorphism decisions for
V_L^+ vs V_N^+ and V_L^+ vs V_N.

Modules are symbolic labels.  Twisted labels carry an opaque index; their
count is 2^k and dim T = 2^((n-k)/2) when L*/L = Z_2^k.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import GuardError, HypothesisViolation, SearchDefect
from .lattices import (
    IsometryWitness,
    construction_a_lattice,
    construction_b_lattice,
    count_vectors,
    detect_construction_b,
    discriminant_elements,
    discriminant_group,
    dual_lattice,
    lattice_isometric,
    scale_sqrt2,
    short_vectors,
    theta_series,
)
from .qseries import (
    DEFAULT_PRECISION,
    ch_twisted_pm,
    ch_untwisted_pm,
    ch_VLminus,
    ch_VLplus,
)


@dataclass(frozen=True)
class UntwistedSplit:
    """V_{lam+L}^sign for lam in L* with 2 lam in L."""

    residue: tuple
    coset: tuple
    sign: int

    def is_trivial_coset(self):
        return not any(self.residue)

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        return "V_L^%s" % s if self.is_trivial_coset() else "V_{%s+L}^%s" % (_fmt(self.coset), s)


@dataclass(frozen=True)
class UntwistedPair:
    """V_{mu+L} (isomorphic to V_{-mu+L}) for mu in L* outside L/2."""

    residue: tuple
    partner: tuple
    coset: tuple

    def __str__(self):
        return "V_{%s+L}" % _fmt(self.coset)


@dataclass(frozen=True)
class Twisted:
    chi: int
    sign: int

    def __str__(self):
        return "V_L^{T_%d,%s}" % (self.chi, "+" if self.sign > 0 else "-")


@dataclass(frozen=True)
class TwistedUnsupported:
    """Marker: the twisted block is not modelled for this lattice."""

    reason: str

    def __str__(self):
        return "twisted modules (unsupported: %s)" % self.reason


def _fmt(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def _twisted_data(L):
    """(#chi, dim T) for a 2-elementary discriminant, else None."""
    disc = discriminant_group(L)
    n = L.rank
    k = disc.exponent_k
    if not disc.is_elementary_2() or (n - k) % 2:
        return None
    return 2 ** k, 2 ** ((n - k) // 2)


def module_census(L):
    """Labels of the irreducible V_L^+ modules (twisted block may be a marker)."""
    if not L.is_even():
        raise HypothesisViolation("lattice is not even")
    split, pairs = [], []
    elems = discriminant_elements(L)
    factors = discriminant_group(L).invariant_factors
    seen = set()
    for r, v in elems:
        neg = tuple((-x) % s for x, s in zip(r, factors))
        if neg == r:
            split.append(UntwistedSplit(r, v, 1))
            split.append(UntwistedSplit(r, v, -1))
        elif r not in seen:
            seen.add(r)
            seen.add(neg)
            pairs.append(UntwistedPair(r, neg, v))
    tw = _twisted_data(L)
    if tw is None:
        twisted = [TwistedUnsupported("discriminant group is not 2-elementary")]
    else:
        twisted = [Twisted(i, s) for i in range(tw[0]) for s in (1, -1)]
    return split + pairs + twisted


@lru_cache(maxsize=1024)
def all_self_dual_simple_current(L):
    """True iff sqrt(2) L* is even."""
    return scale_sqrt2(dual_lattice(L)).is_even()


def is_simple_current(label, L=None):
    if isinstance(label, UntwistedSplit):
        return True
    if isinstance(label, UntwistedPair):
        return False
    if isinstance(label, Twisted):
        if L is None:
            raise ValueError("twisted labels need the lattice")
        return all_self_dual_simple_current(L)
    raise TypeError("not a module label")


@dataclass(frozen=True)
class FusionGroupInfo:
    order: int
    elementary_2: bool
    k: int


def fusion_group(L):
    if not all_self_dual_simple_current(L):
        raise HypothesisViolation("sqrt(2) L* is not even")
    disc = discriminant_group(L)
    if not disc.is_elementary_2():
        raise SearchDefect("sqrt(2) L* even but L*/L is not 2-elementary")
    k = disc.exponent_k
    info = FusionGroupInfo(2 ** (k + 2), True, k)
    currents = [m for m in module_census(L) if is_simple_current(m, L)]
    if len(currents) != info.order:
        raise SearchDefect("census has %d simple currents, expected %d" % (len(currents), info.order))
    return info


def lowest_weight(label, L):
    n = L.rank
    if isinstance(label, Twisted):
        return Fraction(n, 16) + (0 if label.sign > 0 else Fraction(1, 2))
    if isinstance(label, UntwistedSplit) and label.is_trivial_coset():
        return Fraction(0) if label.sign > 0 else Fraction(1)
    if isinstance(label, (UntwistedSplit, UntwistedPair)):
        for b in range(1, 9):
            sv = short_vectors(L, b, label.coset)
            if sv:
                return min(sv) / 2
        raise GuardError("coset minimum beyond the short-vector guard")
    raise TypeError("no lowest weight for %r" % (label,))


def character_of(label, L, N=DEFAULT_PRECISION):
    n = L.rank
    if isinstance(label, UntwistedSplit):
        if label.is_trivial_coset():
            return ch_VLplus(L, N) if label.sign > 0 else ch_VLminus(L, N)
        return ch_untwisted_pm(L, label.coset, N)
    if isinstance(label, UntwistedPair):
        return ch_untwisted_pm(L, label.coset, N).scale(2)
    if isinstance(label, Twisted):
        tw = _twisted_data(L)
        if tw is None:
            raise GuardError("twisted characters need a 2-elementary discriminant group")
        return ch_twisted_pm(n, tw[1], label.sign, N)
    raise GuardError("unsupported label %r" % (label,))


# -- verdicts -------------------------------------------------------------


@dataclass
class Verdict:
    outcome: str  # Isomorphic | ExceptionalPair | NotIsomorphic | CodeLatticePair
    certificate: dict
    invariants_checked: list = field(default_factory=list)
    trace: list = None
    code: object = None

    def to_json(self):
        out = {"outcome": self.outcome, "certificate": self.certificate, "invariants_checked": self.invariants_checked}
        if self.code is not None:
            from .bincodes import format_binary

            out["code"] = format_binary(self.code).splitlines()
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def _both_even(L, N):
    if L.rank != N.rank:
        raise ValueError("rank mismatch: %d vs %d" % (L.rank, N.rank))
    if not (L.is_even() and N.is_even()):
        raise HypothesisViolation("both lattices must be even")


def _is_exceptional(L):
    return L.rank == 16 and L.is_even() and L.determinant() == 1


def _distinguish(L, N, prec):
    """First lattice invariant that differs, as (name, value_L, value_N)."""
    tl, tn = theta_series(L, prec), theta_series(N, prec)
    if tl != tn:
        for (el, cl), (en, cn) in zip(tl.terms() + [(None, 0)], tn.terms() + [(None, 0)]):
            if (el, cl) != (en, cn):
                e = min(x for x in (el, en) if x is not None)
                return "theta_coefficient_q^%s" % e, tl.coefficient(e), tn.coefficient(e)
    dl, dn = discriminant_group(L), discriminant_group(N)
    if dl != dn:
        return "discriminant_group", str(dl), str(dn)
    sl, sn = all_self_dual_simple_current(L), all_self_dual_simple_current(N)
    if sl and sn:
        fl, fn = fusion_group(L).order, fusion_group(N).order
        if fl != fn:
            return "fusion_group_order", fl, fn
    return "isometry_search_exhausted", "no isometry", "no isometry"


def _replay_trace(L, N):
    """Diagnostic walk through the four module types V_N^- could match."""
    n = L.rank
    steps = []
    nl2 = count_vectors(L, 2)
    steps.append({"step": "weight-one", "V_L^- dim": n + nl2 // 2, "V_N^- dim": n + count_vectors(N, 2) // 2})
    # (ii) untwisted coset with the equality |L(2)| + 2n = |(lam+L)(2)|
    hits = []
    for r, v in discriminant_elements(L):
        if any(r) and L.contains(tuple(2 * x for x in v)):
            c = count_vectors(L, 2, v)
            if c == nl2 + 2 * n:
                hits.append(list(r))
    steps.append({"step": "untwisted coset equality", "matching cosets": hits})
    sl = all_self_dual_simple_current(L)
    steps.append({"step": "twisted minus (needs n = 8)", "n": n, "sqrt2_dual_even": sl})
    if sl and n == 16:
        disc = discriminant_group(L)
        k2 = disc.exponent_k
        if k2 % 2 == 0:
            k = k2 // 2
            steps.append(
                {"step": "twisted plus (n = 16)", "k": k, "|L(2)|": nl2, "2^(9-k)-32": 2 ** (9 - k) - 32, "holds": nl2 == 2 ** (9 - k) - 32}
            )
    else:
        steps.append({"step": "twisted plus (n = 16)", "applicable": False})
    return steps


def classify_pair_plus(L, N, prec=DEFAULT_PRECISION, trace=False):
    """Decide whether V_L^+ and V_N^+ are isomorphic."""
    _both_even(L, N)
    checked = ["rank", "evenness"]
    W = lattice_isometric(L, N)
    checked.append("isometry")
    if W is not None:
        v = Verdict("Isomorphic", {"witness": W.to_json(L)}, checked)
    elif _is_exceptional(L) and _is_exceptional(N):
        cert = {"rank": 16, "det_L": 1, "det_N": 1, "even": True, "isometric": False}
        v = Verdict("ExceptionalPair", cert, checked + ["unimodular"])
    else:
        name, a, b = _distinguish(L, N, prec)
        v = Verdict("NotIsomorphic", {"invariant": name, "L": a, "N": b}, checked + ["discriminant_group", "theta", "fusion_group"])
    if trace:
        v.trace = _replay_trace(L, N)
    return v


def _witness_from_detection(N, det):
    """Integer matrix mapping N's basis onto the basis of L+(code)."""
    target = construction_b_lattice(det.code)
    rows = []
    for r in det.map_l:
        amb = [Fraction(x) / 2 for x in r]
        c = target.coordinates(amb)
        if c is None or any(x.denominator != 1 for x in c):
            raise SearchDefect("detection map does not land in L+(C)")
        rows.append(tuple(int(x) for x in c))
    W = IsometryWitness(tuple(rows))
    if not W.verify(N, target):
        raise SearchDefect("detection isometry failed re-verification")
    return W


def _partner_code(C):
    from .bincodes import code_equivalent, named_code

    a, b = named_code("e8^2"), named_code("d16plus")
    if C.length != 16:
        return None
    if code_equivalent(C, a) is not None:
        return b
    if code_equivalent(C, b) is not None:
        return a
    return None


def classify_pair_mixed(L, N, prec=DEFAULT_PRECISION, trace=False):
    """Decide whether V_L^+ and V_N are isomorphic; certificate is a code C with
    L = L(C) and N = L+(C)."""
    _both_even(L, N)
    n = L.rank
    nl, nn = count_vectors(L, 2), count_vectors(N, 2)
    checked = ["rank", "evenness", "weight-one dimensions"]
    steps = [] if trace else None
    if nl // 2 != n + nn or nl % 2:
        return Verdict("NotIsomorphic", {"invariant": "weight_one_dimension", "V_L^+": nl // 2, "V_N": n + nn}, checked, steps)
    checked.append("coset counting identity")
    candidates = []
    for r, v in discriminant_elements(N):
        if not any(r) or not N.contains(tuple(2 * x for x in v)):
            continue
        c = count_vectors(N, 2, v)
        if steps is not None:
            steps.append({"coset": list(r), "|(lam+N)(2)|": c, "|N(2)|+2n": nn + 2 * n})
        if c == nn + 2 * n:
            candidates.append(v)
    if not candidates:
        return Verdict(
            "NotIsomorphic",
            {"invariant": "no coset with |(lam+N)(2)| = |N(2)| + 2n", "|N(2)|+2n": nn + 2 * n},
            checked,
            steps,
        )
    for lam in candidates:
        det = detect_construction_b(N, lam)
        C = det.code
        wn = _witness_from_detection(N, det)
        for code in (C, _partner_code(C)):
            if code is None:
                continue
            if code is not C:
                wn2 = lattice_isometric(N, construction_b_lattice(code))
                if wn2 is None:
                    continue
                wn_use = wn2
            else:
                wn_use = wn
            wl = lattice_isometric(L, construction_a_lattice(code))
            if wl is not None:
                cert = {"L_to_L(C)": wl.to_json(L), "N_to_L+(C)": wn_use.to_json(N)}
                return Verdict("CodeLatticePair", cert, checked + ["construction B detection", "isometry"], steps, code)
    return Verdict("NotIsomorphic", {"invariant": "L is not isometric to L(C) for any detected C"}, checked, steps)


def verify_verdict(v, L, N):
    """Re-check a verdict's certificate with the lattice and code layers only."""
    if v.outcome == "Isomorphic":
        W = IsometryWitness(tuple(tuple(r) for r in v.certificate["witness"]["matrix"]))
        return W.verify(L, N)
    if v.outcome == "ExceptionalPair":
        return _is_exceptional(L) and _is_exceptional(N) and lattice_isometric(L, N) is None
    if v.outcome == "CodeLatticePair":
        C = v.code
        wl = IsometryWitness(tuple(tuple(r) for r in v.certificate["L_to_L(C)"]["matrix"]))
        wn = IsometryWitness(tuple(tuple(r) for r in v.certificate["N_to_L+(C)"]["matrix"]))
        return wl.verify(L, construction_a_lattice(C)) and wn.verify(N, construction_b_lattice(C))
    if v.outcome == "NotIsomorphic":
        name = v.certificate.get("invariant")
        if name == "weight_one_dimension":
            return count_vectors(L, 2) // 2 != L.rank + count_vectors(N, 2)
        if name in ("discriminant_group",) or str(name).startswith("theta") or name == "fusion_group_order":
            got = _distinguish(L, N, DEFAULT_PRECISION)
            return got[0] != "isometry_search_exhausted"
        if name == "isometry_search_exhausted":
            return lattice_isometric(L, N) is None
        if str(name).startswith("no coset"):
            target = N.rank * 2 + count_vectors(N, 2)
            return not any(
                any(r) and N.contains(tuple(2 * x for x in v)) and count_vectors(N, 2, v) == target
                for r, v in discriminant_elements(N)
            )
        if str(name).startswith("L is not isometric"):
            return classify_pair_mixed(L, N).outcome == "NotIsomorphic"
        return False
    return False


def twisted_weight_one(n, dimT, sign=1, N=2):
    """Coefficient of conformal weight 1 in the twisted character."""
    s = ch_twisted_pm(n, dimT, sign, N)
    return s.coefficient(1 - Fraction(n, 24))


__all__ = [
    "UntwistedSplit",
    "UntwistedPair",
    "Twisted",
    "TwistedUnsupported",
    "FusionGroupInfo",
    "Verdict",
    "module_census",
    "is_simple_current",
    "all_self_dual_simple_current",
    "fusion_group",
    "lowest_weight",
    "character_of",
    "classify_pair_plus",
    "classify_pair_mixed",
    "verify_verdict",
    "twisted_weight_one",
]
