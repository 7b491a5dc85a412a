"""
Binary linear codes, Constructions A and B from Kleinian codes, coset weight
enumerators, equivalence testing, self-dual embedding, and the constructive
recovery of a Kleinian code from a doubly-even code with a rich coset.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import f2
from .errors import GuardError, HypothesisViolation, SearchDefect
from .kleinian import KleinianCode, KleinianWord

_HAT = {0: 0b0000, 1: 0b0011, 2: 0b0101, 3: 0b0110}  # 0, a=1100, b=1010, c=0110
_UNHAT = {v: k for k, v in _HAT.items()}

MAX_ENUM_DIM = 24


@dataclass(frozen=True)
class BinaryCode:
    length: int
    basis: tuple

    @classmethod
    def from_words(cls, n, words):
        rows = []
        for w in words:
            if isinstance(w, str):
                if len(w) != n:
                    raise ValueError("word %r does not have length %d" % (w, n))
                w = f2.from_string(w)
            rows.append(w)
        return cls(n, f2.rref(rows))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return 1 << self.dim

    def codewords(self):
        if self.dim > MAX_ENUM_DIM:
            raise GuardError("code too large to enumerate (dim %d)" % self.dim)
        return f2.span(self.basis)

    def __contains__(self, word):
        if isinstance(word, str):
            word = f2.from_string(word)
        return f2.in_span(self.basis, word)

    def contains_code(self, other):
        return all(b in self for b in other.basis)

    def span_with(self, *words):
        return BinaryCode(self.length, f2.rref(list(self.basis) + list(words)))

    def weight_count(self, m):
        return sum(1 for w in self.codewords() if f2.popcount(w) == m)

    def words(self):
        return [f2.to_string(b, self.length) for b in self.basis]

    def __str__(self):
        return format_binary(self)


@dataclass(frozen=True)
class CosetLabel:
    """A coset x + C with canonical representative.

    The representative is ``x`` reduced against the echelon basis; with
    pivots at the leftmost coordinate this is also the lexicographic minimum
    of the coset read as a 0/1 string.
    """

    code: BinaryCode
    rep: int

    @classmethod
    def of(cls, code, x):
        if isinstance(x, str):
            x = f2.from_string(x)
        return cls(code, f2.reduce(code.basis, x))

    def words(self):
        return [self.rep ^ c for c in self.code.codewords()]


@dataclass(frozen=True)
class BWeightEnumerator:
    length: int
    coeffs: tuple

    def __getitem__(self, m):
        return self.coeffs[m]


def weight_enumerator(C):
    return coset_weight_enumerator(CosetLabel(C, 0))


def coset_weight_enumerator(x):
    """Weight distribution of a coset by exhaustive enumeration."""
    if x.code.dim > MAX_ENUM_DIM:
        raise GuardError("code too large to enumerate (dim %d)" % x.code.dim)
    c = [0] * (x.code.length + 1)
    for w in x.words():
        c[f2.popcount(w)] += 1
    return BWeightEnumerator(x.code.length, tuple(c))


def code_dual(C):
    return BinaryCode(C.length, f2.dual(C.basis, C.length))


def is_doubly_even(C):
    rows = C.basis
    if any(f2.popcount(r) % 4 for r in rows):
        return False
    return all(f2.popcount(a ^ b) % 4 == 0 for i, a in enumerate(rows) for b in rows[i + 1 :])


def is_self_dual(C):
    return C == code_dual(C)


def direct_sum(C, D):
    return BinaryCode(C.length + D.length, f2.rref(list(C.basis) + [b << C.length for b in D.basis]))


def permute_word(v, perm):
    """Bit i of ``v`` moves to position ``perm[i]``."""
    out = 0
    i = 0
    while v:
        if v & 1:
            out |= 1 << perm[i]
        v >>= 1
        i += 1
    return out


def permute_code(C, perm):
    return BinaryCode(C.length, f2.rref([permute_word(b, perm) for b in C.basis]))


# -- named codes ---------------------------------------------------------


@lru_cache(maxsize=None)
def named_code(name):
    """``e8``, ``d16plus``, ``e8^2``, ``d4^m``, ``(d4^m)0`` (m an integer)."""
    if name in ("e8", "d16plus"):
        from .textio import parse_code

        text = resources.files("codetower.data").joinpath(name + ".code").read_text()
        return parse_code(text)
    if name == "e8^2":
        e8 = named_code("e8")
        return direct_sum(e8, e8)
    if name.startswith("(d4^") and name.endswith(")0"):
        return d4_even(int(name[4:-2]))
    if name.startswith("d4^"):
        return d4(int(name[3:]))
    raise KeyError("unknown code %r" % name)


def tetrad(i, n):
    """u_i: ones on coordinates 4i..4i+3 (0-based i)."""
    return 0b1111 << (4 * i)


def d4(m):
    return BinaryCode(4 * m, f2.rref([tetrad(i, 4 * m) for i in range(m)]))


def d4_even(m):
    return BinaryCode(4 * m, f2.rref([tetrad(i, 4 * m) ^ tetrad(i + 1, 4 * m) for i in range(m - 1)]))


# -- Constructions A and B from Kleinian codes -----------------------------


def hat_map(w, n=None):
    """Image of a Kleinian word in F2^(4n): a->1100, b->1010, c->0110."""
    if isinstance(w, KleinianWord):
        n, w = w.length, w.bits
    elif isinstance(w, str):
        from .kleinian import word_from_string

        n, w = len(w), word_from_string(w)
    out = 0
    for i in range(n):
        out |= _HAT[(w >> (2 * i)) & 3] << (4 * i)
    return out


def construction_a_code(K):
    m = K.length
    rows = [hat_map(b, m) for b in K.basis] + [tetrad(i, 4 * m) for i in range(m)]
    return BinaryCode(4 * m, f2.rref(rows))


def construction_b_code(K):
    m = K.length
    rows = [hat_map(b, m) for b in K.basis]
    rows += [tetrad(i, 4 * m) ^ tetrad(i + 1, 4 * m) for i in range(m - 1)]
    return BinaryCode(4 * m, f2.rref(rows))


# -- equivalence ----------------------------------------------------------


def _invariants(C):
    """Per-coordinate and per-pair invariants from low-weight codewords."""
    n = C.length
    words = [w for w in C.codewords() if w]
    weights = sorted({f2.popcount(w) for w in words})[:2]
    coord = [[0] * (n + 1) for _ in range(n)]
    for w in words:
        wt = f2.popcount(w)
        for i in range(n):
            if w >> i & 1:
                coord[i][wt] += 1
    pair = [[[0] * len(weights) for _ in range(n)] for _ in range(n)]
    for w in words:
        wt = f2.popcount(w)
        if wt not in weights:
            continue
        k = weights.index(wt)
        supp = [i for i in range(n) if w >> i & 1]
        for i in supp:
            for j in supp:
                pair[i][j][k] += 1
    coord = [tuple(r) for r in coord]
    pair = [[tuple(x) for x in r] for r in pair]
    return coord, pair


def _project(C, coords):
    rows = []
    for b in C.basis:
        v = 0
        for t, i in enumerate(coords):
            if b >> i & 1:
                v |= 1 << t
        rows.append(v)
    return f2.rref(rows)


def code_equivalent(C, D):
    """A coordinate permutation mapping C onto D, or None.

    Backtracking over coordinate images, pruned by coordinate and pair
    fingerprints and by equality of the partial projections.
    """
    n = C.length
    if D.length != n:
        raise ValueError("length mismatch")
    if n > 32:
        raise GuardError("code_equivalent supports length <= 32")
    if C.dim != D.dim:
        return None
    if weight_enumerator(C) != weight_enumerator(D):
        return None
    fc, pc = _invariants(C)
    fd, pd = _invariants(D)
    if sorted(fc) != sorted(fd):
        return None
    if sorted(sorted(r) for r in pc) != sorted(sorted(r) for r in pd):
        return None

    # visit coordinates so that each new one is tied to earlier ones
    order = [min(range(n), key=lambda i: (fc[i], i))]
    while len(order) < n:
        rest = [i for i in range(n) if i not in order]
        order.append(max(rest, key=lambda i: (sum(1 for j in order if any(pc[i][j])), -i)))

    perm = [None] * n
    used = [False] * n

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if used[j] or fd[j] != fc[i] or pd[j][j] != pc[i][i]:
                continue
            if any(pd[j][perm[k]] != pc[i][k] for k in order[:t]):
                continue
            perm[i] = j
            src = order[: t + 1]
            if _project(C, src) != _project(D, [perm[k] for k in src]):
                perm[i] = None
                continue
            used[j] = True
            if rec(t + 1):
                return True
            used[j] = False
            perm[i] = None
        return False

    if not rec(0):
        return None
    perm = tuple(perm)
    if permute_code(C, perm) != D:
        raise SearchDefect("code equivalence witness failed re-verification")
    return perm


# -- recovery of Kleinian codes -------------------------------------------


@dataclass(frozen=True)
class Recovery:
    """K with permute_code(C, perm) == construction_b_code(K) (coset mode)
    or == construction_a_code(K) (frame mode)."""

    kleinian: KleinianCode
    perm: tuple
    mode: str


def _compose(p, q):
    """First p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _block_to_symbol(block):
    if block >> 3 & 1:
        block ^= 0b1111
    try:
        return _UNHAT[block]
    except KeyError:
        raise SearchDefect("block %s is not in hat(K)+d4" % f2.to_string(block, 4)) from None


def _read_kleinian(C, m):
    rows = []
    for b in C.basis:
        k = 0
        for i in range(m):
            k |= _block_to_symbol((b >> (4 * i)) & 0b1111) << (2 * i)
        rows.append(k)
    return KleinianCode(m, f2.rref(rows))


def _support(v):
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def _blocks_perm(supports, n):
    """Permutation sending the i-th support to block i, in increasing order."""
    perm = [None] * n
    for i, s in enumerate(supports):
        for t, c in enumerate(sorted(s)):
            perm[c] = 4 * i + t
    return tuple(perm)


def _frame_mode(C):
    n = C.length
    if n % 4:
        return None
    m = n // 4
    tetrads = sorted((w for w in C.codewords() if f2.popcount(w) == 4), key=_support)
    chosen = []

    def rec(covered):
        if covered == (1 << n) - 1:
            return True
        low = (~covered & (covered + 1)).bit_length() - 1
        for w in tetrads:
            if w >> low & 1 and not w & covered:
                chosen.append(w)
                if rec(covered | w):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        return None
    perm = _blocks_perm([_support(w) for w in chosen], n)
    Cp = permute_code(C, perm)
    K = _read_kleinian(Cp, m)
    if construction_a_code(K) != Cp:
        raise SearchDefect("frame-mode recovery failed re-verification")
    return Recovery(K, perm, "frame")


def recover_kleinian(C, x=None):
    """Recover an even Kleinian code K from a doubly-even code C.

    Without ``x``: if C contains d4^m up to a coordinate permutation, return
    K with C equivalent to construction_a_code(K) (None otherwise).
    With ``x`` in C^perp \\ C satisfying |(x+C)(4)| >= n/4 + |C(4)|: return K
    with C equivalent to construction_b_code(K) and C + x equivalent to
    construction_a_code(K).  HypothesisViolation is raised when the counting
    hypothesis fails.
    """
    if not is_doubly_even(C):
        raise HypothesisViolation("code is not doubly-even")
    n = C.length
    if x is None:
        return _frame_mode(C)
    if isinstance(x, CosetLabel):
        x = x.rep
    if isinstance(x, str):
        x = f2.from_string(x)
    if x in C:
        raise HypothesisViolation("x lies in C")
    if not all(f2.dot(x, b) == 0 for b in C.basis):
        raise HypothesisViolation("x is not in the dual code")
    coset4 = sorted((w for w in CosetLabel.of(C, x).words() if f2.popcount(w) == 4), key=_support)
    c4 = C.weight_count(4)
    if 4 * len(coset4) < n + 4 * c4:
        raise HypothesisViolation("|(x+C)(4)| = %d < n/4 + |C(4)| = %s" % (len(coset4), n / 4 + c4))

    # greedily collect disjoint weight-4 words of x+C; the injection
    # y -> y + u_{m(y)} bounds the words meeting the chosen blocks by |C(4)|
    m = n // 4
    us = []
    covered = 0
    while len(us) < m:
        nxt = next((v for v in coset4 if not v & covered), None)
        if nxt is None:
            raise SearchDefect("no disjoint weight-4 word left in x+C after %d blocks" % len(us))
        us.append(nxt)
        covered |= nxt
    if n % 4:
        raise SearchDefect("length not divisible by 4 although blocks were found")

    perm = _blocks_perm([_support(u) for u in us], n)
    Cp = permute_code(C, perm)
    blocks = [tetrad(i, n) for i in range(m)]
    # y in C^perp with <y, u_i> = 1 for every block; one 1 per block
    y = f2.solve(list(Cp.basis) + blocks, [0] * Cp.dim + [1] * m, n)
    if y is None:
        raise SearchDefect("no y in C^perp meeting every block oddly")
    for b in blocks:
        if f2.popcount(y & b) == 3:
            y ^= b
    inner = list(range(n))
    for i in range(m):
        pos = _support(y & blocks[i])
        if len(pos) != 1:
            raise SearchDefect("block %d of y has weight %d" % (i, len(pos)))
        p, last = pos[0], 4 * i + 3
        inner[p], inner[last] = last, p
    inner = tuple(inner)
    perm = _compose(perm, inner)
    Cp = permute_code(C, perm)
    K = _read_kleinian(Cp, m)
    if construction_b_code(K) != Cp:
        raise SearchDefect("coset-mode recovery: C does not match construction B")
    if construction_a_code(K) != permute_code(C.span_with(x), perm):
        raise SearchDefect("coset-mode recovery: C + x does not match construction A")
    return Recovery(K, perm, "coset")


def rich_cosets(C):
    """Cosets x + C in C^perp / C (x not in C) with |(x+C)(4)| >= n/4 + |C(4)|."""
    n = C.length
    c4 = C.weight_count(4)
    out = []
    for rep in coset_representatives(C):
        if rep == 0:
            continue
        cnt = coset_weight_enumerator(CosetLabel(C, rep))[4]
        if 4 * cnt >= n + 4 * c4:
            out.append((rep, cnt))
    return out


def coset_representatives(C, within=None):
    """Canonical representatives of (within)/C, ``within`` defaulting to C^perp,
    sorted lexicographically as 0/1 strings."""
    within = code_dual(C) if within is None else within
    reduced = f2.rref([f2.reduce(C.basis, b) for b in within.basis])
    reps = {f2.reduce(C.basis, v) for v in f2.span(reduced)}
    return sorted(reps, key=lambda v: f2.to_string(v, C.length))


# -- self-dual embedding and small enumerations ---------------------------


def embed_self_dual(C):
    """A doubly-even self-dual code containing the doubly-even code C."""
    n = C.length
    if not is_doubly_even(C):
        raise HypothesisViolation("code is not doubly-even")
    if n % 8:
        raise HypothesisViolation("length must be divisible by 8")

    def rec(E):
        if 2 * E.dim == n:
            return E
        for rep in coset_representatives(E):
            if rep and f2.popcount(rep) % 4 == 0:
                got = rec(E.span_with(rep))
                if got is not None:
                    return got
        return None

    E = rec(C)
    if E is None:
        raise SearchDefect("no doubly-even self-dual extension found")
    assert is_self_dual(E) and is_doubly_even(E) and E.contains_code(C)
    return E


def enumerate_doubly_even_containing_allones(n=8):
    """Equivalence classes of doubly-even codes of length 8 containing 1^8."""
    if n != 8:
        raise GuardError("only n = 8 is supported")
    ones = (1 << n) - 1
    quads = [w for w in range(1, 1 << n) if f2.popcount(w) % 4 == 0]
    layer = {f2.rref([ones])}
    codes = set(layer)
    while layer:
        nxt = set()
        for basis in layer:
            for w in quads:
                if f2.in_span(basis, w) or any(f2.dot(w, b) for b in basis):
                    continue
                nxt.add(f2.rref(basis + (w,)))
        codes |= nxt
        layer = nxt
    classes = []
    for basis in sorted(codes, key=lambda b: (len(b), b)):
        C = BinaryCode(n, basis)
        if not any(R.dim == C.dim and code_equivalent(R, C) is not None for R in classes):
            classes.append(C)
    return classes


def classify_code_pair(C, D):
    """Decide whether L+(C) and L(D) are isometric via the code criterion.

    Returns ``(K, details)`` with C ~ construction_a_code(K) and
    D ~ construction_b_code(K), or ``(None, details)`` naming the first
    violated condition.
    """
    n = C.length
    c4, d4_ = C.weight_count(4), D.weight_count(4)
    details = {"C(4)": c4, "D(4)": d4_, "n": n}
    if 8 * c4 != 2 * n + 16 * d4_:
        details["violated"] = "8|C(4)| = 2n + 16|D(4)|"
        return None, details
    for rep, cnt in rich_cosets(D):
        if 4 * cnt != n + 4 * d4_:
            continue
        rec = recover_kleinian(D, rep)
        if code_equivalent(C, construction_a_code(rec.kleinian)) is not None:
            details["coset"] = f2.to_string(rep, n)
            details["perm"] = list(rec.perm)
            return rec.kleinian, details
    details["violated"] = "no coset x+D with C ~ C(K) for the recovered K"
    return None, details


def format_binary(C):
    lines = ["binary %d" % C.length]
    lines += [f2.to_string(b, C.length) for b in C.basis]
    return "\n".join(lines) + "\n"


# -- enumerator polynomials -------------------------------------------------
# A polynomial in X, Y is a dict {(i, j): coeff} for X^i Y^j; X marks support.


def _pmul(a, b):
    out = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
    return {k: v for k, v in out.items() if v}


def _ppow(a, e):
    out = {(0, 0): 1}
    for _ in range(e):
        out = _pmul(out, a)
    return out


def _padd(a, b, sb=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sb * v
    return {k: v for k, v in out.items() if v}


def enumerator_polynomial(C):
    """sum over codewords of X^wt Y^(n - wt)."""
    n = C.length
    W = weight_enumerator(C)
    return {(w, n - w): c for w, c in enumerate(W.coeffs) if c}


def kleinian_substitution(K, plus=False):
    """Predicted enumerator of C(K) (or C+(K)) from the weights of K.

    Each nonzero coordinate of a Kleinian codeword contributes 2 X^2 Y^2 and
    each zero coordinate X^4 + Y^4; the C+ variant averages with (Y^4 - X^4)^m.
    """
    from .kleinian import k_weight_enumerator

    m = K.length
    nz = {(2, 2): 2}
    z = {(4, 0): 1, (0, 4): 1}
    total = {}
    for w, c in enumerate(k_weight_enumerator(K).coeffs):
        if c:
            term = _pmul(_ppow(nz, w), _ppow(z, m - w))
            total = _padd(total, {k: c * v for k, v in term.items()})
    if plus:
        total = _padd(total, _ppow({(0, 4): 1, (4, 0): -1}, m))
        if any(v % 2 for v in total.values()):
            raise ArithmeticError("substitution is not divisible by 2")
        total = {k: v // 2 for k, v in total.items()}
    return total
