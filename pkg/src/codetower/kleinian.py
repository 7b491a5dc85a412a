"""
Kleinian codes: subgroups of K^n where K = {0, a, b, c} is the Klein four-group.

A word of length n is packed into a 2n-bit int. Coordinate i uses bits 2i and
2i+1, with 0 -> (0, 0), a -> (1, 0), b -> (0, 1), c -> (1, 1).  The product
table a.b = a.c = b.c = 1, x.x = 0 is the symplectic form x1*y2 + x2*y1 on
each bit pair, so duality reduces to a standard F2 nullspace.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from . import f2

SYMBOLS = "0abc"
_SYMBOL_BITS = {"0": 0, "a": 1, "b": 2, "c": 3}

# GL(2, F2) acting on a 2-bit symbol; equals S3 permuting {a, b, c}
_GL2 = []
for _img in permutations((1, 2, 3)):
    _GL2.append((0,) + _img)  # table: symbol value -> image value


def _even_mask(n):
    return int("01" * n, 2) if n else 0


def word_from_string(s):
    """Pack a string over {0,a,b,c} into an int."""
    v = 0
    for i, ch in enumerate(s):
        try:
            v |= _SYMBOL_BITS[ch] << (2 * i)
        except KeyError:
            raise ValueError("bad Kleinian symbol %r" % ch) from None
    return v


def word_to_string(v, n):
    return "".join(SYMBOLS[(v >> (2 * i)) & 3] for i in range(n))


def k_weight(v):
    """Number of nonzero coordinates of a packed Kleinian word."""
    m = _even_mask(v.bit_length() // 2 + 1)
    return f2.popcount((v | (v >> 1)) & m)


def _swap_pairs(v, n):
    m = _even_mask(n)
    return ((v & m) << 1) | ((v >> 1) & m)


def k_inner(x, y, n=None):
    """Symplectic product of two packed words (or two KleinianWord objects)."""
    if isinstance(x, KleinianWord) or isinstance(y, KleinianWord):
        if not (isinstance(x, KleinianWord) and isinstance(y, KleinianWord)):
            raise TypeError("mixed word types")
        if x.length != y.length:
            raise ValueError("length mismatch: %d vs %d" % (x.length, y.length))
        n, x, y = x.length, x.bits, y.bits
    if n is None:
        n = max(x.bit_length(), y.bit_length(), 2) // 2 + 1
    return f2.dot(x, _swap_pairs(y, n))


@dataclass(frozen=True)
class KleinianWord:
    length: int
    bits: int

    @classmethod
    def parse(cls, s):
        return cls(len(s), word_from_string(s))

    def __str__(self):
        return word_to_string(self.bits, self.length)

    @property
    def weight(self):
        return k_weight(self.bits)


@dataclass(frozen=True)
class KleinianCode:
    """A Kleinian code stored by its canonical echelon basis over F2^(2n)."""

    length: int
    basis: tuple

    @classmethod
    def from_words(cls, n, words):
        rows = [word_from_string(w) if isinstance(w, str) else int(w) for w in words]
        for w in words:
            if isinstance(w, str) and len(w) != n:
                raise ValueError("word %r does not have length %d" % (w, n))
        return cls(n, f2.rref(rows))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @property
    def rank(self):
        """F2-rank; the code has 2**rank elements (dimension rank/2 over K)."""
        return len(self.basis)

    def __len__(self):
        return 1 << self.rank

    def codewords(self):
        return f2.span(self.basis)

    def __contains__(self, word):
        if isinstance(word, str):
            word = word_from_string(word)
        return f2.in_span(self.basis, word)

    def is_even(self):
        return all(k_weight(w) % 2 == 0 for w in self.codewords())

    def is_self_dual(self):
        return self == k_dual(self)

    def words(self):
        return [word_to_string(b, self.length) for b in self.basis]

    def __str__(self):
        return format_kleinian(self)


def k_dual(K):
    """Orthogonal complement under the symplectic product."""
    n = K.length
    swapped = [_swap_pairs(b, n) for b in K.basis]
    return KleinianCode(n, f2.dual(swapped, 2 * n))


@dataclass(frozen=True)
class KWeightEnumerator:
    """Coefficients c[m] = number of codewords of weight m."""

    length: int
    coeffs: tuple

    def __str__(self):
        n = self.length
        terms = []
        for m, c in enumerate(self.coeffs):
            if c:
                terms.append("%d*X^%d*Y^%d" % (c, m, n - m))
        return " + ".join(terms) or "0"


MAX_ENUM_LENGTH = 8


def k_weight_enumerator(K):
    """Weight enumerator by full codeword enumeration (length <= 8)."""
    if K.length > MAX_ENUM_LENGTH:
        raise ValueError("exhaustive enumeration supports length <= %d" % MAX_ENUM_LENGTH)
    c = [0] * (K.length + 1)
    for w in K.codewords():
        c[k_weight(w)] += 1
    return KWeightEnumerator(K.length, tuple(c))


def k_macwilliams(W, size):
    """Enumerator of the dual code from W and |K| via W(Y-X, Y+3X)/|K|.

    Polynomials are expanded coefficientwise; X marks nonzero coordinates.
    """
    n = W.length
    from math import comb

    out = [0] * (n + 1)
    for m, cm in enumerate(W.coeffs):
        if not cm:
            continue
        # (Y - X)^m (Y + 3X)^(n-m)
        for i in range(m + 1):
            a = comb(m, i) * (-1) ** i
            for j in range(n - m + 1):
                out[i + j] += cm * a * comb(n - m, j) * 3 ** j
    if any(x % size for x in out):
        raise ArithmeticError("transform is not integral; size does not match W")
    return KWeightEnumerator(n, tuple(x // size for x in out))


# -- equivalence -----------------------------------------------------------


@dataclass(frozen=True)
class Equivalence:
    """Coordinate i of K goes to coordinate perm[i]; its symbols are renamed
    by symbol_maps[i], a tuple giving the images of (a, b, c)."""

    perm: tuple
    symbol_maps: tuple

    def apply_word(self, v, n):
        out = 0
        for i in range(n):
            s = (v >> (2 * i)) & 3
            if s:
                t = _SYMBOL_BITS[self.symbol_maps[i][s - 1]]
                out |= t << (2 * self.perm[i])
        return out

    def apply(self, K):
        return KleinianCode(K.length, f2.rref([self.apply_word(b, K.length) for b in K.basis]))


def _coord_fingerprints(K):
    n = K.length
    fp = [[0] * (n + 1) for _ in range(n)]
    for w in K.codewords():
        wt = k_weight(w)
        for i in range(n):
            if (w >> (2 * i)) & 3:
                fp[i][wt] += 1
    return [tuple(r) for r in fp]


def _project(K, coords):
    """Projection of K onto an ordered coordinate list (as a packed code)."""
    rows = []
    for b in K.basis:
        v = 0
        for t, i in enumerate(coords):
            v |= ((b >> (2 * i)) & 3) << (2 * t)
        rows.append(v)
    return f2.rref(rows)


def k_equivalent(K, J):
    """Return an Equivalence mapping K onto J, or None."""
    n = K.length
    if J.length != n:
        raise ValueError("length mismatch")
    if K.rank != J.rank:
        return None
    if n <= MAX_ENUM_LENGTH and k_weight_enumerator(K) != k_weight_enumerator(J):
        return None
    fk, fj = _coord_fingerprints(K), _coord_fingerprints(J)
    if sorted(fk) != sorted(fj):
        return None

    perm = [None] * n
    maps = [None] * n
    used = [False] * n
    order = sorted(range(n), key=lambda i: (fk[i], i))

    def partial_ok(t):
        src = order[: t + 1]
        dst = [perm[i] for i in src]
        pk = _project(K, src)
        # rename symbols on the source projection
        rows = []
        for r in pk:
            v = 0
            for s_idx, i in enumerate(src):
                sym = (r >> (2 * s_idx)) & 3
                if sym:
                    v |= _SYMBOL_BITS[maps[i][sym - 1]] << (2 * s_idx)
            rows.append(v)
        return f2.rref(rows) == _project(J, dst)

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if used[j] or fj[j] != fk[i]:
                continue
            used[j] = True
            perm[i] = j
            for g in _GL2:
                maps[i] = tuple(SYMBOLS[g[s]] for s in (1, 2, 3))
                if partial_ok(t) and rec(t + 1):
                    return True
            used[j] = False
            perm[i] = None
        maps[i] = None
        return False

    if not rec(0):
        return None
    eq = Equivalence(tuple(perm), tuple(maps))
    if eq.apply(K) != J:
        raise AssertionError("equivalence witness failed re-verification")
    return eq


# -- enumeration ----------------------------------------------------------


@lru_cache(maxsize=None)
def _even_codes(n):
    """Representatives of the even Kleinian codes of length n, by rank layers.

    Weight parity is the quadratic form x1 + x2 + x1*x2 per coordinate, whose
    polarization is the symplectic product, so a code is even exactly when
    its basis words are even and pairwise orthogonal.  Each layer is reduced
    to equivalence classes before it is extended, which still reaches every
    class since equivalent codes have equivalent extensions.
    """
    even_words = [(w, _swap_pairs(w, n)) for w in range(1, 1 << (2 * n)) if k_weight(w) % 2 == 0]
    layer = [()]
    out = [()]
    while layer:
        nxt = set()
        for basis in layer:
            for w, sw in even_words:
                if all(f2.dot(b, sw) == 0 for b in basis) and not f2.in_span(basis, w):
                    nxt.add(f2.rref(basis + (w,)))
        layer = _class_reps(n, sorted(nxt))
        out.extend(layer)
    return tuple(out)


def _class_reps(n, bases):
    reps, keyed = [], {}
    for basis in bases:
        K = KleinianCode(n, basis)
        key = (k_weight_enumerator(K).coeffs, tuple(sorted(_coord_fingerprints(K))))
        bucket = keyed.setdefault(key, [])
        if any(k_equivalent(R, K) is not None for R in bucket):
            continue
        bucket.append(K)
        reps.append(basis)
    return reps


def k_enumerate(n, even=False, self_dual=False, enumerators=None, jobs=1):
    """One representative per equivalence class of codes of length n <= 4.

    ``enumerators`` restricts to codes whose weight enumerator is in the given
    collection (KWeightEnumerator objects or coefficient tuples).
    """
    if n > 4 or n < 1:
        raise ValueError("k_enumerate supports 1 <= n <= 4")
    wanted = None
    if enumerators is not None:
        wanted = {tuple(e.coeffs) if isinstance(e, KWeightEnumerator) else tuple(e) for e in enumerators}
    ranks = None
    if self_dual:
        ranks = {n}
    if wanted is not None:
        rs = {sum(c).bit_length() - 1 for c in wanted}
        ranks = rs if ranks is None else ranks & rs

    if even:
        candidates = [b for b in _even_codes(n) if ranks is None or len(b) in ranks]
    else:
        candidates = []
        for r in sorted(ranks if ranks is not None else range(2 * n + 1)):
            candidates.extend(f2.subspaces(2 * n, r))

    reps = []
    keyed = {}
    for basis in sorted(candidates, key=lambda b: (len(b), b)):
        K = KleinianCode(n, basis)
        if self_dual and not K.is_self_dual():
            continue
        W = k_weight_enumerator(K)
        if wanted is not None and W.coeffs not in wanted:
            continue
        if even and any(c for m, c in enumerate(W.coeffs) if m % 2):
            continue
        key = (W.coeffs, tuple(sorted(_coord_fingerprints(K))))
        bucket = keyed.setdefault(key, [])
        if any(k_equivalent(R, K) is not None for R in bucket):
            continue
        bucket.append(K)
        reps.append(K)
    return reps


# -- named codes and text format ------------------------------------------

EPSILON2 = KleinianCode.from_words(2, ["aa", "bb"])
DELTA4_PLUS = KleinianCode.from_words(4, ["aa00", "a0a0", "a00a", "bbbb"])


def k_direct_sum(K, J):
    shift = 2 * K.length
    return KleinianCode(K.length + J.length, f2.rref(list(K.basis) + [b << shift for b in J.basis]))


def format_kleinian(K):
    lines = ["kleinian %d" % K.length]
    lines += [word_to_string(b, K.length) for b in K.basis]
    return "\n".join(lines) + "\n"


def parse_kleinian(text):
    from .textio import parse_code

    code = parse_code(text)
    if not isinstance(code, KleinianCode):
        raise ValueError("not a Kleinian code file")
    return code
