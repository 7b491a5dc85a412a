"""
Positive-definite lattices on a rational coordinate grid.

Ambient space R^N has an orthogonal basis alpha_1..alpha_N with
(alpha_i, alpha_i) = form[i] (default 2).  A lattice stores integer rows in
units alpha_i/denom, kept in row Hermite normal form with the smallest
denominator that works, so two lattices are equal iff their stored fields
are equal.
"""

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, isqrt

import numpy as np

from . import f2
from .errors import GuardError, HypothesisViolation, SearchDefect
from .intlinalg import det, hnf, inverse, lll_gram, matmul, snf, transpose
from .qseries import DEFAULT_PRECISION, GRID, QSeries

MAX_DENOM = 8
MAX_RANK = 16
MAX_SHORT_NORM = 8
DP_STATE_LIMIT = 1 << 17


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Lattice:
    basis: tuple
    denom: int
    form: tuple

    @classmethod
    def from_generators(cls, rows, denom=1, form=None, expect_rank=None):
        """Lattice spanned by integer rows given in units alpha_i/denom.

        Rows may also hold Fractions (then ``denom`` scales them first).
        """
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("need at least one generator")
        width = len(rows[0])
        if form is None:
            form = (2,) * width
        form = tuple(int(f) for f in form)
        if len(form) != width or any(f <= 0 for f in form):
            raise ValueError("form must list one positive weight per coordinate")
        d = 1
        for r in rows:
            for x in r:
                d = _lcm(d, (Fraction(x) / denom).denominator)
        ints = [[int(Fraction(x) * d / denom) for x in r] for r in rows]
        B = hnf(ints)
        # shrink the denominator if every entry allows it
        g = d
        for r in B:
            for x in r:
                g = gcd(g, x)
        if g > 1:
            B = [[x // g for x in r] for r in B]
            d //= g
        if d > MAX_DENOM:
            raise GuardError("denominator %d exceeds the supported grid 1/%d" % (d, MAX_DENOM))
        if expect_rank is not None and len(B) != expect_rank:
            raise ValueError("generators have rank %d, expected %d" % (len(B), expect_rank))
        return cls(tuple(tuple(r) for r in B), d, form)

    # -- basic data ------------------------------------------------------

    @property
    def rank(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.form)

    def vectors(self):
        """Basis vectors as ambient Fraction tuples."""
        return [tuple(Fraction(x, self.denom) for x in r) for r in self.basis]

    def inner(self, u, v):
        return sum(Fraction(f) * a * b for f, a, b in zip(self.form, u, v))

    def norm(self, v):
        return self.inner(v, v)

    @cached_property
    def gram(self):
        d2 = self.denom * self.denom
        B = self.basis
        f = self.form
        return tuple(
            tuple(Fraction(sum(w * a * b for w, a, b in zip(f, r, s)), d2) for s in B) for r in B
        )

    def gram_scaled(self):
        """(D, integer matrix) with gram = matrix / D and D minimal."""
        D = 1
        for r in self.gram:
            for x in r:
                D = _lcm(D, x.denominator)
        return D, [[int(x * D) for x in r] for r in self.gram]

    def determinant(self):
        return det(self.gram)

    def is_integral(self):
        return all(x.denominator == 1 for r in self.gram for x in r)

    def is_even(self):
        return self.is_integral() and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_unimodular(self):
        return self.is_integral() and self.determinant() == 1

    @cached_property
    def _coord_map(self):
        # coords = v P with P = F B^T G^{-1} (ambient -> basis coordinates)
        Bf = [[Fraction(x, self.denom) for x in r] for r in self.basis]
        FBt = [[Fraction(self.form[i]) * Bf[j][i] for j in range(self.rank)] for i in range(self.dim)]
        return matmul(FBt, inverse(self.gram))

    def coordinates(self, v):
        """Basis coordinates of an ambient vector in the rational span, else None."""
        v = [Fraction(x) for x in v]
        c = [sum(a * b for a, b in zip(v, col)) for col in zip(*self._coord_map)]
        back = [sum(ci * Fraction(r[j], self.denom) for ci, r in zip(c, self.basis)) for j in range(self.dim)]
        return c if back == v else None

    def contains(self, v):
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other):
        return all(self.contains(v) for v in other.vectors())

    def to_ambient(self, coords):
        return tuple(sum(Fraction(c) * Fraction(r[j], self.denom) for c, r in zip(coords, self.basis)) for j in range(self.dim))

    def __str__(self):
        from .textio import format_lattice

        return format_lattice(self)


def _check_same_space(L, M):
    if L.form != M.form:
        raise ValueError("lattices live in different ambient spaces")


def lattice_sum(L, *vectors_or_lattices):
    """Lattice generated by L and further ambient vectors or lattices."""
    rows = L.vectors()
    for x in vectors_or_lattices:
        if isinstance(x, Lattice):
            _check_same_space(L, x)
            rows += x.vectors()
        else:
            rows.append(tuple(Fraction(a) for a in x))
    return Lattice.from_generators(rows, 1, L.form)


def scale_lattice(L, factor):
    """Multiply every vector by a rational factor."""
    rows = [[Fraction(x, L.denom) * factor for x in r] for r in L.basis]
    return Lattice.from_generators(rows, 1, L.form)


def scale_sqrt2(L):
    """The lattice sqrt(2) L, realised by doubling the ambient form."""
    return Lattice(L.basis, L.denom, tuple(2 * f for f in L.form))


def direct_sum(L, M):
    d = _lcm(L.denom, M.denom)
    a, b = d // L.denom, d // M.denom
    rows = [[x * a for x in r] + [0] * M.dim for r in L.basis]
    rows += [[0] * L.dim + [x * b for x in r] for r in M.basis]
    return Lattice.from_generators(rows, d, L.form + M.form)


def apply_linear(L, R):
    """Image of L under the ambient linear map with matrix R (row vectors, v -> v R)."""
    rows = matmul([list(v) for v in L.vectors()], R)
    return Lattice.from_generators(rows, 1, L.form)


def is_even(L):
    return L.is_even()


# -- constructions -------------------------------------------------------


def _require_doubly_even(C):
    from .bincodes import is_doubly_even

    if not is_doubly_even(C):
        raise HypothesisViolation("code is not doubly-even, so the lattice would not be even")


def construction_a_lattice(C):
    """L(C) = sum Z alpha_i + sum_{c in C} Z alpha_c / 2."""
    _require_doubly_even(C)
    n = C.length
    rows = [[2 * (i == j) for j in range(n)] for i in range(n)]
    rows += [[(c >> j) & 1 for j in range(n)] for c in C.basis]
    return Lattice.from_generators(rows, 2)


def construction_b_lattice(C):
    """L+(C) = sum Z (alpha_i + alpha_j) + sum_{c in C} Z alpha_c / 2."""
    _require_doubly_even(C)
    n = C.length
    rows = [[4] + [0] * (n - 1)]
    rows += [[2 * (j == 0) + 2 * (j == i) for j in range(n)] for i in range(1, n)]
    rows += [[(c >> j) & 1 for j in range(n)] for c in C.basis]
    return Lattice.from_generators(rows, 2)


def frame_vector(n, i, scale=1):
    """scale * alpha_i as an ambient vector."""
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(n))


@lru_cache(maxsize=1024)
def dual_lattice(L):
    """L* inside the rational span of L: basis G^{-1} B."""
    Ginv = inverse(L.gram)
    B = [list(v) for v in L.vectors()]
    return Lattice.from_generators(matmul(Ginv, B), 1, L.form)


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple  # factors > 1

    @property
    def order(self):
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o

    def is_elementary_2(self):
        return all(d == 2 for d in self.invariant_factors)

    @property
    def exponent_k(self):
        """k with L*/L = Z_2^k (only meaningful when 2-elementary)."""
        return len(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join("Z%d" % d for d in self.invariant_factors)


def _integer_gram(L):
    if not L.is_integral():
        raise HypothesisViolation("lattice is not integral")
    return [[int(x) for x in r] for r in L.gram]


def discriminant_group(L):
    D, _, _ = snf(_integer_gram(L))
    return DiscriminantGroup(tuple(D[i][i] for i in range(L.rank) if D[i][i] > 1))


def _discriminant_data(L):
    """(factors, reps) where reps(r) gives an ambient lift of the element r.

    Elements of L*/L are tuples r with 0 <= r_j < s_j over the factors s_j > 1.
    """
    G = _integer_gram(L)
    D, U, V = snf(G)
    n = L.rank
    idx = [i for i in range(n) if D[i][i] > 1]
    factors = tuple(D[i][i] for i in idx)
    Vinv = inverse(V)
    Ginv = inverse(G)
    B = [list(v) for v in L.vectors()]
    Bdual = matmul(Ginv, B)  # dual basis, ambient

    def lift(r):
        # dual-coordinates y with y V = e (the residue vector), y = e V^{-1}
        y = [Fraction(0)] * n
        for t, i in enumerate(idx):
            if r[t]:
                for j in range(n):
                    y[j] += r[t] * Vinv[i][j]
        return tuple(sum(y[k] * Bdual[k][j] for k in range(n)) for j in range(L.dim))

    return factors, lift


def discriminant_elements(L):
    """List of (residue tuple, ambient lift) for every element of L*/L."""
    factors, lift = _discriminant_data(L)
    return [(r, lift(r)) for r in product(*[range(s) for s in factors])]


# -- short vectors ---------------------------------------------------------


class _Reduced:
    """LLL data of a Gram matrix: transform, integer-scaled reduced Gram."""

    def __init__(self, gram):
        U = lll_gram(gram)
        D = 1
        for r in gram:
            for x in r:
                D = _lcm(D, Fraction(x).denominator)
        Gi = [[int(Fraction(x) * D) for x in r] for r in gram]
        self.U = U
        self.D = D
        self.Gr = matmul(matmul(U, Gi), transpose(U))
        self.q = _fp_decomposition(self.Gr)

    @cached_property
    def Uinv(self):
        return inverse(self.U)


@lru_cache(maxsize=512)
def _reduced(gram):
    return _Reduced(gram)


def _fp_decomposition(G):
    n = len(G)
    q = [[float(x) for x in r] for r in G]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _enumerate_fp(q, bound, center):
    """Integer y with (y + center) Q (y + center)^T <= bound (float prefilter).

    ``q`` is the Fincke-Pohst decomposition of Q; a small slack keeps every
    true solution, and callers filter with exact arithmetic.
    """
    n = len(q)
    eps = 1e-7 * (1 + float(bound))
    c = [float(x) for x in center]
    out = []
    y = [0] * n

    def rec(i, remaining):
        s = c[i] + sum(q[i][j] * (y[j] + c[j]) for j in range(i + 1, n))
        r = (remaining + eps) / q[i][i]
        if r < 0:
            return
        w = r ** 0.5
        lo = int(np.ceil(-s - w))
        hi = int(np.floor(-s + w))
        for v in range(lo, hi + 1):
            t = v + s
            rem = remaining - q[i][i] * t * t
            if rem < -eps:
                continue
            y[i] = v
            if i == 0:
                out.append(tuple(y))
            else:
                rec(i - 1, rem)
        y[i] = 0

    if n:
        rec(n - 1, float(bound))
    return out


def _check_guard(L, bound):
    if L.rank > MAX_RANK:
        raise GuardError("rank %d exceeds %d" % (L.rank, MAX_RANK))
    if bound > MAX_SHORT_NORM:
        raise GuardError("norm bound %s exceeds the short-vector guard %d" % (bound, MAX_SHORT_NORM))


def short_vectors(L, bound, coset=None, guard=True):
    """Vectors of L (or of coset + L) with norm <= bound, grouped by norm.

    Returns {norm: [coordinate tuples]} with coordinates relative to L's basis
    (Fractions for a coset, ints otherwise), each list sorted.
    """
    bound = Fraction(bound)
    if guard:
        _check_guard(L, bound)
    n = L.rank
    red = _reduced(L.gram)
    D = red.D
    if coset is None:
        e = 1
        cen_r = [0] * n
    else:
        cen = L.coordinates(coset)
        if cen is None:
            raise ValueError("coset representative is outside the span of L")
        cen = [x - (x.numerator // x.denominator) for x in cen]
        cen_r = [sum(cen[k] * red.Uinv[k][j] for k in range(n)) for j in range(n)]
        e = 1
        for x in cen_r:
            e = _lcm(e, x.denominator)
    cands = _enumerate_fp(red.q, bound * D, cen_r)
    if not cands:
        return {}
    # exact norms in integers: (e y + e c) G_int (.)^T / (D e^2)
    dtype = np.int64 if e * e * D * (bound + 1) * 64 < 2 ** 62 else object
    Gi = np.array(red.Gr, dtype=dtype)
    Ci = np.array([int(x * e) for x in cen_r], dtype=dtype)
    Y = np.array(cands, dtype=dtype) * e + Ci
    norms = ((Y @ Gi) * Y).sum(axis=1)
    keep = norms * 1 <= int(bound * D * e * e)
    X = Y[keep] @ np.array(red.U, dtype=dtype)
    norms = norms[keep]
    out = {}
    for row, nm in zip(X.tolist(), norms.tolist()):
        val = Fraction(nm, D * e * e)
        if coset is None:
            coords = tuple(row)
        else:
            coords = tuple(Fraction(a, e) for a in row)
        out.setdefault(val, []).append(coords)
    return {k: sorted(v) for k, v in sorted(out.items())}


def count_vectors(L, norm, coset=None):
    return len(short_vectors(L, norm, coset).get(Fraction(norm), []))


def minimum_norm(L, coset=None, limit=MAX_SHORT_NORM):
    for b in range(1, limit + 1):
        sv = short_vectors(L, b, coset)
        nz = [k for k, v in sv.items() if k > 0 or coset is not None]
        if nz:
            return min(nz)
    return None


# -- theta series ----------------------------------------------------------


def _dp_theta(L, N, coset):
    """Theta via a congruence DP over ambient grid coordinates (full rank only)."""
    n = L.rank
    d = L.denom
    shift = None
    if coset is not None:
        dc = d
        for x in coset:
            dc = _lcm(dc, Fraction(x).denominator)
        shift = dc // d
    else:
        shift = 1
    # work on grid 1/(d*shift)
    dg = d * shift
    B = [[x * shift for x in r] for r in L.basis]
    D, U, V = snf(B)
    factors = [D[i][i] for i in range(n)]
    mods = [(i, s) for i, s in enumerate(factors) if s > 1]
    nstates = 1
    for _, s in mods:
        nstates *= s
    if nstates > DP_STATE_LIMIT:
        return None
    # norm units: sum f_i x_i^2 over dg^2; keep norms < 2N
    limit = 2 * N * dg * dg
    radix = []
    r = 1
    for _, s in mods:
        radix.append(r)
        r *= s
    # residue vectors of all states
    states = np.arange(nstates)
    digits = [(states // rad) % s for rad, (_, s) in zip(radix, mods)]
    table = np.zeros((nstates, limit), dtype=np.int64)
    table[0, 0] = 1
    for i in range(n):
        f = L.form[i]
        maxv = isqrt((limit - 1) // f) if limit > 0 else 0
        new = np.zeros_like(table)
        for v in range(-maxv, maxv + 1):
            u = f * v * v
            if u >= limit:
                continue
            # state after adding v * V[i] (residues mod s_j)
            idx = np.zeros(nstates, dtype=np.int64)
            for (j, s), rad, dig in zip(mods, radix, digits):
                idx += ((dig + v * V[i][j]) % s) * rad
            if u:
                new[idx, u:] += table[:, : limit - u]
            else:
                new[idx, :] += table
        table = new
    if coset is None:
        target = 0
    else:
        lam = [int(Fraction(x) * dg) for x in coset]
        target = 0
        for (j, s), rad in zip(mods, radix):
            target += (sum(lam[k] * V[k][j] for k in range(n)) % s) * rad
    row = table[target]
    grid = {}
    for u, c in enumerate(row):
        if c:
            g = Fraction(u * GRID, 2 * dg * dg)
            if g.denominator != 1:
                raise ArithmeticError("theta exponent off the grid")
            grid[int(g)] = int(c)
    return QSeries._from_grid(grid, GRID * N)


def theta_series(L, N=DEFAULT_PRECISION, coset=None):
    """Theta series of L (or coset + L) with all terms below q^N."""
    if coset is not None:
        coset = tuple(Fraction(x) for x in coset)
    return _theta_cached(L, N, coset)


@lru_cache(maxsize=256)
def _theta_cached(L, N, coset):
    if L.rank > MAX_RANK:
        raise GuardError("rank %d exceeds %d" % (L.rank, MAX_RANK))
    if L.rank == L.dim:
        s = _dp_theta(L, N, coset)
        if s is not None:
            return s
    bound = 2 * N
    if bound > 2 * MAX_SHORT_NORM:
        raise GuardError("theta precision %s beyond the enumeration guard for this lattice" % N)
    sv = short_vectors(L, bound, coset, guard=False)
    grid = {}
    for nm, vs in sv.items():
        if nm < bound:
            g = nm * GRID / 2
            if g.denominator != 1:
                raise ArithmeticError("theta exponent off the grid")
            grid[int(g)] = len(vs)
    return QSeries._from_grid(grid, GRID * N)


def theta_from_code(C, N=DEFAULT_PRECISION, plus=False):
    """Theta series of L(C) (or L+(C)) predicted from the weight enumerator:
    sum_c theta2^wt(c) theta3^(n - wt(c)), and for L+ the mean with theta4^n."""
    from .bincodes import weight_enumerator
    from .qseries import theta_k

    n = C.length
    t2, t3, t4 = theta_k(2, N), theta_k(3, N), theta_k(4, N)
    total = None
    for w, c in enumerate(weight_enumerator(C).coeffs):
        if c:
            term = (t2 ** w * t3 ** (n - w)).scale(c)
            total = term if total is None else total + term
    if plus:
        total = (total + t4 ** n).divexact(2)
    return total.truncate(GRID * N)


# -- isometry ---------------------------------------------------------------


@dataclass(frozen=True)
class IsometryWitness:
    """Rows of T are the images of L's basis in N's basis: T G_N T^T = G_L."""

    matrix: tuple

    def verify(self, L, N):
        T = [list(r) for r in self.matrix]
        dn, gn = N.gram_scaled()
        dl, gl = L.gram_scaled()
        lhs = matmul(matmul(T, gn), transpose(T))
        ok = all(a * dl == b * dn for ra, rb in zip(lhs, gl) for a, b in zip(ra, rb))
        return ok and abs(det(T)) == 1

    def gram_hash(self, L):
        import hashlib

        text = ";".join(",".join(str(x) for x in r) for r in L.gram)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_json(self, L=None):
        out = {"matrix": [list(r) for r in self.matrix]}
        if L is not None:
            out["gram_sha256_16"] = self.gram_hash(L)
        return out


def _components(P, idx):
    """Connected components (by nonzero inner product) of the vector set idx."""
    parent = {i: i for i in idx}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    sub = P[np.ix_(idx, idx)]
    nz = np.argwhere(sub != 0)
    for a, b in nz:
        ra, rb = find(idx[a]), find(idx[b])
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for i in idx:
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


class _IsoContext:
    """Short vectors, inner-product matrix and fingerprints of one lattice."""

    def __init__(self, L, bound):
        self.L = L
        D, Gi = L.gram_scaled()
        self.D = D
        self.G = np.array(Gi, dtype=np.int64)
        sv = short_vectors(L, bound, guard=False)
        vecs = []
        for nm in sorted(sv):
            if nm > 0:
                vecs.extend(sv[nm])
        self.S = np.array(vecs, dtype=np.int64).reshape(len(vecs), L.rank)
        self.P = self.S @ self.G @ self.S.T
        self.norms = np.diag(self.P).copy()
        prof = []
        for i in range(len(vecs)):
            vals, counts = np.unique(self.P[i], return_counts=True)
            prof.append((int(self.norms[i]),) + tuple(zip(vals.tolist(), counts.tolist())))
        self.profiles = prof
        self.profile_ids = {}
        self.pid = np.array([self.profile_ids.setdefault(p, len(self.profile_ids)) for p in prof], dtype=np.int64)

    def invariant(self):
        from collections import Counter

        m = int(self.norms.min()) if len(self.norms) else 0
        idx = [i for i in range(len(self.norms)) if self.norms[i] == m]
        comp = []
        for c in _components(self.P, idx):
            comp.append((len(c), int(np.linalg.matrix_rank(self.S[c].astype(float)))))
        return (
            self.D,
            tuple(sorted(Counter(self.profiles).items())),
            tuple(sorted(comp)),
        )


def _gram_invariants(L):
    D, Gi = L.gram_scaled()
    inv = snf(Gi)[0]
    return (L.rank, D, tuple(sorted(inv[i][i] for i in range(L.rank))))


@lru_cache(maxsize=1024)
def _spanning_bound(L):
    """Smallest norm bound b (in steps of 1/D... integers) whose vectors span."""
    for b in range(1, MAX_SHORT_NORM + 1):
        sv = short_vectors(L, b, guard=False)
        vecs = [v for nm, vs in sv.items() if nm > 0 for v in vs]
        if vecs and np.linalg.matrix_rank(np.array(vecs, dtype=float)) == L.rank:
            return b
    raise GuardError("lattice is not spanned by vectors of norm <= %d" % MAX_SHORT_NORM)


_CTX_CACHE = OrderedDict()
_CTX_CACHE_SIZE = 256


@lru_cache(maxsize=1024)
def isometry_invariant(L):
    """Hashable isometry invariant: Gram data, short-vector profiles and the
    component structure of the minimal vectors."""
    b = _spanning_bound(L)
    return (_gram_invariants(L), b, _context(L, b).invariant())


def _context(L, bound):
    key = (L, bound)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = _CTX_CACHE[key] = _IsoContext(L, bound)
        if len(_CTX_CACHE) > _CTX_CACHE_SIZE:
            _CTX_CACHE.popitem(last=False)
    else:
        _CTX_CACHE.move_to_end(key)
    return ctx


def _choose_basis(ctx):
    """Indices of n independent short vectors, favouring mutual connectivity."""
    n = ctx.L.rank
    order = sorted(range(len(ctx.norms)), key=lambda i: (ctx.norms[i], i))
    chosen = []
    ortho = []  # orthonormal basis (float) of the chosen span, for independence
    X = ctx.S.astype(float)

    def residual(i):
        v = X[i].copy()
        for q in ortho:
            v -= (v @ q) * q
        return v

    while len(chosen) < n:
        best = None
        for i in order:
            if i in chosen:
                continue
            r = residual(i)
            if r @ r < 1e-9 * (X[i] @ X[i]):
                continue
            conn = sum(1 for j in chosen if ctx.P[i, j] != 0)
            key = (ctx.norms[i], -conn)
            if best is None or key < best[0]:
                best = (key, i, r)
            if conn == len(chosen):
                break
        chosen.append(best[1])
        r = best[2]
        ortho.append(r / np.sqrt(r @ r))
    return chosen


def _partial_generators(Bm):
    """For basis b_0..b_{n-1} (rows of Bm, L-coordinates), the generator of
    L cap span(b_0..b_i) added at depth i, in b-coordinates: (num, den)."""
    n = len(Bm)
    Binv = inverse(Bm)  # L basis vectors in b-coordinates
    den = 1
    for r in Binv:
        for x in r:
            den = _lcm(den, x.denominator)
    M = [[int(x * den) for x in r] for r in Binv]
    rev = [list(reversed(r)) for r in M]
    H = hnf(rev)
    gens = [None] * n
    for row in H:
        piv = next(j for j, x in enumerate(row) if x)
        depth = n - 1 - piv
        gens[depth] = list(reversed(row))
    return gens, den


def lattice_isometric(L, N):
    """Isometry witness T (integer matrix) with T G_N T^T = G_L, or None."""
    if L.rank != N.rank:
        raise ValueError("rank mismatch")
    if L.rank > MAX_RANK:
        raise GuardError("rank exceeds %d" % MAX_RANK)
    if isometry_invariant(L) != isometry_invariant(N):
        return None
    b = _spanning_bound(L)
    cl, cn = _context(L, b), _context(N, b)
    # profiles must agree as multisets (already in invariant); map profile ids
    prof_to_n = {}
    for i, p in enumerate(cn.profiles):
        prof_to_n.setdefault(p, []).append(i)
    n = L.rank
    chosen = _choose_basis(cl)
    Bm = [[int(x) for x in cl.S[i]] for i in chosen]
    Gb = cl.P[np.ix_(chosen, chosen)]
    gens, den = _partial_generators(Bm)
    base = []
    for i in chosen:
        mask = np.zeros(len(cn.norms), dtype=bool)
        mask[prof_to_n.get(cl.profiles[i], [])] = True
        base.append(mask)
    images = [None] * n

    def rec(depth, cand_masks):
        if depth == n:
            return True
        mask = base[depth].copy()
        for j in range(depth):
            mask &= cn.P[images[j]] == Gb[depth, j]
        g = gens[depth]
        for c in np.flatnonzero(mask):
            images[depth] = int(c)
            # partial lattice check: the new generator maps into N
            img = np.zeros(n, dtype=np.int64)
            for j in range(depth + 1):
                if g[j]:
                    img += g[j] * cn.S[images[j]]
            if np.all(img % den == 0) and rec(depth + 1, None):
                return True
        images[depth] = None
        return False

    if not rec(0, None):
        return None
    C = [[Fraction(int(x)) for x in cn.S[i]] for i in images]
    T = matmul(inverse(Bm), C)
    if any(x.denominator != 1 for r in T for x in r):
        raise SearchDefect("isometry images are not integral")
    W = IsometryWitness(tuple(tuple(int(x) for x in r) for r in T))
    if not W.verify(L, N):
        raise SearchDefect("isometry witness failed re-verification")
    return W


# -- rho, detection, embeddings ----------------------------------------------


def rho_matrix(m):
    """The 4m x 4m block map as Fractions (rows = images of alpha_j)."""
    h = Fraction(1, 2)
    R = [[Fraction(0)] * (4 * m) for _ in range(4 * m)]
    for i in range(m):
        o = 4 * i
        for j in range(3):
            for k in range(3):
                R[o + j][o + k] = -h + (1 if j == k else 0)
            R[o + j][o + 3] = h
        for k in range(4):
            R[o + 3][o + k] = h
    return R


def rho_isomorphism(K):
    """rho carrying L(C+(K)) onto L+(C(K)); verified before returning."""
    from .bincodes import construction_a_code, construction_b_code

    if not K.is_even():
        raise HypothesisViolation("Kleinian code is not even")
    m = K.length
    R = rho_matrix(m)
    src = construction_a_lattice(construction_b_code(K))
    dst = construction_b_lattice(construction_a_code(K))
    img = apply_linear(src, R)
    if img != dst or abs(det(R)) != 1:
        raise SearchDefect("rho does not carry L(C+(K)) onto L+(C(K))")
    return R


def epsilon_automorphism(L, C, c):
    """Diagonal sign change (-1)^{c_i} on alpha_i; requires c in the dual of C."""
    from .bincodes import code_dual

    n = C.length
    if not f2.in_span(code_dual(C).basis, c):
        raise HypothesisViolation("word is not in the dual code; no automorphism")
    E = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        E[i][i] = Fraction(-1 if (c >> i) & 1 else 1)
    if apply_linear(L, E) != L:
        raise SearchDefect("sign change does not preserve the lattice")
    return E


@dataclass(frozen=True)
class Detection:
    """Output of detect_construction_b.

    ``frame`` lists the orthogonal norm-2 vectors beta_i (ambient); ``map_l``
    and ``map_m`` give L and L + Z lambda in frame coordinates (rows in units
    beta/2) which equal L+(code) and L(code) exactly.
    """

    code: object
    frame: tuple
    map_l: tuple
    map_m: tuple


def _frame_coords(vectors, frame, L):
    # coordinate of v along beta_i in units beta_i/2: (v, beta_i)
    return [[L.inner(v, b) for b in frame] for v in vectors]


def detect_construction_b(L, lam):
    """Recognise L as L+(C) with L + Z lam = L(C), from an orthogonal frame in lam + L."""
    from .bincodes import BinaryCode

    n = L.rank
    lam = tuple(Fraction(x) for x in lam)
    if not L.is_even():
        raise HypothesisViolation("lattice is not even")
    c = L.coordinates(lam)
    if c is None:
        raise HypothesisViolation("lambda is outside the span of L")
    if not all(L.inner(lam, v).denominator == 1 for v in L.vectors()):
        raise HypothesisViolation("lambda is not in the dual lattice")
    if L.contains(lam):
        raise HypothesisViolation("lambda lies in L")
    if not L.contains(tuple(2 * x for x in lam)):
        raise HypothesisViolation("2 lambda is not in L")
    nl = count_vectors(L, 2)
    coset = short_vectors(L, 2, lam).get(Fraction(2), [])
    if len(coset) < 2 * n + nl:
        raise HypothesisViolation("counting hypothesis fails: |(lam+L)(2)| = %d < 2n + |L(2)| = %d" % (len(coset), 2 * n + nl))
    vecs = sorted(L.to_ambient(x) for x in coset)
    # one representative per +- pair, keep lexicographically larger
    reps = [v for v in vecs if v > tuple(-x for x in v)]
    scale = 2 * L.denom
    A = np.array([[int(x * scale) for x in v] for v in reps], dtype=np.int64)
    ip = ((A * np.array(L.form, dtype=np.int64)) @ A.T) != 0
    chosen = []

    def rec(start):
        if len(chosen) == n:
            return True
        for i in range(start, len(reps)):
            if not any(ip[i, j] for j in chosen):
                chosen.append(i)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        raise SearchDefect("counting hypothesis holds but no orthogonal frame was found")
    frame = [reps[i] for i in chosen]
    M = lattice_sum(L, lam)
    mrows = _frame_coords(M.vectors(), frame, L)
    if any(x.denominator != 1 for r in mrows for x in r):
        raise SearchDefect("frame coordinates are not half-integral")
    code = BinaryCode(n, f2.rref([sum((int(x) % 2) << j for j, x in enumerate(r)) for r in mrows]))
    # sign fix: want (1/2) beta_c in L for every c in a basis of the code
    targets = []
    for cw in code.basis:
        v = tuple(sum(Fraction(1, 2) * frame[j][k] for j in range(n) if (cw >> j) & 1) for k in range(L.dim))
        if not M.contains(v):
            raise SearchDefect("half frame sum outside L + Z lambda")
        targets.append(0 if L.contains(v) else 1)
    s = f2.solve(list(code.basis), targets, n)
    if s is None:
        raise SearchDefect("no sign choice puts the half frame sums into L")
    frame = [tuple(-x for x in b) if (s >> i) & 1 else b for i, b in enumerate(frame)]
    lrows = _frame_coords(L.vectors(), frame, L)
    mrows = _frame_coords(M.vectors(), frame, L)
    Li = Lattice.from_generators(lrows, 2)
    Mi = Lattice.from_generators(mrows, 2)
    if Li != construction_b_lattice(code) or Mi != construction_a_lattice(code):
        raise SearchDefect("recovered code does not reproduce the lattices")
    return Detection(code, tuple(frame), tuple(map(tuple, lrows)), tuple(map(tuple, mrows)))


def _sqrt2_dual_even(L):
    return scale_sqrt2(dual_lattice(L)).is_even()


def embed_unimodular(L):
    """An even unimodular overlattice of L (rank divisible by 8, sqrt2 L* even)."""
    if not L.is_even():
        raise HypothesisViolation("lattice is not even")
    if L.rank % 8:
        raise HypothesisViolation("rank is not divisible by 8")
    if not _sqrt2_dual_even(L):
        raise HypothesisViolation("sqrt(2) L* is not even")

    def rec(M, depth):
        if M.determinant() == 1:
            return M
        for r, v in discriminant_elements(M):
            if not any(r) or M.norm(v) % 2 != 0:
                continue
            out = rec(lattice_sum(M, v), depth + 1)
            if out is not None:
                return out
        return None

    res = rec(L, 0)
    if res is None:
        raise SearchDefect("no even unimodular overlattice found")
    return res


@dataclass(frozen=True)
class OverlatticeClass:
    lattice: Lattice
    discriminant: DiscriminantGroup
    count: int  # number of overlattices in this class


def even_overlattices(L):
    """Isometry classes of even lattices between L and L*."""
    if not L.is_even():
        raise HypothesisViolation("lattice is not even")
    factors, lift = _discriminant_data(L)
    if any(s != 2 for s in factors) or len(factors) > 8:
        raise GuardError("discriminant group must be elementary abelian of order <= 2^8")
    k = len(factors)

    def elem(mask):
        return tuple((mask >> t) & 1 for t in range(k))

    lifts = [lift(elem(m)) for m in range(1 << k)]
    even = [L.norm(lifts[m]) % 2 == 0 for m in range(1 << k)]
    # isotropic subspaces: all elements even; grow by layers
    layer = {()}
    subspaces = [()]
    while layer:
        nxt = set()
        for basis in layer:
            span = f2.span(basis)
            inside = set(span)
            for m in range(1, 1 << k):
                if m in inside or not even[m]:
                    continue
                if all(even[m ^ x] for x in span):
                    nxt.add(f2.rref(basis + (m,)))
        subspaces.extend(sorted(nxt))
        layer = nxt
    buckets = {}
    for basis in subspaces:
        M = lattice_sum(L, *[lifts[m] for m in basis]) if basis else L
        key = (discriminant_group(M), isometry_invariant(M))
        reps = buckets.setdefault(key, [])
        for entry in reps:
            if lattice_isometric(entry[0], M) is not None:
                entry[1] += 1
                break
        else:
            reps.append([M, 1])
    out = []
    for key in sorted(buckets, key=lambda k: (k[0].order, k[0].invariant_factors, repr(k[1]))):
        for M, cnt in buckets[key]:
            out.append(OverlatticeClass(M, discriminant_group(M), cnt))
    return out


# -- named lattices ----------------------------------------------------------


def named_lattice(name):
    from .bincodes import named_code

    if name == "E8":
        return construction_a_lattice(named_code("e8"))
    if name == "E8^2":
        return construction_a_lattice(named_code("e8^2"))
    if name == "D16+":
        return construction_a_lattice(named_code("d16plus"))
    if name == "sqrt2E8":
        return scale_sqrt2(named_lattice("E8"))
    raise KeyError("unknown lattice %r" % name)
