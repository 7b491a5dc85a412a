"""
Exact integer and rational linear algebra on small dense matrices.

Matrices are lists of rows of Python ints (or Fractions where stated).
Sizes in this package never exceed a few dozen rows, so clarity wins over
asymptotics here.
"""

from fractions import Fraction
from math import gcd


def _copy(M):
    return [list(r) for r in M]


def hnf(rows):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the list of nonzero basis rows in echelon form: pivots strictly
    move right, every pivot is positive and the entries above a pivot lie in
    ``[0, pivot)``. Dependent generators are allowed. The result depends only
    on the row lattice, so it serves as a canonical form.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out = []
    for col in range(ncols):
        nz = [r for r in A if r[col] != 0]
        if not nz:
            continue
        rest = [r for r in A if r[col] == 0]
        # gcd-reduce all rows with a nonzero entry in this column into one
        piv = nz[0]
        for r in nz[1:]:
            while r[col] != 0:
                q = piv[col] // r[col]
                piv = [a - q * b for a, b in zip(piv, r)]
                piv, r = r, piv
            if any(r):
                rest.append(r)
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        A = [r for r in rest if any(r)]
    # reduce entries above pivots
    pivcols = [next(j for j, a in enumerate(r) if a) for r in out]
    for i in range(len(out)):
        pc = pivcols[i]
        p = out[i][pc]
        for k in range(i):
            q = out[k][pc] // p
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return out


def snf(A):
    """Smith normal form ``U A V = D`` of an integer matrix.

    Returns ``(D, U, V)`` with ``U`` and ``V`` unimodular and ``D`` diagonal
    with nonnegative entries, each dividing the next.
    """
    m, n = len(A), len(A[0])
    D = _copy(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        for r in D:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, D[i][t] // p)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
                        break
            if not done:
                continue
            p = D[t][t]
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, D[t][j] // p)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
                        break
            if not done:
                continue
            # divisibility of the remaining block
            p = D[t][t]
            for i in range(t + 1, m):
                bad = next((j for j in range(t + 1, n) if D[i][j] % p), None)
                if bad is not None:
                    add_row(i, t, -1)
                    done = False
                    break
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return D, U, V


def invariant_factors(A):
    """Nonzero diagonal of the Smith normal form of ``A``."""
    D, _, _ = snf(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def det(M):
    """Exact determinant (Fraction-valued Bareiss-free Gaussian elimination)."""
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return d


def _inverse_int(M):
    """Fraction-free Gauss-Jordan on [M | I]; returns (det-scaled inverse, det)."""
    n = len(M)
    A = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    prev = 1
    for k in range(n):
        p = next((r for r in range(k, n) if A[r][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            A[k], A[p] = A[p], A[k]
        piv = A[k]
        pk = piv[k]
        for i in range(n):
            if i == k:
                continue
            r = A[i]
            f = r[k]
            A[i] = [(pk * a - f * b) // prev for a, b in zip(r, piv)]
        prev = pk
    # now A = [d I | d M^{-1}] up to the row order fixed by the swaps
    return [r[n:] for r in A], [A[i][i] for i in range(n)]


def inverse(M):
    """Exact inverse of a square matrix over the rationals."""
    n = len(M)
    den = common_denominator(M)
    if n and den < 2 ** 62:
        A = [[int(Fraction(x) * den) for x in r] for r in M]
        R, diag = _inverse_int(A)
        return [[Fraction(x * den, d) for x in r] for r, d in zip(R, diag)]
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [a / pv for a in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [r[n:] for r in A]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in Bt] for r in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def common_denominator(rows):
    d = 1
    for r in rows:
        for x in r:
            x = Fraction(x)
            d = d * x.denominator // gcd(d, x.denominator)
    return d


def rank_q(M):
    """Rank over the rationals."""
    A = [[Fraction(x) for x in r] for r in M]
    rk = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((r for r in range(rk, len(A)) if A[r][c] != 0), None)
        if p is None:
            continue
        A[rk], A[p] = A[p], A[rk]
        for r in range(rk + 1, len(A)):
            if A[r][c] != 0:
                f = A[r][c] / A[rk][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rk])]
        rk += 1
    return rk


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL-reduce a positive-definite Gram matrix exactly.

    Integral variant working only with the subdeterminants d_i and scaled
    Gram-Schmidt coefficients, so every step is integer arithmetic. Rational
    input is scaled to an integer matrix first. Returns the unimodular ``U``
    such that ``U G U^T`` is LLL-reduced.
    """
    n = len(G)
    den = common_denominator(G)
    b = [[int(Fraction(x) * den) for x in r] for r in G]
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return H
    dn, dd = delta.numerator, delta.denominator
    d = [0] * (n + 1)  # d[0] = 1, d[i+1] = det of leading (i+1) block
    d[0] = 1
    lam = [[0] * n for _ in range(n)]

    def row(k):
        for j in range(k + 1):
            u = b[k][j]
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u <= 0:
                    raise ValueError("Gram matrix is not positive definite")
                d[k + 1] = u

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            H[k] = [a - q * c for a, c in zip(H[k], H[l])]
            bkk = b[k][k] - 2 * q * b[k][l] + q * q * b[l][l]
            for j in range(n):
                if j != k:
                    v = b[k][j] - q * b[l][j]
                    b[k][j] = v
                    b[j][k] = v
            b[k][k] = bkk
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        H[k], H[k - 1] = H[k - 1], H[k]
        b[k], b[k - 1] = b[k - 1], b[k]
        for r in b:
            r[k], r[k - 1] = r[k - 1], r[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        la = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + la * la) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - la * t) // d[k]
            lam[i][k - 1] = (B * t + la * lam[i][k]) // d[k + 1]
        d[k] = B

    row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            row(k)
        red(k, k - 1)
        # Lovasz condition in integer form
        if dd * d[k + 1] * d[k - 1] < (dn * d[k] * d[k] - dd * lam[k][k - 1] ** 2):
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return H
