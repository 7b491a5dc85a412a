"""
Linear algebra over F2 with vectors packed into Python ints.

Bit ``i`` of an int is coordinate ``i``.  A subspace is kept as the tuple of
rows of its reduced row echelon form, pivot = lowest set bit, rows sorted by
pivot; two subspaces are equal iff these tuples are equal.
"""

from itertools import combinations, product


def popcount(x):
    return bin(x).count("1")


def rref(rows):
    """Canonical reduced echelon basis of the span of ``rows``."""
    basis = []  # list of (pivot_bit, row)
    for r in rows:
        for p, b in basis:
            if r >> p & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            basis = [(q, b ^ r if b >> p & 1 else b) for q, b in basis]
            basis.append((p, r))
    basis.sort()
    return tuple(b for _, b in basis)


def reduce(basis, v):
    """Reduce ``v`` against a canonical basis; 0 iff ``v`` is in the span."""
    for b in basis:
        p = (b & -b).bit_length() - 1
        if v >> p & 1:
            v ^= b
    return v


def in_span(basis, v):
    return reduce(basis, v) == 0


def span(rows):
    """All vectors of the span, in Gray-code order starting from 0."""
    rows = list(rows)
    out = [0]
    for r in rows:
        out += [x ^ r for x in out]
    return out


def dual(basis, nbits):
    """Basis of the orthogonal complement under the standard dot product."""
    basis = rref(basis)
    pivots = [(b & -b).bit_length() - 1 for b in basis]
    free = [j for j in range(nbits) if j not in pivots]
    out = []
    for f in free:
        v = 1 << f
        for p, b in zip(pivots, basis):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return rref(out)


def dot(x, y):
    return popcount(x & y) & 1


def solve(rows, targets, nbits):
    """Some ``y`` in F2^nbits with ``dot(y, rows[i]) == targets[i]``, or None."""
    aug = [(r, t) for r, t in zip(rows, targets)]
    piv = []
    for i in range(len(aug)):
        r, t = aug[i]
        for p, (br, bt) in piv:
            if r >> p & 1:
                r ^= br
                t ^= bt
        if r == 0:
            if t:
                return None
            continue
        p = (r & -r).bit_length() - 1
        piv = [(q, (br ^ r, bt ^ t) if br >> p & 1 else (br, bt)) for q, (br, bt) in piv]
        piv.append((p, (r, t)))
    y = 0
    for p, (_, t) in piv:
        if t:
            y |= 1 << p
    return y


def subspaces(nbits, rank):
    """Yield every ``rank``-dimensional subspace of F2^nbits as its rref tuple."""
    for pivots in combinations(range(nbits), rank):
        # free positions of row i: columns after its pivot that are not pivots
        slots = []
        for i, p in enumerate(pivots):
            slots.append([j for j in range(p + 1, nbits) if j not in pivots])
        nfree = sum(len(s) for s in slots)
        for bits in product((0, 1), repeat=nfree):
            rows = []
            k = 0
            for p, s in zip(pivots, slots):
                r = 1 << p
                for j in s:
                    if bits[k]:
                        r |= 1 << j
                    k += 1
                rows.append(r)
            yield tuple(rows)


def to_string(v, n):
    return "".join("1" if v >> i & 1 else "0" for i in range(n))


def from_string(s):
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError("bad binary symbol %r" % ch)
    return v
