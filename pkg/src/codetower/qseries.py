"""
Truncated q-series on the exponent grid (1/48)Z.

A series stores ``offset`` (lowest stored exponent, in grid units), a dense
coefficient list starting at that exponent, and ``prec``: every term with
grid exponent below ``prec`` is known exactly, nothing at or above it is.
Coefficients are Python ints, so nothing overflows.
"""

from fractions import Fraction
from functools import lru_cache

GRID = 48
DEFAULT_PRECISION = 10


def _grid(x):
    """Exponent (a Fraction or int, in q units) -> grid units."""
    g = Fraction(x) * GRID
    if g.denominator != 1:
        raise ValueError("exponent %s is not on the 1/%d grid" % (x, GRID))
    return int(g)


class QSeries:
    __slots__ = ("offset", "coeffs", "prec")

    def __init__(self, offset, coeffs, prec):
        coeffs = list(coeffs)[: max(prec - offset, 0)]
        # drop leading zeros so offset is the valuation when nonzero
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            offset, coeffs = prec, []
        else:
            offset, coeffs = offset + k, coeffs[k:]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.offset = offset
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors --------------------------------------------------

    @classmethod
    def from_terms(cls, terms, prec):
        """Build from {exponent: coefficient} with exponents in q units."""
        grid = {}
        for e, c in terms.items():
            g = _grid(e)
            if g < _grid(prec) and c:
                grid[g] = grid.get(g, 0) + c
        return cls._from_grid(grid, _grid(prec))

    @classmethod
    def _from_grid(cls, grid, prec):
        if not grid:
            return cls(prec, [], prec)
        lo = min(grid)
        coeffs = [0] * (max(grid) - lo + 1)
        for g, c in grid.items():
            coeffs[g - lo] = c
        return cls(lo, coeffs, prec)

    @classmethod
    def one(cls, prec_q):
        return cls(0, [1], _grid(prec_q))

    # -- inspection ----------------------------------------------------

    @property
    def precision(self):
        """Truncation order in q units (terms below it are exact)."""
        return Fraction(self.prec, GRID)

    def valuation(self):
        return Fraction(self.offset, GRID) if self.coeffs else None

    def items_grid(self):
        return [(self.offset + i, c) for i, c in enumerate(self.coeffs) if c]

    def terms(self):
        """Nonzero terms as (exponent in q units, coefficient), ascending."""
        return [(Fraction(g, GRID), c) for g, c in self.items_grid()]

    def coefficient(self, exponent):
        g = _grid(exponent)
        if g >= self.prec:
            raise ValueError("coefficient of q^%s lies beyond the truncation q^%s" % (exponent, self.precision))
        i = g - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        head = " + ".join("%s*q^%s" % (c, e) for e, c in self.terms()[:6])
        return "QSeries(%s + O(q^%s))" % (head or "0", self.precision)

    def format_lines(self):
        return "\n".join("q^%s: %d" % (e, c) for e, c in self.terms())

    def to_json(self):
        return {"grid": GRID, "precision": self.prec, "terms": [[g, c] for g, c in self.items_grid()]}

    # -- comparison ----------------------------------------------------

    def truncate(self, prec_grid):
        return QSeries(self.offset, self.coeffs, min(self.prec, prec_grid))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncate(p)._key() == other.truncate(p)._key()

    def _key(self):
        return (self.offset, self.coeffs, self.prec)

    __hash__ = None

    def is_nonnegative(self):
        return all(c >= 0 for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return QSeries(0, [other], self.prec if self.prec > 0 else 0) if other else QSeries(self.prec, [], self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        grid = {}
        for g, c in self.items_grid() + other.items_grid():
            if g < prec:
                grid[g] = grid.get(g, 0) + c
        return QSeries._from_grid({g: c for g, c in grid.items() if c}, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.offset, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        return QSeries(self.offset, [k * c for c in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            prec = min(self.prec + (other.offset if other.coeffs else 0), other.prec + (self.offset if self.coeffs else 0))
            return QSeries(prec, [], prec)
        off = self.offset + other.offset
        prec = min(self.offset + other.prec, other.offset + self.prec)
        n = prec - off
        out = [0] * max(n, 0)
        b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, c in b:
                if i + j >= n:
                    break
                out[i + j] += a * c
        return QSeries(off, out, prec)

    __rmul__ = __mul__

    def divexact(self, k):
        """Divide every coefficient by the integer k; raises if not exact."""
        if any(c % k for c in self.coeffs):
            raise ArithmeticError("series is not divisible by %d" % k)
        return QSeries(self.offset, [c // k for c in self.coeffs], self.prec)

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero series")
        u = self.coeffs[0]
        if u not in (1, -1):
            raise ArithmeticError("leading coefficient %d is not a unit" % u)
        n = self.prec - self.offset  # relative precision
        h = [(j, c) for j, c in enumerate(self.coeffs) if c and j > 0]
        g = [0] * n
        g[0] = u
        for k in range(1, n):
            s = 0
            for j, c in h:
                if j > k:
                    break
                s += c * g[k - j]
            g[k] = -u * s
        return QSeries(-self.offset, g, -self.offset + n)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.divexact(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            return QSeries(0, [1], self.prec - self.offset)
        return result

    def substitute(self, m):
        """q -> q^m for a positive rational m; exponents must stay on the grid."""
        m = Fraction(m)
        if m <= 0:
            raise ValueError("substitution exponent must be positive")
        grid = {}
        for g, c in self.items_grid():
            e = g * m
            if e.denominator != 1:
                raise ValueError("substitution leaves the 1/%d grid" % GRID)
            grid[int(e)] = c
        p = self.prec * m
        prec = -((-p.numerator) // p.denominator)  # ceil
        return QSeries._from_grid(grid, prec)

    def shift(self, exponent):
        """Multiply by q^exponent."""
        g = _grid(exponent)
        return QSeries(self.offset + g, self.coeffs, self.prec + g)


# -- building blocks ---------------------------------------------------


@lru_cache(maxsize=None)
def _euler_product(nterms):
    """Coefficients of prod_{i>=1} (1 - x^i) for x^0 .. x^(nterms-1)."""
    c = [0] * nterms
    c[0] = 1
    for i in range(1, nterms):
        for k in range(nterms - 1, i - 1, -1):
            c[k] -= c[k - i]
    return tuple(c)


def eta(m=1, N=DEFAULT_PRECISION):
    """eta at nome q^m, for m in {1/2, 1, 2}, known to relative order q^N.

    The result is q^(m/24) * prod (1 - q^(m i)) with all terms below
    q^(m/24 + N) exact.
    """
    m = Fraction(m)
    if m not in (Fraction(1, 2), 1, 2):
        raise ValueError("eta scale must be 1/2, 1 or 2")
    N = Fraction(N)
    nterms = int(N / m) + 2  # x-degree needed; x = q^m
    c = _euler_product(nterms)
    step = _grid(m)
    off = _grid(m / 24)
    grid = {off + step * k: v for k, v in enumerate(c) if v}
    prec = off + _grid(N)
    return QSeries._from_grid({g: v for g, v in grid.items() if g < prec}, prec)


def theta_k(k, N=DEFAULT_PRECISION):
    """Jacobi theta constant theta_k(q), k in {2, 3, 4}, terms below q^N."""
    prec = _grid(N)
    grid = {}
    i = 0
    while True:
        if k == 2:
            e = Fraction((2 * i + 1) ** 2, 4)
            mult, sign = 2, 1
        elif k in (3, 4):
            e = Fraction(i * i)
            mult = 1 if i == 0 else 2
            sign = -1 if (k == 4 and i % 2) else 1
        else:
            raise ValueError("theta index must be 2, 3 or 4")
        g = _grid(e)
        if g >= prec:
            break
        grid[g] = mult * sign
        i += 1
    return QSeries._from_grid(grid, prec)


# -- characters ----------------------------------------------------------


def _weight_prec(n, N):
    """Grid bound for a character of rank n known for conformal weights < N."""
    return _grid(Fraction(N) - Fraction(n, 24))


def _check_prec(s, n, N):
    want = _weight_prec(n, N)
    if s.prec < want:
        raise ArithmeticError("internal precision loss")
    return s.truncate(want)


def _lattice_theta(L, N, coset=None):
    from .lattices import theta_series

    return theta_series(L, N, coset=coset)


def eta_quotient_untwisted(n, N):
    """eta(q)^n / eta(q^2)^n, known for exponents below N - n/24."""
    R = Fraction(N) + 1
    return _check_prec(eta(1, R) ** n / eta(2, R) ** n, n, N)


def ch_VL(L, N=DEFAULT_PRECISION, theta=None):
    """Character of V_L: Theta_L / eta^n, conformal weights below N."""
    n = L.rank
    th = theta if theta is not None else _lattice_theta(L, N)
    return _check_prec(th / eta(1, N) ** n, n, N)


def _pm_part(L, N, sign, theta=None):
    n = L.rank
    a = ch_VL(L, N, theta)
    b = eta_quotient_untwisted(n, N)
    return (a + b if sign > 0 else a - b).divexact(2)


def ch_VLplus(L, N=DEFAULT_PRECISION, theta=None):
    return _pm_part(L, N, 1, theta)


def ch_VLminus(L, N=DEFAULT_PRECISION, theta=None):
    return _pm_part(L, N, -1, theta)


def ch_untwisted_pm(L, coset, N=DEFAULT_PRECISION, theta=None):
    """Half of Theta_{lambda+L} / eta^n; shared by both signs."""
    if L.contains(coset):
        raise ValueError("coset representative lies in L; use ch_VLplus/ch_VLminus")
    n = L.rank
    th = theta if theta is not None else _lattice_theta(L, N, coset)
    return _check_prec(th / eta(1, N) ** n, n, N).divexact(2)


def ch_twisted_pm(n, dimT, sign, N=DEFAULT_PRECISION):
    """Twisted-sector character with the given dimension of T and sign."""
    if dimT < 1:
        raise ValueError("dimT must be positive")
    R = 2 * Fraction(N) + 2
    a = eta(1, R) ** n / eta(Fraction(1, 2), R) ** n
    b = eta(2, R) ** n * eta(Fraction(1, 2), R) ** n / eta(1, R) ** (2 * n)
    s = a + b if sign > 0 else a - b
    s = _check_prec(s, n, N)
    s = s.scale(dimT)
    return s.divexact(2)


def weight_coefficient(series, n, h):
    """Coefficient of conformal weight h in a rank-n character."""
    return series.coefficient(Fraction(h) - Fraction(n, 24))
