"""Exact arithmetic over rings of cyclotomic integers Z[zeta_n].

Elements are integer coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  All ring operations are exact; nothing here touches
floating point except the explicit complex embedding.

Matrix rank and determinant use fraction-free (Bareiss) elimination.
The division in each Bareiss step is exact by construction; it is
performed by multiplying with a precomputed scaled inverse of the
previous pivot and dividing coefficients by a rational integer, with
every division checked for zero remainder.

Valuations: val2 is the ordinary 2-adic valuation on rational integers.
val_one_minus_root is the (1 - zeta)-adic valuation, defined only when
n is a power of two, where 1 - zeta generates the unique prime above 2.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


class RingMismatchError(ValueError):
    """Operands belong to different cyclotomic rings."""


class NotSquareError(ValueError):
    """Determinant of a non-square (or empty) matrix."""


class NotPowerOfTwoRingError(ValueError):
    """(1 - zeta)-adic valuation requested outside Z[zeta_(2^r)]."""


class ExactnessError(AssertionError):
    """An exact division left a remainder; indicates corrupted input."""


# ---------------------------------------------------------------------------
# Cyclotomic polynomials, integer coefficients low-order first.


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide num by monic den over Z; remainder must vanish."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise ExactnessError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low-order first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        poly = _int_poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


# ---------------------------------------------------------------------------


class CycRing:
    """Z[zeta_n] in the power basis modulo the n-th cyclotomic polynomial."""

    _cache: dict[int, "CycRing"] = {}

    def __new__(cls, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        inst = cls._cache.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(n)
            cls._cache[n] = inst
        return inst

    def _init(self, n: int) -> None:
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        # Reduction rows: x^D as a degree < phi vector, for every D that a
        # product of two reduced elements or a root power can produce.
        max_deg = max(2 * phi - 2, n - 1, phi)
        red: dict[int, tuple[int, ...]] = {}
        cur = [-c for c in self.poly[:phi]]
        red[phi] = tuple(cur)
        for deg in range(phi + 1, max_deg + 1):
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                base = red[phi]
                cur = [a + carry * b for a, b in zip(cur, base)]
            red[deg] = tuple(cur)
        self._red = red
        self.zero = CycInt(self, (0,) * phi)
        self.one = CycInt(self, (1,) + (0,) * (phi - 1))

    def from_int(self, c: int) -> "CycInt":
        return CycInt(self, (c,) + (0,) * (self.phi - 1))

    def element(self, coeffs) -> "CycInt":
        coeffs = list(coeffs)
        if len(coeffs) > self.phi:
            raise ValueError("coefficient vector longer than ring degree")
        coeffs += [0] * (self.phi - len(coeffs))
        return CycInt(self, tuple(int(c) for c in coeffs))

    def root(self, e: int = 1) -> "CycInt":
        """zeta^e as a ring element."""
        e %= self.n
        if e < self.phi:
            coeffs = [0] * self.phi
            coeffs[e] = 1
            return CycInt(self, tuple(coeffs))
        return CycInt(self, self._red[e])

    def __eq__(self, other):
        return isinstance(other, CycRing) and other.n == self.n

    def __hash__(self):
        return hash(("CycRing", self.n))

    def __reduce__(self):
        return (CycRing, (self.n,))

    def __repr__(self):
        return f"CycRing(n={self.n})"


class CycInt:
    """One element of a CycRing: an immutable integer coefficient vector."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(
                    f"mixing Z[zeta_{self.ring.n}] with Z[zeta_{other.ring.n}]")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.ring,
                      tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycInt(self.ring,
                      tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycInt(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.ring, tuple(other * a for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        phi = ring.phi
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        red = ring._red
        for deg in range(2 * phi - 2, phi - 1, -1):
            c = prod[deg]
            if c:
                row = red[deg]
                for t in range(phi):
                    prod[t] += c * row[t]
        return CycInt(ring, tuple(prod[:phi]))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.n, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_complex(self) -> complex:
        n = self.ring.n
        return sum(c * cmath.exp(2j * cmath.pi * i / n)
                   for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        return f"CycInt(n={self.ring.n}, coeffs={list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Scaled inverses and exact division.
#
# For nonzero b the extended Euclidean algorithm over Q[x] against the
# cyclotomic polynomial produces s with s*b = 1 in Q(zeta); clearing
# denominators gives an integral U and a positive integer D with
# U*b = D.  Division by b is then multiplication by U followed by a
# checked division of every coefficient by D.


def _fpoly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    inv_lead = 1 / b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = a[-1] * inv_lead
        quot[shift] = factor
        for i, bc in enumerate(b):
            a[shift + i] -= factor * bc
        _fpoly_trim(a)
    return quot, a


def _fpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _fpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _fpoly_trim([x - y for x, y in zip(a, b)])


@lru_cache(maxsize=8192)
def scaled_inverse(b: CycInt) -> tuple[CycInt, int]:
    """(U, D) with U*b = D, U integral, D a positive integer.

    Cached: elimination pivots repeat across pairwise rank checks.
    """
    if b.is_zero():
        raise ZeroDivisionError("scaled inverse of zero")
    ring = b.ring
    r0 = [Fraction(c) for c in ring.poly]
    r1 = _fpoly_trim([Fraction(c) for c in b.coeffs])
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while r1:
        q, r = _fpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
    # r0 is the gcd; the cyclotomic polynomial is irreducible over Q,
    # so for nonzero b the gcd is a nonzero constant.
    if len(r0) != 1:
        raise ExactnessError("gcd with the cyclotomic polynomial not constant")
    s = [c / r0[0] for c in s0]
    denom = math.lcm(*(c.denominator for c in s)) if s else 1
    u = ring.element([int(c * denom) for c in s] + [0] * (ring.phi - len(s)))
    return u, denom


def div_by_scaled(x: CycInt, u: CycInt, d: int) -> CycInt:
    """x * u / d with a zero-remainder check on every coefficient."""
    y = x * u
    out = []
    for c in y.coeffs:
        q, r = divmod(c, d)
        if r:
            raise ExactnessError("inexact division in cyclotomic ring")
        out.append(q)
    return CycInt(x.ring, tuple(out))


def exact_div(a: CycInt, b: CycInt) -> CycInt:
    """a / b, raising ExactnessError when b does not divide a."""
    u, d = scaled_inverse(b)
    return div_by_scaled(a, u, d)


# ---------------------------------------------------------------------------
# Fraction-free elimination.


def _common_ring(rows: list[list[CycInt]]) -> CycRing:
    ring = None
    for row in rows:
        for x in row:
            if ring is None:
                ring = x.ring
            elif x.ring != ring:
                raise RingMismatchError("matrix entries from different rings")
    if ring is None:
        raise ValueError("empty matrix has no ring")
    return ring


def cyc_rank(rows: list[list[CycInt]]) -> int:
    """Exact rank over the fraction field, by Bareiss elimination."""
    if not rows or not rows[0]:
        return 0
    _common_ring(rows)
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    if any(len(r) != nc for r in m):
        raise ValueError("ragged rows")
    prev_scaled = None  # (U, D) for the previous pivot, None means pivot 1
    r = c = 0
    while r < nr and c < nc:
        piv = next(((i, j) for j in range(c, nc) for i in range(r, nr)
                    if not m[i][j].is_zero()), None)
        if piv is None:
            break
        pi, pj = piv
        if pi != r:
            m[r], m[pi] = m[pi], m[r]
        if pj != c:
            for row in m:
                row[c], row[pj] = row[pj], row[c]
        pivot = m[r][c]
        for i in range(r + 1, nr):
            head = m[i][c]
            for j in range(c + 1, nc):
                num = pivot * m[i][j] - head * m[r][j]
                if prev_scaled is not None:
                    num = div_by_scaled(num, *prev_scaled)
                m[i][j] = num
            m[i][c] = pivot.ring.zero
        prev_scaled = scaled_inverse(pivot)
        r += 1
        c += 1
    return r


def cyc_det(rows: list[list[CycInt]]) -> CycInt:
    """Exact determinant by Bareiss elimination with row pivoting."""
    if not rows:
        raise NotSquareError("determinant of an empty matrix")
    ring = _common_ring(rows)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquareError(f"matrix is {len(rows)}x{len(rows[0])}")
    m = [list(r) for r in rows]
    sign = 1
    prev_scaled = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            return ring.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            head = m[i][k]
            for j in range(k + 1, n):
                num = pivot * m[i][j] - head * m[k][j]
                if prev_scaled is not None:
                    num = div_by_scaled(num, *prev_scaled)
                m[i][j] = num
        prev_scaled = scaled_inverse(pivot)
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


# ---------------------------------------------------------------------------
# Canonical reduced row-echelon form over the fraction field Q(zeta_n).
# Entries of the result are coefficient tuples of Fractions; equal row
# spaces produce identical results, which makes the form a dedup key.


def _fvec_mul(ring: CycRing, a, b):
    phi = ring.phi
    prod = [Fraction(0)] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    red = ring._red
    for deg in range(2 * phi - 2, phi - 1, -1):
        c = prod[deg]
        if c:
            row = red[deg]
            for t in range(phi):
                prod[t] += c * row[t]
    return tuple(prod[:phi])


def _fvec_inv(ring: CycRing, a):
    lcm = math.lcm(*(c.denominator for c in a))
    g = CycInt(ring, tuple(int(c * lcm) for c in a))
    u, d = scaled_inverse(g)
    return tuple(Fraction(lcm * c, d) for c in u.coeffs)


def canonical_rref(rows: list[list[CycInt]]):
    """RREF over Q(zeta_n) with unit pivots; zero rows dropped.

    Two generator matrices span the same row space exactly when their
    canonical forms are equal, so the returned nested tuple serves as an
    exact, hashable identity for the subspace.
    """
    ring = _common_ring(rows)
    work = [[tuple(Fraction(c) for c in x.coeffs) for x in row]
            for row in rows]
    nc = len(work[0])
    if any(len(r) != nc for r in work):
        raise ValueError("ragged rows")

    def vsub(x, y):
        return tuple(a - b for a, b in zip(x, y))

    def vscale(s, x):
        return _fvec_mul(ring, s, x)

    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(work))
                    if any(work[i][c])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = _fvec_inv(ring, work[r][c])
        work[r] = [vscale(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and any(work[i][c]):
                f = work[i][c]
                work[i] = [vsub(x, vscale(f, y))
                           for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])


# ---------------------------------------------------------------------------
# Valuations.


def val2(k: int):
    """2-adic valuation of a rational integer; val2(0) is +infinity."""
    if k == 0:
        return math.inf
    k = abs(k)
    v = 0
    while k % 2 == 0:
        k //= 2
        v += 1
    return v


def val_one_minus_root(x: CycInt):
    """(1 - zeta)-adic valuation in Z[zeta_n] for n a power of two.

    Computed by repeated exact trial division, which terminates because
    each successful division lowers the valuation by one.
    """
    ring = x.ring
    n = ring.n
    if n < 2 or n & (n - 1):
        raise NotPowerOfTwoRingError(
            f"1 - zeta generates a prime above 2 only for n a power of two, "
            f"got n={n}")
    if x.is_zero():
        return math.inf
    om = ring.one - ring.root(1)
    u, d = scaled_inverse(om)
    v = 0
    while True:
        try:
            x = div_by_scaled(x, u, d)
        except ExactnessError:
            return v
        v += 1
