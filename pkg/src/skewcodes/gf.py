"""Exact arithmetic and linear algebra over GF(p^k).

Field elements are integers in [0, q), q = p^k.  The base-p digits of an
index are the coordinates of the element in the power basis
1, alpha, ..., alpha^(k-1), where alpha is the root of the defining
polynomial.  Index 0 is the zero element; for k > 1 the element alpha
itself has index p.

Multiplication, inversion and powers go through log/antilog tables for
alpha, so the defining polynomial must be primitive (alpha generates the
whole multiplicative group).  The constructor verifies irreducibility and
primitivity and builds the tables eagerly; all fields here are small.

Polynomial coefficient lists are low-order-first throughout: the list
[c0, c1, ..., ck] is c0 + c1*x + ... + ck*x^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# Fields larger than this are refused by Field.default; the antilog table
# is materialized in full, so the bound keeps construction at desk scale.
MAX_FIELD_SIZE = 2 ** 20


class NotPrimeError(ValueError):
    """Characteristic is not a prime number."""


class NotIrreducibleError(ValueError):
    """Defining polynomial factors over GF(p)."""


class NotPrimitiveError(ValueError):
    """Defining polynomial is irreducible but its root has order < q-1."""


class SizeLimitError(ValueError):
    """Requested field exceeds MAX_FIELD_SIZE."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def digits(value: int, p: int, k: int) -> list[int]:
    """Base-p digits of value, low-order first, padded to length k."""
    out = []
    for _ in range(k):
        out.append(value % p)
        value //= p
    return out


def undigits(ds: list[int], p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


# ---------------------------------------------------------------------------
# Polynomial arithmetic over GF(p), used only while validating a defining
# polynomial and building the tables.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b need not be monic."""
    a = [x % p for x in a]
    _poly_trim(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = (a[-1] * inv_lead) % p
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, mod, p)


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(poly) - 1
    if k == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    for deg in range(1, k // 2 + 1):
        for low in range(p ** deg):
            divisor = digits(low, p, deg) + [1]
            if not _poly_mod(list(poly), divisor, p):
                return False
    return True


def _is_primitive(poly: list[int], p: int) -> bool:
    """Root of an irreducible poly generates the multiplicative group.

    Checks x^((q-1)/l) != 1 mod poly for every prime l dividing q-1.
    """
    if poly[0] == 0:
        return False
    k = len(poly) - 1
    q = p ** k
    x = [0, 1]
    if _poly_powmod(x, q - 1, poly, p) != [1]:
        return False
    for ell in prime_factors(q - 1):
        if _poly_powmod(x, (q - 1) // ell, poly, p) == [1]:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """A concrete GF(p^k): defining polynomial plus log/antilog tables.

    Immutable after construction; safe to share between workers.
    """

    p: int
    k: int
    poly: tuple[int, ...]
    q: int = field(init=False, compare=False)
    antilog: tuple[int, ...] = field(init=False, compare=False, repr=False)
    log: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __init__(self, p: int, k: int, poly):
        if not is_prime(p):
            raise NotPrimeError(f"p={p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree k={k} must be >= 1")
        poly = tuple(c % p for c in poly)
        if len(poly) != k + 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree k")
        if not _is_irreducible(list(poly), p):
            raise NotIrreducibleError(f"{list(poly)} is reducible over GF({p})")
        if not _is_primitive(list(poly), p):
            raise NotPrimitiveError(
                f"{list(poly)} is irreducible but not primitive over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "q", p ** k)
        antilog, log = self._build_tables()
        object.__setattr__(self, "antilog", antilog)
        object.__setattr__(self, "log", log)

    def _build_tables(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        p, k, q = self.p, self.k, self.q
        antilog = []
        log = [0] * q
        if p == 2:
            # indices are bit vectors; multiplying by x is shift-and-reduce
            mask = undigits(list(self.poly), 2)  # includes the leading bit
            v = 1
            for j in range(q - 1):
                antilog.append(v)
                log[v] = j
                v <<= 1
                if v >> k:
                    v ^= mask
        elif k == 1:
            g = (-self.poly[0]) % p
            v = 1
            for j in range(q - 1):
                antilog.append(v)
                log[v] = j
                v = (v * g) % p
        else:
            # the generator is x itself; shift digits up and reduce once
            ds = digits(1, p, k)
            for j in range(q - 1):
                idx = undigits(ds, p)
                antilog.append(idx)
                log[idx] = j
                carry = ds[-1]
                ds = [0] + ds[:-1]
                if carry:
                    ds = [(a - carry * c) % p
                          for a, c in zip(ds, self.poly)]
        if len(set(antilog)) != q - 1:
            raise NotPrimitiveError("log table degenerate; root order < q-1")
        return tuple(antilog), tuple(log)

    @classmethod
    def default(cls, p: int, k: int) -> "Field":
        """The field with the smallest primitive polynomial.

        Candidates are scanned in increasing integer encoding
        sum(c_i * p^i), so the first primitive polynomial found is
        reproducible across platforms.
        """
        if not is_prime(p):
            raise NotPrimeError(f"p={p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree k={k} must be >= 1")
        if p ** k > MAX_FIELD_SIZE:
            raise SizeLimitError(f"{p}^{k} exceeds the {MAX_FIELD_SIZE} bound")
        for low in range(p ** k):
            poly = digits(low, p, k) + [1]
            if _is_irreducible(list(poly), p) and _is_primitive(poly, p):
                return cls(p, k, poly)
        raise NotPrimitiveError(f"no primitive polynomial found for GF({p}^{k})")

    # -- element arithmetic -------------------------------------------------

    @property
    def alpha(self) -> int:
        """Index of the generator (the root of the defining polynomial)."""
        return self.antilog[1] if self.q > 2 else self.antilog[0]

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = digits(a, self.p, self.k), digits(b, self.p, self.k)
        return undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        da = digits(a, self.p, self.k)
        return undigits([(-x) % self.p for x in da], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.antilog[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.antilog[(self.log[a] * e) % (self.q - 1)]

    def element_digits(self, a: int) -> list[int]:
        """Coordinates of a over GF(p) in the power basis of alpha."""
        return digits(a, self.p, self.k)

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, k={self.k}, poly={list(self.poly)})"


def field_new(p: int, k: int, poly) -> Field:
    return Field(p, k, poly)


def field_default(p: int, k: int) -> Field:
    return Field.default(p, k)


# ---------------------------------------------------------------------------
# Matrices over a field


@dataclass
class MatrixFF:
    """Row-major matrix of element indices over one field."""

    field: Field
    rows: list[list[int]]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged rows")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def copy_rows(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def stack(a: MatrixFF, b: MatrixFF) -> MatrixFF:
    if a.field != b.field or a.ncols != b.ncols:
        raise ValueError("stack requires matching field and width")
    return MatrixFF(a.field, a.copy_rows() + b.copy_rows())


def rank(mat: MatrixFF) -> int:
    """Exact rank by Gaussian elimination over the field."""
    f = mat.field
    rows = mat.copy_rows()
    nr, nc = len(rows), mat.ncols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = f.inv(rows[r][c])
        for i in range(r + 1, nr):
            if rows[i][c]:
                factor = f.mul(rows[i][c], inv_p)
                rows[i] = [f.sub(x, f.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nr:
            break
    return r


def _invert_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of a square matrix over GF(p) by Gauss-Jordan."""
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] % p), None)
        if piv is None:
            raise ValueError("singular matrix over GF(p)")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [(x * inv) % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class FieldTower:
    """GF(q^m) laid out as an m-dimensional space over its subfield GF(q).

    Builds the top field GF(p^(k*m)), locates a root h of the base field's
    defining polynomial inside it (so alpha -> h embeds GF(q)), and
    precomputes the change of basis that turns an element of the top field
    into its m coordinates over GF(q).
    """

    def __init__(self, base: Field, m: int, top: Field | None = None):
        if m < 1:
            raise ValueError("m must be >= 1")
        if top is None:
            top = Field.default(base.p, base.k * m)
        if top.p != base.p or top.k != base.k * m:
            raise ValueError("top field is not a degree-m extension of base")
        self.base = base
        self.top = top
        self.m = m
        self.h = self._find_root()
        self._minv = self._basis_inverse()

    def _find_root(self) -> int:
        base, top = self.base, self.top
        s = (top.q - 1) // (base.q - 1)
        for u in range(base.q - 1):
            cand = top.pow(top.alpha, s * u) if u else 1
            acc = 0
            for c in reversed(base.poly):
                acc = top.add(top.mul(acc, cand), c)
            if acc == 0:
                return cand
        raise ValueError("defining polynomial has no root in the top field")

    def _basis_inverse(self) -> list[list[int]]:
        base, top, m = self.base, self.top, self.m
        bigk = top.k
        cols = []
        for i in range(m):
            ai = top.pow(top.alpha, i) if i else 1
            for u in range(base.k):
                el = top.mul(top.pow(self.h, u), ai)
                cols.append(top.element_digits(el))
        mat = [[cols[c][r] for c in range(bigk)] for r in range(bigk)]
        return _invert_mod_p(mat, top.p)

    def embed(self, s: int) -> int:
        """Image in the top field of a base field element."""
        if s == 0:
            return 0
        return self.top.pow(self.h, self.base.log[s])

    def coords(self, x: int) -> list[int]:
        """Coordinates of a top field element over GF(q), length m."""
        ds = self.top.element_digits(x)
        p = self.top.p
        y = [sum(row[r] * ds[r] for r in range(len(ds))) % p
             for row in self._minv]
        k = self.base.k
        return [undigits(y[i * k:(i + 1) * k], p) for i in range(self.m)]


def rref(mat: MatrixFF) -> MatrixFF:
    """Reduced row-echelon form; canonical per row space."""
    f = mat.field
    rows = mat.copy_rows()
    nr, nc = len(rows), mat.ncols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = f.inv(rows[r][c])
        rows[r] = [f.mul(inv_p, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nr:
            break
    return MatrixFF(f, rows)
