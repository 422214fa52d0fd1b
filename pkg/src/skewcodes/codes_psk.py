"""Families of nonintersecting planes with phase-shift alphabets.

Entries are complex 2^r-th roots of unity mu^e; planes are 2-dimensional
subspaces of C^m for even m.  The recursive construction starts from the
single plane [[1, 1], [1, -1]] in C^2 and, for each plane with rows
v1, v2 in C^m, produces the 4^r planes of C^(m+2)

    [v1  mu^a      mu^b        ]
    [v2  mu^(a+b)  mu^(a+2b+1) ]      a, b in [0, 2^r),

giving 2^((m-2)r) planes in total.  Two extensions of the same plane are
nonintersecting exactly when the difference of their appended 2x2 blocks
has nonzero determinant, a criterion this module evaluates exactly in
Z[mu]; extensions of distinct nonintersecting planes stay nonintersecting
under any embedding.

The family size cannot exceed 2^((m-1)r - 1): a plane's generators have
2 * 2^r distinct scalar multiples by powers of mu, all alphabet vectors,
and these sets are disjoint across planes.  For r = 1 the construction
meets this bound.
"""

from __future__ import annotations

from .cyclotomic import CycInt, CycRing, cyc_det
from .lift import CodeC, SubspaceC


class OddLengthError(ValueError):
    """The recursive plane construction needs an even ambient dimension."""


def _check_r(r: int) -> int:
    if r < 1:
        raise ValueError("alphabet exponent r must be >= 1")
    return 2 ** r


def psk_family_bounds(r: int, m: int) -> tuple[int, int]:
    """(constructive lower bound, counting upper bound) on the family size."""
    _check_r(r)
    if m < 2 or m % 2:
        raise OddLengthError(f"ambient dimension m={m} must be even, >= 2")
    return 2 ** ((m - 2) * r), 2 ** ((m - 1) * r - 1)


def psk_base_plane(r: int) -> SubspaceC:
    """The single starting plane [[1, 1], [1, -1]] over 2^r-th roots."""
    n = _check_r(r)
    return SubspaceC(n, ((0, 0), (0, n // 2)))


def extend_plane(plane: SubspaceC, a: int, b: int) -> SubspaceC:
    """Embed a plane of C^m into C^(m+2) with appended block X(a, b)."""
    n = plane.n
    if plane.t != 2:
        raise ValueError("extension is defined for planes (two rows)")
    r0 = plane.rows[0] + (a % n, b % n)
    r1 = plane.rows[1] + ((a + b) % n, (a + 2 * b + 1) % n)
    return SubspaceC(n, (r0, r1))


def embedding_difference_det(r: int, ab: tuple[int, int],
                             cd: tuple[int, int]) -> CycInt:
    """det(X(c,d) - X(a,b)) in Z[mu], the two-embedding obstruction."""
    n = _check_r(r)
    ring = CycRing(n)
    a, b = ab
    c, d = cd

    def block(x, y):
        return [[ring.root(x), ring.root(y)],
                [ring.root(x + y), ring.root(x + 2 * y + 1)]]

    xa, yc = block(a, b), block(c, d)
    diff = [[yc[i][j] - xa[i][j] for j in range(2)] for i in range(2)]
    return cyc_det(diff)


def embedding_disjoint(r: int, ab: tuple[int, int],
                       cd: tuple[int, int]) -> bool:
    """True when the two extensions of one plane meet only at zero."""
    return not embedding_difference_det(r, ab, cd).is_zero()


def psk_code(r: int, m: int) -> CodeC:
    """The full recursive family: 2^((m-2)r) planes in C^m, m even.

    Plane order is deterministic: each round replaces the list
    [P0, P1, ...] by [extend(P0, 0, 0), extend(P0, 0, 1), ...] with (a, b)
    in row-major order.
    """
    n = _check_r(r)
    if m < 2 or m % 2:
        raise OddLengthError(f"ambient dimension m={m} must be even, >= 2")
    planes = [psk_base_plane(r)]
    for _ in range((m - 2) // 2):
        planes = [extend_plane(p, a, b)
                  for p in planes for a in range(n) for b in range(n)]
    prov = {
        "construction": "psk-recursive",
        "r": r,
        "alphabet": n,
        "m": m,
        "t": 2,
        "count": len(planes),
    }
    return CodeC(n, m, 2, planes, prov)
