"""Families of pairwise nonintersecting subspaces over a finite field.

A family is a list of t-dimensional subspaces of GF(q)^m, each given by a
full-rank t x m generator matrix, such that any two subspaces meet only in
the zero vector.  Equivalently the 2t x m stack of any two generator
matrices has rank 2t, which is what verification checks, exactly.

The construction partitions the nonzero elements of GF(q^m) into
multiplicative cosets of GF(q^t)*.  Each coset, together with zero, is a
t-dimensional GF(q)-subspace; distinct cosets share only the zero element.
Writing the elements out in coordinates over GF(q) yields
N = (q^m - 1)/(q^t - 1) pairwise nonintersecting subspaces, which meets
the upper bound on the family size, so the family is as large as possible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from multiprocessing import Pool

from .gf import Field, FieldTower, MatrixFF, rank, stack


class DivisibilityError(ValueError):
    """Subspace dimension does not divide the ambient dimension."""


class EmptyCodeError(ValueError):
    """A family must contain at least one subspace."""


@dataclass(frozen=True)
class SubspaceFF:
    """A t-dimensional subspace of GF(q)^m as a t x m generator matrix."""

    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("subspace needs at least one generator row")
        widths = {len(r) for r in self.rows}
        if len(widths) != 1:
            raise ValueError("ragged generator matrix")
        q = self.field.q
        for r in self.rows:
            for x in r:
                if not 0 <= x < q:
                    raise ValueError(f"entry {x} outside field of size {q}")

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def matrix(self) -> MatrixFF:
        return MatrixFF(self.field, [list(r) for r in self.rows])


@dataclass
class CodeFF:
    """A family of same-shape subspaces of GF(q)^m with shared field."""

    field: Field
    m: int
    t: int
    planes: list[SubspaceFF]
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.planes:
            raise EmptyCodeError("family contains no subspaces")
        for s in self.planes:
            if s.field != self.field or s.t != self.t or s.m != self.m:
                raise ValueError("subspace shape or field mismatch")

    def __len__(self) -> int:
        return len(self.planes)


@dataclass
class VerificationReport:
    """Outcome of an exact pairwise nonintersection check."""

    ok: bool
    method: str
    planes: int
    pairs_checked: int
    rank_failures: list[int]
    pair_failures: list[tuple[int, int]]
    seconds: float

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return (f"{verdict} method={self.method} planes={self.planes} "
                f"pairs={self.pairs_checked} "
                f"rank_failures={len(self.rank_failures)} "
                f"pair_failures={len(self.pair_failures)} "
                f"time={self.seconds:.2f}s")


def max_family_size(q: int, m: int, t: int) -> int:
    """Largest possible number of pairwise nonintersecting t-spaces in q^m.

    Defined when t divides m; the bound (q^m - 1)/(q^t - 1) counts the
    cosets of GF(q^t)* and is met by the coset construction.
    """
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if t < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if m % t:
        raise DivisibilityError(f"t={t} does not divide m={m}")
    return (q ** m - 1) // (q ** t - 1)


def spread_code(field_q: Field, m: int, t: int,
                top: Field | None = None) -> CodeFF:
    """The coset construction: a maximal family of t-spaces in GF(q)^m.

    Needs t | m.  Builds GF(q^m) as a tower over GF(q); plane j collects
    the coordinates of gamma^j * beta^i for i < t, where gamma generates
    GF(q^m)* and beta = gamma^N generates GF(q^t)*.  Pass top to pin the
    representation of GF(q^m) to a particular defining polynomial.
    """
    if t < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if m % t:
        raise DivisibilityError(f"t={t} does not divide m={m}")
    q = field_q.q
    count = (q ** m - 1) // (q ** t - 1)
    tower = FieldTower(field_q, m, top)
    top = tower.top
    gamma = top.alpha
    planes = []
    for j in range(count):
        rows = []
        for i in range(t):
            el = top.pow(gamma, j + i * count)
            rows.append(tuple(tower.coords(el)))
        planes.append(SubspaceFF(field_q, tuple(rows)))
    prov = {
        "construction": "coset-spread",
        "q": q,
        "p": field_q.p,
        "k": field_q.k,
        "base_poly": list(field_q.poly),
        "tower_poly": list(top.poly),
        "m": m,
        "t": t,
        "count": count,
    }
    return CodeFF(field_q, m, t, planes, prov)


def pair_nonintersecting(a: SubspaceFF, b: SubspaceFF) -> bool:
    """True when the two subspaces meet only in the zero vector."""
    return rank(stack(a.matrix(), b.matrix())) == a.t + b.t


_WORKER_CODE: CodeFF | None = None


def _init_worker(code: CodeFF) -> None:
    global _WORKER_CODE
    _WORKER_CODE = code


def _check_chunk(chunk: list[tuple[int, int]]) -> list[tuple[int, int]]:
    code = _WORKER_CODE
    bad = []
    for i, j in chunk:
        if not pair_nonintersecting(code.planes[i], code.planes[j]):
            bad.append((i, j))
    return bad


def verify_code(code: CodeFF, jobs: int | None = None) -> VerificationReport:
    """Exact full-rank and pairwise nonintersection check over GF(q).

    jobs > 1 spreads the pairwise checks over worker processes.
    """
    start = time.monotonic()
    n = len(code.planes)
    rank_failures = [i for i, s in enumerate(code.planes)
                     if rank(s.matrix()) != code.t]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if jobs and jobs > 1 and len(pairs) > 256:
        chunks = [pairs[c::jobs * 4] for c in range(jobs * 4)]
        with Pool(jobs, initializer=_init_worker, initargs=(code,)) as pool:
            results = pool.map(_check_chunk, [c for c in chunks if c])
        pair_failures = sorted(p for r in results for p in r)
    else:
        _init_worker(code)
        pair_failures = _check_chunk(pairs)
    ok = not rank_failures and not pair_failures
    return VerificationReport(
        ok=ok,
        method="exact-ff",
        planes=n,
        pairs_checked=len(pairs),
        rank_failures=rank_failures,
        pair_failures=pair_failures,
        seconds=time.monotonic() - start,
    )
