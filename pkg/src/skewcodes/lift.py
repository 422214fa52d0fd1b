"""Lifting finite-field families to complex families of the same shape.

The lift sends 0 to 0 and the field element alpha^j to the root of unity
zeta^j, where zeta = exp(2*pi*i/(q-1)).  A family that is pairwise
nonintersecting over GF(q) stays pairwise nonintersecting over the complex
numbers after lifting.  Nothing here takes that on faith: the lifted
family is certified by exact rank computations over Z[zeta], and lifting
refuses input that has not passed the finite-field check.

Complex subspaces store their entries symbolically: None for zero, or an
integer exponent e for zeta^e.  This keeps verification exact and lets the
same types carry the phase-shift constructions, whose entries are
2^r-th roots of unity.
"""

from __future__ import annotations

import cmath
import time
from dataclasses import dataclass, field as dc_field
from multiprocessing import Pool

import numpy as np

from .codes_ff import CodeFF, SubspaceFF, VerificationReport, verify_code
from .cyclotomic import CycInt, CycRing, cyc_rank


class UnverifiedInputError(ValueError):
    """Lifting requires a family that passed exact verification."""


Symbol = int | None  # None is zero; an int e is zeta^e


@dataclass(frozen=True)
class SubspaceC:
    """A t-dim subspace of C^m with entries 0 or powers of zeta_n."""

    n: int
    rows: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("root order must be positive")
        if not self.rows:
            raise ValueError("subspace needs at least one generator row")
        widths = {len(r) for r in self.rows}
        if len(widths) != 1:
            raise ValueError("ragged generator matrix")
        for r in self.rows:
            for x in r:
                if x is not None and not 0 <= x < self.n:
                    raise ValueError(
                        f"exponent {x} outside [0, {self.n})")

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def ring(self) -> CycRing:
        return CycRing(self.n)

    def cyc_rows(self) -> list[list[CycInt]]:
        ring = self.ring()
        zero = ring.zero
        return [[zero if x is None else ring.root(x) for x in row]
                for row in self.rows]

    def numeric(self) -> np.ndarray:
        """The generator matrix as a complex floating array."""
        out = np.zeros((self.t, self.m), dtype=complex)
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x is not None:
                    out[i, j] = cmath.exp(2j * cmath.pi * x / self.n)
        return out


@dataclass
class CodeC:
    """A family of same-shape complex subspaces over one root order."""

    n: int
    m: int
    t: int
    planes: list[SubspaceC]
    provenance: dict = dc_field(default_factory=dict)
    certificate: dict | None = None

    def __post_init__(self):
        if not self.planes:
            raise ValueError("family contains no subspaces")
        for s in self.planes:
            if s.n != self.n or s.t != self.t or s.m != self.m:
                raise ValueError("subspace shape or root order mismatch")

    def __len__(self) -> int:
        return len(self.planes)


def lift_subspace(s: SubspaceFF) -> SubspaceC:
    """Entrywise lift: 0 -> 0, alpha^j -> zeta_(q-1)^j."""
    f = s.field
    n = max(f.q - 1, 1)
    rows = tuple(
        tuple(None if x == 0 else f.log[x] for x in row) for row in s.rows)
    return SubspaceC(n, rows)


def lift_code(code: CodeFF,
              report: VerificationReport | None = None) -> CodeC:
    """Lift a whole family, insisting on a clean verification first.

    Pass the report from verify_code to avoid re-checking; without one the
    finite-field verification is run here.  A failed or mismatched report
    raises UnverifiedInputError.
    """
    if report is None:
        report = verify_code(code)
    if report.method != "exact-ff" or report.planes != len(code.planes):
        raise UnverifiedInputError("report does not match this family")
    if not report.ok:
        raise UnverifiedInputError(
            "family failed finite-field verification; refusing to lift")
    planes = [lift_subspace(s) for s in code.planes]
    prov = dict(code.provenance)
    prov["lifted_from_q"] = code.field.q
    prov["construction"] = prov.get("construction", "unknown") + "+lift"
    return CodeC(max(code.field.q - 1, 1), code.m, code.t, planes, prov)


def pair_nonintersecting_c(a: SubspaceC, b: SubspaceC) -> bool:
    """Exact: the stacked generators have full rank over Q(zeta_n)."""
    return cyc_rank(a.cyc_rows() + b.cyc_rows()) == a.t + b.t


_WORKER_CODE: CodeC | None = None


def _init_worker(code: CodeC) -> None:
    global _WORKER_CODE
    _WORKER_CODE = code


def _check_chunk(chunk: list[tuple[int, int]]) -> list[tuple[int, int]]:
    code = _WORKER_CODE
    bad = []
    for i, j in chunk:
        if not pair_nonintersecting_c(code.planes[i], code.planes[j]):
            bad.append((i, j))
    return bad


def verify_lifted(code: CodeC, jobs: int | None = None) -> VerificationReport:
    """Exact certification of a complex family over Z[zeta_n].

    Checks every generator matrix for full rank and every pair for
    nonintersection; records the outcome on the code as a certificate.
    """
    start = time.monotonic()
    n = len(code.planes)
    rank_failures = [i for i, s in enumerate(code.planes)
                     if cyc_rank(s.cyc_rows()) != code.t]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if jobs and jobs > 1 and len(pairs) > 256:
        chunks = [pairs[c::jobs * 4] for c in range(jobs * 4)]
        with Pool(jobs, initializer=_init_worker, initargs=(code,)) as pool:
            results = pool.map(_check_chunk, [c for c in chunks if c])
        pair_failures = sorted(p for r in results for p in r)
    else:
        _init_worker(code)
        pair_failures = _check_chunk(pairs)
    report = VerificationReport(
        ok=not rank_failures and not pair_failures,
        method="exact-cyclotomic",
        planes=n,
        pairs_checked=len(pairs),
        rank_failures=rank_failures,
        pair_failures=pair_failures,
        seconds=time.monotonic() - start,
    )
    code.certificate = {
        "method": report.method,
        "ok": report.ok,
        "planes": report.planes,
        "pairs_checked": report.pairs_checked,
    }
    return report
