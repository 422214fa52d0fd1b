"""Numeric subspace geometry: principal angles and pair distances.

The principal angles between two row spans are computed from orthonormal
bases: rows are orthonormalized by SVD, and the angles are the arccosines
of the singular values of Q_A Q_B^H.  This is the basis-invariant
definition; it never assumes the generator rows themselves are orthogonal
(appended-column constructions produce planes whose rows are not).

Distances derived from the angles:
    lam     = m * prod(sin^2 theta_i)   (drives pair error at high SNR)
    chordal = sum(sin^2 theta_i)

Both are zero iff the subspaces share a direction, so positivity on every
pair is the numeric shadow of the exact nonintersection certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes_ff import EmptyCodeError
from .lift import CodeC, SubspaceC

_RANK_RTOL = 1e-10


class RankDeficientError(ValueError):
    """A generator matrix does not have full row rank numerically."""


def to_numeric(s) -> np.ndarray:
    """Complex matrix of a symbolic subspace (or pass arrays through)."""
    if isinstance(s, SubspaceC):
        return s.numeric()
    return np.asarray(s, dtype=complex)


@dataclass
class AngleReport:
    """Principal angles of one pair plus the derived distances."""

    nu: int
    thetas: np.ndarray  # radians, ascending, length nu
    lam: float
    chordal: float


def _orthonormal_rows(mat: np.ndarray) -> np.ndarray:
    if mat.ndim != 2 or mat.shape[0] > mat.shape[1]:
        raise ValueError("expected a t x m generator with t <= m")
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    if s[0] == 0 or s[-1] <= _RANK_RTOL * s[0]:
        raise RankDeficientError(
            f"row rank below {mat.shape[0]} (singular values {s})")
    return vh


def principal_angles(a, b) -> AngleReport:
    """Angles between two row spans; generators need full row rank."""
    ma = to_numeric(a)
    mb = to_numeric(b)
    if ma.shape[1] != mb.shape[1]:
        raise ValueError("ambient dimensions differ")
    qa = _orthonormal_rows(ma)
    qb = _orthonormal_rows(mb)
    sv = np.linalg.svd(qa @ qb.conj().T, compute_uv=False)
    cos = np.clip(sv, 0.0, 1.0)
    thetas = np.arccos(cos)  # singular values descend, so angles ascend
    sin2 = 1.0 - cos * cos
    m = ma.shape[1]
    return AngleReport(
        nu=len(thetas),
        thetas=thetas,
        lam=float(m * np.prod(sin2)),
        chordal=float(np.sum(sin2)),
    )


@dataclass
class PairGeometry:
    """Distances of one pair inside a family."""

    i: int
    j: int
    nu: int
    min_theta: float
    lam: float
    chordal: float


@dataclass
class MinDistanceReport:
    """Distance distribution over all pairs of a family."""

    planes: int
    pairs: int
    no_pairs: bool
    lam_min: float | None
    lam_mean: float | None
    lam_max: float | None
    chordal_min: float | None
    chordal_mean: float | None
    chordal_max: float | None
    argmin_lam: tuple[int, int] | None
    argmin_chordal: tuple[int, int] | None

    def summary(self) -> str:
        if self.no_pairs:
            return f"planes={self.planes} no pairs"
        return (f"planes={self.planes} pairs={self.pairs} "
                f"lambda[min={self.lam_min:.6g} mean={self.lam_mean:.6g} "
                f"max={self.lam_max:.6g} argmin={self.argmin_lam}] "
                f"chordal[min={self.chordal_min:.6g} "
                f"mean={self.chordal_mean:.6g} max={self.chordal_max:.6g} "
                f"argmin={self.argmin_chordal}]")


def pair_table(code: CodeC) -> list[PairGeometry]:
    """Per-pair geometry for a whole family, pairs in (i, j) order."""
    mats = [p.numeric() for p in code.planes]
    out = []
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            rep = principal_angles(mats[i], mats[j])
            out.append(PairGeometry(
                i=i, j=j, nu=rep.nu,
                min_theta=float(rep.thetas[0]),
                lam=rep.lam, chordal=rep.chordal))
    return out


def min_distance(code: CodeC) -> MinDistanceReport:
    """Minimum and spread of the pair distances across a family."""
    if len(code.planes) == 0:
        raise EmptyCodeError("family contains no subspaces")
    table = pair_table(code)
    if not table:
        return MinDistanceReport(
            planes=len(code.planes), pairs=0, no_pairs=True,
            lam_min=None, lam_mean=None, lam_max=None,
            chordal_min=None, chordal_mean=None, chordal_max=None,
            argmin_lam=None, argmin_chordal=None)
    lams = np.array([p.lam for p in table])
    chords = np.array([p.chordal for p in table])
    alam = table[int(np.argmin(lams))]
    achord = table[int(np.argmin(chords))]
    return MinDistanceReport(
        planes=len(code.planes),
        pairs=len(table),
        no_pairs=False,
        lam_min=float(lams.min()),
        lam_mean=float(lams.mean()),
        lam_max=float(lams.max()),
        chordal_min=float(chords.min()),
        chordal_mean=float(chords.mean()),
        chordal_max=float(chords.max()),
        argmin_lam=(alam.i, alam.j),
        argmin_chordal=(achord.i, achord.j),
    )


def code_rate(count: int, m: int) -> float:
    """Bits per channel use: log2 of the family size, per dimension."""
    if count < 1 or m < 1:
        raise ValueError("need a nonempty family and positive dimension")
    return float(np.log2(count) / m)
