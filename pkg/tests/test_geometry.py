import math
import random

import numpy as np
import pytest

from skewcodes.codes_ff import EmptyCodeError, spread_code
from skewcodes.codes_psk import psk_code
from skewcodes.geometry import (
    RankDeficientError,
    code_rate,
    min_distance,
    pair_table,
    principal_angles,
    to_numeric,
)
from skewcodes.gf import field_default
from skewcodes.lift import SubspaceC, lift_code


def oracle_angles(a, b):
    """Independent route: eigenvalues of the product of projectors."""
    qa = np.linalg.svd(a, full_matrices=False)[2]
    qb = np.linalg.svd(b, full_matrices=False)[2]
    pa = qa.conj().T @ qa
    pb = qb.conj().T @ qb
    ev = np.linalg.eigvals(pa @ pb).real
    ev = np.sort(ev)[::-1][:min(a.shape[0], b.shape[0])]
    cos2 = np.clip(ev, 0.0, 1.0)
    return np.arccos(np.sqrt(cos2))  # cos descending -> angles ascending


def random_plane(rng, m, t=2):
    while True:
        mat = np.array([[complex(rng.gauss(0, 1), rng.gauss(0, 1))
                         for _ in range(m)] for _ in range(t)])
        if np.linalg.matrix_rank(mat) == t:
            return mat


class TestToNumeric:
    def test_unit_roots(self):
        s = SubspaceC(8, ((0, 1), (2, None)))
        m = to_numeric(s)
        assert m[0, 0] == pytest.approx(1)
        assert m[0, 1] == pytest.approx((1 + 1j) * math.sqrt(2) / 2)
        assert m[1, 0] == pytest.approx(1j)
        assert m[1, 1] == 0

    def test_array_passthrough(self):
        arr = [[1, 0], [0, 1]]
        assert to_numeric(arr).dtype == complex


class TestPrincipalAngles:
    def test_identical_planes(self):
        a = np.array([[1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
        rep = principal_angles(a, a)
        assert rep.nu == 2
        assert np.allclose(rep.thetas, 0)
        assert rep.lam == pytest.approx(0)
        assert rep.chordal == pytest.approx(0)

    def test_orthogonal_complements(self):
        a = np.array([[1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
        b = np.array([[0, 0, 1, 0], [0, 0, 0, 1]], dtype=complex)
        rep = principal_angles(a, b)
        assert np.allclose(rep.thetas, np.pi / 2)
        assert rep.lam == pytest.approx(4)
        assert rep.chordal == pytest.approx(2)

    def test_matches_projector_oracle(self):
        rng = random.Random(9)
        for _ in range(40):
            m = rng.choice([4, 5, 6])
            a = random_plane(rng, m)
            b = random_plane(rng, m)
            rep = principal_angles(a, b)
            assert np.allclose(rep.thetas, oracle_angles(a, b), atol=1e-7)

    def test_psk_pair_against_raw_singular_values(self):
        code = psk_code(1, 4)
        a, b = code.planes[0].numeric(), code.planes[1].numeric()
        rep = principal_angles(a, b)
        thetas = oracle_angles(a, b)
        lam = 4 * np.prod(np.sin(thetas) ** 2)
        chordal = np.sum(np.sin(thetas) ** 2)
        assert rep.lam == pytest.approx(float(lam), abs=1e-9)
        assert rep.chordal == pytest.approx(float(chordal), abs=1e-9)

    def test_symmetry(self):
        rng = random.Random(10)
        for _ in range(25):
            a = random_plane(rng, 5)
            b = random_plane(rng, 5)
            r1 = principal_angles(a, b)
            r2 = principal_angles(b, a)
            assert np.allclose(r1.thetas, r2.thetas, atol=1e-9)
            assert r1.lam == pytest.approx(r2.lam, abs=1e-9)

    def test_invariance_under_row_scaling_and_mixing(self):
        rng = random.Random(11)
        for _ in range(25):
            a = random_plane(rng, 4)
            b = random_plane(rng, 4)
            base = principal_angles(a, b)
            phase = math.e ** (2j * math.pi * rng.random())
            scaled = a.copy()
            scaled[0] *= phase
            while True:
                t = np.array([[rng.gauss(0, 1) + 1j * rng.gauss(0, 1)
                               for _ in range(2)] for _ in range(2)])
                if abs(np.linalg.det(t)) > 0.1:
                    break
            mixed = t @ b
            rep = principal_angles(scaled, mixed)
            assert np.allclose(rep.thetas, base.thetas, atol=1e-9)
            assert rep.lam == pytest.approx(base.lam, abs=1e-9)
            assert rep.chordal == pytest.approx(base.chordal, abs=1e-9)

    def test_shared_row_gives_zero(self):
        rng = random.Random(12)
        for _ in range(10):
            a = random_plane(rng, 4)
            b = np.vstack([a[0], random_plane(rng, 4)[1]])
            if np.linalg.matrix_rank(b) < 2:
                continue
            rep = principal_angles(a, b)
            assert rep.lam < 1e-9
            assert rep.thetas[0] < 1e-6

    def test_chordal_bounded_by_nu(self):
        rng = random.Random(13)
        for _ in range(30):
            a = random_plane(rng, 6)
            b = random_plane(rng, 6)
            rep = principal_angles(a, b)
            assert rep.chordal <= rep.nu + 1e-9

    def test_rank_deficient_rejected(self):
        a = np.array([[1, 1, 0, 0], [2, 2, 0, 0]], dtype=complex)
        b = np.array([[1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
        with pytest.raises(RankDeficientError):
            principal_angles(a, b)

    def test_dimension_mismatch(self):
        a = np.eye(2, 4, dtype=complex)
        b = np.eye(2, 6, dtype=complex)
        with pytest.raises(ValueError):
            principal_angles(a, b)


class TestMinDistance:
    def test_psk_min_positive(self):
        rep = min_distance(psk_code(1, 4))
        assert not rep.no_pairs
        assert rep.pairs == 6
        assert rep.lam_min > 0
        assert rep.chordal_min > 0
        assert rep.lam_min <= rep.lam_mean <= rep.lam_max

    def test_lifted_example_min_positive(self):
        code = lift_code(spread_code(field_default(2, 1), 4, 2))
        rep = min_distance(code)
        assert rep.pairs == 10
        assert rep.lam_min > 0
        i, j = rep.argmin_lam
        assert 0 <= i < j < 5

    def test_single_plane(self):
        rep = min_distance(psk_code(1, 2))
        assert rep.no_pairs
        assert rep.pairs == 0
        assert rep.lam_min is None
        assert "no pairs" in rep.summary()

    def test_pair_table_order(self):
        table = pair_table(psk_code(1, 4))
        assert [(p.i, p.j) for p in table] == \
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_empty_guarded(self):
        code = psk_code(1, 4)
        code.planes = []
        with pytest.raises(EmptyCodeError):
            min_distance(code)


class TestRate:
    def test_five_planes_m4(self):
        assert code_rate(5, 4) == pytest.approx(math.log2(5) / 4)
        assert code_rate(5, 4) == pytest.approx(0.5805, abs=5e-5)

    def test_sixteen_planes_m4(self):
        assert code_rate(16, 4) == 1.0

    def test_single_plane_rate_zero(self):
        assert code_rate(1, 4) == 0.0

    def test_invalid(self):
        with pytest.raises(ValueError):
            code_rate(0, 4)
