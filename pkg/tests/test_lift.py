import numpy as np
import pytest

from skewcodes.codes_ff import CodeFF, SubspaceFF, spread_code, verify_code
from skewcodes.lift import (
    CodeC,
    SubspaceC,
    UnverifiedInputError,
    lift_code,
    lift_subspace,
    pair_nonintersecting_c,
    verify_lifted,
)
from skewcodes.gf import field_default

GF2 = field_default(2, 1)
GF4 = field_default(2, 2)
GF8 = field_default(2, 3)


class TestSymbolicSubspace:
    def test_numeric_entries(self):
        s = SubspaceC(4, ((0, 1), (2, None)))
        m = s.numeric()
        assert m[0, 0] == pytest.approx(1)
        assert m[0, 1] == pytest.approx(1j)
        assert m[1, 0] == pytest.approx(-1)
        assert m[1, 1] == 0

    def test_exponent_range_enforced(self):
        with pytest.raises(ValueError):
            SubspaceC(4, ((4, 0),))
        with pytest.raises(ValueError):
            SubspaceC(4, ((-1, 0),))

    def test_cyc_rows_match_numeric(self):
        s = SubspaceC(8, ((0, 3, None), (5, 1, 7)))
        sym = [[x.as_complex() for x in row] for row in s.cyc_rows()]
        assert np.allclose(np.array(sym), s.numeric())


class TestLift:
    def test_zero_and_powers(self):
        s = SubspaceFF(GF4, ((0, 1), (GF4.alpha, GF4.mul(GF4.alpha, GF4.alpha))))
        lifted = lift_subspace(s)
        assert lifted.n == 3
        assert lifted.rows == ((None, 0), (1, 2))

    def test_binary_lift_is_zero_one(self):
        code = spread_code(GF2, 4, 2)
        lifted = lift_code(code)
        assert lifted.n == 1
        for sc, sf in zip(lifted.planes, code.planes):
            assert sc.rows == tuple(
                tuple(None if x == 0 else 0 for x in row) for row in sf.rows)

    def test_lift_preserves_nonintersection(self):
        for f, m, t in ((GF2, 4, 2), (GF4, 4, 2), (GF2, 6, 3)):
            code = spread_code(f, m, t)
            lifted = lift_code(code)
            report = verify_lifted(lifted)
            assert report.ok, report.summary()
            assert report.method == "exact-cyclotomic"

    def test_lift_refuses_bad_family(self):
        a = SubspaceFF(GF2, ((1, 0, 0, 0), (0, 1, 0, 0)))
        b = SubspaceFF(GF2, ((1, 0, 0, 0), (0, 0, 1, 0)))
        with pytest.raises(UnverifiedInputError):
            lift_code(CodeFF(GF2, 4, 2, [a, b]))

    def test_lift_refuses_mismatched_report(self):
        code = spread_code(GF2, 4, 2)
        other = verify_code(spread_code(GF2, 6, 2))
        with pytest.raises(UnverifiedInputError):
            lift_code(code, other)

    def test_reuses_supplied_report(self):
        code = spread_code(GF4, 4, 2)
        report = verify_code(code)
        lifted = lift_code(code, report)
        assert lifted.provenance["lifted_from_q"] == 4
        assert lifted.provenance["construction"] == "coset-spread+lift"

    def test_certificate_recorded(self):
        lifted = lift_code(spread_code(GF2, 4, 2))
        assert lifted.certificate is None
        verify_lifted(lifted)
        assert lifted.certificate == {
            "method": "exact-cyclotomic",
            "ok": True,
            "planes": 5,
            "pairs_checked": 10,
        }


class TestComplexVerification:
    def test_detects_complex_intersection(self):
        # rows sharing a line: second plane contains (1, i, 0)
        a = SubspaceC(4, ((0, 1, None), (None, None, 0)))
        b = SubspaceC(4, ((0, 1, None), (0, 0, 0)))
        assert not pair_nonintersecting_c(a, b)

    def test_scaled_copies_intersect(self):
        # zeta * row spans the same line even though symbols differ
        a = SubspaceC(4, ((0, 0),))
        b = SubspaceC(4, ((1, 1),))
        assert not pair_nonintersecting_c(a, b)

    def test_numeric_rank_agrees(self):
        code = lift_code(spread_code(GF8, 4, 2))
        for i in range(0, len(code.planes), 7):
            for j in range(i + 1, len(code.planes), 11):
                a, b = code.planes[i], code.planes[j]
                stacked = np.vstack([a.numeric(), b.numeric()])
                numeric = np.linalg.matrix_rank(stacked, tol=1e-8)
                exact = pair_nonintersecting_c(a, b)
                assert exact == (numeric == 4)

    def test_parallel_matches_serial(self):
        code = lift_code(spread_code(GF4, 4, 2))
        serial = verify_lifted(code)
        parallel = verify_lifted(code, jobs=2)
        assert serial.ok and parallel.ok
        assert serial.pairs_checked == parallel.pairs_checked == 136

    def test_parallel_finds_failures(self):
        code = lift_code(spread_code(GF4, 4, 2))
        planes = list(code.planes)
        planes[9] = planes[2]
        bad = CodeC(code.n, code.m, code.t, planes)
        report = verify_lifted(bad, jobs=2)
        assert not report.ok
        assert (2, 9) in report.pair_failures

    def test_mismatched_code_shape_rejected(self):
        with pytest.raises(ValueError):
            CodeC(4, 2, 1, [SubspaceC(4, ((0, 1),)), SubspaceC(2, ((0, 1),))])
