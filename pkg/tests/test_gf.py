import random

import pytest

from skewcodes.gf import (
    Field,
    FieldTower,
    MatrixFF,
    NotIrreducibleError,
    NotPrimeError,
    NotPrimitiveError,
    SizeLimitError,
    field_default,
    field_new,
    rank,
    rref,
    stack,
)


def brute_rank(f: Field, rows):
    """Rank via the size of the row space: q^rank distinct combinations."""
    space = {tuple([0] * len(rows[0]))} if rows else {tuple()}
    for row in rows:
        new = set()
        for vec in space:
            for c in f.elements():
                new.add(tuple(f.add(v, f.mul(c, x)) for v, x in zip(vec, row)))
        space = new
    n = len(space)
    r = 0
    while f.q ** r < n:
        r += 1
    assert f.q ** r == n
    return r


class TestConstruction:
    def test_default_gf16_poly(self):
        f = field_default(2, 4)
        assert list(f.poly) == [1, 1, 0, 0, 1]  # x^4 + x + 1

    def test_default_gf8_poly(self):
        f = field_default(2, 3)
        assert list(f.poly) == [1, 1, 0, 1]  # x^3 + x + 1

    def test_default_gf4_poly(self):
        f = field_default(2, 2)
        assert list(f.poly) == [1, 1, 1]  # x^2 + x + 1

    def test_default_gf3(self):
        f = field_default(3, 1)
        assert f.q == 3
        assert f.mul(2, 2) == 1

    def test_explicit_matches_default(self):
        assert field_new(2, 4, [1, 1, 0, 0, 1]).antilog == \
            field_default(2, 4).antilog

    def test_not_prime(self):
        with pytest.raises(NotPrimeError):
            field_default(4, 1)
        with pytest.raises(NotPrimeError):
            field_new(6, 2, [1, 1, 1])

    def test_reducible_rejected(self):
        # x^2 + 1 = (x + 1)^2 over GF(2)
        with pytest.raises(NotIrreducibleError):
            field_new(2, 2, [1, 0, 1])

    def test_irreducible_but_not_primitive_rejected(self):
        # x^4 + x^3 + x^2 + x + 1 divides x^5 - 1: root has order 5, not 15
        with pytest.raises(NotPrimitiveError):
            field_new(2, 4, [1, 1, 1, 1, 1])
        # x^2 + 1 over GF(3): root has order 4, not 8
        with pytest.raises(NotPrimitiveError):
            field_new(3, 2, [1, 0, 1])

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            field_default(2, 24)

    def test_nonmonic_rejected(self):
        with pytest.raises(ValueError):
            field_new(3, 2, [1, 1, 2])


class TestArithmetic:
    def test_alpha_times_alpha_cubed_gf16(self):
        f = field_default(2, 4)
        a = f.alpha
        a3 = f.pow(a, 3)
        assert f.mul(a, a3) == f.pow(a, 4)
        # alpha^4 = alpha + 1 under x^4 + x + 1: digits [1,1,0,0], index 3
        assert f.pow(a, 4) == 3

    def test_alpha_cubed_gf8(self):
        f = field_default(2, 3)
        # alpha^3 = alpha + 1 under x^3 + x + 1
        assert f.pow(f.alpha, 3) == f.add(f.alpha, 1) == 3

    def test_log_antilog_roundtrip(self):
        for f in (field_default(2, 4), field_default(3, 2), field_default(5, 1)):
            for a in f.nonzero_elements():
                assert f.antilog[f.log[a]] == a

    def test_field_axioms_random(self):
        rng = random.Random(2024)
        for f in (field_default(2, 4), field_default(3, 3), field_default(7, 1)):
            for _ in range(200):
                a = rng.randrange(f.q)
                b = rng.randrange(f.q)
                c = rng.randrange(f.q)
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.add(a, f.neg(a)) == 0
                assert f.sub(a, b) == f.add(a, f.neg(b))
                if a:
                    assert f.mul(a, f.inv(a)) == 1

    def test_pow_consistency(self):
        f = field_default(2, 4)
        rng = random.Random(7)
        for _ in range(50):
            a = rng.randrange(1, f.q)
            e = rng.randrange(-5, 40)
            expect = 1
            if e >= 0:
                for _ in range(e):
                    expect = f.mul(expect, a)
            else:
                inv = f.inv(a)
                for _ in range(-e):
                    expect = f.mul(expect, inv)
            assert f.pow(a, e) == expect

    def test_zero_inverse_raises(self):
        f = field_default(2, 2)
        with pytest.raises(ZeroDivisionError):
            f.inv(0)
        with pytest.raises(ZeroDivisionError):
            f.pow(0, -1)

    def test_digits_roundtrip(self):
        f = field_default(3, 2)
        for a in f.elements():
            ds = f.element_digits(a)
            assert len(ds) == f.k
            assert sum(d * f.p ** i for i, d in enumerate(ds)) == a


class TestMatrices:
    def test_rank_full(self):
        f = field_default(2, 1)
        m = MatrixFF(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert rank(m) == 3

    def test_rank_dependent_rows(self):
        f = field_default(2, 2)
        a = f.alpha
        m = MatrixFF(f, [[1, a], [a, f.mul(a, a)]])  # second = alpha * first
        assert rank(m) == 1

    def test_rank_against_brute_force(self):
        rng = random.Random(99)
        for f in (field_default(2, 1), field_default(3, 1), field_default(2, 2)):
            for _ in range(40):
                nr = rng.randrange(1, 4)
                nc = rng.randrange(1, 5)
                rows = [[rng.randrange(f.q) for _ in range(nc)]
                        for _ in range(nr)]
                assert rank(MatrixFF(f, rows)) == brute_rank(f, rows)

    def test_rref_canonical(self):
        f = field_default(2, 4)
        rng = random.Random(5)
        for _ in range(30):
            rows = [[rng.randrange(f.q) for _ in range(4)] for _ in range(2)]
            m = MatrixFF(f, rows)
            if rank(m) < 2:
                continue
            # act by a random invertible 2x2 change of basis
            while True:
                t = [[rng.randrange(f.q) for _ in range(2)] for _ in range(2)]
                if rank(MatrixFF(f, t)) == 2:
                    break
            mixed = [[f.add(f.mul(t[i][0], rows[0][j]), f.mul(t[i][1], rows[1][j]))
                      for j in range(4)] for i in range(2)]
            assert rref(m).rows == rref(MatrixFF(f, mixed)).rows

    def test_stack(self):
        f = field_default(2, 1)
        a = MatrixFF(f, [[1, 0]])
        b = MatrixFF(f, [[0, 1]])
        s = stack(a, b)
        assert s.rows == [[1, 0], [0, 1]]
        assert rank(s) == 2

    def test_stack_mismatch(self):
        with pytest.raises(ValueError):
            stack(MatrixFF(field_default(2, 1), [[1]]),
                  MatrixFF(field_default(3, 1), [[1]]))

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            MatrixFF(field_default(2, 1), [[1, 0], [1]])


class TestFieldTower:
    def test_prime_base_coords_are_digits(self):
        tower = FieldTower(field_default(2, 1), 4)
        top = tower.top
        for x in top.elements():
            assert tower.coords(x) == top.element_digits(x)

    def test_embed_is_field_homomorphism(self):
        rng = random.Random(17)
        for base, m in ((field_default(2, 2), 2), (field_default(2, 2), 3),
                        (field_default(3, 2), 2)):
            tower = FieldTower(base, m)
            top = tower.top
            for _ in range(60):
                s = rng.randrange(base.q)
                t = rng.randrange(base.q)
                assert tower.embed(base.mul(s, t)) == \
                    top.mul(tower.embed(s), tower.embed(t))
                assert tower.embed(base.add(s, t)) == \
                    top.add(tower.embed(s), tower.embed(t))

    def test_coords_of_embedded_scalar(self):
        base = field_default(2, 2)
        tower = FieldTower(base, 2)
        for s in base.elements():
            assert tower.coords(tower.embed(s)) == [s, 0]

    def test_coords_are_base_linear(self):
        rng = random.Random(18)
        base = field_default(2, 2)
        tower = FieldTower(base, 3)
        top = tower.top
        for _ in range(80):
            x = rng.randrange(top.q)
            y = rng.randrange(top.q)
            s = rng.randrange(base.q)
            cx, cy = tower.coords(x), tower.coords(y)
            assert tower.coords(top.add(x, y)) == \
                [base.add(a, b) for a, b in zip(cx, cy)]
            assert tower.coords(top.mul(tower.embed(s), x)) == \
                [base.mul(s, a) for a in cx]

    def test_coords_faithful(self):
        base = field_default(2, 2)
        tower = FieldTower(base, 2)
        seen = {tuple(tower.coords(x)) for x in tower.top.elements()}
        assert len(seen) == tower.top.q
