import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from arx.errors import FieldMismatch, InputError, NoSolution, ShapeError
from arx.exactla import (Field, Matrix, Quotient, SparseEchelon, column_space_basis, inverse,
                         kernel_basis, left_inverse, quotient_coords, rref, solve_right)

QQ = Field.rational()
F3 = Field.prime(3)


def mat_strategy(max_rows=4, max_cols=4, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def to_sympy(m: Matrix):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                         for row in m.rows])


def from_ints(f, rows):
    return Matrix(f, [[f(x) for x in r] for r in rows], len(rows[0]))


class TestField:
    def test_parse(self):
        assert Field.parse("rational") == QQ
        assert Field.parse("fp:7") == Field.prime(7)

    @pytest.mark.parametrize("bad", ["fp:8", "fp:1", "reals", "fp:x"])
    def test_parse_rejects(self, bad):
        with pytest.raises(InputError):
            Field.parse(bad)

    def test_prime_arithmetic(self):
        f = Field.prime(5)
        assert f.mul(f(3), f.inv(f(3))) == f.one
        assert f(7) == f(2)

    def test_scalar_roundtrip(self):
        for f in (QQ, F3):
            for x in (f(0), f(1), f(2)):
                assert f.parse_scalar(f.format_scalar(x)) == x
        assert QQ.parse_scalar("-3/4") == QQ(-3) / QQ(4)


class TestDenseAlgebra:
    @given(mat_strategy())
    def test_rref_matches_sympy(self, rows):
        m = from_ints(QQ, rows)
        red, rank, piv = rref(m)
        s_red, s_piv = to_sympy(m).rref()
        assert to_sympy(red) == s_red
        assert tuple(piv) == s_piv
        assert rank == len(s_piv)

    @given(mat_strategy())
    def test_kernel_is_null_space(self, rows):
        m = from_ints(QQ, rows)
        k = kernel_basis(m)
        assert k.ncols == m.ncols - m.rank()
        assert (m @ k).is_zero()
        assert k.rank() == k.ncols

    @given(mat_strategy(3, 3, 0, 2))
    def test_kernel_size_over_f3(self, rows):
        # oracle: count solutions by enumeration
        m = from_ints(F3, rows)
        n = m.ncols
        count = sum(1 for v in itertools.product(range(3), repeat=n)
                    if all(sum(r[j] * v[j] for j in range(n)) % 3 == 0 for r in rows))
        assert count == 3 ** kernel_basis(m).ncols

    @given(mat_strategy(), st.integers(0, 2 ** 16))
    def test_solve_right(self, rows, seed):
        a = from_ints(QQ, rows)
        x0 = Matrix(QQ, [[QQ((seed >> i) % 5 - 2)] for i in range(a.ncols)], 1)
        b = a @ x0
        x = solve_right(a, b)
        assert a @ x == b

    def test_solve_inconsistent(self):
        a = from_ints(QQ, [[1, 0], [0, 0]])
        b = from_ints(QQ, [[0], [1]])
        with pytest.raises(NoSolution):
            solve_right(a, b)

    def test_inverse(self):
        m = from_ints(QQ, [[2, 1], [1, 1]])
        assert m @ inverse(m) == Matrix.identity(QQ, 2)
        with pytest.raises(NoSolution):
            inverse(from_ints(QQ, [[1, 2], [2, 4]]))

    @given(mat_strategy(4, 3))
    def test_left_inverse(self, rows):
        b = from_ints(QQ, rows)
        b = column_space_basis(b)
        if b.ncols:
            assert left_inverse(b) @ b == Matrix.identity(QQ, b.ncols)

    @given(mat_strategy())
    def test_column_space(self, rows):
        m = from_ints(QQ, rows)
        c = column_space_basis(m)
        assert c.ncols == m.rank()
        # every column of m lies in the span (solve_right raises otherwise)
        if c.ncols:
            for col in m.columns():
                solve_right(c, Matrix.from_columns(QQ, [col], m.nrows))
        else:
            assert m.is_zero()

    def test_shape_and_field_errors(self):
        a = Matrix.zeros(QQ, 2, 2)
        with pytest.raises(ShapeError):
            a @ Matrix.zeros(QQ, 3, 1)
        with pytest.raises(FieldMismatch):
            solve_right(a, Matrix.zeros(F3, 2, 1))


class TestQuotient:
    @given(mat_strategy(4, 3))
    def test_quotient_coords(self, rows):
        sub = from_ints(QQ, rows)
        proj, d = quotient_coords(sub.nrows, sub)
        assert d == sub.nrows - sub.rank()
        assert (proj @ sub).is_zero()
        assert proj.rank() == d

    def test_lift_roundtrip(self):
        sub = from_ints(QQ, [[1], [1], [0]])
        q = Quotient.from_matrix(3, sub)
        for v in ([QQ(1), QQ(0)], [QQ(2), QQ(-1)]):
            assert q.coords(q.lift(v)) == v

    def test_sparse_echelon_kernel_matches_dense(self):
        rows = [[1, 2, 0, 1], [0, 0, 1, 1], [1, 2, 1, 2]]
        ech = SparseEchelon(QQ, 4)
        for r in rows:
            ech.add({j: QQ(x) for j, x in enumerate(r) if x})
        free, vecs = ech.kernel()
        dense = kernel_basis(from_ints(QQ, rows))
        assert len(vecs) == dense.ncols
        assert ech.rank == 2
        m = from_ints(QQ, rows)
        for v in vecs:
            col = [v.get(j, QQ(0)) for j in range(4)]
            assert all(x == 0 for x in m.apply(col))
