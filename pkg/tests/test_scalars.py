"""Exact linear algebra kernel.

Oracle policy: ranks and nullspaces are cross-checked against an
independent dense Gaussian elimination over fractions.Fraction
([DERIVED]); algebraic identities (rref idempotence, rank-nullity,
A v = 0 for kernel vectors) are asserted directly ([TRIVIAL]).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tacalc.scalars import (
    DEFAULT_PRIME,
    GFEchelon,
    Matrix,
    PrimeField,
    QQ,
    SparseEchelon,
    det,
    field_from_name,
    kernel_of_rows,
    nullspace_basis,
    rank,
    rref,
    solve_linear,
)


def oracle_rank(rows, ncols):
    """Independent rank via dense fraction elimination."""
    mat = [[Fraction(x) for x in row] + [Fraction(0)] * (ncols - len(row)) for row in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


small_int = st.integers(min_value=-6, max_value=6)
matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda nc: st.lists(
        st.lists(small_int, min_size=nc, max_size=nc), min_size=1, max_size=5
    )
)


class TestFields:
    def test_rationals_arithmetic(self):
        a, b = QQ.of(3), QQ.of(4)
        assert a / b == QQ.of(Fraction(3, 4))
        assert QQ.characteristic == 0

    def test_prime_field_inverse(self):
        F = PrimeField(7)
        for x in range(1, 7):
            assert (x * F.inv(F.of(x))) % 7 == 1

    def test_even_modulus_rejected(self):
        with pytest.raises(ValueError):
            PrimeField(2)
        with pytest.raises(ValueError):
            PrimeField(9)

    def test_field_from_name(self):
        assert field_from_name("Q") is QQ
        assert field_from_name("F32003").characteristic == DEFAULT_PRIME


class TestDense:
    def test_rank_oracle_fixed(self):
        rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
        assert rank(Matrix.from_rows(QQ, rows)) == oracle_rank(rows, 3) == 2

    def test_det_2x2(self):
        assert det(Matrix.from_rows(QQ, [[1, 2], [3, 4]])) == QQ.of(-2)

    def test_solve(self):
        A = Matrix.from_rows(QQ, [[2, 1], [1, 3]])
        x = solve_linear(A, [QQ.of(5), QQ.of(10)])
        assert A.matvec(x) == [QQ.of(5), QQ.of(10)]

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rref_idempotent(self, rows):
        M = Matrix.from_rows(QQ, rows)
        R1, piv1 = rref(M)
        R2, piv2 = rref(R1)
        assert R1.to_rows() == R2.to_rows()
        assert piv1 == piv2

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rank_nullity(self, rows):
        M = Matrix.from_rows(QQ, rows)
        ker = nullspace_basis(M)
        assert rank(M) + len(ker) == M.cols
        zero = [QQ.zero] * M.rows
        for v in ker:
            assert M.matvec(v) == zero

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rank_matches_fraction_oracle(self, rows):
        assert rank(Matrix.from_rows(QQ, rows)) == oracle_rank(rows, len(rows[0]))


class TestSparseEchelon:
    def test_incremental_rank(self):
        e = SparseEchelon(QQ, 4)
        assert e.add_row({0: QQ.of(1), 1: QQ.of(2)})
        assert not e.add_row({0: QQ.of(2), 1: QQ.of(4)})
        assert e.add_row({3: QQ.of(5)})
        assert e.rank == 2
        assert sorted(e.pivots) == [0, 3]

    def test_reduce_to_normal_form(self):
        e = SparseEchelon(QQ, 3)
        e.add_row({0: QQ.of(1), 2: QQ.of(1)})
        red = e.reduce({0: QQ.of(3), 2: QQ.of(3)})
        assert red == {}

    def test_kernel_vectors_annihilate(self):
        rows = [{0: QQ.of(1), 1: QQ.of(2), 2: QQ.of(3)}, {1: QQ.of(1), 2: QQ.of(1)}]
        for v in kernel_of_rows(rows, 3, QQ):
            for row in rows:
                s = sum((row[j] * v[j] for j in row if j in v), QQ.zero)
                assert s == QQ.zero

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_sparse_rank_matches_dense(self, rows):
        e = SparseEchelon(QQ, len(rows[0]))
        for row in rows:
            e.add_row({j: QQ.of(x) for j, x in enumerate(row) if x})
        assert e.rank == oracle_rank(rows, len(rows[0]))


class TestGFEchelon:
    @staticmethod
    def oracle_rank_mod_p(rows, ncols, p):
        mat = [[x % p for x in row] for row in rows]
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = pow(mat[r][c], -1, p)
            mat[r] = [(x * inv) % p for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
            r += 1
        return r

    @settings(max_examples=40, deadline=None)
    @given(matrices)
    def test_gf_rank_matches_oracle(self, rows):
        F = PrimeField(DEFAULT_PRIME)
        g = GFEchelon(F, len(rows[0]))
        for row in rows:
            g.add_row({j: F.of(x) for j, x in enumerate(row) if x % DEFAULT_PRIME})
        assert g.rank == self.oracle_rank_mod_p(rows, len(rows[0]), DEFAULT_PRIME)

    def test_reduced_rows_shape(self):
        F = PrimeField(DEFAULT_PRIME)
        g = GFEchelon(F, 3)
        g.add_row({0: 1, 1: 2})
        g.add_row({1: 1, 2: 1})
        rr = g.reduced_rows()
        assert set(rr) == {0, 1}
        assert rr[0].get(1) in (None, 0)  # fully reduced above pivots


class TestNullspacePattern:
    def test_free_column_unit_pattern(self):
        M = Matrix.from_rows(QQ, [[1, 2, 3]])
        basis = nullspace_basis(M)
        # one basis vector per free column, unit in that coordinate
        assert [v[1] for v in basis] == [QQ.of(1), QQ.of(0)]
        assert [v[2] for v in basis] == [QQ.of(0), QQ.of(1)]
