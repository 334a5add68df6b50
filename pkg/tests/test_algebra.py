"""Graded quotient algebras: Hilbert functions, normal forms, socle, tensor.

Oracle policy: hypersurface / complete-intersection / fat-point Hilbert
functions are closed-form ([TRIVIAL]); the 5-variable and 4-variable
example algebras' Hilbert functions and socle dimensions are frozen
independently verified values ([PAPER]); Hilbert multiplicativity under
tensor products is a property suite over random monomial algebras
([DERIVED]).
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

import tacalc.algebra as al
from tacalc import (
    AlgebraSpec,
    CapExceeded,
    NotFiniteDimensional,
    QQ,
    build_algebra,
    tensor,
)
from tacalc.scalars import PrimeField
from conftest import spec_from


class TestSmallClosedForms:
    def test_hypersurface(self, alg_hypersurface):
        assert alg_hypersurface.hilbert() == [1, 1]
        assert alg_hypersurface.total_dim() == 2

    def test_ci2(self, alg_ci2):
        assert alg_ci2.hilbert() == [1, 2, 1]

    def test_fat_point(self, alg_fat_point):
        assert alg_fat_point.hilbert() == [1, 2]
        assert alg_fat_point.socle().dimension == 2

    def test_normal_form_rewrites(self, alg_ci2):
        from tacalc.polyring import parse_poly

        ctx = alg_ci2.spec.context
        assert alg_ci2.is_zero_in_algebra(parse_poly("x^2", ctx))
        assert not alg_ci2.is_zero_in_algebra(parse_poly("x*y", ctx))


class TestExampleAlgebras:
    def test_S_hilbert_and_socle(self, alg_S):
        assert alg_S.hilbert() == [1, 5, 5, 1]
        soc = alg_S.socle()
        assert soc.dimension == 1 and soc.gorenstein

    def test_Q_hilbert_and_socle(self, alg_Q):
        assert alg_Q.hilbert() == [1, 4, 3]
        soc = alg_Q.socle()
        assert soc.dimension == 3 and not soc.gorenstein

    def test_R_tensor(self, spec_S, spec_Q):
        R = build_algebra(tensor(spec_S, spec_Q))
        assert R.hilbert() == [1, 9, 28, 36, 19, 3]
        assert R.total_dim() == 96
        soc = R.socle()
        assert soc.dimension == 3 and not soc.gorenstein

    def test_tensor_socle_product_rule(self, alg_S, alg_Q, spec_S, spec_Q):
        R = build_algebra(tensor(spec_S, spec_Q))
        assert (
            R.socle().dimension
            == alg_S.socle().dimension * alg_Q.socle().dimension
        )


class TestGuards:
    def test_not_finite_dimensional(self):
        spec = spec_from(("x", "y"), ["x^2"])
        with pytest.raises((NotFiniteDimensional, CapExceeded)):
            build_algebra(spec)

    def test_variable_name_clash_in_tensor(self, spec_ci2):
        with pytest.raises(Exception):
            tensor(spec_ci2, spec_ci2)

    def test_prime_field_build(self):
        spec = spec_from(("x", "y"), ["x^2", "y^2"], field=PrimeField(32003))
        assert build_algebra(spec).hilbert() == [1, 2, 1]


def random_monomial_spec(rng, names):
    """Random finite-dimensional monomial quotient: all squares, plus
    possibly some cross terms."""
    rels = [f"{v}^2" for v in names]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if rng.random() < 0.5:
                rels.append(f"{names[i]}*{names[j]}")
    return spec_from(names, rels)


class TestTensorProperties:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_hilbert_multiplicative(self, seed):
        rng = random.Random(seed)
        a = random_monomial_spec(rng, ("x1", "x2")[: rng.randint(1, 2)])
        b = random_monomial_spec(rng, ("y1", "y2")[: rng.randint(1, 2)])
        A, B = build_algebra(a), build_algebra(b)
        T = build_algebra(tensor(a, b))
        ha, hb, ht = A.hilbert(), B.hilbert(), T.hilbert()
        conv = [
            sum(
                ha[i] * hb[d - i]
                for i in range(len(ha))
                if 0 <= d - i < len(hb)
            )
            for d in range(len(ha) + len(hb) - 1)
        ]
        assert ht == conv
        assert T.total_dim() == A.total_dim() * B.total_dim()

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_hilbert_invariant_under_variable_permutation(self, seed):
        rng = random.Random(seed)
        names = ("x1", "x2", "x3")
        spec = random_monomial_spec(rng, names)
        perm = list(names)
        rng.shuffle(perm)
        rename = dict(zip(names, perm))
        rels = []
        for r in spec.relations:
            s = str(r)
            for old, new in rename.items():
                s = s.replace(old, new.upper())
            for new in rename.values():
                s = s.replace(new.upper(), new)
            rels.append(s)
        spec2 = spec_from(names, rels)
        assert build_algebra(spec).hilbert() == build_algebra(spec2).hilbert()
