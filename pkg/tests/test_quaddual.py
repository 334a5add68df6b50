"""Quadratic duals of quadratic graded algebras.

Oracle policy: small duals (one variable; two-variable complete
intersection) are closed-form ([TRIVIAL]); the 5-variable example's dual
relation span is checked in both directions against the five published
generators, with one of the five corrected — the published fifth
generator fails the defining nullspace condition and is replaced by the
unique corrected combination, see notes ledger ([PAPER]); component
dimensions vs Betti numbers are cross-checks ([DERIVED]).
"""

import pytest

from tacalc import (
    QQ,
    build_algebra,
    coefficient_matrix,
    minimal_resolution,
    nc_component,
    quadratic_dual,
)
from tacalc.quaddual import (
    DualComponents,
    DualError,
    koszul_smoke,
    nc_multiply,
    pair_columns,
    word_index,
    words,
)
from tacalc.scalars import PrimeField, SparseEchelon
from conftest import spec_from


def span_echelon(elements, n):
    """Echelon of degree-2 noncommutative elements in the word basis."""
    ech = SparseEchelon(QQ, n * n)
    for el in elements:
        ech.add_row({word_index(w, n): c for w, c in el.items()})
    return ech


def in_span(ech, el, n):
    return ech.reduce({word_index(w, n): c for w, c in el.items()}) == {}


# The five published degree-2 relations of the example dual; the fifth is
# corrected (the printed version fails the nullspace condition and breaks
# the dimension count 76 in degree 3).
PUBLISHED_PHIS = [
    {(0, 1): 1, (1, 0): 1},  # T1T2+T2T1
    {(0, 2): 1, (2, 0): 1, (1, 2): -2, (2, 1): -2},  # (T1T3+T3T1)-2(T2T3+T3T2)
    {(0, 3): 1, (3, 0): 1, (1, 3): -1, (3, 1): -1},  # (T1T4+T4T1)-(T2T4+T4T2)
    {(2, 2): 1, (3, 3): 1, (1, 4): 1, (4, 1): 1},  # T3^2+T4^2+(T2T5+T5T2)
    {(2, 2): 2, (3, 3): 1, (0, 4): -1, (4, 0): -1},  # 2T3^2+T4^2-(T1T5+T5T1)
]

# The paper's printed fifth generator (with the typo): not in the span.
MISPRINTED_PHI5 = {(2, 2): 1, (0, 4): 1, (4, 0): 1, (1, 4): 1, (4, 1): 1}


class TestSmallDuals:
    def test_hypersurface_dual_is_free(self, spec_hypersurface):
        d = quadratic_dual(spec_hypersurface)
        assert len(d.phis) == 0
        assert [nc_component(d, i).dimension for i in range(4)] == [1, 1, 1, 1]

    def test_ci2_dual(self, spec_ci2):
        d = quadratic_dual(spec_ci2)
        assert len(d.phis) == 1
        assert d.phi_elements()[0] == {(0, 1): QQ.of(1), (1, 0): QQ.of(1)}
        assert [nc_component(d, i).dimension for i in range(5)] == [1, 2, 3, 4, 5]

    def test_coefficient_matrix_shape(self, spec_ci2):
        cm = coefficient_matrix(spec_ci2)
        assert (cm.rows, cm.cols) == (2, 3)
        assert pair_columns(2) == [(0, 0), (0, 1), (1, 1)]


class TestExampleDual:
    def test_phi_count(self, spec_S):
        assert len(quadratic_dual(spec_S).phis) == 5

    def test_span_equality_with_published_list(self, spec_S):
        d = quadratic_dual(spec_S)
        computed = span_echelon(d.phi_elements(), 5)
        published = span_echelon(PUBLISHED_PHIS, 5)
        assert computed.rank == published.rank == 5
        for el in PUBLISHED_PHIS:
            assert in_span(computed, el, 5)
        for el in d.phi_elements():
            assert in_span(published, el, 5)

    def test_misprinted_phi5_not_in_span(self, spec_S):
        d = quadratic_dual(spec_S)
        computed = span_echelon(d.phi_elements(), 5)
        assert not in_span(computed, MISPRINTED_PHI5, 5)

    def test_dual_dims_match_betti(self, spec_S, alg_S):
        d = quadratic_dual(spec_S)
        dims = [nc_component(d, i).dimension for i in range(4)]
        assert dims == [1, 5, 20, 76]
        assert dims == list(minimal_resolution(alg_S, "k", hom_cap=3).betti)

    def test_Q_dual_dims_match_betti(self, spec_Q, alg_Q):
        d = quadratic_dual(spec_Q)
        dims = [nc_component(d, i).dimension for i in range(4)]
        assert dims == [1, 4, 13, 40]
        assert dims == list(minimal_resolution(alg_Q, "k", hom_cap=3).betti)


class TestComponents:
    def test_words_order(self):
        assert words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_reduction_normal_form(self, spec_ci2):
        d = quadratic_dual(spec_ci2)
        comps = DualComponents(d)
        # pivot sits on the lex-earlier word, so T1*T2 reduces to -T2*T1
        assert comps.basis_words(2) == [(0, 0), (1, 0), (1, 1)]
        red = comps.reduce({(0, 1): QQ.of(1)}, 2)
        assert red == {word_index((1, 0), 2): QQ.of(-1)}

    def test_nc_multiply(self, spec_ci2):
        a = {(0,): QQ.of(1)}
        b = {(1,): QQ.of(2)}
        assert nc_multiply(a, b, QQ) == {(0, 1): QQ.of(2)}


class TestKoszulSmoke:
    def test_consistent_examples(self, spec_S, alg_S, spec_ci2, alg_ci2):
        for spec, alg in ((spec_S, alg_S), (spec_ci2, alg_ci2)):
            rep = koszul_smoke(alg, quadratic_dual(spec))
            assert rep["consistent"]
            assert rep["verdict"] == "consistent with Koszul"

    def test_non_koszul_detected(self):
        spec = spec_from(
            ("x", "y", "z", "w"),
            ["x^2", "y^2", "z^2", "w^2", "z*w+x*y"],
        )
        rep = koszul_smoke(build_algebra(spec), quadratic_dual(spec))
        assert not rep["consistent"]
        assert rep["betti"] == [1, 4, 11, 29]
        assert rep["dual_dims"] == [1, 4, 11, 24]


class TestGuards:
    def test_char_two_rejected(self):
        # the dual layer refuses characteristic 2 outright; the smallest
        # odd characteristic 3 is allowed here (flagged downstream)
        with pytest.raises(ValueError):
            PrimeField(2)
        spec3 = spec_from(("x", "y"), ["x^2", "y^2"], field=PrimeField(3))
        assert len(quadratic_dual(spec3).phis) == 1

    def test_non_quadratic_rejected(self):
        spec = spec_from(("x", "y"), ["x^2", "x*y^2", "y^3"])
        with pytest.raises(DualError):
            quadratic_dual(spec)
