"""Quadratic duals of commutative quadratic algebras.

From a presentation k[x_1..x_n]/(f_1..f_r) with homogeneous quadratic
relations f_i = sum_{j<=l} a_{ijl} x_j x_l, the dual is the noncommutative
quadratic algebra k<T_1..T_n>/(phi_1..phi_s) whose relations

    phi_i = sum_{j<=l} c_{ijl} (T_j T_l + T_l T_j)

are indexed by a basis (c_{ijl}) of the nullspace of the r x n(n+1)/2
coefficient matrix (a_{ijl}).  Graded components U_d of the dual are computed
by reducing the n^d-dimensional word space modulo the degree-d slice of the
two-sided ideal generated by the phi_i.

Characteristic 2 is rejected: downstream divided-square bookkeeping (squares
T_i^2 standing in for divided squares) degenerates there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraSpec, GradedAlgebra
from .scalars import Matrix, make_echelon, nullspace_basis

NC_DEGREE_CAP = 4

Word = Tuple[int, ...]
# A noncommutative homogeneous element of degree d is a dict {word: coef}
# with all words of length d.
NcElement = Dict[Word, object]


class DualError(ValueError):
    pass


def _check_quadratic_spec(spec: AlgebraSpec) -> None:
    if spec.field.characteristic == 2:
        raise DualError("quadratic dual construction requires characteristic != 2")
    for rel in spec.relations:
        if rel.degree() != 2:
            raise DualError(f"relation {rel} is not quadratic")


def pair_columns(n: int) -> List[Tuple[int, int]]:
    """Column index order for commutative degree-2 monomials x_j x_l, j <= l."""
    return [(j, l) for j in range(n) for l in range(j, n)]


def coefficient_matrix(spec: AlgebraSpec) -> Matrix:
    """The r x n(n+1)/2 matrix (a_{ijl}) of the quadratic relations."""
    _check_quadratic_spec(spec)
    n = len(spec.variables)
    F = spec.field
    cols = pair_columns(n)
    col_index = {jl: c for c, jl in enumerate(cols)}
    rows = []
    for rel in spec.relations:
        row = [F.zero] * len(cols)
        for exp, coef in rel.terms.items():
            support = [i for i, e in enumerate(exp) if e]
            if len(support) == 1:
                jl = (support[0], support[0])
            else:
                jl = (support[0], support[1])
            row[col_index[jl]] = coef
        rows.append(row)
    if not rows:
        return Matrix(F, 0, len(cols), [])
    return Matrix.from_rows(F, rows)


@dataclass(frozen=True)
class QuadraticDual:
    """Noncommutative quadratic presentation k<T_1..T_n>/(phi_1..phi_s)."""

    spec: AlgebraSpec
    n: int
    coeff_matrix: Matrix
    null_vectors: Tuple[Tuple[object, ...], ...]
    phis: Tuple[Tuple[Tuple[Word, object], ...], ...]

    @property
    def field(self):
        return self.spec.field

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(f"T{i + 1}" for i in range(self.n))

    def phi_elements(self) -> List[NcElement]:
        return [dict(phi) for phi in self.phis]

    def phi_strings(self) -> List[str]:
        names = self.generator_names
        out = []
        for phi in self.phis:
            parts = []
            for word, coef in phi:
                mono = "*".join(names[i] for i in word)
                parts.append(f"({coef})*{mono}")
            out.append(" + ".join(parts))
        return out


def quadratic_dual(spec: AlgebraSpec) -> QuadraticDual:
    A = coefficient_matrix(spec)
    F = spec.field
    n = len(spec.variables)
    cols = pair_columns(n)
    null = nullspace_basis(A)
    phis = []
    for vec in null:
        phi: NcElement = {}
        for c, (j, l) in enumerate(cols):
            coef = vec[c]
            if coef == F.zero:
                continue
            if j == l:
                # diagonal convention: the symmetric pair at (j, j) contributes
                # T_j^2 (the divided square) with coefficient c, not 2c; this
                # is the normalization under which the dual components U_d
                # reproduce the Betti numbers of k in the Koszul case
                phi[(j, j)] = coef
            else:
                phi[(j, l)] = coef
                phi[(l, j)] = coef
        phis.append(tuple(sorted(phi.items())))
    return QuadraticDual(
        spec=spec,
        n=n,
        coeff_matrix=A,
        null_vectors=tuple(tuple(v) for v in null),
        phis=tuple(phis),
    )


def words(n: int, d: int) -> List[Word]:
    """All length-d words over {0..n-1} in lexicographic order (T1 < ... < Tn)."""
    if d == 0:
        return [()]
    out: List[Word] = []
    for w in words(n, d - 1):
        for i in range(n):
            out.append(w + (i,))
    return out


def word_index(w: Word, n: int) -> int:
    idx = 0
    for i in w:
        idx = idx * n + i
    return idx


def nc_multiply(a: NcElement, b: NcElement, field) -> NcElement:
    out: NcElement = {}
    zero = field.zero
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            v = field.of(out.get(w, zero) + ca * cb)
            if v == zero:
                out.pop(w, None)
            else:
                out[w] = v
    return out


class DualComponents:
    """Reduction machinery for the graded pieces U_d of a quadratic dual.

    For each degree d <= NC_DEGREE_CAP this computes, once, a reduced echelon
    form of the ideal slice span{w . phi_i . w' : |w| + 2 + |w'| = d} inside
    the n^d-dimensional word space, yielding a word basis of U_d and a normal
    form map for arbitrary degree-d elements.
    """

    def __init__(self, dual: QuadraticDual):
        self.dual = dual
        self.field = dual.field
        self.n = dual.n
        self._cache: Dict[int, Tuple[List[Word], Dict[int, Dict[int, object]]]] = {}

    def _compute(self, d: int) -> Tuple[List[Word], Dict[int, Dict[int, object]]]:
        if d in self._cache:
            return self._cache[d]
        if d > NC_DEGREE_CAP:
            raise DualError(
                f"noncommutative component degree {d} exceeds hard cap {NC_DEGREE_CAP}"
            )
        F = self.field
        n = self.n
        all_words = words(n, d)
        if d < 2 or not self.dual.phis:
            basis = list(all_words)
            classes = {word_index(w, n): {word_index(w, n): F.one} for w in basis}
            self._cache[d] = (basis, classes)
            return self._cache[d]
        ncols = n ** d
        ech = make_echelon(F, ncols)
        rows = []
        for la in range(d - 1):
            lb = d - 2 - la
            for wl in words(n, la):
                for wr in words(n, lb):
                    for phi in self.dual.phis:
                        row: Dict[int, object] = {}
                        for word, coef in phi:
                            idx = word_index(wl + word + wr, n)
                            row[idx] = F.of(row.get(idx, F.zero) + coef)
                        rows.append(row)
        ech.add_rows(rows)
        reduced = ech.reduced_rows()
        pivot_cols = set(reduced.keys())
        basis = [w for w in all_words if word_index(w, n) not in pivot_cols]
        classes: Dict[int, Dict[int, object]] = {}
        zero = F.zero
        for w in basis:
            idx = word_index(w, n)
            classes[idx] = {idx: F.one}
        for piv, row in reduced.items():
            cls = {}
            for c, v in row.items():
                if c != piv and v != zero:
                    cls[c] = F.of(-v)
            classes[piv] = cls
        self._cache[d] = (basis, classes)
        return self._cache[d]

    def dim(self, d: int) -> int:
        return len(self._compute(d)[0])

    def basis_words(self, d: int) -> List[Word]:
        return self._compute(d)[0]

    def reduce(self, element: NcElement, d: int) -> Dict[int, object]:
        """Normal form of a degree-d element as {basis word index: coef}."""
        _, classes = self._compute(d)
        F = self.field
        zero = F.zero
        out: Dict[int, object] = {}
        for w, coef in element.items():
            if len(w) != d:
                raise DualError("inhomogeneous noncommutative element")
            if coef == zero:
                continue
            for c, v in classes[word_index(w, self.n)].items():
                nv = F.of(out.get(c, zero) + coef * v)
                if nv == zero:
                    out.pop(c, None)
                else:
                    out[c] = nv
        return out

    def coords(self, element: NcElement, d: int) -> List[object]:
        """Normal form as a dense coordinate vector over basis_words(d)."""
        basis, _ = self._compute(d)
        red = self.reduce(element, d)
        order = {word_index(w, self.n): i for i, w in enumerate(basis)}
        vec = [self.field.zero] * len(basis)
        for c, v in red.items():
            vec[order[c]] = v
        return vec


@dataclass(frozen=True)
class NcComponent:
    degree: int
    basis: Tuple[Word, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def nc_component(dual: QuadraticDual, d: int, components: Optional[DualComponents] = None) -> NcComponent:
    if d < 0:
        raise DualError("degree must be nonnegative")
    comps = components or DualComponents(dual)
    return NcComponent(degree=d, basis=tuple(comps.basis_words(d)))


def koszul_smoke(algebra: GradedAlgebra, dual: QuadraticDual, i_max: int = 3) -> dict:
    """Compare Betti numbers of k with dim U_i through i_max.

    Equality is necessary for the identification Ext^i = U_i (Ext generated
    in degree 1) that the homotopy Lie extraction relies on; inequality
    yields a warning verdict.
    """
    from .homology import minimal_resolution

    if algebra.spec != dual.spec:
        raise DualError("algebra and dual built from different presentations")
    i_max = min(i_max, 3)
    res = minimal_resolution(algebra, "k", hom_cap=i_max)
    betti = list(res.betti)[: i_max + 1]
    comps = DualComponents(dual)
    dual_dims = [comps.dim(i) for i in range(i_max + 1)]
    consistent = betti == dual_dims
    return {
        "i_max": i_max,
        "betti": betti,
        "dual_dims": dual_dims,
        "consistent": consistent,
        "verdict": (
            "consistent with Koszul"
            if consistent
            else "inconsistent: degree-1-generated Ext identification unsupported for this input"
        ),
    }
