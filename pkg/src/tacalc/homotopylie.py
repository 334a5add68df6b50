"""Degree-2 and degree-3 homotopy Lie components and the centrality test.

For a finite-dimensional Koszul algebra the graded components U_d of the
quadratic dual are the Ext components, and the Lie components sit inside
them:

  * pi^2 = image in U_2 of the symmetric square span{T_i^2, T_iT_j+T_jT_i};
    its dimension must equal the second deviation eps_2.
  * pi^3 = a complement in U_3 of the lower PBW subspace
    span{T_aT_bT_c : a<b<c} + span{T_j . w : w in pi^2}, spanned (in the
    degree-1-generated case) by brackets [w, T_j] = w T_j - T_j w; its
    dimension must equal eps_3.

The degree-2 center is the kernel of u |-> ([u,T_1],...,[u,T_n]); a zero
center obstructs the existence of an embedded deformation (a regular element
in the square of the maximal ideal of a deformation ring), while a nonzero
center leaves existence undecided.

Characteristic 2 is rejected (divided squares are represented by T_i^2,
which is only faithful away from 2); characteristic 3 is allowed but flagged
in reports.
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import AlgebraSpec, GradedAlgebra, build_algebra
from .homology import deviations, minimal_resolution
from .quaddual import (
    DualComponents,
    DualError,
    NcElement,
    QuadraticDual,
    nc_multiply,
    quadratic_dual,
)
from .scalars import Matrix, make_echelon, nullspace_basis


class PBWCountError(ArithmeticError):
    """Component dimensions disagree with the deviations (PBW count failure)."""


def _generator_element(j: int, field) -> NcElement:
    return {(j,): field.one}


class HomotopyLie:
    """Homotopy Lie data (degrees 2 and 3) of a finite-dimensional Koszul algebra."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        dual: Optional[QuadraticDual] = None,
        *,
        force: bool = False,
    ):
        spec = algebra.spec
        if spec.field.characteristic == 2:
            raise DualError("homotopy Lie extraction requires characteristic != 2")
        self.char3_flag = spec.field.characteristic == 3
        self.algebra = algebra
        self.dual = dual if dual is not None else quadratic_dual(spec)
        if self.dual.spec != spec:
            raise DualError("algebra and dual built from different presentations")
        self.field = spec.field
        self.n = self.dual.n
        self.comps = DualComponents(self.dual)

        res = minimal_resolution(algebra, "k", hom_cap=3)
        self.betti = list(res.betti)[:4]
        self.eps = deviations(self.betti)
        dual_dims = [self.comps.dim(i) for i in range(4)]
        self.koszul_consistent = self.betti == dual_dims
        if not self.koszul_consistent and not force:
            raise PBWCountError(
                "Betti numbers and dual component dimensions disagree "
                f"({self.betti} vs {dual_dims}); Ext is not generated in degree 1, "
                "so the Lie extraction is unsupported (pass force=True to override)"
            )
        self._pi2: Optional[List[Tuple[NcElement, List[object]]]] = None
        self._pi3: Optional[dict] = None

    # ----- degree 2 -----

    def _symmetric_square_elements(self) -> List[NcElement]:
        F = self.field
        out = []
        for i in range(self.n):
            out.append({(i, i): F.one})
        for i in range(self.n):
            for j in range(i + 1, self.n):
                out.append({(i, j): F.one, (j, i): F.one})
        return out

    def pi2(self) -> List[Tuple[NcElement, List[object]]]:
        """Basis of pi^2: pairs (representative element, coords in U_2)."""
        if self._pi2 is not None:
            return self._pi2
        dim2 = self.comps.dim(2)
        ech = make_echelon(self.field, dim2)
        basis = []
        for el in self._symmetric_square_elements():
            vec = self.comps.coords(el, 2)
            row = {c: v for c, v in enumerate(vec) if v != self.field.zero}
            if ech.add_rows([row]) and ech.rank == len(basis) + 1:
                basis.append((el, vec))
        if len(basis) != self.eps[1]:
            raise PBWCountError(
                f"PBW count failure: dim pi^2 = {len(basis)} but eps_2 = {self.eps[1]}"
            )
        self._pi2 = basis
        return basis

    # ----- brackets -----

    def bracket_with_generator(self, u: NcElement, j: int) -> Dict[int, object]:
        """U_3 normal form of [u, T_j] = u T_j - T_j u (u even, T_j odd)."""
        F = self.field
        t = _generator_element(j, F)
        left = nc_multiply(u, t, F)
        right = nc_multiply(t, u, F)
        diff: NcElement = dict(left)
        for w, v in right.items():
            nv = F.of(diff.get(w, F.zero) - v)
            if nv == F.zero:
                diff.pop(w, None)
            else:
                diff[w] = nv
        return self.comps.reduce(diff, 3)

    def bracket_coords(self, u: NcElement, j: int) -> List[object]:
        red = self.bracket_with_generator(u, j)
        basis = self.comps.basis_words(3)
        from .quaddual import word_index

        order = {word_index(w, self.n): i for i, w in enumerate(basis)}
        vec = [self.field.zero] * len(basis)
        for c, v in red.items():
            vec[order[c]] = v
        return vec

    # ----- degree 3 -----

    def pi3(self) -> dict:
        """Basis of pi^3 in U_3 plus the PBW decomposition bookkeeping."""
        if self._pi3 is not None:
            return self._pi3
        F = self.field
        dim3 = self.comps.dim(3)
        ech = make_echelon(F, dim3)

        def add_vec(vec) -> bool:
            row = {c: v for c, v in enumerate(vec) if v != F.zero}
            before = ech.rank
            ech.add_rows([row])
            return ech.rank > before

        # lower PBW subspace: Lambda^3 pi^1 ...
        for a in range(self.n):
            for b in range(a + 1, self.n):
                for c in range(b + 1, self.n):
                    add_vec(self.comps.coords({(a, b, c): F.one}, 3))
        # ... plus pi^1 . pi^2
        pi2 = self.pi2()
        for j in range(self.n):
            t = _generator_element(j, F)
            for el, _ in pi2:
                add_vec(self.comps.coords(nc_multiply(t, el, F), 3))
        lower_dim = ech.rank

        basis: List[Tuple[NcElement, List[object]]] = []
        for el, _ in pi2:
            for j in range(self.n):
                vec = self.bracket_coords(el, j)
                t = _generator_element(j, F)
                rep = nc_multiply(el, t, F)
                rep2: NcElement = dict(rep)
                for w, v in nc_multiply(t, el, F).items():
                    nv = F.of(rep2.get(w, F.zero) - v)
                    if nv == F.zero:
                        rep2.pop(w, None)
                    else:
                        rep2[w] = nv
                if add_vec(vec):
                    basis.append((rep2, vec))
        completed = False
        if len(basis) < self.eps[2]:
            # complete with coordinate vectors transverse to everything so far
            for w in self.comps.basis_words(3):
                el = {w: F.one}
                vec = self.comps.coords(el, 3)
                if add_vec(vec):
                    basis.append((el, vec))
                    completed = True
                if len(basis) >= self.eps[2]:
                    break
        if len(basis) != self.eps[2] or ech.rank != dim3:
            raise PBWCountError(
                f"PBW count failure: dim pi^3 = {len(basis)} (eps_3 = {self.eps[2]}), "
                f"lower PBW dim = {lower_dim}, total = {ech.rank} of {dim3}"
            )
        pbw_ok = comb(self.eps[0], 3) + self.eps[0] * self.eps[1] + self.eps[2] == dim3
        self._pi3 = {
            "basis": basis,
            "lower_dim": lower_dim,
            "completed": completed,
            "pbw_degree3": pbw_ok,
        }
        return self._pi3

    # ----- center -----

    def central_pi2(self) -> Tuple[int, List[List[object]]]:
        """Kernel of the stacked bracket map pi^2 -> U_3^n.

        Returns (dimension, basis vectors in pi^2-basis coordinates).
        """
        pi2 = self.pi2()
        F = self.field
        dim3 = self.comps.dim(3)
        cols = len(pi2)
        rows = []
        for j in range(self.n):
            bracket_cols = [self.bracket_coords(el, j) for el, _ in pi2]
            for r in range(dim3):
                rows.append([bracket_cols[c][r] for c in range(cols)])
        M = Matrix.from_rows(F, rows) if rows else Matrix(F, 0, cols, [])
        kernel = nullspace_basis(M)
        return len(kernel), kernel

    def restricted_center_rank(self, elements: Sequence[NcElement]) -> int:
        """Rank of the centrality system restricted to span of the given
        degree-2 elements; rank == len(elements) means only 0 is central there."""
        F = self.field
        dim3 = self.comps.dim(3)
        rows = []
        for j in range(self.n):
            cols = [self.bracket_coords(el, j) for el in elements]
            for r in range(dim3):
                rows.append([cols[c][r] for c in range(len(elements))])
        M = Matrix.from_rows(F, rows) if rows else Matrix(F, 0, len(elements), [])
        from .scalars import rank as mat_rank

        return mat_rank(M)

    # ----- report -----

    def report(self) -> dict:
        pi2 = self.pi2()
        pi3 = self.pi3()
        center_dim, _ = self.central_pi2()
        out = {
            "pi2_dim": len(pi2),
            "pi3_dim": len(pi3["basis"]),
            "center_dim": center_dim,
            "verdict": (
                "obstructed: no embedded deformation"
                if center_dim == 0
                else "unobstructed at this test"
            ),
            "cross_checks": {
                "betti": self.betti,
                "deviations": list(self.eps),
                "pbw_degree3": pi3["pbw_degree3"],
            },
        }
        if self.char3_flag:
            out["warnings"] = ["characteristic 3: divided-power normalization unverified"]
        return out


SpecInput = Union[AlgebraSpec, Tuple[AlgebraSpec, AlgebraSpec]]


def embedded_deformation_obstruction(specs: SpecInput) -> dict:
    """Degree-2-center obstruction report for one algebra or a tensor pair.

    For a pair (A, B) the center of the tensor product splits as the product
    of the factor centers, so each factor is tested separately and the
    dimensions add.
    """
    if isinstance(specs, AlgebraSpec):
        lie = HomotopyLie(build_algebra(specs))
        rep = lie.report()
        rep["mode"] = "direct"
        return rep
    spec_a, spec_b = specs
    rep_a = HomotopyLie(build_algebra(spec_a)).report()
    rep_b = HomotopyLie(build_algebra(spec_b)).report()
    center = rep_a["center_dim"] + rep_b["center_dim"]
    return {
        "mode": "tensor-pair",
        "factors": [rep_a, rep_b],
        "center_dim": center,
        "verdict": (
            "obstructed: no embedded deformation"
            if center == 0
            else "unobstructed at this test"
        ),
    }
