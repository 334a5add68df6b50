"""Generic grade-3 Pfaffian complexes   0 -> P -> P^d -> P^d -> P -> 0.

For odd d >= 3 and the generic skew-symmetric matrix tau = (t_{ij}), the
vector sigma of signed submaximal Pfaffians satisfies tau.sigma = 0 and
sigma^T.tau = 0 identically, so

    0 -> P --sigma--> P^d --tau--> P^d --sigma^T--> P -> 0

is a complex of free modules over the polynomial ring P on the t_{ij}.
Specializing the entries t_{ij} to homogeneous elements of a graded quotient
algebra yields a finite window of a FreeComplex there; being a complex is
preserved by any ring map, and the composites are re-verified anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from .algebra import GradedAlgebra
from .homology import FreeModule, ModuleMap
from .polyring import (
    PolyContext,
    Polynomial,
    SkewMatrix,
    pfaffian,
    poly_matrix_mul,
    submax_pfaffians,
)
from .totalacyclicity import ComplexError, FreeComplex

SIZE_CAP = 9


class PfaffianError(ValueError):
    pass


@dataclass
class BEComplexData:
    """Generic Pfaffian complex data over the polynomial context on t_{ij}."""

    d: int
    tau: SkewMatrix
    sigma: List[Polynomial]          # d x 1
    sigma_map: List[List[Polynomial]]   # d x 1 matrix
    tau_map: List[List[Polynomial]]     # d x d matrix
    sigma_star: List[List[Polynomial]]  # 1 x d matrix

    @property
    def context(self) -> PolyContext:
        return self.tau.context

    @property
    def ranks(self) -> Tuple[int, int, int, int]:
        return (1, self.d, self.d, 1)


def _all_zero(mat) -> bool:
    return all(e.is_zero() for row in mat for e in row)


def generic_be_complex(d: int, field=None) -> BEComplexData:
    if d % 2 == 0 or d < 3:
        raise PfaffianError(f"size must be odd and at least 3, got {d}")
    if d > SIZE_CAP:
        raise PfaffianError(f"size {d} exceeds hard cap {SIZE_CAP}")
    if field is None:
        tau = SkewMatrix.generic(d)
    else:
        tau = SkewMatrix.generic(d, field=field)
    sigma = submax_pfaffians(tau)
    sigma_map = [[s] for s in sigma]
    tau_map = [[tau.entry(i, j) for j in range(d)] for i in range(d)]
    sigma_star = [list(sigma)]
    data = BEComplexData(d, tau, sigma, sigma_map, tau_map, sigma_star)
    if not _all_zero(poly_matrix_mul(tau_map, sigma_map)):
        raise PfaffianError("tau . sigma != 0 (sign convention broken)")
    if not _all_zero(poly_matrix_mul(sigma_star, tau_map)):
        raise PfaffianError("sigma^T . tau != 0 (sign convention broken)")
    return data


def verify_be(data: BEComplexData) -> dict:
    """Re-verify the complex identities and report structure."""
    comp1 = poly_matrix_mul(data.tau_map, data.sigma_map)
    comp2 = poly_matrix_mul(data.sigma_star, data.tau_map)
    composites_zero = _all_zero(comp1) and _all_zero(comp2)
    nontrivial = any(not s.is_zero() for s in data.sigma)
    term_counts = sorted({len(s.terms) for s in data.sigma if not s.is_zero()})
    return {
        "d": data.d,
        "composites_zero": composites_zero,
        "sigma_nonzero": nontrivial,
        "ranks": list(data.ranks),
        "pfaffian_term_counts": term_counts,
        "verdict": "pass" if composites_zero and nontrivial else "fail",
    }


Assignment = Dict[Tuple[int, int], Polynomial]


def specialize(
    data: BEComplexData,
    assignment: Assignment,
    target: GradedAlgebra,
) -> FreeComplex:
    """Map t_{ij} |-> assignment[(i, j)] (0-based i < j) into a graded
    quotient algebra and return the specialized four-term complex window
    C_3 -> C_2 -> C_1 -> C_0 with re-verified composites.

    All images must be homogeneous of one common degree e >= 1 (zero images
    are allowed);  generator degrees are assigned so every map is homogeneous.
    """
    ctx = data.context
    tctx = target.context
    d = data.d
    images = []
    degs = set()
    for i in range(d):
        for j in range(i + 1, d):
            if (i, j) not in assignment:
                raise PfaffianError(f"assignment missing entry ({i}, {j})")
            p = assignment[(i, j)]
            if p.context != tctx:
                raise PfaffianError(f"image of t_({i},{j}) not in the target context")
            if not p.is_zero():
                if not p.is_homogeneous():
                    raise PfaffianError(f"image of t_({i},{j}) is not homogeneous")
                degs.add(p.degree())
    if len(degs) > 1:
        raise PfaffianError(f"images have mixed degrees {sorted(degs)}")
    e = degs.pop() if degs else 1
    # substitution order must follow the generic context's variable order
    by_name = {}
    for i in range(d):
        for j in range(i + 1, d):
            by_name[f"t{i + 1}{j + 1}"] = assignment[(i, j)]
    images = [by_name[name] for name in ctx.names]

    def spec_mat(mat):
        return [[entry.substitute(images) for entry in row] for row in mat]

    s_tau = spec_mat(data.tau_map)
    s_sigma = spec_mat(data.sigma_map)
    s_sigma_star = spec_mat(data.sigma_star)
    s = e * (d - 1) // 2   # degree of the specialized Pfaffian entries
    C0 = FreeModule(target, (0,))
    C1 = FreeModule(target, (s,) * d)
    C2 = FreeModule(target, (s + e,) * d)
    C3 = FreeModule(target, (2 * s + e,))
    maps = [
        ModuleMap(C1, C0, s_sigma_star),
        ModuleMap(C2, C1, s_tau),
        ModuleMap(C3, C2, s_sigma),
    ]
    # re-verify composites in the target algebra
    for k in range(len(maps) - 1):
        comp = maps[k].compose(maps[k + 1])
        if not comp.is_zero():
            raise PfaffianError(f"specialized composite at position {k + 1} nonzero")
    return FreeComplex(target, 0, [C0, C1, C2, C3], maps)
