"""tacalc: exact-arithmetic calculator for finite-dimensional graded local
algebras — minimal free resolutions, deviations, quadratic duals, homotopy
Lie components with the degree-2 centrality test, tensor constructions with
Gorenstein verdicts, grade-3 Pfaffian complexes, and total-acyclicity /
totally-reflexive checkers."""

__version__ = "1.0.0"

from .scalars import QQ, DEFAULT_PRIME, PrimeField, Rationals, field_from_name
from .polyring import ParseError, PolyContext, Polynomial, parse_poly
from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedAlgebra,
    NotFiniteDimensional,
    build_algebra,
    tensor,
)
from .homology import (
    CapExceeded,
    FreeModule,
    ModuleMap,
    ModulePresentation,
    Resolution,
    deviations,
    ext_dims,
    hom_dual,
    minimal_resolution,
    presentation_of_k,
)
from .quaddual import (
    DualComponents,
    DualError,
    QuadraticDual,
    coefficient_matrix,
    koszul_smoke,
    nc_component,
    quadratic_dual,
)
from .homotopylie import (
    HomotopyLie,
    PBWCountError,
    embedded_deformation_obstruction,
)
from .totalacyclicity import (
    ComplexError,
    FreeComplex,
    acyclicity,
    base_change,
    check_complex,
    syzygy,
    total_acyclicity,
    totally_reflexive_check,
)
from .pfaffcomplex import (
    BEComplexData,
    PfaffianError,
    generic_be_complex,
    specialize,
    verify_be,
)
