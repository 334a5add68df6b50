"""Finite-dimensional standard-graded quotient algebras k[x1..xn]/I.

An algebra is built degree by degree: in each degree d the span of all
monomial multiples of the relations is row-reduced inside the monomial
coordinate space, the non-pivot monomials survive as the degree-d basis,
and every monomial gets a stored normal-form class.  Construction fails
if the quotient is not Artinian within the degree cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement

from .scalars import QQ, GFEchelon, SparseEchelon, make_echelon, echelon_nullspace
from .polyring import Polynomial, PolyContext, parse_poly, _grlex_key


class AlgebraError(ValueError):
    pass


class NotFiniteDimensional(AlgebraError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"not finite-dimensional within cap: nonzero at degree {degree}")


@dataclass(frozen=True)
class AlgebraSpec:
    """Field, ordered degree-1 variables, homogeneous relations of degree >= 2."""

    field: object
    variables: tuple
    relations: tuple  # of Polynomial over the implied context

    def __post_init__(self):
        ctx = self.context
        for r in self.relations:
            if r.context != ctx:
                raise AlgebraError("relation context does not match spec variables")
            if r.is_zero():
                raise AlgebraError("zero relation")
            if not r.is_homogeneous():
                raise AlgebraError(f"inhomogeneous relation: {r}")
            if r.degree() < 2:
                raise AlgebraError(f"relation of degree < 2: {r}")

    @property
    def context(self):
        return PolyContext(self.field, self.variables)

    @classmethod
    def from_strings(cls, field, variables, relation_strings):
        ctx = PolyContext(field, variables)
        rels = tuple(parse_poly(s, ctx) for s in relation_strings)
        return cls(field, tuple(variables), rels)

    def with_field(self, new_field):
        """Same presentation, coefficients mapped into another field."""
        ctx = PolyContext(new_field, self.variables)
        rels = tuple(
            Polynomial(ctx, {e: new_field.of(c) for e, c in r.terms.items()})
            for r in self.relations
        )
        return AlgebraSpec(new_field, self.variables, rels)


def tensor(a: AlgebraSpec, b: AlgebraSpec) -> AlgebraSpec:
    """Tensor product over k, realized as disjoint-variable union."""
    if a.field != b.field:
        raise AlgebraError("field mismatch")
    clash = set(a.variables) & set(b.variables)
    if clash:
        raise AlgebraError(f"variable name collision: {sorted(clash)}")
    variables = a.variables + b.variables
    ctx = PolyContext(a.field, variables)
    rels = tuple(r.map_context(ctx) for r in a.relations + b.relations)
    return AlgebraSpec(a.field, variables, rels)


def monomials(nvars: int, degree: int):
    """Exponent tuples of the given total degree, graded-lex descending."""
    if degree == 0:
        return [(0,) * nvars]
    if nvars == 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grlex_key, reverse=True)
    return out


class GradedAlgebra:
    """Quotient algebra with per-degree monomial bases and normal forms."""

    def __init__(self, spec: AlgebraSpec, degree_cap: int = 12):
        if degree_cap < 2:
            raise AlgebraError("degree_cap must be >= 2")
        self.spec = spec
        self.context = spec.context
        self.field = spec.field
        self.degree_cap = degree_cap
        self.nvars = len(spec.variables)
        self._basis = []        # degree -> list of exponent tuples
        self._basis_index = []  # degree -> {exp: basis position}
        self._classes = []      # degree -> {exp: {basis position: coef}}
        self._relation_rank = []
        self._var_maps = {}
        self._build()

    def _build(self):
        f = self.field
        # degree 0 and 1 are free: relations have degree >= 2
        self._push_free_degree(0)
        if self.nvars:
            self._push_free_degree(1)
        d = 2
        while True:
            mons = monomials(self.nvars, d)
            if not mons:
                break
            col = {e: i for i, e in enumerate(mons)}
            ech = make_echelon(f, len(mons))
            rows = self._relation_span_rows(d, col)
            ech.add_rows(rows, stop_rank=len(mons))
            self._relation_rank.append(ech.rank)
            basis = [e for i, e in enumerate(mons) if i not in set(ech.pivots)]
            self._store_degree(d, mons, col, basis, ech)
            if not basis:
                break
            if d >= self.degree_cap:
                raise NotFiniteDimensional(d)
            d += 1
        self.top = len(self._basis) - 1
        while self.top > 0 and not self._basis[self.top]:
            self.top -= 1

    def _push_free_degree(self, d):
        mons = monomials(self.nvars, d)
        self._basis.append(mons)
        self._basis_index.append({e: i for i, e in enumerate(mons)})
        self._classes.append({e: {i: self.field.one} for i, e in enumerate(mons)})

    def _relation_span_rows(self, d, col):
        f = self.field
        for rel in self.spec.relations:
            e = rel.degree()
            if e > d:
                continue
            for m in monomials(self.nvars, d - e):
                row = {}
                for exp, c in rel.terms.items():
                    prod = tuple(a + b for a, b in zip(exp, m))
                    row[col[prod]] = f.of(row.get(col[prod], f.zero) + c)
                yield {c_: v for c_, v in row.items() if v != f.zero}

    def _store_degree(self, d, mons, col, basis, ech):
        f = self.field
        bindex = {e: i for i, e in enumerate(basis)}
        classes = {}
        pivpos = {p: i for i, p in enumerate(ech.pivots)}
        for e in mons:
            c = col[e]
            if c in pivpos:
                # pivot monomial: class is minus the free part of its RREF row
                cls = {}
                if isinstance(ech, SparseEchelon):
                    row = ech.pivrows[c]
                    for cc, vv in row.items():
                        if cc != c:
                            cls[bindex[mons[cc]]] = f.of(-vv)
                else:
                    row = ech.E[pivpos[c]]
                    for cc in row.nonzero()[0]:
                        cc = int(cc)
                        if cc != c:
                            cls[bindex[mons[cc]]] = int(-row[cc]) % ech.p
                classes[e] = cls
            else:
                classes[e] = {bindex[e]: f.one}
        self._basis.append(basis)
        self._basis_index.append(bindex)
        self._classes.append(classes)

    # -- queries ----------------------------------------------------------

    def dim(self, d: int) -> int:
        if 0 <= d < len(self._basis):
            return len(self._basis[d])
        return 0

    def basis(self, d: int):
        if 0 <= d < len(self._basis):
            return self._basis[d]
        return []

    def hilbert(self):
        return [self.dim(d) for d in range(self.top + 1)]

    def total_dim(self):
        return sum(self.hilbert())

    def monomial_class(self, d: int, exp):
        """Class of a degree-d monomial as {basis position: coef}."""
        if d >= len(self._basis):
            return {}
        return self._classes[d].get(exp, {})

    def class_of_product(self, poly: Polynomial, exp=None):
        """Class of poly * monomial(exp) as {basis position: coef} in the
        appropriate degree.  poly must be homogeneous."""
        f = self.field
        if poly.is_zero():
            return 0, {}
        d = poly.degree() + (sum(exp) if exp else 0)
        out = {}
        for e, c in poly.terms.items():
            pe = tuple(a + b for a, b in zip(e, exp)) if exp else e
            for i, v in self.monomial_class(d, pe).items():
                nv = f.of(out.get(i, f.zero) + c * v)
                if nv == f.zero:
                    out.pop(i, None)
                else:
                    out[i] = nv
        return d, out

    def normal_form(self, poly: Polynomial):
        """Graded coordinate vector of poly's image: {degree: {pos: coef}}."""
        f = self.field
        if poly.context.names != self.context.names:
            poly = poly.map_context(self.context)
        by_deg = {}
        for e, c in poly.terms.items():
            by_deg.setdefault(sum(e), {})[e] = c
        out = {}
        for d, terms in sorted(by_deg.items()):
            vec = {}
            for e, c in terms.items():
                for i, v in self.monomial_class(d, e).items():
                    nv = f.of(vec.get(i, f.zero) + c * v)
                    if nv == f.zero:
                        vec.pop(i, None)
                    else:
                        vec[i] = nv
            if vec:
                out[d] = vec
        return out

    def is_zero_in_algebra(self, poly: Polynomial) -> bool:
        return not self.normal_form(poly)

    def basis_poly(self, d, i):
        """The i-th degree-d basis monomial as a Polynomial."""
        exp = self._basis[d][i]
        return Polynomial(self.context, {exp: self.field.one})

    def var_map(self, d: int, i: int):
        """Multiplication by x_i as column-sparse map B_d -> B_{d+1}:
        a list over B_d positions of {B_{d+1} position: coef}."""
        key = (d, i)
        if key not in self._var_maps:
            cols = []
            ei = tuple(1 if j == i else 0 for j in range(self.nvars))
            for exp in self._basis[d]:
                pe = tuple(a + b for a, b in zip(exp, ei))
                cols.append(self.monomial_class(d + 1, pe))
            self._var_maps[key] = cols
        return self._var_maps[key]

    def socle(self):
        """Annihilator of the maximal ideal: (per-degree basis, dim, verdict)."""
        f = self.field
        socle_vectors = []   # (degree, {pos: coef})
        for d in range(self.top + 1):
            nd = self.dim(d)
            if nd == 0:
                continue
            if self.nvars == 0 or self.dim(d + 1) == 0:
                # nothing in degree d+1, so multiplication by every variable
                # is identically zero here
                for j in range(nd):
                    socle_vectors.append((d, {j: f.one}))
                continue
            # rows: for each variable i and each B_{d+1} position, a linear
            # condition on B_d coordinates
            rows = {}
            for i in range(self.nvars):
                cols = self.var_map(d, i)
                for j, cls in enumerate(cols):
                    for pos, coef in cls.items():
                        rows.setdefault((i, pos), {})[j] = coef
            ech = make_echelon(f, nd)
            ech.add_rows(rows.values(), stop_rank=nd)
            for v in echelon_nullspace(ech):
                socle_vectors.append((d, v))
        dim = len(socle_vectors)
        return SocleReport(socle_vectors, dim, dim == 1)

    def __repr__(self):
        return (f"GradedAlgebra({self.field}, vars={len(self.spec.variables)}, "
                f"rels={len(self.spec.relations)}, hilbert={self.hilbert()})")


@dataclass
class SocleReport:
    basis: list
    dimension: int
    gorenstein: bool


def build_algebra(spec: AlgebraSpec, degree_cap: int = 12) -> GradedAlgebra:
    return GradedAlgebra(spec, degree_cap)


def effective_relation_ranks(algebra: GradedAlgebra):
    """Rank of the relation span per degree (degree 2 upward)."""
    return list(algebra._relation_rank)
