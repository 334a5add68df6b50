"""Graded free modules, minimal free resolutions, Betti numbers,
deviations, Hom-duals with biduality, and Ext over a GradedAlgebra.

Everything is computed one internal degree at a time: over an Artinian
graded base every graded piece is a finite-dimensional k-linear problem,
so no Groebner machinery is needed.  Minimal generators of kernels are
extracted as a complement of m*K inside K, in RREF pivot order, which
makes all bases deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .scalars import make_echelon, kernel_of_rows, echelon_nullspace
from .polyring import Polynomial
from .algebra import GradedAlgebra


class CapExceeded(RuntimeError):
    def __init__(self, kind, value):
        self.kind = kind
        self.value = value
        super().__init__(f"{kind} cap exceeded (needed {value})")


@dataclass(frozen=True)
class FreeModule:
    """Finite free module with generator internal degrees."""

    algebra: GradedAlgebra
    degrees: tuple

    @property
    def rank(self):
        return len(self.degrees)

    def piece_offsets(self, t: int):
        """Flattened basis of the degree-t piece: returns (offsets, total).

        Generator j contributes a block of dim A_{t - degrees[j]} coordinates
        starting at offsets[j].
        """
        offsets = []
        total = 0
        A = self.algebra
        for g in self.degrees:
            offsets.append(total)
            total += A.dim(t - g)
        return offsets, total

    def piece_dim(self, t: int):
        return self.piece_offsets(t)[1]


class ModuleMap:
    """Map of graded free modules given by a matrix of homogeneous
    polynomials; entry (i, j) has degree source.degrees[j] - target.degrees[i]."""

    def __init__(self, source: FreeModule, target: FreeModule, entries):
        if source.algebra is not target.algebra:
            raise ValueError("source and target over different algebras")
        self.algebra = source.algebra
        self.source = source
        self.target = target
        self.entries = entries  # entries[i][j], i target index, j source index
        if len(entries) != target.rank or any(len(r) != source.rank for r in entries):
            raise ValueError("entry grid does not match ranks")
        for i in range(target.rank):
            for j in range(source.rank):
                e = entries[i][j]
                if e.is_zero():
                    continue
                want = source.degrees[j] - target.degrees[i]
                if not e.is_homogeneous() or e.degree() != want:
                    raise ValueError(
                        f"entry ({i},{j}) not homogeneous of degree {want}: {e}")

    def is_minimal(self) -> bool:
        """True iff every entry lies in the maximal ideal."""
        A = self.algebra
        for row in self.entries:
            for e in row:
                nf = A.normal_form(e)
                if 0 in nf:
                    return False
        return True

    def is_zero(self) -> bool:
        A = self.algebra
        return all(A.is_zero_in_algebra(e) for row in self.entries for e in row)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other (other applied first)."""
        if other.target.degrees != self.source.degrees:
            raise ValueError("rank mismatch in composition")
        ctx = self.algebra.context
        ent = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                s = ctx.zero()
                for k in range(self.source.rank):
                    s = s + self.entries[i][k] * other.entries[k][j]
                row.append(s)
            ent.append(row)
        return ModuleMap(other.source, self.target, ent)

    def piece_rows(self, t: int):
        """Rows of the degree-t matrix piece (target coords x source coords),
        as sparse dicts keyed by source flat position."""
        A = self.algebra
        soff, sdim = self.source.piece_offsets(t)
        toff, tdim = self.target.piece_offsets(t)
        rows = [dict() for _ in range(tdim)]
        f = A.field
        for j in range(self.source.rank):
            gj = self.source.degrees[j]
            for pos, bexp in enumerate(A.basis(t - gj)):
                col = soff[j] + pos
                for i in range(self.target.rank):
                    e = self.entries[i][j]
                    if e.is_zero():
                        continue
                    _, cls = A.class_of_product(e, bexp)
                    for p, v in cls.items():
                        rows[toff[i] + p][col] = v
        return rows, sdim, tdim

    def piece_rank(self, t: int):
        rows, sdim, _ = self.piece_rows(t)
        ech = make_echelon(self.algebra.field, sdim)
        ech.add_rows(r for r in rows if r)
        return ech.rank

    def kernel_piece(self, t: int):
        """Canonical basis of ker on the degree-t piece (sparse dicts over
        source flat coordinates)."""
        rows, sdim, _ = self.piece_rows(t)
        return kernel_of_rows((r for r in rows if r), sdim, self.algebra.field)


def transpose_sparse(rows, ncols):
    cols = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for c, v in r.items():
            cols[c][i] = v
    return cols


def shift_by_var(F: FreeModule, t: int, vec: dict, i: int) -> dict:
    """Image of a degree-t element of F under multiplication by x_i."""
    A = F.algebra
    f = A.field
    soff, _ = F.piece_offsets(t)
    toff, _ = F.piece_offsets(t + 1)
    # map flat position back to (gen, pos)
    out = {}
    for flat, coef in vec.items():
        j = _gen_of_flat(F, t, soff, flat)
        pos = flat - soff[j]
        for p, v in A.var_map(t - F.degrees[j], i)[pos].items():
            key = toff[j] + p
            nv = f.of(out.get(key, f.zero) + coef * v)
            if nv == f.zero:
                out.pop(key, None)
            else:
                out[key] = nv
    return out


def _gen_of_flat(F, t, offsets, flat):
    j = len(offsets) - 1
    while offsets[j] > flat:
        j -= 1
    return j


def coords_to_columns(F: FreeModule, t: int, vecs):
    """Convert flat coordinate vectors in the degree-t piece of F into
    polynomial columns (one entry per generator of F)."""
    A = F.algebra
    ctx = A.context
    offsets, _ = F.piece_offsets(t)
    cols = []
    for vec in vecs:
        col = [ctx.zero() for _ in range(F.rank)]
        for flat, coef in vec.items():
            j = _gen_of_flat(F, t, offsets, flat)
            pos = flat - offsets[j]
            exp = A.basis(t - F.degrees[j])[pos]
            col[j] = col[j] + Polynomial(ctx, {exp: A.field.of(coef)})
        cols.append(col)
    return cols


@dataclass
class ModulePresentation:
    """Module given as cokernel of a map of graded free modules."""

    algebra: GradedAlgebra
    gen_degrees: tuple
    relations: list  # homogeneous columns: list of [Polynomial] * len(gen_degrees)

    def relation_degree(self, col):
        degs = set()
        for j, e in enumerate(col):
            if not e.is_zero():
                degs.add(e.degree() + self.gen_degrees[j])
        if len(degs) > 1:
            raise ValueError("non-homogeneous module presentation")
        return degs.pop() if degs else None


def presentation_of_k(A: GradedAlgebra) -> ModulePresentation:
    ctx = A.context
    cols = []
    for i in range(A.nvars):
        cols.append([ctx.var(ctx.names[i])])
    return ModulePresentation(A, (0,), cols)


def free_presentation(A: GradedAlgebra, degrees) -> ModulePresentation:
    return ModulePresentation(A, tuple(degrees), [])


class Resolution:
    """Minimal graded free resolution, built step by step."""

    def __init__(self, algebra, presentation, free_modules, maps):
        self.algebra = algebra
        self.presentation = presentation
        self.free_modules = free_modules   # F_0 .. F_n
        self.maps = maps                   # maps[i]: F_{i+1} -> F_i
        self.betti = [fm.rank for fm in free_modules]

    def graded_betti(self):
        out = {}
        for i, fm in enumerate(self.free_modules):
            for g in fm.degrees:
                out[(i, g)] = out.get((i, g), 0) + 1
        return out

    def poincare(self):
        return list(self.betti)

    def verify(self, check_exactness=True):
        """Composites zero, minimality, and (optionally) exactness of every
        interior spot in every internal degree."""
        A = self.algebra
        for i in range(len(self.maps) - 1):
            if not self.maps[i].compose(self.maps[i + 1]).is_zero():
                return False, f"composite {i} nonzero"
        for i, m in enumerate(self.maps):
            if not m.is_minimal():
                return False, f"map {i} not minimal"
        if check_exactness:
            for i in range(len(self.maps) - 1):
                outer, inner = self.maps[i], self.maps[i + 1]
                if not outer.source.rank:
                    continue
                lo = min(outer.source.degrees)
                hi = max(outer.source.degrees) + A.top
                for t in range(lo, hi + 1):
                    ker = outer.kernel_piece(t)
                    if len(ker) != inner.piece_rank(t):
                        return False, f"not exact at step {i+1}, degree {t}"
        return True, "ok"


def _minimal_generators_of_submodule(F, generators, int_cap):
    """Minimal homogeneous generators of the submodule of F generated by the
    given (degree, flat-vector) elements.  Returns [(degree, vec), ...]."""
    A = F.algebra
    if not generators:
        return []
    by_deg = {}
    for d, v in generators:
        by_deg.setdefault(d, []).append(v)
    tmin = min(by_deg)
    tmax = max(F.degrees) + A.top
    mingens = []
    prev_span = []  # basis of the span piece at t-1
    for t in range(tmin, tmax + 1):
        _, sdim = F.piece_offsets(t)
        ech = make_echelon(A.field, sdim)
        span_basis = []
        for v in prev_span:
            for i in range(A.nvars):
                w = shift_by_var(F, t - 1, v, i)
                if w and ech.add_row(w):
                    span_basis.append(w)
        for v in by_deg.get(t, []):
            if ech.add_row(v):
                if t > int_cap:
                    raise CapExceeded("internal degree", t)
                mingens.append((t, v))
                span_basis.append(v)
        prev_span = span_basis
    return mingens


def resolution_step(dmap: ModuleMap, int_cap):
    """Minimal generators of ker(dmap), returned as (F_new, new_map)."""
    A = dmap.algebra
    F = dmap.source
    tmin = min(F.degrees)
    tmax = max(F.degrees) + A.top
    gens = []   # (degree, vec)
    kprev = []
    for t in range(tmin, tmax + 1):
        kt = dmap.kernel_piece(t)
        if kt:
            _, sdim = F.piece_offsets(t)
            ech = make_echelon(A.field, sdim)
            for v in kprev:
                for i in range(A.nvars):
                    w = shift_by_var(F, t - 1, v, i)
                    if w:
                        ech.add_row(w)
            for v in kt:
                if ech.add_row(v):
                    if t > int_cap:
                        raise CapExceeded("internal degree", t)
                    gens.append((t, v))
        kprev = kt
    degrees = tuple(d for d, _ in gens)
    cols = []
    for d, v in gens:
        cols.append(coords_to_columns(F, d, [v])[0])
    Fnew = FreeModule(A, degrees)
    entries = [[cols[c][i] for c in range(len(cols))] for i in range(F.rank)]
    return Fnew, ModuleMap(Fnew, F, entries)


def minimal_resolution(A: GradedAlgebra, M="k", hom_cap: int = 4, int_cap: int = 10):
    """Minimal free resolution of M (default: the residue field) out to
    homological degree hom_cap."""
    if hom_cap < 1:
        raise ValueError("hom_cap must be >= 1")
    pres = presentation_of_k(A) if M == "k" else M
    F0 = FreeModule(A, tuple(pres.gen_degrees))
    free_modules = [F0]
    maps = []
    # first syzygy: submodule of F0 generated by the relation columns
    rel_elems = []
    for col in pres.relations:
        d = pres.relation_degree(col)
        if d is None:
            continue
        vec = {}
        offsets, _ = F0.piece_offsets(d)
        for j, e in enumerate(col):
            if e.is_zero():
                continue
            _, cls = A.class_of_product(e, None)
            for p, v in cls.items():
                vec[offsets[j] + p] = v
        if vec:
            rel_elems.append((d, vec))
    mingens = _minimal_generators_of_submodule(F0, rel_elems, int_cap)
    degrees = tuple(d for d, _ in mingens)
    cols = [coords_to_columns(F0, d, [v])[0] for d, v in mingens]
    F1 = FreeModule(A, degrees)
    entries = [[cols[c][i] for c in range(len(cols))] for i in range(F0.rank)]
    maps.append(ModuleMap(F1, F0, entries))
    free_modules.append(F1)
    for step in range(2, hom_cap + 1):
        if free_modules[-1].rank == 0:
            break
        Fnew, m = resolution_step(maps[-1], int_cap)
        free_modules.append(Fnew)
        maps.append(m)
        if Fnew.rank == 0:
            break
    return Resolution(A, pres, free_modules, maps)


def poincare(res: Resolution):
    """Truncated Poincare series coefficients b_0, b_1, ..."""
    return res.poincare()


def deviations(betti):
    """(eps_1, eps_2, eps_3) from the first four Betti numbers of k."""
    if len(betti) < 4:
        raise ValueError("need Betti numbers b_0..b_3")
    b1, b2, b3 = betti[1], betti[2], betti[3]
    e1 = b1
    e2 = b2 - comb(e1, 2)
    e3 = b3 - e2 * e1 - comb(e1, 3)
    return (e1, e2, e3)


# --------------------------------------------------------------------------
# Graded module representations (finite k-vector-space models with variable
# action), used for Hom-duals and biduality.


class GradedModuleRep:
    """dims: degree -> k-dimension; action(i, d): column-sparse matrix
    M_d -> M_{d+1} as a list over source positions of {target pos: coef}."""

    def __init__(self, algebra, dims, action):
        self.algebra = algebra
        self.dims = {d: n for d, n in dims.items() if n}
        self.action = action

    def degree_range(self):
        if not self.dims:
            return range(0)
        return range(min(self.dims), max(self.dims) + 1)

    def act(self, i, d):
        return self.action.get((i, d), [dict() for _ in range(self.dims.get(d, 0))])

    def total_dim(self):
        return sum(self.dims.values())


def rep_of_presentation(pres: ModulePresentation) -> GradedModuleRep:
    """Vector-space model of coker(relations) with its variable action."""
    A = pres.algebra
    f = A.field
    F0 = FreeModule(A, tuple(pres.gen_degrees))
    rel_elems = []
    for col in pres.relations:
        d = pres.relation_degree(col)
        if d is None:
            continue
        offsets, _ = F0.piece_offsets(d)
        vec = {}
        for j, e in enumerate(col):
            if e.is_zero():
                continue
            _, cls = A.class_of_product(e, None)
            for p, v in cls.items():
                vec[offsets[j] + p] = v
        rel_elems.append((d, vec))
    tmin = min(F0.degrees) if F0.rank else 0
    tmax = (max(F0.degrees) + A.top) if F0.rank else -1
    by_deg = {}
    for d, v in rel_elems:
        by_deg.setdefault(d, []).append(v)
    # echelon of the relation-submodule piece per degree
    dims = {}
    free_cols = {}
    echs = {}
    prev = []
    for t in range(tmin, tmax + 1):
        _, sdim = F0.piece_offsets(t)
        ech = make_echelon(f, sdim)
        span = []
        for v in prev:
            for i in range(A.nvars):
                w = shift_by_var(F0, t - 1, v, i)
                if w and ech.add_row(w):
                    span.append(w)
        for v in by_deg.get(t, []):
            if ech.add_row(v):
                span.append(v)
        prev = span
        pivset = set(ech.pivots)
        fc = [c for c in range(sdim) if c not in pivset]
        dims[t] = len(fc)
        free_cols[t] = fc
        echs[t] = ech
    action = {}
    for t in range(tmin, tmax):
        fc = free_cols.get(t, [])
        if not fc:
            continue
        cols = []
        fc_next = free_cols.get(t + 1, [])
        fcpos = {c: i for i, c in enumerate(fc_next)}
        for i in range(A.nvars):
            coli = []
            for c in fc:
                w = shift_by_var(F0, t, {c: f.one}, i)
                red = _reduce_to_free(echs[t + 1], w, f)
                coli.append({fcpos[cc]: vv for cc, vv in red.items()})
            action[(i, t)] = coli
    return GradedModuleRep(A, dims, action)


def _reduce_to_free(ech, vec, f):
    red = ech.reduce(vec)
    if isinstance(red, dict):
        return red
    # numpy row from GFEchelon
    out = {}
    for c in red.nonzero()[0]:
        out[int(c)] = int(red[c])
    return out


class DualData:
    """Hom(M, A) of a graded module rep, with enough data to evaluate."""

    def __init__(self, rep: GradedModuleRep):
        A = rep.algebra
        f = A.field
        self.rep_in = rep
        self.algebra = A
        if not rep.dims:
            self.dual_rep = GradedModuleRep(A, {}, {})
            self.blocks = {}
            self.free_cols = {}
            self.basis = {}
            return
        dmin, dmax = min(rep.dims), max(rep.dims)
        tmin, tmax = -dmax, A.top - dmin
        # flattened variable layout per dual degree t:
        # for each d with M_d != 0 and A_{d+t} != 0, a block of
        # dim M_d * dim A_{d+t} unknowns phi_d[(m, a)]
        self.blocks = {}
        self.basis = {}
        self.free_cols = {}
        dual_dims = {}
        for t in range(tmin, tmax + 1):
            layout = {}
            total = 0
            for d in sorted(rep.dims):
                ad = A.dim(d + t)
                if ad:
                    layout[d] = (total, ad)
                    total += rep.dims[d] * ad
            if total == 0:
                continue
            rows = []
            # A-linearity: x_i . phi_d = phi_{d+1}(x_i . -) componentwise in
            # A_{d+t+1}; when M_{d+1} = 0 the right side is zero and the
            # condition still constrains phi_d
            for d in sorted(layout):
                off, ad = layout[d]
                adn = A.dim(d + t + 1)
                if not adn:
                    continue
                for i in range(A.nvars):
                    vm = A.var_map(d + t, i)
                    act = rep.act(i, d) if (d + 1) in rep.dims else None
                    for m in range(rep.dims[d]):
                        eq = [dict() for _ in range(adn)]
                        for a in range(ad):
                            for p, v in vm[a].items():
                                eq[p][off + m * ad + a] = v
                        if act is not None and (d + 1) in layout:
                            offn, _ = layout[d + 1]
                            for mm, coef in act[m].items():
                                for a in range(adn):
                                    col = offn + mm * adn + a
                                    eq[a][col] = f.of(eq[a].get(col, f.zero) - coef)
                        rows.extend(r for r in eq if r)
            ech = make_echelon(f, total)
            ech.add_rows(rows)
            basis = echelon_nullspace(ech)
            if basis:
                pivset = set(ech.pivots)
                dual_dims[t] = len(basis)
                self.blocks[t] = layout
                self.basis[t] = basis
                self.free_cols[t] = [c for c in range(total) if c not in pivset]
        action = {}
        for t in sorted(self.basis):
            if (t + 1) not in self.basis:
                continue
            for i in range(rep.algebra.nvars):
                coli = []
                for v in self.basis[t]:
                    w = self._act_var(t, v, i)
                    coli.append(self._coords(t + 1, w))
                action[(i, t)] = coli
        self.dual_rep = GradedModuleRep(A, dual_dims, action)

    def _coords(self, t, flatvec):
        """Coordinates of a kernel-space vector in the canonical basis."""
        fcs = self.free_cols.get(t, [])
        f = self.algebra.field
        return {k: flatvec[c] for k, c in enumerate(fcs) if flatvec.get(c)}

    def _act_var(self, t, v, i):
        """Flat vector of x_i . phi at dual degree t+1."""
        A = self.algebra
        f = A.field
        rep = self.rep_in
        layout_t = self.blocks[t]
        layout_n = self.blocks.get(t + 1, {})
        out = {}
        for d, (off, ad) in layout_t.items():
            if d not in layout_n:
                continue
            offn, adn = layout_n[d]
            vm = A.var_map(d + t, i)
            for m in range(rep.dims[d]):
                for a in range(ad):
                    coef = v.get(off + m * ad + a)
                    if not coef:
                        continue
                    for p, vv in vm[a].items():
                        key = offn + m * adn + p
                        nv = f.of(out.get(key, f.zero) + coef * vv)
                        if nv == f.zero:
                            out.pop(key, None)
                        else:
                            out[key] = nv
        return out

    def evaluate(self, t, v, d, mpos):
        """phi(m) in A_{d+t} coordinates for a dual vector v of degree t and
        the mpos-th basis element of M_d.  Returns {A-basis pos: coef}."""
        out = {}
        layout = self.blocks.get(t, {})
        if d not in layout:
            return out
        off, ad = layout[d]
        for a in range(ad):
            coef = v.get(off + mpos * ad + a)
            if coef:
                out[a] = coef
        return out


def hom_dual(A: GradedAlgebra, pres: ModulePresentation):
    """M* and the biduality verdict.  Returns a HomDualReport."""
    rep = rep_of_presentation(pres)
    dual = DualData(rep)
    bidual = DualData(dual.dual_rep)
    f = A.field
    # evaluation map M -> M**: ev(m)(phi) = phi(m)
    iso = dict(rep.dims) == dict(bidual.dual_rep.dims)
    if iso:
        for d, nd in rep.dims.items():
            if nd == 0:
                continue
            cols = []
            for mpos in range(nd):
                flat = {}
                layout = bidual.blocks.get(d, {})
                for t, (off, ad) in layout.items():
                    basis_t = dual.basis.get(t, [])
                    for k, phi in enumerate(basis_t):
                        valvec = dual.evaluate(t, phi, d, mpos)
                        for a, coef in valvec.items():
                            flat[off + k * ad + a] = coef
                cols.append(bidual._coords(d, flat))
            ech = make_echelon(f, nd)
            ech.add_rows(cols)
            if ech.rank != nd:
                iso = False
                break
    return HomDualReport(rep, dual, bidual, iso)


@dataclass
class HomDualReport:
    rep: GradedModuleRep
    dual: DualData
    bidual: DualData
    biduality_iso: bool

    def dual_dims(self):
        return dict(self.dual.dual_rep.dims)

    def dual_total_dim(self):
        return self.dual.dual_rep.total_dim()


def presentation_of_rep(rep: GradedModuleRep) -> ModulePresentation:
    """Minimal generators/relations presentation of a graded module rep."""
    A = rep.algebra
    f = A.field
    ctx = A.context
    if not rep.dims:
        return ModulePresentation(A, (), [])
    # minimal generators: complement of the image of m*M degree by degree
    gens = []  # (degree, basis position vector {pos: coef})
    for t in rep.degree_range():
        nd = rep.dims.get(t, 0)
        if not nd:
            continue
        ech = make_echelon(f, nd)
        if rep.dims.get(t - 1, 0):
            for i in range(A.nvars):
                for colsrc in rep.act(i, t - 1):
                    if colsrc:
                        ech.add_row(dict(colsrc))
        for pos in range(nd):
            if ech.add_row({pos: f.one}):
                gens.append((t, pos))
    gen_degrees = tuple(t for t, _ in gens)
    # evaluation map from the free cover: generator g at degree t, monomial b
    # acts by iterated variable action
    def act_monomial(t, vec, exp):
        cur = dict(vec)
        cd = t
        for i, k in enumerate(exp):
            for _ in range(k):
                nxt = {}
                for pos, coef in cur.items():
                    for p, v in rep.act(i, cd)[pos].items():
                        nv = f.of(nxt.get(p, f.zero) + coef * v)
                        if nv == f.zero:
                            nxt.pop(p, None)
                        else:
                            nxt[p] = nv
                cur = nxt
                cd += 1
        return cur
    F = FreeModule(A, gen_degrees)
    # kernel pieces of the cover, then minimal generators of that kernel
    tmin = min(gen_degrees)
    tmax = max(gen_degrees) + A.top
    kernel_gens = []
    kprev = []
    for t in range(tmin, tmax + 1):
        offsets, sdim = F.piece_offsets(t)
        if sdim == 0:
            kprev = []
            continue
        nd = rep.dims.get(t, 0)
        rows = [dict() for _ in range(nd)]
        for gi, (gd, gpos) in enumerate(gens):
            for pos, bexp in enumerate(A.basis(t - gd)):
                img = act_monomial(gd, {gpos: f.one}, bexp)
                for p, v in img.items():
                    rows[p][offsets[gi] + pos] = v
        kt = kernel_of_rows((r for r in rows if r), sdim, f)
        if kt:
            ech = make_echelon(f, sdim)
            for v in kprev:
                for i in range(A.nvars):
                    w = shift_by_var(F, t - 1, v, i)
                    if w:
                        ech.add_row(w)
            for v in kt:
                if ech.add_row(v):
                    kernel_gens.append((t, v))
        kprev = kt
    cols = [coords_to_columns(F, d, [v])[0] for d, v in kernel_gens]
    return ModulePresentation(A, gen_degrees, cols)


def ext_dims(A: GradedAlgebra, pres_or_k, i_max: int, int_cap: int = 14):
    """dim_k Ext^i(M, A) for i = 0..i_max via the transposed Hom complex."""
    res = minimal_resolution(A, pres_or_k, hom_cap=i_max + 1, int_cap=int_cap)
    n_maps = len(res.maps)
    out = []
    for i in range(i_max + 1):
        # Hom(F_i, A) -> Hom(F_{i+1}, A): per internal degree
        Fi = res.free_modules[i] if i < len(res.free_modules) else None
        if Fi is None or Fi.rank == 0:
            out.append(0)
            continue
        incoming = res.maps[i - 1] if i >= 1 else None
        outgoing = res.maps[i] if i < n_maps else None
        total = 0
        trange = _hom_piece_range(A, Fi)
        for t in trange:
            dim_t = _hom_piece_dim(A, Fi, t)
            if dim_t == 0:
                continue
            if outgoing is not None and outgoing.source.rank:
                rows, sdim, _ = _hom_map_rows(A, outgoing, t)
                ech = make_echelon(A.field, sdim)
                ech.add_rows(r for r in rows if r)
                ker = dim_t - ech.rank
            else:
                ker = dim_t
            im = 0
            if incoming is not None and incoming.source.rank:
                rows, sdim2, _ = _hom_map_rows(A, incoming, t)
                ech = make_echelon(A.field, sdim2)
                ech.add_rows(r for r in rows if r)
                im = ech.rank
            total += ker - im
        out.append(total)
    return out


def _hom_piece_range(A, F):
    lo = -max(F.degrees) - A.top if F.rank else 0
    hi = -min(F.degrees) + A.top if F.rank else -1
    return range(lo, hi + 1)


def _hom_piece_dim(A, F, t):
    return sum(A.dim(t + g) for g in F.degrees)


def _hom_map_rows(A, dmap: ModuleMap, t):
    """Degree-t piece of Hom(dmap, A): Hom(target, A)_t -> Hom(source, A)_t.

    Returns (rows keyed by source-side flat cols ... ) — rows indexed by the
    Hom(source) side, columns by the Hom(target) side.
    """
    f = A.field
    G = dmap.target    # Hom(G, A) is the domain of the transposed map
    F = dmap.source
    goff = []
    total_g = 0
    for g in G.degrees:
        goff.append(total_g)
        total_g += A.dim(t + g)
    foff = []
    total_f = 0
    for g in F.degrees:
        foff.append(total_f)
        total_f += A.dim(t + g)
    rows = [dict() for _ in range(total_f)]
    for j in range(G.rank):
        gj = G.degrees[j]
        for pos, bexp in enumerate(A.basis(t + gj)):
            col = goff[j] + pos
            for l in range(F.rank):
                e = dmap.entries[j][l]
                if e.is_zero():
                    continue
                _, cls = A.class_of_product(e, bexp)
                for p, v in cls.items():
                    rows[foff[l] + p][col] = v
    return rows, total_g, total_f
