"""Sparse multivariate polynomials over an exact field, plus Pfaffians of
skew-symmetric polynomial matrices.

Monomials are dense exponent tuples over an ordered variable context.
Printing uses graded lexicographic order on the declared variable order so
that output is reproducible.
"""

from __future__ import annotations

import re

from .scalars import QQ, FieldMismatch


class ContextMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


class PolyContext:
    """Ordered variable list plus coefficient field."""

    __slots__ = ("field", "names", "index")

    def __init__(self, field, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    def var(self, name):
        if name not in self.index:
            raise ParseError(f"unknown variable {name!r}")
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.var(n) for n in self.names]

    def zero(self):
        return Polynomial(self, {})

    def const(self, c):
        c = self.field.of(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def __eq__(self, other):
        return (isinstance(other, PolyContext) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyContext({self.field}, {','.join(self.names)})"


def _grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial; terms map exponent tuple -> nonzero coef."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms):
        self.context = context
        self.terms = {e: c for e, c in terms.items() if c != context.field.zero}

    def _chk(self, other):
        if self.context != other.context:
            raise ContextMismatch("context mismatch")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.context.const(other)
        self._chk(other)
        t = dict(self.terms)
        z = self.context.field.zero
        for e, c in other.terms.items():
            nc = self.context.field.of(t.get(e, z) + c)
            if nc == z:
                t.pop(e, None)
            else:
                t[e] = nc
        return Polynomial(self.context, t)

    def __neg__(self):
        f = self.context.field
        return Polynomial(self.context, {e: f.of(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.context.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._chk(other)
        f = self.context.field
        z = f.zero
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = f.of(t.get(e, z) + c1 * c2)
                if nc == z:
                    t.pop(e, None)
                else:
                    t[e] = nc
        return Polynomial(self.context, t)

    __rmul__ = __mul__

    def scale(self, c):
        f = self.context.field
        c = f.of(c)
        return Polynomial(self.context, {e: f.of(c * v) for e, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.context.const(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.context.nvars, self.context.field.zero)

    def map_context(self, target: PolyContext):
        """Reinterpret in a context whose variables contain ours."""
        pos = []
        for n in self.context.names:
            if n not in target.index:
                raise ContextMismatch(f"variable {n} missing from target context")
            pos.append(target.index[n])
        t = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                ne[pos[i]] = k
            t[tuple(ne)] = target.field.of(c)
        return Polynomial(target, t)

    def substitute(self, images):
        """Substitute images[i] (a Polynomial) for variable i."""
        ctx = images[0].context
        out = ctx.zero()
        for e, c in self.terms.items():
            term = ctx.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.context == other.context
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.context, tuple(sorted(self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                f"{n}^{k}" if k > 1 else n
                for n, k in zip(self.context.names, e) if k
            )
            cs = str(c)
            if mon:
                piece = mon if cs == "1" else (f"-{mon}" if cs == "-1" else f"{cs}*{mon}")
            else:
                piece = cs
            if parts and not piece.startswith("-"):
                parts.append("+" + piece)
            else:
                parts.append(piece)
        return "".join(parts).replace("+-", "-")

    __repr__ = __str__


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+/\d+|\d+|\^|\*|\+|-|\(|\))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"malformed token at position {pos}: {text[pos:pos+10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_poly(text: str, context: PolyContext) -> Polynomial:
    """Parse the algebra-file polynomial grammar: signed terms coef*mon,
    coef an integer or a/b, mon a *-joined product of var[^k]."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    result = context.zero()
    i = 0
    n = len(toks)
    while i < n:
        sign = 1
        while i < n and toks[i] in "+-":
            if toks[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coef = context.field.of(sign)
        factors = []
        expect_factor = True
        while i < n:
            t = toks[i]
            if t in "+-":
                break
            if t == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"unexpected token {t!r}")
            if re.fullmatch(r"\d+/\d+|\d+", t):
                coef = context.field.of(coef * context.field.of(t))
                i += 1
            elif re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", t):
                name = t
                i += 1
                k = 1
                if i < n and toks[i] == "^":
                    i += 1
                    if i >= n or not re.fullmatch(r"\d+", toks[i]):
                        raise ParseError("non-integer exponent")
                    k = int(toks[i])
                    i += 1
                factors.append((name, k))
            else:
                raise ParseError(f"unexpected token {t!r}")
            expect_factor = False
        term = context.const(coef)
        for name, k in factors:
            term = term * context.var(name) ** k
        result = result + term
    return result


def poly_matrix_mul(A, B):
    """Product of two list-of-list polynomial matrices."""
    if not A or not B:
        return []
    inner = len(B)
    out = []
    for i in range(len(A)):
        if len(A[i]) != inner:
            raise ValueError("dimension mismatch")
        row = []
        for j in range(len(B[0])):
            s = A[i][0].context.zero()
            for k in range(inner):
                s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


class SkewMatrix:
    """Skew-symmetric polynomial matrix: zero diagonal, lower = -upper.

    Only the strict upper triangle is stored.
    """

    def __init__(self, size, upper):
        """upper: dict (i, j) -> Polynomial for 0 <= i < j < size."""
        self.size = size
        ctxs = {p.context for p in upper.values()}
        if len(ctxs) > 1:
            raise FieldMismatch("mixed contexts in skew matrix")
        self.context = ctxs.pop() if ctxs else None
        self.upper = dict(upper)
        for (i, j) in self.upper:
            if not (0 <= i < j < size):
                raise ValueError("upper entries must have i < j")

    @classmethod
    def generic(cls, size, field=QQ, name="t"):
        """Generic skew matrix on indeterminates t_{ij}, i < j (1-based names)."""
        names = [f"{name}{i+1}{j+1}" for i in range(size) for j in range(i + 1, size)]
        ctx = PolyContext(field, names)
        upper = {}
        k = 0
        for i in range(size):
            for j in range(i + 1, size):
                upper[(i, j)] = ctx.var(names[k])
                k += 1
        return cls(size, upper)

    def entry(self, i, j):
        ctx = self.context
        if ctx is None:
            raise ValueError("empty skew matrix has no entries")
        if i == j:
            return ctx.zero()
        if i < j:
            return self.upper.get((i, j), ctx.zero())
        return -self.upper.get((j, i), ctx.zero())

    def to_rows(self):
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def delete(self, k):
        """Skew matrix with row/column k removed."""
        keep = [i for i in range(self.size) if i != k]
        upper = {}
        for a, i in enumerate(keep):
            for b in range(a + 1, len(keep)):
                j = keep[b]
                e = self.entry(i, j)
                if not e.is_zero():
                    upper[(a, b)] = e
        m = SkewMatrix(len(keep), upper)
        if m.context is None:
            m.context = self.context
        return m


def pfaffian(A: SkewMatrix) -> Polynomial:
    """Pfaffian by recursive expansion along the first row.

    Odd sizes give the zero polynomial by convention.
    """
    ctx = A.context
    if ctx is None:
        raise ValueError("cannot take the Pfaffian of a matrix with no entries")
    d = A.size
    if d % 2 == 1:
        return ctx.zero()
    if d == 0:
        return ctx.const(1)
    if d == 2:
        return A.entry(0, 1)
    out = ctx.zero()
    for j in range(1, d):
        a = A.entry(0, j)
        if a.is_zero():
            continue
        minor = A.delete(j).delete(0)
        minor.context = ctx
        sign = -1 if (j + 1) % 2 == 1 else 1  # (-1)^j for 1-based column j+1
        out = out + a.scale(sign) * pfaffian(minor)
    return out


def submax_pfaffians(A: SkewMatrix) -> list:
    """For odd-size A, the vector with component j equal to
    (-1)^(j+1) * Pf(A with row/col j deleted), 1-based j.

    The sign convention is the one that makes A times this vector vanish
    identically; tests verify that rather than assume it.
    """
    d = A.size
    if d % 2 == 0:
        raise ValueError("size must be odd")
    if d < 3:
        raise ValueError("size must be at least 3")
    out = []
    for j in range(d):
        minor = A.delete(j)
        minor.context = A.context
        p = pfaffian(minor)
        if (j + 2) % 2 == 1:  # (-1)^(j+1) for 1-based j+1
            p = -p
        out.append(p)
    return out
