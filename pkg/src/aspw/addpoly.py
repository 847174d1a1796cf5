"""Additive polynomials, root groups, hyperplanes, Moore matrices.

An additive polynomial f(X) = sum a_i X^(p^i) is stored by its p-power
coefficients a_0..a_n with a_n = 1 and a_0 != 0, so f is monic and
separable.  Its roots form an F_p-subspace of the coefficient field; the
package works under the standing hypothesis that all p^n of them lie in the
base field k0.

Subspace polynomials are built by composing degree-p steps: adjoining one
new root delta to a subspace V turns f_V into wp_a(f_V(X)) with
a = f_V(delta).  Hyperplanes of the root group are enumerated as kernels of
normalized F_p-functionals in a fixed lexicographic order, so every consumer
sees the same labels.
"""

from __future__ import annotations

import itertools

from .errors import (
    ContextMismatch,
    DependentGenerators,
    FieldTooLarge,
    InternalCheckError,
    NotASubgroup,
    RootsNotInBaseField,
    SingularSystem,
    ZeroScale,
)
from .gf import FFElem, FieldCtx
from .upoly import Poly, RatFunc

SCAN_CAP = 3 ** 6


class AdditivePoly:
    """Monic separable additive polynomial over a fixed field context."""

    __slots__ = ("ctx", "a")

    def __init__(self, ctx: FieldCtx, a):
        a = tuple(a)
        if not a:
            raise ValueError("additive polynomial needs at least one coefficient")
        if a[-1] != ctx.one():
            raise ValueError("additive polynomial must be monic")
        if len(a) > 1 and a[0].is_zero():
            raise ValueError("additive polynomial must be separable (a_0 != 0)")
        self.ctx = ctx
        self.a = a

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def q(self) -> int:
        return self.ctx.p ** self.n

    @staticmethod
    def identity(ctx: FieldCtx) -> "AdditivePoly":
        return AdditivePoly(ctx, (ctx.one(),))

    @staticmethod
    def frobenius_minus_id(ctx: FieldCtx, n: int) -> "AdditivePoly":
        """X^(p^n) - X."""
        coeffs = [ctx.zero()] * (n + 1)
        coeffs[0] = -ctx.one()
        coeffs[n] = ctx.one()
        if n == 0:
            coeffs = [ctx.one()]
        return AdditivePoly(ctx, coeffs)

    def to_poly(self) -> Poly:
        """Dense form as an ordinary polynomial."""
        p = self.ctx.p
        zero = self.ctx.zero()
        out = [zero] * (p ** self.n + 1)
        for i, c in enumerate(self.a):
            out[p ** i] = c
        return Poly(self.ctx, out)

    def __eq__(self, other):
        return (
            isinstance(other, AdditivePoly)
            and self.ctx == other.ctx
            and self.a == other.a
        )

    def __hash__(self):
        return hash((self.ctx, self.a))

    def to_str(self, var: str = "X") -> str:
        p = self.ctx.p
        parts = []
        for i in range(self.n, -1, -1):
            c = self.a[i]
            if c.is_zero():
                continue
            e = p ** i
            xs = var if e == 1 else f"{var}^{e}"
            if c == self.ctx.one():
                parts.append(xs)
            elif c.in_prime_field():
                parts.append(f"{c}{xs}")
            else:
                parts.append(f"({c}){xs}")
        return "+".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"AdditivePoly({self.to_str()})"


def _domain_ctx(x):
    if isinstance(x, FFElem):
        return x.ctx
    if isinstance(x, RatFunc):
        return x.ctx
    ctx = getattr(x, "base_ctx", None)
    if ctx is not None:
        return ctx
    raise ContextMismatch(f"cannot evaluate an additive polynomial on {type(x).__name__}")


def additive_eval(f: AdditivePoly, x):
    """f(x) for x in k0, k0(T), or a quotient algebra over k0(T)."""
    if _domain_ctx(x) != f.ctx:
        raise ContextMismatch("argument is not over the coefficient field")
    p = f.ctx.p
    acc = f.a[0] * x
    pw = x
    for i in range(1, f.n + 1):
        pw = pw ** p
        if not f.a[i].is_zero():
            acc = acc + f.a[i] * pw
    return acc


def wp_a(a, x):
    """The twisted operator x^p - a^(p-1) x; a = 1 gives x^p - x."""
    if a.is_zero():
        raise ZeroScale("scale element must be nonzero")
    p = a.ctx.p
    return x ** p - a ** (p - 1) * x


def wp_compose(a: FFElem, g: AdditivePoly) -> AdditivePoly:
    """Coefficients of wp_a(g(X)), one p-degree higher than g."""
    if a.is_zero():
        raise ZeroScale("scale element must be nonzero")
    ctx = g.ctx
    p = ctx.p
    t = a ** (p - 1)
    out = [ctx.zero()] * (g.n + 2)
    for j, b in enumerate(g.a):
        out[j + 1] = out[j + 1] + b ** p
        out[j] = out[j] - t * b
    return AdditivePoly(ctx, out)


class RootGroup:
    """The F_p-space of roots of an additive polynomial inside k0."""

    __slots__ = ("owner", "k0", "basis", "elements")

    def __init__(self, owner: AdditivePoly, k0: FieldCtx, basis, elements):
        self.owner = owner
        self.k0 = k0
        self.basis = tuple(basis)
        self.elements = tuple(elements)

    @property
    def n(self) -> int:
        return len(self.basis)

    def combo(self, coeffs) -> FFElem:
        acc = self.k0.zero()
        for c, eps in zip(coeffs, self.basis):
            acc = acc + c * eps
        return acc

    def contains(self, x: FFElem) -> bool:
        return x in self.elements

    def __repr__(self):
        return f"RootGroup(n={self.n}, basis={[str(b) for b in self.basis]})"


def root_group(f: AdditivePoly, k0: FieldCtx | None = None) -> RootGroup:
    """All p^n roots of f located inside k0 by exhaustive scan."""
    if k0 is None:
        k0 = f.ctx
    if k0 != f.ctx:
        raise ContextMismatch("root scan must run over the coefficient field")
    if k0.order() > SCAN_CAP:
        raise FieldTooLarge(f"root scan capped at {SCAN_CAP} elements")
    roots = [x for x in k0.elements() if additive_eval(f, x).is_zero()]
    if len(roots) != f.q:
        raise RootsNotInBaseField(
            f"only {len(roots)} of the {f.q} roots lie in the base field"
        )
    basis = []
    span = {k0.zero()}
    for r in roots:
        if r in span:
            continue
        basis.append(r)
        span = {s + j * r for s in span for j in range(k0.p)}
        if len(basis) == f.n:
            break
    if len(span) != f.q:
        raise InternalCheckError("root span has wrong size")
    elements = sorted(span, key=lambda e: e.to_int())
    return RootGroup(f, k0, basis, elements)


def subspace_poly(
    ctx: FieldCtx, vs, within: RootGroup | None = None
) -> AdditivePoly:
    """Additive polynomial whose roots are exactly the F_p-span of vs.

    Built one generator at a time through the composition identity; a new
    generator already in the span makes the step scale vanish, which is the
    dependence check.
    """
    f = AdditivePoly.identity(ctx)
    for v in vs:
        if not isinstance(v, FFElem) or v.ctx != ctx:
            raise ContextMismatch("generators must be elements of the given field")
        a = additive_eval(f, v)
        if a.is_zero():
            raise DependentGenerators(f"{v} is in the span of the previous generators")
        f = wp_compose(a, f)
    if within is not None:
        span = _span(ctx, vs)
        for x in span:
            if not within.contains(x):
                raise NotASubgroup(f"{x} is not a root of the ambient polynomial")
    return f


def _span(ctx: FieldCtx, vs) -> set:
    span = {ctx.zero()}
    for v in vs:
        span = {s + j * v for s in span for j in range(ctx.p)}
    return span


class Hyperplane:
    """An index-p subgroup of a root group, with its degree-lowering data.

    functional: normalized F_p-functional (first nonzero entry 1) whose
    kernel in basis coordinates is the hyperplane.  f_H is the subspace
    polynomial of the hyperplane and eps its designated complement vector;
    scale = f_H(eps) is the twist entering the composition identity.
    """

    __slots__ = ("group", "functional", "basis", "eps", "f_H", "scale")

    def __init__(self, group, functional, basis, eps, f_H, scale):
        self.group = group
        self.functional = tuple(functional)
        self.basis = tuple(basis)
        self.eps = eps
        self.f_H = f_H
        self.scale = scale

    def label(self) -> str:
        return "(" + ",".join(str(c) for c in self.functional) + ")"

    def elements(self):
        return _span(self.group.k0, self.basis)

    def __repr__(self):
        return f"Hyperplane{self.label()}"


def enumerate_hyperplanes(group: RootGroup) -> list[Hyperplane]:
    """All index-p subgroups, one per normalized functional, in fixed order."""
    k0 = group.k0
    p = k0.p
    n = group.n
    f = group.owner
    out = []
    for func in itertools.product(range(p), repeat=n):
        nz = next((i for i, c in enumerate(func) if c != 0), None)
        if nz is None or func[nz] != 1:
            continue
        basis = []
        for i in range(n):
            if i == nz:
                continue
            basis.append(group.basis[i] - func[i] * group.basis[nz])
        eps = group.basis[nz]
        f_H = subspace_poly(k0, basis)
        scale = additive_eval(f_H, eps)
        if scale.is_zero():
            raise InternalCheckError("complement vector landed inside its hyperplane")
        if wp_compose(scale, f_H) != f:
            raise InternalCheckError("hyperplane composition identity failed")
        out.append(Hyperplane(group, func, basis, eps, f_H, scale))
    expected = (p ** n - 1) // (p - 1)
    if len(out) != expected:
        raise InternalCheckError(f"expected {expected} hyperplanes, found {len(out)}")
    return out


# ---------------------------------------------------------------------------
# Moore matrices and linear algebra over k0
# ---------------------------------------------------------------------------

def moore_matrix(mu) -> tuple[tuple, FFElem]:
    """(M, det M) with M[i][j] = mu_i^(p^j); det vanishes iff mu dependent."""
    mu = list(mu)
    if not mu:
        raise ValueError("empty generator list")
    ctx = mu[0].ctx
    p = ctx.p
    n = len(mu)
    rows = []
    for m in mu:
        row = []
        acc = m
        for _ in range(n):
            row.append(acc)
            acc = acc ** p
        rows.append(tuple(row))
    det = _det(ctx, [list(r) for r in rows])
    return tuple(rows), det


def _det(ctx: FieldCtx, rows) -> FFElem:
    n = len(rows)
    det = ctx.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return ctx.zero()
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * inv
            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def linear_solve(rows, rhs) -> list:
    """Solve M x = rhs over a field context; raises SingularSystem."""
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
