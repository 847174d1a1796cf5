"""Elementary abelian p-extensions of k0(T) given by one additive equation.

An extension is described by a monic separable additive polynomial f whose
roots all lie in k0 and a right-hand side u in k = k0(T), standing for
K = k(y) with f(y) = u.  The module computes:

  * reduced forms: substitutions y -> y - delta that push every pole
    exponent and the polynomial-part degree below the p^n threshold,
    with a replayable substitution log;
  * membership in the image of x^p - x (and of x^q - x) over k, with an
    explicit witness;
  * irreducibility of f(X) - u through the index-p subgroup criterion;
  * the ramified places with their exponent bounds;
  * all degree-p subextensions, each verified inside a concrete quotient
    algebra k[Y]/(f(Y) - u) carrying the translation action;
  * splitting of unramified places through residue-field trace tests, and
    the full (e, f, g) data assembled from the degree-p layers;
  * combination of independent degree-p generators into one extension and
    the reverse direction, linear relations between two generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .addpoly import (
    AdditivePoly,
    Hyperplane,
    RootGroup,
    additive_eval,
    enumerate_hyperplanes,
    linear_solve,
    root_group,
    subspace_poly,
)
from .errors import (
    AspwError,
    ContextMismatch,
    DegreeOverflow,
    DependentSubextensions,
    InternalCheckError,
    NotAFixedField,
    NotASubgroup,
    NotIrreducible,
    RamifiedPlaceForSplitTest,
)
from .gf import FFElem, FieldCtx, absolute_trace_value, frobenius_power
from .upoly import (
    Place,
    Poly,
    RatFunc,
    factor,
    inv_frobenius_mod,
    pf_string,
    place_valuation,
    pole_leading_digit,
    residue_eval,
    residue_field,
)


def _p_adic_split(e: int, p: int) -> tuple[int, int]:
    """e = lam * p**m with lam prime to p; returns (lam, m)."""
    m = 0
    while e % p == 0:
        e //= p
        m += 1
    return e, m


class ExtensionSpec:
    """Value object for f(y) = u over k0(T); caches derived structure."""

    __slots__ = ("f", "u", "k0", "_group", "_hyperplanes", "_irreducible", "_algebra")

    def __init__(self, f: AdditivePoly, u: RatFunc, k0: FieldCtx | None = None):
        if k0 is None:
            k0 = f.ctx
        if f.ctx != k0 or u.ctx != k0:
            raise ContextMismatch("additive polynomial and rhs must share the base field")
        self.f = f
        self.u = u
        self.k0 = k0
        self._group = root_group(f, k0)
        self._hyperplanes = None
        self._irreducible = None
        self._algebra = None

    @property
    def group(self) -> RootGroup:
        return self._group

    def hyperplanes(self) -> list[Hyperplane]:
        if self._hyperplanes is None:
            self._hyperplanes = enumerate_hyperplanes(self._group)
        return self._hyperplanes

    def is_irreducible(self) -> bool:
        if self._irreducible is None:
            self._irreducible = all(
                not wp_membership(self.u.scale_const((h.scale ** self.k0.p).inverse()))[0]
                for h in self.hyperplanes()
            )
        return self._irreducible

    def require_irreducible(self):
        if not self.is_irreducible():
            raise NotIrreducible("f(X) - u is reducible over k")

    def algebra(self) -> "QuotientAlgebra":
        if self._algebra is None:
            self._algebra = QuotientAlgebra(self)
        return self._algebra

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionSpec)
            and self.f == other.f
            and self.u == other.u
            and self.k0 == other.k0
        )

    def __hash__(self):
        return hash((self.f, self.u, self.k0))

    def __repr__(self):
        return f"ExtensionSpec(f={self.f}, u={pf_string(self.u)})"


def check_irreducible(spec: ExtensionSpec) -> bool:
    """True iff f(X) - u is irreducible, i.e. [k(y):k] = p^n.

    The roots of f(X) - u differ by constants, so the Galois image is a
    subgroup of the root group; it is everything iff it lies in no index-p
    subgroup, and lying inside the subgroup fixed by H is exactly
    u / f_H(eps_H)^p being a p-th-power image in k.
    """
    return spec.is_irreducible()


# ---------------------------------------------------------------------------
# reduction engine
# ---------------------------------------------------------------------------

SHIFT = "shift"
DESCEND = "descend"


class SubstitutionLog:
    """Ordered substitutions taking (f, u) to (f, u_final).

    A "shift" step delta means y -> y - delta, so u drops by f(delta).
    A "descend" step w (only for f = X^q - X and u = w^p) replaces the
    generator by y^p - w, so u is replaced by w.
    """

    __slots__ = ("f", "u_start", "u_final", "steps")

    def __init__(self, f: AdditivePoly, u_start: RatFunc, u_final: RatFunc, steps):
        self.f = f
        self.u_start = u_start
        self.u_final = u_final
        self.steps = tuple(steps)

    def shifts(self):
        return [d for kind, d in self.steps if kind == SHIFT]

    def descents(self):
        return [w for kind, w in self.steps if kind == DESCEND]

    def total_shift(self) -> RatFunc:
        if self.descents():
            raise AspwError("total shift is only meaningful for pure shift logs")
        acc = RatFunc(Poly(self.u_start.ctx))
        for d in self.shifts():
            acc = acc + d
        return acc

    def replay(self) -> bool:
        u = self.u_start
        for kind, val in self.steps:
            if kind == SHIFT:
                u = u - additive_eval(self.f, val)
            else:
                if u != val ** self.u_start.ctx.p:
                    return False
                u = val
        return u == self.u_final

    def is_identity(self) -> bool:
        return not self.steps


def _strip_finite_pole(f: AdditivePoly, u: RatFunc, place: Place, steps: list,
                       threshold: int) -> RatFunc:
    """Shift away P-pole exponents e = lam*p^m with m >= threshold."""
    p = f.ctx.p
    P = place.poly
    while True:
        v = place_valuation(u, place)
        if v >= 0:
            return u
        e, a = pole_leading_digit(u, place)
        lam, m = _p_adic_split(e, p)
        if m < threshold:
            return u
        c = inv_frobenius_mod(a, P, f.n)
        delta = RatFunc(c, P ** (e // (p ** f.n)))
        u = u - additive_eval(f, delta)
        steps.append((SHIFT, delta))
        if place_valuation(u, place) <= -e:
            raise InternalCheckError("pole stripping failed to make progress")


def _strip_infinity(f: AdditivePoly, u: RatFunc, steps: list, threshold: int) -> RatFunc:
    p = f.ctx.p
    while True:
        r = u.poly_part()
        d = r.degree()
        if d < 1:
            return u
        lam, m = _p_adic_split(d, p)
        if m < threshold:
            return u
        c = frobenius_power(r.leading(), -f.n)
        mono = [f.ctx.zero()] * (d // (p ** f.n)) + [c]
        delta = RatFunc(Poly(f.ctx, mono))
        u = u - additive_eval(f, delta)
        steps.append((SHIFT, delta))
        if u.poly_part().degree() >= d:
            raise InternalCheckError("degree stripping failed to make progress")


def _constant_preimage(f: AdditivePoly, c: FFElem) -> FFElem | None:
    """First element of k0 (canonical order) mapped to c by f, if any."""
    for x in f.ctx.elements():
        if additive_eval(f, x) == c:
            return x
    return None


def _absorb_constant(f: AdditivePoly, u: RatFunc, steps: list) -> RatFunc:
    r = u.poly_part()
    if r.degree() != 0:
        return u
    c = r.coeffs[0]
    x = _constant_preimage(f, c)
    if x is None:
        return u
    delta = RatFunc.const(f.ctx, x)
    u = u - additive_eval(f, delta)
    steps.append((SHIFT, delta))
    return u


def _pole_places(u: RatFunc) -> list[Place]:
    if u.den.degree() == 0:
        return []
    return [Place.finite(P) for P, _ in factor(u.den)]


def _reduce_rhs(f: AdditivePoly, u: RatFunc) -> tuple[RatFunc, list]:
    """Full shift reduction: finite poles, the infinite place, constants."""
    steps: list = []
    for place in _pole_places(u):
        u = _strip_finite_pole(f, u, place, steps, f.n)
    u = _strip_infinity(f, u, steps, f.n)
    u = _absorb_constant(f, u, steps)
    return u, steps


def normalize_at(spec: ExtensionSpec, place: Place) -> tuple[SubstitutionLog, RatFunc]:
    """Valuation-maximizing shift normalization at a single place."""
    spec.require_irreducible()
    steps: list = []
    if place.is_infinite:
        u = _strip_infinity(spec.f, spec.u, steps, spec.f.n)
        u = _absorb_constant(spec.f, u, steps)
    else:
        u = _strip_finite_pole(spec.f, spec.u, place, steps, spec.f.n)
    return SubstitutionLog(spec.f, spec.u, u, steps), u


def reduce_global(spec: ExtensionSpec) -> tuple[SubstitutionLog, ExtensionSpec]:
    """Reduce the rhs everywhere; the result passes is_reduced."""
    spec.require_irreducible()
    u, steps = _reduce_rhs(spec.f, spec.u)
    log = SubstitutionLog(spec.f, spec.u, u, steps)
    out = ExtensionSpec(spec.f, u, spec.k0)
    out._irreducible = spec._irreducible
    if not is_reduced(out):
        raise InternalCheckError("reduction did not reach a reduced form")
    return log, out


def is_reduced(spec: ExtensionSpec) -> bool:
    """Shape test: pole exponents and the polynomial part below p^n."""
    p = spec.k0.p
    n = spec.f.n
    u = spec.u
    for place in _pole_places(u):
        e = -place_valuation(u, place)
        _, m = _p_adic_split(e, p)
        if m >= n:
            return False
    r = u.poly_part()
    d = r.degree()
    if d >= 1:
        _, m = _p_adic_split(d, p)
        return m < n
    if d == 0:
        return _constant_preimage(spec.f, r.coeffs[0]) is None
    return True


def frobenius_reduce(spec: ExtensionSpec) -> tuple[SubstitutionLog, ExtensionSpec]:
    """Power descent for f = X^q - X: while u = w^p, pass to y^p - w.

    The new generator satisfies the same equation with rhs w, and the
    conjugates still differ by all of F_q (xi -> xi^p is a bijection), so
    irreducibility is preserved.  Shift reduction runs between descents.
    """
    f = spec.f
    if not _is_frobenius_form(f):
        raise AspwError("power descent applies only to X^q - X equations")
    spec.require_irreducible()
    steps: list = []
    u = spec.u
    while True:
        u2, more = _reduce_rhs(f, u)
        steps.extend(more)
        u = u2
        if u.is_constant() or not u.is_pth_power():
            break
        w = u.pth_root()
        steps.append((DESCEND, w))
        u = w
    log = SubstitutionLog(f, spec.u, u, steps)
    out = ExtensionSpec(f, u, spec.k0)
    if not check_irreducible(out):
        raise InternalCheckError("power descent broke irreducibility")
    return log, out


def _is_frobenius_form(f: AdditivePoly) -> bool:
    if f.n < 1:
        return False
    if f.a[0] != -f.ctx.one():
        return False
    return all(f.a[i].is_zero() for i in range(1, f.n))


# ---------------------------------------------------------------------------
# image membership for x^p - x and x^q - x
# ---------------------------------------------------------------------------

def wp_membership(w: RatFunc) -> tuple[bool, RatFunc | None]:
    """Is w = delta^p - delta for some delta in k?  Returns a witness.

    Reduction with f = X^p - X strips every pole exponent divisible by p
    and every polynomial degree divisible by p; what remains is in the
    image iff it is zero, and the strip log sums to the witness.
    """
    ctx = w.ctx
    wp = AdditivePoly(ctx, (-ctx.one(), ctx.one()))
    u, steps = _reduce_rhs(wp, w)
    if not u.is_zero():
        return False, None
    witness = RatFunc(Poly(ctx))
    for kind, d in steps:
        witness = witness + d
    return True, witness


def asq_solve(k0: FieldCtx, n: int, rhs: RatFunc) -> RatFunc | None:
    """Solve x^(p^n) - x = rhs over k = k0(T); None when unsolvable."""
    f = AdditivePoly.frobenius_minus_id(k0, n)
    u, steps = _reduce_rhs(f, rhs)
    if not u.is_zero():
        return None
    witness = RatFunc(Poly(k0))
    for kind, d in steps:
        witness = witness + d
    return witness


# ---------------------------------------------------------------------------
# quotient algebra k[Y]/(f(Y) - u) with the translation action
# ---------------------------------------------------------------------------

class QuotientAlgebra:
    """Concrete model of k(y): polynomials in Y of degree < p^n mod f(Y)-u.

    The maps sigma_xi: g(Y) -> g(Y+xi) for xi in the root group are k-algebra
    automorphisms; elements supported on p-power monomials (the image of
    additive expressions in y) admit O(n) Frobenius and translation, which
    is what the subextension and relation checks use.
    """

    __slots__ = ("spec", "k0", "dim", "_rel", "_ypow", "_shift_tables")

    def __init__(self, spec: ExtensionSpec):
        spec.require_irreducible()
        self.spec = spec
        self.k0 = spec.k0
        p = self.k0.p
        self.dim = p ** spec.f.n
        rel = [RatFunc(Poly(self.k0)) for _ in range(self.dim)]
        rel[0] = spec.u
        for i in range(spec.f.n):
            idx = p ** i
            rel[idx] = rel[idx] - RatFunc.const(self.k0, spec.f.a[i])
        self._rel = tuple(rel)
        self._ypow = {self.dim: tuple(rel)}
        self._shift_tables = {}

    @property
    def base_ctx(self) -> FieldCtx:
        return self.k0

    def zero_vec(self):
        return [RatFunc(Poly(self.k0)) for _ in range(self.dim)]

    def element(self, coeffs) -> "QAElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.dim:
            raise DegreeOverflow(
                f"degree {len(coeffs) - 1} expression in a dimension-{self.dim} algebra"
            )
        vec = self.zero_vec()
        for i, c in enumerate(coeffs):
            vec[i] = self._lift(c)
        return QAElem(self, vec)

    def _lift(self, c) -> RatFunc:
        if isinstance(c, RatFunc):
            if c.ctx != self.k0:
                raise ContextMismatch("coefficient over a different field")
            return c
        if isinstance(c, FFElem):
            return RatFunc.const(self.k0, c)
        if isinstance(c, int):
            return RatFunc.const(self.k0, c)
        raise ContextMismatch(f"cannot lift {type(c).__name__} into the algebra")

    def const(self, c) -> "QAElem":
        return self.element([c])

    def y(self) -> "QAElem":
        return self.element([0, 1])

    def ypow(self, k: int):
        """Coefficient vector of Y^k reduced mod f(Y) - u, for k >= dim."""
        known = max(self._ypow)
        while known < k:
            prev = self._ypow[known]
            top = prev[self.dim - 1]
            vec = [RatFunc(Poly(self.k0))] + list(prev[: self.dim - 1])
            if not top.is_zero():
                vec = [a + top * b for a, b in zip(vec, self._rel)]
            known += 1
            self._ypow[known] = tuple(vec)
        return self._ypow[k]

    def shift_table(self, xi: FFElem):
        """Rows: constant coefficient vectors of (Y+xi)^j for j < dim."""
        key = xi.to_int()
        tab = self._shift_tables.get(key)
        if tab is None:
            rows = []
            row = [self.k0.zero()] * self.dim
            row[0] = self.k0.one()
            rows.append(tuple(row))
            for _ in range(self.dim - 1):
                nxt = [self.k0.zero()] * self.dim
                for i, c in enumerate(row):
                    if c.is_zero():
                        continue
                    nxt[i + 1] = nxt[i + 1] + c
                    nxt[i] = nxt[i] + c * xi
                # top index never overflows: j+1 <= dim-1
                row = nxt[: self.dim]
                rows.append(tuple(row))
            tab = tuple(rows)
            self._shift_tables[key] = tab
        return tab


_P_POWER_CACHE: dict[tuple[int, int], frozenset] = {}


def _p_support(p: int, dim: int) -> frozenset:
    key = (p, dim)
    got = _P_POWER_CACHE.get(key)
    if got is None:
        idxs = {0}
        e = 1
        while e < dim:
            idxs.add(e)
            e *= p
        got = frozenset(idxs)
        _P_POWER_CACHE[key] = got
    return got


class QAElem:
    """Element of a QuotientAlgebra: coefficient vector in the Y-basis."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: QuotientAlgebra, coeffs):
        self.alg = alg
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != alg.dim:
            raise InternalCheckError("algebra element with wrong vector length")

    @property
    def base_ctx(self) -> FieldCtx:
        return self.alg.k0

    def is_p_supported(self) -> bool:
        sup = _p_support(self.alg.k0.p, self.alg.dim)
        return all(c.is_zero() for i, c in enumerate(self.coeffs) if i not in sup)

    def is_constant(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def constant_value(self) -> RatFunc:
        if not self.is_constant():
            raise AspwError("algebra element is not a constant")
        return self.coeffs[0]

    def _check(self, other: "QAElem"):
        if self.alg is not other.alg:
            raise ContextMismatch("elements of different algebras")

    def _coerce(self, other):
        if isinstance(other, QAElem):
            return other
        if isinstance(other, (RatFunc, FFElem, int)):
            return self.alg.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._check(o)
        return QAElem(self.alg, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return QAElem(self.alg, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (RatFunc, FFElem, int)):
            c = self.alg._lift(other)
            if isinstance(other, FFElem):
                return QAElem(self.alg, [a.scale_const(other) for a in self.coeffs])
            return QAElem(self.alg, [a * c for a in self.coeffs])
        if not isinstance(other, QAElem):
            return NotImplemented
        self._check(other)
        dim = self.alg.dim
        zero = RatFunc(Poly(self.alg.k0))
        conv = [zero] * (2 * dim - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    conv[i + j] = conv[i + j] + a * b
        return QAElem(self.alg, _fold(self.alg, conv))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._check(o)
        if not o.is_constant():
            raise AspwError("division is defined for constant algebra elements only")
        c = o.coeffs[0]
        if c.is_zero():
            raise ZeroDivisionError("division by zero in the algebra")
        inv = RatFunc(c.den, c.num)
        return QAElem(self.alg, [a * inv for a in self.coeffs])

    def frobenius(self) -> "QAElem":
        p = self.alg.k0.p
        dim = self.alg.dim
        zero = RatFunc(Poly(self.alg.k0))
        conv = [zero] * ((dim - 1) * p + 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                conv[i * p] = a.pth_power()
        return QAElem(self.alg, _fold(self.alg, conv))

    def __pow__(self, e: int):
        if e < 0:
            raise AspwError("negative powers are not defined in the algebra")
        p = self.alg.k0.p
        if e == p:
            return self.frobenius()
        result = self.alg.const(1)
        acc = self
        while e:
            if e & 1:
                result = result * acc
            e >>= 1
            if e:
                acc = acc * acc
        return result

    def sigma(self, xi: FFElem) -> "QAElem":
        """Translation action Y -> Y + xi for a root xi."""
        if xi.ctx != self.alg.k0:
            raise ContextMismatch("translation by an element of a different field")
        if xi.is_zero():
            return self
        if self.is_p_supported():
            # (Y+xi)^(p^j) = Y^(p^j) + xi^(p^j), so only the constant moves
            shift = RatFunc(Poly(self.alg.k0))
            acc = xi
            p = self.alg.k0.p
            idx = 1
            while idx < self.alg.dim:
                c = self.coeffs[idx]
                if not c.is_zero():
                    shift = shift + c.scale_const(acc)
                acc = acc ** p
                idx *= p
            out = list(self.coeffs)
            out[0] = out[0] + shift
            return QAElem(self.alg, out)
        tab = self.alg.shift_table(xi)
        vec = self.alg.zero_vec()
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for i, t in enumerate(tab[j]):
                if not t.is_zero():
                    vec[i] = vec[i] + c.scale_const(t)
        return QAElem(self.alg, vec)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.alg is o.alg and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((id(self.alg), self.coeffs))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = pf_string(c)
            parts.append(cs if i == 0 else f"({cs})Y^{i}")
        return "QAElem(" + (" + ".join(parts) if parts else "0") + ")"


def _fold(alg: QuotientAlgebra, conv: list) -> list:
    """Reduce a raw coefficient list mod f(Y) - u back into the Y-basis."""
    dim = alg.dim
    out = list(conv[:dim])
    while len(out) < dim:
        out.append(RatFunc(Poly(alg.k0)))
    for k in range(dim, len(conv)):
        c = conv[k]
        if c.is_zero():
            continue
        red = alg.ypow(k)
        out = [a + c * b for a, b in zip(out, red)]
    return out


@dataclass(frozen=True)
class FixedBy:
    elem: QAElem
    subgroup: tuple


@dataclass(frozen=True)
class Satisfies:
    elem: QAElem
    f: AdditivePoly
    rhs: RatFunc


def qa_verify(algebra: QuotientAlgebra, claim) -> bool:
    """Exact verification of a fixed-by or equation claim in the algebra."""
    if isinstance(claim, FixedBy):
        return all(claim.elem.sigma(xi) == claim.elem for xi in claim.subgroup)
    if isinstance(claim, Satisfies):
        lhs = additive_eval(claim.f, claim.elem)
        return lhs == algebra.const(claim.rhs)
    raise AspwError(f"unknown claim type {type(claim).__name__}")


# ---------------------------------------------------------------------------
# degree-p subextensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubextensionDesc:
    """One degree-p subextension: fixed hyperplane, generator, equation."""

    hyperplane: Hyperplane
    rhs: RatFunc
    mu: FFElem
    j: int
    gen_coeffs: tuple

    def formula(self) -> str:
        parts = []
        p = self.mu.ctx.p
        for i, c in enumerate(self.gen_coeffs):
            if c.is_zero():
                continue
            e = p ** i
            ys = "y" if e == 1 else f"y^{e}"
            if c == self.mu.ctx.one():
                parts.append(ys)
            else:
                parts.append(f"({c}){ys}")
        return "+".join(parts) if parts else "0"

    def as_algebra_element(self, algebra: QuotientAlgebra) -> QAElem:
        coeffs = {}
        p = self.mu.ctx.p
        for i, c in enumerate(self.gen_coeffs):
            coeffs[p ** i] = c
        top = max(coeffs) if coeffs else 0
        vec = [coeffs.get(i, self.mu.ctx.zero()) for i in range(top + 1)]
        return algebra.element(vec)


def subextensions(spec: ExtensionSpec) -> list[SubextensionDesc]:
    """All (p^n-1)/(p-1) degree-p subextensions, each verified in the algebra.

    The generator for hyperplane H is z = j*f_H(y)/f_H(eps_H) with the unit
    j in F_p* chosen so that the rhs multiplier j/f_H(eps_H)^p is smallest
    in canonical element order; this makes the emitted equations stable.
    """
    spec.require_irreducible()
    k0 = spec.k0
    p = k0.p
    algebra = spec.algebra()
    wp = AdditivePoly(k0, (-k0.one(), k0.one()))
    out = []
    for h in spec.hyperplanes():
        inv = (h.scale ** p).inverse()
        best_j = 1
        best_mu = inv
        for j in range(2, p):
            cand = j * inv
            if cand.to_int() < best_mu.to_int():
                best_j = j
                best_mu = cand
        rhs = spec.u.scale_const(best_mu)
        j_el = k0.from_int(best_j)
        scale_inv = h.scale.inverse()
        gen_coeffs = tuple(j_el * c * scale_inv for c in h.f_H.a)
        desc = SubextensionDesc(h, rhs, best_mu, best_j, gen_coeffs)
        z = desc.as_algebra_element(algebra)
        if not qa_verify(algebra, Satisfies(z, wp, rhs)):
            raise InternalCheckError("subextension generator fails its equation")
        if not qa_verify(algebra, FixedBy(z, tuple(h.elements()))):
            raise InternalCheckError("subextension generator moved by its hyperplane")
        moved = z.sigma(h.eps)
        if moved != z + algebra.const(j_el):
            raise InternalCheckError("complement action on subextension generator wrong")
        out.append(desc)
    return out


# ---------------------------------------------------------------------------
# ramification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamifiedPlace:
    place: Place
    lam: int
    m: int
    e_bound: int
    exact: bool


@dataclass(frozen=True)
class InfinityBehavior:
    ramified: bool
    lam: int | None = None
    m: int | None = None
    e_bound: int | None = None
    exact: bool | None = None


@dataclass(frozen=True)
class RamificationReport:
    finite: tuple
    infinity: InfinityBehavior
    reduced_u: RatFunc


def ramification_report(spec: ExtensionSpec) -> RamificationReport:
    """Ramified places of the reduced form with exponent bounds.

    Every finite pole place of the reduced rhs is ramified with e divisible
    by p^(n-m); the bound is exact when m = 0.  The infinite place is
    ramified iff the reduced polynomial part is nonconstant.
    """
    _, red = reduce_global(spec)
    p = spec.k0.p
    n = spec.f.n
    u = red.u
    finite = []
    for place in _pole_places(u):
        e = -place_valuation(u, place)
        lam, m = _p_adic_split(e, p)
        finite.append(RamifiedPlace(place, lam, m, p ** (n - m), m == 0))
    finite.sort(key=lambda r: r.place.sort_key())
    r = u.poly_part()
    if r.degree() >= 1:
        lam, m = _p_adic_split(r.degree(), p)
        inf = InfinityBehavior(True, lam, m, p ** (n - m), m == 0)
    else:
        inf = InfinityBehavior(False)
    return RamificationReport(tuple(finite), inf, u)


# ---------------------------------------------------------------------------
# splitting of places
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaceVerdict:
    place: Place
    kind: str  # "split" | "inert" | "ramified"
    inertia_degree: int


def _hyperplane_trace_split(spec: ExtensionSpec, value: FFElem, rf) -> bool:
    """value in the residue field passes the image test for every hyperplane."""
    p = spec.k0.p
    for h in spec.hyperplanes():
        c = value * rf.emb(h.scale) ** (-p)
        if absolute_trace_value(c) != 0:
            return False
    return True


def place_splitting(spec: ExtensionSpec, place: Place, strict: bool = False) -> PlaceVerdict:
    """Verdict at one place of the reduced extension.

    Unramified finite places split fully iff the rhs value at the designated
    residue root passes the p-th-power-image trace test for every
    hyperplane; otherwise the place is inert of degree p.  The infinite
    place is read off the reduced polynomial part the same way.
    """
    _, red = reduce_global(spec)
    u = red.u
    if place.is_infinite:
        if u.poly_part().degree() >= 1:
            if strict:
                raise RamifiedPlaceForSplitTest("infinite place is ramified")
            return PlaceVerdict(place, "ramified", 1)
    else:
        if any(place == q for q in _pole_places(u)):
            if strict:
                raise RamifiedPlaceForSplitTest(f"{place} is ramified")
            return PlaceVerdict(place, "ramified", 1)
    rf = residue_field(spec.k0, place)
    value = residue_eval(u, place, rf)
    if _hyperplane_trace_split(red, value, rf):
        return PlaceVerdict(place, "split", 1)
    return PlaceVerdict(place, "inert", spec.k0.p)


@dataclass(frozen=True)
class HyperplaneVerdict:
    hyperplane: Hyperplane
    verdict: str  # place behavior in the fixed field of the hyperplane
    reduced_rhs: RatFunc


@dataclass(frozen=True)
class PlaceDecomposition:
    place: Place
    per_hyperplane: tuple
    e: int
    f: int
    g: int
    decomposition_tags: tuple
    inertia_tags: tuple


def _degree_p_place_verdict(k0: FieldCtx, rhs: RatFunc, place: Place) -> tuple[str, RatFunc]:
    """Behavior of one place in z^p - z = rhs, via local normalization."""
    wp = AdditivePoly(k0, (-k0.one(), k0.one()))
    red, _ = _reduce_rhs(wp, rhs)
    if place.is_infinite:
        if red.poly_part().degree() >= 1:
            return "ramified", red
    else:
        if place_valuation(red, place) < 0:
            return "ramified", red
    rf = residue_field(k0, place)
    value = residue_eval(red, place, rf)
    if absolute_trace_value(value) == 0:
        return "split", red
    return "inert", red


def place_decomposition(spec: ExtensionSpec, place: Place) -> PlaceDecomposition:
    """(e, f, g) at a place, assembled from all degree-p subextensions.

    The inertia group is the intersection of the hyperplanes whose fixed
    fields are unramified at the place, the decomposition group the
    intersection of those where it splits; group orders give e, f, g.
    """
    spec.require_irreducible()
    k0 = spec.k0
    group = spec.group
    descs = subextensions(spec)
    per = []
    unram = []
    split = []
    for desc in descs:
        verdict, red = _degree_p_place_verdict(k0, desc.rhs, place)
        per.append(HyperplaneVerdict(desc.hyperplane, verdict, red))
        if verdict != "ramified":
            unram.append(desc.hyperplane)
        if verdict == "split":
            split.append(desc.hyperplane)
    all_elems = set(group.elements)
    inertia = set(all_elems)
    for h in unram:
        inertia &= h.elements()
    decomp = set(all_elems)
    for h in split:
        decomp &= h.elements()
    if not inertia <= decomp:
        raise InternalCheckError("inertia group escaped the decomposition group")
    e = len(inertia)
    fdeg = len(decomp) // len(inertia)
    g = (k0.p ** spec.f.n) // len(decomp)
    dec_tags = tuple(
        h.label() for h in spec.hyperplanes() if decomp <= h.elements()
    )
    in_tags = tuple(
        h.label() for h in spec.hyperplanes() if inertia <= h.elements()
    )
    return PlaceDecomposition(place, tuple(per), e, fdeg, g, dec_tags, in_tags)


# ---------------------------------------------------------------------------
# combining independent degree-p generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CombinedExtension:
    spec: ExtensionSpec
    mus: tuple
    gammas: tuple

    def formula(self) -> str:
        parts = []
        for i, mu in enumerate(self.mus, start=1):
            if mu == mu.ctx.one():
                parts.append(f"z{i}")
            else:
                parts.append(f"({mu})z{i}")
        return "+".join(parts)


def combine_generators(k0: FieldCtx, gammas, mus) -> CombinedExtension:
    """One equation for the compositum of z_i^p - z_i = gamma_i via y = sum mu_i z_i.

    Requires the gamma_i independent modulo p-th-power images (every
    nontrivial F_p-combination stays outside), which is exactly the
    compositum having full degree p^n.
    """
    gammas = [g if isinstance(g, RatFunc) else RatFunc.const(k0, g) for g in gammas]
    mus = list(mus)
    if len(gammas) != len(mus) or not gammas:
        raise AspwError("need matching nonempty generator and multiplier lists")
    n = len(gammas)
    p = k0.p
    combos = _nonzero_tuples(p, n)
    for combo in combos:
        acc = RatFunc(Poly(k0))
        for c, g in zip(combo, gammas):
            acc = acc + c * g
        member, _ = wp_membership(acc)
        if member:
            raise DependentSubextensions(
                f"combination {combo} of the right-hand sides is a p-th-power image"
            )
    f = subspace_poly(k0, mus)
    u = RatFunc(Poly(k0))
    for i in range(n):
        mu = mus[i]
        g = gammas[i]
        ell = RatFunc(Poly(k0))
        gp = g
        h = RatFunc(Poly(k0))
        for jj in range(f.n + 1):
            # ell holds l_j(gamma) = gamma + ... + gamma^(p^(j-1)), l_0 = 0
            if jj > 0:
                ell = ell + gp
                gp = gp.pth_power()
            if not f.a[jj].is_zero():
                h = h + (f.a[jj] * mu ** (p ** jj)) * ell
        u = u + h
    spec = ExtensionSpec(f, u, k0)
    if not check_irreducible(spec):
        raise InternalCheckError("combined extension is not of full degree")
    return CombinedExtension(spec, tuple(mus), tuple(gammas))


def _nonzero_tuples(p: int, n: int):
    import itertools

    return [t for t in itertools.product(range(p), repeat=n) if any(t)]


# ---------------------------------------------------------------------------
# linear relations between generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorRelation:
    """z = sum A_i y^(p^i) + D, with the kernel of the linear part known."""

    A: tuple
    D: RatFunc
    subgroup: tuple
    mu_basis: tuple

    def formula(self) -> str:
        p = self.A[0].ctx.p if self.A else 0
        parts = []
        for i, c in enumerate(self.A):
            if c.is_zero():
                continue
            e = p ** i
            ys = "y" if e == 1 else f"y^{e}"
            parts.append(ys if c == c.ctx.one() else f"({c}){ys}")
        body = "+".join(parts) if parts else "0"
        ds = pf_string(self.D)
        if ds != "0":
            body = body + " + " + ds if body != "0" else ds
        return body


def generator_relation(
    spec: ExtensionSpec, z: QAElem, subgroup
) -> GeneratorRelation:
    """Express an algebra element generating the fixed field of a subgroup.

    The differences sigma_mu(z) - z over a basis mu of the root group must
    be constants in k0; solving the Moore system for them produces the
    linearized part, and the constant remainder is D.  The claimed subgroup
    must be exactly the kernel of the linearized part on the root group.
    """
    spec.require_irreducible()
    algebra = spec.algebra()
    if z.alg is not algebra:
        raise ContextMismatch("element lives in a different algebra")
    k0 = spec.k0
    group = spec.group
    sub_elems = _subgroup_span(k0, subgroup)
    for x in sub_elems:
        if not group.contains(x):
            raise NotASubgroup(f"{x} is not a root of the defining polynomial")
    mu_basis, fixed_count = _adapted_basis(group, sub_elems)
    gammas = []
    for mu in mu_basis:
        diff = z.sigma(mu) - z
        if not diff.is_constant():
            raise NotAFixedField("generator moves by a non-constant amount")
        val = diff.constant_value()
        if not val.is_constant():
            raise NotAFixedField("generator moves by a non-scalar amount")
        gammas.append(val.constant_value())
    n = group.n
    for i in range(n - fixed_count, n):
        if not gammas[i].is_zero():
            raise NotAFixedField("claimed subgroup does not fix the generator")
    p = k0.p
    rows = []
    for mu in mu_basis:
        row = []
        acc = mu
        for _ in range(n):
            row.append(acc)
            acc = acc ** p
        rows.append(row)
    A = tuple(linear_solve(rows, gammas))
    lin_vec = {p ** i: a for i, a in enumerate(A)}
    top = max(lin_vec) if lin_vec else 0
    lin = algebra.element([lin_vec.get(i, k0.zero()) for i in range(top + 1)])
    rem = z - lin
    if not rem.is_constant():
        raise InternalCheckError("remainder of the linear relation is not constant")
    D = rem.constant_value()
    for xi in group.elements:
        lval = _linear_eval(A, xi)
        if lval.is_zero() != (xi in sub_elems):
            raise NotAFixedField("kernel of the linear part differs from the subgroup")
    if lin + algebra.const(D) != z:
        raise InternalCheckError("linear relation does not reproduce the generator")
    return GeneratorRelation(A, D, tuple(sorted(sub_elems, key=lambda e: e.to_int())),
                             tuple(mu_basis))


def _linear_eval(A, x: FFElem) -> FFElem:
    acc = x.ctx.zero()
    pw = x
    p = x.ctx.p
    for a in A:
        acc = acc + a * pw
        pw = pw ** p
    return acc


def _subgroup_span(k0: FieldCtx, gens) -> set:
    span = {k0.zero()}
    for g in gens:
        span = {s + j * g for s in span for j in range(k0.p)}
    return span


def _adapted_basis(group: RootGroup, sub_elems: set):
    """Basis of the root group: complement vectors first, subgroup vectors last."""
    k0 = group.k0
    p = k0.p
    sub_basis = []
    span = {k0.zero()}
    for x in sorted(sub_elems, key=lambda e: e.to_int()):
        if x not in span:
            sub_basis.append(x)
            span = {s + j * x for s in span for j in range(p)}
    comp_basis = []
    span_all = set(span)
    for x in group.elements:
        if x not in span_all:
            comp_basis.append(x)
            span_all = {s + j * x for s in span_all for j in range(p)}
        if len(comp_basis) + len(sub_basis) == group.n:
            break
    return comp_basis + sub_basis, len(sub_basis)


# ---------------------------------------------------------------------------
# structured report
# ---------------------------------------------------------------------------

def json_report(spec: ExtensionSpec, splitting_places=None) -> dict:
    """Full analysis as a JSON-ready dict with canonical string forms."""
    spec.require_irreducible()
    _, red = reduce_global(spec)
    report = ramification_report(spec)
    descs = subextensions(red)
    if splitting_places is None:
        splitting_places = [r.place for r in report.finite] + [Place.infinite()]
    splitting = [place_splitting(spec, pl) for pl in splitting_places]
    inf = report.infinity
    inf_json: dict = {"ramified": inf.ramified}
    if inf.ramified:
        inf_json.update(
            {"lambda": inf.lam, "m": inf.m, "e_bound": inf.e_bound, "exact": inf.exact}
        )
    return {
        "field": {
            "p": spec.k0.p,
            "s": spec.k0.s,
            "modulus": list(spec.k0.modulus),
        },
        "f": [str(a) for a in spec.f.a],
        "u": pf_string(spec.u),
        "reduced_u": pf_string(red.u),
        "ramified": [
            {
                "place": str(r.place),
                "lambda": r.lam,
                "m": r.m,
                "e_bound": r.e_bound,
                "exact": r.exact,
            }
            for r in report.finite
        ],
        "infinity": inf_json,
        "subextensions": [
            {"rhs": pf_string(d.rhs), "fixed_hyperplane": d.hyperplane.label()}
            for d in descs
        ],
        "splitting": [
            {"place": str(v.place), "verdict": v.kind} for v in splitting
        ],
    }
