"""Univariate polynomials and rational functions over an explicit finite field.

Polynomials are dense coefficient tuples over a gf.FieldCtx.  Rational
functions are kept in lowest terms with monic denominator.  Places of the
rational function field k0(T) are monic irreducible polynomials plus one
infinite place.  Partial fraction decompositions are exact and follow the
digit expansion at each place: u = poly_part + sum_i sum_j C_ij / P_i^e_ij
with deg C_ij < deg P_i and exponents listed in decreasing order.

Factoring runs squarefree reduction, then distinct-degree splitting, then a
deterministic equal-degree sweep over enumerated low-degree elements, which
is exact and fast at the small sizes this package targets.
"""

from __future__ import annotations

import math

from .errors import (
    IncompatibleContexts,
    InternalCheckError,
    NotIrreducible,
    PoleAtPlace,
    ZeroPolynomial,
)
from .gf import FFElem, FieldCtx, SubfieldEmbedding, embed_field, frobenius_power

INF = math.inf


class Poly:
    """Dense univariate polynomial over a FieldCtx; () is the zero polynomial."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(ctx: FieldCtx, c) -> "Poly":
        if isinstance(c, int):
            c = ctx.from_coeffs((c,))
        return Poly(ctx, (c,))

    @staticmethod
    def variable(ctx: FieldCtx) -> "Poly":
        return Poly(ctx, (ctx.zero(), ctx.one()))

    @staticmethod
    def from_ints(ctx: FieldCtx, ints) -> "Poly":
        return Poly(ctx, tuple(ctx.from_coeffs((i,)) for i in ints))

    # -- basics --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> FFElem:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one()

    def coeff(self, i: int) -> FFElem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _check(self, other: "Poly"):
        if self.ctx != other.ctx:
            raise IncompatibleContexts("polynomials over different fields")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, FFElem):
            return Poly(self.ctx, (other,))
        if isinstance(other, int):
            return Poly.const(self.ctx, other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        a, b = self.coeffs, other.coeffs
        zero = self.ctx.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    if not bj.is_zero():
                        out[i + j] = out[i + j] + ai * bj
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.coeffs[-1].inverse()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(self.ctx), self
        zero = self.ctx.zero()
        quot = [zero] * (dq + 1)
        for k in range(dq, -1, -1):
            if len(rem) - 1 != k + other.degree():
                while rem and rem[-1].is_zero():
                    rem.pop()
            if len(rem) - 1 < k + other.degree():
                continue
            c = rem[-1] * lead_inv
            quot[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * oc
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.ctx, quot), Poly(self.ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.ctx, 1)
        acc = self
        while e:
            if e & 1:
                result = result * acc
            e >>= 1
            if e:
                acc = acc * acc
        return result

    def pth_power(self) -> "Poly":
        """Cheap p-th power: exponents scale by p, coefficients Frobenius."""
        p = self.ctx.p
        zero = self.ctx.zero()
        out = [zero] * (p * self.degree() + 1) if not self.is_zero() else []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                out[p * i] = frobenius_power(c, 1)
        return Poly(self.ctx, out)

    def pth_root(self) -> "Poly":
        """Inverse of pth_power; requires support on exponents divisible by p."""
        p = self.ctx.p
        zero = self.ctx.zero()
        if self.is_zero():
            return self
        out = [zero] * (self.degree() // p + 1)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i % p != 0:
                raise ValueError("polynomial is not a p-th power")
            out[i // p] = frobenius_power(c, -1)
        return Poly(self.ctx, out)

    def is_pth_power(self) -> bool:
        return all(c.is_zero() for i, c in enumerate(self.coeffs) if i % self.ctx.p != 0)

    def derivative(self) -> "Poly":
        return Poly(self.ctx, tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.coeffs[-1].inverse()
        return Poly(self.ctx, tuple(c * inv for c in self.coeffs))

    def __call__(self, x: FFElem) -> FFElem:
        acc = x.ctx.zero() if isinstance(x, FFElem) else self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_embedded(self, x: FFElem, emb: SubfieldEmbedding) -> FFElem:
        """Evaluate at x in a bigger field, mapping coefficients through emb."""
        acc = emb.target.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + emb(c)
        return acc

    # -- comparison, ordering, display ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, (FFElem, int)):
            other = self._coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def sort_key(self):
        """(degree, integer encoding with c_0 least significant)."""
        enc = 0
        q = self.ctx.order()
        for c in reversed(self.coeffs):
            enc = enc * q + c.to_int()
        return (self.degree(), enc)

    def to_str(self, var: str = "T") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c))
                continue
            if c == self.ctx.one():
                cs = ""
            elif c.in_prime_field():
                cs = str(c)
            else:
                cs = f"({c})"
            xs = var if i == 1 else f"{var}^{i}"
            parts.append(cs + xs)
        return "+".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_extgcd(a: Poly, b: Poly):
    """Returns (g, x, y) monic g with x*a + y*b = g."""
    ctx = a.ctx
    r0, r1 = a, b
    x0, x1 = Poly.const(ctx, 1), Poly(ctx)
    y0, y1 = Poly(ctx), Poly.const(ctx, 1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero():
        return r0, x0, y0
    inv = r0.leading().inverse()
    return r0 * inv, x0 * inv, y0 * inv


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.const(base.ctx, 1) % mod
    acc = base % mod
    while e:
        if e & 1:
            result = (result * acc) % mod
        e >>= 1
        if e:
            acc = (acc * acc) % mod
    return result


def inv_frobenius_mod(a: Poly, mod: Poly, n: int) -> Poly:
    """Solve C**(p**n) = a in the residue field k0[T]/(mod).

    Uses the fact that the residue field has p**(s*deg mod) elements, so the
    inverse of the n-fold Frobenius is the (s*deg-n)-fold Frobenius.
    """
    sm = a.ctx.s * mod.degree()
    steps = (sm - n) % sm
    c = a % mod
    for _ in range(steps):
        c = poly_powmod(c, a.ctx.p, mod)
    return c


# ---------------------------------------------------------------------------
# factoring
# ---------------------------------------------------------------------------

def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over F_q, q the field order."""
    d = f.degree()
    if d <= 0:
        return False
    f = f.monic()
    if d == 1:
        return True
    q = f.ctx.order()
    T = Poly.variable(f.ctx)
    t = T % f
    for _ in range(d):
        t = poly_powmod(t, q, f)
    if t != T % f:
        return False
    for r in set(_prime_divisors(d)):
        t = T % f
        for _ in range(d // r):
            t = poly_powmod(t, q, f)
        g = poly_gcd(t - T, f)
        if g.degree() != 0:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_candidates(ctx: FieldCtx):
    """Non-constant polynomials in a fixed enumeration, used by the EDF sweep."""
    q = ctx.order()
    deg = 1
    while True:
        for k in range(q ** (deg + 1)):
            digits = []
            t = k
            for _ in range(deg + 1):
                digits.append(ctx.from_int(t % q))
                t //= q
            cand = Poly(ctx, digits)
            if cand.degree() == deg:
                yield cand
        deg += 1


def _edf(f: Poly, d: int) -> list[Poly]:
    """Split monic squarefree f into its irreducible factors, all of degree d."""
    if f.degree() == d:
        return [f]
    ctx = f.ctx
    q = ctx.order()
    Q = q ** d
    budget = 0
    for cand in _poly_candidates(ctx):
        budget += 1
        if budget > 4 * q * q + 200:
            raise InternalCheckError("equal-degree sweep exhausted its candidate budget")
        if ctx.p == 2:
            t = cand % f
            acc = t
            cur = t
            e = ctx.s * d
            for _ in range(e - 1):
                cur = (cur * cur) % f
                acc = (acc + cur) % f
            g = poly_gcd(acc, f)
        else:
            w = poly_powmod(cand, (Q - 1) // 2, f)
            g = poly_gcd(w - Poly.const(ctx, 1), f)
        if 0 < g.degree() < f.degree():
            return sorted(
                _edf(g.monic(), d) + _edf((f // g).monic(), d),
                key=Poly.sort_key,
            )
    raise InternalCheckError("unreachable")


def _ddf(f: Poly) -> list[tuple[Poly, int]]:
    """Distinct-degree split of a monic squarefree f: [(product, degree)]."""
    ctx = f.ctx
    q = ctx.order()
    T = Poly.variable(ctx)
    out = []
    h = T % f
    d = 0
    g = f
    while g.degree() > 0 and 2 * (d + 1) <= g.degree():
        d += 1
        h = poly_powmod(h, q, g)
        c = poly_gcd(h - T, g)
        if c.degree() > 0:
            out.append((c, d))
            g = g // c
            h = h % g
    if g.degree() > 0:
        out.append((g, g.degree()))
    return out


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted canonically."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    found: dict[Poly, int] = {}
    _factor_into(f.monic(), 1, found)
    check = Poly.const(f.ctx, 1)
    for g, m in found.items():
        check = check * g ** m
    if check != f.monic():
        raise InternalCheckError("factor product mismatch")
    return sorted(found.items(), key=lambda t: t[0].sort_key())


def _factor_into(f: Poly, scale: int, found: dict):
    if f.degree() == 0:
        return
    fp = f.derivative()
    if fp.is_zero():
        _factor_into(f.pth_root(), scale * f.ctx.p, found)
        return
    rad = f // poly_gcd(f, fp)
    pieces = []
    for block, d in _ddf(rad):
        pieces.extend(_edf(block, d))
    for piece in pieces:
        m = 0
        while True:
            quot, rem = divmod(f, piece)
            if not rem.is_zero():
                break
            f = quot
            m += 1
        found[piece] = found.get(piece, 0) + scale * m
    if f.degree() > 0:
        _factor_into(f.pth_root(), scale * f.ctx.p, found)


def monic_irreducibles(ctx: FieldCtx, degree: int):
    """All monic irreducible polynomials of the given degree, canonical order."""
    q = ctx.order()
    for k in range(q ** degree):
        digits = []
        t = k
        for _ in range(degree):
            digits.append(ctx.from_int(t % q))
            t //= q
        cand = Poly(ctx, digits + [ctx.one()])
        if is_irreducible(cand):
            yield cand


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Rational function in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.ctx, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(num.ctx, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num // g
                den = den // g
            lead = den.leading()
            if lead != den.ctx.one():
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @staticmethod
    def const(ctx: FieldCtx, c) -> "RatFunc":
        return RatFunc(Poly.const(ctx, c))

    @staticmethod
    def from_poly(pol: Poly) -> "RatFunc":
        return RatFunc(pol)

    @staticmethod
    def variable(ctx: FieldCtx) -> "RatFunc":
        return RatFunc(Poly.variable(ctx))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> FFElem:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return self.ctx.zero()
        return self.num.coeffs[0] / self.den.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (FFElem, int)):
            return RatFunc.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

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
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (RatFunc.const(self.ctx, 1) / self) ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def scale_const(self, c: FFElem) -> "RatFunc":
        """Multiply by a constant without renormalizing (stays reduced)."""
        if c.is_zero() or self.num.is_zero():
            return RatFunc(Poly(self.ctx))
        out = object.__new__(RatFunc)
        out.num = self.num * c
        out.den = self.den
        return out

    def pth_power(self) -> "RatFunc":
        return RatFunc(self.num.pth_power(), self.den.pth_power())

    def is_pth_power(self) -> bool:
        return self.num.is_pth_power() and self.den.is_pth_power()

    def pth_root(self) -> "RatFunc":
        return RatFunc(self.num.pth_root(), self.den.pth_root())

    def poly_part(self) -> Poly:
        return self.num // self.den

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var: str = "T") -> str:
        return pf_string(self, var=var)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc(({self.num.to_str()})/({self.den.to_str()}))"


# ---------------------------------------------------------------------------
# places, valuations, residues
# ---------------------------------------------------------------------------

class Place:
    """A place of k0(T): a monic irreducible polynomial or the infinite place."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly | None):
        if poly is not None:
            poly = poly.monic()
            if not is_irreducible(poly):
                raise NotIrreducible(f"{poly} is not irreducible")
        self.poly = poly

    @staticmethod
    def infinite() -> "Place":
        return Place(None)

    @staticmethod
    def finite(poly: Poly) -> "Place":
        return Place(poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def sort_key(self):
        if self.poly is None:
            return (1 << 60, 0)
        return self.poly.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    def __hash__(self):
        return hash(("place", self.poly))

    def __str__(self):
        return "inf" if self.poly is None else self.poly.to_str()

    def __repr__(self):
        return f"Place({self})"


def place_valuation(u: RatFunc, place: Place):
    """Order of u at the place; math.inf for the zero function."""
    if u.is_zero():
        return INF
    if place.is_infinite:
        return u.den.degree() - u.num.degree()
    P = place.poly
    v = 0
    num = u.num
    while True:
        q, r = divmod(num, P)
        if not r.is_zero():
            break
        num = q
        v += 1
    if v > 0:
        return v
    den = u.den
    while True:
        q, r = divmod(den, P)
        if not r.is_zero():
            break
        den = q
        v -= 1
    return v


class PlaceExpansion:
    """Digit expansion of the pole part at one finite place."""

    __slots__ = ("place_poly", "digits")

    def __init__(self, place_poly: Poly, digits):
        self.place_poly = place_poly
        self.digits = tuple(digits)  # [(exponent desc, Poly digit != 0)]

    def max_exponent(self) -> int:
        return self.digits[0][0]

    def full_numerator(self) -> Poly:
        """Q with this block equal to Q / P^max_exponent, gcd(Q, P) = 1."""
        e = self.max_exponent()
        acc = Poly(self.place_poly.ctx)
        for j, c in self.digits:
            acc = acc + c * self.place_poly ** (e - j)
        return acc

    def as_fraction(self) -> RatFunc:
        acc = RatFunc(Poly(self.place_poly.ctx))
        for e, c in self.digits:
            acc = acc + RatFunc(c, self.place_poly ** e)
        return acc


class PartialFractions:
    """Exact partial fraction decomposition of a rational function."""

    __slots__ = ("poly_part", "terms")

    def __init__(self, poly_part: Poly, terms):
        self.poly_part = poly_part
        self.terms = tuple(terms)

    def recombine(self) -> RatFunc:
        acc = RatFunc(self.poly_part)
        for t in self.terms:
            acc = acc + t.as_fraction()
        return acc

    def place_triples(self) -> list[tuple[Poly, int, Poly]]:
        """One (P, e, Q) per pole place: the block Q/P^e in lowest terms."""
        return [(t.place_poly, t.max_exponent(), t.full_numerator()) for t in self.terms]

    def digit_triples(self) -> list[tuple[Poly, int, Poly]]:
        """Flattened (P, e_j, C_j) digit terms, deg C_j < deg P."""
        return [(t.place_poly, e, c) for t in self.terms for e, c in t.digits]


def partial_fractions(u: RatFunc) -> PartialFractions:
    ctx = u.ctx
    poly_part, rem = divmod(u.num, u.den)
    terms = []
    if not rem.is_zero():
        den_factors = factor(u.den)
        for P, e in den_factors:
            Pe = P ** e
            other = u.den // Pe
            g, inv_other, _ = poly_extgcd(other % Pe, Pe)
            if g.degree() != 0:
                raise InternalCheckError("denominator factors not coprime")
            A = (rem * inv_other) % Pe
            digits = []
            for j in range(e):
                A, c = divmod(A, P)
                if not c.is_zero():
                    digits.append((e - j, c))
            if digits:
                terms.append(PlaceExpansion(P, tuple(digits)))
    terms.sort(key=lambda t: t.place_poly.sort_key())
    out = PartialFractions(poly_part, terms)
    if out.recombine() != u:
        raise InternalCheckError("partial fraction recombination mismatch")
    return out


def pf_string(u: RatFunc, var: str = "T") -> str:
    """Canonical display: pole terms by place then the polynomial part."""
    pf = partial_fractions(u)
    parts = []
    for t in pf.terms:
        ps = t.place_poly.to_str(var)
        if "+" in ps:
            ps = f"({ps})"
        for e, c in t.digits:
            den = ps if e == 1 else f"{ps}^{e}"
            if c.is_constant():
                cs = str(c.coeffs[0])
                if "+" in cs:
                    cs = f"({cs})"
            else:
                cs = f"({c.to_str(var)})"
            parts.append(f"{cs}/{den}")
    if not pf.poly_part.is_zero():
        parts.append(pf.poly_part.to_str(var))
    return " + ".join(parts) if parts else "0"


# -- residue fields ----------------------------------------------------------

class ResidueField:
    """Residue field of a place, realized as a fresh field context.

    For a finite place of degree m over k0 = F_{p^s} this is F_{p^(s*m)}
    together with the canonical embedding of k0 and the designated root nu
    of the place polynomial (smallest root in canonical element order).
    The infinite place has residue field k0 itself.
    """

    __slots__ = ("k0", "place", "ctx", "emb", "nu")

    def __init__(self, k0: FieldCtx, place: Place):
        self.k0 = k0
        self.place = place
        if place.is_infinite or place.degree() == 1:
            self.ctx = k0
            self.emb = embed_field(k0, k0)
            if place.is_infinite:
                self.nu = None
            else:
                self.nu = -place.poly.coeff(0)
        else:
            from .gf import make_field

            m = place.degree()
            big = make_field(k0.p, k0.s * m)
            emb = embed_field(k0, big)
            root = None
            for cand in big.elements():
                if place.poly.eval_embedded(cand, emb).is_zero():
                    root = cand
                    break
            if root is None:
                raise InternalCheckError("place polynomial has no root in its residue field")
            self.ctx = big
            self.emb = emb
            self.nu = root


_RESIDUE_CACHE: dict = {}


def residue_field(k0: FieldCtx, place: Place) -> ResidueField:
    key = (k0, place)
    rf = _RESIDUE_CACHE.get(key)
    if rf is None:
        rf = ResidueField(k0, place)
        _RESIDUE_CACHE[key] = rf
    return rf


def residue_eval(u: RatFunc, place: Place, rf: ResidueField | None = None) -> FFElem:
    """Value of u at the place (an element of the residue field)."""
    if rf is None:
        rf = residue_field(u.ctx, place)
    v = place_valuation(u, place)
    if v < 0:
        raise PoleAtPlace(f"{u} has a pole at {place}")
    if place.is_infinite:
        if u.is_zero() or v > 0:
            return u.ctx.zero()
        return u.num.leading() / u.den.leading()
    nu = rf.nu
    top = u.num.eval_embedded(nu, rf.emb)
    bot = u.den.eval_embedded(nu, rf.emb)
    if bot.is_zero():
        raise InternalCheckError("denominator vanished at a finite place without a pole")
    return top / bot


def value_at_infinity(u: RatFunc) -> FFElem:
    return residue_eval(u, Place.infinite())


def pole_leading_digit(u: RatFunc, place: Place) -> tuple[int, Poly]:
    """(e, A) with v_P(u) = -e < 0 and u*P^e = A mod P, deg A < deg P, A != 0.

    Only the top digit is computed, which is what pole reduction consumes.
    """
    if place.is_infinite:
        raise ValueError("pole_leading_digit is for finite places")
    P = place.poly
    e = 0
    den = u.den
    while True:
        q, r = divmod(den, P)
        if not r.is_zero():
            break
        den = q
        e += 1
    if e <= 0:
        raise PoleAtPlace(f"no pole of {u} at {place}")
    g, inv_den, _ = poly_extgcd(den % P, P)
    if g.degree() != 0:
        raise InternalCheckError("denominator cofactor not invertible mod place")
    return e, (u.num * inv_den) % P
