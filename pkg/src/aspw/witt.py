"""Witt vectors of fixed finite length and the extensions they describe.

The universal addition, subtraction and multiplication polynomials are
generated once per (p, m) by the ghost-component recursion over exact
integers; every divide-by-p step is asserted exact, and the reduced
mod-p tables drive all runtime arithmetic.  On top of the ring layer
sit the q-power operators, Galois-ring bases and unit inversion, cyclic
subextension data with its generator formula, generator relations
between two length-m specs, slot-by-slot reduction of a spec to the
standard pole/degree shape, and the splitting type of the infinite
place read off a reduced polynomial part.
"""

from __future__ import annotations

import itertools

from .addpoly import AdditivePoly
from .asext import ExtensionSpec, _reduce_rhs, asq_solve, check_irreducible
from .asext import is_reduced as _spec_is_reduced
from .errors import (
    AspwError,
    DependentGenerators,
    IdentityFailure,
    InternalCheckError,
    LengthCapExceeded,
    LengthMismatch,
    NotPrime,
    NotReduced,
    RingMismatch,
    SingularWittSystem,
)
from .gf import FFElem, FieldCtx, is_prime
from .upoly import Poly, RatFunc

# ---------------------------------------------------------------------------
# exact integer polynomials in 2m variables, as {exponent tuple: coefficient}
# ---------------------------------------------------------------------------


def _mp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _mp_sub(a: dict, b: dict) -> dict:
    return _mp_add(a, {k: -v for k, v in b.items()})


def _mp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(i + j for i, j in zip(ka, kb))
            w = out.get(k, 0) + va * vb
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _mp_pow(a: dict, e: int) -> dict:
    assert e >= 1
    result = None
    acc = a
    while e:
        if e & 1:
            result = acc if result is None else _mp_mul(result, acc)
        e >>= 1
        if e:
            acc = _mp_mul(acc, acc)
    return result


def _mp_scale(a: dict, c: int) -> dict:
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def _mp_div_exact(a: dict, c: int) -> dict:
    out = {}
    for k, v in a.items():
        q, r = divmod(v, c)
        if r:
            raise InternalCheckError("ghost recursion hit a non-exact division")
        out[k] = q
    return out


def _mp_mod(a: dict, p: int) -> dict:
    return {k: v % p for k, v in a.items() if v % p}


def _var(idx: int, nvars: int) -> dict:
    exps = [0] * nvars
    exps[idx] = 1
    return {tuple(exps): 1}


def _ghost_of_vars(p: int, i: int, offset: int, nvars: int) -> dict:
    """Ghost coordinate i (1-based) of the variable block at offset."""
    acc: dict = {}
    for j in range(1, i + 1):
        term = _mp_pow(_var(offset + j - 1, nvars), p ** (i - j))
        acc = _mp_add(acc, _mp_scale(term, p ** (j - 1)))
    return acc


def ghost_components(p: int, comps) -> tuple[int, ...]:
    """Ghost coordinates of an integer vector; characteristic-0 diagnostics."""
    out = []
    for i in range(1, len(comps) + 1):
        acc = 0
        for j in range(1, i + 1):
            acc += p ** (j - 1) * comps[j - 1] ** (p ** (i - j))
        out.append(acc)
    return tuple(out)


def eval_int_poly(poly: dict, args) -> int:
    """Evaluate a pre-reduction table polynomial at integer arguments."""
    acc = 0
    for exps, c in poly.items():
        term = c
        for idx, e in enumerate(exps):
            if e:
                term *= args[idx] ** e
        acc += term
    return acc


# ---------------------------------------------------------------------------
# universal operation tables
# ---------------------------------------------------------------------------

LENGTH_CAP = 4

_TABLE_CACHE: dict = {}


class WittUniversalTables:
    """Mod-p operation polynomials for W_m, plus their integer originals.

    sum_polys/diff_polys/prod_polys[i] gives coordinate i+1 of x op y as a
    polynomial in the 2m variables (x_1..x_m, y_1..y_m) with coefficients
    in {1..p-1}; the *_int twins keep the exact-integer versions used to
    generate them.
    """

    __slots__ = ("p", "m", "sum_polys", "diff_polys", "prod_polys",
                 "sum_int", "diff_int", "prod_int")

    def __init__(self, p, m, sum_int, diff_int, prod_int):
        self.p = p
        self.m = m
        self.sum_int = tuple(sum_int)
        self.diff_int = tuple(diff_int)
        self.prod_int = tuple(prod_int)
        self.sum_polys = tuple(_mp_mod(w, p) for w in sum_int)
        self.diff_polys = tuple(_mp_mod(w, p) for w in diff_int)
        self.prod_polys = tuple(_mp_mod(w, p) for w in prod_int)

    def __repr__(self):
        return f"WittUniversalTables(p={self.p}, m={self.m})"


def build_tables(p: int, m: int) -> WittUniversalTables:
    """Generate (memoized) the length-m operation polynomials for prime p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise AspwError("length must be at least 1")
    if m > LENGTH_CAP:
        raise LengthCapExceeded(f"length {m} exceeds the cap {LENGTH_CAP}")
    key = (p, m)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached

    nvars = 2 * m
    gx = [_ghost_of_vars(p, i, 0, nvars) for i in range(1, m + 1)]
    gy = [_ghost_of_vars(p, i, m, nvars) for i in range(1, m + 1)]

    def solve(targets):
        # coordinate i satisfies ghost_i(w) = target_i; peel off the known
        # lower coordinates and divide by p^(i-1), which must be exact
        ws: list = []
        for i in range(1, m + 1):
            acc = targets[i - 1]
            for j in range(1, i):
                pw = _mp_pow(ws[j - 1], p ** (i - j))
                acc = _mp_sub(acc, _mp_scale(pw, p ** (j - 1)))
            ws.append(_mp_div_exact(acc, p ** (i - 1)))
        return ws

    sum_int = solve([_mp_add(gx[i], gy[i]) for i in range(m)])
    diff_int = solve([_mp_sub(gx[i], gy[i]) for i in range(m)])
    prod_int = solve([_mp_mul(gx[i], gy[i]) for i in range(m)])
    tables = WittUniversalTables(p, m, sum_int, diff_int, prod_int)
    _TABLE_CACHE[key] = tables
    return tables


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def _ring_zero(sample):
    if isinstance(sample, FFElem):
        return sample.ctx.zero()
    return RatFunc(Poly(sample.ctx))


def _ring_key(sample):
    return (type(sample).__name__, sample.ctx)


class WittVector:
    """A length-m vector; +, - and * are the Witt ring operations.

    Components are either all FFElem or all RatFunc over one context.
    Vectors are immutable values.
    """

    __slots__ = ("tables", "comps")

    def __init__(self, tables: WittUniversalTables, comps):
        comps = tuple(comps)
        if len(comps) != tables.m:
            raise LengthMismatch(
                f"expected {tables.m} components, got {len(comps)}")
        for c in comps:
            if not isinstance(c, (FFElem, RatFunc)):
                raise AspwError(
                    "components must be field elements or rational functions")
        key = _ring_key(comps[0])
        if any(_ring_key(c) != key for c in comps[1:]):
            raise RingMismatch("mixed component rings in one vector")
        self.tables = tables
        self.comps = comps

    # -- basics --------------------------------------------------------------

    @property
    def m(self) -> int:
        return self.tables.m

    @property
    def ctx(self) -> FieldCtx:
        return self.comps[0].ctx

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_rational(self) -> bool:
        return isinstance(self.comps[0], RatFunc)

    def is_constant(self) -> bool:
        if not self.is_rational():
            return True
        return all(c.is_constant() for c in self.comps)

    def frob(self, i: int = 1) -> "WittVector":
        """Componentwise p^i-th power; distributes over the Witt operations."""
        e = self.tables.p ** i
        return WittVector(self.tables, tuple(c ** e for c in self.comps))

    def zero_like(self) -> "WittVector":
        z = _ring_zero(self.comps[0])
        return WittVector(self.tables, (z,) * self.m)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_arith("add", self, other)

    def __sub__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_arith("sub", self, other)

    def __mul__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return witt_arith("mul", self, other)

    def __neg__(self):
        return witt_arith("sub", self.zero_like(), self)

    # -- comparison / display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        if (self.tables.p, self.m) != (other.tables.p, other.m):
            return False
        return self.comps == other.comps

    def __hash__(self):
        return hash((self.tables.p, self.m, self.comps))

    def __str__(self):
        return "[" + "; ".join(str(c) for c in self.comps) + "]"

    def __repr__(self):
        return f"WittVector({self})"


def _eval_table_poly(poly: dict, vals, zero):
    """Evaluate one reduced operation polynomial at ring elements."""
    cache: dict = {}
    acc = zero
    for exps, c in poly.items():
        term = None
        for idx, e in enumerate(exps):
            if not e:
                continue
            pw = cache.get((idx, e))
            if pw is None:
                pw = vals[idx] ** e
                cache[(idx, e)] = pw
            term = pw if term is None else term * pw
        if term is None:
            term = zero + c
        elif c != 1:
            term = term * c
        acc = acc + term
    return acc


_OP_TABLE_FIELD = {"add": "sum_polys", "sub": "diff_polys", "mul": "prod_polys"}


def witt_arith(op: str, a: WittVector, b: WittVector) -> WittVector:
    """Apply one Witt ring operation: op is "add", "sub" or "mul"."""
    if op not in _OP_TABLE_FIELD:
        raise AspwError(f"unknown Witt operation {op!r}")
    if (a.tables.p, a.m) != (b.tables.p, b.m):
        raise LengthMismatch(
            f"cannot combine W_{a.m}(p={a.tables.p}) with W_{b.m}(p={b.tables.p})")
    if _ring_key(a.comps[0]) != _ring_key(b.comps[0]):
        raise RingMismatch("operands live over different coefficient rings")
    polys = getattr(a.tables, _OP_TABLE_FIELD[op])
    vals = a.comps + b.comps
    zero = _ring_zero(a.comps[0])
    return WittVector(a.tables, tuple(_eval_table_poly(w, vals, zero)
                                      for w in polys))


def teichmuller(tables: WittUniversalTables, u) -> WittVector:
    """The multiplicative lift (u, 0, ..., 0)."""
    zero = _ring_zero(u)
    return WittVector(tables, (u,) + (zero,) * (tables.m - 1))


def witt_lift(tables: WittUniversalTables, value, ctx: FieldCtx | None = None):
    """Lift an integer by repeated Witt addition of 1, or an element by {u}.

    Integer lifts need a field context for the components; t and
    t mod p^m lift to the same vector.
    """
    if isinstance(value, int):
        if ctx is None:
            raise AspwError("an integer lift needs a field context")
        one = teichmuller(tables, ctx.one())
        acc = teichmuller(tables, ctx.zero())
        for _ in range(value % tables.p ** tables.m):
            acc = acc + one
        return acc
    return teichmuller(tables, value)


def asw_operator(x: WittVector, power: int) -> WittVector:
    """x^power - x (Witt difference) with a componentwise p-power first."""
    p = x.tables.p
    e = power
    steps = 0
    while e > 1 and e % p == 0:
        e //= p
        steps += 1
    if e != 1 or steps < 1:
        raise AspwError(f"power must be a positive power of {p}, got {power}")
    powered = WittVector(x.tables, tuple(c ** power for c in x.comps))
    return witt_arith("sub", powered, x)


def _witt_pow(x: WittVector, e: int, one: WittVector) -> WittVector:
    result = one
    acc = x
    while e:
        if e & 1:
            result = result * acc
        e >>= 1
        if e:
            acc = acc * acc
    return result


# ---------------------------------------------------------------------------
# the Galois ring W_m(F_q) inside vectors over k0
# ---------------------------------------------------------------------------


def _in_subfield(c: FFElem, q: int) -> bool:
    return c ** q == c


def _q_exponent(p: int, q: int) -> int:
    n = 0
    e = q
    while e > 1 and e % p == 0:
        e //= p
        n += 1
    if e != 1 or n < 1:
        raise AspwError(f"{q} is not a positive power of {p}")
    return n


def _require_galois_ring(x: WittVector, q: int, what: str) -> None:
    if x.is_rational():
        raise AspwError(f"{what} must have constant components")
    if not all(_in_subfield(c, q) for c in x.comps):
        raise AspwError(f"{what} has a component outside the order-{q} subfield")


def basis_check(vectors) -> bool:
    """Do the first coordinates form an F_p-independent family?"""
    vectors = list(vectors)
    if not vectors:
        return False
    firsts = []
    for v in vectors:
        if v.is_rational():
            raise AspwError("basis vectors must have constant components")
        firsts.append(v.comps[0])
    ctx = firsts[0].ctx
    p = ctx.p
    for combo in itertools.product(range(p), repeat=len(firsts)):
        if not any(combo):
            continue
        acc = ctx.zero()
        for c, x in zip(combo, firsts):
            if c:
                acc = acc + x * c
        if acc.is_zero():
            return False
    return True


class GaloisRingBasis:
    """n vectors spanning W_m(F_q) over W_m(F_p), q = p^n."""

    __slots__ = ("vectors", "q", "n")

    def __init__(self, vectors):
        self.vectors = tuple(vectors)
        if not self.vectors:
            raise AspwError("a basis needs at least one vector")
        p = self.vectors[0].tables.p
        self.n = len(self.vectors)
        self.q = p ** self.n
        for v in self.vectors:
            _require_galois_ring(v, self.q, "a basis vector")
        if not basis_check(self.vectors):
            raise DependentGenerators("first coordinates are F_p-dependent")

    def __repr__(self):
        return f"GaloisRingBasis({', '.join(str(v) for v in self.vectors)})"


def default_galois_basis(tables: WittUniversalTables, k0: FieldCtx,
                         q: int) -> GaloisRingBasis:
    """Teichmuller lifts of the canonical F_p-basis of F_q inside k0."""
    p = tables.p
    n = _q_exponent(p, q)
    if k0.s % n != 0:
        raise AspwError(f"F_{q} does not embed in a field of order {k0.order()}")
    picked: list = []
    span = {k0.zero()}
    for c in k0.elements():
        if len(picked) == n:
            break
        if not _in_subfield(c, q) or c in span:
            continue
        picked.append(c)
        span = {s + c * j for s in span for j in range(p)}
    if len(picked) != n:
        raise InternalCheckError("subfield basis scan came up short")
    return GaloisRingBasis(teichmuller(tables, c) for c in picked)


def witt_unit_inverse(x: WittVector, q: int) -> WittVector:
    """Inverse of a unit of W_m(F_q), via the order of the unit group."""
    _require_galois_ring(x, q, "the element")
    if x.comps[0].is_zero():
        raise AspwError("not a unit: first coordinate is zero")
    m = x.m
    one = teichmuller(x.tables, x.ctx.one())
    inv = _witt_pow(x, q ** (m - 1) * (q - 1) - 1, one)
    if x * inv != one:
        raise InternalCheckError("unit inversion failed")
    return inv


# ---------------------------------------------------------------------------
# extension specs over k0(T)
# ---------------------------------------------------------------------------


class WittExtensionSpec:
    """The equation y^q - y = alpha (Witt difference) over k = k0(T)."""

    __slots__ = ("tables", "q", "n", "alpha", "reduced")

    def __init__(self, tables: WittUniversalTables, q: int, alpha: WittVector,
                 reduced: bool = False):
        if not alpha.is_rational():
            raise AspwError("the right side must have rational components")
        if (alpha.tables.p, alpha.m) != (tables.p, tables.m):
            raise LengthMismatch("vector does not match the tables")
        n = _q_exponent(tables.p, q)
        if alpha.ctx.s % n != 0:
            raise AspwError(
                f"F_{q} does not embed in the constant field of order "
                f"{alpha.ctx.order()}")
        self.tables = tables
        self.q = q
        self.n = n
        self.alpha = alpha
        self.reduced = reduced

    @property
    def k0(self) -> FieldCtx:
        return self.alpha.ctx

    def slot_equation(self, j: int) -> ExtensionSpec:
        """Component j as a one-variable q-power equation over k."""
        f = AdditivePoly.frobenius_minus_id(self.k0, self.n)
        return ExtensionSpec(f, self.alpha.comps[j], self.k0)

    def slot1_irreducible(self) -> bool:
        return check_irreducible(self.slot_equation(0))

    def __eq__(self, other):
        if not isinstance(other, WittExtensionSpec):
            return NotImplemented
        return (self.q, self.alpha) == (other.q, other.alpha)

    def __hash__(self):
        return hash((self.q, self.alpha))

    def __repr__(self):
        return f"WittExtensionSpec(q={self.q}, alpha={self.alpha})"


def witt_is_reduced(spec: WittExtensionSpec) -> bool:
    """Componentwise shape test: every slot passes the q-power shape rules."""
    return all(_spec_is_reduced(spec.slot_equation(j))
               for j in range(spec.tables.m))


WSHIFT = "wshift"
WDESCEND = "wdescend"

REDUCE_CAP = 3


class WittReductionLog:
    """Ordered substitutions taking alpha_start to alpha_final.

    A "wshift" step theta means y -> y - theta, dropping alpha by the
    q-power image of theta.  A "wdescend" step beta replaces the vector
    by its componentwise p-th root (alpha was beta componentwise-powered).
    """

    __slots__ = ("q", "alpha_start", "alpha_final", "steps")

    def __init__(self, q, alpha_start, alpha_final, steps):
        self.q = q
        self.alpha_start = alpha_start
        self.alpha_final = alpha_final
        self.steps = tuple(steps)

    def shifts(self):
        return [v for kind, v in self.steps if kind == WSHIFT]

    def descents(self):
        return [v for kind, v in self.steps if kind == WDESCEND]

    def is_identity(self) -> bool:
        return not self.steps

    def replay(self) -> bool:
        vec = self.alpha_start
        for kind, val in self.steps:
            if kind == WSHIFT:
                vec = vec - asw_operator(val, self.q)
            else:
                if vec != val.frob(1):
                    return False
                vec = val
        return vec == self.alpha_final


def _slot_vector(tables: WittUniversalTables, value: RatFunc,
                 j: int) -> WittVector:
    zero = RatFunc(Poly(value.ctx))
    comps = [zero] * tables.m
    comps[j] = value
    return WittVector(tables, comps)


def _slot_pass(spec_tables, fq, q, vec, steps):
    """Reduce each slot in order with a single total shift per slot.

    A slot-j shift only perturbs later slots, so one sweep leaves every
    component in reduced shape.
    """
    for j in range(spec_tables.m):
        u = vec.comps[j]
        u_red, slot_steps = _reduce_rhs(fq, u)
        if not slot_steps:
            continue
        delta = RatFunc(Poly(u.ctx))
        for _, d in slot_steps:
            delta = delta + d
        theta = _slot_vector(spec_tables, delta, j)
        vec = vec - asw_operator(theta, q)
        steps.append((WSHIFT, theta))
        if vec.comps[j] != u_red:
            raise InternalCheckError("slot reduction left the wrong residue")
    return vec


def witt_reduce(spec: WittExtensionSpec, descend: bool = False):
    """Rewrite the right side in the standard pole/degree shape.

    Shifts are vectors supported in a single slot; the slot value is the
    total shift the one-variable reduction would apply to that component.
    With descend=True, a componentwise p-th root is taken whenever every
    component is a p-th power (and some component is nonconstant), and
    the sweep restarts; the descended equation generates the same field,
    so this trades the given presentation for a smaller one.  Returns
    (log, reduced spec).
    """
    if spec.tables.m > REDUCE_CAP:
        raise LengthCapExceeded(
            f"reduction is capped at length {REDUCE_CAP}")
    fq = AdditivePoly.frobenius_minus_id(spec.k0, spec.n)
    vec = spec.alpha
    steps: list = []
    while True:
        vec = _slot_pass(spec.tables, fq, spec.q, vec, steps)
        if not descend or vec.is_constant():
            break
        if not all(c.is_pth_power() for c in vec.comps):
            break
        beta = WittVector(spec.tables, tuple(c.pth_root() for c in vec.comps))
        steps.append((WDESCEND, beta))
        vec = beta
    out = WittExtensionSpec(spec.tables, spec.q, vec, reduced=True)
    if not witt_is_reduced(out):
        raise InternalCheckError("witt reduction did not reach reduced shape")
    return WittReductionLog(spec.q, spec.alpha, vec, steps), out


# ---------------------------------------------------------------------------
# cyclic subextensions
# ---------------------------------------------------------------------------


class WittSubextension:
    """One cyclic piece: multiplier xi, its equation, and its generator.

    The generator is sum_i xi^(p^i) . y^(p^i) (Witt products and sums,
    componentwise powers), and it satisfies z^p - z = xi . alpha.  The
    piece has full degree p^m exactly when xi is a unit.
    """

    __slots__ = ("xi", "rhs", "gen_coeffs", "full_degree")

    def __init__(self, xi, rhs, gen_coeffs, full_degree):
        self.xi = xi
        self.rhs = rhs
        self.gen_coeffs = tuple(gen_coeffs)
        self.full_degree = full_degree

    def formula(self) -> str:
        p = self.xi.tables.p
        parts = []
        for i, c in enumerate(self.gen_coeffs):
            e = p ** i
            ys = "y" if e == 1 else f"y^{e}"
            parts.append(f"({c}).{ys}")
        return " + ".join(parts)

    def __repr__(self):
        return f"WittSubextension(xi={self.xi}, rhs={self.rhs})"


def cyclic_subextension(xi: WittVector, alpha: WittVector,
                        q: int) -> WittSubextension:
    """The cyclic subextension cut out by a Galois-ring multiplier.

    xi lives in W_m(F_q); alpha is the q-power right side over k.  The
    returned equation is the p-power equation z^p - z = xi . alpha.
    """
    _require_galois_ring(xi, q, "the multiplier")
    if not alpha.is_rational():
        raise AspwError("the right side must have rational components")
    n = _q_exponent(xi.tables.p, q)
    lifted = WittVector(alpha.tables,
                        tuple(RatFunc.const(alpha.ctx, c) for c in xi.comps))
    rhs = lifted * alpha
    gen_coeffs = tuple(xi.frob(i) for i in range(n))
    return WittSubextension(xi, rhs, gen_coeffs,
                            not xi.comps[0].is_zero())


def cyclic_multiplier_orbits(tables: WittUniversalTables, k0: FieldCtx,
                             q: int) -> list[WittVector]:
    """Unit multipliers, one per scaling class by units of W_m(F_p).

    Two multipliers related by a unit W_m(F_p) factor cut out the same
    cyclic subextension; representatives are canonical (smallest
    component-integer tuple) and sorted.
    """
    p = tables.p
    _q_exponent(p, q)
    subfield = [c for c in k0.elements() if _in_subfield(c, q)]
    if len(subfield) != q:
        raise AspwError(
            f"F_{q} does not embed in the constant field of order {k0.order()}")
    prime = [c for c in subfield if c.in_prime_field()]
    scalars = [WittVector(tables, comps)
               for comps in itertools.product(prime, repeat=tables.m)
               if not comps[0].is_zero()]
    seen: set = set()
    reps: list = []
    for comps in itertools.product(subfield, repeat=tables.m):
        if comps[0].is_zero():
            continue
        v = WittVector(tables, comps)
        if v in seen:
            continue
        reps.append(v)
        for j in scalars:
            seen.add(j * v)
    return reps


# ---------------------------------------------------------------------------
# generator relations between two specs
# ---------------------------------------------------------------------------


class WittGeneratorRelation:
    """z = sum A_i . y^(p^i) + D with A_i in W_m(F_q) and D over k."""

    __slots__ = ("A", "D", "mus", "xi_targets")

    def __init__(self, A, D, mus, xi_targets):
        self.A = tuple(A)
        self.D = D
        self.mus = tuple(mus)
        self.xi_targets = tuple(xi_targets)

    def formula(self) -> str:
        p = self.D.tables.p
        parts = []
        for i, c in enumerate(self.A):
            if c.is_zero():
                continue
            e = p ** i
            ys = "y" if e == 1 else f"y^{e}"
            parts.append(f"({c}).{ys}")
        body = " + ".join(parts) if parts else "[0]"
        if not self.D.is_zero():
            body = body + " + " + str(self.D)
        return body

    def __repr__(self):
        return f"WittGeneratorRelation({self.formula()})"


def _apply_linear_form(A, vec: WittVector) -> WittVector:
    """sum_i A_i . vec^(p^i) with the A_i lifted into vec's ring."""
    ctx = vec.ctx
    acc = vec.zero_like()
    for i, a in enumerate(A):
        lifted = WittVector(vec.tables,
                           tuple(RatFunc.const(ctx, c) for c in a.comps))
        acc = acc + lifted * vec.frob(i)
    return acc


def witt_generator_relation(alpha: WittExtensionSpec, beta: WittExtensionSpec,
                            xi_targets, mus=None) -> WittGeneratorRelation:
    """Express beta's generator through alpha's.

    The translations of alpha's generator are labeled by a Galois-ring
    basis mu_1..mu_n (canonical Teichmuller basis when omitted); the
    caller supplies the translations xi_i of beta's generator under the
    same automorphisms.  Solving the Moore-style system M . A = xi by
    elimination with unit pivots gives the coefficients, and the shift D
    is recovered slot by slot so that beta = sum A_i . alpha^(p^i) + the
    q-power image of D, an identity checked before returning.
    """
    if (alpha.q, alpha.tables.p, alpha.tables.m) != \
            (beta.q, beta.tables.p, beta.tables.m):
        raise AspwError("the two specs describe different Witt rings")
    if alpha.k0 != beta.k0:
        raise AspwError("the two specs have different constant fields")
    tables = alpha.tables
    q = alpha.q
    n = alpha.n
    if mus is None:
        mus = default_galois_basis(tables, alpha.k0, q)
    if not isinstance(mus, GaloisRingBasis):
        mus = GaloisRingBasis(mus)
    if len(mus.vectors) != n or mus.q != q:
        raise AspwError(f"expected a basis of {n} vectors for q={q}")
    xi_targets = tuple(xi_targets)
    if len(xi_targets) != n:
        raise AspwError(f"expected {n} target vectors")
    for v in xi_targets:
        _require_galois_ring(v, q, "a target")

    rows = [[mus.vectors[i].frob(j) for j in range(n)] + [xi_targets[i]]
            for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n)
                      if not rows[r][col].comps[0].is_zero()), None)
        if pivot is None:
            raise SingularWittSystem(f"no unit pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = witt_unit_inverse(rows[col][col], q)
        rows[col] = [inv * entry for entry in rows[col]]
        for r in range(n):
            if r == col or rows[r][col].is_zero():
                continue
            factor = rows[r][col]
            rows[r] = [rows[r][j] - factor * rows[col][j]
                       for j in range(n + 1)]
    A = tuple(rows[j][n] for j in range(n))

    applied = _apply_linear_form(A, alpha.alpha)
    residue = beta.alpha - applied
    d_acc = residue.zero_like()
    work = residue
    for j in range(tables.m):
        comp = work.comps[j]
        sol = asq_solve(alpha.k0, n, comp)
        if sol is None:
            raise IdentityFailure(
                f"slot {j + 1} residue is not a q-power image; the specs do "
                "not describe the same field with these targets")
        theta = _slot_vector(tables, sol, j)
        d_acc = d_acc + theta
        work = work - asw_operator(theta, q)
        if not work.comps[j].is_zero():
            raise InternalCheckError("slot peeling left a nonzero residue")
    if beta.alpha != applied + asw_operator(d_acc, q):
        raise InternalCheckError("generator relation identity check failed")
    return WittGeneratorRelation(A, d_acc, mus.vectors, xi_targets)


# ---------------------------------------------------------------------------
# the infinite place
# ---------------------------------------------------------------------------


def witt_infinity_splitting(gamma: WittVector) -> tuple[int, int, int]:
    """(e, f, g) at the infinite place from a reduced polynomial part.

    Cyclic case q = p.  With s leading zero components and the first
    nonconstant component at index t (m when all are constant), e = p^(m-t),
    f = p^(t-s), g = p^s.  The input must be in reduced shape: polynomial
    components only, no p-divisible degrees, and a leading constant must
    not be a p-power image in k0.
    """
    p = gamma.tables.p
    m = gamma.m
    if not gamma.is_rational():
        raise AspwError("expected components in k0(T)")
    for c in gamma.comps:
        if not c.is_polynomial():
            raise NotReduced("a polynomial part cannot carry poles")
    s = 0
    while s < m and gamma.comps[s].is_zero():
        s += 1
    if s == m:
        return (1, 1, p ** m)
    for idx in range(s, m):
        c = gamma.comps[idx]
        if not c.is_constant() and c.poly_part().degree() % p == 0:
            raise NotReduced("a component has p-divisible degree")
    first = gamma.comps[s]
    if first.is_constant():
        ctx = gamma.ctx
        val = first.constant_value()
        if any(x ** p - x == val for x in ctx.elements()):
            raise NotReduced("the leading constant is a p-power image")
    t = s
    while t < m and gamma.comps[t].is_constant():
        t += 1
    result = (p ** (m - t), p ** (t - s), p ** s)
    if result[0] * result[1] * result[2] != p ** m:
        raise InternalCheckError("splitting degrees do not multiply to p^m")
    return result


def witt_infinity_full_split(gamma: WittVector, q: int) -> bool:
    """Does the infinite place split completely (general q)?

    True exactly when the polynomial part reduces to the zero vector,
    i.e. is a q-power image of a polynomial-component vector.
    """
    for c in gamma.comps:
        if not c.is_polynomial():
            raise NotReduced("a polynomial part cannot carry poles")
    tables = gamma.tables
    _, red = witt_reduce(WittExtensionSpec(tables, q, gamma))
    return red.alpha.is_zero()
