"""Text syntax for field elements, rational functions, additive polynomials.

One recursive-descent expression parser evaluates over the rational function
field; the typed entry points then narrow the result (constant, polynomial,
p-power support) and report violations as ParseError.  Accepted operators:
+ - * / ^ with parentheses and implicit multiplication ("2w^2", "(w+1)T^3").
"""

from __future__ import annotations

from .addpoly import AdditivePoly
from .errors import ParseError
from .gf import FFElem, FieldCtx, make_field
from .upoly import Poly, RatFunc

_TOKEN_INT = "int"
_TOKEN_NAME = "name"
_TOKEN_OP = "op"
_TOKEN_END = "end"


def _tokenize(text: str):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append((_TOKEN_INT, int(text[i:j]), i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            out.append((_TOKEN_NAME, text[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            out.append((_TOKEN_OP, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r} at position {i}")
    out.append((_TOKEN_END, None, n))
    return out


class _Parser:
    def __init__(self, text: str, names: dict):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = names

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_end(self):
        kind, val, at = self.peek()
        if kind != _TOKEN_END:
            raise ParseError(f"unexpected {val!r} at position {at} in {self.text!r}")

    def parse_expr(self) -> RatFunc:
        acc = self.parse_term()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOKEN_OP and val in "+-":
                self.next()
                rhs = self.parse_term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def parse_term(self) -> RatFunc:
        acc = self.parse_factor()
        while True:
            kind, val, at = self.peek()
            if kind == _TOKEN_OP and val in "*/":
                self.next()
                rhs = self.parse_factor()
                if val == "/":
                    if hasattr(rhs, "is_zero") and rhs.is_zero():
                        raise ParseError(f"division by zero at position {at}")
                    try:
                        acc = acc / rhs
                    except ZeroDivisionError as exc:
                        raise ParseError(
                            f"division by zero at position {at}") from exc
                else:
                    acc = acc * rhs
            elif kind in (_TOKEN_INT, _TOKEN_NAME) or (kind == _TOKEN_OP and val == "("):
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> RatFunc:
        kind, val, _ = self.peek()
        if kind == _TOKEN_OP and val == "-":
            self.next()
            return -self.parse_factor()
        if kind == _TOKEN_OP and val == "+":
            self.next()
            return self.parse_factor()
        atom = self.parse_atom()
        kind, val, at = self.peek()
        if kind == _TOKEN_OP and val == "^":
            self.next()
            ekind, e, eat = self.next()
            if ekind != _TOKEN_INT:
                raise ParseError(f"exponent must be an integer at position {eat}")
            return atom ** e
        return atom

    def parse_atom(self) -> RatFunc:
        kind, val, at = self.next()
        if kind == _TOKEN_INT:
            return self.names["__int__"](val)
        if kind == _TOKEN_NAME:
            # an alpha run may be an implicit product, e.g. "wX" = w*X
            acc = None
            rest = val
            while rest:
                match = next(
                    (k for k in sorted(self.names, key=len, reverse=True)
                     if k != "__int__" and rest.startswith(k)),
                    None,
                )
                if match is None:
                    raise ParseError(f"unknown symbol {rest!r} at position {at}")
                part = self.names[match]
                acc = part if acc is None else acc * part
                rest = rest[len(match):]
            return acc
        if kind == _TOKEN_OP and val == "(":
            inner = self.parse_expr()
            kind, val, at = self.next()
            if not (kind == _TOKEN_OP and val == ")"):
                raise ParseError(f"expected ')' at position {at}")
            return inner
        raise ParseError(f"unexpected token at position {at} in {self.text!r}")


def _eval_text(ctx: FieldCtx, text: str, var: str) -> RatFunc:
    names = {
        "__int__": lambda v: RatFunc.const(ctx, v),
        ctx.generator_name: RatFunc.const(ctx, ctx.gen()),
        var: RatFunc.variable(ctx),
    }
    if ctx.s == 1:
        # the generator of a prime field is 0; keep only explicit digits
        del names[ctx.generator_name]
    parser = _Parser(text, names)
    out = parser.parse_expr()
    parser.expect_end()
    return out


def parse_with_names(text: str, names: dict):
    """Evaluate an expression over caller-supplied symbols.

    names maps symbol -> value plus "__int__" -> int constructor; values
    only need the arithmetic operators the expression actually uses.
    """
    parser = _Parser(text, names)
    out = parser.parse_expr()
    parser.expect_end()
    return out


def parse_ratfunc(ctx: FieldCtx, text: str) -> RatFunc:
    return _eval_text(ctx, text, "T")


def parse_element(ctx: FieldCtx, text: str) -> FFElem:
    u = _eval_text(ctx, text, "T")
    if not u.is_constant():
        raise ParseError(f"{text!r} is not a constant of the field")
    return u.constant_value()


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    u = _eval_text(ctx, text, "T")
    if not u.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return u.num * u.den.coeffs[0].inverse()


def parse_additive(ctx: FieldCtx, text: str) -> AdditivePoly:
    """Additive polynomial in X, e.g. "X^27-X" or "X^9+2X^3+wX".

    Also accepts the coefficient-list form "[a0,a1,...,1]" keyed by
    p-power index: entry i is the coefficient of X^(p^i).
    """
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        parts = t[1:-1].split(",")
        a = [parse_element(ctx, part) for part in parts]
        try:
            return AdditivePoly(ctx, a)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    u = _eval_text(ctx, text, "X")
    if not u.is_polynomial() or u.den.degree() != 0:
        raise ParseError(f"{text!r} is not a polynomial in X")
    dense = u.num * u.den.coeffs[0].inverse()
    p = ctx.p
    coeffs = {}
    for i, c in enumerate(dense.coeffs):
        if c.is_zero():
            continue
        e = i
        k = 0
        while e % p == 0 and e > 1:
            e //= p
            k += 1
        if e != 1:
            raise ParseError(f"term X^{i} is not a p-power monomial")
        coeffs[k] = c
    if not coeffs:
        raise ParseError("zero is not an additive polynomial")
    n = max(coeffs)
    a = [coeffs.get(i, ctx.zero()) for i in range(n + 1)]
    try:
        return AdditivePoly(ctx, a)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_modulus(p: int, text: str) -> tuple:
    """Modulus polynomial in x over F_p, returned as low-to-high int tuple."""
    ctx = make_field(p, 1)
    u = _eval_text(ctx, text, "x")
    if not u.is_polynomial() or u.den.degree() != 0:
        raise ParseError(f"{text!r} is not a polynomial in x")
    dense = u.num * u.den.coeffs[0].inverse()
    return tuple(c.to_int() for c in dense.coeffs)


def parse_witt(ctx: FieldCtx, text: str) -> list[RatFunc]:
    """Witt vector literal "[c1; c2; c3]" with RatFunc components."""
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError("witt vector literal must be wrapped in [ ]")
    inner = t[1:-1]
    parts = inner.split(";")
    if not parts or not inner.strip():
        raise ParseError("witt vector literal must have at least one component")
    return [parse_ratfunc(ctx, part) for part in parts]


def parse_field_spec(text: str) -> FieldCtx:
    """Field description "p=3,s=3,mod=x^3-x-2" (mod optional)."""
    p = None
    s = None
    mod_text = None
    gen = "w"
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError(f"bad field spec chunk {chunk!r}")
        key, val = chunk.split("=", 1)
        key = key.strip()
        val = val.strip()
        if key == "p":
            p = int(val)
        elif key == "s":
            s = int(val)
        elif key == "mod":
            mod_text = val
        elif key == "gen":
            gen = val
        else:
            raise ParseError(f"unknown field spec key {key!r}")
    if p is None or s is None:
        raise ParseError("field spec needs p= and s=")
    modulus = parse_modulus(p, mod_text) if mod_text else None
    return make_field(p, s, modulus=modulus, generator_name=gen)
