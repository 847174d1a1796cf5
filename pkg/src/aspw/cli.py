"""Command line front end: one subcommand per analysis.

Text mode prints one fact per line; --json emits a single sorted JSON
document versioned with "schema": "aspw/1".  All enumeration orders are
canonical, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import asext, oracle
from .addpoly import AdditivePoly
from .errors import AspwError
from .gf import FieldCtx
from .parsing import (
    parse_additive,
    parse_element,
    parse_field_spec,
    parse_poly,
    parse_ratfunc,
    parse_witt,
    parse_with_names,
)
from .upoly import Place, Poly, RatFunc, monic_irreducibles, pf_string, place_valuation
from .witt import (
    WittExtensionSpec,
    WittVector,
    asw_operator,
    build_tables,
    cyclic_subextension,
    ghost_components,
    witt_arith,
    witt_generator_relation,
    witt_infinity_full_split,
    witt_infinity_splitting,
    witt_reduce,
)

SCHEMA = "aspw/1"
EXIT_OK = 0
EXIT_ERROR = 2
EXIT_DISAGREE = 3


def _emit(args, data: dict, lines) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command_path}
        doc.update(data)
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _field(args) -> FieldCtx:
    return parse_field_spec(args.field)


def _place(ctx: FieldCtx, text: str) -> Place:
    if text.strip().lower() in ("inf", "infty", "infinity", "oo"):
        return Place.infinite()
    return Place(parse_poly(ctx, text))


def _spec(args) -> asext.ExtensionSpec:
    ctx = _field(args)
    f = parse_additive(ctx, args.f)
    u = parse_ratfunc(ctx, args.u)
    return asext.ExtensionSpec(f, u, ctx)


def _fmt_vec(v: WittVector) -> str:
    return "[" + ";".join(str(c) for c in v.comps) + "]"


def _rat_vec(tables, ctx: FieldCtx, text: str) -> WittVector:
    return WittVector(tables, parse_witt(ctx, text))


def _const_vec(tables, ctx: FieldCtx, text: str) -> WittVector:
    comps = []
    for c in parse_witt(ctx, text):
        if not c.is_constant():
            raise AspwError(f"component {c} is not a constant")
        comps.append(c.constant_value())
    return WittVector(tables, comps)


def _maybe_narrow(v: WittVector) -> WittVector:
    """Constant rational components become field elements."""
    if all(isinstance(c, RatFunc) and c.is_constant() for c in v.comps):
        return WittVector(v.tables, [c.constant_value() for c in v.comps])
    return v


def _ghost_diag(v: WittVector):
    """Integer ghost components of a prime-field constant vector."""
    comps = v.comps
    if not all(hasattr(c, "to_int") for c in comps):
        return None
    if v.ctx.s != 1:
        return None
    return list(ghost_components(v.tables.p, [c.to_int() for c in comps]))


# ---------------------------------------------------------------------------
# one-variable extension commands
# ---------------------------------------------------------------------------


def _log_steps(log) -> list:
    out = []
    for kind, val in log.steps:
        if kind == asext.SHIFT:
            out.append({"kind": "shift", "delta": pf_string(val)})
        else:
            out.append({"kind": "descend", "value": pf_string(val)})
    return out


def cmd_reduce(args) -> int:
    spec = _spec(args)
    if args.descend:
        log, red = asext.frobenius_reduce(spec)
    else:
        log, red = asext.reduce_global(spec)
    steps = _log_steps(log)
    lines = [f"u: {pf_string(spec.u)}", f"reduced: {pf_string(red.u)}"]
    for st in steps:
        lines.append(f"  {st['kind']}: {st.get('delta', st.get('value'))}")
    _emit(args, {"u": pf_string(spec.u), "reduced": pf_string(red.u),
                 "steps": steps}, lines)
    return EXIT_OK


def _ram_place_json(r) -> dict:
    return {"place": str(r.place), "lambda": r.lam, "m": r.m,
            "e_bound": r.e_bound, "exact": r.exact}


def cmd_ramify(args) -> int:
    spec = _spec(args)
    report = asext.ramification_report(spec)
    lines = [f"reduced: {pf_string(report.reduced_u)}"]
    for r in report.finite:
        kind = "e=" if r.exact else "e divisible by "
        lines.append(f"place ({r.place}): ramified, {kind}{r.e_bound}, "
                     f"lambda={r.lam}, m={r.m}, exact={r.exact}")
    inf = report.infinity
    if inf.ramified:
        kind = "e=" if inf.exact else "e divisible by "
        lines.append(f"infinity: ramified, {kind}{inf.e_bound}, "
                     f"lambda={inf.lam}, m={inf.m}, exact={inf.exact}")
    else:
        lines.append("infinity: unramified")
    inf_json: dict = {"ramified": inf.ramified}
    if inf.ramified:
        inf_json.update({"lambda": inf.lam, "m": inf.m,
                         "e_bound": inf.e_bound, "exact": inf.exact})
    _emit(args, {"reduced": pf_string(report.reduced_u),
                 "finite": [_ram_place_json(r) for r in report.finite],
                 "infinity": inf_json}, lines)
    return EXIT_OK


def cmd_subext(args) -> int:
    spec = _spec(args)
    _, red = asext.reduce_global(spec)
    descs = asext.subextensions(red)
    lines = []
    data = []
    for d in descs:
        lines.append(f"H={d.hyperplane.label()} z={d.formula()} "
                     f"rhs: {pf_string(d.rhs)}")
        data.append({"hyperplane": d.hyperplane.label(),
                     "generator": d.formula(), "rhs": pf_string(d.rhs)})
    _emit(args, {"reduced": pf_string(red.u), "subextensions": data}, lines)
    return EXIT_OK


def cmd_split(args) -> int:
    spec = _spec(args)
    place = _place(spec.k0, args.place)
    dec = asext.place_decomposition(spec, place)
    lines = [f"place: {place}", f"e={dec.e} f={dec.f} g={dec.g}"]
    for hv in dec.per_hyperplane:
        lines.append(f"H={hv.hyperplane.label()}: {hv.verdict}")
    lines.append("decomposition field: "
                 + (" ".join(dec.decomposition_tags) or "(none)"))
    lines.append("inertia field: " + (" ".join(dec.inertia_tags) or "(none)"))
    _emit(args, {
        "place": str(place), "e": dec.e, "f": dec.f, "g": dec.g,
        "hyperplanes": [{"label": hv.hyperplane.label(), "verdict": hv.verdict}
                        for hv in dec.per_hyperplane],
        "decomposition_tags": list(dec.decomposition_tags),
        "inertia_tags": list(dec.inertia_tags),
    }, lines)
    return EXIT_OK


def cmd_relate(args) -> int:
    spec = _spec(args)
    ctx = spec.k0
    algebra = spec.algebra()
    names = {
        "__int__": lambda v: algebra.const(v),
        "T": algebra.const(RatFunc.variable(ctx)),
        "y": algebra.y(),
    }
    if ctx.s > 1:
        names[ctx.generator_name] = algebra.const(ctx.gen())
    z = parse_with_names(args.z, names)
    subgroup = []
    if args.fix:
        subgroup = [parse_element(ctx, part) for part in args.fix.split(",")]
    rel = asext.generator_relation(spec, z, subgroup)
    lines = [f"z = {rel.formula()}",
             "subgroup: " + " ".join(str(x) for x in rel.subgroup),
             "mu basis: " + " ".join(str(x) for x in rel.mu_basis)]
    _emit(args, {
        "formula": rel.formula(),
        "A": [str(a) for a in rel.A],
        "D": pf_string(rel.D),
        "subgroup": [str(x) for x in rel.subgroup],
        "mu_basis": [str(x) for x in rel.mu_basis],
    }, lines)
    return EXIT_OK


def cmd_combine(args) -> int:
    ctx = _field(args)
    gammas = [parse_ratfunc(ctx, g) for g in args.gamma]
    mus = [parse_element(ctx, m) for m in args.mu]
    comb = asext.combine_generators(ctx, gammas, mus)
    spec = comb.spec
    v_inf = place_valuation(spec.u, Place.infinite())
    report = asext.ramification_report(spec)
    dec = asext.place_decomposition(spec, Place.infinite())
    inf = report.infinity
    lines = [f"u: {pf_string(spec.u)}", f"y = {comb.formula()}",
             f"v_inf(u) = {v_inf}"]
    if inf.ramified:
        kind = "e=" if inf.exact else "e divisible by "
        lines.append(f"infinity: ramified, {kind}{inf.e_bound}, "
                     f"exact={inf.exact}")
    else:
        lines.append("infinity: unramified")
    lines.append(f"assembled at infinity: e={dec.e} f={dec.f} g={dec.g}")
    inf_json: dict = {"ramified": inf.ramified}
    if inf.ramified:
        inf_json.update({"lambda": inf.lam, "m": inf.m,
                         "e_bound": inf.e_bound, "exact": inf.exact})
    _emit(args, {
        "u": pf_string(spec.u), "formula": comb.formula(), "v_inf": v_inf,
        "infinity": inf_json,
        "assembled": {"e": dec.e, "f": dec.f, "g": dec.g},
    }, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# witt commands
# ---------------------------------------------------------------------------


def _witt_binop(args, op: str) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    a = _maybe_narrow(_rat_vec(tables, ctx, args.a))
    b = _maybe_narrow(_rat_vec(tables, ctx, args.b))
    res = witt_arith(op, a, b)
    lines = [_fmt_vec(res)]
    data = {"a": _fmt_vec(a), "b": _fmt_vec(b), "result": _fmt_vec(res)}
    ghost = _ghost_diag(res)
    if ghost is not None:
        data["ghost"] = ghost
        lines.append(f"ghost: {ghost}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_witt_add(args) -> int:
    return _witt_binop(args, "add")


def cmd_witt_mul(args) -> int:
    return _witt_binop(args, "mul")


def cmd_witt_wp(args) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    x = _maybe_narrow(_rat_vec(tables, ctx, args.x))
    q = args.q or ctx.p
    res = asw_operator(x, q)
    lines = [_fmt_vec(res)]
    data = {"x": _fmt_vec(x), "q": q, "result": _fmt_vec(res)}
    ghost = _ghost_diag(res)
    if ghost is not None:
        data["ghost"] = ghost
        lines.append(f"ghost: {ghost}")
    _emit(args, data, lines)
    return EXIT_OK


def _witt_log_steps(log) -> list:
    from .witt import WSHIFT

    out = []
    for kind, val in log.steps:
        if kind == WSHIFT:
            out.append({"kind": "shift", "theta": _fmt_vec(val)})
        else:
            out.append({"kind": "descend", "value": _fmt_vec(val)})
    return out


def cmd_witt_reduce(args) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    alpha = _rat_vec(tables, ctx, args.alpha)
    spec = WittExtensionSpec(tables, args.q, alpha)
    log, red = witt_reduce(spec, descend=args.descend)
    steps = _witt_log_steps(log)
    lines = [f"alpha: {_fmt_vec(alpha)}", f"reduced: {_fmt_vec(red.alpha)}"]
    for st in steps:
        lines.append(f"  {st['kind']}: {st.get('theta', st.get('value'))}")
    _emit(args, {"alpha": _fmt_vec(alpha), "reduced": _fmt_vec(red.alpha),
                 "steps": steps}, lines)
    return EXIT_OK


def cmd_witt_subext(args) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    xi = _const_vec(tables, ctx, args.xi)
    alpha = _rat_vec(tables, ctx, args.alpha)
    sub = cyclic_subextension(xi, alpha, args.q)
    lines = [f"z = {sub.formula()}", f"rhs: {_fmt_vec(sub.rhs)}",
             f"full degree: {sub.full_degree}"]
    _emit(args, {"generator": sub.formula(), "rhs": _fmt_vec(sub.rhs),
                 "xi": _fmt_vec(xi), "full_degree": sub.full_degree}, lines)
    return EXIT_OK


def cmd_witt_relate(args) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    alpha = WittExtensionSpec(tables, args.q, _rat_vec(tables, ctx, args.alpha))
    beta = WittExtensionSpec(tables, args.q, _rat_vec(tables, ctx, args.beta))
    xi_targets = [_const_vec(tables, ctx, t) for t in args.xi]
    rel = witt_generator_relation(alpha, beta, xi_targets)
    lines = [f"z = {rel.formula()}", f"D: {_fmt_vec(rel.D)}",
             "mu basis: " + " ".join(str(x) for x in rel.mus)]
    _emit(args, {
        "formula": rel.formula(),
        "A": [_fmt_vec(a) for a in rel.A],
        "D": _fmt_vec(rel.D),
        "mu_basis": [str(x) for x in rel.mus],
    }, lines)
    return EXIT_OK


def cmd_witt_infty(args) -> int:
    ctx = _field(args)
    tables = build_tables(ctx.p, args.m)
    gamma = _rat_vec(tables, ctx, args.gamma)
    if args.q:
        full = witt_infinity_full_split(gamma, args.q)
        lines = [f"fully split: {full}"]
        _emit(args, {"gamma": _fmt_vec(gamma), "q": args.q,
                     "fully_split": full}, lines)
        return EXIT_OK
    e, f, g = witt_infinity_splitting(gamma)
    lines = [f"e={e} f={f} g={g}"]
    _emit(args, {"gamma": _fmt_vec(gamma), "e": e, "f": f, "g": g}, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify commands
# ---------------------------------------------------------------------------


def _verify_emit(args, report: dict) -> int:
    lines = [f"{report['claim']}: {report['verdict']}"]
    if "witness" in report:
        lines.append(f"witness: {report['witness']}")
    _emit(args, report, lines)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_DISAGREE


def cmd_verify_lemma62(args) -> int:
    ok, witness = oracle.verify_lemma_62(args.q, args.m)
    report = {
        "claim": "scaled-image equivalence",
        "parameters": {"q": args.q, "m": args.m},
        "mode": "exhaustive",
        "seed": None,
        "verdict": "pass" if ok else "fail",
    }
    if witness is not None:
        report["witness"] = str(witness)
    return _verify_emit(args, report)


def cmd_verify_eqstar(args) -> int:
    ctx = _field(args)
    f = parse_additive(ctx, args.f)
    ok, witness = oracle.verify_eq_star(f, ctx)
    report = {
        "claim": "image intersection identity",
        "parameters": {"field_order": ctx.order(), "f": args.f},
        "mode": "exhaustive",
        "seed": None,
        "verdict": "pass" if ok else "fail",
    }
    if witness is not None:
        report["witness"] = str(witness)
    return _verify_emit(args, report)


def cmd_verify_axioms(args) -> int:
    ctx = _field(args) if args.field else None
    report = oracle.witt_axiom_sampler(args.p, args.m, ctx=ctx,
                                       rational=args.rational,
                                       samples=args.samples, seed=args.seed)
    return _verify_emit(args, report)


def cmd_verify_oracle(args) -> int:
    ctx = _field(args)
    f = AdditivePoly.frobenius_minus_id(ctx, args.n)
    rng = random.Random(args.seed)
    els = list(ctx.elements())
    specs = []
    while len(specs) < args.count:
        num = Poly(ctx, [rng.choice(els) for _ in range(rng.randrange(1, 5))])
        den = Poly(ctx, [rng.choice(els) for _ in range(rng.randrange(1, 4))])
        if num.is_zero() or den.is_zero():
            continue
        u = RatFunc(num, den)
        spec = asext.ExtensionSpec(f, u, ctx)
        if not asext.check_irreducible(spec):
            continue
        specs.append(spec)
    places = []
    for d in range(1, args.max_degree + 1):
        places.extend(Place(P) for P in monic_irreducibles(ctx, d))

    def check(spec):
        found = []
        n_checked = 0
        for pl in places:
            if place_valuation(spec.u, pl) < 0:
                continue
            direct = oracle.splitting_oracle(spec, pl)
            verdict = asext.place_splitting(spec, pl)
            expected = spec.f.q if verdict.kind == "split" else 0
            n_checked += 1
            if direct != expected:
                found.append({"u": pf_string(spec.u), "place": str(pl),
                              "direct_count": direct, "verdict": verdict.kind})
        return n_checked, found

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(check, specs))
    else:
        results = [check(s) for s in specs]
    checked = sum(r[0] for r in results)
    disagreements = [d for r in results for d in r[1]]
    report = {
        "claim": "splitting verdicts match the direct count",
        "parameters": {"field_order": ctx.order(), "n": args.n,
                       "count": args.count, "max_degree": args.max_degree},
        "mode": "sampled",
        "seed": args.seed,
        "checked": checked,
        "verdict": "pass" if not disagreements else "fail",
    }
    if disagreements:
        report["witness"] = disagreements
    return _verify_emit(args, report)


# ---------------------------------------------------------------------------
# argument tree
# ---------------------------------------------------------------------------


def _base(sp, name, fn, help_text):
    cmd = sp.add_parser(name, help=help_text)
    cmd.set_defaults(fn=fn, command_path=name)
    cmd.add_argument("--json", action="store_true",
                     help="emit one sorted JSON document")
    cmd.add_argument("--jobs", type=int, default=1,
                     help="worker threads for independent checks")
    return cmd


def _spec_args(cmd):
    cmd.add_argument("--field", required=True,
                     help='constant field, e.g. "p=3,s=3,mod=x^3-x-2"')
    cmd.add_argument("--f", required=True,
                     help='additive polynomial, "X^27-X" or "[a0,...,1]"')
    cmd.add_argument("--u", required=True, help="right-hand side in T")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspw",
        description="Additive-polynomial extensions of rational function "
                    "fields: reduction, ramification, splitting, generator "
                    "relations, Witt vector arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = _base(sub, "reduce", cmd_reduce, "global reduced form of the rhs")
    _spec_args(cmd)
    cmd.add_argument("--descend", action="store_true",
                     help="also lower p-th-power right sides (q-power form)")

    cmd = _base(sub, "ramify", cmd_ramify, "ramified places with exponents")
    _spec_args(cmd)

    cmd = _base(sub, "subext", cmd_subext, "all degree-p subextensions")
    _spec_args(cmd)

    cmd = _base(sub, "split", cmd_split, "(e,f,g) at one place")
    _spec_args(cmd)
    cmd.add_argument("--place", required=True,
                     help='monic irreducible in T, or "inf"')

    cmd = _base(sub, "relate", cmd_relate,
                "express an algebra element through the generator")
    _spec_args(cmd)
    cmd.add_argument("--z", required=True,
                     help='algebra element, e.g. "y^9+y^3 + 1/T"')
    cmd.add_argument("--fix", default="",
                     help='comma list of roots spanning the fixed subgroup')

    cmd = _base(sub, "combine", cmd_combine,
                "one equation for a compositum of degree-p extensions")
    cmd.add_argument("--field", required=True)
    cmd.add_argument("--gamma", action="append", required=True,
                     help="rhs of one degree-p piece (repeatable)")
    cmd.add_argument("--mu", action="append", required=True,
                     help="independent multiplier for one piece (repeatable)")

    wparser = sub.add_parser("witt", help="Witt vector operations")
    wsub = wparser.add_subparsers(dest="witt_command", required=True)

    def _wbase(name, fn, help_text, q_required=False):
        c = _base(wsub, name, fn, help_text)
        c.set_defaults(command_path=f"witt {name}")
        c.add_argument("--field", default=None,
                       help="constant field (default: prime field of --p)")
        c.add_argument("--p", type=int, default=None, help="characteristic")
        c.add_argument("--m", type=int, required=True, help="vector length")
        if q_required:
            c.add_argument("--q", type=int, required=True,
                           help="power of p cutting out the operator")
        return c

    def _wfix(args):
        # --field wins; bare --p means the prime field
        if args.field is None:
            if args.p is None:
                raise AspwError("need --field or --p")
            args.field = f"p={args.p},s=1"
        return args

    c = _wbase("add", lambda a: cmd_witt_add(_wfix(a)), "vector sum")
    c.add_argument("a")
    c.add_argument("b")
    c = _wbase("mul", lambda a: cmd_witt_mul(_wfix(a)), "vector product")
    c.add_argument("a")
    c.add_argument("b")
    c = _wbase("wp", lambda a: cmd_witt_wp(_wfix(a)),
               "q-power operator x -> x^q - x")
    c.add_argument("--q", type=int, default=None,
                   help="power of p (default: the characteristic)")
    c.add_argument("x")
    c = _wbase("reduce", lambda a: cmd_witt_reduce(_wfix(a)),
               "reduced right-hand-side vector", q_required=True)
    c.add_argument("--descend", action="store_true",
                   help="also lower componentwise p-th-power vectors")
    c.add_argument("alpha")
    c = _wbase("subext", lambda a: cmd_witt_subext(_wfix(a)),
               "cyclic subextension cut out by a multiplier", q_required=True)
    c.add_argument("--xi", required=True, help="Galois-ring multiplier")
    c.add_argument("alpha")
    c = _wbase("relate", lambda a: cmd_witt_relate(_wfix(a)),
               "express one generator through another", q_required=True)
    c.add_argument("--xi", action="append", required=True,
                   help="target multiplier per basis translation (repeatable)")
    c.add_argument("alpha")
    c.add_argument("beta")
    c = _wbase("infty", lambda a: cmd_witt_infty(_wfix(a)),
               "splitting of the infinite place")
    c.add_argument("--q", type=int, default=None,
                   help="full-split test against this q-power form")
    c.add_argument("gamma")

    vparser = sub.add_parser("verify", help="independent oracle checks")
    vsub = vparser.add_subparsers(dest="verify_command", required=True)

    c = _base(vsub, "lemma62", cmd_verify_lemma62,
              "scaled-image equivalence over F_{q^m}, exhaustively")
    c.set_defaults(command_path="verify lemma62")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--m", type=int, required=True)

    c = _base(vsub, "eqstar", cmd_verify_eqstar,
              "image intersection identity for one additive polynomial")
    c.set_defaults(command_path="verify eqstar")
    c.add_argument("--field", required=True)
    c.add_argument("--f", required=True)

    c = _base(vsub, "axioms", cmd_verify_axioms,
              "Witt ring axioms and Frobenius identities")
    c.set_defaults(command_path="verify axioms")
    c.add_argument("--field", default=None)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--rational", action="store_true",
                   help="sample rational-function components")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)

    c = _base(vsub, "oracle", cmd_verify_oracle,
              "splitting verdicts against the direct residue count")
    c.set_defaults(command_path="verify oracle")
    c.add_argument("--field", required=True)
    c.add_argument("--n", type=int, default=2,
                   help="rank of the root group: f = X^(p^n) - X")
    c.add_argument("--count", type=int, default=50,
                   help="random specs to draw")
    c.add_argument("--max-degree", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AspwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
