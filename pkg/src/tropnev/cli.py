"""``trop``: command-line front end.

Every subcommand writes CSV (to ``--out`` or stdout) and a one-line verdict
on stderr.  Exit status is 0 when every asserted identity holds, 1 on an
assertion failure, 2 on an input error.  ``TROP_THREADS`` caps the number
of worker threads used for per-radius rows.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

from .errors import TropError
from .generators import FAMILIES, ExampleSpec, gen_example
from .hypersurface import (
    compose,
    curve_in_hypersurface,
    fmt_constant,
    fmt_residual,
    proximity_hyp,
    tp1_value_polynomial,
)
from .gm import algebraic_lift, ddg, shortest_length
from .nevanlinna import characteristic_T, cartan_T, counting_N, growth_fit, jensen_residual, value_fmt_residual
from .plfun import pl_neg
from .projective import curve_from_meromorphic
from .semiring import BOTTOM, format_value
from .smt import SMT_COLUMNS, build_instance, defect, smt_check, tp1_smt_check
from .textformat import InputDocument, parse, parse_grid, parse_rational, parse_value
from .troplinalg import casoratian, casoratian_at, has_live_permutation, is_regular, trop_det

__all__ = ["main", "build_parser", "threads"]

OK, FAIL, INPUT_ERROR = 0, 1, 2


def threads() -> int:
    try:
        return max(1, int(os.environ.get("TROP_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: Sequence) -> List:
    """Ordered map, threaded when ``TROP_THREADS`` allows it."""
    k = min(threads(), len(items))
    if k <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is BOTTOM or isinstance(v, (int, Fraction)):
        return format_value(v)
    return str(v)


def _write_csv(args, header: Sequence[str], rows: Iterable[Sequence]):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _verdict(cmd: str, ok: bool, detail: str = ""):
    tail = f" ({detail})" if detail else ""
    print(f"trop {cmd}: {'PASS' if ok else 'FAIL'}{tail}", file=sys.stderr)


def _load(args) -> InputDocument:
    if not args.input:
        raise TropError("--input is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise TropError(f"cannot read {args.input}: {exc.strerror}") from exc


def _setting(args, doc: InputDocument, inst: Optional[dict], key: str):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if inst and key in inst:
        return inst[key]
    return doc.settings.get(key)


def _grid(args, doc, inst=None, required=True) -> List[Fraction]:
    spec = _setting(args, doc, inst, "grid")
    if spec is None:
        if required:
            raise TropError("no grid given (use --grid start:stop:step)")
        return []
    return parse_grid(spec)


def _truncate(radii, window, cmd) -> List[Fraction]:
    """Drop radii whose symmetric interval leaves the window, and say so."""
    if window is None:
        keep = [r for r in radii if r > 0]
    else:
        keep = [r for r in radii if 0 < r and -r >= window[0] and r <= window[1]]
    dropped = len(radii) - len(keep)
    if dropped:
        print(f"trop {cmd}: note: {dropped} grid radii outside the window were dropped", file=sys.stderr)
    if not keep:
        raise TropError("grid has no usable radius")
    return keep


def _named(doc: InputDocument, name: Optional[str], table: dict, what: str):
    if name is None:
        if len(table) != 1:
            raise TropError(f"document has {len(table)} {what}s; pass --name")
        name = next(iter(table))
    if name not in table:
        raise TropError(f"no {what} named {name!r}")
    return name, table[name]


# -- subcommands ---------------------------------------------------------------


def cmd_eval(args):
    doc = _load(args)
    names = [args.name] if args.name else list(doc.functions)
    if args.points:
        xs = [parse_rational(p) for p in args.points.split(",")]
    else:
        xs = _grid(args, doc)
    rows, skipped = [], 0
    for name in names:
        f = doc.function(name)
        for x in xs:
            if f.in_window(x):
                rows.append((name, x, f(x)))
            else:
                skipped += 1
    _write_csv(args, ["name", "x", "value"], rows)
    _verdict("eval", True, f"{len(rows)} values" + (f", {skipped} outside window" if skipped else ""))
    return OK


def cmd_nevanlinna(args):
    doc = _load(args)
    name, f = _named(doc, args.name, doc.functions, "function")
    radii = _truncate(_grid(args, doc), f.window, "nevanlinna")
    samples = _pmap(lambda r: characteristic_T(f, r), radii)
    _write_csv(args, ["r", "m", "N", "T"], ((s.r, s.m, s.N, s.T) for s in samples))
    detail = f"{name}: {len(samples)} rows"
    if args.fit:
        g = growth_fit(samples)
        detail += f"; order~{g.order:.4g}, hyperorder~{g.hyperorder:.4g}, exp_rate~{g.exp_rate:.4g}"
    _verdict("nevanlinna", True, detail)
    return OK


def cmd_jensen(args):
    doc = _load(args)
    name, f = _named(doc, args.name, doc.functions, "function")
    radii = _truncate(_grid(args, doc), f.window, "jensen")

    def row(r):
        s = characteristic_T(f, r)
        return (r, s.m, s.N, s.T, jensen_residual(f, r))

    rows = _pmap(row, radii)
    _write_csv(args, ["r", "m", "N", "T", "jensen_residual"], rows)
    bad = [r[0] for r in rows if r[-1] != 0]
    _verdict("jensen", not bad, f"{name}: residual zero on {len(rows) - len(bad)}/{len(rows)} radii")
    return FAIL if bad else OK


def cmd_fmt(args):
    doc = _load(args)
    if args.curve or args.poly:
        cname, curve = _named(doc, args.curve, doc.curves, "curve")
        pname, p = _named(doc, args.poly, doc.polys, "poly")
        radii = _truncate(_grid(args, doc), curve.window, "fmt")
        if curve_in_hypersurface(p, curve):
            raise TropError(f"curve {cname!r} lies inside the hypersurface of {pname!r}")
        const = fmt_constant(p, curve)
        neg = pl_neg(compose(p, curve))

        def row(r):
            return (r, proximity_hyp(p, curve, r), counting_N(neg, r), cartan_T(curve, r), fmt_residual(p, curve, r))

        rows = _pmap(row, radii)
        _write_csv(args, ["r", "m", "N", "T", "fmt_residual"], rows)
        bad = [rw[0] for rw in rows if rw[-1] != const]
        _verdict("fmt", not bad, f"{cname}/{pname}: residual constant {format_value(const)}")
        return FAIL if bad else OK
    name, f = _named(doc, args.name, doc.functions, "function")
    if args.value is None:
        raise TropError("value form needs --value; curve form needs --curve and --poly")
    a = parse_rational(args.value)
    radii = _truncate(_grid(args, doc), f.window, "fmt")

    def vrow(r):
        s = characteristic_T(f, r)
        return (r, s.m, s.N, s.T, value_fmt_residual(f, a, r))

    rows = _pmap(vrow, radii)
    _write_csv(args, ["r", "m", "N", "T", "fmt_residual"], rows)
    consts = {rw[-1] for rw in rows}
    ok = len(consts) == 1
    _verdict("fmt", ok, f"{name}, a={format_value(a)}: " + ("residual constant" if ok else "residual varies"))
    return OK if ok else FAIL


def _instance_curve_polys(doc, inst):
    if "curve" not in inst or "polys" not in inst:
        raise TropError("smt instance needs curve= and polys=")
    curve = doc.curve(inst["curve"])
    polys = [doc.poly(p) for p in inst["polys"].split(",")]
    return curve, polys


def _smt_rows(rep):
    return [[row[c] for c in SMT_COLUMNS] for row in rep.rows]


def cmd_smt(args):
    doc = _load(args)
    inst = doc.instance(args.instance)
    curve, polys = _instance_curve_polys(doc, inst)
    c = parse_rational(_setting(args, doc, inst, "c") or "1")
    tol = parse_rational(_setting(args, doc, inst, "tol") or "1/20")
    radii = _truncate(_grid(args, doc, inst), curve.window, "smt")
    built = build_instance(curve, polys, c, radii)
    rep = smt_check(built, tol)
    _write_csv(args, SMT_COLUMNS, _smt_rows(rep))
    detail = f"q={rep.q} n={rep.n} d={rep.d} M={rep.M} lam={rep.lam}; exact={rep.exact_ok} chain={rep.chain_ok} equality={rep.equality_ok}"
    if rep.violations:
        detail += f"; {rep.violations[0]}"
    _verdict("smt", rep.ok, detail)
    return OK if rep.ok else FAIL


def cmd_tp1smt(args):
    doc = _load(args)
    inst = doc.instances.get(args.instance) if args.instance else (next(iter(doc.instances.values())) if len(doc.instances) == 1 else None)
    fname = args.name or (inst or {}).get("function")
    name, f = _named(doc, fname, doc.functions, "function")
    vals = args.values or (inst or {}).get("values")
    if not vals:
        raise TropError("no values given (use --values a,b,...)")
    values = [parse_value(v) for v in vals.split(",")]
    c = parse_rational(_setting(args, doc, inst, "c") or "1")
    tol = parse_rational(_setting(args, doc, inst, "tol") or "1/20")
    radii = _truncate(_grid(args, doc, inst), f.window, "tp1smt")
    rep = tp1_smt_check(f, values, c, radii, tol)
    value_eq = {row["r"]: row["residual"] for row in rep.equality_rows}
    header = SMT_COLUMNS + ["value_residual"]
    rows = []
    if rep.smt is not None:
        for row in rep.smt.rows:
            rows.append([row[k] for k in SMT_COLUMNS] + [value_eq.get(row["r"], "")])
    _write_csv(args, header, rows)
    detail = f"{name}: absorption identities={rep.absorption_ok} value equality={'n/a' if rep.value_equality_ok is None else rep.value_equality_ok}"
    if rep.smt is not None:
        detail += f" smt={rep.smt.ok}"
    if rep.violations:
        detail += f"; {rep.violations[0]}"
    _verdict("tp1smt", rep.ok, detail)
    return OK if rep.ok else FAIL


def cmd_defect(args):
    doc = _load(args)
    if args.name:
        f = doc.function(args.name)
        if args.value is None:
            raise TropError("--name needs --value")
        curve = curve_from_meromorphic(f)
        p = tp1_value_polynomial(parse_value(args.value))
        label = f"{args.name}, a={args.value}"
    else:
        cname, curve = _named(doc, args.curve, doc.curves, "curve")
        pname, p = _named(doc, args.poly, doc.polys, "poly")
        label = f"{cname}/{pname}"
    radii = _truncate(_grid(args, doc), curve.window, "defect")
    rep = defect(p, curve, radii)
    rows = []
    for r, pr, cr in zip(rep.radii, rep.proximity_ratio, rep.counting_ratio):
        rows.append((r, proximity_hyp(p, curve, r), counting_N(pl_neg(compose(p, curve)), r), cartan_T(curve, r), pr, cr))
    _write_csv(args, ["r", "m", "N", "T", "proximity_ratio", "counting_ratio"], rows)
    kind = "exact limit" if rep.exact else "estimate"
    detail = f"{label}: defect {kind} {format_value(rep.value)}"
    if rep.warnings:
        detail += f"; {rep.warnings[0]}"
    _verdict("defect", True, detail)
    return OK


def cmd_ddg(args):
    doc = _load(args)
    cname, curve = _named(doc, args.curve, doc.curves, "curve")
    names = args.polys.split(",") if args.polys else list(doc.polys)
    polys = [doc.poly(p) for p in names]
    degs = {p.degree for p in polys}
    if len(degs) != 1:
        raise TropError("ddg needs polynomials of one degree (use the smt instance for mixed degrees)")
    d = degs.pop()
    basis = algebraic_lift(curve, d)
    comps = [compose(p, curve) for p in polys]
    lengths = [shortest_length(g, basis) for g in comps]
    rows = [(nm, ln, ln < len(basis)) for nm, ln in zip(names, lengths)]
    _write_csv(args, ["poly", "shortest_length", "below_basis_size"], rows)
    _verdict("ddg", True, f"{cname}: ddg={ddg(comps, basis)} over a basis of size {len(basis)}")
    return OK


def cmd_casoratian(args):
    doc = _load(args)
    names = args.names.split(",") if args.names else list(doc.functions)
    funcs = [doc.function(n) for n in names]
    c = parse_rational(args.c or "1")
    xs = [parse_rational(p) for p in args.points.split(",")] if args.points else _grid(args, doc)
    sym = casoratian(funcs, c)

    def row(x):
        return (x, sym.value_ext(x), casoratian_at(funcs, c, x))

    rows = _pmap(row, xs)
    _write_csv(args, ["x", "casoratian", "assignment"], rows)
    bad = [rw[0] for rw in rows if rw[1] != rw[2]]
    _verdict("casoratian", not bad, f"{len(names)} functions, c={format_value(c)}, {len(rows) - len(bad)}/{len(rows)} agree")
    return FAIL if bad else OK


def cmd_tropdet(args):
    doc = _load(args)
    names = [args.name] if args.name else list(doc.matrices)
    rows = []
    for n in names:
        m = doc.matrix(n)
        rows.append((n, trop_det(m), is_regular(m), has_live_permutation(m)))
    _write_csv(args, ["name", "det", "regular", "live_permutation"], rows)
    _verdict("tropdet", True, f"{len(rows)} matrices")
    return OK


def cmd_gen(args):
    def q(s):
        return parse_rational(s) if s is not None else None

    window = None
    if args.window:
        parts = args.window.split(",")
        if len(parts) != 2:
            raise TropError("--window must be lo,hi")
        window = (q(parts[0]), q(parts[1]))
    spec = ExampleSpec(
        args.family,
        alpha=q(args.alpha),
        beta=q(args.beta),
        window=window,
        seed=args.seed,
        n=args.n,
        d=args.d,
        q=args.q,
        denominator=args.denominator,
        size=args.size,
        name=args.name or "f",
    )
    text = gen_example(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _verdict("gen", True, f"{args.family}, seed={args.seed}")
    return OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trop", description="Exact tropical Nevanlinna computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=True):
        sp.add_argument("--input", help="declaration file (.trop)")
        sp.add_argument("--out", help="CSV output path (default: stdout)")
        if grid:
            sp.add_argument("--grid", help="radii start:stop:step, rational entries")

    sp = sub.add_parser("eval", help="evaluate functions")
    common(sp)
    sp.add_argument("--name", help="function to evaluate (default: all)")
    sp.add_argument("--points", help="comma-separated points instead of a grid")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("nevanlinna", help="m, N and T on a grid")
    common(sp)
    sp.add_argument("--name", help="function name (default: the only one)")
    sp.add_argument("--fit", action="store_true", help="also report growth fits (floating point)")
    sp.set_defaults(func=cmd_nevanlinna)

    sp = sub.add_parser("jensen", help="Jensen residual on a grid")
    common(sp)
    sp.add_argument("--name", help="function name (default: the only one)")
    sp.set_defaults(func=cmd_jensen)

    sp = sub.add_parser("fmt", help="first main theorem residual")
    common(sp)
    sp.add_argument("--name", help="meromorphic function, used with --value")
    sp.add_argument("--value", help="finite value a for the value form")
    sp.add_argument("--curve", help="curve, used with --poly")
    sp.add_argument("--poly", help="homogeneous polynomial of the hypersurface")
    sp.set_defaults(func=cmd_fmt)

    for name, fn, helptext in (("smt", cmd_smt, "hypersurface second main theorem chain"),
                               ("tp1smt", cmd_tp1smt, "second main theorem for values of TP^1")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--instance", help="instance block to run (default: the only one)")
        sp.add_argument("--c", help="shift of the Casoratian (default 1)")
        sp.add_argument("--tol", help="relative tolerance on the top decade (default 1/20)")
        if name == "tp1smt":
            sp.add_argument("--name", help="meromorphic function")
            sp.add_argument("--values", help="comma-separated values, -inf and +inf allowed")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("defect", help="defect of a curve for a hypersurface or a value")
    common(sp)
    sp.add_argument("--curve", help="curve, used with --poly")
    sp.add_argument("--poly", help="homogeneous polynomial of the hypersurface")
    sp.add_argument("--name", help="meromorphic function, used with --value")
    sp.add_argument("--value", help="value of TP^1, -inf and +inf allowed")
    sp.set_defaults(func=cmd_defect)

    sp = sub.add_parser("ddg", help="shortest representation lengths over the algebraic lift")
    common(sp, grid=False)
    sp.add_argument("--curve", help="curve whose lift is the basis")
    sp.add_argument("--polys", help="comma-separated polynomials (default: all)")
    sp.set_defaults(func=cmd_ddg)

    sp = sub.add_parser("casoratian", help="symbolic Casoratian against pointwise assignment")
    common(sp)
    sp.add_argument("--names", help="comma-separated functions")
    sp.add_argument("--c", help="shift (default 1)")
    sp.add_argument("--points", help="comma-separated points instead of a grid")
    sp.set_defaults(func=cmd_casoratian)

    sp = sub.add_parser("tropdet", help="tropical determinants and regularity")
    common(sp, grid=False)
    sp.add_argument("--name", help="matrix name (default: all)")
    sp.set_defaults(func=cmd_tropdet)

    sp = sub.add_parser("gen", help="write an example declaration file")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--alpha", help="rate of e_alpha, |alpha| > 1")
    sp.add_argument("--beta", help="rate of e_beta, 0 < |beta| < 1")
    sp.add_argument("--window", help="lo,hi")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=1, help="projective dimension")
    sp.add_argument("--d", type=int, default=1, help="polynomial degree")
    sp.add_argument("--q", type=int, default=3, help="number of polynomials for random_curve")
    sp.add_argument("--denominator", type=int, default=1, help="denominator of drawn rationals")
    sp.add_argument("--size", type=int, default=4, help="knots or monomials per function")
    sp.add_argument("--name", default="f", help="name of the main declaration")
    sp.set_defaults(func=cmd_gen)
    return p


def _join_values(parser, argv: Sequence[str]) -> List[str]:
    # let option values start with '-', as in ``--window -20,20``
    takes = set()
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                takes.update(o for a in sp._actions if a.nargs is None and a.option_strings for o in a.option_strings)
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in takes and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in takes:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_join_values(parser, argv))
    try:
        return args.func(args)
    except (TropError, ValueError, ArithmeticError) as exc:
        print(f"trop {args.command}: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
