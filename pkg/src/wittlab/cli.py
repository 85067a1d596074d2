"""Command line entry point (``wittlab``).

Exit status: 0 on success, 1 on domain errors (reported with their error
code), 2 on usage errors.
"""

import argparse
import json
import random
import sys

from . import derivations as dv
from . import grading, probe, qtorus, selftest
from .core import act, bracket, jacobi_defect, parse_signature
from .errors import WittError
from .expr import (
    format_basis,
    format_element,
    format_function,
    parse_basis,
    parse_element,
    parse_function,
)

SCHEMA_VERSION = probe.SCHEMA_VERSION


class UsageError(Exception):
    pass


def _signature(text):
    try:
        return parse_signature(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(text):
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None


def _read_elements(args, sig):
    out = []
    for a in args:
        if a.startswith("@"):
            with open(a[1:], encoding="utf-8") as fh:
                out.extend(parse_element(line, sig) for line in fh if line.strip())
        else:
            out.append(parse_element(a, sig))
    return out


def _box(sig, exp_ranges, poly_ranges):
    n, nv = sig.n, sig.nvars

    def spread(ranges, count, default):
        ranges = ranges or [default]
        if len(ranges) == 1:
            ranges = ranges * count
        if len(ranges) != count:
            raise UsageError(f"expected 1 or {count} ranges, got {len(ranges)}")
        return ranges

    exp = spread(exp_ranges, n, (-2, 2))
    poly = spread(poly_ranges, nv, (0, 2))
    return probe.TruncationBox(
        tuple(r[0] for r in exp), tuple(r[1] for r in exp),
        tuple(r[0] for r in poly), tuple(r[1] for r in poly),
    )


# each handler returns (result, text)

def cmd_bracket(a):
    x, y = parse_element(a.a, a.sig), parse_element(a.b, a.sig)
    r = format_element(bracket(x, y, literal=a.literal))
    return r, r


def cmd_act(a):
    e = parse_element(a.op, a.sig)
    r = format_function(act(e, parse_function(a.func, a.sig.dims)))
    return r, r


def cmd_jacobi(a):
    es = [parse_element(s, a.sig) for s in (a.a, a.b, a.c)]
    r = format_element(jacobi_defect(*es))
    return r, r


def cmd_grade(a):
    e = parse_element(a.elem, a.sig)
    parts = grading.homogeneous_components(e, grading.parse_scheme(a.scheme))
    result = [{"key": list(k), "component": format_element(v)} for k, v in parts.items()]
    text = "\n".join(f"({','.join(map(str, k))}): {format_element(v)}" for k, v in parts.items())
    return result, text or "0"


def cmd_order(a):
    c = grading.lex_compare(parse_basis(a.a, a.sig), parse_basis(a.b, a.sig))
    r = {-1: "LT", 0: "EQ", 1: "GT"}[c]
    return r, r


def cmd_string_number(a):
    r = grading.string_number(parse_element(a.elem, a.sig))
    return r, str(r)


def cmd_lp(a):
    alpha = tuple(int(x) for x in a.alpha.split(",")) if a.alpha else ()
    r = grading.largest_power(parse_element(a.elem, a.sig), alpha, a.u)
    return r, str(r)


def cmd_split_zero(a):
    w, ab = grading.split_zero_component(parse_element(a.elem, a.sig))
    r = {"witt": format_element(w), "abelian": format_element(ab)}
    return r, f"witt: {r['witt']}\nabelian: {r['abelian']}"


def cmd_closure(a):
    gens = _read_elements(a.gens, a.sig)
    box = _box(a.sig, a.exp_box, a.poly_box)
    mbox = _box(a.sig, a.mult_exp_box or a.exp_box, a.mult_poly_box or a.poly_box)
    rep = probe.ideal_closure(gens, a.sig, box, mbox)
    d = rep.to_dict()
    if not a.verbose:
        d = {k: d[k] for k in ("dimension", "reached_partials", "generators_used", "overflow_discards")}
    text = "\n".join(
        [
            f"dimension: {rep.dimension}",
            f"reached partials: {', '.join(f'D{i}' for i in rep.reached_partials) or 'none'}",
            f"generators used: {rep.generators_used}",
            f"overflow discards: {rep.overflow_discards}",
        ]
    )
    return d, text


def cmd_lemma1(a):
    s, lprime = probe.lemma1_witness(parse_element(a.elem, a.sig))
    r = {"s": format_basis(s), "lprime": format_element(lprime)}
    return r, f"s = {r['s']}\n[s, l] = {r['lprime']}"


def cmd_lemma2(a):
    rec = probe.lemma2_reach(parse_basis(a.target, a.sig), a.start_dir)
    steps = [
        {"sign": s.sign, "left": format_basis(s.left), "right": format_basis(s.right),
         "value": format_element(s.value())}
        for s in rec.steps
    ]
    r = {
        "u": rec.u,
        "case": rec.case,
        "coefficient": str(rec.coefficient),
        "steps": steps,
        "result": format_element(rec.replay()),
    }
    lines = [
        f"{'+' if s['sign'] > 0 else '-'} [{s['left']}, {s['right']}] = {s['value']}" for s in steps
    ]
    lines.append(f"= {r['result']}  (case {rec.case}, coefficient {rec.coefficient})")
    return r, "\n".join(lines)


def cmd_torus_check(a):
    box = _box(a.sig, a.exp_box, a.poly_box)
    ok, w = probe.is_ad_diagonal(parse_element(a.elem, a.sig), a.sig, box)
    if ok:
        return {"diagonal": True, "witness": None}, "diagonal"
    b, val = w
    r = {"diagonal": False, "witness": {"basis": format_basis(b), "bracket": format_element(val)}}
    return r, f"not diagonal: [{format_basis(b)}, candidate] = {format_element(val)}"


def _min_predicate(specs, attr):
    conds = []
    for s in specs or []:
        coord, _, val = s.partition(":")
        try:
            conds.append((int(coord) - 1, int(val)))
        except ValueError:
            raise UsageError(f"expected COORD:VALUE, got {s!r}") from None
    return lambda b: all(getattr(b, attr)[k] >= v for k, v in conds)


def cmd_ideal_check(a):
    box = _box(a.sig, a.exp_box, a.poly_box)
    pe, pp = _min_predicate(a.exp_min, "exp"), _min_predicate(a.poly_min, "poly")
    ok, w = probe.subspace_is_ideal(lambda b: pe(b) and pp(b), a.sig, box)
    if ok:
        return {"ideal": True, "witness": None}, "ideal"
    q, p, val = w
    r = {"ideal": False, "witness": {"left": format_basis(q), "right": format_basis(p),
                                     "bracket": format_element(val)}}
    return r, f"not an ideal: [{format_basis(q)}, {format_basis(p)}] = {format_element(val)}"


def _load_table(path):
    with open(path, encoding="utf-8") as fh:
        return dv.DerivationTable.from_dict(json.load(fh))


def cmd_derive_decompose(a):
    res = dv.decompose_derivation(_load_table(a.table))
    r = res.to_dict()
    del r["checked"]
    r["checked_count"] = len(res.checked)
    text = f"g = {r['g']}\nc = {r['c']}\nd = {r['d']}\nresidual = {r['residual']}"
    return r, text


def cmd_derive_verify(a):
    table = _load_table(a.table)
    pairs = dv.in_range_pairs(table.trunc)
    defects = dv.verify_leibniz(table, pairs)
    r = {
        "pairs": len(pairs),
        "defects": [
            {"left": format_element(l1), "right": format_element(l2), "defect": format_element(d)}
            for _, l1, l2, d in defects
        ],
    }
    text = f"{len(pairs)} pairs, {len(defects)} defects"
    for d in r["defects"]:
        text += f"\n[{d['left']}, {d['right']}]: {d['defect']}"
    return r, text


def cmd_antideriv(a):
    r = format_function(dv.antiderivative(parse_function(a.func, (1, 0))))
    return r, r


def cmd_qtorus(a):
    if a.qcmd == "bracket":
        coeff, (x, y) = qtorus.vbar_bracket(a.a, a.i, a.b, a.j, a.q)
        r = {"coefficient": str(coeff), "pair": [x, y]}
        return r, f"{coeff} * ({x},{y})"
    if a.qcmd == "theta":
        rng = random.Random(a.seed)
        b = a.bound
        pairs = [
            ((rng.randint(-b, b), rng.randint(-b, b)), (rng.randint(-b, b), rng.randint(-b, b)))
            for _ in range(a.count)
        ]
        defects = qtorus.theta_check(pairs, a.q)
        return {"pairs": len(pairs), "defects": len(defects)}, f"{len(pairs)} pairs, {len(defects)} defects"
    probe_fn = qtorus.center_probe if a.qcmd == "center" else qtorus.toral_probe
    words = probe_fn(a.bound, a.q)
    return [list(w) for w in words], "[" + ", ".join(str(w) for w in words) + "]"


def cmd_selftest(a):
    results = selftest.run(a.seed)
    passed = sum(ok for _, ok, _ in results)
    r = {
        "passed": passed,
        "failed": len(results) - passed,
        "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in results],
    }
    lines = [f"{'PASS' if ok else 'FAIL'} {n}: {d}" for n, ok, d in results]
    lines.append(f"{passed} passed, {len(results) - passed} failed")
    return r, "\n".join(lines)


def build_parser():
    p = argparse.ArgumentParser(prog="wittlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, sig=True, box=False):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if sig:
            sp.add_argument("--sig", type=_signature, required=True,
                            help="W:n,m | Wstar:n,m | Wrs:n,m,r,s | Wplus:1,0 | Witt:n")
        if box:
            sp.add_argument("--exp-box", type=_range, action="append", metavar="LO:HI")
            sp.add_argument("--poly-box", type=_range, action="append", metavar="LO:HI")
        return sp

    sp = add("bracket", cmd_bracket)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--literal", action="store_true",
                    help="use the uncorrected printed coefficient (comparison only)")
    sp = add("act", cmd_act)
    sp.add_argument("op")
    sp.add_argument("func")
    sp = add("jacobi", cmd_jacobi)
    for name in "abc":
        sp.add_argument(name)
    sp = add("grade", cmd_grade)
    sp.add_argument("elem")
    sp.add_argument("--scheme", default="exp:1", help="exp:k | full | witt:k")
    sp = add("order", cmd_order)
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("string-number", cmd_string_number)
    sp.add_argument("elem")
    sp = add("lp", cmd_lp)
    sp.add_argument("elem")
    sp.add_argument("--alpha", required=True, help="exponential index prefix, e.g. 1 or 1,0")
    sp.add_argument("--u", type=int, required=True)
    sp = add("split-zero", cmd_split_zero)
    sp.add_argument("elem")
    sp = add("closure", cmd_closure, box=True)
    sp.add_argument("gens", nargs="+", help="generators, or @file with one per line")
    sp.add_argument("--mult-exp-box", type=_range, action="append", metavar="LO:HI")
    sp.add_argument("--mult-poly-box", type=_range, action="append", metavar="LO:HI")
    sp.add_argument("--verbose", action="store_true", help="include members and traces")
    sp = add("lemma1", cmd_lemma1)
    sp.add_argument("elem")
    sp = add("lemma2", cmd_lemma2)
    sp.add_argument("target")
    sp.add_argument("--start-dir", type=int)
    sp = add("torus-check", cmd_torus_check, box=True)
    sp.add_argument("elem")
    sp = add("ideal-check", cmd_ideal_check, box=True)
    sp.add_argument("--exp-min", action="append", metavar="COORD:VALUE")
    sp.add_argument("--poly-min", action="append", metavar="COORD:VALUE")
    sp = add("derive-decompose", cmd_derive_decompose, sig=False)
    sp.add_argument("table", help="derivation table JSON file")
    sp = add("derive-verify", cmd_derive_verify, sig=False)
    sp.add_argument("table", help="derivation table JSON file")
    sp = add("antideriv", cmd_antideriv, sig=False)
    sp.add_argument("func")

    sp = add("qtorus", cmd_qtorus, sig=False)
    qsub = sp.add_subparsers(dest="qcmd", required=True)
    qp = qsub.add_parser("bracket")
    for name in ("a", "i", "b", "j"):
        qp.add_argument(name, type=int)
    qp = qsub.add_parser("theta")
    qp.add_argument("--count", type=int, default=100)
    qp.add_argument("--bound", type=int, default=3)
    qp.add_argument("--seed", type=int, default=0)
    for name in ("center", "toral"):
        qp = qsub.add_parser(name)
        qp.add_argument("--bound", type=int, default=2)
    for qp in qsub.choices.values():
        qp.add_argument("--q", required=True, help="rational q, e.g. 2 or 1/2")
        qp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sp = add("selftest", cmd_selftest, sig=False)
    sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(args, payload, text, stream):
    if args.json:
        stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif text is not None:
        stream.write(text + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command + (f" {args.qcmd}" if args.command == "qtorus" else "")
    sig = getattr(args, "sig", None)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "signature": sig.spec if sig else None,
    }
    try:
        result, text = args.fn(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"wittlab: error: {exc}\n")
        return 2
    except (WittError, ValueError, OSError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        payload["error"] = {"code": code, "message": str(exc)}
        if args.json:
            _emit(args, payload, None, stdout)
        stderr.write(f"error: {code}: {exc}\n")
        return 1
    payload["result"] = result
    _emit(args, payload, text, stdout)
    if args.command == "selftest" and result["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
