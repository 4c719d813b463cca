"""``quandlekit`` command line.

Exit codes: 0 success, 1 a negative mathematical answer (no order, certificate
rejected, axioms fail), 2 usage or input errors.  ``--json`` may appear anywhere
on the command line.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import io
from .certificates import certificate_to_dict, certificate_to_json, make_certificate, verify_certificate
from .free_orders import LETTERS, MagnusDepthError, format_free_word, magnus_compare, parse_free_word
from .links import closure_presentation, count_homs, parse_braid, torus_presentation
from .ordering import (
    ADMISSIBLE_TYPES,
    DEFAULT_SEED,
    NONUNIFORM,
    FiniteOrder,
    alexander_classify,
    alexander_sample_check,
    classify_order,
    format_type,
    search_order,
)
from .quandles import axiom_violations, property_report
from .terms import env_presentation, format_group_word


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    code: int
    text: str = ""
    payload: dict | None = field(default=None)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quandlekit", description="Finite quandles, orders, torus links and certificates.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("qcheck", help="validate a .qnd quandle table")
    s.add_argument("file")
    s = sub.add_parser("qprops", help="property report for a .qnd quandle")
    s.add_argument("file")

    q = sub.add_parser("qorder", help="order search and classification").add_subparsers(dest="action", parser_class=_Parser)
    q.required = True
    s = q.add_parser("search")
    s.add_argument("--side", choices=("right", "left", "bi"), default="right")
    s.add_argument("file")
    s = q.add_parser("classify")
    s.add_argument("file")
    s.add_argument("--order", required=True, help="comma-separated ranks r0,r1,...")

    a = sub.add_parser("alex", help="rational Alexander quandles").add_subparsers(dest="action", parser_class=_Parser)
    a.required = True
    s = a.add_parser("classify")
    s.add_argument("--u", required=True, help="rational parameter P/Q")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)

    t = sub.add_parser("torus", help="torus link presentations and certificates").add_subparsers(dest="action", parser_class=_Parser)
    t.required = True
    s = t.add_parser("present")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s = t.add_parser("cert")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--out")

    b = sub.add_parser("braid", help="braid closures").add_subparsers(dest="action", parser_class=_Parser)
    b.required = True
    s = b.add_parser("present")
    s.add_argument("--strands", type=int, required=True)
    s.add_argument("word")

    s = sub.add_parser("colorings", help="count colorings of a presentation by a quandle")
    s.add_argument("pres")
    s.add_argument("quandle")
    s = sub.add_parser("envgroup", help="enveloping group presentation")
    s.add_argument("pres")

    c = sub.add_parser("cert", help="certificate tools").add_subparsers(dest="action", parser_class=_Parser)
    c.required = True
    s = c.add_parser("verify")
    s.add_argument("pres")
    s.add_argument("cert")

    f = sub.add_parser("freeq", help="Magnus order on free groups").add_subparsers(dest="action", parser_class=_Parser)
    f.required = True
    s = f.add_parser("compare")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("w1")
    s.add_argument("w2")
    return p


# ---------------------------------------------------------------- commands


def _qcheck(args):
    T, name = io.parse_table(Path(args.file).read_text())
    bad = axiom_violations(T)
    if bad:
        lines = [f"{v.axiom} fails at {list(v.witness)}" for v in bad[:20]]
        if len(bad) > 20:
            lines.append(f"... {len(bad)} violations in total")
        payload = {"valid": False, "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in bad]}
        return CommandResult(1, "\n".join(lines), payload)
    return CommandResult(0, f"valid quandle of order {T.shape[0]}", {"valid": True, "size": T.shape[0], "name": name})


def _qprops(args):
    Q = io.read_quandle(args.file)
    rep = property_report(Q).as_dict()
    text = "\n".join(f"{k:18s} {v}" for k, v in rep.items())
    return CommandResult(0, text, rep)


def _qorder_search(args):
    Q = io.read_quandle(args.file)
    res = search_order(Q, args.side)
    payload = res.as_dict()
    if res.witness is None:
        return CommandResult(1, f"none: no {args.side} order on {Q.size} elements", payload)
    return CommandResult(0, f"{res.count} {args.side} orders; first: {res.witness}", payload)


def _qorder_classify(args):
    Q = io.read_quandle(args.file)
    order = FiniteOrder.parse(args.order)
    if order.ranking.size != Q.size:
        raise UsageError(f"order ranks {order.ranking.size} elements, quandle has {Q.size}")
    t = classify_order(Q, order)
    slots = [i + 1 for i, s in enumerate(t) if s is NONUNIFORM]
    payload = {
        "type": [s.value for s in t],
        "uniform": not slots,
        "admissible": t in ADMISSIBLE_TYPES,
        "violations": slots,
        "witness_order": order.sequence(),
        "count": 1,
    }
    text = f"type {format_type(t)}" + (f"; slots {slots} are not uniform" if slots else "")
    return CommandResult(0, text, payload)


def _alex_classify(args):
    try:
        u = Fraction(args.u)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {args.u!r}") from None
    if u == 0:
        raise UsageError("u must be non-zero")
    rep = alexander_sample_check(u, args.trials, args.seed)
    t = alexander_classify(u)
    text = f"u = {u}: type {format_type(t)}; {args.trials} trials (seed {args.seed}), {len(rep.violations)} violations"
    return CommandResult(0 if rep.ok else 1, text, rep.as_dict())


def _presentation_result(P):
    payload = {
        "name": P.name,
        "generators": list(P.generators),
        "relations": [[str(l), str(r)] for l, r in P.relations],
    }
    return CommandResult(0, P.to_text().rstrip("\n"), payload)


def _torus_present(args):
    if args.m < 1 or args.n < 1:
        raise UsageError("m and n must be positive")
    return _presentation_result(torus_presentation(args.m, args.n))


def _braid_present(args):
    return _presentation_result(closure_presentation(parse_braid(args.word, args.strands)))


def _torus_cert(args):
    c = make_certificate(args.m, args.n)
    text = certificate_to_json(c)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        text = f"certificate written to {args.out} ({len(c.steps)} steps, cycle of length {len(c.cycle)})"
    return CommandResult(0, text, certificate_to_dict(c))


def _cert_verify(args):
    P = io.read_presentation(args.pres)
    c = io.read_certificate(args.cert)
    res = verify_certificate(P, c)
    if res.ok:
        return CommandResult(0, f"accept: {res.reason}", res.as_dict())
    return CommandResult(1, f"reject at {res.step}: {res.reason}", res.as_dict())


def _colorings(args):
    P = io.read_presentation(args.pres)
    Q = io.read_quandle(args.quandle)
    n = count_homs(P, Q)
    return CommandResult(0, str(n), {"colorings": n, "quandle_size": Q.size, "generators": len(P.generators)})


def _envgroup(args):
    G = env_presentation(io.read_presentation(args.pres))
    payload = {"generators": list(G.generators), "relators": [format_group_word(r) for r in G.relators]}
    return CommandResult(0, G.to_text().rstrip("\n"), payload)


def _freeq_compare(args):
    if not 1 <= args.rank <= len(LETTERS):
        raise UsageError(f"rank must be in 1..{len(LETTERS)}")
    u = parse_free_word(args.w1, args.rank)
    v = parse_free_word(args.w2, args.rank)
    s = magnus_compare(u, v)
    text = f"{format_free_word(u)} {s.value} {format_free_word(v)}"
    return CommandResult(0, text, {"w1": format_free_word(u), "w2": format_free_word(v), "result": s.value})


_DISPATCH = {
    ("qcheck", None): _qcheck,
    ("qprops", None): _qprops,
    ("qorder", "search"): _qorder_search,
    ("qorder", "classify"): _qorder_classify,
    ("alex", "classify"): _alex_classify,
    ("torus", "present"): _torus_present,
    ("torus", "cert"): _torus_cert,
    ("braid", "present"): _braid_present,
    ("colorings", None): _colorings,
    ("envgroup", None): _envgroup,
    ("cert", "verify"): _cert_verify,
    ("freeq", "compare"): _freeq_compare,
}

# format, axiom, syntax, braid and certificate errors are all ValueErrors
_INPUT_ERRORS = (UsageError, OSError, ValueError, KeyError, MagnusDepthError)


def run(argv) -> CommandResult:
    argv = list(argv)
    try:
        args = _build_parser().parse_args(argv)
        fn = _DISPATCH[(args.cmd, getattr(args, "action", None))]
        return fn(args)
    except _INPUT_ERRORS as exc:
        return CommandResult(2, f"error: {exc}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    if any(a in ("-h", "--help") for a in argv) or not argv:
        try:
            _build_parser().parse_args(argv or ["--help"])
        except SystemExit as exc:
            return int(exc.code or 0)
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    res = run(argv)
    if res.code == 2:
        print(res.text, file=sys.stderr)
    elif as_json and res.payload is not None:
        print(json.dumps(res.payload, indent=2))
    else:
        print(res.text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
