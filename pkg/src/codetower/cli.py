"""
Command line driver.

    codetower codes FILE [--dual] [--recover [--coset WORD]] [--equivalent FILE]
    codetower lattices FILE [--dual] [--census] [--overlattices]
                            [--isometric FILE] [--classify plus|mixed FILE]
    codetower qseries KIND [--lattice FILE] [--rank N --dim-t D --sign +|-] [--scale M]
    codetower verify ID... | --all [--report-dir DIR]

FILE may also be ``@name`` for a built-in object (``@e8``, ``@E8^2``,
``@delta4+``, ...).  Exit codes: 0 pass, 1 fail, 2 defect, 64 usage error.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import GuardError, HypothesisViolation, ParseError, SearchDefect

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _json_default(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError("not serialisable: %r" % type(x))


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default)


# -- loading objects -------------------------------------------------------


def _named(name):
    from .bincodes import named_code
    from .corpus import code_corpus, named_kleinian, rank16_twisted_corpus, small_lattices
    from .lattices import named_lattice

    getters = (
        named_kleinian,
        named_code,
        named_lattice,
        lambda k: code_corpus()[k],
        lambda k: small_lattices()[k],
        lambda k: rank16_twisted_corpus()[k],
    )
    for get in getters:
        try:
            return get(name)
        except (KeyError, ValueError):
            continue
    raise UsageError("unknown built-in object %r" % name)


def load(spec):
    from .textio import parse_code, parse_lattice

    if spec.startswith("@"):
        return _named(spec[1:])
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (spec, e.strerror)) from None
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "lattice":
        return parse_lattice(text)
    return parse_code(text)


def _kind(obj):
    from .bincodes import BinaryCode
    from .kleinian import KleinianCode
    from .lattices import Lattice

    if isinstance(obj, KleinianCode):
        return "kleinian"
    if isinstance(obj, BinaryCode):
        return "binary"
    if isinstance(obj, Lattice):
        return "lattice"
    raise UsageError("unsupported object")


# -- codes -----------------------------------------------------------------


def cmd_codes(args):
    from . import f2
    from .bincodes import code_dual, code_equivalent, is_doubly_even, is_self_dual, recover_kleinian, weight_enumerator
    from .kleinian import k_dual, k_equivalent, k_weight_enumerator
    from .textio import format_code

    code = load(args.file)
    kind = _kind(code)
    if kind == "lattice":
        raise UsageError("%s holds a lattice; use the lattices subcommand" % args.file)
    out = {"kind": kind, "length": code.length}
    if kind == "kleinian":
        out.update(
            f2_rank=code.rank,
            size=len(code),
            even=code.is_even(),
            self_dual=code.is_self_dual(),
            weight_enumerator=list(k_weight_enumerator(code).coeffs),
        )
        dual = k_dual
    else:
        out.update(
            dimension=code.dim,
            doubly_even=is_doubly_even(code),
            self_dual=is_self_dual(code),
            weight_enumerator=list(weight_enumerator(code).coeffs),
        )
        dual = code_dual
    if args.dual:
        out["dual"] = format_code(dual(code)).splitlines()
    if args.equivalent:
        other = load(args.equivalent)
        if _kind(other) != kind:
            raise UsageError("cannot compare a %s code with a %s object" % (kind, _kind(other)))
        if kind == "kleinian":
            w = k_equivalent(code, other)
            out["equivalence"] = None if w is None else {"perm": list(w.perm), "symbol_maps": ["".join(m) for m in w.symbol_maps]}
        else:
            w = code_equivalent(code, other)
            out["equivalence"] = None if w is None else {"perm": list(w)}
    if args.recover:
        if kind != "binary":
            raise UsageError("--recover needs a binary code")
        x = f2.from_string(args.coset) if args.coset else None
        if x is not None and len(args.coset) != code.length:
            raise UsageError("--coset must have length %d" % code.length)
        rec = recover_kleinian(code, x)
        if rec is None:
            out["recovery"] = None
        else:
            out["recovery"] = {"mode": rec.mode, "kleinian": format_code(rec.kleinian).splitlines(), "perm": list(rec.perm)}
    return out, 0


# -- lattices --------------------------------------------------------------


def cmd_lattices(args):
    from .lattices import (
        discriminant_group,
        dual_lattice,
        even_overlattices,
        lattice_isometric,
        minimum_norm,
        theta_series,
    )
    from .textio import format_lattice

    L = load(args.file)
    if _kind(L) != "lattice":
        raise UsageError("%s holds a code; use the codes subcommand" % args.file)
    out = {
        "rank": L.rank,
        "denom": L.denom,
        "determinant": L.determinant(),
        "integral": L.is_integral(),
        "even": L.is_even(),
    }
    if L.is_integral():
        out["discriminant_group"] = str(discriminant_group(L))
        out["minimum_norm"] = minimum_norm(L)
        out["theta"] = [[2 * e, c] for e, c in theta_series(L, args.precision).terms()]
    if args.dual:
        out["dual"] = format_lattice(dual_lattice(L)).splitlines()
    if args.census:
        from .voamod import all_self_dual_simple_current, module_census

        labels = module_census(L)
        out["census"] = {"count": len(labels), "labels": [str(m) for m in labels[:64]]}
        out["all_self_dual_simple_current"] = all_self_dual_simple_current(L)
    if args.overlattices:
        out["overlattices"] = [
            {"discriminant_group": str(c.discriminant), "count": c.count, "basis": format_lattice(c.lattice).splitlines()}
            for c in even_overlattices(L)
        ]
    if args.isometric:
        N = load(args.isometric)
        W = lattice_isometric(L, N)
        out["isometry"] = None if W is None else W.to_json(L)
    if args.classify:
        from .voamod import classify_pair_mixed, classify_pair_plus, verify_verdict

        mode, other = args.classify
        if mode not in ("plus", "mixed"):
            raise UsageError("--classify mode must be plus or mixed")
        N = load(other)
        fn = classify_pair_plus if mode == "plus" else classify_pair_mixed
        v = fn(L, N, args.precision, trace=args.trace)
        out["verdict"] = v.to_json()
        out["verdict_verified"] = verify_verdict(v, L, N)
        return out, 0 if out["verdict_verified"] else 1
    return out, 0


# -- q-series --------------------------------------------------------------

QSERIES_KINDS = ("eta", "theta2", "theta3", "theta4", "chVL", "chVLplus", "chVLminus", "twisted")


def cmd_qseries(args):
    from . import qseries as qs

    N = args.precision
    k = args.kind
    if k == "eta":
        try:
            s = qs.eta(Fraction(args.scale), N)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError("bad --scale %r: %s" % (args.scale, e)) from None
    elif k.startswith("theta"):
        s = qs.theta_k(int(k[-1]), N)
    elif k.startswith("chVL"):
        if not args.lattice:
            raise UsageError("%s needs --lattice" % k)
        L = load(args.lattice)
        if _kind(L) != "lattice":
            raise UsageError("--lattice must name a lattice")
        fn = {"chVL": qs.ch_VL, "chVLplus": qs.ch_VLplus, "chVLminus": qs.ch_VLminus}[k]
        s = fn(L, N)
    else:
        if args.rank is None or args.dim_t is None:
            raise UsageError("twisted needs --rank and --dim-t")
        s = qs.ch_twisted_pm(args.rank, args.dim_t, 1 if args.sign == "+" else -1, N)
    return s, 0


# -- verify ----------------------------------------------------------------


def _run_one(item):
    from .checks import run_check

    cid, prec, trace = item
    return run_check(cid, prec, trace)


def cmd_verify(args):
    from .checks import CHECKS, STATUS_EXIT

    ids = list(CHECKS) if args.all else args.ids
    if not ids:
        raise UsageError("name at least one check id or pass --all")
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise UsageError("unknown check id(s): %s (known: %s)" % (", ".join(unknown), ", ".join(CHECKS)))
    items = [(i, args.precision, args.trace) for i in ids]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_run_one, items))
    else:
        reports = [_run_one(x) for x in items]
    out = {"reports": [r.to_json() for r in reports]}
    if args.report_dir:
        from .report import write_report

        out["report_files"] = write_report(reports, args.report_dir, args.precision)
    code = max(STATUS_EXIT[r.status] for r in reports)
    return out, code


# -- entry point -----------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=10, help="series truncation in q units (default 10)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--trace", action="store_true", help="include proof-path diagnostics in verdicts")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify batches")

    p = _Parser(prog="codetower", description="Codes, lattices and characters: constructions and checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("codes", parents=[common], help="inspect a Kleinian or binary code")
    c.add_argument("file")
    c.add_argument("--dual", action="store_true")
    c.add_argument("--equivalent", metavar="FILE")
    c.add_argument("--recover", action="store_true", help="recover a Kleinian code (binary input)")
    c.add_argument("--coset", metavar="WORD", help="coset representative for --recover")

    lt = sub.add_parser("lattices", parents=[common], help="inspect a lattice")
    lt.add_argument("file")
    lt.add_argument("--dual", action="store_true")
    lt.add_argument("--census", action="store_true", help="list irreducible V_L^+ module labels")
    lt.add_argument("--overlattices", action="store_true")
    lt.add_argument("--isometric", metavar="FILE")
    lt.add_argument("--classify", nargs=2, metavar=("MODE", "FILE"), help="MODE is plus or mixed")

    q = sub.add_parser("qseries", parents=[common], help="print a q-series")
    q.add_argument("kind", choices=QSERIES_KINDS)
    q.add_argument("--lattice", metavar="FILE")
    q.add_argument("--scale", default="1", help="eta scale: 1/2, 1 or 2")
    q.add_argument("--rank", type=int)
    q.add_argument("--dim-t", type=int)
    q.add_argument("--sign", choices=("+", "-"), default="+")

    v = sub.add_parser("verify", parents=[common], help="run registered checks")
    v.add_argument("ids", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--report-dir", metavar="DIR", help="write CSV tables and PNG figures here")
    return p


def _text(command, result):
    from .qseries import QSeries

    if isinstance(result, QSeries):
        return result.format_lines()
    if command == "verify":
        lines = ["%-24s %-7s %8d ms" % (r["check"], r["status"], r["wall_ms"]) for r in result["reports"]]
        for r in result["reports"]:
            for name in r["certificate"].get("failed", []):
                lines.append("  %s: failed %s" % (r["check"], name))
            if "defect" in r["certificate"]:
                lines.append("  %s: defect %s" % (r["check"], r["certificate"]["defect"]))
        for k, path in sorted(result.get("report_files", {}).items()):
            lines.append("wrote %s" % path)
        return "\n".join(lines)
    lines = []
    for k in sorted(result):
        val = result[k]
        if isinstance(val, list) and val and all(isinstance(x, str) for x in val):
            lines.append("%s:" % k)
            lines += ["  " + x for x in val]
        elif isinstance(val, (dict, list)):
            lines.append("%s: %s" % (k, json.dumps(val, sort_keys=True, default=_json_default)))
        else:
            lines.append("%s: %s" % (k, val))
    return "\n".join(lines)


COMMANDS = {"codes": cmd_codes, "lattices": cmd_lattices, "qseries": cmd_qseries, "verify": cmd_verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        result, code = COMMANDS[args.command](args)
    except (UsageError, ParseError) as e:
        print("codetower: error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (HypothesisViolation, GuardError) as e:
        print("codetower: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1
    except SearchDefect as e:
        print("codetower: defect: %s" % e, file=sys.stderr)
        return 2
    if args.format == "json":
        from .qseries import QSeries

        if isinstance(result, QSeries):
            result = result.to_json()
        print(_dump(result))
    else:
        print(_text(args.command, result))
    return code


if __name__ == "__main__":
    sys.exit(main())
