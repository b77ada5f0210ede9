"""Command-line interface.

Subcommands emit JSON documents (schema "swd/1") on stdout by default;
``--format table`` switches the pattern and matrix outputs to plain-text
grids.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import extension as ext
from . import gibson as gb
from . import indices as ix
from . import patterns as pt
from . import verify as vf
from .diagrams import enumerate_diagrams
from .invariants import check_membership
from .rings import Ring
from .tensor import matrix_from_json, matrix_to_json

SCHEMA = "swd/1"


class UsageError(Exception):
    pass


def _ring(args):
    try:
        return Ring.parse(args.ring)
    except ValueError as e:
        raise UsageError(str(e))


def _emit(args, doc, text=None):
    if getattr(args, "format", "json") == "table" and text is not None:
        payload = text if text.endswith("\n") else text + "\n"
    else:
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _report_lines(doc):
    return "\n".join("%s: %s" % (k, doc[k]) for k in sorted(doc))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args):
    ring = _ring(args)
    if args.half:
        report = vf.verify_half(args.n, args.r, ring, unsafe_large=args.unsafe_large)
    else:
        report = vf.verify_duality(
            args.n, args.r, ring, seed=args.seed, unsafe_large=args.unsafe_large
        )
    doc = report.to_json()
    _emit(args, doc, _report_lines(doc))
    return 0 if report.ok else 1


def cmd_verify_half(args):
    args.half = True
    return cmd_verify(args)


def cmd_dims(args):
    ring = _ring(args)
    if not ring.is_field():
        raise UsageError("dims requires a field ring")
    doc = {
        "schema": SCHEMA,
        "n": args.n,
        "r": args.r,
        "ring": ring.name,
        "centraliser": vf.centraliser_dimension(
            args.n, args.r, ring, unsafe_large=args.unsafe_large
        ),
        "span_w": vf.span_dimension_w(
            args.n, args.r, ring, unsafe_large=args.unsafe_large
        ),
        "free_pattern": len(pt.build_f(args.n, args.r)),
    }
    _emit(args, doc, _report_lines(doc))
    return 0


def _based_pattern(n, r, basis, flavour):
    if flavour == "decomposition":
        pattern = pt.build_d(n, r)
    else:
        pattern = pt.build_f(n, r)
    if basis in ("last-row", "row:%d" % n):
        return pattern
    if flavour == "decomposition":
        raise UsageError("decomposition patterns are emitted for the last block row only")
    if basis.startswith("row:"):
        i = int(basis[4:])
        tau = list(range(1, n + 1))
        tau[i - 1], tau[n - 1] = n, i
        out = pt.transform_pattern(pattern, row_perm=tuple(tau))
        return pt.FreePattern(n, r, "row:%d" % i, pattern.flavour, out.entries)
    if basis.startswith("col:"):
        j = int(basis[4:])
        out = pt.transform_pattern(pattern, transpose=True)
        if j != n:
            tau = list(range(1, n + 1))
            tau[j - 1], tau[n - 1] = n, j
            out = pt.transform_pattern(out, col_perm=tuple(tau))
        return pt.FreePattern(n, r, "col:%d" % j, pattern.flavour, out.entries)
    raise UsageError("unknown basis %r" % (basis,))


def cmd_free_pattern(args):
    pattern = _based_pattern(args.n, args.r, args.basis, args.flavour)
    doc = {"schema": SCHEMA, **pattern.to_json()}
    if pattern.flavour == "decomposition":
        text = pt.render_decomposition_pattern(pattern, columns=args.columns)
    else:
        text = pt.render_pattern(pattern, columns=args.columns)
    _emit(args, doc, text)
    return 0


def cmd_colouring(args):
    zeros = set()
    if args.block_j is not None:
        zeros = set(pt.containing_zeros(args.n, args.r, args.block_j))
        if args.zero_l_closure:
            zeros.update(ix.l_closure(args.n, args.r, args.block_j - 1))
    col = pt.colour(args.n, args.r, args.policy, frozenset(zeros))
    doc = {
        "schema": SCHEMA,
        "n": args.n,
        "r": args.r,
        "policy": args.policy,
        "ones": [ix.format_index(i) for i in col.ones],
    }
    _emit(args, doc, pt.render_colouring(col))
    return 0


def cmd_gibson(args):
    ring = _ring(args)
    basis = gb.gibson_basis(args.n)
    doc = {
        "schema": SCHEMA,
        "n": args.n,
        "rank": (args.n - 1) ** 2 + 1,
        "elements": [
            {"label": label, "one_line": list(w)} for label, w in basis
        ],
    }
    lines = []
    for label, w in basis:
        lines.append(label)
        for row in gb.perm_rows(ring, w):
            lines.append(" ".join(ring.format_value(v) for v in row))
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_enumerate_diagrams(args):
    diags = enumerate_diagrams(args.r)
    doc = {
        "schema": SCHEMA,
        "r": args.r,
        "count": len(diags),
        "diagrams": [d.format() for d in diags],
    }
    _emit(args, doc, "\n".join(d.format() for d in diags))
    return 0


def _load_doc(args):
    if not args.infile:
        raise UsageError("--in <file> is required")
    with open(args.infile) as fh:
        return json.load(fh)


def cmd_check_membership(args):
    doc = _load_doc(args)
    matrix = matrix_from_json(doc["matrix"] if "matrix" in doc else doc)
    report = check_membership(matrix)
    out = {"schema": SCHEMA, **report.to_json()}
    _emit(args, out, _report_lines(out))
    return 0 if report.in_E else 1


def _parse_assignment(ring, values, decomposition=False):
    """Assignment values keyed "(row,col)" or, for decompositions,
    "(j,row,col)"; entry values use the ring's element syntax."""
    out = {}
    for key, v in (values or {}).items():
        key = key.strip()
        if not (key.startswith("(") and key.endswith(")")):
            raise UsageError("malformed assignment key %r" % key)
        parts = [p.strip() for p in key[1:-1].split(",")]
        if decomposition:
            if len(parts) != 3:
                raise UsageError("decomposition keys need (j,row,col): %r" % key)
            out[(int(parts[0]), ix.parse_index(parts[1]), ix.parse_index(parts[2]))] = (
                ring.parse_value(v)
            )
        else:
            if len(parts) != 2:
                raise UsageError("extension keys need (row,col): %r" % key)
            out[(ix.parse_index(parts[0]), ix.parse_index(parts[1]))] = ring.parse_value(v)
    return out


def cmd_extend(args):
    doc = _load_doc(args)
    b = matrix_from_json(doc["matrix"])
    f = _parse_assignment(b.ring, doc.get("values"))
    a = ext.extend(b, f)
    _emit(args, {"schema": SCHEMA, "matrix": matrix_to_json(a)})
    return 0


def cmd_decompose(args):
    doc = _load_doc(args)
    a = matrix_from_json(doc["matrix"])
    f = _parse_assignment(a.ring, doc.get("values"), decomposition=True)
    basis = args.basis
    summands = ext.decompose(a, f, basis=basis)
    if basis in ("last-row",):
        basis = "row:%d" % a.n
    if basis.startswith("row:"):
        i = int(basis[4:])
        tags = [{"i": i, "j": j} for j in range(1, a.n + 1)]
    else:
        j = int(basis[4:])
        tags = [{"i": i, "j": j} for i in range(1, a.n + 1)]
    out = {
        "schema": SCHEMA,
        "basis": basis,
        "summands": [
            {"tag": tag, "matrix": matrix_to_json(s)}
            for tag, s in zip(tags, summands)
        ],
    }
    _emit(args, out)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swd",
        description="Exact partition-algebra tensor actions and duality checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True, r=True, ring=True):
        if n:
            p.add_argument("--n", type=int, required=True)
        if r:
            p.add_argument("--r", type=int, required=True)
        if ring:
            p.add_argument("--ring", default="q", help="z, q, or z/M")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--unsafe-large", dest="unsafe_large", action="store_true")

    p = sub.add_parser("verify", help="duality report for one (n, r, ring) cell")
    common(p)
    p.add_argument("--half", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-half", help="half-algebra chain at (n, r + 1/2)")
    common(p)
    p.set_defaults(func=cmd_verify_half)

    p = sub.add_parser("dims", help="centraliser and span dimensions")
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("free-pattern", help="free extension/decomposition pattern")
    common(p, ring=False)
    p.add_argument("--basis", default="last-row")
    p.add_argument(
        "--flavour", choices=["extension", "decomposition"], default="extension"
    )
    p.add_argument("--columns", choices=["used", "all"], default="used")
    p.set_defaults(func=cmd_free_pattern)

    p = sub.add_parser("colouring", help="slice colouring of the injective indices")
    common(p, ring=False)
    p.add_argument("--policy", choices=["largest", "smallest"], default="largest")
    p.add_argument("--block-j", dest="block_j", type=int, default=None)
    p.add_argument(
        "--no-l-closure", dest="zero_l_closure", action="store_false", default=True
    )
    p.set_defaults(func=cmd_colouring)

    p = sub.add_parser("gibson", help="Gibson basis of the GDS matrices")
    common(p, r=False)
    p.set_defaults(func=cmd_gibson)

    p = sub.add_parser("enumerate-diagrams", help="all diagrams of one rank")
    common(p, n=False, ring=False)
    p.set_defaults(func=cmd_enumerate_diagrams)

    p = sub.add_parser("check-membership", help="centraliser membership report")
    common(p, n=False, r=False, ring=False)
    p.add_argument("--in", dest="infile", default=None)
    p.set_defaults(func=cmd_check_membership)

    p = sub.add_parser("extend", help="extend an invariant one degree up")
    common(p, n=False, r=False, ring=False)
    p.add_argument("--in", dest="infile", default=None)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("decompose", help="split an invariant into specials")
    common(p, n=False, r=False, ring=False)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--basis", default="last-row")
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0,) else 0
    try:
        return args.func(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
