"""Command-line front end.

    reslie validate FILE
    reslie cohomology --degree 2 --family heisenberg-even --m 1 --n 1 --p 3
    reslie res-cohomology --family heisenberg-odd --n 2 --p 5
    reslie sixterm FILE
    reslie extend --family heisenberg-even --m 1 --n 1 --p 3 --cocycle "x^{1,2} + 2*frob:3"
    reslie catalog --family heisenberg-odd --n 2 --p 3
    reslie family --family heisenberg-even --m 1 --n 2 --p 5 --lambda random --seed 7

Every command reads an algebra either from a JSON document or from
``--family``, and writes a JSON report (``--format table`` for aligned text).
Exit status: 0 success, 1 validation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import TextIO

import numpy as np

from . import families
from .cochain import cochain_labels, cohomology, wedge2_basis
from .document import DocumentError, from_algebra, parse, serialize, to_algebra, to_dict
from .extensions import (
    OddCocycleError,
    catalog_is_basis,
    central_extension,
    check_extension,
    describe_cocycle,
    extension_catalog,
    is_split_ordinary,
)
from .linalg import MalformedInputError
from .rescohomology import (
    NotACocycleError,
    RestrictedCochain2,
    cochain_parity,
    h1_res,
    h2_res,
    is_restricted_cocycle,
    sixterm_verify,
)
from .restricted import POperator, validate_restricted
from .superalgebra import LieSuperalgebra, validate_superalgebra

FAMILIES = ("heisenberg-even", "heisenberg-odd")


class UsageError(Exception):
    pass


def _add_common(sp: argparse.ArgumentParser, file_arg: bool = True) -> None:
    if file_arg:
        sp.add_argument("file", nargs="?", help="algebra document (JSON)")
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--m", type=int, default=1, help="even-center family: m (default 1)")
    sp.add_argument("--n", type=int, default=1, help="family parameter n (default 1)")
    sp.add_argument("--p", type=int, default=3, help="characteristic (default 3)")
    sp.add_argument("--lambda", dest="lam", default=None, help="comma-separated residues, or 'random'")
    sp.add_argument("--seed", type=int, default=0, help="seed for --lambda random (default 0)")
    sp.add_argument("--format", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reslie", description="Restricted Lie superalgebra cohomology over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("validate", help="check the superalgebra and [p]-operator axioms"))
    sp = sub.add_parser("cohomology", help="ordinary H^1 or H^2")
    _add_common(sp)
    sp.add_argument("--degree", type=int, choices=(1, 2), required=True)
    _add_common(sub.add_parser("res-cohomology", help="restricted H^1 and H^2"))
    _add_common(sub.add_parser("sixterm", help="verify the six-term exact sequence"))
    sp = sub.add_parser("extend", help="central extension by an even restricted 2-cocycle")
    _add_common(sp)
    sp.add_argument("--cocycle", required=True, help="e.g. 'x^{1,2} + 2*frob:3' or comma-separated coordinates")
    _add_common(sub.add_parser("catalog", help="named extension catalog of a family member"), file_arg=False)
    _add_common(sub.add_parser("family", help="print a family member as a document"), file_arg=False)
    return parser


# input ----------------------------------------------------------------------

def _parse_lambda(args) -> tuple[int, ...] | None:
    if args.lam is None:
        return None
    if args.lam == "random":
        return families.random_lambda(args.m, args.p, args.seed)
    try:
        return tuple(int(x) for x in args.lam.split(","))
    except ValueError:
        raise UsageError(f"--lambda: expected comma-separated integers or 'random', got {args.lam!r}") from None


def _load(args) -> tuple[LieSuperalgebra, POperator, families.FamilyMember | None, dict]:
    path = getattr(args, "file", None)
    if (path is None) == (args.family is None):
        raise UsageError("give exactly one of a document FILE or --family")
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            A, P = to_algebra(parse(text))
        except DocumentError as exc:
            raise UsageError(f"{os.path.basename(path)}: {exc}") from None
        return A, P, None, {"source": os.path.basename(path)}
    try:
        if args.family == "heisenberg-even":
            member = families.heisenberg_even(args.m, args.n, args.p, _parse_lambda(args))
            info = {"family": args.family, "m": args.m, "n": args.n, "lambda": list(member.lam)}
        else:
            member = families.heisenberg_odd(args.n, args.p)
            info = {"family": args.family, "n": args.n}
    except MalformedInputError as exc:
        raise UsageError(str(exc)) from None
    return member.algebra, member.p_operator, member, info


def _algebra_block(A: LieSuperalgebra, info: dict) -> dict:
    return {**info, "p": A.p, "even_basis": list(A.even_names), "odd_basis": list(A.odd_names), "sdim": [A.m, A.n]}


# provenance -----------------------------------------------------------------

def _claim(name: str, expected, computed) -> dict:
    expected, computed = list(expected), list(computed)
    return {"claim": name, "expected_sdim": expected, "computed_sdim": computed, "match": expected == computed}


def _expected(member: families.FamilyMember, what: str) -> tuple[str, tuple[int, int]]:
    if member.kind == "heisenberg-even":
        m, n = member.m, member.n
        table = {
            "h1": families.expected_sdim_h1_even_family(m, n),
            "h2": families.expected_sdim_h2_even_family(m, n),
            "h2_res": families.expected_sdim_h2res_even_family(m, n),
        }
        family = "even-center Heisenberg family"
    else:
        n = member.n
        table = {
            "h1": families.expected_sdim_h1_odd_family(n),
            "h2": families.expected_sdim_h2_odd_family(n),
            "h2_res": families.expected_sdim_h2res_odd_family(n),
        }
        family = "odd-center Heisenberg family"
    names = {
        "h1": "H^1",
        "h1_res": "restricted H^1 equals H^1",
        "h2": "ordinary H^2",
        "h2_res": "restricted H^2",
    }
    key = "h1" if what == "h1_res" else what
    return f"{names[what]} of the {family}", table[key]


def _provenance(member, computed: dict[str, tuple[int, int]]) -> list[dict]:
    if member is None:
        return []
    out = []
    for what, sdim in computed.items():
        name, expected = _expected(member, what)
        out.append(_claim(name, expected, sdim))
    return out


# commands -------------------------------------------------------------------

def _validation(A: LieSuperalgebra, P: POperator | None) -> dict:
    out = {"superalgebra": validate_superalgebra(A).as_dict(A.names)}
    if P is not None:
        out["restricted"] = validate_restricted(P).as_dict()
    out["ok"] = all(v["ok"] for v in out.values())
    return out


def cmd_validate(args, A, P, member):
    v = _validation(A, P)
    return (0 if v["ok"] else 1), {"validation": v}


def _guard(A, P):
    """Refuse to compute cohomology of something that is not a restricted superalgebra."""
    v = _validation(A, P)
    if not v["ok"]:
        return 1, {"validation": v, "error": "input fails the axioms; nothing computed"}
    return None


def cmd_cohomology(args, A, P, member):
    bad = _guard(A, None)
    if bad:
        return bad
    rep = cohomology(A, args.degree)
    what = f"h{args.degree}"
    return 0, {"cohomology": rep.as_dict(), "provenance": _provenance(member, {what: rep.sdim})}


def cmd_res_cohomology(args, A, P, member):
    bad = _guard(A, P)
    if bad:
        return bad
    r1, r2 = h1_res(P), h2_res(P)
    return 0, {
        "h1_res": r1.as_dict(),
        "h2_res": r2.as_dict(),
        "provenance": _provenance(member, {"h1_res": r1.sdim, "h2_res": r2.sdim}),
    }


def cmd_sixterm(args, A, P, member):
    bad = _guard(A, P)
    if bad:
        return bad
    rep = sixterm_verify(P)
    computed = {}
    if member is not None:
        computed = {"h1": cohomology(A, 1).sdim, "h2": cohomology(A, 2).sdim, "h2_res": h2_res(P).sdim}
    return (0 if rep.exact else 1), {"sixterm": rep.as_dict(), "provenance": _provenance(member, computed)}


_COORDS = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")
_TERM = re.compile(r"^\s*(?:(-?\d+)\s*\*\s*)?(\S.*?)\s*$")


def parse_cocycle(A: LieSuperalgebra, text: str) -> RestrictedCochain2:
    """Cocycle spec: ``coeff*label + ...`` over the printed cochain labels, or full coordinates.

    ``frob:K`` names the Frobenius coordinate of the K-th even basis vector (or
    ``frob:LABEL``).
    """
    labels = cochain_labels(A, 2, restricted=True)
    k = len(wedge2_basis(A.m, A.n))
    dim = len(labels)
    v = np.zeros(dim, dtype=np.int64)
    if _COORDS.match(text):
        vals = [int(x) for x in text.split(",")]
        if len(vals) != dim:
            raise UsageError(f"--cocycle: expected {dim} coordinates, got {len(vals)}")
        return RestrictedCochain2.from_vector(A, np.array(vals))
    index = {lab: i for i, lab in enumerate(labels)}
    for term in text.split("+"):
        mt = _TERM.match(term)
        if not mt:
            raise UsageError(f"--cocycle: empty term in {text!r}")
        coeff = int(mt.group(1)) if mt.group(1) else 1
        label = mt.group(2).replace(" ", "")
        if label.startswith("frob:"):
            key = label[5:]
            if key.isdigit() and 1 <= int(key) <= A.m:
                pos = k + int(key) - 1
            elif key in A.even_names:
                pos = k + A.even_names.index(key)
            else:
                raise UsageError(f"--cocycle: no even basis vector {key!r}")
        elif label in index:
            pos = index[label]
        else:
            raise UsageError(f"--cocycle: unknown cochain label {label!r}; known: {', '.join(labels)}")
        v[pos] += coeff
    return RestrictedCochain2.from_vector(A, v)


def cmd_extend(args, A, P, member):
    bad = _guard(A, P)
    if bad:
        return bad
    z = parse_cocycle(A, args.cocycle)
    report = {"cocycle": describe_cocycle(A, z), "coordinates": [int(x) for x in z.vector()]}
    ok, why = is_restricted_cocycle(P, z)
    report["is_restricted_cocycle"] = ok
    if not ok:
        report["error"] = why
        return 1, report
    try:
        E = central_extension(P, z)
    except (OddCocycleError, NotACocycleError) as exc:
        report["error"] = str(exc)
        report["parity"] = cochain_parity(A, z)
        return 1, report
    checks = check_extension(E)
    report.update(
        {
            "split": is_split_ordinary(A, z.phi),
            "center": E.center_label,
            "checks": checks,
            "extension": to_dict(from_algebra(E.algebra, E.p_operator)),
        }
    )
    return (0 if all(checks.values()) else 1), report


def _catalog_expected(member) -> tuple[int, int]:
    if member.kind == "heisenberg-even":
        m, n = member.m, member.n
        return 2 * m + 1, 2 * m * m - m + (n * n + n) // 2 - 1
    return member.n, member.n * member.n


def cmd_catalog(args, A, P, member):
    entries = []
    ok = True
    for E in extension_catalog(member):
        checks = check_extension(E)
        ok &= all(checks.values())
        entries.append({"name": E.name, "cocycle": describe_cocycle(A, E.cocycle), "split": E.split, "checks": checks})
    split = sum(e["split"] for e in entries)
    counts = [split, len(entries) - split]
    expected = list(_catalog_expected(member))
    independent = catalog_is_basis(member)
    claim = {
        "claim": "extension catalog counts (split, non-split)",
        "expected_counts": expected,
        "computed_counts": counts,
        "match": expected == counts,
    }
    ok = ok and independent and claim["match"]
    return (0 if ok else 1), {
        "catalog": entries,
        "counts": {"split": counts[0], "non_split": counts[1]},
        "classes_independent": independent,
        "provenance": [claim],
    }


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "res-cohomology": cmd_res_cohomology,
    "sixterm": cmd_sixterm,
    "extend": cmd_extend,
    "catalog": cmd_catalog,
}


# output ---------------------------------------------------------------------

def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        if not obj:
            yield prefix, "{}"
        for key in sorted(obj):
            yield from _flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    elif isinstance(obj, list):
        yield prefix, "[" + ", ".join(str(x) for x in obj) + "]"
    else:
        yield prefix, json.dumps(obj, ensure_ascii=False) if not isinstance(obj, str) else obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    rows = list(_flatten(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in ("catalog", "family") and args.family is None:
            raise UsageError(f"{args.command} needs --family")
        A, P, member, info = _load(args)
        if args.command == "family":
            out.write(serialize(from_algebra(A, P)))
            return 0
        code, body = COMMANDS[args.command](args, A, P, member)
    except UsageError as exc:
        err.write(f"reslie {args.command}: error: {exc}\n")
        return 2
    body.setdefault("provenance", [])
    if any(not c["match"] for c in body["provenance"]):
        code = max(code, 1)
    report = {"command": args.command, "algebra": _algebra_block(A, info), **body, "ok": code == 0}
    out.write(render(report, args.format))
    return code


def main() -> None:
    sys.exit(run())
