"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import expr as ex
from .algebra import substitute_algebra_params
from .catalog import (
    builtin,
    load_catalog_dir,
    load_certificates_dir,
    parse_algebra_file,
    parse_certificate_file,
)
from .degeneration import check_necessary_conditions, verify_certificate
from .errors import CDAlgError, GraphInconsistencyError, InputError, ParseError
from .graph import CertificateRejected, build_graph, components_report, saturate, to_dot, to_json
from .identities import check_cd, check_symmetry
from .invariants import invariant_profile, power_series_dims

OK, FAILED, BAD_INPUT = 0, 1, 2


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_algebra(path: str):
    # a built-in name is accepted when no such file exists
    if not Path(path).exists():
        try:
            return builtin(path)
        except KeyError:
            pass
    try:
        return parse_algebra_file(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_sample(text: str, A) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise InputError(f"--sample expects k=v pairs, got {item!r}")
        if key not in A.params:
            raise InputError(f"{key!r} is not a parameter of {A.name}")
        out[key] = ex.evaluate(ex.parse(value.strip(), allowed=()))
    return out


def cmd_check(args) -> int:
    A = _load_algebra(args.algebra)
    report = check_cd(A)
    powers = power_series_dims(A)
    print(f"algebra {A}")
    for label, ok in (("L/L", report.LL), ("L/R", report.LR), ("R/R", report.RR)):
        print(f"  {label} commutators are derivations: {'yes' if ok else 'no'}")
    print(f"  CD-algebra: {'yes' if report.is_cd else 'no'}")
    print(f"  symmetry: {check_symmetry(A)}")
    chain = " > ".join(str(d) for d in powers.dims)
    status = "nilpotent" if powers.nilpotent else "not nilpotent"
    if powers.two_step:
        status += ", 2-step"
    print(f"  powers: {chain} ({status})")
    return OK if report.is_cd else FAILED


def cmd_invariants(args) -> int:
    A = _load_algebra(args.algebra)
    if args.sample:
        A = substitute_algebra_params(A, _parse_sample(args.sample, A))
    mode = "extended" if args.extended else "paper"
    profile = invariant_profile(A, mode)
    print(f"algebra {A}")
    if A.is_family():
        print("  (ranks at a generic member)")
    for name, value, direction in profile.entries():
        print(f"  {name}: {value}  [{direction}]")
    print(f"  note: {profile.note}")
    return OK


def cmd_verify(args) -> int:
    cert = parse_certificate_file(_read(args.certificate))
    verdict = verify_certificate(cert, args.mode, args.samples, args.seed)
    print(f"{cert.name}: {cert.source.name} -> {cert.target.name}")
    print(f"  {verdict}")
    return OK if verdict.accepted else FAILED


def cmd_nondeg(args) -> int:
    A = _load_algebra(args.source)
    B = _load_algebra(args.target)
    if A.dim != B.dim:
        raise InputError(f"dimensions differ: {A.dim} and {B.dim}")
    res = check_necessary_conditions(A, B, "extended" if args.extended else "paper")
    print(f"{A.name} -> {B.name}: {res}")
    return OK


def cmd_graph(args) -> int:
    catalog = load_catalog_dir(args.catalog)
    certificates = load_certificates_dir(args.certificates, catalog)
    try:
        g = saturate(build_graph(catalog, certificates, args.mode, args.samples, args.seed))
    except CertificateRejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return FAILED
    except GraphInconsistencyError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return FAILED
    report = components_report(g)
    print(f"{len(g.nodes)} nodes, {len(g.edges)} edges, {len(g.blocks)} blocks")
    for e in g.edges:
        print(f"  {e.source} -> {e.target}  [{e.evidence}]")
    for b in g.blocks:
        print(f"  {b.source} -/-> {b.target}  ({'; '.join(b.reasons)})")
    print(report)
    if args.dot:
        Path(args.dot).write_text(to_dot(g), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(to_json(g, report), encoding="utf-8")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdalg", description="Identities, invariants and degenerations of algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="identity report")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("invariants", help="invariant profile")
    s.add_argument("algebra")
    s.add_argument("--extended", action="store_true")
    s.add_argument("--sample", metavar="k=v,...", help="fix family parameters first")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify", help="verify a degeneration certificate")
    s.add_argument("certificate")
    s.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("nondeg", help="invariant obstructions to a degeneration")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--extended", action="store_true")
    s.set_defaults(func=cmd_nondeg)

    s = sub.add_parser("graph", help="degeneration graph and component candidates")
    s.add_argument("catalog")
    s.add_argument("certificates")
    s.add_argument("--dot", metavar="OUT.dot")
    s.add_argument("--json", metavar="OUT.json")
    s.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_graph)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (InputError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except CDAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
