"""Command-line front end: verification suites, projector and pullback
artifacts, and rendering of stored reports.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import presets
from .cherngalois import (Functional, ProjectorError, projector, trace_rank,
                          verify_pullback_theorem)
from .comodule import contragredient, verify_coaction
from .connection import CoverageError, check_strong_connection
from .ncalg import NCPoly, Presentation, PresentationError
from .presfile import PresentationFileError, parse_workspace
from .report import Report
from .scalars import PoleError
from .structure import verify_hopf_axioms

PRESET_NAMES = ("suq2", "u1", "podles-line", "trivial-base")


class InputError(Exception):
    pass


def _parse_preset(values):
    if not values:
        raise InputError("--preset needs a name")
    name = values[0]
    if name not in PRESET_NAMES:
        raise InputError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if name == "podles-line":
        if len(values) != 2:
            raise InputError("preset podles-line takes a winding number, e.g. "
                             "--preset podles-line 1")
        try:
            n = int(values[1])
        except ValueError:
            raise InputError("winding must be an integer") from None
        if n == 0:
            raise InputError("winding zero has no line bundle")
        return name, n
    if len(values) != 1:
        raise InputError(f"preset {name} takes no extra argument")
    return name, None


def _parse_q(spec: str):
    if spec == "symbolic":
        return None
    try:
        q0 = Fraction(spec)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--q expects 'symbolic' or a rational number, got {spec!r}") \
            from None
    if q0 == 0:
        raise InputError("--q 0 is rejected; the deformation parameter is invertible")
    return q0


def _functional(alg: Presentation, choice: str) -> Functional:
    if choice != "constant-term":
        raise InputError(f"unknown functional {choice!r}")
    return Functional.constant_term(alg)


def _specialize_poly(p: NCPoly, q0: Fraction) -> str:
    parts = []
    for w in p.support():
        c = p.terms[w].evaluate(q0)
        if c == 0:
            continue
        ws = " ".join(w) if w else "1"
        mag = abs(c)
        if ws == "1":
            body = str(mag)
        elif mag == 1:
            body = ws
        else:
            body = f"{mag} {ws}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _matrix_strings(entries, q0=None):
    if q0 is None:
        return [[str(e) for e in row] for row in entries]
    return [[_specialize_poly(e, q0) for e in row] for row in entries]


def _emit(report: Report, out=None):
    for line in report.lines():
        print(line, file=out if out is not None else sys.stdout)


def _write_artifact(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# verify

def _verify_algebra(alg: Presentation, d: int) -> Report:
    rep = Report()
    conf = alg.check_local_confluence(max(6, alg._max_rule_len))
    rep.extend(conf, prefix=f"{alg.name}/")
    if alg.hopf is not None:
        rep.extend(verify_hopf_axioms(alg, d), prefix=f"{alg.name}/")
    return rep


def cmd_verify(args) -> int:
    rep = Report()
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            ws = parse_workspace(fh.read(), filename=args.input)
        d = args.max_degree or 4
        for alg in ws.algebras.values():
            rep.extend(_verify_algebra(alg, d))
        for name, delta in ws.coactions.items():
            rep.extend(verify_coaction(delta, d), prefix=f"{name}/")
        for name, m in ws.morphisms.items():
            rep.extend(m.verify(), prefix=f"{name}/")
        for name, ell in ws.connections.items():
            rep.extend(check_strong_connection(ell, ell.coaction), prefix=f"{name}/")
    else:
        name, n = _parse_preset(args.preset)
        if name == "suq2":
            rep.extend(_verify_algebra(presets.suq2(), args.max_degree or 4))
        elif name == "u1":
            rep.extend(_verify_algebra(presets.u1(), args.max_degree or 6))
        elif name == "podles-line":
            d = args.max_degree or 4
            rep.extend(_verify_algebra(presets.suq2(), d))
            rep.extend(_verify_algebra(presets.u1(), max(d, 6)))
            delta = presets.fibration_coaction()
            rep.extend(verify_coaction(delta, d), prefix="fibration/")
            ell = presets.u1_power_connection(n)
            rep.extend(check_strong_connection(ell, delta), prefix=f"line-{n}/")
        else:  # trivial-base
            d = args.max_degree or 4
            rep.extend(_verify_algebra(presets.suq2(), d))
            delta = presets.regular_suq2_coaction()
            rep.extend(verify_coaction(delta, d), prefix="regular/")
            ell = presets.trivial_connection_suq2()
            rep.extend(check_strong_connection(ell, delta), prefix="trivial-connection/")
    _emit(rep)
    if args.output:
        _write_artifact(args.output, {"command": "verify", "report": rep.to_dict()})
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# projector

def _build_projector(args):
    name, n = _parse_preset(args.preset)
    if name == "podles-line":
        delta = presets.fibration_coaction()
        ell = presets.u1_power_connection(n)
        corep = presets.u1_corep(n)
    elif name == "trivial-base":
        delta = presets.regular_suq2_coaction()
        ell = presets.trivial_connection_suq2()
        if args.corep == "u":
            corep = presets.fundamental_corep()
        elif args.corep == "u-dual":
            corep = contragredient(presets.fundamental_corep())
        elif args.corep == "trivial":
            corep = presets.trivial_corep(presets.suq2())
        else:
            raise InputError(f"unknown corep {args.corep!r} (u, u-dual, trivial)")
    else:
        raise InputError("projector supports presets podles-line N and trivial-base")
    phi = _functional(delta.A, args.functional)
    return projector(ell, corep, phi, delta)


def cmd_projector(args) -> int:
    q0 = _parse_q(args.q)
    E = _build_projector(args)
    rep = Report()
    rep.extend(E.report)
    _emit(rep)
    tr = E.trace()
    print(f"TRACE {tr}")
    a_mu = [str(a) for a in E.a_mu]
    print("BASIS " + " | ".join(a_mu))
    matrix = _matrix_strings(E.entries)
    print("MATRIX " + json.dumps(matrix))
    payload = {
        "command": "projector",
        "preset": args.preset,
        "report": rep.to_dict(),
        "a_mu": a_mu,
        "labels": E.labels,
        "matrix": matrix,
        "trace": str(tr),
        "q": "symbolic",
    }
    if q0 is not None:
        payload["q"] = str(q0)
        payload["matrix_at_q"] = _matrix_strings(E.entries, q0)
        payload["trace_at_q"] = _specialize_poly(tr, q0)
        print("MATRIX_AT_Q " + json.dumps(payload["matrix_at_q"]))
        print(f"RANK {trace_rank(E, q0)}")
    if args.output:
        _write_artifact(args.output, payload)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# pullback

def _resolve_pullback_inputs(args):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            ws = parse_workspace(fh.read(), filename=args.input)
        f = ws.morphisms[args.morphism] if args.morphism else ws.only(
            ws.morphisms, "morphism")
        ell = ws.connections[args.connection] if args.connection else ws.only(
            ws.connections, "connection")
        corep = ws.coreps[args.corep_name] if args.corep_name else ws.only(
            ws.coreps, "corepresentation")
        delta = ell.coaction
        candidates = [c for c in ws.coactions.values()
                      if c.A is f.target and c.H is delta.H]
        if len(candidates) != 1:
            raise InputError("need exactly one coaction on the morphism target")
        delta2 = candidates[0]
        f.verify()
        return f, ell, corep, delta, delta2
    name, n = _parse_preset(args.preset)
    if name != "podles-line":
        raise InputError("pullback supports --preset podles-line N or --input FILE")
    f = presets.collapse_morphism()
    sweep = args.max_degree or 3
    ell = presets.fibration_connection(max(abs(n), sweep))
    corep = presets.u1_corep(n)
    delta = presets.fibration_coaction()
    delta2 = presets.regular_u1_coaction()
    return f, ell, corep, delta, delta2


def cmd_pullback(args) -> int:
    q0 = _parse_q(args.q)
    f, ell, corep, delta, delta2 = _resolve_pullback_inputs(args)
    phi2 = _functional(delta2.A, args.functional)
    sweep = args.max_degree or 3
    rep, artifacts = verify_pullback_theorem(f, ell, corep, phi2, delta, delta2,
                                             sweep_degree=sweep)
    _emit(rep)
    payload = {"command": "pullback", "report": rep.to_dict(), "q": "symbolic"}
    if artifacts:
        cert = artifacts["certificate"]
        payload["e_prime"] = _matrix_strings(cert.e_prime)
        payload["d"] = _matrix_strings(cert.d_block)
        payload["kept"] = cert.kept
        payload["E"] = _matrix_strings(artifacts["E"].entries)
        payload["E_prime"] = _matrix_strings(artifacts["E_prime"].entries)
        print("E_PRIME " + json.dumps(payload["e_prime"]))
        print("D " + json.dumps(payload["d"]))
        if q0 is not None:
            payload["q"] = str(q0)
            payload["E_at_q"] = _matrix_strings(artifacts["E"].entries, q0)
    if args.output:
        _write_artifact(args.output, payload)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# report rendering

def cmd_report(args) -> int:
    if not args.input:
        raise InputError("report needs --input ARTIFACT.json")
    try:
        with open(args.input, encoding="utf-8") as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no artifact at {args.input}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"artifact is not valid JSON: {exc}") from None
    if "report" not in payload:
        raise InputError("artifact carries no report")
    print(f"artifact: {payload.get('command', 'unknown')}")
    ok = True
    for check in payload["report"]["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        ok = ok and check["passed"]
        line = f"  {status}  {check['name']}"
        if check.get("tag"):
            line += f"  [{check['tag']}]"
        if check.get("detail"):
            line += f"  -- {check['detail']}"
        print(line)
    for key in ("matrix", "matrix_at_q", "e_prime", "d", "E", "E_prime", "E_at_q"):
        if key in payload:
            print(f"{key}:")
            for row in payload[key]:
                print("  [" + ", ".join(row) + "]")
    if "trace" in payload:
        print(f"trace: {payload['trace']}")
    if ok:
        print("all checks pass")
    else:
        first = next(c for c in payload["report"]["checks"] if not c["passed"])
        tag = f" [{first['tag']}]" if first.get("tag") else ""
        print(f"FAILURES present; first failing identity: {first['name']}{tag}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgalois",
                                 description="symbolic workbench for quantum "
                                             "principal bundles over Q(q)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--preset", nargs="+", metavar="NAME",
                       help="suq2 | u1 | podles-line N | trivial-base")
        p.add_argument("--input", metavar="PATH", help="presentation file")
        p.add_argument("--max-degree", type=int, default=None, metavar="N")
        p.add_argument("--q", default="symbolic", metavar="SPEC",
                       help="symbolic or a rational value like 1 or 3/7")
        p.add_argument("--functional", default="constant-term")
        p.add_argument("--output", metavar="PATH", help="write a JSON artifact")

    pv = sub.add_parser("verify", help="run verification suites")
    common(pv)
    pp = sub.add_parser("projector", help="compute an associated-bundle idempotent")
    common(pp)
    pp.add_argument("--corep", default="u", help="u | u-dual | trivial")
    pb = sub.add_parser("pullback", help="verify the pullback mechanism end to end")
    common(pb)
    pb.add_argument("--morphism", default=None)
    pb.add_argument("--connection", default=None)
    pb.add_argument("--corep-name", default=None)
    pr = sub.add_parser("report", help="render a stored artifact")
    pr.add_argument("--input", metavar="PATH")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            if not args.input and not args.preset:
                raise InputError("verify needs --preset or --input")
            return cmd_verify(args)
        if args.command == "projector":
            if not args.preset:
                raise InputError("projector needs --preset")
            return cmd_projector(args)
        if args.command == "pullback":
            if not args.preset and not args.input:
                args.preset = ["podles-line", "1"]
            return cmd_pullback(args)
        if args.command == "report":
            return cmd_report(args)
        raise InputError(f"unknown command {args.command!r}")
    except ProjectorError as exc:
        if exc.report is not None:
            _emit(exc.report)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, PresentationFileError, PresentationError, CoverageError,
            PoleError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
