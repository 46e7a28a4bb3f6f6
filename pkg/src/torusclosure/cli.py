"""Command-line interface: exact reports on stdout, diagnostics on stderr.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation,
4 consistency failure in a corpus run.  The default search height is 3 and
can be overridden with --height or the TORUSCLOSURE_HEIGHT variable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import io as tcio
from . import structure
from .closure import closure
from .elliptic import cm_check, is_isogenous, tau_invariant
from .errors import ConsistencyError, InputError, InternalError

VERSION = "0.1.0"

DEFAULT_CORPUS = Path(__file__).parent / "corpus"


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _resolve_height(value):
    if value is not None:
        height = value
    else:
        raw = os.environ.get("TORUSCLOSURE_HEIGHT", "3")
        try:
            height = int(raw)
        except ValueError:
            raise InputError("bad_height",
                             f"TORUSCLOSURE_HEIGHT={raw!r} is not an integer") from None
    if height < 1:
        raise InputError("bad_height", "height must be at least 1")
    return height


# ---------------------------------------------------------------------------
# Result serialization (exact values only).

def closure_result_doc(res):
    return {
        "real_dim": res.real_dim,
        "is_complex": res.is_complex,
        "basis": [list(v) for v in res.subspace.vectors],
        "annihilator": [list(f) for f in res.codim_forms],
    }


def classification_doc(report):
    witness = None
    if report.witness is not None:
        form, wres = report.witness
        witness = {"form": list(form), "real_dim": wres.real_dim}
    return {
        "condition_ii": report.condition_ii,
        "end_dim": report.end_dim,
        "witness": witness,
        "oracle": report.oracle,
        "diagnostics": dict(report.diagnostics),
    }


def census_doc(res):
    return {
        "total": res.total,
        "complex_count": res.complex_count,
        "non_complex_examples": [{"form": list(f), "real_dim": d}
                                 for f, d in res.non_complex_examples],
    }


def cm_doc(verdict):
    return {
        "has_cm": verdict.has_cm,
        "quadratic": list(verdict.quadratic) if verdict.has_cm else None,
        "discriminant": verdict.discriminant,
    }


def isogeny_doc(verdict):
    return {
        "isogenous": verdict.isogenous,
        "witness": list(verdict.witness) if verdict.witness else None,
    }


# ---------------------------------------------------------------------------
# Commands.

def cmd_closure(args):
    spec = tcio.parse_torus_file(args.torus)
    doc, _ = tcio.load_json(args.subgroup)
    basis = tcio.parse_subgroup_doc(spec.field, spec.torus.n, doc,
                                    where=str(args.subgroup))
    res = closure(spec.torus, spec.torus.subgroup(basis))
    return closure_result_doc(res), {args.torus: _digest(args.torus),
                                     args.subgroup: _digest(args.subgroup)}


def cmd_classify(args):
    spec = tcio.parse_torus_file(args.torus)
    report = structure.classify(spec.torus, spec.curves, _resolve_height(args.height))
    return classification_doc(report), {args.torus: _digest(args.torus)}


def cmd_census(args):
    spec = tcio.parse_torus_file(args.torus)
    res = structure.census(spec.torus, _resolve_height(args.height))
    return census_doc(res), {args.torus: _digest(args.torus)}


def cmd_witness(args):
    spec = tcio.parse_torus_file(args.torus)
    found = structure.witness_search(spec.torus, _resolve_height(args.height))
    if found is None:
        result = {"witness": None}
    else:
        form, res = found
        result = {"witness": {"form": list(form), "closure": closure_result_doc(res)}}
    return result, {args.torus: _digest(args.torus)}


def cmd_endo(args):
    spec = tcio.parse_torus_file(args.torus)
    algebra = structure.endomorphism_algebra(spec.torus)
    return {
        "dim": algebra.dim,
        "basis": [[[tcio.format_rational(e) for e in row] for row in mat]
                  for mat in algebra.basis],
    }, {args.torus: _digest(args.torus)}


def cmd_quotient(args):
    spec = tcio.parse_torus_file(args.torus)
    doc, _ = tcio.load_json(args.subtorus)
    sub = tcio.parse_subtorus_doc(2 * spec.torus.n, doc, where=str(args.subtorus))
    qr = structure.quotient_torus(spec.torus, sub)
    quotient_spec = tcio.TorusSpecFile(None, spec.field, qr.torus, None)
    return {
        "torus": tcio.torus_to_doc(quotient_spec),
        "lattice_map": [list(r) for r in qr.lattice_map],
    }, {args.torus: _digest(args.torus), args.subtorus: _digest(args.subtorus)}


def cmd_ec_cm(args):
    _, curve = tcio.parse_curve_doc(tcio.load_json(args.curve)[0], where=str(args.curve))
    verdict = cm_check(tau_invariant(curve))
    return cm_doc(verdict), {args.curve: _digest(args.curve)}


def cmd_ec_isogeny(args):
    field_a, curve_a = tcio.parse_curve_doc(tcio.load_json(args.a)[0], where=str(args.a))
    field_b, curve_b = tcio.parse_curve_doc(tcio.load_json(args.b)[0], where=str(args.b))
    if field_a != field_b:
        raise InputError("field_mismatch", "the two curves use different fields")
    verdict = is_isogenous(tau_invariant(curve_a), tau_invariant(curve_b))
    return isogeny_doc(verdict), {args.a: _digest(args.a), args.b: _digest(args.b)}


def corpus_consistency(directory, height):
    """Classify every bundled torus and check all signals against each other
    and against the manifest.  Returns (report, failures)."""
    directory = Path(directory)
    manifest_path = directory / "manifest.json"
    doc, _ = tcio.load_json(manifest_path)
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise InputError("invalid_schema", f"{manifest_path}: empty or missing members")
    results = []
    failures = []
    for member in members:
        fname = member.get("file")
        path = directory / fname
        spec = tcio.parse_torus_file(path)
        report = structure.classify(spec.torus, spec.curves, height)
        problems = []
        if not report.consistent:
            problems.append("signals disagree")
        if report.condition_ii:
            if report.witness is not None:
                problems.append("witness found despite condition (ii)")
            cres = structure.census(spec.torus, height)
            if cres.complex_count != cres.total:
                problems.append("census found a non-complex closure despite condition (ii)")
        else:
            if report.witness is None:
                problems.append(f"undetermined: no witness up to height {height}")
        if report.oracle is not None and report.oracle != report.condition_ii:
            problems.append("product-form oracle disagrees")
        expected = member.get("condition_ii")
        if expected is not None and expected != report.condition_ii:
            problems.append(f"manifest expects condition_ii={expected}")
        expected_dim = member.get("end_dim")
        if expected_dim is not None and expected_dim != report.end_dim:
            problems.append(f"manifest expects end_dim={expected_dim}")
        results.append({
            "file": fname,
            "label": spec.label,
            "condition_ii": report.condition_ii,
            "end_dim": report.end_dim,
            "witness": None if report.witness is None else list(report.witness[0]),
            "oracle": report.oracle,
            "status": "ok" if not problems else "; ".join(problems),
        })
        if problems:
            failures.append(f"{fname}: {'; '.join(problems)}")
    return {"pass": not failures, "height": height, "members": results}, failures


def cmd_corpus_run(args):
    directory = Path(args.dir) if args.dir else DEFAULT_CORPUS
    height = _resolve_height(args.height)
    report, failures = corpus_consistency(directory, height)
    digests = {str(directory / m["file"]): _digest(directory / m["file"])
               for m in report["members"]}
    if failures:
        raise _CorpusFailure(report, digests, failures)
    return report, digests


class _CorpusFailure(Exception):
    def __init__(self, report, digests, failures):
        super().__init__("corpus consistency failure")
        self.report = report
        self.digests = digests
        self.failures = failures


# ---------------------------------------------------------------------------
# Entry point.

def build_parser():
    parser = argparse.ArgumentParser(
        prog="torusclosure",
        description="Exact closure computations for complex tori with "
                    "algebraic period lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="closure of a complex subgroup")
    p.add_argument("--torus", required=True)
    p.add_argument("--subgroup", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("classify", help="decide the closure property")
    p.add_argument("--torus", required=True)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="hyperplane-core closure census")
    p.add_argument("--torus", required=True)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("witness", help="search for a non-complex closure")
    p.add_argument("--torus", required=True)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("endo", help="rational endomorphism algebra")
    p.add_argument("--torus", required=True)
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("quotient", help="quotient by a complex subtorus")
    p.add_argument("--torus", required=True)
    p.add_argument("--subtorus", required=True)
    p.set_defaults(func=cmd_quotient)

    ec = sub.add_parser("ec", help="elliptic curve decisions")
    ecsub = ec.add_subparsers(dest="ec_command", required=True)
    p = ecsub.add_parser("cm", help="complex multiplication check")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_ec_cm)
    p = ecsub.add_parser("isogeny", help="isogeny existence")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_ec_isogeny)

    corpus = sub.add_parser("corpus", help="bundled corpus operations")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)
    p = csub.add_parser("run", help="theorem-consistency harness")
    p.add_argument("--dir", default=None)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=cmd_corpus_run)

    return parser


def _emit(doc, stream):
    stream.write(json.dumps(doc, indent=2) + "\n")


def run_command(argv, stdout=None, stderr=None):
    """Run one CLI invocation; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        result, digests = args.func(args)
    except _CorpusFailure as exc:
        doc = {
            "command": list(argv),
            "version": VERSION,
            "input_digest": exc.digests,
            "result": exc.report,
            "timing_ms": round(1000 * (time.perf_counter() - started), 3),
        }
        _emit(doc, stdout)
        _emit({"error": {"code": "consistency_failure",
                         "message": "; ".join(exc.failures)},
               "command": list(argv)}, stderr)
        return ConsistencyError.exit_code
    except (InputError, InternalError, ConsistencyError) as exc:
        _emit({"error": {"code": exc.code, "message": exc.message},
               "command": list(argv)}, stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - surfaced as an invariant violation
        _emit({"error": {"code": "internal_invariant", "message": repr(exc)},
               "command": list(argv)}, stderr)
        return InternalError.exit_code
    doc = {
        "command": list(argv),
        "version": VERSION,
        "input_digest": digests,
        "result": result,
        "timing_ms": round(1000 * (time.perf_counter() - started), 3),
    }
    _emit(doc, stdout)
    return 0


def main():
    raise SystemExit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
