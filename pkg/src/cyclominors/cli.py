"""Command-line front end.

Exit status: 0 pass (or the expected verdict), 1 a checked property failed
or the theorem was contradicted, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from cyclominors import spectral, uncertainty
from cyclominors.cyclotomic import cyclotomic_polynomial, format_int_poly
from cyclominors.errors import TheoremViolation, UsageError
from cyclominors.polyfile import load_poly, poly_to_document
from cyclominors.uncertainty import is_prime

SCHEMA_VERSION = 1
THREADS_ENV = "CYCLOMINORS_THREADS"

log = logging.getLogger("cyclominors")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")

    p = _Parser(prog="cyclominors", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker cap for enumeration (default: ${THREADS_ENV} or 1)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    phi = sub.add_parser("phi", parents=[common], help="print the n-th cyclotomic polynomial")
    phi.add_argument("--n", type=int, required=True)

    minors = sub.add_parser("minors", help="minors of the DFT matrix")
    msub = minors.add_subparsers(dest="action", required=True, parser_class=_Parser)
    verify = msub.add_parser("verify", parents=[common], help="check that no minor vanishes")
    verify.add_argument("--n", type=int, required=True)
    mode = verify.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="COUNT")
    verify.add_argument("--seed", type=int)
    find = msub.add_parser("find-zero", parents=[common], help="list vanishing minors")
    find.add_argument("--n", type=int, required=True)
    find.add_argument("--max", type=int, default=1)

    circ = sub.add_parser("circulant", help="circulant matrix of a polynomial")
    csub = circ.add_subparsers(dest="action", required=True, parser_class=_Parser)
    crank = csub.add_parser("rank", parents=[common], help="rank versus root count")
    crank.add_argument("--poly", required=True)

    check = sub.add_parser("check", parents=[common], help="sparsity bound for one polynomial")
    check.add_argument("--poly", required=True)

    ext = sub.add_parser("extremal", help="extremal polynomials")
    esub = ext.add_subparsers(dest="action", required=True, parser_class=_Parser)
    enum = esub.add_parser("enumerate", parents=[common], help="list D_{n,r,l} for all r | n")
    enum.add_argument("--n", type=int, required=True)

    thm = sub.add_parser("theorem", help="exhaustive finite verification")
    tsub = thm.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tver = tsub.add_parser("verify", parents=[common])
    tver.add_argument("--n", type=int, required=True)
    return p


def _threads(args) -> int:
    if args.threads is not None:
        value = args.threads
    else:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise UsageError(f"thread cap must be >= 1, got {value}")
    return value


def _run_phi(args, threads):
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    coeffs = cyclotomic_polynomial(args.n)
    return {"n": args.n}, "pass", {"coefficients": list(coeffs), "text": format_int_poly(coeffs)}


def _run_minors_verify(args, threads):
    inputs = {"n": args.n}
    if args.exhaustive:
        inputs["mode"] = "exhaustive"
        report = spectral.verify_chebotarev(args.n, "exhaustive", threads=threads)
    else:
        if args.seed is None:
            raise UsageError("--sample requires an explicit --seed")
        inputs.update(mode="sampled", count=args.sample, seed=args.seed)
        report = spectral.verify_chebotarev(args.n, "sampled", count=args.sample, seed=args.seed)
    if report.passed:
        verdict = "pass"
    else:
        verdict = "violation" if is_prime(args.n) else "fail"
    return inputs, verdict, report.to_dict(), report.elapsed


def _run_minors_find(args, threads):
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    found = spectral.find_vanishing_minors(args.n, args.max)
    verdict = "violation" if found and is_prime(args.n) else "pass"
    return ({"n": args.n, "max": args.max}, verdict,
            {"count": len(found), "witnesses": [w.to_dict() for w in found]})


def _run_circulant_rank(args, threads):
    p = load_poly(args.poly)
    report = spectral.rank_lemma_check(p)
    return ({"poly": poly_to_document(p)}, "pass" if report.holds else "violation",
            {"n": p.modulus, **report.to_dict()})


def _run_check(args, threads):
    p = load_poly(args.poly)
    bound = uncertainty.check_bound(p)
    payload = {"bound": bound.to_dict(), "descriptor": None}
    verdict = "pass" if bound.holds else "violation"
    if bound.equality:
        try:
            payload["descriptor"] = uncertainty.classify_extremal(p).to_dict()
        except TheoremViolation as exc:
            payload["error"] = str(exc)
            verdict = "violation"
    return {"poly": poly_to_document(p)}, verdict, payload


def _run_extremal(args, threads):
    members = uncertainty.enumerate_extremal(args.n)
    return ({"n": args.n}, "pass",
            {"count": len(members),
             "members": [{"r": r, "l": l, **poly_to_document(p)} for r, l, p in members]})


def _run_theorem(args, threads):
    report = uncertainty.verify_theorem_exhaustive(args.n, threads=threads)
    return ({"n": args.n}, "pass" if report.passed else "violation", report.to_dict(),
            report.elapsed)


_COMMANDS = {
    ("phi", None): _run_phi,
    ("minors", "verify"): _run_minors_verify,
    ("minors", "find-zero"): _run_minors_find,
    ("circulant", "rank"): _run_circulant_rank,
    ("check", None): _run_check,
    ("extremal", "enumerate"): _run_extremal,
    ("theorem", "verify"): _run_theorem,
}


def flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    """Dotted key/value pairs; scalar lists stay whole."""
    if isinstance(obj, dict):
        out = []
        for key in sorted(obj):
            out += flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
        return out
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        out = []
        for i, x in enumerate(obj):
            out += flatten(x, f"{prefix}.{i}")
        return out
    return [(prefix, obj)]


def render_human(report: dict, elapsed: float | None) -> str:
    lines = [f"{key}: {json.dumps(value)}" for key, value in flatten(report)]
    if elapsed is not None:
        lines.append(f"elapsed_seconds: {elapsed:.3f}")
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple[int, str]:
    """Execute one command; returns (exit status, text written to stdout)."""
    try:
        args = _build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s", stream=sys.stderr)
        threads = _threads(args)
        handler = _COMMANDS[(args.command, getattr(args, "action", None))]
        t0 = time.perf_counter()
        result = handler(args, threads)
        elapsed = result[3] if len(result) > 3 else time.perf_counter() - t0
        inputs, verdict, payload = result[:3]
    except UsageError as exc:
        return 2, f"error: {exc}\n"
    except TheoremViolation as exc:
        inputs, verdict, payload, elapsed = {}, "violation", {"error": str(exc)}, None
    command = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    report = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs,
              "verdict": verdict, "payload": payload}
    if "seed" in inputs:
        report["seed"] = inputs["seed"]
    if args.json:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = render_human(report, elapsed)
    return (0 if verdict == "pass" else 1), text


def main(argv=None) -> int:
    status, text = run(argv)
    (sys.stderr if status == 2 else sys.stdout).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
