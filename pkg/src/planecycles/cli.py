"""Command-line front end.

Exit codes: 0 success, 1 bad arguments or unreadable/unparseable input,
2 validation or search failure, 3 construction failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .errors import ConstructionFailed, ParseError, PlaneError
from .gf import make_field
from .levi import LeviGraph
from .plane import Plane, build_affine_classical, build_projective_classical
from .planefile import load_plane, save_plane
from .verify import (
    DEFAULT_BUDGET,
    brute_force_cycle,
    certify_plane,
    check_axioms,
    verify_embedding,
)
from .affine import embed_affine_cycle
from .projective import embed_projective_cycle

SELFTEST_ORDERS = (2, 3, 4, 5, 7, 8, 9)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad argv; we reserve 2 for validation failures.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_source_args(sub, generated_only: bool = False):
    if not generated_only:
        sub.add_argument("--plane", metavar="FILE", help="read the plane from a file")
    sub.add_argument("--kind", choices=("affine", "projective"),
                     help="generate a classical plane of this kind")
    sub.add_argument("--p", type=int, metavar="P", help="field characteristic (prime)")
    sub.add_argument("--k", type=int, default=1, metavar="K",
                     help="field extension degree (default 1)")


def _load_source(parser: _Parser, args) -> Plane:
    """Resolve the plane named by --plane XOR (--kind, --p)."""
    from_file = getattr(args, "plane", None) is not None
    from_gen = args.kind is not None or args.p is not None
    if from_file and from_gen:
        parser.error("--plane conflicts with --kind/--p/--k")
    if from_file:
        return load_plane(args.plane)
    if args.kind is None or args.p is None:
        parser.error("need either --plane FILE or both --kind and --p")
    f = make_field(args.p, args.k)
    build = build_affine_classical if args.kind == "affine" else build_projective_classical
    return build(f)


def _write_out(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _parse_range(parser: _Parser, text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        parser.error(f"bad --range {text!r}: expected A..B")
    try:
        return int(lo), int(hi)
    except ValueError:
        parser.error(f"bad --range {text!r}: expected integers")
    raise AssertionError  # parser.error never returns


def _embed_once(plane: Plane, k: int, rng):
    if plane.kind == "affine":
        return embed_affine_cycle(plane, k, rng=rng)
    return embed_projective_cycle(plane, k, rng=rng)


def _cycle_record(plane: Plane, cycle, verified: bool) -> str:
    rec = {
        "k": cycle.k,
        "cycle_points": list(cycle.points),
        "cycle_lines": list(cycle.lines),
        "plane_digest": plane.digest(),
        "branch": cycle.branch,
        "verified": verified,
    }
    return json.dumps(rec)


def _cmd_gen(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)
    _write_out(plane.canonical_text(), args.out)
    return 0


def _cmd_validate(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)  # loader re-checks axioms for files
    try:
        check_axioms(plane)
    except PlaneError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 2
    cert = certify_plane(plane)
    if args.format == "json":
        _write_out(cert.to_json(), args.out)
    else:
        levi = cert.levi
        lines = [
            f"kind {cert.kind} order {cert.order}",
            f"points {cert.n_points} lines {cert.n_lines}",
            f"digest {cert.digest}",
            f"levi degree {levi.degree_min}..{levi.degree_max}"
            f" girth {levi.girth} diameter {levi.diameter}",
            f"quadrilateral {' '.join(str(p) for p in cert.quadrilateral)}",
            "valid",
        ]
        _write_out("\n".join(lines), args.out)
    return 0


def _cmd_embed(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)
    rng = random.Random(args.seed) if args.seed is not None else None
    cycle = _embed_once(plane, args.cycle_k, rng)
    report = verify_embedding(plane, cycle)
    if args.format == "text":
        out = (f"k={cycle.k} branch={cycle.branch}"
               f" ok={'yes' if report.ok else 'no'}\n"
               f"points {' '.join(str(p) for p in cycle.points)}\n"
               f"lines {' '.join(str(l) for l in cycle.lines)}")
        _write_out(out, args.out)
    else:
        _write_out(_cycle_record(plane, cycle, report.ok), args.out)
    return 0 if report.ok else 2


def _admissible_span(plane: Plane) -> tuple[int, int]:
    q = plane.order
    return 3, q * q if plane.kind == "affine" else q * q + q + 1


def _cmd_sweep(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)
    lo, hi = _admissible_span(plane)
    if args.range is not None:
        lo, hi = _parse_range(parser, args.range)
    rng = random.Random(args.seed) if args.seed is not None else None
    rows = []
    t0 = time.perf_counter()
    for k in range(lo, hi + 1):
        cycle = _embed_once(plane, k, rng)
        report = verify_embedding(plane, cycle)
        if not report.ok:
            print(f"k={k}: verification failed: {report.failures()}",
                  file=sys.stderr)
            return 2
        rows.append(f"k={k} branch={cycle.branch} ok")
    dt = time.perf_counter() - t0
    rows.append(f"swept {hi - lo + 1} lengths on {plane.digest()}")
    _write_out("\n".join(rows), args.out)
    print(f"sweep took {dt:.3f}s", file=sys.stderr)
    return 0


def _cmd_oracle(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)
    result = brute_force_cycle(plane, args.cycle_k, budget=args.budget)
    if result.cycle is None:
        reason = "exhausted" if result.exhausted else "budget spent"
        print(f"no {args.cycle_k}-cycle found ({reason},"
              f" {result.nodes} nodes)", file=sys.stderr)
        return 2
    report = verify_embedding(plane, result.cycle)
    _write_out(_cycle_record(plane, result.cycle, report.ok), args.out)
    return 0 if report.ok else 2


def _cmd_export_dot(parser: _Parser, args) -> int:
    plane = _load_source(parser, args)
    _write_out(LeviGraph(plane).export_dot(), args.out)
    return 0


def _cmd_selftest(parser: _Parser, args) -> int:
    failures = 0
    for q in SELFTEST_ORDERS:
        p, k = _prime_power(q)
        f = make_field(p, k)
        for kind, build in (("affine", build_affine_classical),
                            ("projective", build_projective_classical)):
            plane = build(f)
            check_axioms(plane)
            lo, hi = _admissible_span(plane)
            bad = 0
            t0 = time.perf_counter()
            for kk in range(lo, hi + 1):
                try:
                    cycle = _embed_once(plane, kk, None)
                except ConstructionFailed:
                    bad += 1
                    continue
                if not verify_embedding(plane, cycle).ok:
                    bad += 1
            dt = time.perf_counter() - t0
            tag = "ok" if bad == 0 else f"FAIL ({bad} lengths)"
            print(f"{kind} order {q}: k={lo}..{hi} {tag}")
            print(f"  took {dt:.3f}s", file=sys.stderr)
            failures += bad
    print("selftest passed" if failures == 0 else "selftest FAILED")
    return 0 if failures == 0 else 2


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q > 1 and q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise ValueError("not a prime power")
            return p, k
    raise ValueError("not a prime power")


def build_parser() -> _Parser:
    parser = _Parser(prog="planecycles",
                     description="finite planes and the cycles inside them")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("gen", help="generate a classical plane file")
    _add_source_args(sub, generated_only=True)
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_gen)

    sub = subs.add_parser("validate", help="check plane axioms and certify")
    _add_source_args(sub)
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_validate)

    sub = subs.add_parser("embed", help="construct one cycle of a given length")
    _add_source_args(sub)
    sub.add_argument("--cycle-k", type=int, required=True, metavar="K")
    sub.add_argument("--seed", type=int, metavar="N")
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_embed)

    sub = subs.add_parser("sweep", help="construct every admissible length")
    _add_source_args(sub)
    sub.add_argument("--range", metavar="A..B",
                     help="restrict to lengths A..B inclusive")
    sub.add_argument("--seed", type=int, metavar="N")
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_sweep)

    sub = subs.add_parser("oracle", help="brute-force search for a cycle")
    _add_source_args(sub)
    sub.add_argument("--cycle-k", type=int, required=True, metavar="K")
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N")
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_oracle)

    sub = subs.add_parser("export-dot", help="write the incidence graph as DOT")
    _add_source_args(sub)
    sub.add_argument("--out", metavar="FILE")
    sub.set_defaults(func=_cmd_export_dot)

    sub = subs.add_parser("selftest", help="sweep built-in small orders")
    sub.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    except ConstructionFailed as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 3
    except PlaneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
