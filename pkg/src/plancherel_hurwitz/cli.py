"""Command-line front end: ``phw hnum | sample | profile | maps | verify``.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 resource budget.
Every artifact carries a run manifest; wall-clock timing goes to stderr so
that reruns with the same seed are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from contextlib import contextmanager
from typing import Sequence

import numpy as np

from . import __version__
from .hurwitz import (
    BRUTEFORCE_MAX_N,
    BudgetExceeded,
    asymptotic_log_estimate,
    hurwitz_number,
    hurwitz_number_bruteforce,
)
from .limit_shape import bulk_profile, omega, profile_mesh
from .maps import (
    ConditionedWalkSampler,
    SamplingExhausted,
    TranspositionTuple,
    component_report,
    descent_corner_purity,
    is_pure,
    map_from_tuple,
    map_statistics,
    random_pure_tuple,
    random_tuple,
)
from .partitions import Partition, content_sum, log_dim_syt, rescaled_profile
from .samplers import (
    ChainConfig,
    MeasureSpec,
    generator_info,
    make_rng,
    mh_sample,
    plancherel_sample,
)
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# expected rejection tries above which `maps sample --pure` switches sampler
_REJECTION_LIMIT = 1e4


class UsageError(Exception):
    pass


def manifest(args: argparse.Namespace, seed: int | None = None) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}
    out = {"command": args.command, "flags": flags, "version": __version__}
    if seed is not None:
        out["seed"] = seed
        out["generator"] = generator_info()
    return out


@contextmanager
def _output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def cmd_hnum(args) -> int:
    n, ell = args.n, args.ell
    if n < 1 or ell < 0:
        raise UsageError("need n >= 1 and ell >= 0")
    if args.method == "asymptotic":
        log_value = asymptotic_log_estimate(n, ell)
        value = repr(math.exp(log_value)) if log_value < 709 else "inf"
    else:
        if args.method == "bruteforce":
            if n > BRUTEFORCE_MAX_N:
                raise BudgetExceeded(f"brute force refuses n > {BRUTEFORCE_MAX_N}")
            h = hurwitz_number_bruteforce(n, ell)
        else:
            h = hurwitz_number(n, ell, workers=args.threads)
        value = str(h)
        log_value = math.log(h) if h else None
    print(_dump({
        "n": n,
        "ell": ell,
        "method": args.method,
        "value": value,
        "log_value": log_value,
        "manifest": manifest(args),
    }))
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is mandatory for sampling")
    if args.n < 1:
        raise UsageError("need n >= 1")
    if args.kind == "plancherel":
        if args.count is None or args.count < 0:
            raise UsageError("plancherel sampling needs --count >= 0")
        rng = make_rng(args.seed)
        logfact = math.lgamma(args.n + 1)

        def records():
            for i in range(args.count):
                lam = plancherel_sample(args.n, rng, args.method)
                yield {"step": i, "partition": list(lam), "C": content_sum(lam), "logw": 2 * log_dim_syt(lam) - logfact}
    else:
        missing = [f for f in ("ell", "steps") if getattr(args, f) is None]
        if missing:
            raise UsageError("plancherel-hurwitz sampling needs " + ", ".join("--" + m for m in missing))
        try:
            spec = MeasureSpec(args.n, args.ell, args.variant)
            cfg = ChainConfig(args.steps, args.burnin, args.thin, args.seed,
                              Partition.parse(args.initial) if args.initial else None)
            stream = mh_sample(spec, cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

        def records():
            for s in stream:
                yield s.to_json()
    with _output(args.output) as out:
        out.write(_dump({"manifest": manifest(args, args.seed)}) + "\n")
        for rec in records():
            out.write(_dump(rec) + "\n")
    return EXIT_OK


def _read_partitions(path: str) -> list[Partition]:
    lams = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path}:{lineno}: malformed JSON") from exc
            if "manifest" in rec and "partition" not in rec:
                continue
            try:
                lams.append(Partition(rec["partition"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"{path}:{lineno}: malformed partition record") from exc
    return lams


def _profile_values(lam: Partition, xs: np.ndarray, exclude_first: bool) -> np.ndarray:
    prof = bulk_profile(lam) if exclude_first else rescaled_profile(lam)
    return prof(xs)


def _write_profile_csv(fh, xs, psi, header_comment: dict) -> None:
    fh.write("# " + _dump(header_comment) + "\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "psi", "omega"])
    if psi is None:
        return
    om = omega(xs)
    for x, p, o in zip(xs, psi, om):
        w.writerow([f"{x:.6f}", f"{p:.9f}", f"{o:.9f}"])


def cmd_profile(args) -> int:
    lams = _read_partitions(args.input)
    xs = profile_mesh(args.x_max, args.points)
    curves = [_profile_values(lam, xs, args.exclude_first_part) for lam in lams]
    mean = np.mean(curves, axis=0) if curves else None
    meta = manifest(args)
    meta["samples"] = len(lams)
    with _output(args.output) as out:
        _write_profile_csv(out, xs, mean, meta)
    if args.per_sample:
        for k, psi in enumerate(curves):
            with open(f"{args.per_sample}_{k:05d}.csv", "w", newline="") as fh:
                _write_profile_csv(fh, xs, psi, {**meta, "sample_index": k})
    return EXIT_OK


def cmd_maps(args) -> int:
    if args.kind == "analyze":
        if not args.tuple:
            raise UsageError("maps analyze needs --tuple")
        try:
            t = TranspositionTuple.parse(args.tuple, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        m = map_from_tuple(t)
        doc = {
            "tuple": t.to_json(),
            "n": t.n,
            "ell": t.ell,
            "pure": is_pure(t),
            "descent_purity": descent_corner_purity(m),
            "genera": component_report(m).genera(),
            "report": component_report(m).to_json(),
            "manifest": manifest(args),
        }
        print(_dump(doc))
        return EXIT_OK
    if args.seed is None:
        raise UsageError("--seed is mandatory for sampling")
    if args.n is None or args.ell is None:
        raise UsageError("maps sample needs --n and --ell")
    rng = make_rng(args.seed)
    extra = {}
    if args.pure:
        if args.ell % 2:
            raise UsageError("pure maps need an even --ell")
        sampler = args.sampler
        if sampler == "auto":
            total = math.comb(args.n, 2) ** args.ell
            sampler = "rejection" if total <= _REJECTION_LIMIT * hurwitz_number(args.n, args.ell) else "conditioned"
        extra["sampler"] = sampler
        if sampler == "rejection":
            tuples, tries = [], 0
            try:
                for _ in range(args.count):
                    t, k = random_pure_tuple(args.n, args.ell, rng, args.max_tries)
                    tuples.append(t)
                    tries += k
            except SamplingExhausted as exc:
                print(_dump({"error": "exhausted", "detail": str(exc), "manifest": manifest(args, args.seed)}))
                return EXIT_BUDGET
            extra["mean_tries"] = tries / args.count
        else:
            walk = ConditionedWalkSampler(args.n, args.ell)
            tuples = [walk.sample(rng) for _ in range(args.count)]
        ensemble = "pure"
    else:
        tuples = [random_tuple(args.n, args.ell, rng) for _ in range(args.count)]
        ensemble = "all"
    stats = map_statistics(tuples, ensemble).to_json()
    print(_dump({**stats, **extra, "manifest": manifest(args, args.seed)}))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.suite}/{r.name}: {r.detail}")
    ok = all(r.passed for r in results)
    report = {"suite": args.suite, "passed": ok, "checks": [r.to_json() for r in results], "manifest": manifest(args, args.seed)}
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(_dump(report) + "\n")
    print(_dump(report))
    timings = {f"{r.suite}/{r.name}": round(r.seconds, 3) for r in results}
    print(_dump({"timing_s": timings}), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="phw", description="Plancherel-Hurwitz measure toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hnum", help="unconnected Hurwitz number H(n, ell)")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--ell", type=int, required=True)
    h.add_argument("--method", choices=["frobenius", "bruteforce", "asymptotic"], default="frobenius")
    h.add_argument("--threads", type=int, default=1, help="worker processes for the Frobenius sum")
    h.set_defaults(func=cmd_hnum)

    s = sub.add_parser("sample", help="sample partitions as JSON Lines")
    s.add_argument("kind", choices=["plancherel", "plancherel-hurwitz"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--count", type=int, help="number of Plancherel samples")
    s.add_argument("--method", choices=["rsk", "growth"], default="rsk")
    s.add_argument("--ell", type=int)
    s.add_argument("--steps", type=int)
    s.add_argument("--burnin", type=int, default=0)
    s.add_argument("--thin", type=int, default=1)
    s.add_argument("--variant", choices=["positive-half", "full"], default="positive-half")
    s.add_argument("--initial", help='starting partition, e.g. "[5,3,1]"')
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_sample)

    pr = sub.add_parser("profile", help="mean rescaled profile of sampled partitions as CSV")
    pr.add_argument("--input", required=True)
    pr.add_argument("--exclude-first-part", action="store_true")
    pr.add_argument("--x-max", type=float, default=3.0)
    pr.add_argument("--points", type=int, default=601)
    pr.add_argument("--per-sample", metavar="PREFIX", help="also write PREFIX_<k>.csv per sample")
    pr.add_argument("--output", "-o")
    pr.set_defaults(func=cmd_profile)

    m = sub.add_parser("maps", help="Hurwitz map analysis and sampling")
    m.add_argument("kind", choices=["analyze", "sample"])
    m.add_argument("--tuple", help='transpositions, e.g. "1 2;2 3;3 4"')
    m.add_argument("--n", type=int)
    m.add_argument("--ell", type=int)
    m.add_argument("--pure", action="store_true")
    m.add_argument("--sampler", choices=["auto", "rejection", "conditioned"], default="auto")
    m.add_argument("--max-tries", type=int, default=1_000_000)
    m.add_argument("--count", type=int, default=100)
    m.add_argument("--seed", type=int)
    m.set_defaults(func=cmd_maps)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", choices=["small", "mcmc", "maps", "all"], default="small")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", help="also write the JSON report to this file")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"phw: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"phw: budget: {exc}", file=sys.stderr)
        code = EXIT_BUDGET
    except OSError as exc:
        print(f"phw: I/O error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    if args.command != "verify":
        print(_dump({"elapsed_s": round(time.perf_counter() - start, 3)}), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
