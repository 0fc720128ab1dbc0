"""Command-line entry points: validate, haar, compare, gen, check-lemmas."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .core import Function, Measure, validate
from .approx import ApproximantConfig, canonical_chain, haar_net
from .checks import run_all_suites
from .fileio import parse_hypergroup, serialize_hypergroup, write_trace_csv
from .oracles import FamilySpec, build_family, invariance_residual, jewett_haar, solve_invariance


def _load(path: str):
    return parse_hypergroup(Path(path).read_text())


def _parse_f0(spec: str, n: int) -> Function:
    if spec == "uniform":
        return Function.ones(n)
    if spec.startswith("dirac:"):
        return Function.indicator(n, [int(spec.split(":", 1)[1])])
    raise SystemExit(f"unrecognized f0 spec {spec!r}")


def _parse_mu0(spec: str, n: int) -> Measure:
    if spec == "uniform":
        return Measure(np.ones(n), nonneg=True)
    w = np.array([float(x) for x in Path(spec).read_text().split()])
    return Measure(w, nonneg=True)


def _fmt(w: np.ndarray) -> str:
    return " ".join(f"{x:.17g}" for x in w)


def cmd_validate(args) -> int:
    h = _load(args.file)
    report = validate(h, args.tol)
    print(report.summary())
    return 0 if report.passed else 1


def _run_net(h, args):
    f0 = _parse_f0(args.f0, h.n)
    mu0 = _parse_mu0(args.mu0, h.n)
    cfg = ApproximantConfig(mu0, f0, canonical_chain(h), conv_tol=args.tol)
    chi, trace = haar_net(h, cfg)
    if getattr(args, "trace", None):
        with open(args.trace, "w", newline="") as out:
            write_trace_csv(trace, out)
    return chi


def cmd_haar(args) -> int:
    h = _load(args.file)
    if args.method == "net":
        chi = _run_net(h, args)
    elif args.method == "jewett":
        chi = jewett_haar(h)
    elif args.method == "solve":
        chi = solve_invariance(h)
    else:
        raise SystemExit(f"unknown method {args.method!r}")
    print(_fmt(chi.w))
    return 0


def cmd_compare(args) -> int:
    h = _load(args.file)
    weights = {}
    net_args = argparse.Namespace(f0="uniform", mu0="uniform", tol=1e-12, trace=None)
    weights["net"] = _run_net(h, net_args).w
    weights["jewett"] = jewett_haar(h).w
    weights["solve"] = solve_invariance(h).w
    normalized = {k: w / w.sum() for k, w in weights.items()}
    for name, w in normalized.items():
        print(f"{name}: {_fmt(w)}")
    ok = True
    names = list(normalized)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            wa, wb = normalized[a], normalized[b]
            rel = float(np.max(np.abs(wa - wb) / np.maximum(np.maximum(wa, wb), 1e-300)))
            ok = ok and rel <= args.tol
            print(f"max relative difference {a}/{b}: {rel:.3e}")
    residual = invariance_residual(h, Measure(normalized["net"], nonneg=True))
    print(f"invariance residual (net): {residual:.3e}")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    spec = FamilySpec.parse(args.family, args.param)
    text = serialize_hypergroup(build_family(spec))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check_lemmas(args) -> int:
    h = _load(args.file)
    results = run_all_suites(h, seed=args.seed, trials=args.trials)
    ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        detail = f" ({r.detail})" if r.detail else ""
        print(f"{r.name}: {status} worst={r.worst:.3e}{detail}")
        ok = ok and r.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperhaar",
        description="Invariant measures on finite hypergroups: compute, validate, compare.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the hypergroup axioms")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("haar", help="compute invariant weights")
    p.add_argument("file")
    p.add_argument("--method", choices=["net", "jewett", "solve"], required=True)
    p.add_argument("--f0", default="uniform", help="uniform | dirac:<i>")
    p.add_argument("--mu0", default="uniform", help="uniform | <file of n weights>")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--trace", help="write per-step CSV trace here (net only)")
    p.set_defaults(func=cmd_haar)

    p = sub.add_parser("compare", help="run all three methods and compare")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="emit a hypergroup document for a bundled family")
    p.add_argument("--family", required=True,
                   choices=["cyclic", "theta2", "conj-class", "cosine-grid", "product"])
    p.add_argument("--param", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-lemmas", help="run the randomized identity/convergence suites")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_check_lemmas)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
