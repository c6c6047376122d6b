"""Command-line surface: deblur, degrade, evaluate, sweep-rho,
run-scenarios.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench, pgm
from .config import load_run_config
from .errors import (
    BracketFailure,
    ConfigError,
    DegenerateInput,
    DimensionMismatch,
    GfdError,
    ImageTooSmall,
    KernelTooLarge,
    PgmParseError,
    SingularDenominator,
    UnsupportedFormat,
    WindowTooLarge,
)
from .guided_filter import GfParams
from .pipeline import GfdConfig, run_gfd
from .spectral import Psf

_DATA_ERRORS = (
    PgmParseError,
    UnsupportedFormat,
    ConfigError,
    DimensionMismatch,
    WindowTooLarge,
    KernelTooLarge,
    ImageTooSmall,
    OSError,
    ValueError,
)
_NUMERIC_ERRORS = (SingularDenominator, BracketFailure, DegenerateInput)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def parse_psf_spec(spec: str) -> Psf:
    """PSF mini-language: boxcar:N, gaussian:SIZE:STD, rational:R,
    binomial5, or file:PATH (a PGM whose samples are kernel weights)."""
    kind, _, rest = spec.partition(":")
    if kind == "boxcar":
        return Psf.from_taps(bench.boxcar_kernel(int(rest)))
    if kind == "gaussian":
        size_s, _, std_s = rest.partition(":")
        return Psf.from_taps(bench.gaussian_kernel(int(size_s), float(std_s)))
    if kind == "rational":
        return Psf.from_taps(bench.rational_kernel(int(rest)))
    if kind == "binomial5":
        return Psf.from_taps(bench.binomial5_kernel())
    if kind == "file":
        return Psf.from_taps(pgm.read_image(rest))
    raise ValueError(f"unknown PSF spec {spec!r}")


def parse_grid(spec: str):
    """Grid mini-language start:step:stop, inclusive of stop."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:step:stop, got {spec!r}")
    start, step, stop = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {spec!r}")
    n = int(round((stop - start) / step)) + 1
    vals = [start + i * step for i in range(n) if start + i * step <= stop + 1e-9]
    return vals


def _parse_levels(spec: str):
    return [float(p) for p in spec.split(",") if p]


def _build_parser() -> _Parser:
    p = _Parser(prog="gfdeblur", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("deblur", help="restore a blurred, noisy image")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--psf", required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--sigma", type=float, default=None)
    d.add_argument("--estimate-sigma", action="store_true")
    d.add_argument("--iters", type=int, default=30)
    d.add_argument("--gf-w", type=int, default=None)
    d.add_argument("--gf-eps", type=float, default=None)
    d.add_argument("--tau", type=float, default=0.6)
    d.add_argument("--trace", default=None)
    d.add_argument("--ref", default=None)
    d.add_argument("--config", default=None)

    g = sub.add_parser("degrade", help="blur + seeded noise per scenario")
    g.add_argument("--in", dest="infile", required=True)
    g.add_argument("--scenario", type=int, required=True, choices=sorted(bench.SCENARIOS))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--meta", default=None)

    e = sub.add_parser("evaluate", help="ISNR (and BSNR given --sigma)")
    e.add_argument("--clean", required=True)
    e.add_argument("--observed", required=True)
    e.add_argument("--restored", required=True)
    e.add_argument("--sigma", type=float, default=None)

    s = sub.add_parser("sweep-rho", help="ISNR across forced rho values")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--psf", required=True)
    s.add_argument("--bsnr", default="20,30,40")
    s.add_argument("--grid", default="0.1:0.05:1.0")
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iters", type=int, default=30)

    r = sub.add_parser("run-scenarios", help="comparison table over a directory")
    r.add_argument("--images", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--scenarios", default="1,2,3,4,5")
    r.add_argument("--iters", type=int, default=30)
    r.add_argument("--known-sigma", action="store_true")
    return p


def _cmd_deblur(args) -> int:
    iterations = args.iters
    tau = args.tau
    sigma = args.sigma
    gf_w, gf_eps = args.gf_w, args.gf_eps
    rel_tol, max_bisect = 1e-3, 60
    if args.config:
        rc = load_run_config(args.config)
        iterations, tau = rc.iterations, rc.tau
        rel_tol, max_bisect = rc.rel_tol, rc.max_bisect
        sigma = rc.sigma if sigma is None else sigma
        gf_w = rc.gf_w if gf_w is None else gf_w
        gf_eps = rc.gf_eps if gf_eps is None else gf_eps
    if args.estimate_sigma:
        sigma = None
    g = pgm.read_image(args.infile)
    psf = parse_psf_spec(args.psf)
    gf_main = None
    if gf_w is not None or gf_eps is not None:
        gf_main = GfParams(win=gf_w if gf_w is not None else 5,
                           eps=gf_eps if gf_eps is not None else 0.04)
    ref = pgm.read_image(args.ref) if args.ref else None
    cfg = GfdConfig(
        iterations=iterations, gf_main=gf_main, tau=tau,
        rel_tol=rel_tol, max_bisect=max_bisect, sigma=sigma, reference=ref,
    )
    restored, trace = run_gfd(g, psf, cfg)
    pgm.write_image(args.out, restored)
    if args.trace:
        bench.write_trace_csv(args.trace, trace)
    if ref is not None:
        print(f"isnr_db={bench.isnr(ref, g, restored):.6g}")
    return 0


def _cmd_degrade(args) -> int:
    clean = pgm.read_image(args.infile)
    scn = bench.SCENARIOS[args.scenario]
    pair = bench.degrade(clean, scn, args.seed)
    pgm.write_image(args.out, pair.observed)
    if args.meta:
        lines = [
            f"scenario={scn.id}",
            f"psf={scn.psf_text}",
            f"sigma={scn.sigma:.6g}",
            f"sigma_sq={scn.sigma_sq:.6g}",
            f"seed={args.seed}",
            f"prng={bench.PRNG_ID}",
        ]
        Path(args.meta).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def _cmd_evaluate(args) -> int:
    clean = pgm.read_image(args.clean)
    observed = pgm.read_image(args.observed)
    restored = pgm.read_image(args.restored)
    print(f"isnr_db={bench.isnr(clean, observed, restored):.6g}")
    if args.sigma is not None:
        print(f"bsnr_db={bench.bsnr(observed, args.sigma ** 2):.6g}")
    return 0


def _cmd_sweep_rho(args) -> int:
    clean = pgm.read_image(args.infile)
    psf = parse_psf_spec(args.psf)
    rows = bench.rho_sweep(
        clean,
        psf,
        bsnr_levels=_parse_levels(args.bsnr),
        rho_grid=parse_grid(args.grid),
        cfg=GfdConfig(iterations=args.iters),
        seed=args.seed,
        image_name=Path(args.infile).stem,
    )
    bench.write_rho_sweep_csv(args.out, rows)
    return 0


def _cmd_run_scenarios(args) -> int:
    image_dir = Path(args.images)
    files = sorted(image_dir.glob("*.pgm"))
    if not files:
        raise ValueError(f"no .pgm images found in {image_dir}")
    images = [(f.stem, pgm.read_image(f)) for f in files]
    ids = [int(t) for t in args.scenarios.split(",") if t]
    scenarios = [bench.SCENARIOS[i] for i in ids]
    rows = bench.run_scenarios(
        images,
        scenarios,
        cfg=GfdConfig(iterations=args.iters),
        seed=args.seed,
        known_sigma=args.known_sigma,
    )
    bench.write_scenarios_csv(args.out, rows)
    return 0


_COMMANDS = {
    "deblur": _cmd_deblur,
    "degrade": _cmd_degrade,
    "evaluate": _cmd_evaluate,
    "sweep-rho": _cmd_sweep_rho,
    "run-scenarios": _cmd_run_scenarios,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _NUMERIC_ERRORS as exc:
        print(f"gfdeblur: numerical failure: {exc}", file=sys.stderr)
        return 3
    except _DATA_ERRORS as exc:
        print(f"gfdeblur: {exc}", file=sys.stderr)
        return 2
    except GfdError as exc:
        print(f"gfdeblur: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
