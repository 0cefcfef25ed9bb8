"""Command-line entry point: ``morlet-ridge {probe,synth,cwt,ridge,verify}``.

Exit codes: 0 success, 1 verification failure, 2 domain or parse error,
3 I/O error, 4 resolution error, 5 degenerate input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

import numpy as np

from . import formats
from .cwt import DEFAULT_VOICES, build_scale_grid, cwt, default_band
from .exceptions import (
    DegenerateScalogramError,
    MorletRidgeError,
    ResolutionError,
    SpanError,
)
from .ridge import extract_ridge
from .signals import KINDS, GeneratorSpec, generate
from .verify import format_report, run_verification
from .wavelet import DEFAULT_SIGMA, WaveletShape, psi

log = logging.getLogger("morlet_ridge")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_RESOLUTION = 4
EXIT_DEGENERATE = 5

PROBE_STEP = 1.0 / 64.0
PROBE_HALF_WIDTH = 8.0


def cmd_probe(args: argparse.Namespace) -> int:
    shape = WaveletShape(args.sigma)
    for name, value in (
        ("sigma", shape.sigma),
        ("kappa", shape.kappa),
        ("p", shape.p),
        ("q", shape.q),
        ("env_var", shape.env_var),
        ("omega_p", shape.peak_frequency),
    ):
        print(f"{name} = {value:.15g}")
    if args.out:
        n = int(round(2 * PROBE_HALF_WIDTH / PROBE_STEP))
        t = -PROBE_HALF_WIDTH + np.arange(n + 1) * PROBE_STEP
        formats.write_psi_csv(args.out, t, psi(t, shape))
    return EXIT_OK


def _parse_shell(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("a shell is 'amplitude,decay,period,drift'")
    return tuple(float(p) for p in parts)


def cmd_synth(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(
        kind=args.kind,
        n=args.n,
        dt=args.dt,
        t0=args.t0,
        amplitude=args.amp,
        frequency=args.freq,
        phase=args.phase,
        f0=args.f0,
        chirp_rate=args.rate,
        t_center=args.tc,
        width=args.width,
        decay=args.decay,
        period=args.period,
        drift=args.drift,
        shells=tuple(args.shell or ()),
        noise=args.noise,
        seed=args.seed,
    )
    signal = generate(spec)
    formats.write_signal_csv(args.out, signal, spec.to_metadata())
    log.info("wrote %d samples to %s", len(signal), args.out)
    return EXIT_OK


def cmd_cwt(args: argparse.Namespace) -> int:
    signal = formats.read_signal_csv(args.input, dt=args.dt)
    shape = WaveletShape(args.sigma)
    f_min, f_max = args.fmin, args.fmax
    if f_min is None or f_max is None:
        lo, hi = default_band(signal, shape, args.voices)
        f_min = lo if f_min is None else f_min
        f_max = hi if f_max is None else f_max
    grid = build_scale_grid(f_min, f_max, args.voices, shape)
    scalogram = cwt(signal, grid, shape, engine=args.engine, n_jobs=args.jobs)
    formats.write_scalogram(args.out, scalogram)
    if args.pgm:
        formats.write_pgm(args.pgm, scalogram)
    log.info("wrote %d x %d scalogram to %s", len(grid), len(signal), args.out)
    return EXIT_OK


def cmd_ridge(args: argparse.Namespace) -> int:
    scalogram = formats.read_scalogram(args.input, args.sigma)
    ridge = extract_ridge(scalogram, args.penalty)
    formats.write_ridge_csv(args.out, ridge)
    return EXIT_OK


def _sigma_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sigma list {text!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    sigmas = [s for chunk in args.sigma for s in chunk]
    results = run_verification(sigmas, args.tol, kappa_factor=args.kappa_scale)
    print(format_report(results, args.tol))
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(
            f"FAILED {r.identity} at sigma={r.sigma!r}: residual {r.residual!r}",
            file=sys.stderr,
        )
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morlet-ridge",
        description="Instantaneous frequency and amplitude from an admissible Morlet-type CWT.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probe", help="print wavelet constants")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--out", help="also write psi(t) on [-8, 8] as CSV")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("synth", help="generate a test signal CSV")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--amp", type=float, default=1.0)
    p.add_argument("--freq", type=float, default=1.0)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--f0", type=float, default=1.0)
    p.add_argument("--rate", type=float, default=0.0, help="chirp rate")
    p.add_argument("--tc", type=float, default=0.0, help="AM envelope centre")
    p.add_argument("--width", type=float, default=1.0, help="AM envelope width")
    p.add_argument("--decay", type=float, default=float("inf"))
    p.add_argument("--period", type=float, default=1.0)
    p.add_argument("--drift", type=float, default=0.0)
    p.add_argument("--shell", type=_parse_shell, action="append",
                   help="rdf shell 'amplitude,decay,period,drift' (repeatable)")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("cwt", help="compute a scalogram")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--pgm")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--fmin", type=float)
    p.add_argument("--fmax", type=float)
    p.add_argument("--voices", type=int, default=DEFAULT_VOICES)
    p.add_argument("--engine", choices=("direct", "spectral"), default="spectral")
    p.add_argument("--dt", type=float, help="sample spacing for single-column input")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_cwt)

    p = sub.add_parser("ridge", help="extract the ridge from a scalogram")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA,
                   help="must match the value used for cwt")
    p.add_argument("--penalty", type=float, default=0.0)
    p.set_defaults(func=cmd_ridge)

    p = sub.add_parser("verify", help="certify the wavelet closed forms by quadrature")
    p.add_argument("--sigma", type=_sigma_list, action="append", default=None,
                   help="comma-separated list; repeatable (default 1,2,5)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--kappa-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ResolutionError, SpanError)):
        return EXIT_RESOLUTION
    if isinstance(exc, DegenerateScalogramError):
        return EXIT_DEGENERATE
    if isinstance(exc, (MorletRidgeError, ValueError)):
        return EXIT_DOMAIN
    if isinstance(exc, OSError):
        return EXIT_IO
    raise exc


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.sigma is None:
        args.sigma = [[1.0, 2.0, 5.0]]
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (MorletRidgeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
