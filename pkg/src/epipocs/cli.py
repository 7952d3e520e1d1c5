"""Command-line entry point: ``epipocs denoise|addnoise|snr|bench``."""

import argparse
import sys
from pathlib import Path

from epipocs.baseline import ROFParams, chambolle_denoise
from epipocs.bench import BenchConfig, format_table, run_benchmark
from epipocs.costs import make_cost
from epipocs.denoise import DenoiseOptions, denoise_trace_csv, epigraph_denoise
from epipocs.errors import DomainError, ImageFormatError, NumericError
from epipocs.images import read_image, write_image
from epipocs.noise import NoiseSpec, add_noise, snr_db

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route it to status 1 instead
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _filter(text):
    try:
        taps = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad filter {text!r}; expected e.g. 1,-2,1")
    return taps


def build_parser():
    p = _Parser(prog="epipocs", description="Epigraph POCS denoising tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("denoise", help="denoise a grayscale image")
    d.add_argument("--input", required=True)
    d.add_argument("--output", required=True)
    d.add_argument("--method", choices=("pocs", "chambolle"), default="pocs")
    d.add_argument("--lambda", dest="lam", type=float,
                   help="ROF weight; chambolle only, the pocs path takes none")
    d.add_argument("--cost", choices=("tv", "fv", "l1"), default="tv")
    d.add_argument("--fv-filter", type=_filter, default=None)
    d.add_argument("--max-iters", type=int, default=None)
    d.add_argument("--trace", help="write the pocs distance trace as CSV")

    a = sub.add_parser("addnoise", help="add seeded synthetic noise")
    a.add_argument("--input", required=True)
    a.add_argument("--output", required=True)
    a.add_argument("--kind", choices=("gaussian", "epsmix"), default="gaussian")
    a.add_argument("--sigma", type=float, default=None)
    a.add_argument("--eps", type=float, default=None)
    a.add_argument("--sigma1", type=float, default=None)
    a.add_argument("--sigma2", type=float, default=None)
    a.add_argument("--seed", type=int, required=True)

    s = sub.add_parser("snr", help="SNR of a test image against a clean one")
    s.add_argument("--clean", required=True)
    s.add_argument("--test", required=True)

    b = sub.add_parser("bench", help="run a JSON-configured benchmark")
    b.add_argument("--config", required=True)
    b.add_argument("--out", default=None, help="output directory (overrides config)")
    return p


def _denoise(args):
    if args.method == "pocs":
        if args.lam is not None:
            raise UsageError("--lambda is not accepted with --method pocs "
                             "(the epigraph denoiser is parameter-free)")
        if args.fv_filter is not None and args.cost != "fv":
            raise UsageError("--fv-filter requires --cost fv")
        if args.max_iters is not None and args.max_iters < 1:
            raise UsageError("--max-iters must be >= 1")
        opts = DenoiseOptions(cost=make_cost(args.cost, args.fv_filter))
        if args.max_iters is not None:
            opts = DenoiseOptions(cost=opts.cost, max_iters=args.max_iters)
        y = read_image(args.input)
        res = epigraph_denoise(y, opts)
        write_image(args.output, res.estimate)
        if args.trace:
            Path(args.trace).write_text(denoise_trace_csv(res))
        print(f"iterations={res.iterations} turnaround={res.turnaround_index}")
        return EXIT_OK
    if args.lam is None:
        raise UsageError("--method chambolle requires --lambda")
    if args.cost != "tv" or args.fv_filter is not None or args.trace:
        raise UsageError("--cost, --fv-filter and --trace apply to --method pocs only")
    try:
        params = ROFParams(lam=args.lam) if args.max_iters is None else \
            ROFParams(lam=args.lam, iters=args.max_iters)
    except ValueError as exc:
        raise UsageError(str(exc))
    write_image(args.output, chambolle_denoise(read_image(args.input), params))
    return EXIT_OK


def _addnoise(args):
    if args.kind == "gaussian":
        if args.sigma is None:
            raise UsageError("--kind gaussian requires --sigma")
        if any(v is not None for v in (args.eps, args.sigma1, args.sigma2)):
            raise UsageError("--eps/--sigma1/--sigma2 apply to --kind epsmix only")
        kw = {"sigma": args.sigma}
    else:
        if None in (args.eps, args.sigma1, args.sigma2):
            raise UsageError("--kind epsmix requires --eps, --sigma1 and --sigma2")
        kw = {"eps": args.eps, "sigma1": args.sigma1, "sigma2": args.sigma2}
    try:
        spec = NoiseSpec(args.kind, seed=args.seed, **kw)
    except ValueError as exc:
        raise UsageError(str(exc))
    write_image(args.output, add_noise(read_image(args.input), spec))
    return EXIT_OK


def _snr(args):
    print(f"{snr_db(read_image(args.clean), read_image(args.test)):.4f}")
    return EXIT_OK


def _bench(args):
    try:
        cfg = BenchConfig.from_json(args.config)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad config {args.config}: {exc}")
    if args.out:
        cfg = BenchConfig(**{**cfg.__dict__, "output_path": args.out})
    rows, _ = run_benchmark(cfg)
    sys.stdout.write(format_table(rows))
    return EXIT_RUNTIME if any(r.error for r in rows) else EXIT_OK


COMMANDS = {"denoise": _denoise, "addnoise": _addnoise, "snr": _snr, "bench": _bench}


def cli_main(argv=None):
    """Run the CLI; returns 0 on success, 1 on usage error, 2 on runtime error."""
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ImageFormatError, DomainError, NumericError, ValueError) as exc:
        print(f"epipocs: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
