"""Benchmark harness: noise synthesis, both denoisers, SNR tables.

A run writes four files into the output directory:

``results.csv``
    One row per (image, noise spec), SNRs averaged over seeds. Byte
    deterministic for a fixed config; the timing columns are left empty.
``results_seeds.csv``
    Same schema, one row per seed.
``timings.csv``
    Wall-clock seconds per row and method.
``results.txt``
    Aligned plain-text table, with any per-row error messages.
"""

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from epipocs.baseline import DEFAULT_LAMBDA_GRID, tune_lambda
from epipocs.denoise import epigraph_denoise
from epipocs.images import read_image
from epipocs.noise import NoiseSpec, add_noise, snr_db

CSV_HEADER = ("image", "noise_kind", "sigma", "eps", "sigma1", "sigma2", "seed",
              "input_snr", "pocs_snr", "chambolle_snr", "chambolle_lambda",
              "pocs_seconds", "chambolle_seconds")
METHODS = ("pocs", "chambolle")


@dataclass(frozen=True)
class BenchConfig:
    images: tuple
    noise_specs: tuple
    methods: tuple = METHODS
    lambda_grid: tuple = DEFAULT_LAMBDA_GRID
    seeds: tuple = (0,)
    output_path: str = "results"

    def __post_init__(self):
        for name in ("images", "noise_specs", "methods", "seeds"):
            if not getattr(self, name):
                raise ValueError(f"config field {name!r} must be nonempty")
        bad = set(self.methods) - set(METHODS)
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}; choose from {METHODS}")
        if "chambolle" in self.methods and not self.lambda_grid:
            raise ValueError("lambda_grid must be nonempty when chambolle is requested")
        for s in self.seeds:
            if int(s) != s or s < 0:
                raise ValueError(f"seeds must be nonnegative integers, got {s!r}")

    @classmethod
    def from_dict(cls, d, base_dir=None):
        """Build a config from its JSON form; relative image paths resolve
        against ``base_dir``."""
        d = dict(d)
        unknown = set(d) - {"images", "noise_specs", "methods", "lambda_grid",
                            "seeds", "output_path"}
        if unknown:
            raise ValueError(f"unknown config fields {sorted(unknown)}")
        base = Path(base_dir) if base_dir else Path(".")
        images = tuple(str(p if Path(p).is_absolute() else base / p)
                       for p in d.get("images", ()))
        specs = tuple(s if isinstance(s, NoiseSpec) else NoiseSpec(**s)
                      for s in d.get("noise_specs", ()))
        kw = {"images": images, "noise_specs": specs}
        for key in ("methods", "lambda_grid", "seeds"):
            if key in d:
                kw[key] = tuple(d[key])
        if "output_path" in d:
            kw["output_path"] = str(d["output_path"])
        return cls(**kw)

    @classmethod
    def from_json(cls, path):
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text()), base_dir=path.parent)

    def to_dict(self):
        return {
            "images": list(self.images),
            "noise_specs": [asdict(s) for s in self.noise_specs],
            "methods": list(self.methods),
            "lambda_grid": [float(x) for x in self.lambda_grid],
            "seeds": [int(s) for s in self.seeds],
            "output_path": self.output_path,
        }


@dataclass
class BenchRow:
    image: str
    noise: NoiseSpec
    seeds: tuple
    input_snr: float | None = None
    pocs_snr: float | None = None
    chambolle_snr: float | None = None
    chambolle_lambda: float | None = None
    seconds: dict = field(default_factory=dict)
    error: str | None = None


def _mean(xs):
    return float(np.mean(xs)) if xs else None


def _run_one(clean, spec, methods, grid):
    """SNRs and timings for one image under one seeded noise draw."""
    noisy = add_noise(clean, spec)
    out = {"input_snr": snr_db(clean, noisy)}
    secs = {}
    if "pocs" in methods:
        t0 = time.perf_counter()
        est = epigraph_denoise(noisy).estimate
        secs["pocs"] = time.perf_counter() - t0
        out["pocs_snr"] = snr_db(clean, est)
    if "chambolle" in methods:
        t0 = time.perf_counter()
        lam, s = tune_lambda(noisy, clean, grid)
        secs["chambolle"] = time.perf_counter() - t0
        out["chambolle_snr"], out["chambolle_lambda"] = s, lam
    return out, secs


def run_benchmark(config, write=True, progress=None):
    """Run every (image, noise spec, seed) combination in config order.

    Returns ``(rows, seed_rows)``: the seed-averaged rows and the per-seed
    rows. A failure on one image is stored in that row's ``error`` and the
    batch continues. With ``write`` the result files go to
    ``config.output_path``.
    """
    rows, seed_rows = [], []
    for path in config.images:
        name = Path(path).stem
        try:
            clean = read_image(path)
            load_error = None
        except (OSError, ValueError) as exc:
            clean, load_error = None, f"{type(exc).__name__}: {exc}"
        for spec in config.noise_specs:
            row = BenchRow(name, spec, tuple(config.seeds), error=load_error)
            per_seed = []
            if clean is not None:
                try:
                    for seed in config.seeds:
                        res, secs = _run_one(clean, spec.with_seed(int(seed)),
                                             config.methods, config.lambda_grid)
                        per_seed.append(res)
                        seed_rows.append(BenchRow(name, spec.with_seed(int(seed)),
                                                  (int(seed),), seconds=secs, **res))
                        for k, v in secs.items():
                            row.seconds[k] = row.seconds.get(k, 0.0) + v
                except (ArithmeticError, ValueError) as exc:
                    row.error = f"{type(exc).__name__}: {exc}"
                    per_seed = []
            if per_seed:
                for key in ("input_snr", "pocs_snr", "chambolle_snr", "chambolle_lambda"):
                    setattr(row, key, _mean([r[key] for r in per_seed if key in r]))
            rows.append(row)
            if progress:
                progress(row)
    if write:
        write_outputs(config.output_path, rows, seed_rows)
    return rows, seed_rows


def _fmt(x):
    return "" if x is None else f"{x:.6f}"


def rows_to_csv(rows, timings=False):
    """CSV text for ``rows``; timing cells stay empty unless ``timings``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        n = r.noise
        w.writerow([
            r.image, n.kind, f"{n.sigma:g}", f"{n.eps:g}", f"{n.sigma1:g}", f"{n.sigma2:g}",
            ";".join(str(s) for s in r.seeds),
            _fmt(r.input_snr), _fmt(r.pocs_snr), _fmt(r.chambolle_snr),
            "" if r.chambolle_lambda is None else f"{r.chambolle_lambda:.6g}",
            _fmt(r.seconds.get("pocs")) if timings else "",
            _fmt(r.seconds.get("chambolle")) if timings else "",
        ])
    return buf.getvalue()


def timings_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("image", "noise", "pocs_seconds", "chambolle_seconds"))
    for r in rows:
        w.writerow([r.image, r.noise.summary(), _fmt(r.seconds.get("pocs")),
                    _fmt(r.seconds.get("chambolle"))])
    return buf.getvalue()


def format_table(rows):
    """Aligned plain-text table in the Input / POCS / Chambolle layout."""
    head = ["image", "noise", "input", "pocs", "chambolle", "lambda"]
    body = []
    for r in rows:
        cells = [r.image, r.noise.summary()]
        for x in (r.input_snr, r.pocs_snr, r.chambolle_snr):
            cells.append("-" if x is None else f"{x:.2f}")
        cells.append("-" if r.chambolle_lambda is None else f"{r.chambolle_lambda:.4g}")
        body.append(cells)
    widths = [max(len(c[i]) for c in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.ljust(wd) if i < 2 else c.rjust(wd)
                       for i, (c, wd) in enumerate(zip(cells, widths)))
             for cells in [head] + body]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    for r in rows:
        if r.error:
            lines.append(f"error: {r.image} {r.noise.summary()}: {r.error}")
    return "\n".join(lines) + "\n"


def write_outputs(out_dir, rows, seed_rows):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "results.csv").write_text(rows_to_csv(rows))
    (out / "results_seeds.csv").write_text(rows_to_csv(seed_rows))
    (out / "timings.csv").write_text(timings_csv(rows))
    (out / "results.txt").write_text(format_table(rows))
    return out

