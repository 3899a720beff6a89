"""Throughput measurement and scaling-law fitting for the two paths."""

import csv
import io
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .color import RgbImage
from .exceptions import ParamError
from .params import EnhanceParams, default_params
from .pipeline import enhance

CSV_COLUMNS = (
    "width",
    "height",
    "megapixels",
    "path",
    "warmup_iters",
    "timed_iters",
    "mean_ms",
    "stddev_ms",
    "fps",
)

DEFAULT_RESOLUTIONS = ((640, 480), (1280, 720), (1920, 1080), (3840, 2160))

MIN_WARMUP_ITERS = 5
MIN_TIMED_ITERS = 10


@dataclass(frozen=True)
class BenchRecord:
    width: int
    height: int
    megapixels: float
    path: str
    warmup_iters: int
    timed_iters: int
    mean_ms: float
    stddev_ms: float
    fps: float


def synthetic_frame(width: int, height: int, seed: int = 0) -> np.ndarray:
    """A deterministic uniform-noise RGB frame for timing runs."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8)


def time_enhance(
    width: int,
    height: int,
    params: EnhanceParams,
    warmup_iters: int = MIN_WARMUP_ITERS,
    timed_iters: int = MIN_TIMED_ITERS,
    seed: int = 0,
) -> BenchRecord:
    """Time enhance() on one synthetic frame.

    Warm-up iterations absorb kernel construction and allocator noise and
    are discarded; only the timed iterations enter the statistics.
    """
    if warmup_iters < MIN_WARMUP_ITERS:
        raise ParamError(f"warmup_iters must be >= {MIN_WARMUP_ITERS}")
    if timed_iters < MIN_TIMED_ITERS:
        raise ParamError(f"timed_iters must be >= {MIN_TIMED_ITERS}")
    image = RgbImage(synthetic_frame(width, height, seed))
    for _ in range(warmup_iters):
        enhance(image, params)
    samples = np.empty(timed_iters, dtype=np.float64)
    for i in range(timed_iters):
        t0 = time.perf_counter()
        enhance(image, params)
        samples[i] = (time.perf_counter() - t0) * 1000.0
    mean_ms = float(samples.mean())
    stddev_ms = float(samples.std(ddof=1)) if timed_iters > 1 else 0.0
    return BenchRecord(
        width=width,
        height=height,
        megapixels=width * height / 1e6,
        path=params.path,
        warmup_iters=warmup_iters,
        timed_iters=timed_iters,
        mean_ms=mean_ms,
        stddev_ms=stddev_ms,
        fps=1000.0 / mean_ms,
    )


def run_sweep(
    resolutions=DEFAULT_RESOLUTIONS,
    params: EnhanceParams | None = None,
    paths=("lite", "full"),
    warmup_iters: int = MIN_WARMUP_ITERS,
    timed_iters: int = MIN_TIMED_ITERS,
) -> list[BenchRecord]:
    """Time every (path, resolution) pair; returns one record per pair.

    The lite path goes first by default: its sub-millisecond samples are
    taken before the spectral path has churned the allocator with large
    transform buffers.  Timing on a shared machine is noisy, so a
    nonmonotonic mean across growing resolutions is reported as a
    warning, not an error.
    """
    if params is None:
        params = default_params()
    resolutions = [(int(w), int(h)) for (w, h) in resolutions]
    if not resolutions:
        raise ParamError("at least one resolution is required")
    records = []
    for path in paths:
        path_params = params.with_overrides({"path": path})
        path_records = [
            time_enhance(w, h, path_params, warmup_iters, timed_iters)
            for (w, h) in resolutions
        ]
        ordered = sorted(path_records, key=lambda r: r.megapixels)
        for prev, cur in zip(ordered, ordered[1:]):
            if cur.mean_ms < prev.mean_ms:
                warnings.warn(
                    f"timing anomaly on path {path!r}: {cur.megapixels:.3f} Mpx "
                    f"ran faster than {prev.megapixels:.3f} Mpx",
                    stacklevel=2,
                )
        records.extend(path_records)
    return records


def write_csv(records, dest) -> None:
    """Write records as CSV to a path or text file object."""
    if hasattr(dest, "write"):
        _write_csv_file(records, dest)
    else:
        with open(dest, "w", newline="") as fh:
            _write_csv_file(records, fh)


def _write_csv_file(records, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([getattr(rec, col) for col in CSV_COLUMNS])


def records_to_csv_text(records) -> str:
    buf = io.StringIO()
    _write_csv_file(records, buf)
    return buf.getvalue()


_CSV_TYPES = {
    "width": int,
    "height": int,
    "megapixels": float,
    "path": str,
    "warmup_iters": int,
    "timed_iters": int,
    "mean_ms": float,
    "stddev_ms": float,
    "fps": float,
}


def read_csv(source) -> list[BenchRecord]:
    """Parse records back from CSV; floats round-trip exactly."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != list(CSV_COLUMNS):
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        kwargs = {col: _CSV_TYPES[col](row[col]) for col in CSV_COLUMNS}
        out.append(BenchRecord(**kwargs))
    return out


@dataclass(frozen=True)
class ModelFit:
    model: str
    coeff: float
    rmse: float


@dataclass(frozen=True)
class PathScaling:
    path: str
    linear: ModelFit
    nlogn: ModelFit

    @property
    def best_model(self) -> str:
        return "linear" if self.linear.rmse <= self.nlogn.rmse else "nlogn"


@dataclass(frozen=True)
class ScalingReport:
    paths: dict
    ratio_full_over_lite: float | None
    largest_megapixels: float | None


def _fit_through_origin(model: str, m: np.ndarray, y: np.ndarray) -> ModelFit:
    coeff = float((m * y).sum() / (m * m).sum())
    rmse = float(np.sqrt(np.mean((y - coeff * m) ** 2)))
    return ModelFit(model=model, coeff=coeff, rmse=rmse)


def fit_scaling(records) -> ScalingReport:
    """Fit mean time against pixel count for each path.

    Candidate laws are t = a*N and t = a*N*log2(N), both through the
    origin; the better one (lower residual) is reported per path.  Also
    reports the full/lite time ratio at the largest resolution present in
    both paths.
    """
    by_path: dict[str, list[BenchRecord]] = {}
    for rec in records:
        by_path.setdefault(rec.path, []).append(rec)
    paths = {}
    for path, recs in by_path.items():
        if len({(r.width, r.height) for r in recs}) < 3:
            raise ParamError(
                f"scaling fit needs >= 3 resolutions per path, "
                f"path {path!r} has {len(recs)}"
            )
        n = np.array([r.width * r.height for r in recs], dtype=np.float64)
        y = np.array([r.mean_ms for r in recs], dtype=np.float64)
        paths[path] = PathScaling(
            path=path,
            linear=_fit_through_origin("linear", n, y),
            nlogn=_fit_through_origin("nlogn", n * np.log2(n), y),
        )

    ratio = None
    largest = None
    if "full" in by_path and "lite" in by_path:
        full_at = {(r.width, r.height): r for r in by_path["full"]}
        lite_at = {(r.width, r.height): r for r in by_path["lite"]}
        common = sorted(set(full_at) & set(lite_at), key=lambda wh: wh[0] * wh[1])
        if common:
            w, h = common[-1]
            largest = w * h / 1e6
            ratio = full_at[(w, h)].mean_ms / lite_at[(w, h)].mean_ms
    return ScalingReport(paths=paths, ratio_full_over_lite=ratio, largest_megapixels=largest)


def write_svg(records, dest, title: str = "enhance timing") -> None:
    """Render mean time against megapixels as a small standalone SVG."""
    text = render_svg(records, title=title)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)


_SVG_COLORS = {"full": "#3465a4", "lite": "#cc0000"}


def render_svg(records, title: str = "enhance timing") -> str:
    width, height = 640, 400
    left, right, top, bottom = 70, 20, 40, 50
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs = [r.megapixels for r in records]
    ys = [r.mean_ms for r in records]
    x_max = max(xs) if xs else 1.0
    y_max = max(ys) if ys else 1.0
    x_max = x_max or 1.0
    y_max = y_max or 1.0

    def px(x: float) -> float:
        return left + plot_w * (x / x_max)

    def py(y: float) -> float:
        return top + plot_h * (1.0 - y / y_max)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">megapixels</text>',
        f'<text x="16" y="{top + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.1f})">mean ms</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        xv = x_max * frac
        yv = y_max * frac
        parts.append(
            f'<text x="{px(xv):.1f}" y="{top + plot_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{xv:.2f}</text>'
        )
        parts.append(
            f'<text x="{left - 6}" y="{py(yv) + 3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{yv:.1f}</text>'
        )

    by_path: dict[str, list[BenchRecord]] = {}
    for rec in records:
        by_path.setdefault(rec.path, []).append(rec)
    legend_y = top + 8
    for path in sorted(by_path):
        recs = sorted(by_path[path], key=lambda r: r.megapixels)
        color = _SVG_COLORS.get(path, "#555555")
        points = " ".join(f"{px(r.megapixels):.1f},{py(r.mean_ms):.1f}" for r in recs)
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for r in recs:
            parts.append(
                f'<circle cx="{px(r.megapixels):.1f}" cy="{py(r.mean_ms):.1f}" '
                f'r="3" fill="{color}"/>'
            )
        parts.append(
            f'<text x="{left + plot_w - 4}" y="{legend_y}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12" fill="{color}">{path}</text>'
        )
        legend_y += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


@dataclass(frozen=True)
class KernelTiming:
    kernel: str
    backend: str
    mean_ms: float


def compare_backends(
    width: int = 1920, height: int = 1080, iters: int = 10, seed: int = 0
) -> list[KernelTiming]:
    """Time each per-pixel kernel on every available backend."""
    from . import backend

    rgb = synthetic_frame(width, height, seed)
    rows = []
    for name in backend.available_backends():
        k = backend.load_backend(name)
        h, s, v = k.rgb_to_hsv_planes(rgb)
        v_old = k.rgb_max(rgb)
        v_new = (v * np.float32(0.5)).astype(np.float32)
        table = np.arange(256, dtype=np.uint8)[None, :].repeat(256, axis=0)
        cases = (
            ("rgb_to_hsv_planes", lambda: k.rgb_to_hsv_planes(rgb)),
            ("hsv_to_rgb_u8", lambda: k.hsv_to_rgb_u8(h, s, v)),
            ("rgb_max", lambda: k.rgb_max(rgb)),
            ("scale_rgb_by_v", lambda: k.scale_rgb_by_v(rgb, v_old, v_new)),
            ("scale_rgb_by_table", lambda: k.scale_rgb_by_table(rgb, v_old, table)),
        )
        for kernel_name, fn in cases:
            fn()
            fn()
            samples = np.empty(iters, dtype=np.float64)
            for i in range(iters):
                t0 = time.perf_counter()
                fn()
                samples[i] = (time.perf_counter() - t0) * 1000.0
            rows.append(
                KernelTiming(kernel=kernel_name, backend=name, mean_ms=float(samples.mean()))
            )
    return rows
