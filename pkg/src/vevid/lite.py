"""Closed-form enhancement path.

Skips the spectral round trip entirely: each sample x maps through

    raw(x) = atan2(G * x, x + b)

which is strictly increasing and concave on [0, 1] for G > 0, b > 0, so it
lifts shadows while compressing highlights.  The raw value is then either
min-max normalized per frame or divided by the fixed bound atan(G).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import ParamError
from .spectral import (
    _CHUNK_SAMPLES,
    DEGENERATE_RANGE,
    DegenerateRangeWarning,
    _check_positive,
    _normalize_into,
)

NORM_MODES = ("per_frame", "fixed")


@dataclass(frozen=True)
class LiteParams:
    """Gain G and bias b for the closed-form path; both must be positive."""

    G: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "G", _check_positive("G", self.G))
        object.__setattr__(self, "b", _check_positive("b", self.b))


def lite_tone_curve(x, G: float, b: float) -> np.ndarray:
    """Raw tone curve atan2(G * x, x + b), evaluated in float64."""
    x64 = np.asarray(x, dtype=np.float64)
    return np.arctan2(G * x64, x64 + b)


def _raw_tone(plane: np.ndarray, G: float, b: float) -> np.ndarray:
    """lite_tone_curve into a fresh buffer, blocked for large planes.

    Element-wise operations and their order match lite_tone_curve exactly,
    so the result is bit-identical; blocking only bounds temporary size.
    """
    x = np.asarray(plane)
    if x.ndim != 2 or not x.flags.c_contiguous or x.size <= _CHUNK_SAMPLES:
        return lite_tone_curve(x, G, b)
    raw = np.empty(x.shape, dtype=np.float64)
    rows = max(1, _CHUNK_SAMPLES // x.shape[1])
    for r0 in range(0, x.shape[0], rows):
        block = x[r0 : r0 + rows].astype(np.float64)
        np.arctan2(G * block, block + b, out=raw[r0 : r0 + rows])
    return raw


def vevid_lite(plane: np.ndarray, params: LiteParams, norm: str = "per_frame") -> np.ndarray:
    """Closed-form enhancement of one plane.

    norm="per_frame" rescales by the frame's own min and max; norm="fixed"
    divides by atan(G) so a given sample value always maps to the same
    output, which keeps flat video segments from flickering.  Returns a
    float64 plane in [0, 1].
    """
    if norm not in NORM_MODES:
        raise ParamError(f"norm must be one of {NORM_MODES}, got {norm!r}")
    raw = _raw_tone(plane, params.G, params.b)
    if norm == "fixed":
        np.divide(raw, math.atan(params.G), out=raw)
        return raw
    return _normalize_into(raw)


def tone_normalized_f32(plane: np.ndarray, params: LiteParams, norm: str = "per_frame") -> np.ndarray:
    """vevid_lite followed by a float32 cast, in one blocked sweep.

    This is the frame-pipeline form: every element-wise operation and its
    order matches vevid_lite(...).astype(float32) exactly, so the result
    is bit-identical; blocking only keeps each row block cache-resident
    from tone evaluation through the final cast.
    """
    if norm not in NORM_MODES:
        raise ParamError(f"norm must be one of {NORM_MODES}, got {norm!r}")
    x = np.asarray(plane)
    if x.ndim != 2 or not x.flags.c_contiguous or x.size <= _CHUNK_SAMPLES:
        return vevid_lite(x, params, norm).astype(np.float32)

    raw = np.empty(x.shape, dtype=np.float64)
    rows = max(1, _CHUNK_SAMPLES // x.shape[1])
    mn = math.inf
    mx = -math.inf
    for r0 in range(0, x.shape[0], rows):
        block = x[r0 : r0 + rows].astype(np.float64)
        out_block = raw[r0 : r0 + rows]
        np.arctan2(params.G * block, block + params.b, out=out_block)
        mn = min(mn, out_block.min())
        mx = max(mx, out_block.max())

    out = np.empty(x.shape, dtype=np.float32)
    if norm == "fixed":
        scale = math.atan(params.G)
        for r0 in range(0, x.shape[0], rows):
            out[r0 : r0 + rows] = raw[r0 : r0 + rows] / scale
        return out
    span = mx - mn
    if span <= DEGENERATE_RANGE:
        warnings.warn(
            f"plane span {span:.3e} is degenerate; output forced to zero",
            DegenerateRangeWarning,
            stacklevel=2,
        )
        out.fill(0)
        return out
    for r0 in range(0, x.shape[0], rows):
        block = raw[r0 : r0 + rows] - mn
        np.divide(block, span, out=block)
        out[r0 : r0 + rows] = block
    return out


@dataclass(frozen=True)
class ToneLut:
    """256-entry float32 table of the normalized tone curve.

    entries[0] is 0.0 and entries[255] is 1.0; entries are strictly
    increasing.  Normalization is taken over the table itself, so applying
    the LUT matches per-frame normalization only for frames that span the
    full 8-bit range.
    """

    entries: np.ndarray
    G: float
    b: float

    def __post_init__(self):
        if self.entries.shape != (256,) or self.entries.dtype != np.float32:
            raise ValueError("entries must be a float32 array of length 256")


def build_tone_lut(params: LiteParams) -> ToneLut:
    """Tabulate the tone curve on the 256 uint8 lattice points."""
    x = np.arange(256, dtype=np.float64) / 255.0
    raw = lite_tone_curve(x, params.G, params.b)
    entries = (raw - raw[0]) / (raw[-1] - raw[0])
    return ToneLut(entries=entries.astype(np.float32), G=params.G, b=params.b)


def apply_tone_lut(plane: np.ndarray, lut: ToneLut) -> np.ndarray:
    """Map a uint8 plane through the table; returns float32."""
    if plane.dtype != np.uint8:
        raise ValueError("apply_tone_lut expects a uint8 plane")
    return lut.entries[plane]
