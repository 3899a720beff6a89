"""End-to-end enhancement of RGB images and frame streams."""

import math
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import backend
from .color import HsvImage, RgbImage, hsv_to_rgb, rgb_to_hsv, u8_to_unit
from .exceptions import GeometryError, ParamError
from .lite import LiteParams, tone_normalized_f32
from .params import EnhanceParams
from .spectral import DEGENERATE_RANGE, DegenerateRangeWarning, vevid_full


def _enhanced_plane(plane: np.ndarray, params: EnhanceParams) -> np.ndarray:
    if params.path == "full":
        return vevid_full(plane, params).astype(np.float32)
    return tone_normalized_f32(plane, LiteParams(params.G, params.b), norm=params.norm)


def _lite_level_table(v_old: np.ndarray, params: EnhanceParams) -> np.ndarray:
    """Pointwise-path output value for each of the 256 uint8 levels.

    A uint8 plane takes at most 256 distinct values, so the tone curve is
    evaluated once per value.  The per-value chain (uint8 -> float32 unit
    range -> float64 -> atan2 -> normalize -> float32) uses the same
    element-wise operations as tone_normalized_f32 on the expanded plane,
    and normalization stats are taken over the values actually present in
    v_old, so gathering the table is bit-identical to that route.  A
    degenerate span warns and returns the all-zero table.
    """
    levels = u8_to_unit(np.arange(256, dtype=np.uint8)).astype(np.float64)
    raw = np.arctan2(params.G * levels, levels + params.b)

    if params.norm == "fixed":
        return (raw / math.atan(params.G)).astype(np.float32)

    # the curve is strictly increasing, so the extremes of the values
    # present sit at the extreme levels present
    mn = raw[int(v_old.min())]
    span = raw[int(v_old.max())] - mn
    if span <= DEGENERATE_RANGE:
        warnings.warn(
            f"plane span {span:.3e} is degenerate; output forced to zero",
            DegenerateRangeWarning,
            stacklevel=3,
        )
        return np.zeros(256, dtype=np.float32)
    shifted = raw - mn
    np.divide(shifted, span, out=shifted)
    return shifted.astype(np.float32)


def _lite_plane_from_u8(v_old: np.ndarray, params: EnhanceParams) -> np.ndarray:
    """Pointwise-path output plane for a uint8 source plane."""
    return _lite_level_table(v_old, params)[v_old]


def _rescale_table(table: np.ndarray) -> np.ndarray:
    """(256, 256) byte table for scale_rgb_by_table.

    Entry [v, c] replays the per-pixel float32 chain of scale_rgb_by_v
    on v_new = table[v_old]: vn255 = v_new * 255, k = vn255 / v, output
    clamp(floor(c * k + 0.5)).  Row 0 is the quantized gray
    floor(vn255 + 0.5) that level-0 pixels take; the whole row is filled
    so the gather needs no branch.
    """
    vn255 = table * np.float32(255.0)
    levels = np.arange(256, dtype=np.float32)
    levels[0] = 1.0
    k = vn255 / levels
    chan = np.arange(256, dtype=np.float32)
    out = np.floor(chan[None, :] * k[:, None] + np.float32(0.5))
    out[0, :] = np.floor(vn255[0] + np.float32(0.5))
    return np.clip(out, 0, 255).astype(np.uint8)


def enhance_hsv(image: HsvImage, params: EnhanceParams) -> HsvImage:
    """Enhance one plane of an HSV image, carrying the others through.

    lowlight mode replaces v, color mode replaces s; the untouched planes
    of the result are the input's own arrays.
    """
    if params.mode == "lowlight":
        return HsvImage(h=image.h, s=image.s, v=_enhanced_plane(image.v, params))
    return HsvImage(h=image.h, s=_enhanced_plane(image.s, params), v=image.v)


def enhance(image: RgbImage, params: EnhanceParams) -> RgbImage:
    """Enhance an RGB image.

    For lowlight mode only the hexcone v plane changes, and a pixel with
    fixed h and s is a fixed ratio of channel values, so the result is
    computed by rescaling each pixel from its old channel maximum to the
    enhanced one.  Color mode changes s, which mixes channels nonlinearly,
    so it goes through the full HSV round trip.
    """
    if params.mode == "lowlight":
        v_old = backend.kernels.rgb_max(image.pixels)
        if params.path == "lite":
            # the new value depends only on the old level, so the rescale
            # is a byte-table gather with no intermediate plane
            table = _rescale_table(_lite_level_table(v_old, params))
            return RgbImage(
                backend.kernels.scale_rgb_by_table(image.pixels, v_old, table)
            )
        v_new = _enhanced_plane(u8_to_unit(v_old), params)
        return RgbImage(backend.kernels.scale_rgb_by_v(image.pixels, v_old, v_new))
    hsv = rgb_to_hsv(image)
    return hsv_to_rgb(enhance_hsv(hsv, params), check_ranges=False)


@dataclass
class FrameStream:
    """A lazily consumed sequence of (height, width, 3) uint8 frames."""

    width: int
    height: int
    frames: Iterable[np.ndarray]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.frames)


def _check_frame(frame, width: int, height: int) -> None:
    if not isinstance(frame, np.ndarray) or frame.dtype != np.uint8:
        raise GeometryError("frames must be uint8 ndarrays")
    if frame.shape != (height, width, 3):
        raise GeometryError(
            f"frame shape {frame.shape} does not match stream geometry "
            f"({height}, {width}, 3)"
        )


def _frames_serial(stream: FrameStream, params: EnhanceParams) -> Iterator[np.ndarray]:
    for frame in stream:
        _check_frame(frame, stream.width, stream.height)
        yield enhance(RgbImage(frame), params).pixels


def _frames_parallel(
    stream: FrameStream, params: EnhanceParams, workers: int
) -> Iterator[np.ndarray]:
    # bounded window of in-flight frames, drained in submission order
    def work(frame: np.ndarray) -> np.ndarray:
        return enhance(RgbImage(frame), params).pixels

    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = deque()
        for frame in stream:
            _check_frame(frame, stream.width, stream.height)
            pending.append(pool.submit(work, frame))
            if len(pending) >= workers + 2:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def enhance_stream(
    stream: FrameStream, params: EnhanceParams, workers: int = 1
) -> FrameStream:
    """Enhance every frame of a stream, preserving order and geometry.

    Frames are processed independently, so the output for a given frame is
    byte-identical to enhancing it alone, for any worker count.  The phase
    kernel is computed once per (geometry, S, T) and reused across frames.
    """
    workers = int(workers)
    if workers < 1:
        raise ParamError(f"workers must be >= 1, got {workers}")
    if workers == 1:
        frames = _frames_serial(stream, params)
    else:
        frames = _frames_parallel(stream, params, workers)
    return FrameStream(width=stream.width, height=stream.height, frames=frames)
