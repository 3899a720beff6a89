"""In-process image enhancement over raw array buffers.

Preprocessing hook for detection pipelines: hand any 8-bit interleaved
RGB buffer to enhance_array and feed the result to the model.  Input is
accepted through the buffer protocol, so NumPy arrays, memoryviews, and
anything else exposing a C-contiguous (height, width, 3) byte layout
work without copies or framework adapters.

Output is bit-identical to the vevid CLI run with the same parameters
on the same pixels.  The core is stateless and the hot per-pixel loops
drop the interpreter lock, so concurrent calls from multiple threads
are safe.
"""

import numpy as np

from vevid import RgbImage, default_params, enhance

__all__ = ["BufferLayoutError", "defaults", "enhance_array"]
__version__ = "0.1.0"


class BufferLayoutError(ValueError):
    """Raised when an input buffer is not 8-bit, (H, W, 3), C-contiguous."""


def _validated_pixels(buffer) -> np.ndarray:
    try:
        view = memoryview(buffer)
    except TypeError as exc:
        raise BufferLayoutError(
            f"object of type {type(buffer).__name__!s} does not expose a buffer"
        ) from exc
    if view.format != "B":
        raise BufferLayoutError(
            f"buffer must hold 8-bit unsigned samples, got format {view.format!r}"
        )
    if view.ndim != 3:
        raise BufferLayoutError(
            f"buffer must be (height, width, 3), got {view.ndim} dimension(s)"
        )
    if view.shape[2] != 3:
        raise BufferLayoutError(
            f"buffer must have 3 interleaved channels, got {view.shape[2]}"
        )
    if not view.c_contiguous:
        # a silent relayout here would break the zero-copy contract
        raise BufferLayoutError("buffer must be C-contiguous row-major")
    return np.asarray(view)


def defaults(mode: str = "lowlight") -> dict:
    """Packaged default parameters for a mode, keyed like enhance_array."""
    params = default_params(mode)
    return {
        "S": params.S,
        "T": params.T,
        "G": params.G,
        "b": params.b,
        "mode": params.mode,
        "lite": params.path == "lite",
    }


def enhance_array(
    buffer,
    S: float | None = None,
    T: float | None = None,
    G: float | None = None,
    b: float | None = None,
    mode: str = "lowlight",
    lite: bool = False,
) -> np.ndarray:
    """Enhance one 8-bit RGB frame; returns a new (H, W, 3) uint8 array.

    Parameters left as None take the packaged defaults for the mode.
    lite selects the closed-form path instead of the spectral one.  The
    input buffer is read, never written or reshaped.
    """
    pixels = _validated_pixels(buffer)
    overrides = {"path": "lite" if lite else "full"}
    for key, value in (("S", S), ("T", T), ("G", G), ("b", b)):
        if value is not None:
            overrides[key] = float(value)
    params = default_params(mode).with_overrides(overrides)
    return enhance(RgbImage(pixels), params).pixels
