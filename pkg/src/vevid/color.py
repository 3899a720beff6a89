"""RGB images, hexcone HSV planes, and the conversions between them.

Hue is stored in [0, 1) (degrees / 360) and is 0 for achromatic pixels;
saturation is 0 when value is 0.  The uint8 -> HSV -> uint8 round trip is
bit-exact because float32 carries the 8-bit lattice without loss and
quantization is round-half-up.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .exceptions import GeometryError


def _require_rgb(pixels) -> np.ndarray:
    if not isinstance(pixels, np.ndarray) or pixels.dtype != np.uint8:
        raise ValueError("pixels must be a uint8 ndarray")
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise GeometryError(f"expected shape (H, W, 3), got {pixels.shape}")
    if pixels.shape[0] < 1 or pixels.shape[1] < 1:
        raise GeometryError("image must have at least one pixel")
    return np.ascontiguousarray(pixels)


def _require_plane(plane, name: str) -> np.ndarray:
    if not isinstance(plane, np.ndarray) or plane.dtype != np.float32:
        raise ValueError(f"{name} must be a float32 ndarray")
    if plane.ndim != 2:
        raise GeometryError(f"{name} must be 2-D, got shape {plane.shape}")
    return np.ascontiguousarray(plane)


@dataclass(frozen=True)
class RgbImage:
    """An 8-bit RGB image, shape (height, width, 3).

    Treated as immutable once constructed; operations return new images.
    """

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _require_rgb(self.pixels))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def zeros(cls, width: int, height: int) -> "RgbImage":
        return cls(np.zeros((height, width, 3), dtype=np.uint8))


@dataclass(frozen=True)
class HsvImage:
    """Float32 hexcone planes h, s, v of a common (height, width) shape."""

    h: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h", _require_plane(self.h, "h"))
        object.__setattr__(self, "s", _require_plane(self.s, "s"))
        object.__setattr__(self, "v", _require_plane(self.v, "v"))
        if self.h.shape != self.s.shape or self.h.shape != self.v.shape:
            raise GeometryError("h, s, v planes must share one shape")

    @property
    def width(self) -> int:
        return self.h.shape[1]

    @property
    def height(self) -> int:
        return self.h.shape[0]

    def check_ranges(self) -> None:
        """Raise ValueError unless h in [0, 1) and s, v in [0, 1]."""
        if self.h.size == 0:
            return
        if self.h.min() < 0 or self.h.max() >= 1:
            raise ValueError("h plane out of [0, 1)")
        for name, plane in (("s", self.s), ("v", self.v)):
            if plane.min() < 0 or plane.max() > 1:
                raise ValueError(f"{name} plane out of [0, 1]")


def rgb_to_hsv(image: RgbImage) -> HsvImage:
    """Decompose an RGB image into hexcone h, s, v planes."""
    h, s, v = backend.kernels.rgb_to_hsv_planes(image.pixels)
    return HsvImage(h=h, s=s, v=v)


def hsv_to_rgb(image: HsvImage, *, check_ranges: bool = True) -> RgbImage:
    """Reassemble an RGB image from hexcone planes.

    check_ranges=False skips the domain scan for planes that are already
    known to be in range (internal pipeline use).
    """
    if check_ranges:
        image.check_ranges()
    return RgbImage(backend.kernels.hsv_to_rgb_u8(image.h, image.s, image.v))


def plane_to_u8(plane: np.ndarray) -> np.ndarray:
    """Quantize a unit-range plane to uint8 with round-half-up.

    0.5 maps to 128.  Values outside [0, 1] are rejected.
    """
    if plane.size and (plane.min() < 0 or plane.max() > 1):
        raise ValueError("plane values must lie in [0, 1]")
    return np.floor(plane.astype(np.float64) * 255.0 + 0.5).astype(np.uint8)


def u8_to_unit(plane: np.ndarray) -> np.ndarray:
    """Map a uint8 plane to float32 values in [0, 1] (divide by 255)."""
    return plane.astype(np.float32) / np.float32(255.0)
