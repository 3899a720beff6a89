"""Full spectral enhancement path.

A real plane is lifted into the frequency domain, multiplied by a
low-pass Gaussian phase filter exp(-i * phi) with

    phi[kn, km] = S * exp(-(kn^2 + km^2) / T),

and brought back; the output value is the phase angle of the resulting
complex field, read through atan2 with gain G on the imaginary part, then
min-max normalized.  Frequencies follow the standard DFT bin layout
(bin 0 is DC, positive bins first, then negative), in cycles per sample.

All spectral arithmetic is float64/complex128; planes enter as float32 or
float64 and leave as float64.
"""

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import GeometryError, ParamError

# A plane whose span is at or below this is treated as constant.  The
# threshold sits far above FFT roundoff on a constant plane (~1e-13 at 4K)
# and far below the span of any real 8-bit content (>= ~1e-4), so constant
# inputs normalize to zeros instead of amplified noise.
DEGENERATE_RANGE = 1e-9

# row-block size (in samples) for in-place passes over large planes, so a
# block is still cache-resident when the next operation reads it back
_CHUNK_SAMPLES = 1 << 18


class DegenerateRangeWarning(UserWarning):
    """A plane's span was below the degenerate threshold during normalize."""


def _check_positive(name: str, value: float, allow_zero: bool = False) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParamError(f"{name} must be a number, got {value!r}") from None
    if not np.isfinite(value):
        raise ParamError(f"{name} must be finite, got {value!r}")
    if allow_zero:
        if value < 0:
            raise ParamError(f"{name} must be >= 0, got {value!r}")
    elif value <= 0:
        raise ParamError(f"{name} must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class FrequencyGrid:
    """Per-axis DFT sample frequencies for a width x height plane."""

    width: int
    height: int
    kn: np.ndarray  # row frequencies, length height
    km: np.ndarray  # column frequencies, length width


def _axis_frequencies(n: int) -> np.ndarray:
    # bins 0 .. ceil(n/2)-1 are non-negative, the rest wrap negative;
    # computed as exact quotients k/n (fftfreq's k * (1/n) is an ulp off)
    k = np.arange(n, dtype=np.float64)
    k[(n + 1) // 2 :] -= n
    return k / n


def make_frequency_grid(width: int, height: int) -> FrequencyGrid:
    width = int(width)
    height = int(height)
    if width < 1 or height < 1:
        raise ParamError("grid dimensions must be >= 1")
    kn = _axis_frequencies(height)
    km = _axis_frequencies(width)
    kn.setflags(write=False)
    km.setflags(write=False)
    return FrequencyGrid(width=width, height=height, kn=kn, km=km)


@dataclass(frozen=True)
class PhaseKernel:
    """Gaussian spectral phase phi and its propagator exp(-i * phi)."""

    width: int
    height: int
    S: float
    T: float
    phi: np.ndarray
    _propagator: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def propagator(self) -> np.ndarray:
        # materialized once; kernels are shared through the cache
        if self._propagator is None:
            prop = np.exp(-1j * self.phi)
            prop.setflags(write=False)
            object.__setattr__(self, "_propagator", prop)
        return self._propagator


def make_phase_kernel(grid: FrequencyGrid, S: float, T: float) -> PhaseKernel:
    """Build phi = S * exp(-(kn^2 + km^2) / T) on the given grid.

    S is the phase strength (radians at DC), T the spectral variance; S may
    be 0 (identity propagation), T must be positive.
    """
    S = _check_positive("S", S, allow_zero=True)
    T = _check_positive("T", T)
    kn2 = grid.kn * grid.kn
    km2 = grid.km * grid.km
    phi = S * np.exp(-(kn2[:, None] + km2[None, :]) / T)
    phi.setflags(write=False)
    return PhaseKernel(width=grid.width, height=grid.height, S=S, T=T, phi=phi)


@lru_cache(maxsize=8)
def _kernel_for(width: int, height: int, S: float, T: float) -> PhaseKernel:
    return make_phase_kernel(make_frequency_grid(width, height), S, T)


def phase_kernel(width: int, height: int, S: float, T: float) -> PhaseKernel:
    """Cached kernel lookup keyed by (width, height, S, T).

    Streams hitting the same geometry and parameters reuse one kernel;
    lookups are safe to issue from multiple threads.
    """
    return _kernel_for(int(width), int(height), float(S), float(T))


def kernel_cache_info():
    return _kernel_for.cache_info()


def kernel_cache_clear() -> None:
    _kernel_for.cache_clear()


@dataclass(frozen=True)
class ComplexField:
    """A complex128 field over the image plane."""

    values: np.ndarray

    @property
    def re(self) -> np.ndarray:
        return self.values.real

    @property
    def im(self) -> np.ndarray:
        return self.values.imag


def propagate(plane: np.ndarray, kernel: PhaseKernel, b: float) -> ComplexField:
    """Bias a plane by b and pass it through the spectral phase filter.

    The forward/inverse transform pair preserves total energy: the output
    field's squared magnitude sums to that of plane + b.  With S = 0 the
    propagator is identity and the field is returned with exact zero
    imaginary part, skipping the transform round trip.
    """
    if plane.ndim != 2:
        raise GeometryError(f"plane must be 2-D, got shape {plane.shape}")
    if plane.shape != (kernel.height, kernel.width):
        raise GeometryError(
            f"plane shape {plane.shape} does not match kernel geometry "
            f"({kernel.height}, {kernel.width})"
        )
    b = _check_positive("b", b, allow_zero=True)
    x = plane.astype(np.float64) + b
    if kernel.S == 0:
        return ComplexField(x.astype(np.complex128))
    spectrum = np.fft.fft2(x)
    spectrum *= kernel.propagator
    return ComplexField(np.fft.ifft2(spectrum))


def detect_phase(field: ComplexField, G: float) -> np.ndarray:
    """Phase angle atan2(G * Im, Re) of the field, in (-pi, pi]."""
    G = _check_positive("G", G)
    return np.arctan2(G * field.values.imag, field.values.real)


def normalize(plane: np.ndarray) -> np.ndarray:
    """Min-max normalize a plane to [0, 1].

    A span at or below DEGENERATE_RANGE yields an all-zero plane and a
    DegenerateRangeWarning rather than amplifying roundoff to full range.
    """
    mn = plane.min()
    span = plane.max() - mn
    if span <= DEGENERATE_RANGE:
        warnings.warn(
            f"plane span {span:.3e} is degenerate; output forced to zero",
            DegenerateRangeWarning,
            stacklevel=2,
        )
        return np.zeros_like(plane)
    return (plane - mn) / span


def _normalize_into(plane: np.ndarray) -> np.ndarray:
    """normalize() for a buffer the caller owns; works in place.

    Same element-wise operations (subtract, then divide), so the values
    are bit-identical to normalize(plane).  Large contiguous planes are
    rescaled in row blocks to keep each block cache-resident between the
    two passes.
    """
    mn = plane.min()
    span = plane.max() - mn
    if span <= DEGENERATE_RANGE:
        warnings.warn(
            f"plane span {span:.3e} is degenerate; output forced to zero",
            DegenerateRangeWarning,
            stacklevel=2,
        )
        plane.fill(0)
        return plane
    if plane.ndim == 2 and plane.flags.c_contiguous and plane.size > _CHUNK_SAMPLES:
        rows = max(1, _CHUNK_SAMPLES // plane.shape[1])
        for r0 in range(0, plane.shape[0], rows):
            block = plane[r0 : r0 + rows]
            np.subtract(block, mn, out=block)
            np.divide(block, span, out=block)
    else:
        np.subtract(plane, mn, out=plane)
        np.divide(plane, span, out=plane)
    return plane


def vevid_full(plane: np.ndarray, params) -> np.ndarray:
    """Full spectral enhancement of one plane with EnhanceParams.

    Returns a float64 plane in [0, 1].
    """
    if plane.ndim != 2:
        raise GeometryError(f"plane must be 2-D, got shape {plane.shape}")
    height, width = plane.shape
    kernel = phase_kernel(width, height, params.S, params.T)
    field = propagate(plane, kernel, params.b)
    return _normalize_into(detect_phase(field, params.G))
