"""Low-light and color image enhancement.

A real image plane is lifted through a 2-D Gaussian spectral phase filter
and read back out as a phase angle (the full path), or mapped through the
equivalent closed-form tone curve (the lite path).  Both operate on one
hexcone HSV plane: v for low-light boosting, s for color richness.
"""

from .backend import active_backend, available_backends
from .color import HsvImage, RgbImage, hsv_to_rgb, plane_to_u8, rgb_to_hsv, u8_to_unit
from .exceptions import GeometryError, ImageFormatError, ParamError
from .lite import LiteParams, ToneLut, apply_tone_lut, build_tone_lut, lite_tone_curve, vevid_lite
from .params import EnhanceParams, default_params
from .pipeline import FrameStream, enhance, enhance_hsv, enhance_stream
from .spectral import (
    ComplexField,
    DegenerateRangeWarning,
    FrequencyGrid,
    PhaseKernel,
    detect_phase,
    make_frequency_grid,
    make_phase_kernel,
    normalize,
    phase_kernel,
    propagate,
    vevid_full,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexField",
    "DegenerateRangeWarning",
    "EnhanceParams",
    "FrameStream",
    "FrequencyGrid",
    "GeometryError",
    "HsvImage",
    "ImageFormatError",
    "LiteParams",
    "ParamError",
    "PhaseKernel",
    "RgbImage",
    "ToneLut",
    "active_backend",
    "apply_tone_lut",
    "available_backends",
    "build_tone_lut",
    "default_params",
    "detect_phase",
    "enhance",
    "enhance_hsv",
    "enhance_stream",
    "hsv_to_rgb",
    "lite_tone_curve",
    "make_frequency_grid",
    "make_phase_kernel",
    "normalize",
    "phase_kernel",
    "plane_to_u8",
    "propagate",
    "rgb_to_hsv",
    "u8_to_unit",
    "vevid_full",
    "vevid_lite",
    "__version__",
]
