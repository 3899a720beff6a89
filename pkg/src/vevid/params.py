"""Enhancement parameters and packaged defaults."""

import json
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .exceptions import ParamError
from .spectral import _check_positive

MODES = ("lowlight", "color")
PATHS = ("full", "lite")
NORMS = ("per_frame", "fixed")

# keys a config mapping or CLI overlay may set
PARAM_KEYS = ("S", "T", "G", "b", "mode", "path", "norm")


@dataclass(frozen=True)
class EnhanceParams:
    """Everything one call to enhance() needs.

    S and T shape the spectral phase kernel (full path only), G and b feed
    the phase read-out on both paths.  mode picks the plane being enhanced
    (lowlight -> v, color -> s), path picks full spectral vs closed form,
    norm picks the output normalization (fixed is lite-only).
    """

    S: float
    T: float
    G: float
    b: float
    mode: str = "lowlight"
    path: str = "full"
    norm: str = "per_frame"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParamError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.path not in PATHS:
            raise ParamError(f"path must be one of {PATHS}, got {self.path!r}")
        if self.norm not in NORMS:
            raise ParamError(f"norm must be one of {NORMS}, got {self.norm!r}")
        object.__setattr__(self, "S", _check_positive("S", self.S, allow_zero=True))
        object.__setattr__(self, "T", _check_positive("T", self.T))
        object.__setattr__(self, "G", _check_positive("G", self.G))
        allow_zero_b = self.path == "full"
        object.__setattr__(self, "b", _check_positive("b", self.b, allow_zero=allow_zero_b))
        if self.norm == "fixed" and self.path != "lite":
            raise ParamError("norm='fixed' applies to the lite path only")

    def with_overrides(self, overrides: Mapping) -> "EnhanceParams":
        """Return a copy with the given parameter keys replaced."""
        unknown = set(overrides) - set(PARAM_KEYS)
        if unknown:
            raise ParamError(f"unknown parameter keys: {sorted(unknown)}")
        return replace(self, **dict(overrides))


@lru_cache(maxsize=1)
def builtin_defaults() -> dict:
    """The packaged default parameter table (parsed once)."""
    text = resources.files("vevid").joinpath("assets/defaults.json").read_text()
    return json.loads(text)


def default_params(mode: str = "lowlight") -> EnhanceParams:
    """Calibrated defaults for a mode, as shipped in the package config."""
    if mode not in MODES:
        raise ParamError(f"mode must be one of {MODES}, got {mode!r}")
    entry = builtin_defaults()["modes"][mode]
    return EnhanceParams(
        S=entry["S"],
        T=entry["T"],
        G=entry["G"],
        b=entry["b"],
        mode=mode,
        path=entry.get("path", "full"),
        norm=entry.get("norm", "per_frame"),
    )
