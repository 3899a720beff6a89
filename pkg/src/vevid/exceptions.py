"""Exception types shared across the package."""


class ParamError(ValueError):
    """Raised when an enhancement parameter is outside its valid domain."""


class GeometryError(ValueError):
    """Raised when an array's shape does not match the declared geometry."""


class ImageFormatError(ValueError):
    """Raised when encoded image data cannot be decoded."""
