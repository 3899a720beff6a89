"""Minimal image I/O.

Binary PPM (P6, maxval 255) is handled directly so the package can move
raw frames without a codec; PNG and anything else Pillow understands go
through Pillow.  Input format is sniffed from content, output format is
chosen by file suffix.
"""

import io
from pathlib import Path

import numpy as np
from PIL import Image

from .color import RgbImage
from .exceptions import ImageFormatError

PPM_SUFFIXES = {".ppm", ".pnm"}
PNG_SUFFIXES = {".png"}


def image_from_ppm_bytes(data: bytes) -> RgbImage:
    """Decode a binary PPM (P6) byte string."""
    if not data.startswith(b"P6"):
        raise ImageFormatError("not a binary PPM (missing P6 magic)")
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise ImageFormatError("unterminated comment in PPM header")
            pos = nl + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(f"bad PPM header token {token!r}")
        fields.append(int(token))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ImageFormatError("PPM header not terminated by whitespace")
    pos += 1
    width, height, maxval = fields
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 PPM is supported, got {maxval}")
    if width < 1 or height < 1:
        raise ImageFormatError(f"bad PPM dimensions {width}x{height}")
    need = width * height * 3
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise ImageFormatError(
            f"truncated PPM pixel data: got {len(payload)} of {need} bytes"
        )
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return RgbImage(arr.copy())


def image_to_ppm_bytes(image: RgbImage) -> bytes:
    header = b"P6\n%d %d\n255\n" % (image.width, image.height)
    return header + image.pixels.tobytes()


def _decode_with_pillow(data: bytes) -> RgbImage:
    try:
        with Image.open(io.BytesIO(data)) as im:
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except Exception as exc:
        raise ImageFormatError(f"cannot decode image: {exc}") from exc
    return RgbImage(arr)


def read_image(path) -> RgbImage:
    """Load an RGB image from a PPM or Pillow-readable file.

    Raises OSError for I/O failures and ImageFormatError for data that
    cannot be decoded.
    """
    data = Path(path).read_bytes()
    if data.startswith(b"P6"):
        return image_from_ppm_bytes(data)
    return _decode_with_pillow(data)


def write_image(path, image: RgbImage) -> None:
    """Write an RGB image as PPM (.ppm/.pnm) or PNG (.png) by suffix."""
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix in PPM_SUFFIXES:
        p.write_bytes(image_to_ppm_bytes(image))
    elif suffix in PNG_SUFFIXES:
        Image.fromarray(image.pixels, mode="RGB").save(p, format="PNG")
    else:
        raise ImageFormatError(
            f"unsupported output suffix {suffix!r} (use .ppm, .pnm, or .png)"
        )
