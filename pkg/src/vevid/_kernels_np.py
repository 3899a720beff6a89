"""NumPy implementations of the per-pixel kernels.

These are the fallback used when the compiled extension is unavailable.
Arithmetic is kept in float32 with the same operation order as the
compiled kernels so both backends produce identical bytes.
"""

import numpy as np

NAME = "numpy"

_F0 = np.float32(0.0)
_F_HALF = np.float32(0.5)
_F1 = np.float32(1.0)
_F2 = np.float32(2.0)
_F4 = np.float32(4.0)
_F6 = np.float32(6.0)
_F255 = np.float32(255.0)


def rgb_max(rgb: np.ndarray) -> np.ndarray:
    """Per-pixel channel maximum of an (H, W, 3) uint8 image."""
    return rgb.max(axis=2)


def rgb_to_hsv_planes(rgb: np.ndarray):
    """Split an (H, W, 3) uint8 image into float32 hexcone h, s, v planes.

    h is in [0, 1) with 0 for achromatic pixels, s and v are in [0, 1].
    """
    rgbf = rgb.astype(np.float32)
    r = rgbf[..., 0]
    g = rgbf[..., 1]
    b = rgbf[..., 2]
    maxc = np.max(rgbf, axis=2)
    minc = np.min(rgbf, axis=2)
    delta = maxc - minc

    v = maxc / _F255
    s = np.where(maxc > 0, delta / np.where(maxc > 0, maxc, _F1), _F0)
    s = s.astype(np.float32)

    safe = np.where(delta > 0, delta, _F1)
    hr = (g - b) / safe
    hr = np.where(hr < 0, hr + _F6, hr)
    hg = (b - r) / safe + _F2
    hb = (r - g) / safe + _F4
    hx = np.where(maxc == r, hr, np.where(maxc == g, hg, hb))
    h = np.where(delta > 0, hx / _F6, _F0).astype(np.float32)
    return h, s, v


def hsv_to_rgb_u8(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Map float32 hexcone planes back to an (H, W, 3) uint8 image.

    Channels are quantized with round-half-up and clamped to [0, 255].
    """
    hx = h * _F6
    sector_f = np.floor(hx)
    f = hx - sector_f
    sector = np.clip(sector_f.astype(np.int32), 0, 5)

    p = v * (_F1 - s)
    q = v * (_F1 - s * f)
    t = v * (_F1 - s * (_F1 - f))

    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])

    ach = s <= 0
    r = np.where(ach, v, r)
    g = np.where(ach, v, g)
    b = np.where(ach, v, b)

    out = np.stack([r, g, b], axis=-1)
    out = np.floor(out * _F255 + _F_HALF)
    return np.clip(out, 0, 255).astype(np.uint8)


def scale_rgb_by_v(rgb: np.ndarray, v_old: np.ndarray, v_new: np.ndarray) -> np.ndarray:
    """Rescale each pixel so its channel maximum moves from v_old to v_new.

    v_old is the uint8 channel maximum of rgb; v_new is a float32 plane in
    [0, 1].  Pixels with v_old == 0 carry no chroma and come back gray at
    the new level.  Equivalent to replacing the hexcone v plane while
    leaving h and s untouched, without the round trip.
    """
    vn255 = v_new * _F255
    gray = np.floor(vn255 + _F_HALF)
    nonzero = v_old > 0
    safe = np.where(nonzero, v_old.astype(np.float32), _F1)
    k = vn255 / safe
    scaled = np.floor(rgb.astype(np.float32) * k[..., None] + _F_HALF)
    out = np.where(nonzero[..., None], scaled, gray[..., None])
    return np.clip(out, 0, 255).astype(np.uint8)


def scale_rgb_by_table(
    rgb: np.ndarray, v_old: np.ndarray, table: np.ndarray
) -> np.ndarray:
    """scale_rgb_by_v when the new value depends only on the old level.

    table[v, c] is the output byte for a pixel whose channel maximum is v
    and whose channel value is c; row 0 is the gray for pixels with no
    signal.  The caller builds the table with the same float32 chain
    scale_rgb_by_v runs per pixel, so for v_new = f(v_old) the two
    kernels produce identical bytes while this one is a pure gather.
    """
    if table.shape != (256, 256) or table.dtype != np.uint8:
        raise ValueError("rescale table must be uint8 with shape (256, 256)")
    return table[v_old[..., None], rgb]
