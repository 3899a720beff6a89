# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels.

Operation order and float32 arithmetic mirror vevid._kernels_np exactly;
the two backends must produce identical bytes for the same input.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floorf

cnp.import_array()

NAME = "compiled"


cdef inline cnp.uint8_t _clamp_u8(float q) nogil:
    if q < 0:
        return 0
    if q > 255:
        return 255
    return <cnp.uint8_t>q


cdef inline cnp.uint8_t _quant(float c) nogil:
    # round-half-up quantization of a unit-range sample
    return _clamp_u8(floorf(c * <float>255.0 + <float>0.5))


def rgb_max(const cnp.uint8_t[:, :, ::1] rgb not None):
    """Per-pixel channel maximum of an (H, W, 3) uint8 image."""
    cdef Py_ssize_t hh = rgb.shape[0]
    cdef Py_ssize_t ww = rgb.shape[1]
    out = np.empty((hh, ww), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] o = out
    cdef Py_ssize_t i, j
    cdef cnp.uint8_t m, c
    with nogil:
        for i in range(hh):
            for j in range(ww):
                m = rgb[i, j, 0]
                c = rgb[i, j, 1]
                if c > m:
                    m = c
                c = rgb[i, j, 2]
                if c > m:
                    m = c
                o[i, j] = m
    return out


def rgb_to_hsv_planes(const cnp.uint8_t[:, :, ::1] rgb not None):
    """Split an (H, W, 3) uint8 image into float32 hexcone h, s, v planes."""
    cdef Py_ssize_t hh = rgb.shape[0]
    cdef Py_ssize_t ww = rgb.shape[1]
    h_arr = np.empty((hh, ww), dtype=np.float32)
    s_arr = np.empty((hh, ww), dtype=np.float32)
    v_arr = np.empty((hh, ww), dtype=np.float32)
    cdef float[:, ::1] ho = h_arr
    cdef float[:, ::1] so = s_arr
    cdef float[:, ::1] vo = v_arr
    cdef Py_ssize_t i, j
    cdef int r, g, b, maxc, minc
    cdef float fmax, fdelta, hx
    with nogil:
        for i in range(hh):
            for j in range(ww):
                r = rgb[i, j, 0]
                g = rgb[i, j, 1]
                b = rgb[i, j, 2]
                maxc = r
                if g > maxc:
                    maxc = g
                if b > maxc:
                    maxc = b
                minc = r
                if g < minc:
                    minc = g
                if b < minc:
                    minc = b
                fmax = <float>maxc
                vo[i, j] = fmax / <float>255.0
                if maxc == minc:
                    ho[i, j] = 0
                    so[i, j] = 0
                else:
                    fdelta = <float>(maxc - minc)
                    so[i, j] = fdelta / fmax
                    if maxc == r:
                        hx = (<float>(g - b)) / fdelta
                        if hx < 0:
                            hx = hx + <float>6.0
                    elif maxc == g:
                        hx = (<float>(b - r)) / fdelta + <float>2.0
                    else:
                        hx = (<float>(r - g)) / fdelta + <float>4.0
                    ho[i, j] = hx / <float>6.0
    return h_arr, s_arr, v_arr


def hsv_to_rgb_u8(const float[:, ::1] h not None,
                  const float[:, ::1] s not None,
                  const float[:, ::1] v not None):
    """Map float32 hexcone planes back to an (H, W, 3) uint8 image."""
    cdef Py_ssize_t hh = h.shape[0]
    cdef Py_ssize_t ww = h.shape[1]
    out = np.empty((hh, ww, 3), dtype=np.uint8)
    cdef cnp.uint8_t[:, :, ::1] o = out
    cdef Py_ssize_t i, j
    cdef float vv, ss, hx, sector_f, f, p, q, t, fr, fg, fb
    cdef int sector
    with nogil:
        for i in range(hh):
            for j in range(ww):
                vv = v[i, j]
                ss = s[i, j]
                if ss <= 0:
                    fr = vv
                    fg = vv
                    fb = vv
                else:
                    hx = h[i, j] * <float>6.0
                    sector_f = floorf(hx)
                    f = hx - sector_f
                    sector = <int>sector_f
                    if sector < 0:
                        sector = 0
                    if sector > 5:
                        sector = 5
                    p = vv * (<float>1.0 - ss)
                    q = vv * (<float>1.0 - ss * f)
                    t = vv * (<float>1.0 - ss * (<float>1.0 - f))
                    if sector == 0:
                        fr = vv
                        fg = t
                        fb = p
                    elif sector == 1:
                        fr = q
                        fg = vv
                        fb = p
                    elif sector == 2:
                        fr = p
                        fg = vv
                        fb = t
                    elif sector == 3:
                        fr = p
                        fg = q
                        fb = vv
                    elif sector == 4:
                        fr = t
                        fg = p
                        fb = vv
                    else:
                        fr = vv
                        fg = p
                        fb = q
                o[i, j, 0] = _quant(fr)
                o[i, j, 1] = _quant(fg)
                o[i, j, 2] = _quant(fb)
    return out


def scale_rgb_by_v(const cnp.uint8_t[:, :, ::1] rgb not None,
                   const cnp.uint8_t[:, ::1] v_old not None,
                   const float[:, ::1] v_new not None):
    """Rescale each pixel so its channel maximum moves from v_old to v_new."""
    cdef Py_ssize_t hh = rgb.shape[0]
    cdef Py_ssize_t ww = rgb.shape[1]
    out = np.empty((hh, ww, 3), dtype=np.uint8)
    cdef cnp.uint8_t[:, :, ::1] o = out
    cdef Py_ssize_t i, j
    cdef cnp.uint8_t vo8, g8
    cdef float vn, k
    with nogil:
        for i in range(hh):
            for j in range(ww):
                vn = v_new[i, j] * <float>255.0
                vo8 = v_old[i, j]
                if vo8 == 0:
                    g8 = _clamp_u8(floorf(vn + <float>0.5))
                    o[i, j, 0] = g8
                    o[i, j, 1] = g8
                    o[i, j, 2] = g8
                else:
                    k = vn / <float>vo8
                    o[i, j, 0] = _clamp_u8(floorf((<float>rgb[i, j, 0]) * k + <float>0.5))
                    o[i, j, 1] = _clamp_u8(floorf((<float>rgb[i, j, 1]) * k + <float>0.5))
                    o[i, j, 2] = _clamp_u8(floorf((<float>rgb[i, j, 2]) * k + <float>0.5))
    return out

def scale_rgb_by_table(const cnp.uint8_t[:, :, ::1] rgb not None,
                       const cnp.uint8_t[:, ::1] v_old not None,
                       const cnp.uint8_t[:, ::1] table not None):
    """scale_rgb_by_v when the new value depends only on the old level.

    table[v, c] is the output byte for a pixel whose channel maximum is v
    and whose channel value is c; row 0 is the gray for pixels with no
    signal.
    """
    cdef Py_ssize_t hh = rgb.shape[0]
    cdef Py_ssize_t ww = rgb.shape[1]
    out = np.empty((hh, ww, 3), dtype=np.uint8)
    cdef cnp.uint8_t[:, :, ::1] o = out
    cdef Py_ssize_t i, j
    cdef const cnp.uint8_t* row
    if table.shape[0] != 256 or table.shape[1] != 256:
        raise ValueError("rescale table must have shape (256, 256)")
    with nogil:
        for i in range(hh):
            for j in range(ww):
                row = &table[v_old[i, j], 0]
                o[i, j, 0] = row[rgb[i, j, 0]]
                o[i, j, 1] = row[rgb[i, j, 1]]
                o[i, j, 2] = row[rgb[i, j, 2]]
    return out
