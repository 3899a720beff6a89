"""Generate the bundled low-light sample corpus.

Writes deterministic synthetic scenes to src/vevid/assets/corpus/.  Each
scene is a smooth filtered-noise luminance field with soft hue and
saturation variation, optionally dotted with a few bright highlights.
Each image keeps its mean channel maximum below 0.3 so the set stays
genuinely low-light.  The images are committed; regeneration is only
needed when this recipe changes.

Run from the repository root with the package installed:

    python scripts/make_corpus.py
"""

from pathlib import Path

import numpy as np

from vevid.color import HsvImage, hsv_to_rgb

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "vevid" / "assets" / "corpus"


def smooth_field(rng: np.random.Generator, height: int, width: int, cutoff: float) -> np.ndarray:
    """Unit-range random field low-passed at `cutoff` cycles per sample."""
    noise = rng.standard_normal((height, width))
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    f2 = fy * fy + fx * fx
    response = 1.0 / (1.0 + (f2 / (cutoff * cutoff)) ** 2)
    field = np.fft.ifft2(np.fft.fft2(noise) * response).real
    field -= field.min()
    span = field.max()
    if span > 0:
        field /= span
    return field


# name, width, height, seed, v_lo, v_hi, gamma, hue_base, hue_span, s_lo, s_hi, highlights
SCENES = [
    ("lowlight_01", 128, 96, 101, 0.010, 0.42, 1.6, 0.58, 0.10, 0.15, 0.55, 0),
    ("lowlight_02", 160, 120, 102, 0.008, 0.30, 1.3, 0.08, 0.06, 0.25, 0.65, 0),
    ("lowlight_03", 144, 108, 103, 0.015, 0.50, 2.0, 0.33, 0.12, 0.10, 0.45, 5),
    ("lowlight_04", 120, 160, 104, 0.005, 0.35, 1.5, 0.66, 0.08, 0.20, 0.60, 0),
    ("lowlight_05", 128, 128, 105, 0.012, 0.45, 1.8, 0.12, 0.15, 0.30, 0.70, 3),
    ("lowlight_06", 160, 90, 106, 0.020, 0.38, 1.4, 0.50, 0.05, 0.05, 0.35, 0),
    ("lowlight_07", 96, 128, 107, 0.008, 0.55, 2.2, 0.75, 0.10, 0.25, 0.55, 8),
    ("lowlight_08", 152, 114, 108, 0.010, 0.32, 1.2, 0.25, 0.20, 0.15, 0.50, 0),
    ("lowlight_09", 128, 96, 109, 0.015, 0.48, 1.7, 0.90, 0.08, 0.20, 0.60, 4),
    ("lowlight_10", 140, 105, 110, 0.006, 0.40, 1.9, 0.42, 0.12, 0.10, 0.40, 0),
    ("lowlight_11", 132, 132, 111, 0.018, 0.36, 1.5, 0.03, 0.04, 0.35, 0.75, 2),
    ("lowlight_12", 156, 104, 112, 0.009, 0.44, 1.6, 0.60, 0.18, 0.15, 0.55, 6),
]


def make_scene(spec) -> tuple[str, np.ndarray]:
    name, width, height, seed, v_lo, v_hi, gamma, hue_base, hue_span, s_lo, s_hi, highlights = spec
    rng = np.random.default_rng(seed)

    v = smooth_field(rng, height, width, 0.04) ** gamma
    v = v_lo + (v_hi - v_lo) * v
    if highlights:
        ys = rng.integers(2, height - 2, size=highlights)
        xs = rng.integers(2, width - 2, size=highlights)
        for y, x in zip(ys, xs):
            v[y - 1 : y + 2, x - 1 : x + 2] = np.maximum(
                v[y - 1 : y + 2, x - 1 : x + 2], 0.55
            )
            v[y, x] = 0.80

    hue = (hue_base + hue_span * smooth_field(rng, height, width, 0.03)) % 1.0
    sat = s_lo + (s_hi - s_lo) * smooth_field(rng, height, width, 0.05)

    hsv = HsvImage(
        h=np.clip(hue, 0.0, 0.9999).astype(np.float32),
        s=np.clip(sat, 0.0, 1.0).astype(np.float32),
        v=np.clip(v, 0.0, 1.0).astype(np.float32),
    )
    return name, hsv_to_rgb(hsv).pixels


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for spec in SCENES:
        name, pixels = make_scene(spec)
        mean_v = pixels.max(axis=2).mean() / 255.0
        assert mean_v < 0.3, f"{name}: mean v {mean_v:.3f} is not low-light"
        header = b"P6\n%d %d\n255\n" % (pixels.shape[1], pixels.shape[0])
        (OUT_DIR / f"{name}.ppm").write_bytes(header + pixels.tobytes())
        print(f"{name}.ppm  {pixels.shape[1]}x{pixels.shape[0]}  mean_v={mean_v:.3f}")


if __name__ == "__main__":
    main()
