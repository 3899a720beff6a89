"""Bundled low-light sample images.

Twelve small synthetic scenes used for calibration and testing; see
scripts/make_corpus.py in the source tree for how they are generated.
"""

from importlib import resources

from .color import RgbImage
from .imageio import image_from_ppm_bytes


def corpus_names() -> list[str]:
    root = resources.files("vevid").joinpath("assets/corpus")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".ppm"))


def load_corpus() -> list[tuple[str, RgbImage]]:
    root = resources.files("vevid").joinpath("assets/corpus")
    return [
        (name, image_from_ppm_bytes(root.joinpath(name).read_bytes()))
        for name in corpus_names()
    ]
