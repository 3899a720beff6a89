"""Enhance frames before handing them to an object detector.

The detector is supplied by you, as "module:callable" taking an
(H, W, 3) uint8 array and returning a sequence of detections.  Without
one the script still runs and reports brightness statistics, which is
enough to sanity-check the preprocessing stage alone.

    python preprocess_detect.py night.png --lite
    python preprocess_detect.py night.png --detector mymodels.yolo:detect
"""

import argparse
import importlib

from vevid import RgbImage
from vevid.imageio import read_image, write_image
from vevid_ml import defaults, enhance_array


def load_detector(spec: str):
    module_name, _, attr = spec.partition(":")
    if not attr:
        raise SystemExit(f"detector spec {spec!r} is not module:callable")
    return getattr(importlib.import_module(module_name), attr)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("image", help="input image (ppm or png)")
    parser.add_argument("--lite", action="store_true", help="closed-form path")
    parser.add_argument("--out", help="also write the enhanced image here")
    parser.add_argument(
        "--detector",
        help="module:callable run on both the raw and the enhanced frame",
    )
    args = parser.parse_args()

    raw = read_image(args.image).pixels
    enhanced = enhance_array(raw, lite=args.lite)
    used = {**defaults("lowlight"), "lite": args.lite}
    print("params:", " ".join(f"{k}={v}" for k, v in used.items()))
    print(f"mean brightness: raw {raw.mean():.1f} -> enhanced {enhanced.mean():.1f}")

    if args.out:
        write_image(args.out, RgbImage(enhanced))

    if args.detector:
        detect = load_detector(args.detector)
        before = detect(raw.copy())
        after = detect(enhanced)
        print(f"detections: raw {len(before)} -> enhanced {len(after)}")


if __name__ == "__main__":
    main()
