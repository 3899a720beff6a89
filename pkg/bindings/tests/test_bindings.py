"""Boundary validation and CLI parity for the array bindings."""

import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import numpy as np
import pytest

from vevid import DegenerateRangeWarning, ParamError, RgbImage, default_params, enhance
from vevid.imageio import image_from_ppm_bytes, image_to_ppm_bytes
from vevid_ml import BufferLayoutError, defaults, enhance_array


def _corpus():
    root = resources.files("vevid").joinpath("assets/corpus")
    entries = sorted(root.iterdir(), key=lambda e: e.name)
    return [(e.name, image_from_ppm_bytes(e.read_bytes())) for e in entries]


@pytest.fixture(scope="session")
def corpus():
    images = _corpus()
    assert len(images) >= 10
    return images


@pytest.fixture
def rng():
    return np.random.default_rng(99)


class TestBoundary:
    def test_non_buffer_object_rejected(self):
        with pytest.raises(BufferLayoutError, match="buffer"):
            enhance_array([[1, 2, 3]])

    def test_wrong_sample_width_rejected(self, rng):
        pixels = rng.random((8, 8, 3)).astype(np.float32)
        with pytest.raises(BufferLayoutError, match="8-bit"):
            enhance_array(pixels)

    def test_flat_bytes_rejected(self):
        with pytest.raises(BufferLayoutError, match="dimension"):
            enhance_array(b"\x00" * 12)

    def test_wrong_channel_count_rejected(self, rng):
        rgba = rng.integers(0, 256, size=(8, 8, 4), dtype=np.uint8)
        with pytest.raises(BufferLayoutError, match="channels"):
            enhance_array(rgba)

    def test_noncontiguous_rejected(self, rng):
        wide = rng.integers(0, 256, size=(8, 16, 3), dtype=np.uint8)
        with pytest.raises(BufferLayoutError, match="contiguous"):
            enhance_array(wide[:, ::2, :])

    def test_bad_params_raise_param_error(self, rng):
        pixels = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
        with pytest.raises(ParamError):
            enhance_array(pixels, G=-1.0)
        with pytest.raises(ParamError):
            enhance_array(pixels, mode="sepia")


class TestEnhanceArray:
    def test_black_frame_stays_black(self):
        black = np.zeros((2, 2, 3), dtype=np.uint8)
        for lite in (False, True):
            with pytest.warns(DegenerateRangeWarning):
                out = enhance_array(black, lite=lite)
            assert out.shape == (2, 2, 3) and out.dtype == np.uint8
            assert not out.any()

    def test_returns_new_unaliased_buffer(self, rng):
        pixels = rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)
        before = pixels.copy()
        out = enhance_array(pixels)
        assert out is not pixels and out.base is not pixels
        assert np.array_equal(pixels, before)

    def test_matches_library_enhance(self, rng):
        pixels = rng.integers(0, 256, size=(32, 48, 3), dtype=np.uint8)
        for mode in ("lowlight", "color"):
            for lite in (False, True):
                params = default_params(mode).with_overrides(
                    {"path": "lite" if lite else "full"}
                )
                expect = enhance(RgbImage(pixels), params).pixels
                got = enhance_array(pixels, mode=mode, lite=lite)
                assert np.array_equal(got, expect), (mode, lite)

    def test_accepts_plain_memoryview(self, rng):
        pixels = rng.integers(0, 256, size=(12, 10, 3), dtype=np.uint8)
        view = memoryview(pixels.tobytes()).cast("B", (12, 10, 3))
        assert np.array_equal(enhance_array(view), enhance_array(pixels))

    def test_scalar_overrides_change_output(self, rng):
        pixels = rng.integers(0, 200, size=(16, 16, 3), dtype=np.uint8)
        a = enhance_array(pixels, lite=True)
        b = enhance_array(pixels, lite=True, G=4.0)
        assert not np.array_equal(a, b)

    def test_concurrent_calls_match_serial(self, rng):
        frames = [
            rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
            for _ in range(16)
        ]
        serial = [enhance_array(f, lite=(i % 2 == 0)) for i, f in enumerate(frames)]
        with ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(
                pool.map(
                    lambda args: enhance_array(args[1], lite=(args[0] % 2 == 0)),
                    enumerate(frames),
                )
            )
        for got, expect in zip(parallel, serial):
            assert np.array_equal(got, expect)


class TestDefaults:
    def test_mirrors_default_params(self):
        for mode in ("lowlight", "color"):
            d = defaults(mode)
            p = default_params(mode)
            assert d == {
                "S": p.S, "T": p.T, "G": p.G, "b": p.b,
                "mode": mode, "lite": p.path == "lite",
            }

    def test_unknown_mode_rejected(self):
        with pytest.raises(ParamError):
            defaults("sepia")


class TestGoldenCliParity:
    @pytest.mark.parametrize("mode", ["lowlight", "color"])
    @pytest.mark.parametrize("lite", [False, True], ids=["full", "lite"])
    def test_bit_identical_to_cli_on_corpus(self, corpus, tmp_path, mode, lite):
        for name, image in corpus:
            src = tmp_path / name
            dst = tmp_path / f"out-{name}"
            src.write_bytes(image_to_ppm_bytes(image))
            argv = [sys.executable, "-m", "vevid", "enhance",
                    str(src), str(dst), "--mode", mode]
            if lite:
                argv.append("--lite")
            proc = subprocess.run(argv, capture_output=True)
            assert proc.returncode == 0, proc.stderr.decode()

            out = enhance_array(image.pixels, mode=mode, lite=lite)
            assert image_to_ppm_bytes(RgbImage(out)) == dst.read_bytes(), (
                name, mode, lite,
            )
