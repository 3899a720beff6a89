"""Frequency grid, phase kernel, propagation, and phase detection."""

import math

import numpy as np
import pytest

from vevid import (
    ComplexField,
    DegenerateRangeWarning,
    GeometryError,
    ParamError,
    default_params,
    detect_phase,
    make_frequency_grid,
    make_phase_kernel,
    normalize,
    phase_kernel,
    propagate,
    u8_to_unit,
    vevid_full,
)
from vevid.spectral import _normalize_into, kernel_cache_clear, kernel_cache_info

from oracles import bin_frequency, naive_dft2, naive_idft2, reference_enhanced_plane

PARAM_TRIPLES = [  # (S, T, b)
    (0.3, 2e-4, 0.16),
    (0.1, 1e-3, 0.10),
    (0.5, 5e-4, 0.25),
    (1.0, 1e-2, 0.05),
]


def _grid(width, height):
    return make_frequency_grid(width, height)


class TestFrequencyGrid:
    def test_even_axis_layout(self):
        assert _grid(4, 1).km.tolist() == [0.0, 0.25, -0.5, -0.25]

    def test_single_bin(self):
        assert _grid(1, 1).km.tolist() == [0.0]

    def test_odd_axis_layout(self):
        assert _grid(5, 1).km.tolist() == [0.0, 0.2, 0.4, -0.4, -0.2]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 16, 33])
    def test_matches_bin_formula(self, n):
        grid = _grid(n, n)
        expect = [bin_frequency(i, n) for i in range(n)]
        assert grid.km.tolist() == expect
        assert grid.kn.tolist() == expect

    def test_half_open_range(self):
        for n in (2, 3, 8, 9):
            grid = _grid(n, n)
            assert grid.km.min() >= -0.5 and grid.km.max() < 0.5

    def test_rejects_empty_axis(self):
        with pytest.raises(ParamError):
            make_frequency_grid(0, 4)

    def test_frequencies_read_only(self):
        grid = _grid(4, 4)
        with pytest.raises(ValueError):
            grid.km[0] = 1.0


class TestPhaseKernel:
    def test_dc_value_is_strength(self):
        kernel = make_phase_kernel(_grid(6, 4), S=0.7, T=0.01)
        assert kernel.phi[0, 0] == 0.7

    def test_zero_strength(self):
        kernel = make_phase_kernel(_grid(5, 5), S=0.0, T=0.01)
        assert not kernel.phi.any()

    def test_corner_value(self):
        kernel = make_phase_kernel(_grid(4, 4), S=1.0, T=0.01)
        assert kernel.phi[2, 2] == pytest.approx(math.exp(-50.0), rel=1e-12)

    def test_bounded_by_strength(self):
        kernel = make_phase_kernel(_grid(16, 12), S=0.4, T=3e-4)
        assert kernel.phi.min() >= 0.0
        assert kernel.phi.max() == 0.4

    @pytest.mark.parametrize("width,height", [(8, 8), (7, 5), (6, 9)])
    def test_even_symmetry_under_index_wrap(self, width, height):
        kernel = make_phase_kernel(_grid(width, height), S=0.3, T=2e-4)
        rows = (-np.arange(height)) % height
        cols = (-np.arange(width)) % width
        assert np.array_equal(kernel.phi, kernel.phi[np.ix_(rows, cols)])

    def test_matches_reference_phase(self):
        from oracles import reference_phase

        kernel = make_phase_kernel(_grid(9, 6), S=0.25, T=1e-3)
        assert np.abs(kernel.phi - reference_phase(9, 6, 0.25, 1e-3)).max() < 1e-12

    def test_rejects_bad_variance(self):
        for T in (0.0, -1.0, float("nan")):
            with pytest.raises(ParamError):
                make_phase_kernel(_grid(4, 4), S=0.3, T=T)

    def test_rejects_negative_strength(self):
        with pytest.raises(ParamError):
            make_phase_kernel(_grid(4, 4), S=-0.1, T=0.01)

    def test_propagator_unit_modulus_and_memoized(self):
        kernel = make_phase_kernel(_grid(8, 8), S=0.9, T=1e-3)
        prop = kernel.propagator
        assert np.abs(np.abs(prop) - 1.0).max() < 1e-12
        assert kernel.propagator is prop


class TestKernelCache:
    def test_same_key_same_object(self):
        kernel_cache_clear()
        a = phase_kernel(32, 24, 0.3, 2e-4)
        b = phase_kernel(32, 24, 0.3, 2e-4)
        assert a is b
        assert kernel_cache_info().hits >= 1

    def test_cached_result_matches_fresh(self, rng):
        plane = rng.random((24, 32))
        cached = propagate(plane, phase_kernel(32, 24, 0.3, 2e-4), 0.16)
        fresh = propagate(plane, make_phase_kernel(_grid(32, 24), 0.3, 2e-4), 0.16)
        assert np.array_equal(cached.values, fresh.values)


class TestPropagate:
    def test_zero_strength_is_identity_with_bias(self, rng):
        plane = rng.random((6, 7))
        field = propagate(plane, make_phase_kernel(_grid(7, 6), 0.0, 0.01), b=0.2)
        assert np.array_equal(field.re, plane + 0.2)
        assert not field.im.any()

    @pytest.mark.parametrize("c,S", [(0.0, 0.3), (0.5, 0.3), (1.0, 1.2)])
    def test_constant_plane_closed_form(self, c, S):
        b = 0.16
        plane = np.full((8, 10), c)
        field = propagate(plane, make_phase_kernel(_grid(10, 8), S, 1e-3), b=b)
        assert np.abs(field.re - (c + b) * math.cos(S)).max() < 1e-9
        assert np.abs(field.im - (-(c + b) * math.sin(S))).max() < 1e-9

    @pytest.mark.parametrize("S,T,b", PARAM_TRIPLES)
    def test_matches_naive_transform_pipeline(self, rng, S, T, b):
        from oracles import reference_phase

        plane = rng.random((8, 8))
        field = propagate(plane, make_phase_kernel(_grid(8, 8), S, T), b=b)
        spectrum = naive_dft2(plane + b) * np.exp(-1j * reference_phase(8, 8, S, T))
        expect = naive_idft2(spectrum)
        assert np.abs(field.values - expect).max() < 1e-5

    def test_energy_conserved(self, rng):
        for S, T, b in PARAM_TRIPLES:
            plane = rng.random((32, 48))
            field = propagate(plane, make_phase_kernel(_grid(48, 32), S, T), b=b)
            before = ((plane + b) ** 2).sum()
            after = (np.abs(field.values) ** 2).sum()
            assert abs(after - before) / before < 1e-6

    def test_component_transforms_are_real(self, rng):
        # phi is even-symmetric, so each propagator component applied to a
        # real plane's spectrum inverts to a real plane; the output field's
        # re and im are exactly those two transforms
        plane = rng.random((16, 16))
        kernel = make_phase_kernel(_grid(16, 16), 0.3, 2e-4)
        spectrum = np.fft.fft2(plane + 0.16)
        cos_part = np.fft.ifft2(np.cos(kernel.phi) * spectrum)
        sin_part = np.fft.ifft2(np.sin(kernel.phi) * spectrum)
        assert np.abs(cos_part.imag).max() < 1e-6
        assert np.abs(sin_part.imag).max() < 1e-6
        field = propagate(plane, kernel, b=0.16)
        assert np.abs(field.re - cos_part.real).max() < 1e-9
        assert np.abs(field.im - (-sin_part.real)).max() < 1e-9

    def test_geometry_mismatch_rejected(self):
        kernel = make_phase_kernel(_grid(8, 8), 0.3, 1e-3)
        with pytest.raises(GeometryError):
            propagate(np.zeros((4, 4)), kernel, b=0.1)
        with pytest.raises(GeometryError):
            propagate(np.zeros(64), kernel, b=0.1)

    def test_negative_bias_rejected(self):
        kernel = make_phase_kernel(_grid(4, 4), 0.3, 1e-3)
        with pytest.raises(ParamError):
            propagate(np.zeros((4, 4)), kernel, b=-0.1)


class TestDetectPhase:
    def test_real_field_has_zero_phase(self):
        field = ComplexField(np.full((3, 3), 2.0 + 0.0j))
        assert not detect_phase(field, G=1.4).any()

    def test_unit_diagonal(self):
        field = ComplexField(np.full((2, 2), 1.0 + 1.0j))
        assert detect_phase(field, G=1.0)[0, 0] == pytest.approx(math.pi / 4, rel=1e-12)

    def test_zero_field_defined(self):
        field = ComplexField(np.zeros((2, 2), dtype=np.complex128))
        assert not detect_phase(field, G=2.0).any()

    def test_constant_plane_uniform_angle(self):
        S, G, b, c = 0.3, 1.4, 0.16, 0.4
        plane = np.full((6, 6), c)
        field = propagate(plane, make_phase_kernel(_grid(6, 6), S, 1e-3), b=b)
        angle = detect_phase(field, G)
        expect = -math.atan(G * math.tan(S))
        assert np.abs(angle - expect).max() < 1e-9

    def test_range(self, rng):
        values = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        angle = detect_phase(ComplexField(values), G=3.0)
        assert angle.min() > -math.pi and angle.max() <= math.pi

    def test_rejects_bad_gain(self):
        field = ComplexField(np.zeros((2, 2), dtype=np.complex128))
        for G in (0.0, -1.0, float("inf")):
            with pytest.raises(ParamError):
                detect_phase(field, G)


class TestNormalize:
    def test_affine_map(self):
        out = normalize(np.array([[-1.0, 0.0, 1.0]]))
        assert out.tolist() == [[0.0, 0.5, 1.0]]

    def test_constant_plane_degenerates_to_zeros(self):
        with pytest.warns(DegenerateRangeWarning):
            out = normalize(np.full((4, 4), 3.7))
        assert not out.any()

    def test_span_below_threshold_degenerates(self):
        plane = np.full((4, 4), 0.5)
        plane[0, 0] += 1e-12
        with pytest.warns(DegenerateRangeWarning):
            assert not normalize(plane).any()

    def test_idempotent(self, rng):
        once = normalize(rng.standard_normal((12, 12)))
        assert np.array_equal(normalize(once), once)

    @pytest.mark.parametrize("shape", [(12, 12), (600, 600)])
    def test_in_place_variant_bit_identical(self, rng, shape):
        plane = rng.standard_normal(shape)
        expect = normalize(plane)
        got = _normalize_into(plane.copy())
        assert np.array_equal(got, expect)


class TestVevidFull:
    def test_zero_strength_degenerates(self, rng):
        params = default_params().with_overrides({"S": 0.0})
        with pytest.warns(DegenerateRangeWarning):
            out = vevid_full(rng.random((8, 8)), params)
        assert not out.any()

    def test_constant_input_degenerates(self):
        with pytest.warns(DegenerateRangeWarning):
            out = vevid_full(np.full((8, 8), 0.25), default_params())
        assert not out.any()

    def test_matches_oracle_pipeline(self, rng):
        params = default_params()
        plane = rng.random((16, 16))
        expect = reference_enhanced_plane(plane, params.S, params.T, params.G, params.b)
        assert np.abs(vevid_full(plane, params) - expect).max() < 1e-5

    def test_output_range(self, rng):
        out = vevid_full(rng.random((32, 24)), default_params())
        assert out.min() == 0.0 and out.max() == 1.0

    def test_rejects_non_2d(self):
        with pytest.raises(GeometryError):
            vevid_full(np.zeros(16), default_params())


class TestCorpusFieldStructure:
    def test_imaginary_part_created_real_part_kept(self, corpus):
        # moderate phase strength perturbs the real part less than the
        # imaginary content it creates, on every bundled image
        from vevid import rgb_to_hsv

        params = default_params()
        for name, image in corpus:
            v = rgb_to_hsv(image).v.astype(np.float64)
            kernel = phase_kernel(v.shape[1], v.shape[0], params.S, params.T)
            field = propagate(v, kernel, params.b)
            re_drift = np.abs(field.re - (v + params.b)).max()
            im_size = np.abs(field.im).max()
            assert re_drift < im_size, name
