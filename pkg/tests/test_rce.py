from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorerase import (
    AugmentationRecord,
    Image,
    RceConfig,
    Rect,
    RegionParams,
    apply_rce,
    local_transform,
    sample_decision,
    to_grayscale,
)
from colorerase.rng import MASK64, RngStream

from _support import random_image

seeds = st.integers(min_value=0, max_value=MASK64)

FORCE_IDENTITY = RceConfig(p_r=0.0)
FORCE_GLOBAL = RceConfig(p_r=1.0, p_g=1.0)
FORCE_LOCAL = RceConfig(p_r=1.0, p_g=0.0)


def _rect_mask(img: Image, rect: Rect) -> np.ndarray:
    mask = np.zeros((img.height, img.width), dtype=bool)
    mask[rect.y0 : rect.y0 + rect.h, rect.x0 : rect.x0 + rect.w] = True
    return mask


class TestConfig:
    def test_defaults(self):
        cfg = RceConfig()
        assert cfg.p_r == 0.40
        assert cfg.p_g == 0.15
        assert cfg.direction == "gray-on-color"
        assert cfg.region == RegionParams()

    def test_validation(self):
        with pytest.raises(ValueError):
            RceConfig(p_r=1.5)
        with pytest.raises(ValueError):
            RceConfig(p_g=-0.1)
        with pytest.raises(ValueError):
            RceConfig(direction="sideways")


class TestRecord:
    def test_rect_iff_local(self):
        with pytest.raises(ValueError):
            AugmentationRecord("global", Rect(0, 0, 1, 1), (0.1, 0.2), 0)
        with pytest.raises(ValueError):
            AugmentationRecord("local", None, (0.1, 0.2), 0)

    def test_draw_counts(self):
        AugmentationRecord("identity", None, (0.9,), 0)
        AugmentationRecord("global", None, (0.1, 0.05), 0)
        with pytest.raises(ValueError):
            AugmentationRecord("identity", None, (0.9, 0.1), 0)
        with pytest.raises(ValueError):
            AugmentationRecord("global", None, (0.1,), 0)

    def test_unknown_branch(self):
        with pytest.raises(ValueError):
            AugmentationRecord("mystery", None, (0.1,), 0)


class TestLocalTransform:
    def test_patch_in_rect_rest_untouched(self):
        img = random_image(51, 24, 18)
        gray = to_grayscale(img)
        rect = Rect(5, 3, 10, 9)
        out = local_transform(img, gray, rect)
        mask = _rect_mask(img, rect)
        assert np.array_equal(out.pixels[mask], gray.pixels[mask])
        assert np.array_equal(out.pixels[~mask], img.pixels[~mask])

    def test_full_rect_is_whole_donor(self):
        img = random_image(52, 9, 7)
        gray = to_grayscale(img)
        assert local_transform(img, gray, Rect.full(9, 7)) == gray

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            local_transform(
                random_image(53, 8, 8), random_image(54, 8, 9), Rect(0, 0, 1, 1)
            )

    def test_rect_out_of_bounds(self):
        img = random_image(55, 8, 8)
        with pytest.raises(ValueError):
            local_transform(img, to_grayscale(img), Rect(6, 6, 3, 3))

    def test_operands_not_mutated(self):
        img = random_image(56, 10, 10)
        gray = to_grayscale(img)
        before_img, before_gray = img.to_array(), gray.to_array()
        local_transform(img, gray, Rect(1, 1, 4, 4))
        assert np.array_equal(img.pixels, before_img)
        assert np.array_equal(gray.pixels, before_gray)


class TestDispatch:
    def test_worked_global_example(self):
        # 2x2 color image; global erase replaces each pixel with its
        # round-half-up luma triple, (200,100,0) exercising the .5 case.
        arr = np.array(
            [[[10, 20, 30], [40, 50, 60]], [[70, 80, 90], [200, 100, 0]]],
            dtype=np.uint8,
        )
        out, record = apply_rce(Image(arr), FORCE_GLOBAL, RngStream.from_seed(3))
        assert record.branch == "global"
        assert out.pixel(0, 0) == (18, 18, 18)
        assert out.pixel(1, 0) == (48, 48, 48)
        assert out.pixel(0, 1) == (78, 78, 78)
        assert out.pixel(1, 1) == (119, 119, 119)

    @given(seeds)
    def test_identity_forced(self, seed):
        img = random_image(60, 16, 12)
        out, record = apply_rce(img, FORCE_IDENTITY, RngStream.from_seed(seed))
        assert record.branch == "identity"
        assert out == img
        assert len(record.draws) == 1
        assert record.stream_seed == seed

    @given(seeds)
    def test_global_forced(self, seed):
        img = random_image(61, 16, 12)
        out, record = apply_rce(img, FORCE_GLOBAL, RngStream.from_seed(seed))
        assert record.branch == "global"
        assert out == to_grayscale(img)
        assert len(record.draws) == 2

    @given(seeds)
    def test_local_forced_gray_patch(self, seed):
        img = random_image(62, 32, 20)
        out, record = apply_rce(img, FORCE_LOCAL, RngStream.from_seed(seed))
        assert record.branch == "local"  # p_g=0 and a 32x20 canvas always fits
        mask = _rect_mask(img, record.rect)
        assert np.array_equal(out.pixels[mask], to_grayscale(img).pixels[mask])
        assert np.array_equal(out.pixels[~mask], img.pixels[~mask])

    @given(seeds)
    def test_local_nofit_passes_through(self, seed):
        img = Image.filled(1, 1, (250, 10, 60))
        out, record = apply_rce(img, FORCE_LOCAL, RngStream.from_seed(seed))
        assert record.branch == "local_nofit"
        assert record.rect is None
        assert out == img

    @given(seeds)
    def test_direction_color_on_gray(self, seed):
        img = random_image(63, 32, 20)
        cfg = RceConfig(p_r=1.0, p_g=0.0, direction="color-on-gray")
        out, record = apply_rce(img, cfg, RngStream.from_seed(seed))
        assert record.branch == "local"
        mask = _rect_mask(img, record.rect)
        assert np.array_equal(out.pixels[mask], img.pixels[mask])
        assert np.array_equal(out.pixels[~mask], to_grayscale(img).pixels[~mask])

    def test_directions_share_draws(self):
        # Same seed, both directions: identical gates and rect.
        img = random_image(64, 32, 20)
        _, rec_a = apply_rce(img, FORCE_LOCAL, RngStream.from_seed(77))
        cfg = RceConfig(p_r=1.0, p_g=0.0, direction="color-on-gray")
        _, rec_b = apply_rce(img, cfg, RngStream.from_seed(77))
        assert rec_a.rect == rec_b.rect
        assert rec_a.draws == rec_b.draws

    @given(seeds)
    def test_output_pixels_original_or_gray(self, seed):
        img = random_image(65, 24, 16)
        out, _ = apply_rce(img, RceConfig(), RngStream.from_seed(seed))
        gray = to_grayscale(img)
        matches_orig = np.all(out.pixels == img.pixels, axis=2)
        matches_gray = np.all(out.pixels == gray.pixels, axis=2)
        assert np.all(matches_orig | matches_gray)
        assert (out.width, out.height) == (img.width, img.height)

    @given(seeds)
    def test_grayscale_input_fixed_point(self, seed):
        img = to_grayscale(random_image(66, 20, 14))
        for cfg in (FORCE_IDENTITY, FORCE_GLOBAL, FORCE_LOCAL):
            out, _ = apply_rce(img, cfg, RngStream.from_seed(seed))
            assert out == img

    def test_sample_decision_agrees_with_apply(self):
        img = random_image(67, 28, 22)
        cfg = RceConfig()
        for seed in range(200):
            branch, rect, draws = sample_decision(
                img.width, img.height, cfg, RngStream.from_seed(seed)
            )
            _, record = apply_rce(img, cfg, RngStream.from_seed(seed))
            assert (branch, rect, draws) == (record.branch, record.rect, record.draws)

    def test_gate_comparisons(self):
        # p1 >= p_r passes through, p2 <= p_g goes global; both inclusive.
        branch, _, draws = sample_decision(8, 8, RceConfig(p_r=0.5), RngStream.from_seed(101))
        p1 = draws[0]
        assert (branch == "identity") == (p1 >= 0.5)
        # A p_r just above the drawn p1 flips the gate.
        eps_cfg = RceConfig(p_r=min(1.0, p1 + 1e-9), p_g=1.0)
        branch2, _, _ = sample_decision(8, 8, eps_cfg, RngStream.from_seed(101))
        assert branch2 == "global"

    def test_deterministic_output_bytes(self):
        img = random_image(68, 30, 30)
        a, _ = apply_rce(img, RceConfig(), RngStream.from_seed(5))
        b, _ = apply_rce(img, RceConfig(), RngStream.from_seed(5))
        assert a.tobytes() == b.tobytes()

    def test_requires_seeded_stream(self):
        img = random_image(69, 8, 8)
        bare = RngStream((1, 2, 3, 4))
        with pytest.raises(ValueError):
            apply_rce(img, RceConfig(), bare)
