import numpy as np
import pytest

import atw


def random_image(size, channels=3, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, (size, size, channels)).astype(np.float32)


@pytest.mark.parametrize("mode", ["vanilla", "multiscale"])
def test_identity_round_trip(mode):
    img = random_image(256)
    d = atw.decompose(img, mode=mode)
    assert d.mode == mode
    assert d.low.shape == (128, 128, 3)
    out, clamped = atw.reswarp(d.low, d, np.zeros((128, 128, 2), np.float32))
    assert out.shape == img.shape
    assert clamped == 0
    assert np.abs(out - img).max() <= 1e-5


def test_vanilla_and_multiscale_entry_points():
    img = random_image(256, seed=1)
    field = atw.mock_field("translate:2,1")
    d = atw.decompose(img, mode="vanilla")
    out, _ = atw.vanilla_reswarp(atw.warp(d.low, field), d.residual, field)
    assert out.shape == img.shape and np.all(np.abs(out) <= 1.0)

    levels, base = atw.build_laplacian_pyramid(img, 128)
    assert [lv.shape[0] for lv in levels] == [256]
    assert np.abs(atw.reconstruct_pyramid(levels, base) - img).max() <= 1e-5
    out, _ = atw.multiscale_reswarp(base, levels, base, field)
    assert out.shape == img.shape


def test_resampling_and_fields():
    img = np.full((4, 4, 1), 0.25, np.float32)
    assert np.allclose(atw.downsample_average(img, 2, 2), 0.25)
    for method in ("nearest", "bilinear", "bicubic"):
        assert np.allclose(atw.upsample(img, 8, 8, method), 0.25, atol=1e-6)

    field = atw.mock_field("translate:1,0")
    assert np.allclose(atw.upsample_field(field, 1024, 1024)[..., 0], 8.0)
    assert np.allclose(atw.interpolate_field(field, 0.5)[..., 0], 0.5)
    with pytest.raises(atw.AtwError):
        atw.interpolate_field(field, 1.5)


def test_errors_map_to_exception():
    with pytest.raises(atw.AtwError, match="NonDivisibleDimensions"):
        atw.decompose(random_image(130))
    with pytest.raises(atw.AtwError):
        atw.mock_field("spin:1")


def test_file_round_trips(tmp_path):
    field = atw.mock_field("radial:64,64,0.1")
    atw.save_field(field, tmp_path / "f.atwf")
    assert np.array_equal(atw.load_field(tmp_path / "f.atwf"), field)

    img = np.round((random_image(32, seed=2) + 1) * 127.5) / 127.5 - 1
    atw.save_image(img.astype(np.float32), tmp_path / "img.png")
    assert np.abs(atw.load_image(tmp_path / "img.png") - img).max() <= 1e-6


def test_coherency():
    a = np.zeros((4, 4, 1), np.float32)
    assert atw.metric_coherency([a, a + 1.0]) == pytest.approx(1.0)
