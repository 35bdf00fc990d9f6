import numpy as np
import pytest

from geopaths import datasets


def test_semicircle_shape_and_radii(semicircle):
    assert semicircle.points.shape == (200, 2)
    raw = semicircle.raw()
    radii = np.linalg.norm(raw, axis=1)
    # sigma^2 = 0.01 noise keeps every sample near the unit circle
    assert np.max(np.abs(radii - 1.0)) < 0.6


def test_semicircle_noiseless_is_exact():
    ds = datasets.gen_semicircle(64, 0.0, seed=7)
    raw = ds.raw()
    radii = np.linalg.norm(raw, axis=1)
    assert np.max(np.abs(radii - 1.0)) < 1e-12
    assert np.all(raw[:, 1] >= 0.0)


def test_seed_determinism():
    a = datasets.gen_semicircle(50, 0.01, seed=9)
    b = datasets.gen_semicircle(50, 0.01, seed=9)
    c = datasets.gen_semicircle(50, 0.01, seed=10)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, c.points)


def test_standardize_is_idempotent(semicircle):
    pts, mean, scale = datasets.standardize(semicircle.points)
    assert np.max(np.abs(pts.mean(axis=0))) < 1e-12
    assert np.max(np.abs(pts.std(axis=0) - 1.0)) < 1e-12
    twice, mean2, scale2 = datasets.standardize(pts)
    assert np.max(np.abs(twice - pts)) < 1e-12
    assert np.max(np.abs(mean2)) < 1e-12 and np.max(np.abs(scale2 - 1.0)) < 1e-12
    with pytest.raises(ValueError):
        datasets.standardize(np.ones((5, 2)))


def test_curly_noiseless_geometry():
    ds = datasets.gen_curly(128, 0.0, seed=2)
    raw = ds.raw()
    # the lower half of the circle is folded up, so nothing sits below y=0
    assert np.min(raw[:, 1]) >= 0.0
    radii = np.linalg.norm(raw, axis=1)
    assert np.max(np.abs(radii - 1.0)) < 1e-12


def test_two_moons_noiseless_geometry():
    ds = datasets.gen_two_moons(300, 0.0, seed=4)
    raw = ds.raw()
    r_lower = np.linalg.norm(raw, axis=1)
    r_upper = np.linalg.norm(raw - np.array([1.0, 0.5]), axis=1)
    on_first = np.abs(r_lower - 1.0) < 1e-9
    on_second = np.abs(r_upper - 1.0) < 1e-9
    assert np.all(on_first | on_second)
    assert on_first.sum() > 50 and on_second.sum() > 50
    assert on_first.sum() + on_second.sum() == 300


def test_sphere_noiseless_geometry():
    ds = datasets.gen_sphere(150, 0.0, seed=3)
    raw = ds.raw()
    assert raw.shape == (150, 3)
    assert np.max(np.abs(np.linalg.norm(raw, axis=1) - 1.0)) < 1e-12
    upper = datasets.gen_sphere(150, 0.0, seed=3, upper_only=True)
    assert np.min(upper.raw()[:, 2]) >= 0.0


def test_embed_orthogonal_is_isometric():
    base = datasets.gen_semicircle(60, 0.0, seed=5)
    hi = datasets.embed_orthogonal(base, 7, noise_var=0.0, seed=11,
                                   restandardize=False)
    assert hi.points.shape == (60, 7)
    d_lo = np.linalg.norm(base.points[:, None] - base.points[None], axis=2)
    d_hi = np.linalg.norm(hi.points[:, None] - hi.points[None], axis=2)
    assert np.max(np.abs(d_lo - d_hi)) < 1e-12
    # the image stays a 2-dimensional affine subspace
    centered = hi.points - hi.points.mean(axis=0)
    assert np.linalg.matrix_rank(centered, tol=1e-9) == 2
    again = datasets.embed_orthogonal(base, 7, noise_var=0.0, seed=11,
                                      restandardize=False)
    assert np.array_equal(hi.points, again.points)


def test_embed_orthogonal_restandardized():
    base = datasets.gen_semicircle(60, 0.0, seed=5)
    hi = datasets.embed_orthogonal(base, 5, noise_var=0.0, seed=11)
    assert np.max(np.abs(hi.points.mean(axis=0))) < 1e-12
    assert np.max(np.abs(hi.points.std(axis=0) - 1.0)) < 1e-12
    # noise lands after restandardization, so columns only stay close to unit
    noisy = datasets.embed_orthogonal(base, 5, noise_var=0.01, seed=11)
    assert np.max(np.abs(noisy.points.std(axis=0) - 1.0)) < 0.1


def test_embed_dim_validation():
    base = datasets.gen_semicircle(10, 0.0, seed=1)
    with pytest.raises(ValueError):
        datasets.embed_orthogonal(base, 1, noise_var=0.0, seed=0)


def test_csv_roundtrip(tmp_path, semicircle):
    path = tmp_path / "points.csv"
    datasets.save_dataset_csv(semicircle, path, header=True)
    first = path.read_text().splitlines()[0]
    assert first == "x0,x1"
    back = datasets.load_dataset_csv(path, header=True)
    assert np.max(np.abs(back.points - semicircle.points)) == 0.0
    bare = tmp_path / "bare.csv"
    datasets.save_dataset_csv(semicircle, bare, header=False)
    back2 = datasets.load_dataset_csv(bare)
    assert np.max(np.abs(back2.points - semicircle.points)) == 0.0


def test_generator_validation():
    with pytest.raises(ValueError):
        datasets.gen_semicircle(0, 0.01, seed=1)
    base = datasets.gen_semicircle(10, 0.0, seed=1)
    with pytest.raises(ValueError):
        datasets.embed_orthogonal(base, 1, noise_var=0.0, seed=0)
