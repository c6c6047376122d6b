import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfdeblur.errors import WindowTooLarge
from gfdeblur.image_core import as_image, box_sum, centered_sq_norm, mean

from conftest import box_sum_bruteforce, rand_image, rand_int_image


def test_mean_constant():
    assert mean(np.full((4, 4), 5.0)) == 5.0


def test_mean_forced_arithmetic():
    assert mean(np.array([[0.0, 0.0], [0.0, 4.0]])) == 1.0


def test_mean_matches_naive_summation():
    img = rand_image(1)
    total = 0.0
    for row in img:
        for v in row:
            total += v
    expected = total / img.size
    assert abs(mean(img) - expected) <= 1e-12 * abs(expected)


def test_centered_sq_norm_constant_is_zero():
    assert centered_sq_norm(np.full((3, 5), 9.25)) == 0.0


def test_centered_sq_norm_small_case():
    assert centered_sq_norm(np.array([[0.0, 0.0], [0.0, 4.0]])) == pytest.approx(12.0)


def test_centered_sq_norm_matches_two_pass_oracle():
    img = rand_image(2, (32, 32))
    mu = sum(v for row in img for v in row) / img.size
    expected = sum((v - mu) ** 2 for row in img for v in row)
    assert centered_sq_norm(img) == pytest.approx(expected, rel=1e-10)


def test_box_sum_constant():
    for w in (1, 3, 5):
        out = box_sum(np.full((8, 8), 3.5), w)
        np.testing.assert_allclose(out, 3.5 * w * w, rtol=1e-12)


def test_box_sum_w1_identity():
    img = rand_image(3)
    np.testing.assert_array_equal(box_sum(img, 1), img)


def test_box_sum_matches_bruteforce_exactly():
    # Integer-valued intensities: both summation orders are exact.
    img = rand_int_image(4)
    np.testing.assert_array_equal(box_sum(img, 5), box_sum_bruteforce(img, 5))


def test_box_sum_rectangular():
    img = rand_int_image(5, (12, 20))
    np.testing.assert_array_equal(box_sum(img, 7), box_sum_bruteforce(img, 7))


def test_box_sum_window_too_large():
    with pytest.raises(WindowTooLarge):
        box_sum(np.zeros((4, 4)), 5)


def test_box_sum_rejects_even_window():
    with pytest.raises(ValueError):
        box_sum(np.zeros((8, 8)), 4)


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    alpha=st.floats(-3, 3, allow_nan=False),
    beta=st.floats(-3, 3, allow_nan=False),
    w=st.sampled_from([1, 3, 5]),
)
def test_box_sum_linearity(seed, alpha, beta, w):
    a = rand_image(seed)
    b = rand_image(seed + 1)
    lhs = box_sum(alpha * a + beta * b, w)
    rhs = alpha * box_sum(a, w) + beta * box_sum(b, w)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-8)


def test_as_image_rejects_nan():
    with pytest.raises(ValueError):
        as_image(np.array([[1.0, np.nan]]))


def test_as_image_rejects_1d():
    with pytest.raises(ValueError):
        as_image(np.arange(4.0))
