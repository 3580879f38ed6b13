import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sasaki_annulus import closed_forms as cf
from sasaki_annulus.errors import BoundarySingularity, ExcludedIndex, OutsideAnnulus
from sasaki_annulus.sphere import make_annulus

half_widths = st.floats(0.05, 1.55)


@given(half_widths, st.floats(-1.0, 1.0))
def test_minimizer_odd_symmetry(a0, frac):
    A = make_annulus(a0)
    a = frac * a0
    assert cf.minimizer_angle(a, A) + cf.minimizer_angle(-a, A) == pytest.approx(math.pi, abs=1e-12)


@given(half_widths)
def test_minimizer_boundary_values(a0):
    A = make_annulus(a0)
    assert cf.minimizer_angle(-a0, A) == pytest.approx(0.0, abs=1e-7)
    assert cf.minimizer_angle(a0, A) == pytest.approx(math.pi, abs=1e-7)
    assert cf.minimizer_angle(0.0, A) == pytest.approx(math.pi / 2, abs=1e-15)


@given(half_widths, st.floats(-0.99, 0.99))
def test_slope_matches_derivative(a0, frac):
    A = make_annulus(a0)
    a = frac * a0
    h = 1e-6 * a0
    fd = (cf.minimizer_angle(a + h, A) - cf.minimizer_angle(a - h, A)) / (2 * h)
    assert cf.minimizer_slope(a, A) == pytest.approx(fd, rel=1e-5)


def test_slope_in_u_is_regular_at_boundary():
    A = make_annulus(1.0)
    F = cf.minimizer_field(A)
    assert F.partial_u(math.pi / 2) == pytest.approx(math.cos(1.0) / (1 - math.sin(1.0) ** 2))


def test_minimizer_errors():
    A = make_annulus(0.5)
    with pytest.raises(OutsideAnnulus):
        cf.minimizer_angle(0.6, A)
    with pytest.raises(BoundarySingularity):
        cf.minimizer_slope(0.5, A)


def test_perturbation_keeps_boundary_values():
    A = make_annulus(0.8)
    F = cf.perturbed_minimizer(A, 0.1)
    assert F.angle(-0.8) == pytest.approx(0.0, abs=1e-7)
    assert F.angle(0.8) == pytest.approx(math.pi, abs=1e-7)


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-12])
def test_agm_ellipe_against_mpmath(m):
    assert cf.agm_ellipe(m) == pytest.approx(float(mpmath.ellipe(m)), rel=1e-14)


@pytest.mark.parametrize("k", [-3, -1, 1, 3, 4, 5, 10])
def test_ellipse_perimeter_against_mpmath(k):
    a, b = abs(k), abs(k - 2)
    big, small = max(a, b), min(a, b)
    exact = 4 * big * mpmath.ellipe(1 - mpmath.mpf(small) ** 2 / big ** 2)
    assert cf.ellipse_perimeter(k) == pytest.approx(float(exact), rel=1e-14)


@pytest.mark.parametrize("m", [-0.1, 1.0, 2.0])
def test_agm_ellipe_domain(m):
    with pytest.raises(ValueError):
        cf.agm_ellipe(m)


def test_k1_is_a_circle():
    assert cf.ellipse_perimeter(1) == pytest.approx(2 * math.pi, rel=1e-15)
    assert cf.ellipse_bound(1).bound == pytest.approx(2 * math.pi ** 2, rel=1e-15)


@pytest.mark.parametrize("k", [0, 2])
def test_excluded_classes(k):
    with pytest.raises(ExcludedIndex):
        cf.ellipse_perimeter(k)
    assert cf.bcj_bound(k) == pytest.approx(2 * math.pi ** 2)


@given(st.integers(-30, 30).filter(lambda k: k not in (0, 2)))
def test_ellipse_bound_refines_index_bound(k):
    bcj, bcgn = cf.reference_bounds(k)
    assert bcgn >= bcj - 1e-12


@given(st.integers(-30, 30).filter(lambda k: k not in (0, 2)))
def test_ellipse_bound_symmetric_in_index_pair(k):
    assert cf.ellipse_perimeter(k) == pytest.approx(cf.ellipse_perimeter(2 - k), rel=1e-15)


def test_vk_angle_formula():
    from sasaki_annulus.sphere import LatLon

    assert cf.vk_angle(3, LatLon(0.1, 1.0)) == pytest.approx(2.0 + math.pi / 2)
    F = cf.vk_field(3)
    assert np.allclose(F.partials(np.array([0.1, 0.2]), 1.0)[1], 2.0)


@pytest.mark.parametrize("k", [-1, 3, 4, 7])
def test_ellipse_perimeter_against_arc_length_quadrature(k):
    from sasaki_annulus.quadrature import gauss_legendre

    a, b = abs(k), abs(k - 2)
    length = gauss_legendre(lambda t: np.hypot(a * np.sin(t), b * np.cos(t)), 0.0, 2 * math.pi, panels=32)
    assert cf.ellipse_perimeter(k) == pytest.approx(length, rel=1e-12)
