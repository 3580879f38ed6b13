import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sasaki_annulus import closed_forms, fields
from sasaki_annulus.errors import GridFormatError, NonIntegralWinding, OutOfDomain
from sasaki_annulus.optimizer import profile_nodes
from sasaki_annulus.sphere import HALF_PI, LatLon, make_annulus

A = make_annulus(math.pi / 4)


@given(
    st.floats(0.0, 2 * math.pi),
    st.floats(-20, 20),
    st.floats(-20, 20),
    st.floats(-1.5, 1.5),
)
def test_curvature_form_equals_derivative_form(theta, t1, t2, alpha):
    g, d = fields.curvatures_from(theta, t1, t2, alpha)
    lhs = 1.0 + g * g + d * d
    rhs = 1.0 + (math.tan(alpha) + t1) ** 2 + t2 ** 2
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_constant_field_curvatures():
    # theta = pi/2: V = e2 (meridians, geodesics), V-perp = -e1 (parallels)
    F = closed_forms.constant_field()
    c = fields.geodesic_curvatures(F, LatLon(0.4, 1.0))
    assert c.gamma == pytest.approx(0.0, abs=1e-15)
    assert abs(c.delta) == pytest.approx(math.tan(0.4))


def test_directional_derivatives_of_vk():
    F = closed_forms.vk_field(3)
    d = fields.directional_derivatives(F, LatLon(0.3, 2.0))
    assert d.theta1 == pytest.approx(2.0 / math.cos(0.3))
    assert d.theta2 == 0.0


def test_eval_outside_domain_raises():
    F = closed_forms.minimizer_field(A)
    with pytest.raises(OutOfDomain):
        fields.eval_angle(F, LatLon(1.0, 0.0))


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 3, 4, 5, 7])
def test_indices_sum_to_two(k):
    F = closed_forms.vk_field(k)
    n, s = fields.poincare_index(F, "N", 1.4), fields.poincare_index(F, "s", -1.4)
    assert (n, s) == (k, 2 - k)


def test_index_independent_of_loop_latitude():
    F = closed_forms.vk_field(4)
    assert {fields.poincare_index(F, "N", lat) for lat in (0.2, 0.9, 1.5)} == {4}


def test_undersampled_loop_is_rejected():
    with pytest.raises(NonIntegralWinding):
        fields.loop_winding(np.array([0.0, 2.0, 4.0]))


def test_bad_pole_name():
    with pytest.raises(ValueError):
        fields.poincare_index(closed_forms.vk_field(1), "E", 1.0)


@given(st.lists(st.floats(-1.0, 1.0), min_size=2, max_size=40), st.integers(-3, 3))
def test_winding_counts_added_turns(steps, turns):
    base = np.concatenate([[0.0], np.cumsum(steps)])
    loop = np.concatenate([base, [base[0]]])
    ramp = np.linspace(0.0, 2 * math.pi * turns, loop.size)
    if np.max(np.abs(np.diff(loop + ramp))) > 1.5:
        return
    assert fields.loop_winding(loop + ramp) == pytest.approx(turns, abs=1e-9)


def test_boundary_report_minimizer_and_constant():
    good = fields.check_boundary_conditions(closed_forms.minimizer_field(A), A)
    assert good.passed and good.max_violation <= 1e-12
    bad = fields.check_boundary_conditions(closed_forms.constant_field(domain=A), A)
    assert bad.perpendicular_at_equator and not bad.tangent_at_boundaries and not bad.passed


def test_swapped_boundary_values_fail_opposition():
    F = closed_forms.minimizer_field(A)
    flipped = closed_forms.ClosedFormField(lambda a, b: math.pi - F.theta(a, b), F.d_alpha, None, A)
    r = fields.check_boundary_conditions(flipped, A)
    assert r.tangent_at_boundaries and not r.antipodal_opposition


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([math.pi / 6, math.pi / 4, math.pi / 3]))
def test_grid_field_reproduces_minimizer(a0):
    B = make_annulus(a0)
    nodes = profile_nodes(B, 399)
    G = fields.GridField(nodes, closed_forms.minimizer_angle(nodes, B), B)
    alphas = np.linspace(-0.9 * a0, 0.9 * a0, 101)
    assert np.max(np.abs(G.angle(alphas) - closed_forms.minimizer_angle(alphas, B))) <= 1e-6
    assert np.max(np.abs(G.partials(alphas)[0] - closed_forms.minimizer_slope(alphas, B))) <= 1e-6


def test_grid_field_few_samples_is_linear():
    G = fields.GridField([-A.alpha0, 0.0, A.alpha0], [0.0, HALF_PI, math.pi], A)
    assert G.angle(0.0) == pytest.approx(HALF_PI)


@pytest.mark.parametrize(
    "alphas,thetas",
    [
        ([0.0, 0.5], [0.0, 1.0]),  # missing lower boundary
        ([-A.alpha0, 0.2, 0.1, A.alpha0], [0, 1, 2, 3]),  # not increasing
        ([-A.alpha0, A.alpha0], [0.0, float("nan")]),
        ([-A.alpha0, 0.0, 1.0], [0.0, 1.0, 2.0]),  # outside the annulus
    ],
)
def test_grid_field_validation(alphas, thetas):
    with pytest.raises(GridFormatError):
        fields.GridField(alphas, thetas, A)


def test_grid_csv_round_trip(tmp_path):
    nodes = profile_nodes(A, 50)
    thetas = closed_forms.minimizer_angle(nodes, A)
    path = tmp_path / "profile.csv"
    fields.write_grid_csv(path, nodes, thetas)
    G = fields.load_grid_csv(path)
    assert G.domain.alpha0 == pytest.approx(A.alpha0, abs=1e-15)
    assert np.array_equal(G.alphas, nodes) and np.array_equal(G.thetas, thetas)


@pytest.mark.parametrize(
    "text",
    ["", "lat,theta\n0,1\n", "alpha,theta\n0.1,abc\n", "alpha,theta\n0.3,0\n", "alpha,theta\n-2,0\n2,3\n"],
)
def test_grid_csv_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(GridFormatError):
        fields.load_grid_csv(path)
