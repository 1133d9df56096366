import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitoct.geometry import ConformalPoint, LightconeSingularity, gegenbauer_H
from splitoct.oscillator import FockBasisState, FockVector, translations
from splitoct.scalars import ONE
from splitoct.vertex import (
    LOWEST_WEIGHT,
    VACUUM,
    DomainWarning,
    VertexSeriesConfig,
    bergman_norm_check,
    bra_vertex,
    component_laplacian_is_zero,
    matrix_element_gegenbauer,
    twopoint_series,
    vacuum_sandwich_check,
    vertex_state,
    vertex_suite,
)

EXACT4 = VertexSeriesConfig(n_max=4, backend="exact")

rationals = st.fractions(min_value=-2, max_value=2, max_denominator=5)


def random_rational_vector(rng, span=4, denom=5):
    return tuple(
        Fraction(rng.randint(-span, span), rng.randint(1, denom)) for _ in range(4)
    )


# ---- configuration ----------------------------------------------------


def test_config_rejects_negative_order():
    with pytest.raises(ValueError):
        VertexSeriesConfig(n_max=-1)


def test_config_rejects_unknown_backend():
    with pytest.raises(ValueError):
        VertexSeriesConfig(backend="symbolic")


def test_exact_backend_rejects_float_coordinates():
    with pytest.raises(TypeError):
        vertex_state((0.1, 0.0, 0.0, 0.0), VertexSeriesConfig(2, "exact"))
    with pytest.raises(TypeError):
        twopoint_series((0.1, 0, 0, 1.0), (0, 0, 0, 0), VertexSeriesConfig(2, "exact"))


# ---- the field on the vacuum ------------------------------------------


def test_zeroth_mode_sum_is_the_lowest_weight():
    state = vertex_state((Fraction(1, 3), 0, 0, Fraction(1, 2)), VertexSeriesConfig(0, "exact"))
    assert state.amplitudes == {LOWEST_WEIGHT: ONE}
    assert state.grades() == (Fraction(1),)


def test_first_term_at_unit_vector_is_a_translation():
    with pytest.warns(DomainWarning):
        state = vertex_state((1, 0, 0, 0), VertexSeriesConfig(1, "exact"))
    want = translations()[0].apply(LOWEST_WEIGHT)
    assert state.component(1).as_fock_vector() == want


def test_components_are_energy_graded():
    state = vertex_state((Fraction(1, 2), Fraction(1, 3), 0, Fraction(1, 5)), EXACT4)
    for n in range(5):
        component = state.component(n)
        assert not component.is_zero()
        assert all(s.energy == 1 + n for s in component.amplitudes)
        assert all(s.zero_mode == 1 for s in component.amplitudes)


def test_component_laplacians_vanish_exactly():
    assert all(component_laplacian_is_zero(n) for n in range(5))


def test_forward_tube_point_does_not_warn():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        vertex_state((Fraction(1, 4), 0, 0, Fraction(1, 3)), VertexSeriesConfig(2, "exact"))


def test_point_outside_the_tube_warns_but_computes():
    with pytest.warns(DomainWarning):
        state = vertex_state((1.5, 0.6j, 0, 0), VertexSeriesConfig(2))
    assert not state.component(2).is_zero()


# ---- bra side ----------------------------------------------------------


def test_bra_vertex_collapses_at_the_origin():
    assert bra_vertex((0, 0, 0, 0), EXACT4).amplitudes == {LOWEST_WEIGHT: ONE}


def test_bra_vertex_leading_grade_is_normalized():
    expanded = bra_vertex((Fraction(1, 2), 0, Fraction(1, 3), 0), EXACT4)
    assert expanded.component(0).amplitudes == {LOWEST_WEIGHT: ONE}
    assert len(expanded.grades()) == 5


# ---- matrix elements against the kernels --------------------------------


def test_matrix_element_order_zero_is_unity():
    fock, kernel = matrix_element_gegenbauer(0, (1, 0, 0, 0), (0, 2, 0, 0))
    assert fock == 1 and kernel == 1


def test_matrix_element_order_one_is_twice_the_dot():
    zb = (Fraction(1, 2), Fraction(1, 3), 0, Fraction(2))
    u = (Fraction(1, 5), Fraction(-1, 2), Fraction(1), Fraction(1, 4))
    fock, kernel = matrix_element_gegenbauer(1, zb, u)
    dot = sum(a * b for a, b in zip(zb, u))
    assert fock == 2 * dot
    assert kernel == 2 * dot


def test_matrix_elements_match_kernel_on_random_rationals():
    rng = random.Random(7)
    for n in range(2, 6):
        zb = random_rational_vector(rng)
        u = random_rational_vector(rng)
        fock, kernel = matrix_element_gegenbauer(n, zb, u)
        assert fock == kernel


@settings(max_examples=20, deadline=None)
@given(
    st.tuples(rationals, rationals, rationals, rationals),
    st.tuples(rationals, rationals, rationals, rationals),
    st.integers(min_value=0, max_value=3),
)
def test_matrix_element_identity_property(zb, u, n):
    fock, kernel = matrix_element_gegenbauer(n, zb, u)
    assert fock == kernel


def test_matrix_element_float_route_agrees():
    zb = (0.3 + 0.1j, -0.2, 0.05j, 1.0)
    u = (0.1, 0.2 - 0.1j, 0.4, -0.3)
    fock, kernel = matrix_element_gegenbauer(3, zb, u)
    assert abs(fock - kernel) < 1e-12


# ---- two-point series ----------------------------------------------------


def test_twopoint_series_matches_closed_form():
    z = ConformalPoint(0.1 + 0.05j, -0.2j, 0.15, 1.1 + 0.1j)
    u = ConformalPoint(0.05, 0.02 + 0.01j, -0.04, 0.06j)
    result = twopoint_series(z, u, VertexSeriesConfig(40))
    assert not result.flagged
    assert result.gate < 1
    assert result.residual <= 1e-8


def test_twopoint_terms_are_the_kernels():
    rng = random.Random(11)
    z = (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(2))
    u = random_rational_vector(rng, span=2, denom=6)
    result = twopoint_series(z, u, VertexSeriesConfig(5, "exact"))
    zsq = sum(c * c for c in z)
    zb = tuple(c / zsq for c in z)
    for n, term in enumerate(result.terms):
        assert term == gegenbauer_H(n, zb, u)


def test_twopoint_collapses_at_the_origin():
    z = (Fraction(1, 3), Fraction(1, 2), 0, 2)
    result = twopoint_series(z, (0, 0, 0, 0), VertexSeriesConfig(10, "exact"))
    assert result.series == 1 / sum(c * c for c in z)
    assert all(t == 0 for t in result.terms[1:])


def test_twopoint_rejects_coincident_points():
    z = (Fraction(1, 2), 0, 0, 1)
    with pytest.raises(LightconeSingularity):
        twopoint_series(z, z, VertexSeriesConfig(3, "exact"))


def test_twopoint_rejects_lightlike_separation():
    with pytest.raises(LightconeSingularity):
        twopoint_series((1.0, 1.0j, 0, 2.0), (0, 0, 0, 2.0), VertexSeriesConfig(3))


def test_twopoint_flags_a_failed_gate():
    with pytest.warns(DomainWarning):
        result = twopoint_series((0, 0, 0, 2), (0, 0, 0, 3), VertexSeriesConfig(4, "exact"))
    assert result.flagged
    assert result.gate >= 1


def test_vacuum_sandwich_reduces_to_the_ladder_pairing():
    z = (Fraction(1, 2), 0, Fraction(1, 3), 2)
    u = (Fraction(1, 5), Fraction(1, 2), 0, Fraction(-1, 3))
    assert vacuum_sandwich_check(z, u, n_max=6)


def test_vacuum_sandwich_random_rational_points():
    rng = random.Random(3)
    z = tuple(Fraction(rng.randint(1, 5), rng.randint(1, 4)) for _ in range(4))
    u = random_rational_vector(rng, span=2, denom=4)
    assert vacuum_sandwich_check(z, u, n_max=5)


# ---- norms ---------------------------------------------------------------


def test_bergman_norm_at_the_origin():
    result = bergman_norm_check((0, 0, 0, 0), VertexSeriesConfig(5))
    assert result.series == 1.0
    assert result.closed == 1.0


def test_bergman_norm_matches_kernel_inside_the_ball():
    point = ConformalPoint(0.1, 0.1j, -0.05, 0.12)
    result = bergman_norm_check(point, VertexSeriesConfig(30))
    assert result.residual <= 1e-10


def test_bergman_norm_grows_along_a_ray():
    values = [
        bergman_norm_check(
            ConformalPoint(0.15 * t, 0, 0.1j * t, 0.2 * t), VertexSeriesConfig(30)
        ).series
        for t in (0.5, 1.0, 1.5, 2.0)
    ]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(v > 0 for v in values)


# ---- orthogonality of the two ground states ------------------------------


def test_vacuum_and_lowest_weight_are_orthogonal():
    assert VACUUM != LOWEST_WEIGHT
    assert FockVector.basis(VACUUM).inner(FockVector.basis(LOWEST_WEIGHT)) == ONE * 0


def test_lowest_weight_is_normalized():
    assert FockVector.basis(LOWEST_WEIGHT).inner(FockVector.basis(LOWEST_WEIGHT)) == ONE


# ---- suite ---------------------------------------------------------------


def test_vertex_suite_all_green():
    checks = vertex_suite()
    assert all(c.passed for c in checks)
    ids = {c.id for c in checks}
    assert "gegenbauer-matrix-element" in ids
    assert "twopoint-series" in ids
    assert "vacuum-sandwich" in ids
    assert "bergman-norm" in ids
