import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitoct.geometry import (
    SIX_SIGNS,
    CayleyForm,
    ConformalPoint,
    EmbeddedSixVector,
    HarmonicPolynomial,
    LightconeSingularity,
    MinkowskiPoint,
    NullInversion,
    OffShell,
    SingularMap,
    bergman_kernel,
    box6_commutator_check,
    cayley_u2,
    compact_phase,
    cone_obstruction,
    conformal_conjugate,
    conformal_distance_check,
    conformal_metric_check,
    ds_embed,
    ds_minkowski_coords,
    ds_twopoint,
    eds_embed,
    gc_forward,
    gc_inverse,
    gegenbauer_H,
    gegenbauer_polynomial,
    gegenbauer_series_residual,
    geometry_suite,
    inversion,
    inversion_weyl,
    series_gate,
    sixd_twopoint,
    tube_membership,
    twopoint_harmonicity_check,
    zpicture_bracket_check,
    zpicture_generators,
)


def tube_point(rng, scale=1.0):
    x = rng.uniform(-1.5, 1.5, size=4) * scale
    yvec = rng.uniform(-1.0, 1.0, size=3) * scale
    y0 = float(np.linalg.norm(yvec)) + rng.uniform(0.05, 1.5) * scale
    return MinkowskiPoint(
        x[0] + 1j * y0, x[1] + 1j * yvec[0], x[2] + 1j * yvec[1], x[3] + 1j * yvec[2]
    )


def max_coord_diff(a, b):
    return max(abs(p - q) for p, q in zip(a.coords, b.coords))


# ---------------------------------------------------------------------------
# points and squares


def test_minkowski_square_signature():
    assert MinkowskiPoint(1, 0, 0, 0).square == -1
    assert MinkowskiPoint(0, 1, 2, 3).square == 14
    assert MinkowskiPoint(2, 1, 0, 0).square == -3


def test_conformal_point_square_and_pairing():
    z = ConformalPoint(1j, 0, 0, 1)
    assert z.square == 0
    assert z.pairing == pytest.approx(2.0)


def test_six_vector_metric():
    v = EmbeddedSixVector(1, 1, 1, 1, 0, 0)
    assert v.square == 0
    assert EmbeddedSixVector(0, 0, 1, 0, 0, 0).square == 1
    assert EmbeddedSixVector(1, 0, 0, 0, 0, 0).square == -1


# ---------------------------------------------------------------------------
# the chart and its inverse


def test_origin_maps_to_unit_fourth_axis():
    z = gc_forward(MinkowskiPoint(0, 0, 0, 0))
    assert max(abs(c - w) for c, w in zip(z.coords, (0, 0, 0, 1))) == 0
    back = gc_inverse(ConformalPoint(0, 0, 0, 1))
    assert max(abs(c) for c in back.coords) == 0


def test_zero_z_is_the_imaginary_unit_time_point():
    back = gc_inverse(ConformalPoint(0, 0, 0, 0))
    assert back.x0 == 1j
    assert back.x1 == back.x2 == back.x3 == 0
    there = gc_forward(back)
    assert max(abs(c) for c in there.coords) < 1e-15


def test_roundtrip_on_forward_tube():
    rng = np.random.default_rng(3)
    for _ in range(100):
        w = tube_point(rng)
        assert max_coord_diff(gc_inverse(gc_forward(w)), w) < 1e-12


def test_singular_point_raises():
    with pytest.raises(SingularMap):
        gc_forward(MinkowskiPoint(-1j, 0, 0, 0))


def test_real_points_land_on_the_boundary_sphere():
    rng = np.random.default_rng(4)
    for _ in range(50):
        z = gc_forward(MinkowskiPoint(*rng.uniform(-2, 2, size=4)))
        assert abs(z.pairing - 1.0) < 1e-12
        assert abs(abs(z.square) - 1.0) < 1e-12


def test_conformal_distance_identity():
    rng = np.random.default_rng(5)
    for _ in range(50):
        assert conformal_distance_check(tube_point(rng), tube_point(rng)) < 1e-10
    x = MinkowskiPoint(0.3, -0.2, 0.9, 0.1)
    assert conformal_distance_check(x, x) == 0


def test_metric_pullback_is_conformal():
    rng = np.random.default_rng(6)
    for _ in range(5):
        assert conformal_metric_check(MinkowskiPoint(*rng.uniform(-1, 1, 4))) < 1e-8
        assert conformal_metric_check(tube_point(rng, 0.7)) < 1e-8


# ---------------------------------------------------------------------------
# tubes, conjugation, inversion


def test_membership_examples():
    assert tube_membership(ConformalPoint(0, 0, 0, 0)) == "forward"
    assert tube_membership(ConformalPoint(1j, 0, 0, 0)) == "boundary"
    assert tube_membership(ConformalPoint(1.5, 0.6j, 0, 0)) == "outside"
    assert tube_membership(ConformalPoint(2, 2j, 0, 0)) == "outside"


def test_forward_tube_maps_forward():
    rng = np.random.default_rng(7)
    for _ in range(100):
        assert tube_membership(gc_forward(tube_point(rng))) == "forward"


def test_conjugation_exchanges_tubes():
    rng = np.random.default_rng(8)
    for _ in range(50):
        z = gc_forward(tube_point(rng))
        star = conformal_conjugate(z)
        assert tube_membership(star) == "backward"
        assert max_coord_diff(conformal_conjugate(star), z) < 1e-12


def test_conjugation_fixes_real_images():
    rng = np.random.default_rng(9)
    for _ in range(50):
        z = gc_forward(MinkowskiPoint(*rng.uniform(-2, 2, 4)))
        assert tube_membership(z) == "boundary"
        assert max_coord_diff(conformal_conjugate(z), z) < 1e-12


def test_null_cone_has_no_conjugate():
    with pytest.raises(NullInversion):
        conformal_conjugate(ConformalPoint(1, 1j, 0, 0))
    with pytest.raises(NullInversion):
        inversion(ConformalPoint(1, 1j, 0, 0))


def test_inversion_is_an_involution_and_swaps_tubes():
    rng = np.random.default_rng(10)
    count = 0
    while count < 30:
        z = gc_forward(tube_point(rng))
        if abs(z.square) < 0.2:
            continue
        zb = inversion(z)
        assert tube_membership(zb) == "backward"
        assert max_coord_diff(inversion(zb), z) < 1e-12
        count += 1


def test_inversion_weyl_factor():
    rng = np.random.default_rng(11)
    count = 0
    while count < 10:
        z = gc_forward(tube_point(rng))
        if abs(z.square) < 0.35:
            continue
        weyl = inversion_weyl(z)
        assert abs(weyl.value - 1 / z.square**2) == 0
        assert weyl.residual < 1e-8
        count += 1


def test_compact_phase_branch_and_flip():
    rng = np.random.default_rng(12)
    for _ in range(30):
        z = gc_forward(MinkowskiPoint(*rng.uniform(-2, 2, 4)))
        r, tau = compact_phase(z)
        assert -math.pi / 2 < tau <= math.pi / 2
        assert abs(float(np.dot(r, r)) - 1.0) < 1e-12
        flipped = -r * np.exp(1j * (tau + math.pi))
        assert float(np.max(np.abs(flipped - np.asarray(z.coords)))) < 1e-12
    with pytest.raises(OffShell):
        compact_phase(ConformalPoint(0, 0, 0, 0))


# ---------------------------------------------------------------------------
# Cayley form


def test_cayley_identity_at_origin():
    form = cayley_u2(MinkowskiPoint(0, 0, 0, 0))
    assert np.max(np.abs(form.matrix - np.eye(2))) == 0


def test_cayley_pure_time_gives_i():
    form = cayley_u2(MinkowskiPoint(1, 0, 0, 0))
    assert np.max(np.abs(form.matrix - 1j * np.eye(2))) < 1e-15
    z = gc_forward(MinkowskiPoint(1, 0, 0, 0))
    assert max(abs(c - w) for c, w in zip(z.coords, (0, 0, 0, 1j))) < 1e-15


def test_cayley_unitary_and_matches_chart():
    rng = np.random.default_rng(13)
    for _ in range(30):
        form = cayley_u2(MinkowskiPoint(*rng.uniform(-2, 2, 4)))
        assert isinstance(form, CayleyForm)
        assert form.unitarity_residual < 1e-12
        assert form.coefficient_residual < 1e-12


# ---------------------------------------------------------------------------
# de Sitter sections


def test_eds_embed_beta_half():
    R = 1.0
    zb = R * math.tanh(0.5)
    result = eds_embed((zb, math.sqrt(R * R - zb * zb), 0, 0, 0), R)
    assert result.ok
    assert abs(result.z.square - math.exp(-1.0)) < 1e-12
    assert tube_membership(result.z) == "forward"


def test_eds_equator_is_boundary():
    result = eds_embed((0.0, 1.0, 0, 0, 0), 1.0)
    assert result.ok
    assert abs(result.z.square - 1.0) < 1e-12
    assert tube_membership(result.z) == "boundary"


def test_eds_rejects_off_sphere_and_lower_half():
    with pytest.raises(OffShell):
        eds_embed((0.5, 1.0, 0, 0, 0), 1.0)
    with pytest.raises(OffShell):
        eds_embed((-0.6, 0.8, 0, 0, 0), 1.0)


def test_eds_random_points_forward():
    rng = np.random.default_rng(14)
    R = 2.0
    for _ in range(25):
        u = rng.normal(size=5)
        u /= np.linalg.norm(u)
        u[0] = abs(u[0]) + 0.1
        u /= np.linalg.norm(u)
        result = eds_embed(tuple(R * u), R, rng=rng)
        assert result.ok
        assert tube_membership(result.z) == "forward"


def test_ds_embed_boundary_section():
    rng = np.random.default_rng(15)
    R = 1.0
    for _ in range(25):
        z0 = rng.uniform(-1.5, 1.5)
        direction = rng.normal(size=4)
        direction /= np.linalg.norm(direction)
        zeta = (z0, *(math.sqrt(R * R + z0 * z0) * direction))
        result = ds_embed(zeta, R)
        assert result.ok
        assert tube_membership(result.z) == "boundary"
        want = (R + 1j * z0) / (R - 1j * z0)
        assert abs(result.z.square - want) < 1e-12
    with pytest.raises(OffShell):
        ds_embed((0.0, 1.0, 1.0, 0, 0), 1.0)


def test_ds_minkowski_center_and_weyl():
    chart = ds_minkowski_coords((0, 0, 0, 0, 1.0), 1.0)
    assert chart.ok
    assert max(abs(c) for c in chart.x.coords) == 0
    assert chart.omega == 2.0


def test_ds_minkowski_identities():
    rng = np.random.default_rng(16)
    R = 1.0
    done = 0
    while done < 25:
        z0 = rng.uniform(-1.5, 1.5)
        direction = rng.normal(size=4)
        direction /= np.linalg.norm(direction)
        zeta = (z0, *(math.sqrt(R * R + z0 * z0) * direction))
        if abs(R + zeta[4]) < 0.1 * R:
            continue
        chart = ds_minkowski_coords(zeta, R, rng=rng)
        assert chart.ok
        kappa_sq = chart.x.square / (R * R)
        assert abs(chart.omega - 2 / (1 + kappa_sq)) < 1e-10
        done += 1


def test_ds_minkowski_singular_antipode_of_origin():
    with pytest.raises(SingularMap):
        ds_minkowski_coords((0, 0, 0, 0, -1.0), 1.0)


# ---------------------------------------------------------------------------
# Gegenbauer kernels


def test_gegenbauer_low_orders_exact():
    zb = (Fraction(1, 3), Fraction(-1, 2), Fraction(2, 5), Fraction(0))
    u = (Fraction(1, 7), Fraction(1, 2), Fraction(-2, 3), Fraction(3, 4))
    assert gegenbauer_H(0, zb, u) == 1
    dot = sum(a * b for a, b in zip(zb, u))
    assert gegenbauer_H(1, zb, u) == 2 * dot


def test_gegenbauer_polynomial_matches_closed_form():
    zb = (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 5), Fraction(2))
    u = (Fraction(3), Fraction(-1, 2), Fraction(1), Fraction(1, 4))
    for n in range(6):
        poly = gegenbauer_polynomial(n)
        assert poly.evaluate(zb + u) == gegenbauer_H(n, zb, u)


def test_gegenbauer_biharmonic_through_ten():
    a_signs = (1, 1, 1, 1, 0, 0, 0, 0)
    b_signs = (0, 0, 0, 0, 1, 1, 1, 1)
    for n in range(11):
        poly = gegenbauer_polynomial(n)
        assert poly.is_harmonic(a_signs)
        assert poly.is_harmonic(b_signs)


def test_gegenbauer_series_reproduces_the_kernel():
    rng = np.random.default_rng(17)
    count = 0
    while count < 5:
        z = gc_forward(tube_point(rng))
        if abs(z.square) < 0.25:
            continue
        u = ConformalPoint(*(0.05 * (rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4))))
        while series_gate(z, u) >= 0.5:
            u = ConformalPoint(*(c / 2 for c in u.coords))
        assert gegenbauer_series_residual(z, u, n_max=40) < 1e-8
        count += 1


def test_gegenbauer_series_collapses_at_zero():
    z = ConformalPoint(0.2, 0.1j, 0, 0.8)
    assert gegenbauer_series_residual(z, ConformalPoint(0, 0, 0, 0), n_max=0) < 1e-15


def test_bergman_kernel_positive_and_one_at_zero():
    assert bergman_kernel(ConformalPoint(0, 0, 0, 0)) == 1.0
    rng = np.random.default_rng(18)
    for _ in range(100):
        value = bergman_kernel(gc_forward(tube_point(rng)))
        assert math.isfinite(value) and value > 0


# ---------------------------------------------------------------------------
# wave operator on the cone


def test_box6_commutator_on_constants_and_linears():
    one = HarmonicPolynomial.constant(1, 6)
    report = box6_commutator_check(one, homogeneity=2)
    assert report["identity_holds"] and report["cone_matches"]
    assert report["cone_coefficient"] == 12

    zeta1 = HarmonicPolynomial.variable(2, 6)
    report = box6_commutator_check(zeta1, homogeneity=3)
    assert report["cone_matches"]
    assert report["cone_coefficient"] == 16
    assert not report["vanishes"]


def test_cone_obstruction_vanishes_only_at_minus_one():
    zeros = [d for d in range(-8, 9) if cone_obstruction(d) == 0]
    assert zeros == [-1]
    assert cone_obstruction(Fraction(-1)) == 0


coeffs6 = st.dictionaries(
    st.tuples(*(st.integers(0, 2),) * 6).filter(lambda e: sum(e) <= 3),
    st.integers(-9, 9),
    max_size=8,
)


@settings(max_examples=40, deadline=None)
@given(coeffs6)
def test_box6_commutator_identity_property(terms):
    poly = HarmonicPolynomial(terms, 6)
    assert box6_commutator_check(poly)["identity_holds"]


def test_twopoint_harmonicity_on_and_off_cone():
    on_cone = (Fraction(3, 5), Fraction(4, 5), 1, 0, 0, 0)
    report = twopoint_harmonicity_check(on_cone)
    assert report["cone_numerator_matches"]
    assert report["flat_numerator_matches"]
    assert report["harmonic_on_cone"]

    off_cone = (Fraction(1, 2), 1, Fraction(1, 3), 0, 1, 0)
    report = twopoint_harmonicity_check(off_cone)
    assert report["cone_numerator_matches"]
    assert not report["harmonic_on_cone"]
    assert report["zeta_prime_square"] == Fraction(-5, 36)


# ---------------------------------------------------------------------------
# two-point kernels


def test_ds_twopoint_antipodal_value():
    R = 1.0
    zeta = (0.3, math.sqrt(1 + 0.09), 0, 0, 0)
    anti = tuple(-c for c in zeta)
    assert abs(ds_twopoint(zeta, anti, R) - 1 / (16 * math.pi**2)) < 1e-15


def test_ds_twopoint_matches_sixd_pullback():
    rng = np.random.default_rng(19)
    R = 1.7
    for _ in range(20):
        z0, w0 = rng.uniform(-1, 1, 2)
        d1 = rng.normal(size=4)
        d1 /= np.linalg.norm(d1)
        d2 = rng.normal(size=4)
        d2 /= np.linalg.norm(d2)
        zeta = (z0, *(math.sqrt(R * R + z0 * z0) * d1))
        other = (w0, *(math.sqrt(R * R + w0 * w0) * d2))
        dot = -zeta[0] * other[0] + sum(a * b for a, b in zip(zeta[1:], other[1:]))
        if abs(R * R - dot) < 0.1:
            continue
        lift = (zeta[0], R, *zeta[1:])
        lift_other = (other[0], R, *other[1:])
        assert abs(sixd_twopoint(lift, lift_other) - ds_twopoint(zeta, other, R)) < 1e-12


def test_sixd_kernel_scaling_on_cone():
    lift = (0.3, 1.0, math.sqrt(1.09), 0, 0, 0)
    other = (-0.4, 1.0, 0, math.sqrt(1.16), 0, 0)
    assert abs(2 * sixd_twopoint(lift, tuple(2 * c for c in other)) - sixd_twopoint(lift, other)) < 1e-15


def test_ds_twopoint_lightcone_raises():
    zeta = (0.0, 1.0, 0, 0, 0)
    with pytest.raises(LightconeSingularity):
        ds_twopoint(zeta, zeta, 1.0)


# ---------------------------------------------------------------------------
# z-picture generators


def test_zpicture_euler_example():
    gens = zpicture_generators()
    z1z2 = HarmonicPolynomial({(1, 1, 0, 0): 1})
    assert gens["H"](z1z2) == z1z2 * -2


def test_zpicture_commutator_example():
    gens = zpicture_generators()
    z2 = HarmonicPolynomial.variable(1)
    c1, t1 = gens["C"][0], gens["T"][0]
    assert c1(t1(z2)) - t1(c1(z2)) == z2 * -2


def test_zpicture_rotations_commute_with_h():
    gens = zpicture_generators()
    ham, j12 = gens["H"], gens["J"][(1, 2)]
    for exps in ((2, 1, 0, 0), (0, 3, 1, 2), (1, 1, 1, 1)):
        mono = HarmonicPolynomial({exps: 1})
        assert (ham(j12(mono)) - j12(ham(mono))).is_zero()


def test_zpicture_bracket_battery():
    assert zpicture_bracket_check(max_degree=4) == 0


# ---------------------------------------------------------------------------
# polynomial plumbing


def test_polynomial_validation():
    with pytest.raises(ValueError):
        HarmonicPolynomial({(1, 2): 1}, 4)
    with pytest.raises(ValueError):
        HarmonicPolynomial({(1, -1, 0, 0): 1}, 4)


def test_polynomial_calculus():
    z1 = HarmonicPolynomial.variable(0)
    z2 = HarmonicPolynomial.variable(1)
    p = z1 * z1 - z2 * z2
    assert p.is_harmonic()
    assert (z1 * z1 + z2 * z2).laplacian() == HarmonicPolynomial.constant(4)
    assert p.euler() == p * 2
    assert p.evaluate((3, 2, 0, 0)) == 5
    assert p.diff(0) == z1 * 2


# ---------------------------------------------------------------------------
# the assembled battery


def test_geometry_suite_all_green():
    failures = [c.id for c in geometry_suite() if not c.passed]
    assert failures == []
