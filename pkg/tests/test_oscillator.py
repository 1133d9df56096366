from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitoct.clifford import PAIRS, gamma4_pair, m
from splitoct.oscillator import (
    CARTAN_MATRIX,
    DEFAULT_HELICITIES,
    DsTower,
    EmptyBasis,
    FockBasisState,
    FockOperator,
    FockVector,
    HeadroomError,
    MultipletRow,
    Truncation,
    WeightLabel,
    annihilator,
    build_space,
    casimirs,
    chevalley,
    commutator_suite,
    creator,
    ds_branching,
    generator_suite,
    generators,
    lowest_weight,
    phi_sandwich,
    sector_suite,
    so4_decompose,
    special_conformal,
    tensor_step,
    translations,
    zero_mode_suite,
    zero_modes,
)
from splitoct.scalars import ExactScalar, HALF, I, ONE, ZERO

HALF_F = Fraction(1, 2)

# Frozen dimensions of the truncated sectors (helicity, e_max) -> count.
FROZEN_DIMS = (
    (0, 1, 1),
    (0, 2, 5),
    (HALF_F, Fraction(3, 2), 2),
    (0, 4, 30),
    (2, 6, 70),
)

occupations = st.tuples(
    st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)
)


def all_pass(checks):
    return [c.id for c in checks if not c.passed]


# ---------------------------------------------------------------------------
# basis enumeration


@pytest.mark.parametrize("lam,emax,count", FROZEN_DIMS)
def test_frozen_sector_dimensions(lam, emax, count):
    assert build_space(Truncation(emax), lam).dim == count


def test_basis_sorted_by_energy_then_occupations():
    space = build_space(Truncation(2), 0)
    occs = [s.occupations for s in space.states]
    assert occs == [
        (0, 0, 0, 0), (0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)
    ]
    assert [s.energy for s in space.states] == [1, 2, 2, 2, 2]


def test_empty_basis_when_truncation_below_ground():
    with pytest.raises(EmptyBasis):
        build_space(Truncation(1), HALF_F)
    with pytest.raises(EmptyBasis):
        build_space(Truncation(HALF_F), 0)


def test_state_validation():
    with pytest.raises(ValueError):
        FockBasisState((0, -1, 0, 0))
    with pytest.raises(ValueError):
        FockBasisState((0, 0, 0), zero_mode=0)
    with pytest.raises(ValueError):
        FockBasisState((0, 0, 0, 0), zero_mode=2)
    with pytest.raises(ValueError):
        Truncation(Fraction(1, 3))


def test_state_labels():
    s = FockBasisState((2, 0, 1, 0))
    assert s.energy == Fraction(5, 2)
    assert s.helicity == HALF_F
    assert s.weight == 2


def test_headroom_states_filter():
    space = build_space(Truncation(2), 0)
    assert [s.occupations for s in space.headroom_states(1)] == [(0, 0, 0, 0)]
    assert space.headroom_states(2) == ()


# ---------------------------------------------------------------------------
# vectors and the weighted pairing


def test_inner_uses_monomial_weights():
    v = FockVector.basis(FockBasisState((2, 0, 1, 0)))
    assert v.inner(v) == ExactScalar(2)


def test_inner_antilinear_first_slot():
    v = FockVector.basis(FockBasisState((1, 0, 0, 0))) * I
    w = FockVector.basis(FockBasisState((1, 0, 0, 0)))
    assert v.inner(w) == I.conj()
    assert v.inner(w) == w.inner(v).conj()


# ---------------------------------------------------------------------------
# operator algebra


def test_ccr_as_operator_identity():
    for mode in range(4):
        comm = annihilator(mode).commutator(creator(mode))
        assert comm == FockOperator.identity()
    assert annihilator(0).commutator(creator(1)).is_zero()


@settings(max_examples=80)
@given(occupations, st.integers(0, 3))
def test_ccr_pointwise(occ, mode):
    state = FockBasisState(occ)
    comm = annihilator(mode).commutator(creator(mode))
    assert comm.apply(state) == FockVector.basis(state)


def test_adjoint_involution_and_ladder_pairing():
    for mode in range(4):
        assert creator(mode).adjoint() == annihilator(mode)
        assert creator(mode).adjoint().adjoint() == creator(mode)
    for t, c in zip(translations(), special_conformal()):
        assert t.adjoint() == c
        assert c.adjoint() == t


def test_energy_shifts():
    assert all(t.energy_shift == 1 for t in translations())
    assert all(c.energy_shift == -1 for c in special_conformal())
    gens = generators(Truncation(2))
    assert gens["H"].energy_shift == 0
    assert gens[(0, 1)].energy_shift == 1


def test_apply_never_truncates():
    # creators walk out of any finite window; matrix() is what truncates
    top = FockBasisState((0, 3, 0, 0))
    image = creator(1).apply(top)
    assert image == FockVector.basis(FockBasisState((0, 4, 0, 0)))
    space = build_space(Truncation(Fraction(5, 2)), HALF_F)
    mat = translations()[0].matrix(space)
    ground_col = [row[0] for row in mat]
    top_col = [row[space.dim - 1] for row in mat]
    assert any(x != ZERO for x in ground_col)
    assert all(x == ZERO for x in top_col)


def test_phi_sandwich_rejects_wrong_block():
    with pytest.raises(ValueError):
        phi_sandwich(m(0))


# ---------------------------------------------------------------------------
# generators


def test_bilinear_matches_gamma_route_spot():
    gens = generators(Truncation(2))
    for pair in ((0, 1), (2, 4), (5, 3)):
        assert gens[pair] == phi_sandwich(gamma4_pair(*pair)) * HALF


def test_hamiltonian_is_i_j05():
    gens = generators(Truncation(2))
    assert gens["H"] == gens[(0, 5)] * I


def test_j01_on_vacuum_frozen():
    gens = generators(Truncation(2))
    image = gens[(0, 1)].apply(FockBasisState((0, 0, 0, 0)))
    want = (
        FockVector.basis(FockBasisState((0, 1, 1, 0)))
        + FockVector.basis(FockBasisState((1, 0, 0, 1)))
    ) * HALF
    assert image == want


def test_hamiltonian_matrix_frozen():
    space = build_space(Truncation(2), 0)
    gens = generators(Truncation(2))
    mat = gens["H"].matrix(space)
    want = tuple(
        tuple(ExactScalar(s.energy) if r == c else ZERO for c in range(5))
        for r, s in enumerate(space.states)
    )
    assert mat == want


def test_central_charge_scalar_per_sector():
    gens = generators(Truncation(3))
    for lam in (0, 1, Fraction(-3, 2)):
        space = build_space(Truncation(3), lam)
        scale = ExactScalar(2 * (Fraction(lam) - 1))
        for state in space.states:
            assert gens["C1"].apply(state) == FockVector.basis(state) * scale


def test_generator_suite_green():
    assert all_pass(generator_suite(Truncation(3))) == []


def test_commutator_suite_green_and_headroom():
    assert all_pass(commutator_suite(Truncation(3), 0)) == []
    with pytest.raises(HeadroomError):
        commutator_suite(Truncation(2), 0)


# ---------------------------------------------------------------------------
# chevalley presentation


def test_chevalley_cartan_matrix():
    triple = chevalley(Truncation(3))
    assert triple["cartan_matrix"] == CARTAN_MATRIX
    assert len(triple["E"]) == len(triple["F"]) == len(triple["H"]) == 3
    for a, (e, f, h) in enumerate(zip(triple["E"], triple["F"], triple["H"])):
        assert e.commutator(f) == h
        # the middle root is noncompact and pairs skew under the unitary form
        assert e.adjoint() == (f * -1 if a == 1 else f)


@settings(max_examples=60)
@given(occupations, st.integers(0, 2))
def test_simple_root_shifts_are_cartan_columns(occ, b):
    # F_b moves any weight vector by minus the b-th column of the Cartan matrix
    triple = chevalley(Truncation(2))
    state = FockBasisState(occ)
    moved = triple["F"][b].apply(state)
    if moved.is_zero():
        return
    for a in range(3):
        h = triple["H"][a]
        eig = h.apply(state).amplitudes.get(state, ZERO)
        shifted = eig - ExactScalar(CARTAN_MATRIX[a][b])
        assert h.apply(moved) == moved * shifted


# ---------------------------------------------------------------------------
# lowest weight, casimirs, level decomposition


def test_lowest_weight_examples():
    state, checks = lowest_weight(1)
    assert state.occupations == (0, 2, 0, 0)
    assert state.energy == 2
    assert all_pass(checks) == []

    state, checks = lowest_weight(Fraction(-1, 2))
    assert state.occupations == (0, 0, 1, 0)
    assert state.energy == Fraction(3, 2)
    assert all_pass(checks) == []

    state, checks = lowest_weight(0)
    assert state.occupations == (0, 0, 0, 0)
    assert "rotations-fix-vacuum" in [c.id for c in checks]
    assert all_pass(checks) == []


@pytest.mark.parametrize(
    "lam,su22,sp22,boost",
    [
        (0, 3, 2, -1),
        (1, 0, 0, 0),
        (HALF_F, Fraction(9, 4), Fraction(3, 2), Fraction(-3, 4)),
        (-2, -9, -6, 3),
    ],
)
def test_casimir_scalars(lam, su22, sp22, boost):
    trunc = Truncation(abs(Fraction(lam)) + 3)
    values = casimirs(trunc, lam)
    assert values["c2_su22"] == su22 == -3 * (Fraction(lam) ** 2 - 1)
    assert values["c2_sp22"] == sp22
    assert values["boost_square"] == boost


def test_casimirs_need_headroom():
    with pytest.raises(HeadroomError):
        casimirs(Truncation(2), 0)


def test_boost_square_equals_central_polynomial():
    # sum_a (-eta^a eta^5) J_{a5}^2 = C1^2/4 + C1 holds at operator level
    gens = generators(Truncation(2))
    table = {p: gens[p] for p in PAIRS}
    boost = FockOperator.zero()
    su22 = FockOperator.zero()
    for (mu, nu), op in table.items():
        sq = op @ op
        metric = -1 if mu == 0 else 1
        if 5 in (mu, nu):
            boost = boost + sq * metric
            su22 = su22 + sq * (-metric)
        else:
            su22 = su22 + sq * metric
    c1 = gens["C1"]
    assert boost == (c1 @ c1) * Fraction(1, 4) + c1
    # and the conformal sum splits as the dS sum minus the boost square
    sp22 = su22 + boost
    assert su22 == sp22 - boost


def test_so4_rows_examples():
    rows = so4_decompose(Truncation(3), 0)
    labels = [(r.label.energy, r.label.j_left, r.label.j_right, r.dim) for r in rows]
    assert labels == [(1, 0, 0, 1), (2, HALF_F, HALF_F, 4), (3, 1, 1, 9)]
    assert all(r.multiplicity == 1 for r in rows)

    rows = so4_decompose(Truncation(2), 1)
    assert [(r.label.j_left, r.label.j_right, r.dim) for r in rows] == [(1, 0, 3)]
    rows = so4_decompose(Truncation(2), -1)
    assert [(r.label.j_left, r.label.j_right) for r in rows] == [(0, 1)]


def test_weight_label_validation():
    label = WeightLabel(3, 2, 0, 2)
    assert MultipletRow(label, 1).dim == 5
    with pytest.raises(ValueError):
        WeightLabel(2, 2, 0, 2)
    with pytest.raises(ValueError):
        WeightLabel(2, Fraction(3, 2), 0, Fraction(3, 2))
    with pytest.raises(ValueError):
        WeightLabel(2, HALF_F, -HALF_F, 1)


# ---------------------------------------------------------------------------
# branching


def test_tensor_step_examples():
    assert tensor_step(Fraction(0), Fraction(0)) == frozenset({(HALF_F, HALF_F)})
    assert tensor_step(Fraction(1), Fraction(0)) == frozenset(
        {(Fraction(3, 2), HALF_F), (HALF_F, HALF_F)}
    )
    assert len(tensor_step(HALF_F, HALF_F)) == 4


def test_branching_tower_from_chiral_seed():
    tower = ds_branching(WeightLabel(3, 2, 0, 2), 2)
    assert isinstance(tower, DsTower)
    assert tower.multiplets == (
        (2, 0), (Fraction(5, 2), HALF_F), (3, 1)
    )
    assert tower.p == 2
    assert tower.q == 4
    assert tower.q_truncation_dependent


def test_branching_keeps_chirality_through_interior_rows():
    tower = ds_branching(WeightLabel(1, 0, 0, 0), 3)
    assert [jl - jr for jl, jr in tower.multiplets] == [0, 0, 0, 0]
    assert tower.p == 0
    assert tower.q == 3


def test_branching_rejects_non_chiral_seed():
    with pytest.raises(ValueError):
        ds_branching(WeightLabel(3, 1, 1, 0), 1)


def test_tower_matches_level_decomposition():
    rows = so4_decompose(Truncation(5), 1)
    seed = rows[0].label
    tower = ds_branching(seed, len(rows) - 1)
    assert tower.multiplets == tuple((r.label.j_left, r.label.j_right) for r in rows)


# ---------------------------------------------------------------------------
# zero modes


def test_zero_mode_cap_and_vacuum():
    ops = zero_modes(Truncation(2))
    chi, chi_star = ops["chi"], ops["chi_star"]
    vacuum = FockBasisState((0, 0, 0, 0))
    ground = FockBasisState((0, 0, 0, 0), zero_mode=1)
    assert chi.apply(vacuum).is_zero()
    assert chi_star.apply(vacuum) == FockVector.basis(ground)
    assert chi_star.apply(ground).is_zero()
    assert chi.apply(ground) == FockVector.basis(vacuum)
    assert chi_star.adjoint() == chi


def test_zero_mode_suite_green():
    assert all_pass(zero_mode_suite(Truncation(2))) == []


# ---------------------------------------------------------------------------
# sector batteries


@pytest.mark.parametrize("lam", [0, HALF_F, Fraction(-3, 2)])
def test_sector_suite_green(lam):
    assert all_pass(sector_suite(lam)) == []


def test_default_helicity_grid():
    assert DEFAULT_HELICITIES == tuple(Fraction(k, 2) for k in range(-4, 5))
