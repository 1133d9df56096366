"""The conformal Clifford algebra cl(4,2) on the split octonions.

Left multiplication by the six units indexed (0, 5, 1, 2, 3, 4), metric
(-,-,+,+,+,+), gives real 8x8 generators m_nu acting on the coordinate
column (1, k, i, j, li, jl, lk, l).  Everything downstream is exact over
Q(zeta_8): bivectors and the so(4,2) table, the pseudoscalar E, the
distinguished involutions D, S, B, the chiral transform U = e^{i pi/4} V
with V = (1 - iS - E - iD)/2, the conjugated generators and their
restriction to the 4x4 chiral block, trace and Fierz identities, and
one-parameter group exponentials with exact branches at eighth turns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .composition import SplitOctonion, UnitIndex
from .reporting import Check, run_check
from .scalars import ExactScalar, HALF, I, INV_SQRT2, ONE, ZERO, ZETA

__all__ = [
    "ZeroBivector",
    "CliffordIndex",
    "CLIFF_INDICES",
    "METRIC",
    "PAIRS",
    "VECTOR_UNITS",
    "CHIRAL_LABELS",
    "SpinorMatrix",
    "GroupElement",
    "left_mul_matrix",
    "m",
    "bivector",
    "pseudoscalar",
    "clifford_relations_check",
    "so42_commutator_check",
    "distinguished_elements",
    "chiral_transform",
    "conjugated_generators",
    "chiral_basis",
    "t_b",
    "cal_e",
    "gamma4",
    "gamma4_pair",
    "project_to_chiral4",
    "gamma8_block",
    "grade_components",
    "group_exp",
    "trace_identity_check",
    "trace_identity_suite",
    "vec_bilinear",
    "mat_vec",
]


class ZeroBivector(ValueError):
    """Requested m_{mu mu}; bivectors need distinct indices."""


# Vector index alphabet, its metric, and the unit realizing each generator.
CliffordIndex = int
CLIFF_INDICES: tuple[CliffordIndex, ...] = (0, 5, 1, 2, 3, 4)
METRIC = {0: -1, 5: -1, 1: 1, 2: 1, 3: 1, 4: 1}
VECTOR_UNITS = {
    0: UnitIndex.I,
    5: UnitIndex.J,
    1: UnitIndex.LI,
    2: UnitIndex.JL,
    3: UnitIndex.LK,
    4: UnitIndex.L,
}
PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(CLIFF_INDICES, 2))


def _coerce_entry(c) -> ExactScalar:
    if isinstance(c, ExactScalar):
        return c
    if isinstance(c, (int, Fraction)):
        return ExactScalar.from_rational(c)
    raise TypeError(f"matrix entries must be exact scalars, got {type(c).__name__}")


class SpinorMatrix:
    """Dense square matrix over Q(zeta_8)."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]) -> None:
        self._rows = tuple(tuple(_coerce_entry(c) for c in row) for row in rows)
        n = len(self._rows)
        if any(len(r) != n for r in self._rows):
            raise ValueError("square matrix expected")

    @classmethod
    def _raw(cls, rows) -> SpinorMatrix:
        self = object.__new__(cls)
        self._rows = rows
        return self

    @classmethod
    def identity(cls, n: int) -> SpinorMatrix:
        return cls.diagonal([1] * n)

    @classmethod
    def zero(cls, n: int) -> SpinorMatrix:
        row = (ZERO,) * n
        return cls._raw(tuple(row for _ in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> SpinorMatrix:
        n = len(entries)
        rows = []
        for i, e in enumerate(entries):
            row = [ZERO] * n
            row[i] = _coerce_entry(e)
            rows.append(tuple(row))
        return cls._raw(tuple(rows))

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def rows(self):
        return self._rows

    def entry(self, i: int, j: int) -> ExactScalar:
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SpinorMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __add__(self, other: SpinorMatrix) -> SpinorMatrix:
        if not isinstance(other, SpinorMatrix):
            return NotImplemented
        return SpinorMatrix._raw(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self._rows, other._rows)
            )
        )

    def __sub__(self, other: SpinorMatrix) -> SpinorMatrix:
        if not isinstance(other, SpinorMatrix):
            return NotImplemented
        return SpinorMatrix._raw(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self._rows, other._rows)
            )
        )

    def __neg__(self) -> SpinorMatrix:
        return SpinorMatrix._raw(tuple(tuple(-a for a in r) for r in self._rows))

    def __mul__(self, scalar) -> SpinorMatrix:
        s = _coerce_entry(scalar)
        return SpinorMatrix._raw(tuple(tuple(a * s for a in r) for r in self._rows))

    __rmul__ = __mul__

    def __matmul__(self, other: SpinorMatrix) -> SpinorMatrix:
        if not isinstance(other, SpinorMatrix):
            return NotImplemented
        n = self.size
        brows = other._rows
        out = []
        for arow in self._rows:
            acc = [ZERO] * n
            for k, aik in enumerate(arow):
                if not aik:
                    continue
                brow = brows[k]
                for j, bkj in enumerate(brow):
                    if bkj:
                        acc[j] = acc[j] + aik * bkj
            out.append(tuple(acc))
        return SpinorMatrix._raw(tuple(out))

    def transpose(self) -> SpinorMatrix:
        return SpinorMatrix._raw(tuple(zip(*self._rows)))

    def conj(self) -> SpinorMatrix:
        return SpinorMatrix._raw(tuple(tuple(a.conj() for a in r) for r in self._rows))

    def conj_transpose(self) -> SpinorMatrix:
        return self.conj().transpose()

    def trace(self) -> ExactScalar:
        t = ZERO
        for i, row in enumerate(self._rows):
            t = t + row[i]
        return t

    def is_zero(self) -> bool:
        return all(not a for row in self._rows for a in row)

    def det(self) -> ExactScalar:
        # Exact Gaussian elimination; Q(zeta_8) is a field.
        n = self.size
        rows = [list(r) for r in self._rows]
        det = ONE
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col]), None)
            if pivot is None:
                return ZERO
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = -det
            p = rows[col][col]
            det = det * p
            pinv = p.inv()
            for r in range(col + 1, n):
                f = rows[r][col]
                if not f:
                    continue
                f = f * pinv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        return det

    def to_float(self) -> np.ndarray:
        return np.array(
            [[a.to_float() for a in row] for row in self._rows], dtype=complex
        )

    def __repr__(self) -> str:
        return f"SpinorMatrix(size={self.size})"


def mat_vec(mat: SpinorMatrix, vec: Sequence[ExactScalar]) -> tuple[ExactScalar, ...]:
    out = []
    for row in mat.rows:
        acc = ZERO
        for a, v in zip(row, vec):
            if a and v:
                acc = acc + a * v
        out.append(acc)
    return tuple(out)


_SPLIT_SIGNS = (1, 1, 1, 1, -1, -1, -1, -1)


def vec_bilinear(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> ExactScalar:
    """Bilinear extension of the split norm pairing, signs (+ + + + - - - -)."""
    acc = ZERO
    for s, a, b in zip(_SPLIT_SIGNS, u, v):
        if a and b:
            acc = acc + (a * b if s > 0 else -(a * b))
    return acc


@lru_cache(maxsize=None)
def _unit_octonions() -> tuple[SplitOctonion, ...]:
    return tuple(SplitOctonion.unit(UnitIndex(i)) for i in range(8))


def left_mul_matrix(x) -> SpinorMatrix:
    """The matrix of y -> x y on the coordinate column."""
    if isinstance(x, UnitIndex):
        x = SplitOctonion.unit(x)
    cols = [(x * e).coords for e in _unit_octonions()]
    return SpinorMatrix(tuple(tuple(cols[j][i] for j in range(8)) for i in range(8)))


@lru_cache(maxsize=None)
def m(nu: CliffordIndex) -> SpinorMatrix:
    """Vector generator m_nu, nu in (0, 5, 1, 2, 3, 4)."""
    if nu not in METRIC:
        raise KeyError(f"no Clifford index {nu!r}")
    return left_mul_matrix(VECTOR_UNITS[nu])


@lru_cache(maxsize=None)
def bivector(mu: CliffordIndex, nu: CliffordIndex) -> SpinorMatrix:
    """m_{mu nu} = m_mu m_nu for distinct indices."""
    if mu == nu:
        raise ZeroBivector(f"m_({mu},{nu}) vanishes identically")
    return m(mu) @ m(nu)


def _biv_or_zero(mu: int, nu: int) -> SpinorMatrix:
    return SpinorMatrix.zero(8) if mu == nu else bivector(mu, nu)


@lru_cache(maxsize=None)
def pseudoscalar() -> SpinorMatrix:
    """E = m_0 m_5 m_1 m_2 m_3 m_4; equals left multiplication by -k."""
    out = m(0)
    for nu in (5, 1, 2, 3, 4):
        out = out @ m(nu)
    return out


def clifford_relations_check() -> list[Check]:
    """{m_mu, m_nu} = 2 eta_{mu nu}, plus the (anti)symmetry of each generator."""
    eye = SpinorMatrix.identity(8)
    checks = []

    def pair_residual() -> int:
        bad = 0
        for mu in CLIFF_INDICES:
            for nu in CLIFF_INDICES:
                anti = m(mu) @ m(nu) + m(nu) @ m(mu)
                want = eye * (2 * METRIC[mu]) if mu == nu else SpinorMatrix.zero(8)
                bad += 0 if anti == want else 1
        return bad

    def symmetry_residual() -> int:
        bad = 0
        for nu in CLIFF_INDICES:
            want = -m(nu) if METRIC[nu] < 0 else m(nu)
            bad += 0 if m(nu).transpose() == want else 1
        return bad

    checks.append(run_check("clifford-anticommutators", "clif", pair_residual))
    checks.append(run_check("generator-symmetry", "clif", symmetry_residual))
    return checks


def so42_commutator_check() -> Check:
    """[m_{mu nu}, m_{lam sig}] closes with the so(4,2) structure constants."""

    def residual() -> int:
        bad = 0
        for (mu, nu), (lam, sig) in combinations(PAIRS, 2):
            lhs = bivector(mu, nu) @ bivector(lam, sig) - bivector(lam, sig) @ bivector(mu, nu)
            rhs = (
                _biv_or_zero(mu, sig) * (2 * METRIC[nu] if nu == lam else 0)
                - _biv_or_zero(nu, sig) * (2 * METRIC[mu] if mu == lam else 0)
                - _biv_or_zero(mu, lam) * (2 * METRIC[nu] if nu == sig else 0)
                + _biv_or_zero(nu, lam) * (2 * METRIC[mu] if mu == sig else 0)
            )
            bad += 0 if lhs == rhs else 1
        return bad

    return run_check("so42-structure-constants", "8888888888888", residual)


@dataclass(frozen=True)
class Distinguished:
    """The involutions and volume forms built from the m_nu."""

    E: SpinorMatrix
    D: SpinorMatrix
    D_prime: SpinorMatrix
    D_dprime: SpinorMatrix
    S: SpinorMatrix
    B: SpinorMatrix
    M12: SpinorMatrix
    M34: SpinorMatrix
    M40: SpinorMatrix
    M31: SpinorMatrix
    cartan: dict


@lru_cache(maxsize=None)
def distinguished_elements() -> Distinguished:
    E = pseudoscalar()
    D = m(5) @ m(4) @ m(2)
    D_prime = m(0) @ m(2) @ m(3)
    D_dprime = m(5) @ m(1) @ m(3)
    S = D @ E
    M12 = bivector(0, 5) @ bivector(1, 2)
    M34 = bivector(0, 5) @ bivector(3, 4)
    M40 = bivector(1, 2) @ bivector(4, 3)
    M31 = bivector(0, 3) @ bivector(1, 2)
    cartan = {(0, 5): bivector(0, 5), (1, 2): bivector(1, 2), (3, 4): bivector(3, 4)}
    return Distinguished(E, D, D_prime, D_dprime, S, M40, M12, M34, M40, M31, cartan)


@dataclass(frozen=True)
class ChiralTransform:
    V: SpinorMatrix
    U: SpinorMatrix
    U_inv: SpinorMatrix
    C: SpinorMatrix
    C_V: SpinorMatrix
    u_order: int


@lru_cache(maxsize=None)
def chiral_transform() -> ChiralTransform:
    d = distinguished_elements()
    eye = SpinorMatrix.identity(8)
    V = (eye - d.S * I - d.E - d.D * I) * HALF
    U = V * ZETA
    U_inv = U.conj_transpose()
    if U @ U_inv != eye:
        raise AssertionError("U is not unitary")
    C = U @ U.transpose()
    C_V = V @ V.transpose()
    order = 0
    power = eye
    for k in range(1, 49):
        power = power @ U
        if power == eye:
            order = k
            break
    return ChiralTransform(V, U, U_inv, C, C_V, order)


@dataclass(frozen=True)
class Conjugated:
    gamma: dict
    gamma2: dict
    omega: SpinorMatrix


@lru_cache(maxsize=None)
def conjugated_generators() -> Conjugated:
    ct = chiral_transform()
    gamma = {nu: ct.U @ m(nu) @ ct.U_inv for nu in CLIFF_INDICES}
    gamma2 = {
        (mu, nu): ct.U @ bivector(mu, nu) @ ct.U_inv for mu, nu in PAIRS
    }
    omega = ct.U @ pseudoscalar() @ ct.U_inv
    return Conjugated(gamma, gamma2, omega)


@dataclass(frozen=True)
class ChiralBasis:
    labels: tuple
    vectors: dict
    gram: dict
    epsilon: dict


_CHIRAL_SLOT_PAIRS = {"1k": (0, 1), "05": (2, 3), "12": (4, 5), "34": (6, 7)}
CHIRAL_LABELS = ("1k", "05", "12", "34")


@lru_cache(maxsize=None)
def chiral_basis() -> ChiralBasis:
    """Isotropic eigenvectors n_{a +-} = (e_first +- i e_second)/sqrt(2)."""
    vectors = {}
    for label, (fst, snd) in _CHIRAL_SLOT_PAIRS.items():
        for sign in (1, -1):
            vec = [ZERO] * 8
            vec[fst] = INV_SQRT2
            vec[snd] = INV_SQRT2 * I if sign > 0 else -(INV_SQRT2 * I)
            vectors[(label, sign)] = tuple(vec)
    gram = {
        (ka, kb): vec_bilinear(va, vb)
        for ka, va in vectors.items()
        for kb, vb in vectors.items()
    }
    epsilon = {"1k": 1, "05": 1, "12": -1, "34": -1}
    return ChiralBasis(CHIRAL_LABELS, vectors, gram, epsilon)


# 4x4 chiral block.  Basis order (n_{1k+}, n_{05+}, n_{12+}, n_{34+});
# the quaternionic units E_1..E_3 = i sigma_{1..3}, E_4 = identity.


@lru_cache(maxsize=None)
def cal_e(i: int) -> SpinorMatrix:
    if i == 1:
        return SpinorMatrix([[0, I], [I, 0]])
    if i == 2:
        return SpinorMatrix([[0, 1], [-1, 0]])
    if i == 3:
        return SpinorMatrix([[I, 0], [0, -I]])
    if i == 4:
        return SpinorMatrix.identity(2)
    raise KeyError(f"no E_{i}")


def _cal_e_star(i: int) -> SpinorMatrix:
    return -cal_e(i) if i in (1, 2, 3) else cal_e(4)


@lru_cache(maxsize=None)
def t_b() -> SpinorMatrix:
    """B restricted to the chiral block: diag(1, 1, -1, -1)."""
    return SpinorMatrix.diagonal([1, 1, -1, -1])


def _blocks(a: SpinorMatrix, b: SpinorMatrix, c: SpinorMatrix, d: SpinorMatrix) -> SpinorMatrix:
    rows = []
    for i in range(2):
        rows.append(tuple(a.rows[i]) + tuple(b.rows[i]))
    for i in range(2):
        rows.append(tuple(c.rows[i]) + tuple(d.rows[i]))
    return SpinorMatrix(rows)


@lru_cache(maxsize=None)
def gamma4(alpha: int) -> SpinorMatrix:
    """Lowered gamma_alpha of the 4x4 realization, alpha in 0..4."""
    if alpha == 0:
        return t_b() * I
    if alpha in (1, 2, 3, 4):
        z = SpinorMatrix.zero(2)
        return _blocks(z, cal_e(alpha), _cal_e_star(alpha), z)
    raise KeyError(f"no gamma_{alpha}")


@lru_cache(maxsize=None)
def _g5(alpha: int) -> SpinorMatrix:
    # gamma_{alpha 5}; the 0 slot is the raised gamma^0 = -gamma_0.
    return -gamma4(0) if alpha == 0 else gamma4(alpha)


def gamma4_pair(mu: CliffordIndex, nu: CliffordIndex) -> SpinorMatrix:
    """gamma_{mu nu} on the chiral block, indices from (0, 5, 1, 2, 3, 4)."""
    if mu == nu:
        raise ZeroBivector(f"gamma_({mu},{nu}) vanishes identically")
    if nu == 5:
        return _g5(mu)
    if mu == 5:
        return -_g5(nu)
    return _g5(mu) @ _g5(nu)


_CHIRAL_SLOTS = (0, 3, 5, 7)
# Null-vector phases are free; this sign choice lands the restricted
# generators exactly on the hard-coded 4x4 forms of gamma4/gamma4_pair.
_CHIRAL_PHASES = (ONE, -ONE, -ONE, ONE)


def project_to_chiral4(x8: SpinorMatrix) -> SpinorMatrix:
    """Restrict an 8x8 operator commuting with the chirality to the + block.

    Rows and columns run over the positive-chirality slots (0, 3, 5, 7) of
    the canonical coordinates, with basis vectors (e0, -e3, -e5, e7).
    """
    rows = []
    for sa, pa in zip(_CHIRAL_SLOTS, _CHIRAL_PHASES):
        inv_pa = pa.inv()
        row = []
        for sb, pb in zip(_CHIRAL_SLOTS, _CHIRAL_PHASES):
            row.append(pb * inv_pa * x8.entry(sa, sb))
        rows.append(row)
    return SpinorMatrix(rows)


@lru_cache(maxsize=None)
def gamma8_block() -> dict:
    """The doubled block realization: Gamma_0 = sigma_1 x gamma^0,
    Gamma_5 = eps* x 1, Gamma_i = sigma_1 x gamma_i, omega = i sigma_3 x 1."""
    z4 = SpinorMatrix.zero(4)
    eye4 = SpinorMatrix.identity(4)

    def four_blocks(a, b, c, d):
        rows = []
        for i in range(4):
            rows.append(tuple(a.rows[i]) + tuple(b.rows[i]))
        for i in range(4):
            rows.append(tuple(c.rows[i]) + tuple(d.rows[i]))
        return SpinorMatrix(rows)

    out = {0: four_blocks(z4, -gamma4(0), -gamma4(0), z4)}
    out[5] = four_blocks(z4, -eye4, eye4, z4)
    for i in (1, 2, 3, 4):
        out[i] = four_blocks(z4, gamma4(i), gamma4(i), z4)
    out["omega"] = four_blocks(eye4 * I, z4, z4, -(eye4 * I))
    out["D"] = four_blocks(eye4, z4, z4, -eye4)
    return out


# Grade decomposition in the 64 subset products of the m_nu.


@lru_cache(maxsize=None)
def _subset_products() -> dict:
    out = {(): SpinorMatrix.identity(8)}
    for r in range(1, 7):
        for subset in combinations(CLIFF_INDICES, r):
            mat = m(subset[0])
            for nu in subset[1:]:
                mat = mat @ m(nu)
            out[subset] = mat
    return out


def grade_components(x: SpinorMatrix) -> dict:
    """Coefficients of x in the subset-product basis, keyed by index tuple."""
    comps = {}
    for subset, mat in _subset_products().items():
        sq = ONE if not subset else (mat @ mat).entry(0, 0)
        coeff = (mat @ x).trace() * sq * Fraction(1, 8)
        if coeff:
            comps[subset] = coeff
    return comps


@dataclass(frozen=True)
class GroupElement:
    """One-parameter subgroup element with an exact or float backend."""

    matrix: object
    exact: bool
    generator: SpinorMatrix
    angle: object

    def inverse(self) -> GroupElement:
        if self.exact:
            inv = _exact_exp(self.generator, -self.angle)
            return GroupElement(inv, True, self.generator, -self.angle)
        mat = np.linalg.inv(self.matrix)
        return GroupElement(mat, False, self.generator, -self.angle)

    def __matmul__(self, other: GroupElement):
        a = self.matrix if not self.exact else self.matrix.to_float()
        b = other.matrix if not other.exact else other.matrix.to_float()
        return a @ b

    def compose_exact(self, other: GroupElement) -> SpinorMatrix:
        if not (self.exact and other.exact):
            raise ValueError("exact composition needs exact factors")
        return self.matrix @ other.matrix


_COS_TABLE = [1, 0, -1, 0]
_SIN_TABLE = [0, 1, 0, -1]


def _eighth_turn(k: int) -> tuple[ExactScalar, ExactScalar]:
    # (cos, sin) of k pi / 4.
    k %= 8
    if k % 2 == 0:
        q = k // 2
        return ExactScalar(_COS_TABLE[q]), ExactScalar(_SIN_TABLE[q])
    c = INV_SQRT2 if k in (1, 7) else -INV_SQRT2
    s = INV_SQRT2 if k in (1, 3) else -INV_SQRT2
    return c, s


def _exact_exp(x: SpinorMatrix, angle_pi: Fraction) -> SpinorMatrix:
    k = angle_pi * 4
    assert k.denominator == 1
    c, s = _eighth_turn(int(k))
    return SpinorMatrix.identity(x.size) * c + x * s


def group_exp(x: SpinorMatrix, omega, *, pi_units: bool = False) -> GroupElement:
    """exp(omega m_{mu nu} / 2) for a bivector, exp(omega E) for the
    pseudoscalar.

    With pi_units the angle is a Fraction multiple of pi and the result is
    exact over Q(zeta_8) whenever the effective angle is a multiple of pi/4
    (the closed form needs cos and sin of that angle only); otherwise a float
    matrix is returned and .exact is False.
    """
    comps = grade_components(x)
    grades = {len(s) for s in comps}
    if grades == {2}:
        half = True
    elif grades == {6}:
        half = False
    else:
        raise ValueError("generator must be a bivector or the pseudoscalar")
    square = (x @ x).entry(0, 0)
    if (x @ x) != SpinorMatrix.identity(8) * square or not square.is_rational:
        raise ValueError("generator must square to a scalar")
    sq = square.as_fraction()

    if pi_units:
        angle_pi = Fraction(omega) / 2 if half else Fraction(omega)
        exact_angle = (angle_pi * 4).denominator == 1
        if exact_angle and (sq == -1 or angle_pi == 0):
            mat = _exact_exp(x, angle_pi)
            return GroupElement(mat, True, x, angle_pi)
        theta = float(angle_pi) * math.pi
    else:
        theta = float(omega) / 2 if half else float(omega)

    xf = x.to_float()
    eye = np.eye(x.size, dtype=complex)
    if sq == -1:
        mat = math.cos(theta) * eye + math.sin(theta) * xf
    else:
        mat = math.cosh(theta) * eye + math.sinh(theta) * xf
    return GroupElement(mat, False, x, theta)


def _dual(mu: int, nu: int, g: SpinorMatrix) -> SpinorMatrix:
    # gamma_{mu nu} squares to a sign, so its trace-dual partner is its
    # inverse: -eta^mu eta^nu gamma_{mu nu}.  This normalizes the pairing
    # to Tr(g . dual(g)) = +4 for every index pair.
    s = -METRIC[mu] * METRIC[nu]
    return g if s > 0 else -g


_TRACE_PAIRS = {
    6: tuple(PAIRS),
    5: tuple((a, b) for a, b in PAIRS if 5 not in (a, b)),
}


def trace_identity_check(dim_d: int, n_dim: int = 4) -> ExactScalar:
    """Sum of Tr(gamma_{mu nu} gamma^{mu nu}) over mu < nu; equals
    n_dim * d(d-1)/2 for d = 6 (conformal) and d = 5 (de Sitter)."""
    total = ZERO
    for mu, nu in _TRACE_PAIRS[dim_d]:
        g = gamma4_pair(mu, nu)
        total = total + (g @ _dual(mu, nu, g)).trace()
    expected = Fraction(n_dim * dim_d * (dim_d - 1), 2)
    assert total == ExactScalar.from_rational(expected)
    return total


def trace_identity_suite() -> list[Check]:
    """Bivector trace sums and Fierz completeness on the 4x4 block.

    The full 15-pair sum obeys the two-delta expansion with coefficients
    (4, -1).  The claimed two-delta forms for the 10-pair and 5-pair subsets
    are checked as stated; they fail entrywise because the subset sums
    contain a third invariant structure, the vector channel
    sum_alpha gamma_alpha x gamma_alpha^{-1}, whose two trace contractions
    (20 and 0) coincide with those of the two-delta ansatz and so cannot be
    seen by trace fitting.  The -completed checks carry the corrected
    identities: subset(alpha beta) = 4 dd' - dd - vector and
    subset(alpha 5) = vector, which restore the passing 15-pair sum.
    """
    d6 = list(PAIRS)
    d5 = [(a, b) for a, b in PAIRS if 5 not in (a, b)]
    a5 = [(a, 5) for a in (0, 1, 2, 3, 4)]
    # Vector-channel tensor from the vector generators directly; the inverse
    # of gamma_alpha is eta^alpha gamma_alpha in the five-index metric.
    vector = [(gamma4(a), gamma4(a) * ExactScalar(-1 if a == 0 else 1))
              for a in range(5)]

    def tsum(pairs) -> Fraction:
        total = ZERO
        for mu, nu in pairs:
            g = gamma4_pair(mu, nu)
            total = total + (g @ _dual(mu, nu, g)).trace()
        return total.as_fraction()

    def traceless() -> int:
        return sum(0 if not gamma4_pair(mu, nu).trace() else 1 for mu, nu in d6)

    def fierz(pairs, a_coef: Fraction, b_coef: Fraction,
              v_coef: Fraction = Fraction(0)) -> int:
        bad = 0
        mats = [(gamma4_pair(mu, nu), _dual(mu, nu, gamma4_pair(mu, nu)))
                for mu, nu in pairs]
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    for dd in range(4):
                        total = ZERO
                        for low, high in mats:
                            total = total + low.entry(a, b) * high.entry(c, dd)
                        want = ExactScalar.from_rational(
                            a_coef * (a == dd) * (c == b)
                        ) + ExactScalar.from_rational(b_coef * (a == b) * (c == dd))
                        if v_coef:
                            vc = ZERO
                            for low, high in vector:
                                vc = vc + low.entry(a, b) * high.entry(c, dd)
                            want = want + vc * ExactScalar.from_rational(v_coef)
                        bad += 0 if total == want else 1
        return bad

    return [
        run_check("trace-sum-d6", "Golamam", lambda: tsum(d6) - 60),
        run_check("trace-sum-d5", "Golamam", lambda: tsum(d5) - 40),
        run_check("trace-sum-a5", "Golamam", lambda: tsum(a5) - 20),
        run_check("bivectors-traceless", "Golamam", traceless),
        run_check("fierz-d6", "TheormCasimirs", lambda: fierz(d6, Fraction(4), Fraction(-1))),
        run_check(
            "fierz-d5", "TheormCasimirs",
            lambda: fierz(d5, Fraction(8, 3), Fraction(-2, 3)),
        ),
        run_check(
            "fierz-a5", "TheormCasimirs",
            lambda: fierz(a5, Fraction(4, 3), Fraction(-1, 3)),
        ),
        run_check(
            "fierz-d5-completed", "TheormCasimirs",
            lambda: fierz(d5, Fraction(4), Fraction(-1), Fraction(-1)),
        ),
        run_check(
            "fierz-a5-completed", "TheormCasimirs",
            lambda: fierz(a5, Fraction(0), Fraction(0), Fraction(1)),
        ),
    ]
