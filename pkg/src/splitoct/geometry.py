"""Conformal compactification charts and exact cone identities.

Two layers share this module.  The float layer carries the holomorphic chart
g_c between complexified Minkowski space and the precompact z picture, tube
membership, conjugation and inversion, the Cayley U(2) form, and the de
Sitter sections of the projective quadric; map identities are graded
numerically (1e-10 default, Jacobian pullbacks 1e-8).  The exact layer runs
sparse rational polynomials through the Gegenbauer kernels, the 6d wave
operator, and the first-order z-picture generators with zero tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from .reporting import Check, run_check

__all__ = [
    "SingularMap",
    "NullInversion",
    "OffShell",
    "LightconeSingularity",
    "MinkowskiPoint",
    "ConformalPoint",
    "EmbeddedSixVector",
    "EmbeddingResult",
    "DsChart",
    "WeylFactor",
    "CayleyForm",
    "HarmonicPolynomial",
    "SIX_SIGNS",
    "gc_forward",
    "gc_inverse",
    "conformal_distance_check",
    "conformal_metric_check",
    "tube_membership",
    "conformal_conjugate",
    "inversion",
    "inversion_weyl",
    "compact_phase",
    "cayley_u2",
    "eds_embed",
    "ds_embed",
    "ds_minkowski_coords",
    "gegenbauer_H",
    "gegenbauer_polynomial",
    "gegenbauer_series_residual",
    "series_gate",
    "bergman_kernel",
    "box6_commutator_check",
    "cone_obstruction",
    "twopoint_harmonicity_check",
    "ds_twopoint",
    "sixd_twopoint",
    "zpicture_generators",
    "zpicture_bracket_check",
    "geometry_suite",
]

DEFAULT_TOL = 1e-10
JACOBIAN_TOL = 1e-8

# coordinate order (zeta0, zeta5, zeta1, zeta2, zeta3, zeta4)
SIX_SIGNS = (-1, -1, 1, 1, 1, 1)


class SingularMap(ValueError):
    """The chart's conformal factor vanishes at the requested point."""


class NullInversion(ValueError):
    """(z)^2 = 0, so the inversion z/(z)^2 is undefined."""


class OffShell(ValueError):
    """Input violates the quadric or section constraint it must satisfy."""


class LightconeSingularity(ZeroDivisionError):
    """Two-point kernel evaluated at lightlike separation."""


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class MinkowskiPoint:
    """Point of (complexified) Minkowski space, signature (-,+,+,+)."""

    x0: complex
    x1: complex
    x2: complex
    x3: complex

    @property
    def coords(self) -> tuple[complex, complex, complex, complex]:
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def square(self) -> complex:
        return self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 - self.x0 * self.x0

    @property
    def is_real(self) -> bool:
        return all(abs(complex(c).imag) == 0.0 for c in self.coords)

    def __sub__(self, other: "MinkowskiPoint") -> "MinkowskiPoint":
        return MinkowskiPoint(*(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class ConformalPoint:
    """Point of the complex picture; bilinear square and sesquilinear pairing."""

    z1: complex
    z2: complex
    z3: complex
    z4: complex

    @property
    def coords(self) -> tuple[complex, complex, complex, complex]:
        return (self.z1, self.z2, self.z3, self.z4)

    @cached_property
    def square(self) -> complex:
        return sum(c * c for c in self.coords)

    @cached_property
    def pairing(self) -> float:
        return sum((complex(c) * complex(c).conjugate()).real for c in self.coords)

    def __sub__(self, other: "ConformalPoint") -> "ConformalPoint":
        return ConformalPoint(*(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class EmbeddedSixVector:
    """Homogeneous quadric coordinates, metric (-,-,+,+,+,+)."""

    zeta0: float
    zeta5: float
    zeta1: float
    zeta2: float
    zeta3: float
    zeta4: float

    @property
    def coords(self) -> tuple[float, ...]:
        return (self.zeta0, self.zeta5, self.zeta1, self.zeta2, self.zeta3, self.zeta4)

    @property
    def square(self) -> float:
        return sum(s * c * c for s, c in zip(SIX_SIGNS, self.coords))


def _as_minkowski(x) -> MinkowskiPoint:
    if isinstance(x, MinkowskiPoint):
        return x
    return MinkowskiPoint(*x)


def _as_conformal(z) -> ConformalPoint:
    if isinstance(z, ConformalPoint):
        return z
    return ConformalPoint(*z)


def _dot4(u, v) -> complex:
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# the chart g_c and its inverse


def omega_of_x(x) -> complex:
    x = _as_minkowski(x)
    return (1 + x.square) / 2 - 1j * x.x0


def omega_of_z(z) -> complex:
    z = _as_conformal(z)
    return (1 + z.square) / 2 + z.z4


def gc_forward(x, tiny: float = 1e-14) -> ConformalPoint:
    """Map x to the precompact picture; z = (x1,x2,x3,(1-(x)^2)/2)/Omega(x)."""
    x = _as_minkowski(x)
    om = omega_of_x(x)
    if abs(om) < tiny:
        raise SingularMap(f"conformal factor vanishes at {x.coords}")
    return ConformalPoint(x.x1 / om, x.x2 / om, x.x3 / om, (1 - x.square) / (2 * om))


def gc_inverse(z, tiny: float = 1e-14) -> MinkowskiPoint:
    """Invert the chart; same rational form with x4 = -i x0 as fourth slot."""
    z = _as_conformal(z)
    om = omega_of_z(z)
    if abs(om) < tiny:
        raise SingularMap(f"conformal factor vanishes at {z.coords}")
    x4 = (1 - z.square) / (2 * om)
    return MinkowskiPoint(1j * x4, z.z1 / om, z.z2 / om, z.z3 / om)


def conformal_distance_check(x, y) -> float:
    """Residual of (z-u)^2 = (x-y)^2 / (Omega(x) Omega(y))."""
    x, y = _as_minkowski(x), _as_minkowski(y)
    z, u = gc_forward(x), gc_forward(y)
    lhs = (z - u).square
    rhs = (x - y).square / (omega_of_x(x) * omega_of_x(y))
    return abs(lhs - rhs)


def _jacobian(f, base, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian with one Richardson refinement."""
    base = np.asarray(base, dtype=complex)
    cols = []
    for k in range(base.size):
        step = np.zeros(base.size, dtype=complex)

        def diff(width: float) -> np.ndarray:
            step[k] = width
            out = (np.asarray(f(base + step)) - np.asarray(f(base - step))) / (2 * width)
            step[k] = 0.0
            return out

        d1, d2 = diff(h), diff(h / 2)
        cols.append((4 * d2 - d1) / 3)
    return np.stack(cols, axis=1)


def conformal_metric_check(x, h: float = 1e-6) -> float:
    """Residual of the pullback J^T J = eta / Omega(x)^2 of the flat z metric."""
    x = _as_minkowski(x)
    jac = _jacobian(lambda p: gc_forward(MinkowskiPoint(*p)).coords, x.coords, h)
    pullback = jac.T @ jac
    eta = np.diag([-1.0, 1.0, 1.0, 1.0]).astype(complex)
    return float(np.max(np.abs(pullback - eta / omega_of_x(x) ** 2)))


# ---------------------------------------------------------------------------
# tubes, conjugation, inversion


def _forward_conditions(z: ConformalPoint) -> bool:
    mod = abs(z.square)
    return mod < 1.0 and z.pairing < (1.0 + mod * mod) / 2.0


def tube_membership(z, tol: float = DEFAULT_TOL) -> str:
    """Classify z as forward, backward, boundary, or outside."""
    z = _as_conformal(z)
    if abs(z.pairing - 1.0) <= tol and abs(abs(z.square) - 1.0) <= tol:
        return "boundary"
    if _forward_conditions(z):
        return "forward"
    try:
        star = conformal_conjugate(z)
    except NullInversion:
        return "outside"
    if _forward_conditions(star):
        return "backward"
    return "outside"


def conformal_conjugate(z, tiny: float = 1e-14) -> ConformalPoint:
    """z* = conj(z) / (conj(z))^2, the involution fixing the real boundary."""
    z = _as_conformal(z)
    s = complex(z.square).conjugate()
    if abs(s) < tiny:
        raise NullInversion("conjugate point undefined on the null cone")
    return ConformalPoint(*(complex(c).conjugate() / s for c in z.coords))


def inversion(z, tiny: float = 1e-14) -> ConformalPoint:
    """The Weyl inversion z -> z/(z)^2."""
    z = _as_conformal(z)
    if abs(z.square) < tiny:
        raise NullInversion("inversion undefined on the null cone")
    return ConformalPoint(*(c / z.square for c in z.coords))


@dataclass(frozen=True)
class WeylFactor:
    value: complex
    residual: float


def inversion_weyl(z, h: float = 1e-6) -> WeylFactor:
    """Weyl factor 1/((z)^2)^2 of the inversion, checked against its Jacobian."""
    z = _as_conformal(z)
    factor = 1.0 / z.square**2
    jac = _jacobian(lambda p: inversion(ConformalPoint(*p)).coords, z.coords, h)
    pullback = jac.T @ jac
    residual = float(np.max(np.abs(pullback - factor * np.eye(4))))
    return WeylFactor(factor, residual)


def compact_phase(z, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Split a boundary point as z = r e^{i tau}, tau in (-pi/2, pi/2]."""
    z = _as_conformal(z)
    if tube_membership(z, tol) != "boundary":
        raise OffShell("phase decomposition needs a boundary point")
    tau = math.atan2(complex(z.square).imag, complex(z.square).real) / 2.0
    if tau <= -math.pi / 2:
        tau += math.pi
    r = np.asarray(z.coords, dtype=complex) * np.exp(-1j * tau)
    if float(np.max(np.abs(r.imag))) > math.sqrt(tol):
        raise OffShell("phase decomposition needs a boundary point")
    return r.real, tau


# ---------------------------------------------------------------------------
# Cayley form

_CAYLEY_UNITS = (
    np.array([[0, -1j], [-1j, 0]], dtype=complex),
    np.array([[0, -1], [1, 0]], dtype=complex),
    np.array([[-1j, 0], [0, 1j]], dtype=complex),
)


@dataclass(frozen=True)
class CayleyForm:
    matrix: np.ndarray
    unitarity_residual: float
    coefficient_residual: float


def cayley_u2(x, tiny: float = 1e-14) -> CayleyForm:
    """U(2) matrix (1+r)(1-r)^{-1}, r = x^j E*_j + i x^0, versus the chart."""
    x = _as_minkowski(x)
    r = 1j * x.x0 * np.eye(2, dtype=complex)
    for coord, unit in zip((x.x1, x.x2, x.x3), _CAYLEY_UNITS):
        r = r + coord * unit
    den = np.eye(2, dtype=complex) - r
    if abs(np.linalg.det(den)) < tiny:
        raise SingularMap("1 - r is not invertible")
    mat = (np.eye(2, dtype=complex) + r) @ np.linalg.inv(den)
    unitarity = float(np.max(np.abs(mat @ mat.conj().T - np.eye(2))))
    coeffs = [-np.trace(mat @ unit) / 2 for unit in _CAYLEY_UNITS]
    coeffs.append(np.trace(mat) / 2)
    z = gc_forward(x)
    coefficient = float(max(abs(c - w) for c, w in zip(coeffs, z.coords)))
    return CayleyForm(mat, unitarity, coefficient)


# ---------------------------------------------------------------------------
# de Sitter sections


@dataclass(frozen=True)
class EmbeddingResult:
    z: ConformalPoint
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _tangent_pullback_residual(chart, base, omega, signs_in, signs_out, rng) -> float:
    """Worst ratio defect of (d zeta)^2 = omega^2 (dz)^2 on constraint tangents."""
    base = np.asarray(base, dtype=float)
    s_in = np.asarray(signs_in, dtype=float)
    s_out = np.asarray(signs_out, dtype=float)
    jac = _jacobian(chart, base, 1e-6).real
    grad = s_in * base
    worst = 0.0
    for _ in range(4):
        v = rng.normal(size=base.size)
        v -= grad * (np.dot(s_in * v, base) / np.dot(grad, grad))
        dv = jac @ v
        lhs = float(np.dot(s_in * v, v))
        rhs = float(omega**2 * np.dot(s_out * dv, dv))
        worst = max(worst, abs(lhs - rhs) / float(np.dot(v, v)))
    return worst


def eds_embed(
    zeta,
    R: float,
    tol: float = DEFAULT_TOL,
    jac_tol: float = JACOBIAN_TOL,
    rng: np.random.Generator | None = None,
) -> EmbeddingResult:
    """Section z_i = zeta_i/(R + zeta_beta) of the Euclidean half-sphere.

    zeta = (zeta_beta, zeta_1..zeta_4) with Euclidean norm R; zeta_beta = 0
    lands on the boundary equator and negative zeta_beta is rejected.
    """
    zb, *rest = (float(c) for c in zeta)
    if R <= 0:
        raise ValueError("radius must be positive")
    if abs(zb * zb + sum(c * c for c in rest) - R * R) > tol * max(1.0, R * R):
        raise OffShell("point is not on the sphere of radius R")
    if zb < -tol:
        raise OffShell("Euclidean section needs zeta_beta >= 0")
    rng = rng or np.random.default_rng(0)
    om = R + zb
    z = ConformalPoint(*(c / om for c in rest))
    kappa = 1.0 / R
    beta = math.atanh(min(kappa * zb, 1.0 - 1e-16))
    phase = max(
        abs(z.square - (1 - kappa * zb) / (1 + kappa * zb)),
        abs(z.square - math.exp(-2 * beta)),
    )
    want = "boundary" if zb <= tol else "forward"
    weyl = abs(om - 2 * R / (1 + z.square))
    jac = _tangent_pullback_residual(
        lambda p: np.asarray(p[1:]) / (R + p[0]),
        (zb, *rest),
        om,
        (1, 1, 1, 1, 1),
        (1, 1, 1, 1),
        rng,
    )
    checks = (
        run_check("eds-phase", "2.37cont", lambda: phase, tol),
        run_check("eds-membership", "3.20", lambda: tube_membership(z, tol) == want),
        run_check("eds-weyl", "vvvvvob", lambda: weyl, tol * max(1.0, R)),
        run_check("eds-jacobian", "3.22", lambda: jac, jac_tol),
    )
    return EmbeddingResult(z, checks)


def ds_embed(zeta, R: float, tol: float = DEFAULT_TOL) -> EmbeddingResult:
    """Section z_i = zeta_i/(R - i zeta_0) of the real de Sitter hyperboloid.

    zeta = (zeta_0, zeta_1..zeta_4) with spatial square minus zeta_0^2 = R^2;
    the lift to zeta_5 = R lies on the quadric and the image on the compact
    boundary.
    """
    z0, *rest = (float(c) for c in zeta)
    if R <= 0:
        raise ValueError("radius must be positive")
    if abs(sum(c * c for c in rest) - z0 * z0 - R * R) > tol * max(1.0, R * R):
        raise OffShell("point is not on the hyperboloid of radius R")
    lift = EmbeddedSixVector(z0, R, *rest)
    om = R - 1j * z0
    z = ConformalPoint(*(c / om for c in rest))
    phase = abs(z.square - (R + 1j * z0) / (R - 1j * z0))
    checks = (
        run_check("ds-quadric", "3.17", lambda: abs(lift.square), tol * max(1.0, R * R)),
        run_check("ds-phase", "2.37", lambda: phase, tol),
        run_check("ds-membership", "3.17", lambda: tube_membership(z, tol) == "boundary"),
    )
    return EmbeddingResult(z, checks)


@dataclass(frozen=True)
class DsChart:
    x: MinkowskiPoint
    omega: float
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def ds_minkowski_coords(
    zeta,
    R: float,
    tol: float = DEFAULT_TOL,
    jac_tol: float = JACOBIAN_TOL,
    rng: np.random.Generator | None = None,
) -> DsChart:
    """Flat coordinates kappa x = zeta/(R + zeta_4) on the hyperboloid."""
    coords = tuple(float(c) for c in zeta)
    z0, z1, z2, z3, z4 = coords
    if R <= 0:
        raise ValueError("radius must be positive")
    if abs(z1 * z1 + z2 * z2 + z3 * z3 + z4 * z4 - z0 * z0 - R * R) > tol * max(1.0, R * R):
        raise OffShell("point is not on the hyperboloid of radius R")
    if abs(R + z4) < 1e-12 * R:
        raise SingularMap("chart degenerates where R + zeta_4 = 0")
    rng = rng or np.random.default_rng(0)
    kappa = 1.0 / R
    x = MinkowskiPoint(*(R * c / (R + z4) for c in (z0, z1, z2, z3)))
    omega = 1.0 + kappa * z4
    scale = abs(kappa**2 * x.square - (1 - kappa * z4) / (1 + kappa * z4))
    weyl = abs(omega - 2 / (1 + kappa**2 * x.square))
    jac = _tangent_pullback_residual(
        lambda p: R * np.asarray(p[:4]) / (R + p[4]),
        coords,
        omega,
        (-1, 1, 1, 1, 1),
        (-1, 1, 1, 1),
        rng,
    )
    checks = (
        run_check("chart-scale", "bbbbob", lambda: scale, tol),
        run_check("chart-weyl", "3.25", lambda: weyl, tol),
        run_check("chart-jacobian", "3.25", lambda: jac, jac_tol),
    )
    return DsChart(x, omega, checks)


# ---------------------------------------------------------------------------
# sparse exact polynomials


class HarmonicPolynomial:
    """Sparse polynomial, exponent tuples to exact coefficients.

    The variable count is fixed per instance: four for the z picture, six
    for quadric coordinates (order zeta0, zeta5, zeta1..zeta4), eight for
    Gegenbauer kernels in two vector arguments.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int = 4) -> None:
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars or any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            if coeff:
                clean[key] = clean.get(key, 0) + coeff
                if not clean[key]:
                    del clean[key]
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def constant(cls, value, nvars: int = 4) -> "HarmonicPolynomial":
        coeff = value if isinstance(value, (int, Fraction)) else Fraction(value)
        return cls({(0,) * nvars: coeff}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int = 4) -> "HarmonicPolynomial":
        exps = [0] * nvars
        exps[index] = 1
        return cls({tuple(exps): 1}, nvars)

    def __add__(self, other: "HarmonicPolynomial") -> "HarmonicPolynomial":
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = merged.get(exps, 0) + coeff
        return HarmonicPolynomial(merged, self.nvars)

    def __sub__(self, other: "HarmonicPolynomial") -> "HarmonicPolynomial":
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, HarmonicPolynomial):
            out: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = out.get(key, 0) + c1 * c2
            return HarmonicPolynomial(out, self.nvars)
        factor = other if isinstance(other, (int, Fraction)) else Fraction(other)
        return HarmonicPolynomial({e: c * factor for e, c in self.terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "HarmonicPolynomial":
        out = HarmonicPolynomial.constant(1, self.nvars)
        for _ in range(power):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HarmonicPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, index: int) -> "HarmonicPolynomial":
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            if exps[index]:
                key = tuple(e - (k == index) for k, e in enumerate(exps))
                out[key] = out.get(key, 0) + coeff * exps[index]
        return HarmonicPolynomial(out, self.nvars)

    def euler(self) -> "HarmonicPolynomial":
        out = {exps: coeff * sum(exps) for exps, coeff in self.terms.items()}
        return HarmonicPolynomial(out, self.nvars)

    def laplacian(self, signs=None) -> "HarmonicPolynomial":
        signs = signs or (1,) * self.nvars
        out = HarmonicPolynomial({}, self.nvars)
        for index, sign in enumerate(signs):
            out = out + self.diff(index).diff(index) * sign
        return out

    def is_harmonic(self, signs=None) -> bool:
        return self.laplacian(signs).is_zero()

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.terms)

    def evaluate(self, point):
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for value, power in zip(point, exps):
                term = term * value**power
            total = total + term
        return total

    def __repr__(self) -> str:
        return f"HarmonicPolynomial({self.terms!r}, nvars={self.nvars})"


# ---------------------------------------------------------------------------
# Gegenbauer kernels


def gegenbauer_H(n: int, a, b):
    """Kernel H_n = sum_k C(n-k,k) (2 a.b)^{n-2k} (-a^2 b^2)^k; exact on rationals."""
    ab = _dot4(a, b)
    aa = _dot4(a, a)
    bb = _dot4(b, b)
    total = 0
    for k in range(n // 2 + 1):
        total = total + comb(n - k, k) * (2 * ab) ** (n - 2 * k) * (-aa * bb) ** k
    return total


def gegenbauer_polynomial(n: int) -> HarmonicPolynomial:
    """H_n as an exact polynomial in eight variables (a = 0..3, b = 4..7)."""
    def var(i: int) -> HarmonicPolynomial:
        return HarmonicPolynomial.variable(i, 8)

    ab = sum((var(i) * var(4 + i) for i in range(4)), HarmonicPolynomial({}, 8))
    aa = sum((var(i) * var(i) for i in range(4)), HarmonicPolynomial({}, 8))
    bb = sum((var(4 + i) * var(4 + i) for i in range(4)), HarmonicPolynomial({}, 8))
    total = HarmonicPolynomial({}, 8)
    for k in range(n // 2 + 1):
        total = total + (2 * ab) ** (n - 2 * k) * (aa * bb * -1) ** k * comb(n - k, k)
    return total


def series_gate(z, u) -> float:
    """Ratio-test gate |zbreve.u| + |zbreve^2 u^2|^{1/2}; below 1 converges."""
    zb = inversion(z)
    u = _as_conformal(u)
    return abs(_dot4(zb.coords, u.coords)) + math.sqrt(abs(zb.square * u.square))


def gegenbauer_series_residual(z, u, n_max: int = 40, tiny: float = 1e-14) -> float:
    """Relative defect of 1/(z-u)^2 against (1/(z)^2) sum_n H_n(zbreve, u)."""
    z, u = _as_conformal(z), _as_conformal(u)
    sep = (z - u).square
    if abs(sep) < tiny:
        raise LightconeSingularity("coincident arguments")
    zb = inversion(z)
    total = sum(gegenbauer_H(n, zb.coords, u.coords) for n in range(n_max + 1))
    return abs(total / z.square - 1 / sep) * abs(sep)


def bergman_kernel(z) -> float:
    """Diagonal norm kernel 1/(1 - 2 z.zbar + (z)^2 (zbar)^2); positive on the tube."""
    z = _as_conformal(z)
    den = 1.0 - 2.0 * z.pairing + abs(z.square) ** 2
    return 1.0 / den


# ---------------------------------------------------------------------------
# 6d wave operator on the cone


def _six_square() -> HarmonicPolynomial:
    out = HarmonicPolynomial({}, 6)
    for index, sign in enumerate(SIX_SIGNS):
        var = HarmonicPolynomial.variable(index, 6)
        out = out + var * var * sign
    return out


def cone_obstruction(degree) -> Fraction:
    """Coefficient 12 + 4(d-2) of f in box6((zeta)^2 f) on the cone."""
    return Fraction(12) + 4 * (Fraction(degree) - 2)


def box6_commutator_check(f: HarmonicPolynomial, homogeneity=None) -> dict:
    """Exact check of box6((zeta)^2 f) - (zeta)^2 box6 f = 12 f + 4 zeta.del f.

    With a homogeneity degree d supplied (f of degree d-2), also reports the
    cone coefficient 12 + 4(d-2) and whether it vanishes; the unique such
    degree is d = -1.
    """
    if f.nvars != 6:
        raise ValueError("expects a polynomial in the six quadric variables")
    zsq = _six_square()
    comm = (zsq * f).laplacian(SIX_SIGNS) - zsq * f.laplacian(SIX_SIGNS)
    out = {"identity_holds": comm == f * 12 + f.euler() * 4}
    if homogeneity is not None:
        coeff = cone_obstruction(homogeneity)
        out["cone_coefficient"] = coeff
        out["cone_matches"] = comm == f * coeff
        out["vanishes"] = coeff == 0
    return out


def _box6_numerator(q: HarmonicPolynomial) -> HarmonicPolynomial:
    """Numerator of box6(1/q) over the denominator q^3."""
    num = q * q.laplacian(SIX_SIGNS) * -1
    for index, sign in enumerate(SIX_SIGNS):
        d = q.diff(index)
        num = num + d * d * (2 * sign)
    return num


def twopoint_harmonicity_check(zeta_prime) -> dict:
    """box6 of the cone kernel 1/(-2 zeta.zeta') versus 8 (zeta')^2 / Q^3.

    The literal difference kernel 1/((zeta - zeta')^2) has box6 numerator
    -4 (zeta - zeta')^2, nonzero off the cone; the cone lift is harmonic
    exactly when the second argument is null.
    """
    zp = tuple(Fraction(c) for c in zeta_prime)
    if len(zp) != 6:
        raise ValueError("expects six quadric coordinates")
    zp_sq = sum(s * c * c for s, c in zip(SIX_SIGNS, zp))
    cone = HarmonicPolynomial(
        {tuple(int(k == i) for k in range(6)): -2 * s * c for i, (s, c) in enumerate(zip(SIX_SIGNS, zp))},
        6,
    )
    diff = HarmonicPolynomial({}, 6)
    for index, (sign, c) in enumerate(zip(SIX_SIGNS, zp)):
        var = HarmonicPolynomial.variable(index, 6) - HarmonicPolynomial.constant(c, 6)
        diff = diff + var * var * sign
    return {
        "cone_numerator_matches": _box6_numerator(cone)
        == HarmonicPolynomial.constant(8 * zp_sq, 6),
        "harmonic_on_cone": zp_sq == 0,
        "flat_numerator_matches": _box6_numerator(diff) == diff * -4,
        "zeta_prime_square": zp_sq,
    }


# ---------------------------------------------------------------------------
# two-point kernels


def ds_twopoint(zeta, zeta_prime, R: float = 1.0, tiny: float = 1e-12) -> float:
    """Massless two-point value 1/(8 pi^2 (R^2 - zeta.zeta')) on the hyperboloid."""
    dot = -zeta[0] * zeta_prime[0] + sum(a * b for a, b in zip(zeta[1:], zeta_prime[1:]))
    den = R * R - dot
    if abs(den) <= tiny * max(1.0, R * R):
        raise LightconeSingularity("lightlike separation on the hyperboloid")
    return 1.0 / (8 * math.pi**2 * den)


def sixd_twopoint(p, q, tiny: float = 1e-12) -> float:
    """Conformally invariant kernel 1/((2 pi)^2 (p - q)^2) on the quadric."""
    sep = sum(s * (a - b) ** 2 for s, a, b in zip(SIX_SIGNS, p, q))
    if abs(sep) <= tiny:
        raise LightconeSingularity("lightlike separation")
    return 1.0 / ((2 * math.pi) ** 2 * sep)


# ---------------------------------------------------------------------------
# z-picture generators


def zpicture_generators() -> dict:
    """First-order conformal generators acting on four-variable polynomials.

    Keys are one-based coordinate labels: T and C are 4-tuples, H a single
    operator, J a dict over pairs (i, j) with i < j.
    """
    zsq = sum(
        (HarmonicPolynomial.variable(i) * HarmonicPolynomial.variable(i) for i in range(4)),
        HarmonicPolynomial({}, 4),
    )

    def translation(i: int):
        return lambda p: p.diff(i - 1)

    def special(i: int):
        zi = HarmonicPolynomial.variable(i - 1)
        return lambda p: zi * p.euler() * 2 - zsq * p.diff(i - 1)

    def rotation(i: int, j: int):
        zi, zj = HarmonicPolynomial.variable(i - 1), HarmonicPolynomial.variable(j - 1)
        return lambda p: zi * p.diff(j - 1) - zj * p.diff(i - 1)

    return {
        "T": tuple(translation(i) for i in range(1, 5)),
        "C": tuple(special(i) for i in range(1, 5)),
        "H": lambda p: p.euler() * -1,
        "J": {(i, j): rotation(i, j) for i in range(1, 5) for j in range(i + 1, 5)},
    }


def zpicture_bracket_check(max_degree: int = 6) -> int:
    """Count bracket failures of the z-picture algebra on monomials."""
    gens = zpicture_generators()
    trans, spec, ham, rots = gens["T"], gens["C"], gens["H"], gens["J"]

    def bracket(a, b, p):
        return a(b(p)) - b(a(p))

    def rotation(i: int, j: int, p):
        if i == j:
            return HarmonicPolynomial({}, 4)
        return rots[(i, j)](p) if i < j else rots[(j, i)](p) * -1

    failures = 0
    for exps in itertools.product(range(max_degree + 1), repeat=4):
        if sum(exps) > max_degree:
            continue
        mono = HarmonicPolynomial({exps: Fraction(1)})
        for i in range(4):
            if bracket(ham, trans[i], mono) != trans[i](mono):
                failures += 1
            if bracket(ham, spec[i], mono) != spec[i](mono) * -1:
                failures += 1
        for (i, j), rot in rots.items():
            if not bracket(ham, rot, mono).is_zero():
                failures += 1
        for i in range(1, 5):
            for j in range(1, 5):
                want = rotation(i, j, mono) * -2
                if i == j:
                    want = want + ham(mono) * 2
                if bracket(spec[i - 1], trans[j - 1], mono) != want:
                    failures += 1
    return failures


# ---------------------------------------------------------------------------
# randomized samplers


def _sample_tube(rng: np.random.Generator, scale: float = 1.0) -> MinkowskiPoint:
    """Forward-tube point x + iy with y0 above |yvec|."""
    x = rng.uniform(-1.5, 1.5, size=4) * scale
    yvec = rng.uniform(-1.0, 1.0, size=3) * scale
    y0 = float(np.linalg.norm(yvec)) + rng.uniform(0.05, 1.5) * scale
    return MinkowskiPoint(
        x[0] + 1j * y0, x[1] + 1j * yvec[0], x[2] + 1j * yvec[1], x[3] + 1j * yvec[2]
    )


def _sample_real(rng: np.random.Generator, scale: float = 1.5) -> MinkowskiPoint:
    return MinkowskiPoint(*rng.uniform(-scale, scale, size=4))


def _sample_eds(rng: np.random.Generator, R: float) -> tuple[float, ...]:
    while True:
        u = rng.normal(size=5)
        u /= np.linalg.norm(u)
        if abs(u[0]) >= 0.05:
            u[0] = abs(u[0])
            return tuple(R * u)


def _sample_ds(rng: np.random.Generator, R: float) -> tuple[float, ...]:
    z0 = rng.uniform(-1.5, 1.5) * R
    direction = rng.normal(size=4)
    direction /= np.linalg.norm(direction)
    return (z0, *(math.sqrt(R * R + z0 * z0) * direction))


# ---------------------------------------------------------------------------
# verification suite


def geometry_suite(seed: int = 20406, tol: float = DEFAULT_TOL, samples: int = 100) -> list[Check]:
    """Run the chart, embedding, and exact-identity battery."""
    rng = np.random.default_rng(seed)
    checks: list[Check] = []

    def roundtrip() -> float:
        worst = 0.0
        for _ in range(samples):
            w = _sample_tube(rng)
            back = gc_inverse(gc_forward(w))
            worst = max(worst, max(abs(a - b) for a, b in zip(back.coords, w.coords)))
        origin = gc_forward(MinkowskiPoint(0, 0, 0, 0))
        worst = max(worst, max(abs(c - w) for c, w in zip(origin.coords, (0, 0, 0, 1))))
        back = gc_inverse(ConformalPoint(0, 0, 0, 1))
        return max(worst, max(abs(c) for c in back.coords))

    checks.append(run_check("compactification-roundtrip", "2.38888888", roundtrip, 1e-12))

    def real_slice() -> float:
        worst = 0.0
        for _ in range(samples):
            z = gc_forward(_sample_real(rng))
            worst = max(worst, abs(z.pairing - 1.0), abs(abs(z.square) - 1.0))
        return worst

    checks.append(run_check("real-slice-boundary", "zoverlinez=1", real_slice, 1e-12))

    def distance() -> float:
        worst = 0.0
        for _ in range(samples // 2):
            worst = max(worst, conformal_distance_check(_sample_tube(rng), _sample_tube(rng)))
            worst = max(worst, conformal_distance_check(_sample_real(rng), _sample_real(rng)))
        x = _sample_real(rng)
        return max(worst, conformal_distance_check(x, x))

    checks.append(run_check("conformal-distance", "2.38''", distance, tol))

    def pullback() -> float:
        worst = 0.0
        for _ in range(10):
            worst = max(worst, conformal_metric_check(_sample_real(rng, 1.0)))
            worst = max(worst, conformal_metric_check(_sample_tube(rng, 0.7)))
        return worst

    checks.append(run_check("metric-pullback", "2.38'", pullback, JACOBIAN_TOL))

    def forward_image() -> bool:
        return all(
            tube_membership(gc_forward(_sample_tube(rng))) == "forward" for _ in range(samples)
        )

    checks.append(run_check("forward-tube-image", "2.40", forward_image))

    def conjugation_swap() -> bool:
        for _ in range(samples // 2):
            z = gc_forward(_sample_tube(rng))
            star = conformal_conjugate(z)
            if tube_membership(star) != "backward":
                return False
            if tube_membership(conformal_conjugate(star)) != "forward":
                return False
        return True

    checks.append(run_check("tube-conjugation", "2.44", conjugation_swap))

    def boundary_fixed() -> float:
        worst = 0.0
        for _ in range(samples // 2):
            z = gc_forward(_sample_real(rng))
            if tube_membership(z) != "boundary":
                return 1.0
            star = conformal_conjugate(z)
            worst = max(worst, max(abs(a - b) for a, b in zip(star.coords, z.coords)))
        return worst

    checks.append(run_check("conjugation-fixes-boundary", "conjugate", boundary_fixed, 1e-12))

    def involution() -> float:
        worst = 0.0
        for _ in range(samples // 2):
            z = gc_forward(_sample_tube(rng))
            again = conformal_conjugate(conformal_conjugate(z))
            worst = max(worst, max(abs(a - b) for a, b in zip(again.coords, z.coords)))
        return worst

    checks.append(run_check("conjugation-involution", "conjugate", involution, 1e-12))

    def omega_floor() -> float:
        n = 100_000
        x = rng.uniform(-3.0, 3.0, size=(n, 4))
        yvec = rng.uniform(-2.0, 2.0, size=(n, 3))
        y0 = np.linalg.norm(yvec, axis=1) + rng.uniform(1e-3, 3.0, size=n)
        w0 = x[:, 0] + 1j * y0
        wv = x[:, 1:] + 1j * yvec
        square = np.sum(wv * wv, axis=1) - w0 * w0
        omega = (1 + square) / 2 - 1j * w0
        ratio = np.abs(omega) / (1 + y0)
        return max(0.0, 0.1 - float(ratio.min()))

    checks.append(run_check("omega-nonvanishing", "595159", omega_floor, 0.0))

    def phase_flip() -> float:
        worst = 0.0
        for _ in range(samples // 2):
            z = gc_forward(_sample_real(rng))
            r, tau = compact_phase(z)
            flipped = -r * np.exp(1j * (tau + math.pi))
            worst = max(worst, float(np.max(np.abs(flipped - np.asarray(z.coords)))))
            if not -math.pi / 2 < tau <= math.pi / 2:
                return 1.0
        return worst

    checks.append(run_check("compact-phase-flip", "r,e,tau", phase_flip, 1e-12))

    def cayley() -> float:
        worst = 0.0
        for _ in range(samples // 2):
            form = cayley_u2(_sample_real(rng))
            worst = max(worst, form.unitarity_residual, form.coefficient_residual)
        identity = cayley_u2(MinkowskiPoint(0, 0, 0, 0)).matrix
        return max(worst, float(np.max(np.abs(identity - np.eye(2)))))

    checks.append(run_check("cayley-unitary", "2.42", cayley, 1e-12))

    def weyl() -> float:
        worst = 0.0
        count = 0
        while count < 15:
            z = gc_forward(_sample_tube(rng))
            if abs(z.square) < 0.35:
                continue
            worst = max(worst, inversion_weyl(z).residual)
            count += 1
        return worst

    checks.append(run_check("inversion-weyl", "weylfactor", weyl, JACOBIAN_TOL))

    def eds_battery() -> bool:
        R = 1.0
        for _ in range(samples):
            if not eds_embed(_sample_eds(rng, R), R, rng=rng).ok:
                return False
        zb = R * math.tanh(0.5)
        spot = eds_embed((zb, math.sqrt(R * R - zb * zb), 0, 0, 0), R, rng=rng)
        if not spot.ok or abs(spot.z.square - math.exp(-1.0)) > 1e-12:
            return False
        equator = eds_embed((0.0, R, 0, 0, 0), R, rng=rng)
        return abs(equator.z.square - 1.0) <= 1e-12 and tube_membership(equator.z) == "boundary"

    checks.append(run_check("eds-forward", "EdS", eds_battery))

    def ds_battery() -> bool:
        R = 1.0
        return all(ds_embed(_sample_ds(rng, R), R).ok for _ in range(samples // 2))

    checks.append(run_check("ds-boundary", "3.17", ds_battery))

    def chart_battery() -> bool:
        R = 1.0
        done = 0
        while done < samples // 2:
            zeta = _sample_ds(rng, R)
            if abs(R + zeta[4]) < 0.1 * R:
                continue
            if not ds_minkowski_coords(zeta, R, rng=rng).ok:
                return False
            done += 1
        spot = ds_minkowski_coords((0, 0, 0, 0, R), R, rng=rng)
        center = max(abs(c) for c in spot.x.coords)
        return center <= 1e-12 and abs(spot.omega - 2.0) <= 1e-12

    checks.append(run_check("ds-minkowski-chart", "bbbbob", chart_battery))

    def gegenbauer_series() -> float:
        worst = 0.0
        count = 0
        while count < 10:
            z = gc_forward(_sample_tube(rng))
            if abs(z.square) < 0.25:
                continue
            u = ConformalPoint(*(rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)))
            u = ConformalPoint(*(0.08 * c for c in u.coords))
            while series_gate(z, u) >= 0.5:
                u = ConformalPoint(*(c / 2 for c in u.coords))
            worst = max(worst, gegenbauer_series_residual(z, u, n_max=40))
            count += 1
        return worst

    checks.append(run_check("gegenbauer-series", "4.7", gegenbauer_series, 1e-8))

    def low_order() -> bool:
        zb = (Fraction(1, 3), Fraction(-1, 2), Fraction(2, 5), Fraction(0))
        u = (Fraction(1, 7), Fraction(1, 2), Fraction(-2, 3), Fraction(3, 4))
        dot = sum(a * b for a, b in zip(zb, u))
        return gegenbauer_H(0, zb, u) == 1 and gegenbauer_H(1, zb, u) == 2 * dot

    checks.append(run_check("gegenbauer-low-order", "4.7", low_order))

    def biharmonic() -> bool:
        a_signs = (1, 1, 1, 1, 0, 0, 0, 0)
        b_signs = (0, 0, 0, 0, 1, 1, 1, 1)
        for n in range(11):
            poly = gegenbauer_polynomial(n)
            if not (poly.is_harmonic(a_signs) and poly.is_harmonic(b_signs)):
                return False
        return True

    checks.append(run_check("gegenbauer-biharmonic", "fieldnm2", biharmonic))

    def commutator() -> bool:
        one = HarmonicPolynomial.constant(1, 6)
        if not box6_commutator_check(one, homogeneity=2)["cone_matches"]:
            return False
        zeta1 = HarmonicPolynomial.variable(2, 6)
        report = box6_commutator_check(zeta1, homogeneity=3)
        if not (report["cone_matches"] and report["cone_coefficient"] == 16):
            return False
        for exps in itertools.product(range(5), repeat=6):
            if sum(exps) > 4:
                continue
            mono = HarmonicPolynomial({exps: Fraction(1)}, 6)
            if not box6_commutator_check(mono)["identity_holds"]:
                return False
        rand = HarmonicPolynomial(
            {
                exps: Fraction(int(rng.integers(-9, 10)))
                for exps in itertools.product(range(4), repeat=6)
                if sum(exps) == 3
            },
            6,
        )
        return box6_commutator_check(rand)["identity_holds"]

    checks.append(run_check("box6-commutator", "On the Commutator", commutator))

    def dirac_degree() -> bool:
        zeros = [d for d in range(-6, 7) if cone_obstruction(d) == 0]
        return zeros == [-1]

    checks.append(run_check("dirac-homogeneity", "On the Commutator", dirac_degree))

    def harmonicity() -> bool:
        on_cone = (Fraction(3, 5), Fraction(4, 5), 1, 0, 0, 0)
        report = twopoint_harmonicity_check(on_cone)
        if not (report["cone_numerator_matches"] and report["harmonic_on_cone"]):
            return False
        if not report["flat_numerator_matches"]:
            return False
        off_cone = (Fraction(1, 2), 1, Fraction(1, 3), 0, 1, 0)
        report = twopoint_harmonicity_check(off_cone)
        return report["cone_numerator_matches"] and not report["harmonic_on_cone"]

    checks.append(
        run_check("twopoint-harmonic", "Conformal Massless Scalar Field in dS Space", harmonicity)
    )

    def twopoint_values() -> float:
        R = 1.3
        zeta = _sample_ds(rng, R)
        anti = tuple(-c for c in zeta)
        worst = abs(ds_twopoint(zeta, anti, R) - 1.0 / (16 * math.pi**2 * R * R))
        while True:
            other = _sample_ds(rng, R)
            dot = -zeta[0] * other[0] + sum(a * b for a, b in zip(zeta[1:], other[1:]))
            if abs(R * R - dot) > 0.1:
                break
        lift = (zeta[0], R, *zeta[1:])
        lift_other = (other[0], R, *other[1:])
        worst = max(worst, abs(sixd_twopoint(lift, lift_other) - ds_twopoint(zeta, other, R)))
        for rho in (2.0, 3.5):
            scaled = tuple(rho * c for c in lift_other)
            worst = max(
                worst, abs(rho * sixd_twopoint(lift, scaled) - sixd_twopoint(lift, lift_other))
            )
        try:
            ds_twopoint(zeta, zeta, R)
            return 1.0
        except LightconeSingularity:
            pass
        return worst

    checks.append(
        run_check(
            "ds-twopoint", "Conformal Massless Scalar Field in dS Space", twopoint_values, 1e-12
        )
    )

    checks.append(run_check("zpicture-brackets", "z-Picture", zpicture_bracket_check, 0.0))

    def bergman() -> bool:
        for _ in range(1000):
            value = bergman_kernel(gc_forward(_sample_tube(rng)))
            if not (math.isfinite(value) and value > 0):
                return False
        return True

    checks.append(run_check("bergman-positive", "2.50", bergman))

    return checks
