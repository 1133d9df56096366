"""Vertex-operator realization of the free massless scalar.

The field phi(z) = e^{z.T} (chi* + chi/(z)^2) e^{zbreve.C} acts on the
truncated scalar Fock sector.  Kets use the exact oscillator machinery when
the coordinates are rational and a cached complex engine otherwise; the
matrix-element identity against the Gegenbauer kernels, the two-point
series, and the Bergman norm all reduce to weighted inner products of
translation ladders.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    ConformalPoint,
    LightconeSingularity,
    bergman_kernel,
    gegenbauer_H,
    tube_membership,
)
from .oscillator import (
    FockBasisState,
    FockOperator,
    FockVector,
    Truncation,
    special_conformal,
    translations,
    zero_modes,
)
from .reporting import Check, run_check
from .scalars import ONE, ZERO, ExactScalar

__all__ = [
    "DomainWarning",
    "VertexSeriesConfig",
    "StateVector",
    "TwoPointResult",
    "BergmanResult",
    "LOWEST_WEIGHT",
    "VACUUM",
    "vertex_state",
    "bra_vertex",
    "component_laplacian_is_zero",
    "matrix_element_gegenbauer",
    "twopoint_series",
    "vacuum_sandwich_check",
    "bergman_norm_check",
    "vertex_suite",
]


class DomainWarning(UserWarning):
    """Input sits outside the domain the series is guaranteed on."""


LOWEST_WEIGHT = FockBasisState((0, 0, 0, 0), zero_mode=1)
VACUUM = FockBasisState((0, 0, 0, 0))

_OPS: dict[str, tuple[FockOperator, ...]] = {}
_FLOAT_ACTIONS: dict[tuple[str, int], dict] = {}
_T_SQUARE_VANISHES: bool | None = None


def _ops(tag: str) -> tuple[FockOperator, ...]:
    if not _OPS:
        _OPS["T"] = translations()
        _OPS["C"] = special_conformal()
    return _OPS[tag]


def _float_action(tag: str, index: int, state: FockBasisState):
    store = _FLOAT_ACTIONS.setdefault((tag, index), {})
    hit = store.get(state)
    if hit is None:
        image = _ops(tag)[index].apply(state)
        hit = tuple((s, amp.to_float()) for s, amp in image.amplitudes.items())
        store[state] = hit
    return hit


def _translations_square_to_zero() -> bool:
    global _T_SQUARE_VANISHES
    if _T_SQUARE_VANISHES is None:
        total = FockOperator.zero()
        for op in _ops("T"):
            total = total + op @ op
        _T_SQUARE_VANISHES = total == FockOperator.zero()
    return _T_SQUARE_VANISHES


# ---------------------------------------------------------------------------
# configuration and states


@dataclass(frozen=True)
class VertexSeriesConfig:
    """Mode-sum truncation order and arithmetic backend."""

    n_max: int = 40
    backend: str = "float"

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")
        if self.backend not in ("exact", "float"):
            raise ValueError("backend must be 'exact' or 'float'")

    @property
    def truncation(self) -> Truncation:
        return Truncation(self.n_max + 1)


def _conj(value):
    return value.conj() if isinstance(value, ExactScalar) else complex(value).conjugate()


@dataclass(frozen=True)
class StateVector:
    """Finite combination of basis states, graded by the energy eigenvalue."""

    amplitudes: dict
    backend: str

    def component(self, n: int) -> "StateVector":
        """The grade-(1+n) piece, the image of the nth term of the mode sum."""
        want = Fraction(1) + n
        kept = {s: a for s, a in self.amplitudes.items() if s.energy == want}
        return StateVector(kept, self.backend)

    def grades(self) -> tuple[Fraction, ...]:
        return tuple(sorted({s.energy for s in self.amplitudes})) if self.amplitudes else ()

    def inner(self, other: "StateVector"):
        """Weighted pairing, antilinear in the first slot."""
        total = ZERO if self.backend == "exact" else 0j
        for state, amp in self.amplitudes.items():
            rhs = other.amplitudes.get(state)
            if rhs is not None:
                total = total + _conj(amp) * rhs * state.weight
        return total

    def norm_squared(self):
        value = self.inner(self)
        return value.as_fraction() if isinstance(value, ExactScalar) else value.real

    def is_zero(self) -> bool:
        return not self.amplitudes

    def as_fock_vector(self) -> FockVector:
        if self.backend != "exact":
            raise ValueError("only the exact backend stores ExactScalar amplitudes")
        return FockVector(dict(self.amplitudes))


# ---------------------------------------------------------------------------
# coordinate plumbing


def _coords(point) -> tuple:
    cs = point.coords if isinstance(point, ConformalPoint) else tuple(point)
    if len(cs) != 4:
        raise ValueError("expected four coordinates")
    return cs


def _rational(cs) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in cs)


def _square(cs):
    return sum(c * c for c in cs)


def _breve(cs):
    square = _square(cs)
    if not square:
        raise LightconeSingularity("inversion undefined on the null cone")
    return tuple(c / square for c in cs)


def _exact_coeffs(cs) -> tuple[ExactScalar, ...]:
    return tuple(c if isinstance(c, ExactScalar) else ExactScalar(Fraction(c)) for c in cs)


# ---------------------------------------------------------------------------
# ladder engines


def _apply_exact(tag: str, coeffs, vec: FockVector) -> FockVector:
    op = FockOperator.zero()
    for index, c in enumerate(coeffs):
        if c != ZERO:
            op = op + _ops(tag)[index] * c
    return op.apply(vec)


def _apply_float(tag: str, coeffs, vec: dict) -> dict:
    out: dict[FockBasisState, complex] = {}
    for state, amp in vec.items():
        for index, c in enumerate(coeffs):
            if not c:
                continue
            for image, factor in _float_action(tag, index, state):
                value = out.get(image, 0j) + c * amp * factor
                if value:
                    out[image] = value
                else:
                    out.pop(image, None)
    return out


def _ladder_exact(coeffs, n_max: int) -> list[FockVector]:
    """Terms (coeffs.T)^n / n! applied to the lowest weight, n = 0..n_max."""
    terms = [FockVector.basis(LOWEST_WEIGHT)]
    for n in range(1, n_max + 1):
        terms.append(_apply_exact("T", coeffs, terms[-1]) * Fraction(1, n))
    return terms


def _ladder_float(coeffs, n_max: int) -> list[dict]:
    terms = [{LOWEST_WEIGHT: 1.0 + 0j}]
    for n in range(1, n_max + 1):
        terms.append(
            {s: a / n for s, a in _apply_float("T", coeffs, terms[-1]).items()}
        )
    return terms


# ---------------------------------------------------------------------------
# the field acting on the vacuum


def vertex_state(z, cfg: VertexSeriesConfig) -> StateVector:
    """Mode sum sum_{n<=n_max} (z.T)^n/n! |1,0,0>, the field on the vacuum.

    Harmonicity of every graded component in z holds because the squared
    translation vanishes as an operator; that identity is checked once and
    cached.  Points outside the forward tube are computed anyway under a
    DomainWarning.
    """
    cs = _coords(z)
    if not _translations_square_to_zero():
        raise AssertionError("squared translation does not vanish")
    probe = ConformalPoint(*(complex(c) for c in cs))
    if tube_membership(probe) != "forward":
        warnings.warn("point lies outside the forward tube", DomainWarning, stacklevel=2)
    if cfg.backend == "exact":
        if not _rational(cs):
            raise TypeError("exact backend needs rational coordinates")
        total: dict = {}
        for term in _ladder_exact(_exact_coeffs(cs), cfg.n_max):
            for state, amp in term.amplitudes.items():
                total[state] = total.get(state, ZERO) + amp
        return StateVector(total, "exact")
    total = {}
    for term in _ladder_float(tuple(complex(c) for c in cs), cfg.n_max):
        for state, amp in term.items():
            total[state] = total.get(state, 0j) + amp
    return StateVector(total, "float")


def bra_vertex(zb, cfg: VertexSeriesConfig) -> StateVector:
    """Riesz vector of <1,0,0| e^{zbreve.C}, the graded bra-side expansion.

    Pairing it against a ket with the antilinear inner product evaluates
    (z)^2 <0| phi(z) on that ket; at zbreve = 0 it collapses to the lowest
    weight itself.
    """
    cs = _coords(zb)
    if cfg.backend == "exact":
        if not _rational(cs):
            raise TypeError("exact backend needs rational coordinates")
        total: dict = {}
        for term in _ladder_exact(_exact_coeffs(cs), cfg.n_max):
            for state, amp in term.amplitudes.items():
                total[state] = total.get(state, ZERO) + amp
        return StateVector(total, "exact")
    total = {}
    conjugated = tuple(complex(c).conjugate() for c in cs)
    for term in _ladder_float(conjugated, cfg.n_max):
        for state, amp in term.items():
            total[state] = total.get(state, 0j) + amp
    return StateVector(total, "float")


def component_laplacian_is_zero(n: int) -> bool:
    """Apply the z-Laplacian to the nth graded component, exactly.

    The component is the state-valued polynomial sum_alpha z^alpha
    T^alpha/alpha! |1,0,0>; its Laplacian collects (T)^2 and must vanish.
    """
    if n < 2:
        return True
    polys: dict[tuple[int, int, int, int], FockVector] = {
        (0, 0, 0, 0): FockVector.basis(LOWEST_WEIGHT)
    }
    for _ in range(n):
        grown: dict[tuple[int, int, int, int], FockVector] = {}
        for alpha, vec in polys.items():
            for i in range(4):
                key = tuple(a + (k == i) for k, a in enumerate(alpha))
                image = _ops("T")[i].apply(vec)
                grown[key] = grown.get(key, FockVector()) + image
        polys = grown
    # polys[alpha] holds (n!/alpha!) T^alpha |LW>, so the coefficient of
    # z^alpha is polys[alpha]/n! and the global n! drops out of the zero test
    betas = set()
    for alpha in polys:
        for i in range(4):
            if alpha[i] >= 2:
                betas.add(tuple(a - 2 * (k == i) for k, a in enumerate(alpha)))
    for beta in betas:
        total = FockVector()
        for i in range(4):
            alpha = tuple(b + 2 * (k == i) for k, b in enumerate(beta))
            vec = polys.get(alpha)
            if vec is not None:
                total = total + vec * Fraction(alpha[i] * (alpha[i] - 1))
        if not total.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# matrix elements and the two-point function


def matrix_element_gegenbauer(n: int, zb, u) -> tuple:
    """Fock element <1,0,0|(zb.C)^n/n! (u.T)^n/n!|1,0,0> beside the kernel H_n.

    Rational inputs run on the exact backend and the pair compares exactly;
    otherwise both values are complex.  The special-conformal factors are
    applied literally, no adjoint shortcut.
    """
    cs_z, cs_u = _coords(zb), _coords(u)
    if _rational(cs_z) and _rational(cs_u):
        vec = FockVector.basis(LOWEST_WEIGHT)
        for k in range(1, n + 1):
            vec = _apply_exact("T", _exact_coeffs(cs_u), vec) * Fraction(1, k)
        for k in range(1, n + 1):
            vec = _apply_exact("C", _exact_coeffs(cs_z), vec) * Fraction(1, k)
        fock = FockVector.basis(LOWEST_WEIGHT).inner(vec)
        if not fock.is_rational:
            raise AssertionError("matrix element left the rational subfield")
        return fock.as_fraction(), gegenbauer_H(n, cs_z, cs_u)
    cz = tuple(complex(c) for c in cs_z)
    cu = tuple(complex(c) for c in cs_u)
    vec = {LOWEST_WEIGHT: 1.0 + 0j}
    for k in range(1, n + 1):
        vec = {s: a / k for s, a in _apply_float("T", cu, vec).items()}
    for k in range(1, n + 1):
        vec = {s: a / k for s, a in _apply_float("C", cz, vec).items()}
    return vec.get(LOWEST_WEIGHT, 0j), complex(gegenbauer_H(n, cz, cu))


def _series_terms(cs_z, cs_u, n_max: int, exact: bool) -> list:
    """Terms <(zbreve.C)^n (u.T)^n>/(n!)^2 through the adjoint ladder."""
    zb = _breve(cs_z)
    if exact:
        if not (_rational(cs_z) and _rational(cs_u)):
            raise TypeError("exact backend needs rational coordinates")
        bra = _ladder_exact(_exact_coeffs(zb), n_max)
        ket = _ladder_exact(_exact_coeffs(cs_u), n_max)
        out = []
        for left, right in zip(bra, ket):
            value = left.inner(right)
            if not value.is_rational:
                raise AssertionError("series term left the rational subfield")
            out.append(value.as_fraction())
        return out
    conjugated = tuple(complex(c).conjugate() for c in zb)
    bra = _ladder_float(conjugated, n_max)
    ket = _ladder_float(tuple(complex(c) for c in cs_u), n_max)
    out = []
    for left, right in zip(bra, ket):
        total = 0j
        for state, amp in left.items():
            rhs = right.get(state)
            if rhs is not None:
                total += amp.conjugate() * rhs * state.weight
        out.append(total)
    return out


@dataclass(frozen=True)
class TwoPointResult:
    series: complex
    closed: complex
    residual: float
    terms: tuple
    gate: float
    flagged: bool


def twopoint_series(z, u, cfg: VertexSeriesConfig) -> TwoPointResult:
    """Truncated (1/(z)^2) sum_n <(zbreve.C)^n (u.T)^n>/(n!)^2 versus 1/(z-u)^2.

    The ratio-test gate |zbreve.u| + |zbreve^2 u^2|^{1/2} must sit below one
    for convergence; values at or past the gate are still computed but carry
    a DomainWarning and the flagged bit.
    """
    cs_z, cs_u = _coords(z), _coords(u)
    sep = _square(tuple(a - b for a, b in zip(cs_z, cs_u)))
    if not sep or (not isinstance(sep, (int, Fraction)) and abs(complex(sep)) < 1e-14):
        raise LightconeSingularity("coincident or lightlike arguments")
    zsq = _square(cs_z)
    if not zsq:
        raise LightconeSingularity("inversion undefined on the null cone")
    zb = _breve(cs_z)
    gate = abs(
        complex(sum(a * b for a, b in zip(zb, cs_u)))
    ) + math.sqrt(abs(complex(_square(zb)) * complex(_square(cs_u))))
    flagged = gate >= 1.0
    if flagged:
        warnings.warn("series gate is not satisfied", DomainWarning, stacklevel=2)
    terms = tuple(_series_terms(cs_z, cs_u, cfg.n_max, cfg.backend == "exact"))
    series = sum(terms) / zsq
    closed = 1 / sep
    residual = abs(complex(series) - complex(closed)) / abs(complex(closed))
    return TwoPointResult(series, closed, residual, terms, gate, flagged)


def vacuum_sandwich_check(z, u, n_max: int = 8) -> bool:
    """Run <0|phi(z) phi(u)|0> literally through the capped zero modes.

    The chi* branch dies on the once-excited flag, so the chi branch alone
    survives and the sandwich must equal (1/(z)^2) <1,0,0| e^{zbreve.C}
    e^{u.T} |1,0,0>, exactly on rational points.
    """
    cs_z, cs_u = _coords(z), _coords(u)
    if not (_rational(cs_z) and _rational(cs_u)):
        raise TypeError("the sandwich check runs on rational coordinates")
    modes = zero_modes(Truncation(n_max + 1))
    chi, chi_star = modes["chi"], modes["chi_star"]

    def phi_apply(cs, vec: FockVector) -> FockVector:
        square = _square(cs)
        if not square:
            raise LightconeSingularity("inversion undefined on the null cone")
        zb = _exact_coeffs(_breve(cs))
        lowered = FockVector(dict(vec.amplitudes))
        term = vec
        k = 1
        while True:
            term = _apply_exact("C", zb, term) * Fraction(1, k)
            if term.is_zero():
                break
            lowered = lowered + term
            k += 1
        flipped = chi_star.apply(lowered) + chi.apply(lowered) * ExactScalar(square).inv()
        total = FockVector(dict(flipped.amplitudes))
        term = flipped
        for k in range(1, n_max + 1):
            term = _apply_exact("T", _exact_coeffs(cs), term) * Fraction(1, k)
            total = total + term
        return total

    sandwich = FockVector.basis(VACUUM).inner(phi_apply(cs_z, phi_apply(cs_u, FockVector.basis(VACUUM))))
    terms = _series_terms(cs_z, cs_u, n_max, exact=True)
    want = sum(terms) / _square(cs_z)
    return sandwich == ExactScalar(want)


@dataclass(frozen=True)
class BergmanResult:
    series: float
    closed: float
    residual: float


def bergman_norm_check(z, cfg: VertexSeriesConfig) -> BergmanResult:
    """Truncated norm of phi(z)|0> against the closed reproducing kernel."""
    cs = tuple(complex(c) for c in _coords(z))
    total = 0.0
    for term in _ladder_float(cs, cfg.n_max):
        for state, amp in term.items():
            total += (amp.conjugate() * amp).real * state.weight
    closed = bergman_kernel(ConformalPoint(*cs))
    return BergmanResult(total, closed, abs(total - closed))


# ---------------------------------------------------------------------------
# verification suite


def vertex_suite(n_max: int = 40) -> list[Check]:
    """Mode-sum, matrix-element, two-point, and norm battery."""
    checks: list[Check] = []
    exact_cfg = VertexSeriesConfig(n_max=6, backend="exact")

    def lowest_term() -> bool:
        state = vertex_state((Fraction(1, 3), 0, 0, Fraction(1, 2)), VertexSeriesConfig(0, "exact"))
        return state.amplitudes == {LOWEST_WEIGHT: ONE}

    checks.append(run_check("vertex-lowest-term", "woody", lowest_term))

    def translation_term() -> bool:
        state = vertex_state((Fraction(1, 2), 0, 0, 0), exact_cfg)
        want = _ops("T")[0].apply(LOWEST_WEIGHT) * Fraction(1, 2)
        return state.component(1).as_fock_vector() == want

    checks.append(run_check("vertex-translation-term", "woody", translation_term))

    def harmonic_components() -> bool:
        if not _translations_square_to_zero():
            return False
        return all(component_laplacian_is_zero(n) for n in range(2, 5))

    checks.append(run_check("vertex-harmonic-components", "woody", harmonic_components))

    def energy_grading() -> bool:
        state = vertex_state((Fraction(1, 2), Fraction(1, 3), 0, Fraction(1, 5)), exact_cfg)
        for n in range(exact_cfg.n_max + 1):
            component = state.component(n)
            if component.is_zero():
                return False
            if any(s.energy != 1 + n for s in component.amplitudes):
                return False
        return True

    checks.append(run_check("vertex-energy-grading", "Delta", energy_grading))

    def matrix_elements() -> bool:
        zb = (Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5), Fraction(1))
        u = (Fraction(2, 3), Fraction(1, 4), Fraction(-1, 2), Fraction(1, 7))
        for n in range(6):
            fock, kernel = matrix_element_gegenbauer(n, zb, u)
            if fock != kernel:
                return False
        return True

    checks.append(run_check("gegenbauer-matrix-element", "qweewq", matrix_elements))

    def cross_oracle() -> bool:
        z = (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(2))
        u = (Fraction(1, 5), Fraction(-1, 6), Fraction(1, 2), Fraction(1, 3))
        zb = _breve(z)
        terms = _series_terms(z, u, 5, exact=True)
        return all(terms[n] == gegenbauer_H(n, zb, u) for n in range(6))

    checks.append(run_check("twopoint-cross-oracle", "4.7", cross_oracle))

    def series_residual() -> float:
        z = ConformalPoint(0.1 + 0.05j, -0.2j, 0.15, 1.1 + 0.1j)
        u = ConformalPoint(0.05, 0.02 + 0.01j, -0.04, 0.06j)
        result = twopoint_series(z, u, VertexSeriesConfig(n_max))
        if result.flagged:
            return 1.0
        return result.residual

    checks.append(run_check("twopoint-series", "2.47", series_residual, 1e-8))

    def series_collapse() -> bool:
        z = (Fraction(1, 3), Fraction(1, 2), 0, 2)
        result = twopoint_series(z, (0, 0, 0, 0), VertexSeriesConfig(10, "exact"))
        return result.series == 1 / _square(z) and all(t == 0 for t in result.terms[1:])

    checks.append(run_check("twopoint-collapse", "2.47", series_collapse))

    def sandwich() -> bool:
        z = (Fraction(1, 2), 0, Fraction(1, 3), 2)
        u = (Fraction(1, 5), Fraction(1, 2), 0, Fraction(-1, 3))
        return vacuum_sandwich_check(z, u, n_max=6)

    checks.append(run_check("vacuum-sandwich", "4.1", sandwich))

    def bra_normalization() -> bool:
        collapsed = bra_vertex((0, 0, 0, 0), exact_cfg)
        if collapsed.amplitudes != {LOWEST_WEIGHT: ONE}:
            return False
        expanded = bra_vertex((Fraction(1, 2), 0, Fraction(1, 3), 0), exact_cfg)
        return expanded.component(0).amplitudes == {LOWEST_WEIGHT: ONE}

    checks.append(run_check("bra-normalization", "4.1", bra_normalization))

    def bergman() -> float:
        at_zero = bergman_norm_check((0, 0, 0, 0), VertexSeriesConfig(5))
        worst = max(abs(at_zero.series - 1.0), abs(at_zero.closed - 1.0))
        point = ConformalPoint(0.1, 0.1j, -0.05, 0.12)
        worst = max(worst, bergman_norm_check(point, VertexSeriesConfig(30)).residual)
        along_ray = [
            bergman_norm_check(ConformalPoint(0.15 * t, 0, 0.1j * t, 0.2 * t), VertexSeriesConfig(30)).series
            for t in (0.5, 1.0, 1.5, 2.0)
        ]
        if any(b <= a for a, b in zip(along_ray, along_ray[1:])):
            return 1.0
        return worst

    checks.append(run_check("bergman-norm", "2.50", bergman, 1e-10))

    return checks
