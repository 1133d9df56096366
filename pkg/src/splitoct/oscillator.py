"""Exact truncated Fock engine for the positive-energy ladder representation.

Four bosonic modes a1, a2, b1, b2 carry the fifteen conformal generators as
quadratic bilinears.  States are unnormalized Bargmann monomials, so an
annihilator acts as a derivative (factor n) and a creator as multiplication
(factor 1); every amplitude then lives in the Gaussian rationals and all
commutator, Casimir, and weight checks run with zero tolerance.  Unitarity
statements refer to the weighted pairing <m|n> = prod n_k! delta_mn.

A single capped zero mode chi intertwines the invariant vacuum with the
scalar ground state and feeds the vertex construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .clifford import METRIC, PAIRS, SpinorMatrix, cal_e, gamma4_pair
from .reporting import Check, run_check
from .scalars import HALF, I, ONE, ZERO, ExactScalar

__all__ = [
    "EmptyBasis",
    "HeadroomError",
    "FockBasisState",
    "FockVector",
    "FockOperator",
    "Truncation",
    "FockSpace",
    "WeightLabel",
    "MultipletRow",
    "DsTower",
    "DEFAULT_HELICITIES",
    "creator",
    "annihilator",
    "build_space",
    "phi_sandwich",
    "generators",
    "translations",
    "special_conformal",
    "generator_suite",
    "commutator_suite",
    "chevalley",
    "lowest_weight",
    "casimirs",
    "so4_decompose",
    "tensor_step",
    "ds_branching",
    "zero_modes",
    "zero_mode_suite",
    "sector_suite",
]

N_MODES = 4

DEFAULT_HELICITIES = tuple(Fraction(k, 2) for k in range(-4, 5))


class EmptyBasis(ValueError):
    """Truncation admits no state in the requested helicity sector."""


class HeadroomError(ValueError):
    """Truncation leaves no states below the cut needed for exact checks."""


def _half_int(value: int | Fraction, name: str = "value") -> Fraction:
    f = Fraction(value)
    if f.denominator not in (1, 2):
        raise ValueError(f"{name} must be a half-integer, got {value}")
    return f


# ---------------------------------------------------------------------------
# basis states and vectors


@dataclass(frozen=True)
class FockBasisState:
    """Occupation monomial, plus the capped zero-mode excitation count."""

    occupations: tuple[int, int, int, int]
    zero_mode: int = 0

    def __post_init__(self) -> None:
        if len(self.occupations) != N_MODES or any(n < 0 for n in self.occupations):
            raise ValueError(f"bad occupations {self.occupations}")
        if self.zero_mode not in (0, 1):
            raise ValueError(f"zero mode occupation capped at 1, got {self.zero_mode}")

    @property
    def energy(self) -> Fraction:
        return 1 + Fraction(sum(self.occupations), 2)

    @property
    def helicity(self) -> Fraction:
        n_a = self.occupations[0] + self.occupations[1]
        n_b = self.occupations[2] + self.occupations[3]
        return Fraction(n_a - n_b, 2)

    @property
    def weight(self) -> int:
        w = 1
        for n in self.occupations:
            w *= factorial(n)
        return w


class FockVector:
    """Finite linear combination of basis states with exact amplitudes."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: dict[FockBasisState, ExactScalar] | None = None):
        clean = {}
        for state, amp in (amplitudes or {}).items():
            if amp != ZERO:
                clean[state] = amp
        self.amplitudes = clean

    @classmethod
    def basis(cls, state: FockBasisState) -> FockVector:
        return cls({state: ONE})

    def __add__(self, other: FockVector) -> FockVector:
        out = dict(self.amplitudes)
        for state, amp in other.amplitudes.items():
            out[state] = out.get(state, ZERO) + amp
        return FockVector(out)

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (other * ExactScalar(-1))

    def __mul__(self, scalar: ExactScalar | int | Fraction) -> FockVector:
        return FockVector({s: amp * scalar for s, amp in self.amplitudes.items()})

    __rmul__ = __mul__

    def __neg__(self) -> FockVector:
        return self * ExactScalar(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.amplitudes == other.amplitudes

    def is_zero(self) -> bool:
        return not self.amplitudes

    def inner(self, other: FockVector) -> ExactScalar:
        """Weighted pairing <self|other>, antilinear in the first slot."""
        total = ZERO
        for state, amp in self.amplitudes.items():
            rhs = other.amplitudes.get(state)
            if rhs is not None:
                total = total + amp.conj() * rhs * state.weight
        return total

    def __repr__(self) -> str:
        parts = [f"({amp})|{s.occupations};{s.zero_mode}>" for s, amp in self.amplitudes.items()]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# operators

# An atom is ("a", mode), ("a*", mode), ("chi", None), or ("chi*", None);
# atom tuples read left to right as operator products, so the rightmost
# atom acts first.
Atom = tuple[str, int | None]


def _sort_key(atom: Atom) -> tuple[int, int]:
    kind, mode = atom
    return (0, mode) if kind == "a*" else (1, mode)


def _normal_order(atoms: tuple[Atom, ...]) -> dict[tuple[Atom, ...], int]:
    """Wick-reorder a chi-free word to creators-first canonical form."""
    out: dict[tuple[Atom, ...], int] = {}
    stack = [(atoms, 1)]
    while stack:
        word, mult = stack.pop()
        for p in range(len(word) - 1):
            left, right = word[p], word[p + 1]
            if _sort_key(left) <= _sort_key(right):
                continue
            swapped = word[:p] + (right, left) + word[p + 2 :]
            stack.append((swapped, mult))
            if left[0] == "a" and right[0] == "a*" and left[1] == right[1]:
                stack.append((word[:p] + word[p + 2 :], mult))
            break
        else:
            out[word] = out.get(word, 0) + mult
    return {w: m for w, m in out.items() if m}


class FockOperator:
    """Sparse ladder polynomial; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Atom, ...], ExactScalar] | None = None):
        clean = {}
        for atoms, coeff in (terms or {}).items():
            if coeff != ZERO:
                clean[tuple(atoms)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> FockOperator:
        return cls()

    @classmethod
    def identity(cls) -> FockOperator:
        return cls({(): ONE})

    @classmethod
    def word(cls, coeff: ExactScalar | int | Fraction, atoms: tuple[Atom, ...]) -> FockOperator:
        c = coeff if isinstance(coeff, ExactScalar) else ExactScalar(coeff)
        return cls({tuple(atoms): c})

    def __add__(self, other: FockOperator) -> FockOperator:
        out = dict(self.terms)
        for atoms, coeff in other.terms.items():
            out[atoms] = out.get(atoms, ZERO) + coeff
        return FockOperator(out)

    def __sub__(self, other: FockOperator) -> FockOperator:
        return self + (other * ExactScalar(-1))

    def __neg__(self) -> FockOperator:
        return self * ExactScalar(-1)

    def __mul__(self, scalar: ExactScalar | int | Fraction) -> FockOperator:
        return FockOperator({atoms: coeff * scalar for atoms, coeff in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: FockOperator) -> FockOperator:
        out: dict[tuple[Atom, ...], ExactScalar] = {}
        for a_atoms, a_coeff in self.terms.items():
            for b_atoms, b_coeff in other.terms.items():
                key = a_atoms + b_atoms
                out[key] = out.get(key, ZERO) + a_coeff * b_coeff
        return FockOperator(out)

    def commutator(self, other: FockOperator) -> FockOperator:
        return self @ other - other @ self

    def adjoint(self) -> FockOperator:
        """Adjoint for the weighted pairing: reverse, swap stars, conjugate."""
        swap = {"a": "a*", "a*": "a", "chi": "chi*", "chi*": "chi"}
        out: dict[tuple[Atom, ...], ExactScalar] = {}
        for atoms, coeff in self.terms.items():
            key = tuple((swap[kind], mode) for kind, mode in reversed(atoms))
            out[key] = out.get(key, ZERO) + coeff.conj()
        return FockOperator(out)

    @property
    def energy_shift(self) -> Fraction:
        """Largest per-term energy shift; headroom keys on its positive part."""
        best = None
        for atoms in self.terms:
            raises = sum(1 for kind, _ in atoms if kind == "a*")
            lowers = sum(1 for kind, _ in atoms if kind == "a")
            shift = Fraction(raises - lowers, 2)
            best = shift if best is None else max(best, shift)
        return Fraction(0) if best is None else best

    def normal_form(self) -> dict[tuple[Atom, ...], ExactScalar]:
        """Canonical creators-first table; chi words stay verbatim up front."""
        canon: dict[tuple[Atom, ...], ExactScalar] = {}
        for atoms, coeff in self.terms.items():
            chi_word = tuple(t for t in atoms if t[0] in ("chi", "chi*"))
            a_word = tuple(t for t in atoms if t[0] in ("a", "a*"))
            for ordered, mult in _normal_order(a_word).items():
                key = chi_word + ordered
                total = canon.get(key, ZERO) + coeff * mult
                if total == ZERO:
                    canon.pop(key, None)
                else:
                    canon[key] = total
        return canon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self.normal_form() == other.normal_form()

    def __hash__(self) -> int:
        return hash(frozenset(self.normal_form().items()))

    def is_zero(self) -> bool:
        return not self.normal_form()

    def apply(self, target: FockVector | FockBasisState) -> FockVector:
        vec = FockVector.basis(target) if isinstance(target, FockBasisState) else target
        out: dict[FockBasisState, ExactScalar] = {}
        for atoms, coeff in self.terms.items():
            for state, amp in vec.amplitudes.items():
                occ = list(state.occupations)
                flag = state.zero_mode
                scale = coeff * amp
                dead = False
                for kind, mode in reversed(atoms):
                    if kind == "a":
                        n = occ[mode]
                        if n == 0:
                            dead = True
                            break
                        scale = scale * n
                        occ[mode] = n - 1
                    elif kind == "a*":
                        occ[mode] += 1
                    elif kind == "chi":
                        if flag == 0:
                            dead = True
                            break
                        flag = 0
                    else:
                        if flag == 1:
                            dead = True
                            break
                        flag = 1
                if dead or scale == ZERO:
                    continue
                new = FockBasisState(tuple(occ), flag)
                out[new] = out.get(new, ZERO) + scale
        return FockVector(out)

    def matrix(self, space: FockSpace) -> tuple[tuple[ExactScalar, ...], ...]:
        """Dense matrix on the listed basis; out-of-basis images are dropped."""
        cols = []
        for state in space.states:
            image = self.apply(state)
            cols.append([image.amplitudes.get(s, ZERO) for s in space.states])
        return tuple(tuple(cols[c][r] for c in range(space.dim)) for r in range(space.dim))

    def __repr__(self) -> str:
        if not self.terms:
            return "FockOperator(0)"
        bits = []
        for atoms, coeff in self.terms.items():
            word = " ".join(f"{k}{'' if m is None else m}" for k, m in atoms) or "1"
            bits.append(f"({coeff})*{word}")
        return "FockOperator(" + " + ".join(bits) + ")"


def creator(mode: int) -> FockOperator:
    return FockOperator.word(1, (("a*", mode),))


def annihilator(mode: int) -> FockOperator:
    return FockOperator.word(1, (("a", mode),))


# ---------------------------------------------------------------------------
# truncated sectors


@dataclass(frozen=True)
class Truncation:
    e_max: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "e_max", _half_int(self.e_max, "e_max"))

    def headroom(self, shift: int | Fraction) -> Fraction:
        return self.e_max - shift


@dataclass(frozen=True)
class FockSpace:
    states: tuple[FockBasisState, ...]
    helicity: Fraction
    truncation: Truncation
    index: dict[FockBasisState, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        self.index.update({s: i for i, s in enumerate(self.states)})

    @property
    def dim(self) -> int:
        return len(self.states)

    def headroom_states(self, shift: int | Fraction) -> tuple[FockBasisState, ...]:
        cut = self.truncation.headroom(shift)
        return tuple(s for s in self.states if s.energy <= cut)


def build_space(trunc: Truncation, lam: int | Fraction) -> FockSpace:
    """Enumerate the helicity-lam occupation basis up to the energy cut."""
    lam = _half_int(lam, "lam")
    two_lam = int(2 * lam)
    states = []
    n_b = max(0, -two_lam)
    while True:
        n_a = n_b + two_lam
        energy = 1 + Fraction(n_a + n_b, 2)
        if energy > trunc.e_max:
            break
        for n_a1 in range(n_a + 1):
            for n_b1 in range(n_b + 1):
                states.append(FockBasisState((n_a1, n_a - n_a1, n_b1, n_b - n_b1)))
        n_b += 1
    if not states:
        raise EmptyBasis(f"e_max={trunc.e_max} admits no helicity-{lam} state")
    states.sort(key=lambda s: (s.energy, s.occupations))
    return FockSpace(tuple(states), lam, trunc)


# ---------------------------------------------------------------------------
# generators

# Index shorthands for the quadratic words; a-modes are 0,1 and b-modes 2,3.
# _aa(i,j) = a*_i a^j, _bb(i,j) = b^i b*_j, _ba(i,j) = b^i a^j,
# _ab(i,j) = a*_i b*_j, with i,j in {1,2}.


def _aa(i: int, j: int) -> tuple[Atom, ...]:
    return (("a*", i - 1), ("a", j - 1))


def _bb(i: int, j: int) -> tuple[Atom, ...]:
    return (("a", i + 1), ("a*", j + 1))


def _ba(i: int, j: int) -> tuple[Atom, ...]:
    return (("a", i + 1), ("a", j - 1))


def _ab(i: int, j: int) -> tuple[Atom, ...]:
    return (("a*", i - 1), ("a*", j + 1))


def _combo(*pairs: tuple[ExactScalar | int, tuple[Atom, ...]]) -> FockOperator:
    op = FockOperator.zero()
    for coeff, atoms in pairs:
        op = op + FockOperator.word(coeff, atoms)
    return op


def _cartan_words() -> tuple[FockOperator, FockOperator, FockOperator]:
    h1 = _combo((1, _aa(1, 1)), (-1, _aa(2, 2)))
    h2 = _combo((1, _aa(2, 2)), (1, _bb(1, 1)))
    h3 = _combo((1, _bb(2, 2)), (-1, _bb(1, 1)))
    return h1, h2, h3


def _explicit_j_table() -> dict[tuple[int, int], FockOperator]:
    h1, h2, h3 = _cartan_words()
    half_i = I * HALF
    table = {
        (1, 2): (h1 + h3) * half_i,
        (3, 4): (h1 - h3) * half_i,
        (0, 5): (h1 + h2 * 2 + h3) * -half_i,
        (0, 1): _combo((-1, _ba(2, 1)), (-1, _ba(1, 2)), (1, _ab(2, 1)), (1, _ab(1, 2))) * HALF,
        (0, 2): _combo((1, _ba(2, 1)), (-1, _ba(1, 2)), (-1, _ab(2, 1)), (1, _ab(1, 2))) * -half_i,
        (0, 3): _combo((-1, _ba(1, 1)), (1, _ba(2, 2)), (1, _ab(1, 1)), (-1, _ab(2, 2))) * HALF,
        (0, 4): _combo((1, _ba(1, 1)), (1, _ba(2, 2)), (1, _ab(1, 1)), (1, _ab(2, 2))) * -half_i,
        (1, 3): _combo((1, _aa(2, 1)), (-1, _aa(1, 2)), (-1, _bb(2, 1)), (1, _bb(1, 2))) * HALF,
        (1, 4): _combo((1, _aa(2, 1)), (1, _aa(1, 2)), (1, _bb(2, 1)), (1, _bb(1, 2))) * half_i,
        (1, 5): _combo((1, _ba(2, 1)), (1, _ba(1, 2)), (1, _ab(2, 1)), (1, _ab(1, 2))) * half_i,
        (2, 3): _combo((1, _aa(2, 1)), (1, _aa(1, 2)), (-1, _bb(2, 1)), (-1, _bb(1, 2))) * half_i,
        (2, 4): _combo((-1, _aa(2, 1)), (1, _aa(1, 2)), (-1, _bb(2, 1)), (1, _bb(1, 2))) * HALF,
        (2, 5): _combo((-1, _ba(2, 1)), (1, _ba(1, 2)), (-1, _ab(2, 1)), (1, _ab(1, 2))) * HALF,
        (3, 5): _combo((1, _ba(1, 1)), (-1, _ba(2, 2)), (1, _ab(1, 1)), (-1, _ab(2, 2))) * half_i,
        (4, 5): _combo((-1, _ba(1, 1)), (-1, _ba(2, 2)), (1, _ab(1, 1)), (1, _ab(2, 2))) * HALF,
    }
    out = {}
    for mu, nu in PAIRS:
        if (mu, nu) in table:
            out[(mu, nu)] = table[(mu, nu)]
        else:
            out[(mu, nu)] = -table[(nu, mu)]
    return out


# Chiral spinor components in the B-diagonal ordering: phi = (a1, a2, b1*, b2*)
# and phi~ = (a1*, a2*, -b1, -b2).
_PHI = ((("a", 0), 1), (("a", 1), 1), (("a*", 2), 1), (("a*", 3), 1))
_PHI_TILDE = ((("a*", 0), 1), (("a*", 1), 1), (("a", 2), -1), (("a", 3), -1))


def phi_sandwich(g: SpinorMatrix) -> FockOperator:
    """The bilinear phi~ g phi for a 4x4 matrix on the chiral block."""
    if g.size != 4:
        raise ValueError("phi sandwich needs a 4x4 matrix")
    op = FockOperator.zero()
    for r in range(4):
        for c in range(4):
            entry = g.entry(r, c)
            if entry == ZERO:
                continue
            (atom_r, sign_r), (atom_c, sign_c) = _PHI_TILDE[r], _PHI[c]
            op = op + FockOperator.word(entry * (sign_r * sign_c), (atom_r, atom_c))
    return op


def _hamiltonian() -> FockOperator:
    return _combo((1, _aa(1, 1)), (1, _aa(2, 2)), (1, _bb(1, 1)), (1, _bb(2, 2))) * HALF


def _central() -> FockOperator:
    return _combo((1, _aa(1, 1)), (1, _aa(2, 2)), (-1, _bb(1, 1)), (-1, _bb(2, 2)))


def generators(trunc: Truncation) -> dict:
    """All fifteen J, plus the Hamiltonian H = iJ_05 and the central C1."""
    table: dict = dict(_explicit_j_table())
    table["H"] = _hamiltonian()
    table["C1"] = _central()
    return table


def _j_signed(table: dict, mu: int, nu: int) -> FockOperator:
    if mu == nu:
        return FockOperator.zero()
    if (mu, nu) in table:
        return table[(mu, nu)]
    return -table[(nu, mu)]


def translations() -> tuple[FockOperator, ...]:
    """T_i = a* E_i b*, the creator bilinears that raise energy by one."""
    out = []
    for i in (1, 2, 3, 4):
        e = cal_e(i)
        op = FockOperator.zero()
        for r in range(2):
            for c in range(2):
                entry = e.entry(r, c)
                if entry != ZERO:
                    op = op + FockOperator.word(entry, (("a*", r), ("a*", c + 2)))
        out.append(op)
    return tuple(out)


def special_conformal() -> tuple[FockOperator, ...]:
    return tuple(t.adjoint() for t in translations())


# ---------------------------------------------------------------------------
# verification suites


def _sector_spaces(trunc: Truncation, lam: int | Fraction | None) -> list[FockSpace]:
    if lam is not None:
        return [build_space(trunc, lam)]
    return [build_space(trunc, h) for h in DEFAULT_HELICITIES if trunc.e_max >= 1 + abs(h)]


def generator_suite(trunc: Truncation, lam: int | Fraction | None = None) -> list[Check]:
    """Pin the generator table against the matrix bilinears and the pairing."""
    spaces = _sector_spaces(trunc, lam)
    gens = generators(trunc)

    def routes_agree() -> int:
        bad = sum(1 for pair in PAIRS if gens[pair] != phi_sandwich(gamma4_pair(*pair)) * HALF)
        if gens["C1"] != phi_sandwich(SpinorMatrix.identity(4)):
            bad += 1
        return bad

    def hamiltonian_form() -> int:
        bad = 0 if gens["H"] == gens[(0, 5)] * I else 1
        vac = FockBasisState((0, 0, 0, 0))
        if gens["H"].apply(vac) != FockVector.basis(vac):
            bad += 1
        return bad

    def central_element() -> int:
        bad = sum(1 for pair in PAIRS if not gens[pair].commutator(gens["C1"]).is_zero())
        for space in spaces:
            want = 2 * (space.helicity - 1)
            for state in space.states:
                if gens["C1"].apply(state) != FockVector.basis(state) * want:
                    bad += 1
        return bad

    def anti_hermitian() -> int:
        bad = sum(1 for pair in PAIRS if gens[pair].adjoint() != -gens[pair])
        for space in spaces:
            for pair in PAIRS:
                images = [gens[pair].apply(s) for s in space.states]
                for m, s_m in enumerate(space.states):
                    for n, s_n in enumerate(space.states):
                        lhs = images[m].amplitudes.get(s_n, ZERO).conj() * s_n.weight
                        rhs = images[n].amplitudes.get(s_m, ZERO) * s_m.weight
                        if lhs != -rhs:
                            bad += 1
        return bad

    return [
        run_check("explicit-matches-bilinear", "123456", routes_agree),
        run_check("hamiltonian-form", "2.16'", hamiltonian_form),
        run_check("central-element", "C111111", central_element),
        run_check("anti-hermitian-pairing", "anti-Hermitian J", anti_hermitian),
    ]


def commutator_suite(trunc: Truncation, lam: int | Fraction | None = None) -> list[Check]:
    """Closure and compact-basis brackets, exact on the headroom subspace."""
    spaces = _sector_spaces(trunc, lam)
    probes: list[FockBasisState] = []
    for space in spaces:
        states = space.headroom_states(2)
        if not states:
            raise HeadroomError(
                f"e_max={trunc.e_max} leaves no headroom in the helicity-{space.helicity} sector"
            )
        probes.extend(states)

    table = _explicit_j_table()
    h = _hamiltonian()
    t_ops = translations()
    c_ops = special_conformal()

    def residual(deltas: list[FockOperator]) -> int:
        return sum(1 for d in deltas for s in probes if not d.apply(s).is_zero())

    def ghalee() -> int:
        deltas = []
        for (mu, nu), (lm, sg) in itertools.combinations(PAIRS, 2):
            lhs = table[(mu, nu)].commutator(table[(lm, sg)])
            rhs = FockOperator.zero()
            for left, right, sign in (
                ((mu, sg), (nu, lm), 1),
                ((nu, sg), (mu, lm), -1),
                ((mu, lm), (nu, sg), -1),
                ((nu, lm), (mu, sg), 1),
            ):
                a, b = left
                eta_pair = right
                if eta_pair[0] == eta_pair[1]:
                    rhs = rhs + _j_signed(table, a, b) * (sign * METRIC[eta_pair[0]])
            deltas.append(lhs - rhs)
        return residual(deltas)

    def rotations_commute() -> int:
        spatial = [p for p in PAIRS if 5 not in p and 0 not in p]
        return residual([h.commutator(table[p]) for p in spatial])

    def special_translation() -> int:
        deltas = []
        for i in range(4):
            for j in range(4):
                want = FockOperator.zero()
                if i == j:
                    want = h * 2
                else:
                    want = -_j_signed(table, i + 1, j + 1) * 2
                deltas.append(c_ops[i].commutator(t_ops[j]) - want)
        return residual(deltas)

    def raising_grade() -> int:
        return residual([h.commutator(t) - t for t in t_ops])

    def lowering_grade() -> int:
        return residual([h.commutator(c) + c for c in c_ops])

    def null_four_square() -> int:
        t_sq = FockOperator.zero()
        c_sq = FockOperator.zero()
        for i in range(4):
            t_sq = t_sq + t_ops[i] @ t_ops[i]
            c_sq = c_sq + c_ops[i] @ c_ops[i]
        return residual([t_sq, c_sq])

    return [
        run_check("ghalee-closure", "Ghalee", ghalee),
        run_check("rotations-commute", "lole", rotations_commute),
        run_check("special-translation-bracket", "CaTb", special_translation),
        run_check("raising-grade", "lole11", raising_grade),
        run_check("lowering-grade", "lole22", lowering_grade),
        run_check("null-four-square", "T2=0=C2", null_four_square),
    ]


CARTAN_MATRIX = ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


def chevalley(trunc: Truncation) -> dict:
    """Chevalley-Cartan triple (E_a, F_a, H_a) with its bracket table pinned."""
    e_ops = (
        FockOperator.word(1, _aa(1, 2)),
        FockOperator.word(1, _ab(2, 1)),
        FockOperator.word(-1, _bb(1, 2)),
    )
    f_ops = (
        FockOperator.word(1, _aa(2, 1)),
        FockOperator.word(-1, _ba(1, 2)),
        FockOperator.word(-1, _bb(2, 1)),
    )
    h_ops = tuple(e_ops[a].commutator(f_ops[a]) for a in range(3))
    h1, h2, h3 = _cartan_words()
    if h_ops[0] != h1 or h_ops[1] != h2 or h_ops[2] != h3:
        raise AssertionError("Cartan words disagree with [E_a, F_a]")
    for a in range(3):
        for b in range(3):
            lhs = e_ops[a].commutator(f_ops[b])
            want = h_ops[a] if a == b else FockOperator.zero()
            if lhs != want:
                raise AssertionError(f"[E_{a+1}, F_{b+1}] off")
            if h_ops[a].commutator(e_ops[b]) != e_ops[b] * CARTAN_MATRIX[a][b]:
                raise AssertionError(f"[H_{a+1}, E_{b+1}] off")
            if h_ops[a].commutator(f_ops[b]) != f_ops[b] * -CARTAN_MATRIX[a][b]:
                raise AssertionError(f"[H_{a+1}, F_{b+1}] off")
    return {"E": e_ops, "F": f_ops, "H": h_ops, "cartan_matrix": CARTAN_MATRIX}


def lowest_weight(lam: int | Fraction) -> tuple[FockBasisState, list[Check]]:
    """Ground monomial of the helicity sector, plus its defining checks."""
    lam = _half_int(lam, "lam")
    two_lam = int(2 * lam)
    if two_lam >= 0:
        state = FockBasisState((0, two_lam, 0, 0))
    else:
        state = FockBasisState((0, 0, -two_lam, 0))
    trunc = Truncation(state.energy + 2)
    basis = chevalley(trunc)
    vec = FockVector.basis(state)

    def lowering_annihilates() -> int:
        return sum(1 for f in basis["F"] if not f.apply(state).is_zero())

    def special_conformal_annihilates() -> int:
        return sum(1 for c in special_conformal() if not c.apply(state).is_zero())

    def ground_energy() -> int:
        return 0 if _hamiltonian().apply(state) == vec * (1 + abs(lam)) else 1

    checks = [
        run_check("lowering-annihilates", "LW ><0", lowering_annihilates),
        run_check("special-conformal-annihilates", "boz", special_conformal_annihilates),
        run_check("ground-energy", "E100", ground_energy),
    ]
    if lam == 0:
        table = _explicit_j_table()
        spatial = [p for p in PAIRS if 5 not in p and 0 not in p]

        def rotations_fix_vacuum() -> int:
            return sum(1 for p in spatial if not table[p].apply(state).is_zero())

        checks.append(run_check("rotations-fix-vacuum", "whyFvacumm", rotations_fix_vacuum))
    return state, checks


def casimirs(trunc: Truncation, lam: int | Fraction) -> dict[str, Fraction]:
    """Quadratic Casimir scalars on the helicity sector, checked entrywise.

    Index raising on pair labels is the trace dual J^{mu nu} = -eta^mu
    eta^nu J_{mu nu}, the same convention the 4x4 trace identities pin;
    sums run over unordered pairs.
    """
    space = build_space(trunc, lam)
    probes = space.headroom_states(2)
    if not probes:
        raise HeadroomError(f"e_max={trunc.e_max} leaves no Casimir headroom")
    table = _explicit_j_table()

    def squared_sum(pairs: list[tuple[int, int]], orientation: int) -> FockOperator:
        op = FockOperator.zero()
        for mu, nu in pairs:
            sign = orientation * METRIC[mu] * METRIC[nu]
            op = op + (table[(mu, nu)] @ table[(mu, nu)]) * sign
        return op

    ds_pairs = [p for p in PAIRS if 5 not in p]
    boost_pairs = [p for p in PAIRS if 5 in p]
    ops = {
        "c2_su22": squared_sum(list(PAIRS), 1),
        "c2_sp22": squared_sum(ds_pairs, 1),
        "boost_square": squared_sum(boost_pairs, -1),
    }
    lam = _half_int(lam, "lam")
    want = {
        "c2_su22": -3 * (lam * lam - 1),
        "c2_sp22": -2 * (lam * lam - 1),
        "boost_square": lam * lam - 1,
    }
    for name, op in ops.items():
        scalar = ExactScalar(want[name])
        for state in probes:
            if op.apply(state) != FockVector.basis(state) * scalar:
                raise AssertionError(f"{name} is not the scalar {want[name]} on {state}")
    return want


@dataclass(frozen=True)
class WeightLabel:
    energy: Fraction
    j_left: Fraction
    j_right: Fraction
    helicity: Fraction

    def __post_init__(self) -> None:
        for name in ("energy", "j_left", "j_right", "helicity"):
            object.__setattr__(self, name, _half_int(getattr(self, name), name))
        if self.j_left < 0 or self.j_right < 0:
            raise ValueError("spins must be non-negative")
        if max(self.j_left, self.j_right) > self.energy - 1:
            raise ValueError("spin bound j <= E - 1 violated")
        gap = self.energy - self.j_left - self.j_right
        if gap.denominator != 1 or gap <= 0:
            raise ValueError("E - (jL + jR) must be a positive integer")


@dataclass(frozen=True)
class MultipletRow:
    label: WeightLabel
    multiplicity: int

    @property
    def dim(self) -> int:
        return int((2 * self.label.j_left + 1) * (2 * self.label.j_right + 1))


def _su2_casimirs() -> tuple[FockOperator, FockOperator]:
    half_sq = HALF * HALF
    j3_l = _combo((1, _aa(1, 1)), (-1, _aa(2, 2))) * HALF
    jp_l = FockOperator.word(1, _aa(1, 2))
    jm_l = FockOperator.word(1, _aa(2, 1))
    j3_r = _combo((-1, _bb(1, 1)), (1, _bb(2, 2))) * HALF
    jp_r = FockOperator.word(-1, _bb(1, 2))
    jm_r = FockOperator.word(-1, _bb(2, 1))
    c_l = j3_l @ j3_l + (jp_l @ jm_l + jm_l @ jp_l) * HALF
    c_r = j3_r @ j3_r + (jp_r @ jm_r + jm_r @ jp_r) * HALF
    return c_l, c_r


def so4_decompose(trunc: Truncation, lam: int | Fraction) -> list[MultipletRow]:
    """Split each energy level into (jL, jR) multiplets, all scalars checked."""
    space = build_space(trunc, lam)
    lam = space.helicity
    c_l, c_r = _su2_casimirs()
    h = _hamiltonian()
    rows: list[MultipletRow] = []
    levels: dict[Fraction, list[FockBasisState]] = {}
    for state in space.states:
        levels.setdefault(state.energy, []).append(state)
    for energy in sorted(levels):
        states = levels[energy]
        j_left = (energy - 1 + lam) / 2
        j_right = (energy - 1 - lam) / 2
        want_l = ExactScalar(j_left * (j_left + 1))
        want_r = ExactScalar(j_right * (j_right + 1))
        want_so4 = ExactScalar((energy * energy + lam * lam - 1) / 2)
        for state in states:
            vec = FockVector.basis(state)
            if h.apply(state) != vec * ExactScalar(energy):
                raise AssertionError(f"H is not {energy} on {state}")
            im_l, im_r = c_l.apply(state), c_r.apply(state)
            if im_l != vec * want_l or im_r != vec * want_r:
                raise AssertionError(f"su(2) Casimirs off on {state}")
            if im_l + im_r != vec * want_so4:
                raise AssertionError(f"so(4) Casimir is not (E^2+l^2-1)/2 on {state}")
        label = WeightLabel(energy, j_left, j_right, lam)
        row = MultipletRow(label, 1)
        if row.dim != len(states):
            raise AssertionError(f"level dimension {len(states)} != {row.dim}")
        rows.append(row)
    return rows


def tensor_step(j_left: Fraction, j_right: Fraction) -> frozenset[tuple[Fraction, Fraction]]:
    """(jL, jR) x (1/2, 1/2) with negative-spin summands omitted."""
    half = Fraction(1, 2)
    out = set()
    for dl in (half, -half):
        for dr in (half, -half):
            jl, jr = j_left + dl, j_right + dr
            if jl >= 0 and jr >= 0:
                out.add((jl, jr))
    return frozenset(out)


@dataclass(frozen=True)
class DsTower:
    seed: tuple[Fraction, Fraction]
    multiplets: tuple[tuple[Fraction, Fraction], ...]
    p: Fraction
    q: Fraction
    q_truncation_dependent: bool = True


def ds_branching(seed: WeightLabel, steps: int) -> DsTower:
    """Chirality-preserving multiplet tower grown from a chiral seed.

    Each step tensors the current top with the boost bi-spinor (1/2, 1/2);
    of the resulting candidates only the summand that keeps jL - jR fixed
    belongs to the massless tower, mirroring the per-level content of the
    conformal sector.  The reported q grows with the step count and is
    flagged as truncation-dependent.
    """
    if min(seed.j_left, seed.j_right) != 0:
        raise ValueError("seed multiplet must be chiral: (s, 0) or (0, s)")
    diff = seed.j_left - seed.j_right
    tower = [(seed.j_left, seed.j_right)]
    for _ in range(steps):
        top = tower[-1]
        keep = [c for c in tensor_step(*top) if c[0] - c[1] == diff]
        if not keep:
            raise AssertionError(f"chirality filter emptied {top}")
        # the descending summand, when present, is the row already collected
        tower.append(max(keep, key=lambda c: c[0] + c[1]))
    p = min(abs(jl - jr) for jl, jr in tower)
    q = max(jl + jr for jl, jr in tower)
    return DsTower((seed.j_left, seed.j_right), tuple(tower), p, q)


def zero_modes(trunc: Truncation) -> dict[str, FockOperator]:
    chi = FockOperator.word(1, (("chi", None),))
    chi_star = FockOperator.word(1, (("chi*", None),))
    return {"chi": chi, "chi_star": chi_star}


def zero_mode_suite(trunc: Truncation) -> list[Check]:
    """Capped zero-mode pair: CCR on the unexcited sector, vacuum action."""
    ops = zero_modes(trunc)
    chi, chi_star = ops["chi"], ops["chi_star"]
    space = build_space(trunc, 0)
    vacuum = FockBasisState((0, 0, 0, 0))
    ground = FockBasisState((0, 0, 0, 0), zero_mode=1)

    def capped_ccr() -> int:
        ccr = chi.commutator(chi_star)
        return sum(1 for s in space.states if ccr.apply(s) != FockVector.basis(s))

    def vacuum_action() -> int:
        bad = 0 if chi.apply(vacuum).is_zero() else 1
        if chi_star.apply(vacuum) != FockVector.basis(ground):
            bad += 1
        if not chi_star.apply(ground).is_zero():
            bad += 1
        return bad

    def commutes_with_bilinears() -> int:
        table = generators(trunc)
        bad = 0
        for op in (chi, chi_star):
            for key in list(PAIRS) + ["H", "C1"]:
                if not op.commutator(table[key]).apply(ground).is_zero():
                    bad += 1
                if not op.commutator(table[key]).apply(vacuum).is_zero():
                    bad += 1
        return bad

    return [
        run_check("zero-mode-ccr", "3.2", capped_ccr),
        run_check("zero-mode-vacuum", "3.2", vacuum_action),
        run_check("zero-mode-commutes", "3.2", commutes_with_bilinears),
    ]


def sector_suite(lam: int | Fraction, e_max: int | Fraction | None = None) -> list[Check]:
    """Full battery for one helicity sector; default cut is |lam| + 4."""
    lam = _half_int(lam, "lam")
    trunc = Truncation(abs(lam) + 4 if e_max is None else e_max)
    checks = generator_suite(trunc, lam) + commutator_suite(trunc, lam)

    def chevalley_brackets() -> int:
        chevalley(trunc)
        return 0

    def lowest_weight_checks() -> int:
        _, lw_checks = lowest_weight(lam)
        return sum(1 for c in lw_checks if not c.passed)

    def casimir_scalars() -> int:
        casimirs(trunc, lam)
        return 0

    def spectrum_rows() -> int:
        rows = so4_decompose(trunc, lam)
        want = []
        n = 1
        while abs(lam) + n <= trunc.e_max:
            want.append(abs(lam) + n)
            n += 1
        if [r.label.energy for r in rows] != want:
            return 1
        if sum(r.dim for r in rows) != build_space(trunc, lam).dim:
            return 1
        return 0

    def branching_matches_spectrum() -> int:
        rows = so4_decompose(trunc, lam)
        seed = rows[0].label
        if min(seed.j_left, seed.j_right) != 0:
            return 1
        tower = ds_branching(seed, len(rows) - 1)
        return 0 if tower.multiplets == tuple((r.label.j_left, r.label.j_right) for r in rows) else 1

    checks += [
        run_check("chevalley-brackets", "cartoon", chevalley_brackets),
        run_check("lowest-weight", "LW ><0", lowest_weight_checks),
        run_check("casimir-scalars", "TheormCasimirs", casimir_scalars),
        run_check("spectrum-rows", "Delta", spectrum_rows),
        run_check("branching-tower", "begaee", branching_matches_spectrum),
    ]
    if lam == 0:
        checks += zero_mode_suite(trunc)
    return checks
