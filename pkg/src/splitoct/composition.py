"""Quaternions and their Cayley-Dickson doubles, split (l^2 = +1) or
division (l^2 = -1), with the identity suites for the composition laws.

Elements are pairs x = q + l p of quaternions under

    (q1 + l p1)(q2 + l p2) = q1 q2 + l^2 p2 p1* + l (q1* p2 + q2 p1),

conjugation (q + l p)* = q* - l p and norm N(q + l p) = N(q) - l^2 N(p).
Coefficient arithmetic is generic: int, Fraction and ExactScalar all work,
and the randomized suites run on small integers for speed.

The split unit basis in canonical coordinate order is

    (1, k, i, j, li, jl, lk, l)

with norm signs (+ + + + - - - -); the printed table uses the display order
(1, i, j, k, l, li, jl, lk).
"""

from __future__ import annotations

import random
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

from .reporting import Check, run_check

__all__ = [
    "AlgebraMismatch",
    "Quaternion",
    "CDAlgebraElement",
    "SplitOctonion",
    "UnitIndex",
    "SignedUnit",
    "TABLE_ORDER",
    "cd_mul",
    "conj",
    "norm",
    "trace",
    "bilinear",
    "multiplication_table",
    "table_text",
    "table_csv",
    "identify_unit",
    "sign_rule",
    "mnemonic_product",
    "associator_classify",
    "verify_moufang",
    "composition_suite",
    "random_element",
]


class AlgebraMismatch(TypeError):
    """Mixing elements whose doubling constants l^2 differ."""


# Raw quaternion kernels on 4-tuples (w, x, y, z); these carry the hot loops.

def _qmul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def _qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def _qadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _qsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _qnormsq(a):
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]


def _cdmul(x, y, ell2):
    q1, p1 = x
    q2, p2 = y
    cross = _qmul(p2, _qconj(p1))
    qq = _qmul(q1, q2)
    q = _qadd(qq, cross) if ell2 == 1 else _qsub(qq, cross)
    p = _qadd(_qmul(_qconj(q1), p2), _qmul(q2, p1))
    return q, p


def _cdconj(x):
    q, p = x
    return _qconj(q), tuple(-c for c in p)


def _cdnorm(x, ell2):
    q, p = x
    return _qnormsq(q) - ell2 * _qnormsq(p)


class Quaternion:
    """A quaternion over any commutative coefficient ring."""

    __slots__ = ("_c",)

    def __init__(self, w=0, x=0, y=0, z=0) -> None:
        self._c = (w, x, y, z)

    @classmethod
    def _from_tuple(cls, c) -> Quaternion:
        self = object.__new__(cls)
        self._c = c
        return self

    @property
    def coefficients(self):
        return self._c

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Quaternion):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion._from_tuple(_qadd(self._c, other._c))

    def __sub__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion._from_tuple(_qsub(self._c, other._c))

    def __neg__(self) -> Quaternion:
        return Quaternion._from_tuple(tuple(-c for c in self._c))

    def __mul__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion._from_tuple(_qmul(self._c, other._c))

    def conj(self) -> Quaternion:
        return Quaternion._from_tuple(_qconj(self._c))

    def norm(self):
        return _qnormsq(self._c)

    def trace(self):
        return self._c[0] + self._c[0]

    def __repr__(self) -> str:
        return f"Quaternion{self._c!r}"


class CDAlgebraElement:
    """A Cayley-Dickson pair q + l p with a fixed doubling constant l^2 = +-1."""

    __slots__ = ("_q", "_p", "_ell2")

    def __init__(self, q: Quaternion, p: Quaternion, ell_square: int = 1) -> None:
        if ell_square not in (1, -1):
            raise ValueError("l^2 must be +1 or -1")
        self._q = q
        self._p = p
        self._ell2 = ell_square

    @property
    def q(self) -> Quaternion:
        return self._q

    @property
    def p(self) -> Quaternion:
        return self._p

    @property
    def ell_square(self) -> int:
        return self._ell2

    @property
    def pair(self):
        return (self._q.coefficients, self._p.coefficients)

    def _check(self, other: CDAlgebraElement) -> None:
        if self._ell2 != other._ell2:
            raise AlgebraMismatch(
                f"cannot combine l^2={self._ell2} with l^2={other._ell2}"
            )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CDAlgebraElement):
            return (
                self._ell2 == other._ell2
                and self._q == other._q
                and self._p == other._p
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._q, self._p, self._ell2))

    def __add__(self, other: CDAlgebraElement) -> CDAlgebraElement:
        if not isinstance(other, CDAlgebraElement):
            return NotImplemented
        self._check(other)
        return type(self)._rebuild(self._q + other._q, self._p + other._p, self._ell2)

    def __sub__(self, other: CDAlgebraElement) -> CDAlgebraElement:
        if not isinstance(other, CDAlgebraElement):
            return NotImplemented
        self._check(other)
        return type(self)._rebuild(self._q - other._q, self._p - other._p, self._ell2)

    def __neg__(self) -> CDAlgebraElement:
        return type(self)._rebuild(-self._q, -self._p, self._ell2)

    def __mul__(self, other: CDAlgebraElement) -> CDAlgebraElement:
        if not isinstance(other, CDAlgebraElement):
            return NotImplemented
        self._check(other)
        q, p = _cdmul(self.pair, other.pair, self._ell2)
        return type(self)._rebuild(
            Quaternion._from_tuple(q), Quaternion._from_tuple(p), self._ell2
        )

    @classmethod
    def _rebuild(cls, q: Quaternion, p: Quaternion, ell2: int) -> CDAlgebraElement:
        if cls is SplitOctonion and ell2 == 1:
            return SplitOctonion(q, p)
        return CDAlgebraElement(q, p, ell2)

    def conj(self) -> CDAlgebraElement:
        return type(self)._rebuild(self._q.conj(), -self._p, self._ell2)

    def norm(self):
        return _cdnorm(self.pair, self._ell2)

    def trace(self):
        return self._q.trace()

    def __repr__(self) -> str:
        return f"CDAlgebraElement({self._q!r}, {self._p!r}, ell_square={self._ell2})"


class UnitIndex(Enum):
    """Canonical coordinate slots of the split unit basis."""

    ONE = 0
    K = 1
    I = 2
    J = 3
    LI = 4
    JL = 5
    LK = 6
    L = 7

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.value]

    @property
    def norm_sign(self) -> int:
        return 1 if self.value < 4 else -1


_SYMBOLS = ("1", "k", "i", "j", "li", "jl", "lk", "l")

# Paper display order for the printed table.
TABLE_ORDER = (
    UnitIndex.ONE,
    UnitIndex.I,
    UnitIndex.J,
    UnitIndex.K,
    UnitIndex.L,
    UnitIndex.LI,
    UnitIndex.JL,
    UnitIndex.LK,
)

# Unit -> Cayley-Dickson pair; note jl = (0, -j).
_UNIT_PAIRS = {
    UnitIndex.ONE: ((1, 0, 0, 0), (0, 0, 0, 0)),
    UnitIndex.K: ((0, 0, 0, 1), (0, 0, 0, 0)),
    UnitIndex.I: ((0, 1, 0, 0), (0, 0, 0, 0)),
    UnitIndex.J: ((0, 0, 1, 0), (0, 0, 0, 0)),
    UnitIndex.LI: ((0, 0, 0, 0), (0, 1, 0, 0)),
    UnitIndex.JL: ((0, 0, 0, 0), (0, 0, -1, 0)),
    UnitIndex.LK: ((0, 0, 0, 0), (0, 0, 0, 1)),
    UnitIndex.L: ((0, 0, 0, 0), (1, 0, 0, 0)),
}


class SignedUnit(NamedTuple):
    sign: int
    unit: UnitIndex

    def __str__(self) -> str:
        return self.unit.symbol if self.sign > 0 else "-" + self.unit.symbol


class SplitOctonion(CDAlgebraElement):
    """The l^2 = +1 double of the quaternions, in split coordinates."""

    __slots__ = ()

    def __init__(self, q: Quaternion, p: Quaternion) -> None:
        super().__init__(q, p, 1)

    @classmethod
    def from_coords(cls, coords: Sequence) -> SplitOctonion:
        if len(coords) != 8:
            raise ValueError("eight coordinates expected")
        c1, ck, ci, cj, cli, cjl, clk, cl = coords
        return cls(Quaternion(c1, ci, cj, ck), Quaternion(cl, cli, -cjl, clk))

    @property
    def coords(self):
        qw, qx, qy, qz = self._q.coefficients
        pw, px, py, pz = self._p.coefficients
        return (qw, qz, qx, qy, px, -py, pz, pw)

    @classmethod
    def unit(cls, u: UnitIndex) -> SplitOctonion:
        q, p = _UNIT_PAIRS[u]
        return cls(Quaternion._from_tuple(q), Quaternion._from_tuple(p))

    def __repr__(self) -> str:
        return f"SplitOctonion.from_coords({list(self.coords)!r})"


def cd_mul(x: CDAlgebraElement, y: CDAlgebraElement) -> CDAlgebraElement:
    return x * y


def conj(x: CDAlgebraElement) -> CDAlgebraElement:
    return x.conj()


def norm(x: CDAlgebraElement):
    return x.norm()


def trace(x: CDAlgebraElement):
    return x.trace()


def bilinear(x: CDAlgebraElement, y: CDAlgebraElement):
    """Polarization <x, y> = (N(x+y) - N(x) - N(y)) / 2."""
    x._check(y)
    two_b = (x + y).norm() - x.norm() - y.norm()
    if isinstance(two_b, int):
        quo, rem = divmod(two_b, 2)
        if rem == 0:
            return quo
        return Fraction(two_b, 2)
    return two_b / 2


def identify_unit(x: CDAlgebraElement) -> SignedUnit:
    """Match x against +-(basis unit); products of units always land here."""
    if not isinstance(x, SplitOctonion):
        x = SplitOctonion(x.q, x.p)
    coords = x.coords
    hits = [(idx, c) for idx, c in enumerate(coords) if c != 0]
    if len(hits) != 1 or hits[0][1] not in (1, -1):
        raise ValueError(f"{x!r} is not a signed unit")
    idx, c = hits[0]
    return SignedUnit(1 if c == 1 else -1, UnitIndex(idx))


def multiplication_table(
    order: Sequence[UnitIndex] = TABLE_ORDER,
) -> tuple[tuple[SignedUnit, ...], ...]:
    units = {u: SplitOctonion.unit(u) for u in order}
    return tuple(
        tuple(identify_unit(units[row] * units[col]) for col in order)
        for row in order
    )


def table_text(order: Sequence[UnitIndex] = TABLE_ORDER) -> str:
    table = multiplication_table(order)
    head = [""] + [u.symbol for u in order]
    rows = [head] + [
        [order[i].symbol] + [str(cell) for cell in row] for i, row in enumerate(table)
    ]
    widths = [max(len(r[c]) for r in rows) for c in range(9)]
    return "\n".join(
        "  ".join(f"{cell:>{w}}" for cell, w in zip(row, widths)) for row in rows
    ) + "\n"


def table_csv(order: Sequence[UnitIndex] = TABLE_ORDER) -> str:
    table = multiplication_table(order)
    lines = ["," + ",".join(u.symbol for u in order)]
    for u, row in zip(order, table):
        lines.append(u.symbol + "," + ",".join(str(cell) for cell in row))
    return "\n".join(lines) + "\n"


def sign_rule(m: UnitIndex, n: UnitIndex, o: CDAlgebraElement) -> CDAlgebraElement:
    """m(n o) via the imaginary-unit rule: -n(m o) for m != n, (m^2) o for m = n.

    Asserts agreement with the direct product.
    """
    if m is UnitIndex.ONE or n is UnitIndex.ONE:
        raise ValueError("sign rule applies to imaginary units only")
    um = SplitOctonion.unit(m)
    un = SplitOctonion.unit(n)
    if not isinstance(o, SplitOctonion):
        o = SplitOctonion(o.q, o.p)
    direct = um * (un * o)
    if m is n:
        sq = identify_unit(um * um)
        via_rule = o if sq.sign > 0 else -o
    else:
        via_rule = -(un * (um * o))
    if via_rule != direct:
        raise AssertionError(f"sign rule failed at ({m}, {n})")
    return direct


def mnemonic_product(x: CDAlgebraElement, y: CDAlgebraElement) -> CDAlgebraElement:
    """The 2x2 matrix mnemonic for the pair product.

    M(o) = [[q, l^2 p*], [p, q*]]; in the naive block product the two entries
    feeding the first column come out in the wrong order and must be reversed:
    q-part q1 q2 + l^2 p2 p1*, p-part q2 p1 + q1* p2.  Asserts equality with
    the Cayley-Dickson product.
    """
    x._check(y)
    ell2 = x.ell_square
    q1, p1 = x.q, x.p
    q2, p2 = y.q, y.p
    q = q1 * q2 + (p2 * p1.conj() if ell2 == 1 else -(p2 * p1.conj()))
    p = q2 * p1 + q1.conj() * p2
    out = type(x)._rebuild(q, p, ell2)
    if out != x * y:
        raise AssertionError("mnemonic disagrees with the pair product")
    return out


def associator_classify(m: UnitIndex, n: UnitIndex, p: UnitIndex) -> str:
    """Classify a unit triple by (mn)p = +- m(np)."""
    um, un, up = (SplitOctonion.unit(u) for u in (m, n, p))
    left = (um * un) * up
    right = um * (un * up)
    if left == right:
        return "associative"
    if left == -right:
        return "anti-associative"
    raise AssertionError("unit associator is neither +-1")  # unreachable


def random_element(
    rng: random.Random, ell_square: int = 1, span: int = 9
) -> CDAlgebraElement:
    coeffs = [rng.randint(-span, span) for _ in range(8)]
    q = Quaternion._from_tuple(tuple(coeffs[:4]))
    p = Quaternion._from_tuple(tuple(coeffs[4:]))
    if ell_square == 1:
        return SplitOctonion(q, p)
    return CDAlgebraElement(q, p, ell_square)


_MOUFANG = (
    ("M1", lambda o, m, n, e2: _eq2(_cdmul(o, _cdmul(n, o, e2), e2),
                                    _cdmul(_cdmul(o, n, e2), o, e2))),
    ("M1H", lambda o, m, n, e2: _eq2(_cdmul(_cdconj(o), _cdmul(n, o, e2), e2),
                                     _cdmul(_cdmul(_cdconj(o), n, e2), o, e2))),
    ("M2", lambda o, m, n, e2: _eq2(
        _cdmul(o, _cdmul(m, _cdmul(o, n, e2), e2), e2),
        _cdmul(_cdmul(_cdmul(o, m, e2), o, e2), n, e2))),
    ("M2H", lambda o, m, n, e2: _eq2(
        _cdmul(_cdmul(_cdmul(m, o, e2), n, e2), o, e2),
        _cdmul(m, _cdmul(_cdmul(o, n, e2), o, e2), e2))),
    ("M2HH", lambda o, m, n, e2: _eq2(
        _cdmul(_cdmul(o, m, e2), _cdmul(n, o, e2), e2),
        _cdmul(_cdmul(o, _cdmul(m, n, e2), e2), o, e2))),
)


def _eq2(a, b) -> bool:
    return a[0] == b[0] and a[1] == b[1]


def _sample_pairs(rng: random.Random, count: int, span: int = 9):
    r = rng.randint
    return [
        (
            ((r(-span, span), r(-span, span), r(-span, span), r(-span, span)),
             (r(-span, span), r(-span, span), r(-span, span), r(-span, span))),
            ((r(-span, span), r(-span, span), r(-span, span), r(-span, span)),
             (r(-span, span), r(-span, span), r(-span, span), r(-span, span))),
            ((r(-span, span), r(-span, span), r(-span, span), r(-span, span)),
             (r(-span, span), r(-span, span), r(-span, span), r(-span, span))),
        )
        for _ in range(count)
    ]


def verify_moufang(
    samples: int = 10000, seed: int = 0, ell_square: int = 1
) -> list[Check]:
    """The five Moufang identities on random integer elements, one Check each."""
    triples = _sample_pairs(random.Random(seed), samples)
    checks = []
    for name, identity in _MOUFANG:
        def count_failures(identity=identity):
            return sum(
                0 if identity(o, m, n, ell_square) else 1 for o, m, n in triples
            )
        checks.append(run_check(f"moufang-{name}", name, count_failures))
    return checks


def composition_suite(samples: int = 2000, seed: int = 0, ell_square: int = 1) -> list[Check]:
    """Norm composition, conjugation, polarization and quadratic identities."""
    rng = random.Random(seed)
    triples = _sample_pairs(rng, samples)
    e2 = ell_square

    def norm_comp():
        return sum(
            0
            if _cdnorm(_cdmul(x, y, e2), e2) == _cdnorm(x, e2) * _cdnorm(y, e2)
            else 1
            for x, y, _ in triples
        )

    def conj_reversal():
        return sum(
            0 if _cdconj(_cdmul(x, y, e2)) == _cdmul(_cdconj(y), _cdconj(x), e2) else 1
            for x, y, _ in triples
        )

    def quadratic():
        bad = 0
        for x, _, _ in triples:
            q, p = x
            tr = q[0] + q[0]
            nx = _cdnorm(x, e2)
            sq = _cdmul(x, x, e2)
            lhs = (
                tuple(a - tr * b for a, b in zip(sq[0], q)),
                tuple(a - tr * b for a, b in zip(sq[1], p)),
            )
            want = ((-nx, 0, 0, 0), (0, 0, 0, 0))
            bad += 0 if lhs == want else 1
        return bad

    def two_sided_similarity():
        # <zx, zy> = <xz, yz> = N(z) <x, y>, checked through the polarization.
        bad = 0
        for x, y, z in triples:
            nz = _cdnorm(z, e2)
            base = _pol(x, y, e2)
            bad += 0 if _pol(_cdmul(z, x, e2), _cdmul(z, y, e2), e2) == nz * base else 1
            bad += 0 if _pol(_cdmul(x, z, e2), _cdmul(y, z, e2), e2) == nz * base else 1
        return bad

    def trace_pairing():
        return sum(
            0 if x[0][0] + x[0][0] == 2 * _pol(x, _ONE_PAIR, e2) else 1
            for x, _, _ in triples
        )

    return [
        run_check("norm-composition", "2.2", norm_comp),
        run_check("conj-antiautomorphism", "2.2", conj_reversal),
        run_check("quadratic-identity", "2.2", quadratic),
        run_check("similarity-pairing", "2.2", two_sided_similarity),
        run_check("trace-pairing", "2.2", trace_pairing),
    ]


_ONE_PAIR = ((1, 0, 0, 0), (0, 0, 0, 0))


def _pol(x, y, e2):
    s = (_qadd(x[0], y[0]), _qadd(x[1], y[1]))
    two_b = _cdnorm(s, e2) - _cdnorm(x, e2) - _cdnorm(y, e2)
    quo, rem = divmod(two_b, 2)
    assert rem == 0
    return quo
