"""Virtual and graded characters of a Weyl group and their pairings.

All pairings are evaluated classwise from the character table; a brute-force
sum over group elements is kept as an independent oracle for small ranks.
The coinvariant-algebra class function p(q)/det_V(1-qw) is an integer
polynomial for every w, which keeps fake degrees and the fake-degree matrix
inside Z[q] throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyq import IntPoly, ONE, PolyMatrix, ZERO
from .weyl import WeylGroupData, WeylType, build, delta_elliptic_count


@dataclass(frozen=True)
class VirtualCharacter:
    group: WeylGroupData
    coords: tuple  # integers over irreps

    def __post_init__(self):
        if len(self.coords) != len(self.group.irrep_labels):
            raise ValueError("coordinate length mismatch")

    def value(self, cls: int) -> int:
        return sum(
            c * self.group.char_table[i][cls]
            for i, c in enumerate(self.coords)
            if c
        )

    def __add__(self, other):
        _same_group(self, other)
        return VirtualCharacter(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        _same_group(self, other)
        return VirtualCharacter(
            self.group, tuple(a - b for a, b in zip(self.coords, other.coords))
        )


@dataclass(frozen=True)
class GradedCharacter:
    group: WeylGroupData
    coords: tuple  # IntPoly over irreps

    def __post_init__(self):
        if len(self.coords) != len(self.group.irrep_labels):
            raise ValueError("coordinate length mismatch")

    def value(self, cls: int) -> IntPoly:
        acc = ZERO
        for i, c in enumerate(self.coords):
            if c:
                acc = acc + c * self.group.char_table[i][cls]
        return acc

    def at_q(self, q0: int) -> VirtualCharacter:
        return VirtualCharacter(self.group, tuple(c.eval(q0) for c in self.coords))

    def negate_q(self) -> "GradedCharacter":
        return GradedCharacter(self.group, tuple(c.negate_q() for c in self.coords))


def _same_group(a, b):
    if a.group is not b.group:
        raise ValueError("characters live on different groups")


def irreducible(g: WeylGroupData, i: int) -> VirtualCharacter:
    coords = [0] * len(g.irrep_labels)
    coords[i] = 1
    return VirtualCharacter(g, tuple(coords))


def graded_irreducible(g: WeylGroupData, i: int) -> GradedCharacter:
    coords = [ZERO] * len(g.irrep_labels)
    coords[i] = ONE
    return GradedCharacter(g, tuple(coords))


def grade(v: VirtualCharacter) -> GradedCharacter:
    return GradedCharacter(
        v.group, tuple(IntPoly.const(c) if c else ZERO for c in v.coords)
    )


# ---------------------------------------------------------------------------
# pairings


def std_pairing(a: VirtualCharacter, b: VirtualCharacter) -> int:
    _same_group(a, b)
    g = a.group
    total = sum(
        cls.size * a.value(k) * b.value(k) for k, cls in enumerate(g.classes)
    )
    if total % g.order:
        raise ArithmeticError("non-integral character pairing")
    return total // g.order


def q_elliptic_pairing(a: GradedCharacter, b: GradedCharacter) -> IntPoly:
    """<a, b>^q = (1/|W|) sum size * a(w) * b(w) * det_V(1 - q w).

    Via the Koszul resolution this is also the graded Euler-Poincare pairing
    of graded modules over C[W] smashed with the polynomial ring on V, so no
    separate homological computation is provided.
    """
    _same_group(a, b)
    g = a.group
    acc = ZERO
    for k, cls in enumerate(g.classes):
        av = a.value(k)
        if av.is_zero():
            continue
        bv = b.value(k)
        if bv.is_zero():
            continue
        acc = acc + (av * bv * g.refl_charpoly[k]) * cls.size
    return acc.divexact_int(g.order)


def minus_one_pairing(a: VirtualCharacter, b: VirtualCharacter) -> int:
    """The q-elliptic pairing at q = -1, i.e. weighted by det_V(1 + w)."""
    g = a.group
    total = sum(
        cls.size * a.value(k) * b.value(k) * g.refl_charpoly[k].eval(-1)
        for k, cls in enumerate(g.classes)
    )
    if total % g.order:
        raise ArithmeticError("non-integral elliptic pairing")
    return total // g.order


def one_pairing(a: VirtualCharacter, b: VirtualCharacter) -> int:
    """The q-elliptic pairing at q = 1 (weighted by det_V(1 - w))."""
    g = a.group
    total = sum(
        cls.size * a.value(k) * b.value(k) * g.refl_charpoly[k].eval(1)
        for k, cls in enumerate(g.classes)
    )
    if total % g.order:
        raise ArithmeticError("non-integral elliptic pairing")
    return total // g.order


# brute-force oracles over group elements, for cross-checks at small rank
def std_pairing_elements(a: VirtualCharacter, b: VirtualCharacter) -> int:
    g = a.group
    total = 0
    for w in g.elements():
        k = g.class_of(w)
        total += a.value(k) * b.value(k)
    assert total % g.order == 0
    return total // g.order


def q_elliptic_pairing_elements(a: GradedCharacter, b: GradedCharacter) -> IntPoly:
    g = a.group
    acc = ZERO
    for w in g.elements():
        k = g.class_of(w)
        acc = acc + a.value(k) * b.value(k) * g.refl_charpoly[k]
    return acc.divexact_int(g.order)


# ---------------------------------------------------------------------------
# coinvariant algebra, fake degrees


def poincare_poly(g: WeylGroupData) -> IntPoly:
    p = ONE
    for m in g.degrees:
        p = p * IntPoly((1,) + (0,) * (m - 1) + (-1,))
    return p


@lru_cache(maxsize=None)
def _coinvariant_values(t: WeylType):
    """Graded character of the coinvariant algebra, one IntPoly per class."""
    g = build(t)
    p = poincare_poly(g)
    return tuple(p.divexact(g.refl_charpoly[k]) for k in range(len(g.classes)))


def coinvariant_value(g: WeylGroupData, cls: int) -> IntPoly:
    return _coinvariant_values(g.type)[cls]


def fake_degree(g: WeylGroupData, irrep: int) -> IntPoly:
    """Graded multiplicity of an irreducible in the coinvariant algebra."""
    vals = _coinvariant_values(g.type)
    acc = ZERO
    for k, cls in enumerate(g.classes):
        ch = g.char_table[irrep][k]
        if ch:
            acc = acc + (vals[k] * ch) * cls.size
    return acc.divexact_int(g.order)


def coinvariant_character(g: WeylGroupData) -> GradedCharacter:
    return GradedCharacter(
        g, tuple(fake_degree(g, i) for i in range(len(g.irrep_labels)))
    )


@lru_cache(maxsize=None)
def _omega_rows(t: WeylType):
    g = build(t)
    vals = _coinvariant_values(t)
    n = len(g.irrep_labels)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = ZERO
            for k, cls in enumerate(g.classes):
                c = g.char_table[i][k] * g.char_table[j][k]
                if c:
                    acc = acc + (vals[k] * c) * cls.size
            e = acc.divexact_int(g.order)
            rows[i][j] = e
            rows[j][i] = e
    return tuple(tuple(r) for r in rows)


def omega_entry(g: WeylGroupData, i: int, j: int) -> IntPoly:
    return _omega_rows(g.type)[i][j]


def omega_matrix(g: WeylGroupData) -> PolyMatrix:
    """Symmetric matrix of graded multiplicities of tensor squares in the
    coinvariant algebra; row/column order follows the irrep list."""
    return PolyMatrix(_omega_rows(g.type))


def chevalley_check(g: WeylGroupData) -> bool:
    """Coinvariant character times det_V(1-qw) equals p(q) on every class."""
    p = poincare_poly(g)
    x1 = coinvariant_character(g)
    return all(
        x1.value(k) * g.refl_charpoly[k] == p for k in range(len(g.classes))
    )


# ---------------------------------------------------------------------------
# (-1)-elliptic and twisted pairings


def minus_one_gram(g: WeylGroupData):
    n = len(g.irrep_labels)
    dets = [p.eval(-1) for p in g.refl_charpoly]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            total = sum(
                cls.size * g.char_table[i][k] * g.char_table[j][k] * dets[k]
                for k, cls in enumerate(g.classes)
            )
            assert total % g.order == 0
            row.append(total // g.order)
        rows.append(row)
    return rows


def _int_matrix_rank(rows) -> int:
    from fractions import Fraction

    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        rank += 1
    return rank


def minus_one_gram_rank(g: WeylGroupData) -> int:
    """Rank of the (-1)-elliptic Gram matrix on irreducibles."""
    return _int_matrix_rank(minus_one_gram(g))


def delta_twist_pairing(a: VirtualCharacter, b: VirtualCharacter) -> int:
    """Twisted-character pairing (1/|W|) sum a(ww0) b(ww0) det_V(1 - w delta).

    Computed by the substitution u = w w0, which turns it into the
    (-1)-elliptic pairing; the direct twisted sum is kept in
    delta_twist_pairing_direct as an oracle.
    """
    return minus_one_pairing(a, b)


def delta_twist_pairing_direct(a: VirtualCharacter, b: VirtualCharacter) -> int:
    """Sum over elements of a(ww0) b(ww0) det_V(1 - w delta), no substitution."""
    _same_group(a, b)
    g = a.group
    total = 0
    for w in g.elements():
        ww0 = g.mul(w, g.w0)
        k = g.class_of(ww0)
        # det_V(1 - w delta) with delta = -w0 on V equals det_V(1 + w w0)
        d = g.refl_charpoly[k].eval(-1)
        if d:
            total += a.value(k) * b.value(k) * d
    assert total % g.order == 0
    return total // g.order


def delta_twist_grams_agree(g: WeylGroupData) -> bool:
    """Entrywise agreement of the twisted and (-1)-elliptic Gram matrices."""
    n = len(g.irrep_labels)
    for i in range(n):
        for j in range(i, n):
            a, b = irreducible(g, i), irreducible(g, j)
            if delta_twist_pairing_direct(a, b) != minus_one_pairing(a, b):
                return False
    return True


def minus_one_rank_matches_twisted_count(g: WeylGroupData) -> bool:
    return minus_one_gram_rank(g) == delta_elliptic_count(g)
