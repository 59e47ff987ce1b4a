"""Finite Weyl group models for types A, B/C, D and G2.

Elements are concrete: permutation tuples for A, signed permutation tuples
for B/C/D, and dihedral indices for G2.  Conjugacy classes of the signed
families and G2 are found by brute-force orbit partition under conjugation by
the simple generators; type A classes come straight from cycle types.
Character tables: Murnaghan-Nakayama for A, the bipartition hook rule for
B/C, restriction with split classes for D, and a hard-coded table for G2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .partitions import hooks, partitions, sym_char
from .polyq import IntPoly, ONE

SUPPORTED_RANKS = {"A": range(1, 9), "B": range(1, 7), "C": range(1, 7),
                   "D": range(3, 7), "G2": range(2, 3)}


@dataclass(frozen=True)
class WeylType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in SUPPORTED_RANKS:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank not in SUPPORTED_RANKS[self.family]:
            raise ValueError(f"unsupported rank {self.rank} for type {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}" if self.family != "G2" else "G2"


@dataclass
class ConjClass:
    representative: tuple | int
    size: int
    label: object  # partition / (mu+, mu-) / (mu+, mu-, tag) / G2 name


# ---------------------------------------------------------------------------
# element arithmetic


def perm_mul(u, w):
    """(u*w)(i) = u(w(i)) for permutation tuples."""
    return tuple(u[w[i]] for i in range(len(w)))


def perm_inv(w):
    out = [0] * len(w)
    for i, j in enumerate(w):
        out[j] = i
    return tuple(out)


def sp_mul(u, w):
    """Signed permutations, entries +-1..+-n; (u*w) acts as u after w."""
    out = []
    for x in w:
        y = u[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def sp_inv(w):
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[abs(x) - 1] = (i + 1) if x > 0 else -(i + 1)
    return tuple(out)


def g2_mul(u, w):
    """Dihedral order 12; index = 6*b + k encodes s^b r^k."""
    bu, ku = divmod(u, 6)
    bw, kw = divmod(w, 6)
    if bu == 0:
        if bw == 0:
            return (ku + kw) % 6
        return 6 + (kw - ku) % 6
    if bw == 0:
        return 6 + (ku + kw) % 6
    return (kw - ku) % 6


def g2_inv(w):
    b, k = divmod(w, 6)
    return w if b else (-k) % 6


def _mul(t: WeylType):
    if t.family == "A":
        return perm_mul
    if t.family == "G2":
        return g2_mul
    return sp_mul


def _inv(t: WeylType):
    if t.family == "A":
        return perm_inv
    if t.family == "G2":
        return g2_inv
    return sp_inv


def identity_element(t: WeylType):
    if t.family == "A":
        return tuple(range(t.rank + 1))
    if t.family == "G2":
        return 0
    return tuple(range(1, t.rank + 1))


def simple_generators(t: WeylType):
    if t.family == "A":
        n = t.rank + 1
        gens = []
        for i in range(n - 1):
            g = list(range(n))
            g[i], g[i + 1] = g[i + 1], g[i]
            gens.append(tuple(g))
        return gens
    if t.family == "G2":
        return [6, 7]  # short and long simple reflections
    n = t.rank
    gens = []
    for i in range(n - 1):
        g = list(range(1, n + 1))
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    if t.family in ("B", "C"):
        g = list(range(1, n + 1))
        g[n - 1] = -n
        gens.append(tuple(g))
    else:  # D: reflection in e_{n-1} + e_n
        g = list(range(1, n + 1))
        if n >= 2:
            g[n - 2], g[n - 1] = -n, -(n - 1)
        gens.append(tuple(g))
    return gens


def all_elements(t: WeylType):
    if t.family == "A":
        return [tuple(p) for p in itertools.permutations(range(t.rank + 1))]
    if t.family == "G2":
        return list(range(12))
    n = t.rank
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            if t.family == "D" and signs.count(-1) % 2:
                continue
            out.append(tuple(s * x for s, x in zip(signs, p)))
    return out


# ---------------------------------------------------------------------------
# labels and characteristic polynomials


def perm_cycle_type(w):
    n = len(w)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        j, c = i, 0
        while not seen[j]:
            seen[j] = True
            j = w[j]
            c += 1
        parts.append(c)
    return tuple(sorted(parts, reverse=True))


def signed_cycle_type(w):
    """(mu+, mu-): lengths of positive and negative cycles."""
    n = len(w)
    seen = [False] * n
    pos, neg = [], []
    for i in range(n):
        if seen[i]:
            continue
        j, c, sign = i, 0, 1
        while not seen[j]:
            seen[j] = True
            x = w[j]
            if x < 0:
                sign = -sign
            j = abs(x) - 1
            c += 1
        (pos if sign > 0 else neg).append(c)
    return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))


_G2_CHARPOLY = {
    "e": IntPoly((1, -2, 1)),
    "rot60": IntPoly((1, -1, 1)),
    "rot120": IntPoly((1, 1, 1)),
    "w0": IntPoly((1, 2, 1)),
    "refl_short": IntPoly((1, 0, -1)),
    "refl_long": IntPoly((1, 0, -1)),
}


def g2_class_name(w):
    b, k = divmod(w, 6)
    if b:
        return "refl_short" if k % 2 == 0 else "refl_long"
    return {0: "e", 1: "rot60", 2: "rot120", 3: "w0", 4: "rot120", 5: "rot60"}[k]


def charpoly_of_label(t: WeylType, label) -> IntPoly:
    """det_V(1 - q w) for any element with the given class label."""
    if t.family == "A":
        out = ONE
        for c in label:
            out = out * IntPoly((1,) + (0,) * (c - 1) + (-1,))
        return out.divexact(IntPoly((1, -1)))
    if t.family == "G2":
        return _G2_CHARPOLY[label]
    pos, neg = label[0], label[1]
    out = ONE
    for c in pos:
        out = out * IntPoly((1,) + (0,) * (c - 1) + (-1,))
    for c in neg:
        out = out * IntPoly((1,) + (0,) * (c - 1) + (1,))
    return out


# ---------------------------------------------------------------------------
# character tables


def bipartitions(n):
    out = []
    for k in range(n, -1, -1):
        for a in partitions(k):
            for b in partitions(n - k):
                out.append((a, b))
    return tuple(out)


@lru_cache(maxsize=None)
def hyperoct_char(alpha, beta, pos, neg) -> int:
    """Character of the B_n irrep (alpha;beta) at signed cycle type (pos,neg).

    Hooks stripped from beta pick up the sign of the cycle.
    """
    if pos:
        r, rest = pos[0], pos[1:]
        total = 0
        for sm, leg in hooks(alpha, r):
            total += (-1) ** leg * hyperoct_char(sm, beta, rest, neg)
        for sm, leg in hooks(beta, r):
            total += (-1) ** leg * hyperoct_char(alpha, sm, rest, neg)
        return total
    if neg:
        r, rest = neg[0], neg[1:]
        total = 0
        for sm, leg in hooks(alpha, r):
            total += (-1) ** leg * hyperoct_char(sm, beta, (), rest)
        for sm, leg in hooks(beta, r):
            total -= (-1) ** leg * hyperoct_char(alpha, sm, (), rest)
        return total
    return 1 if not alpha and not beta else 0


_G2_CLASS_ORDER = ("e", "w0", "rot60", "rot120", "refl_long", "refl_short")
_G2_IRREPS = ("triv", "sgn", "chi1", "chi2", "refl", "rot2")
_G2_TABLE = {
    #            e   w0 r60 r120 rl  rs
    "triv":    (1,  1,  1,  1,  1,  1),
    "sgn":     (1,  1,  1,  1, -1, -1),
    "chi1":    (1, -1, -1,  1, -1,  1),
    "chi2":    (1, -1, -1,  1,  1, -1),
    "refl":    (2, -2,  1, -1,  0,  0),
    "rot2":    (2,  2, -1, -1,  0,  0),
}


# ---------------------------------------------------------------------------
# group data


@dataclass
class WeylGroupData:
    type: WeylType
    order: int
    classes: list
    char_table: tuple  # rows irreps x cols classes
    irrep_labels: tuple
    degrees: tuple
    w0: object
    refl_charpoly: list
    sgn_index: int
    triv_index: int
    refl_index: int
    _class_index: dict = field(default_factory=dict, repr=False)

    # -- basic lookups ---------------------------------------------------
    def char_value(self, irrep: int, cls: int) -> int:
        return self.char_table[irrep][cls]

    def irrep_dim(self, irrep: int) -> int:
        ident = next(i for i, c in enumerate(self.classes) if c.size == 1
                     and c.representative == identity_element(self.type))
        return self.char_table[irrep][ident]

    @property
    def identity_class(self) -> int:
        return next(i for i, c in enumerate(self.classes)
                    if c.representative == identity_element(self.type))

    def class_of(self, w) -> int:
        if self.type.family == "A":
            return self._class_index[perm_cycle_type(w)]
        if self._class_index:
            return self._class_index[w]
        raise RuntimeError("class index not built")

    def mul(self, u, w):
        return _mul(self.type)(u, w)

    def inv(self, w):
        return _inv(self.type)(w)

    def elements(self):
        return all_elements(self.type)

    # -- delta = -w0 ------------------------------------------------------
    def delta_element(self, w):
        """The group automorphism w -> w0 w w0."""
        m = _mul(self.type)
        return m(self.w0, m(w, self.w0))

    def delta_is_trivial(self) -> bool:
        gens = simple_generators(self.type)
        return all(self.delta_element(g) == g for g in gens)

    def sgn_of_class(self, cls: int) -> int:
        return self.char_table[self.sgn_index][cls]


def _degrees(t: WeylType):
    if t.family == "A":
        return tuple(range(2, t.rank + 2))
    if t.family in ("B", "C"):
        return tuple(range(2, 2 * t.rank + 1, 2))
    if t.family == "D":
        return tuple(range(2, 2 * t.rank - 1, 2)) + (t.rank,)
    return (2, 6)


def _w0(t: WeylType):
    if t.family == "A":
        return tuple(reversed(range(t.rank + 1)))
    if t.family == "G2":
        return 3
    n = t.rank
    if t.family == "D" and n % 2 == 1:
        return tuple([-i for i in range(1, n)] + [n])
    return tuple(-i for i in range(1, n + 1))


def _brute_force_classes(t: WeylType):
    """Orbit partition of the whole group under conjugation by generators."""
    mul, inv = _mul(t), _inv(t)
    gens = simple_generators(t)
    gen_pairs = [(g, inv(g)) for g in gens]
    seen = set()
    orbits = []
    for e in all_elements(t):
        if e in seen:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for g, gi in gen_pairs:
                    c = mul(g, mul(w, gi))
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        seen |= orbit
        orbits.append(orbit)
    return orbits


def _build_A(t: WeylType):
    n = t.rank + 1
    labels = partitions(n)
    classes = []
    index = {}
    for lab in labels:
        rep = []
        start = 0
        for c in lab:
            rep.extend(list(range(start + 1, start + c)) + [start])
            start += c
        from .partitions import cycle_type_size

        index[lab] = len(classes)
        classes.append(ConjClass(tuple(rep), cycle_type_size(n, lab), lab))
    irreps = partitions(n)
    table = tuple(
        tuple(sym_char(lam, cls.label) for cls in classes) for lam in irreps
    )
    sgn = irreps.index((1,) * n)
    triv = irreps.index((n,))
    return classes, table, irreps, index, sgn, triv


def _build_BC(t: WeylType):
    orbits = _brute_force_classes(t)
    classes = []
    index = {}
    keyed = []
    for orb in orbits:
        rep = min(orb)
        lab = signed_cycle_type(rep)
        keyed.append((lab, rep, orb))
    keyed.sort(key=lambda x: (-len(x[0][0]), x[0]))
    for lab, rep, orb in keyed:
        idx = len(classes)
        classes.append(ConjClass(rep, len(orb), lab))
        for w in orb:
            index[w] = idx
    irreps = bipartitions(t.rank)
    table = tuple(
        tuple(hyperoct_char(a, b, cls.label[0], cls.label[1]) for cls in classes)
        for (a, b) in irreps
    )
    sgn = irreps.index(((), (1,) * t.rank))
    triv = irreps.index(((t.rank,), ()))
    return classes, table, irreps, index, sgn, triv


def _build_D(t: WeylType):
    n = t.rank
    orbits = _brute_force_classes(t)
    # canonical positive-cycle representative of each split label
    def split_positive_rep(mu):
        rep = []
        start = 0
        for c in mu:
            rep.extend(list(range(start + 2, start + c + 1)) + [start + 1])
            start += c
        return tuple(rep)

    keyed = []
    for orb in orbits:
        rep = min(orb)
        pos, neg = signed_cycle_type(rep)
        splits = not neg and all(c % 2 == 0 for c in pos)
        if splits:
            tag = "+" if split_positive_rep(pos) in orb else "-"
        else:
            tag = ""
        keyed.append(((pos, neg, tag), rep, orb))
    keyed.sort(key=lambda x: (-len(x[0][0]), x[0]))
    classes = []
    index = {}
    for lab, rep, orb in keyed:
        idx = len(classes)
        classes.append(ConjClass(rep, len(orb), lab))
        for w in orb:
            index[w] = idx

    # irreps: unordered pairs {a,b}, a != b, plus split pairs (a,a,+-)
    pair_labels = []
    for a, b in bipartitions(n):
        if a == b:
            continue
        if (b, a) not in [(x[0], x[1]) for x in pair_labels]:
            pair_labels.append((a, b))
    split_labels = []
    if n % 2 == 0:
        for a in partitions(n // 2):
            split_labels.append(a)

    def b_char(a, b, cls):
        return hyperoct_char(a, b, cls.label[0], cls.label[1])

    rows = []
    labels = []
    for a, b in pair_labels:
        labels.append((a, b))
        rows.append(tuple(b_char(a, b, cls) for cls in classes))
    for a in split_labels:
        for eps in (+1, -1):
            labels.append((a, a, "+" if eps > 0 else "-"))
            row = []
            for cls in classes:
                base = b_char(a, a, cls)
                pos, neg, tag = cls.label
                if tag:
                    mu_half = tuple(c // 2 for c in pos)
                    corr = 2 ** len(pos) * sym_char(a, mu_half)
                    sign = eps * (1 if tag == "+" else -1)
                    row.append((base + sign * corr) // 2)
                else:
                    assert base % 2 == 0
                    row.append(base // 2)
            rows.append(tuple(row))
    table = tuple(rows)
    sgn = labels.index(_d_pair_key((), (1,) * n, labels))
    triv = labels.index(_d_pair_key((n,), (), labels))
    return classes, table, tuple(labels), index, sgn, triv


def _d_pair_key(a, b, labels):
    for lab in labels:
        if len(lab) == 2 and (lab[:2] == (a, b) or lab[:2] == (b, a)):
            return lab
    raise KeyError((a, b))


def _build_G2(t: WeylType):
    orbits = _brute_force_classes(t)
    by_name = {}
    for orb in orbits:
        rep = min(orb)
        by_name[g2_class_name(rep)] = (rep, orb)
    classes = []
    index = {}
    for name in _G2_CLASS_ORDER:
        rep, orb = by_name[name]
        idx = len(classes)
        classes.append(ConjClass(rep, len(orb), name))
        for w in orb:
            index[w] = idx
    table = tuple(tuple(_G2_TABLE[ir]) for ir in _G2_IRREPS)
    return classes, table, _G2_IRREPS, index, _G2_IRREPS.index("sgn"), 0


@lru_cache(maxsize=None)
def build(t: WeylType) -> WeylGroupData:
    """Construct and verify the full group datum for a supported type."""
    if t.family == "A":
        classes, table, labels, index, sgn, triv = _build_A(t)
    elif t.family in ("B", "C"):
        classes, table, labels, index, sgn, triv = _build_BC(t)
    elif t.family == "D":
        classes, table, labels, index, sgn, triv = _build_D(t)
    else:
        classes, table, labels, index, sgn, triv = _build_G2(t)

    degrees = _degrees(t)
    order = 1
    for d in degrees:
        order *= d
    if t.family == "A":
        order = factorial(t.rank + 1)
    charpolys = [charpoly_of_label(t, c.label) for c in classes]

    g = WeylGroupData(
        type=t,
        order=order,
        classes=classes,
        char_table=table,
        irrep_labels=tuple(labels),
        degrees=degrees,
        w0=_w0(t),
        refl_charpoly=charpolys,
        sgn_index=sgn,
        triv_index=triv,
        refl_index=-1,
        _class_index=index,
    )
    _verify(g)
    g.refl_index = _find_reflection_irrep(g)
    return g


def _verify(g: WeylGroupData):
    sizes = [c.size for c in g.classes]
    if sum(sizes) != g.order:
        raise AssertionError("class sizes do not sum to |W|")
    deg_prod = 1
    for d in g.degrees:
        deg_prod *= d
    if deg_prod != g.order:
        raise AssertionError("product of fundamental degrees is not |W|")
    ident = g.identity_class
    nirr = len(g.char_table)
    if nirr != len(g.classes):
        raise AssertionError("irrep count differs from class count")
    if sum(row[ident] ** 2 for row in g.char_table) != g.order:
        raise AssertionError("sum of squared dimensions is not |W|")
    for i in range(nirr):
        for j in range(i, nirr):
            s = sum(
                sz * g.char_table[i][k] * g.char_table[j][k]
                for k, sz in enumerate(sizes)
            )
            if s != (g.order if i == j else 0):
                raise AssertionError(
                    f"character table orthogonality fails at rows {i},{j}"
                )
    for k in range(len(g.classes)):
        for l in range(k, len(g.classes)):
            s = sum(row[k] * row[l] for row in g.char_table)
            want = g.order // sizes[k] if k == l else 0
            if s != want:
                raise AssertionError(
                    f"character table orthogonality fails at columns {k},{l}"
                )
    rank = g.type.rank
    if g.refl_charpoly[ident] != IntPoly((1, -1)) ** rank:
        raise AssertionError("identity charpoly is not (1-q)^rank")


def _find_reflection_irrep(g: WeylGroupData) -> int:
    # trace of w on V is -[q^1] det(1 - q w)
    target = tuple(-p[1] for p in g.refl_charpoly)
    for i, row in enumerate(g.char_table):
        if row == target:
            return i
    raise AssertionError("reflection character not found in the table")


def refl_charpoly(g: WeylGroupData, cls: int) -> IntPoly:
    return g.refl_charpoly[cls]


def minus_one_elliptic_classes(g: WeylGroupData) -> set:
    """Classes with det_V(1 + w) != 0."""
    return {i for i, p in enumerate(g.refl_charpoly) if p.eval(-1) != 0}


def elliptic_classes(g: WeylGroupData) -> set:
    """Classes with det_V(1 - w) != 0."""
    return {i for i, p in enumerate(g.refl_charpoly) if p.eval(1) != 0}


def delta_twisted_classes(g: WeylGroupData):
    """Orbits of w -> u w delta(u)^{-1}; returns (rep, size, is_elliptic).

    Ellipticity is det_V(1 - w delta) != 0, computed as det_V(1 + w w0).
    """
    t = g.type
    mul, inv = _mul(t), _inv(t)
    gens = simple_generators(t)
    gen_data = [(u, inv(g.delta_element(u))) for u in gens]
    seen = set()
    out = []
    for e in all_elements(t):
        if e in seen:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for u, dui in gen_data:
                    c = mul(u, mul(w, dui))
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        seen |= orbit
        rep = min(orbit)
        ww0 = mul(rep, g.w0)
        if t.family == "A":
            p = charpoly_of_label(t, perm_cycle_type(ww0))
        elif t.family == "G2":
            p = charpoly_of_label(t, g2_class_name(ww0))
        else:
            p = charpoly_of_label(t, signed_cycle_type(ww0))
        out.append((rep, len(orbit), p.eval(-1) != 0))
    return out


def delta_elliptic_count(g: WeylGroupData) -> int:
    return sum(1 for _, _, e in delta_twisted_classes(g) if e)


# ---------------------------------------------------------------------------
# reflection representation: exact descent for reduced words, and unit simple
# roots in an orthonormal realization (used by the pin construction)


def _ambient_simple_roots(t: WeylType):
    """Simple roots as integer vectors in the standard ambient coordinates."""
    if t.family == "A":
        n = t.rank + 1
        return [
            tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n))
            for i in range(t.rank)
        ]
    n = t.rank
    roots = [
        tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n))
        for i in range(n - 1)
    ]
    if t.family in ("B", "C"):
        roots.append(tuple(1 if k == n - 1 else 0 for k in range(n)))
    else:
        roots.append(tuple(1 if k >= n - 2 else 0 for k in range(n)))
    return roots


def _act_ambient(t: WeylType, w, vec):
    if t.family == "A":
        out = [0] * len(vec)
        for j, c in enumerate(vec):
            out[w[j]] += c
        return tuple(out)
    out = [0] * len(vec)
    for j, c in enumerate(vec):
        img = w[j]
        if img > 0:
            out[img - 1] += c
        else:
            out[-img - 1] -= c
    return tuple(out)


@lru_cache(maxsize=None)
def _g2_words():
    words = {0: ()}
    frontier = [0]
    gens = simple_generators(WeylType("G2", 2))
    while frontier:
        nxt = []
        for w in frontier:
            for i, s in enumerate(gens):
                v = g2_mul(w, s)
                if v not in words:
                    words[v] = words[w] + (i,)
                    nxt.append(v)
        frontier = nxt
    return words


def reduced_word(g: WeylGroupData, w) -> tuple:
    """Indices i1..ik of simple generators with w = s_{i1} ... s_{ik}."""
    t = g.type
    if t.family == "G2":
        return _g2_words()[w]
    roots = _ambient_simple_roots(t)
    gens = simple_generators(t)
    mul = _mul(t)
    word = []
    ident = identity_element(t)
    cur = w
    while cur != ident:
        for i, alpha in enumerate(roots):
            img = _act_ambient(t, cur, alpha)
            neg = next(c for c in img if c)
            if neg < 0:
                word.append(i)
                cur = mul(cur, gens[i])
                break
        else:  # pragma: no cover - would mean a non-identity with no descent
            raise AssertionError("descent not found")
    word.reverse()
    return tuple(word)


def braid_order(g: WeylGroupData, i: int, j: int) -> int:
    """Order of s_i s_j in W."""
    gens = simple_generators(g.type)
    mul = _mul(g.type)
    prod = mul(gens[i], gens[j])
    ident = identity_element(g.type)
    cur, m = prod, 1
    while cur != ident:
        cur = mul(cur, prod)
        m += 1
    return m


def unit_simple_roots(g: WeylGroupData):
    """Unit simple-root vectors in an orthonormal basis of V (float)."""
    import numpy as np

    t = g.type
    if t.family == "G2":
        return [
            np.array([1.0, 0.0]),
            np.array([-(3**0.5) / 2, 0.5]),
        ]
    roots = [np.array(r, dtype=float) for r in _ambient_simple_roots(t)]
    if t.family == "A":
        n = t.rank + 1
        # orthonormal basis of the sum-zero hyperplane
        basis = []
        for k in range(1, n):
            v = np.array([1.0] * k + [-float(k)] + [0.0] * (n - k - 1))
            basis.append(v / np.linalg.norm(v))
        q = np.stack(basis, axis=1)  # n x (n-1)
        roots = [q.T @ r for r in roots]
    return [r / np.linalg.norm(r) for r in roots]
