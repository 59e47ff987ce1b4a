"""Exact arithmetic over Z[q], Q(q), and matrices of rational functions.

Everything here is immutable and normalized on construction, so equal values
compare equal componentwise and can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Dense polynomial in q with arbitrary-precision integer coefficients.

    Coefficients are stored ascending; the zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly((c,))

    @staticmethod
    def monomial(c: int, k: int) -> "IntPoly":
        return IntPoly((0,) * k + (c,))

    # -- structure ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divexact(self, other: "IntPoly") -> "IntPoly":
        """Exact division; raises ValueError on a nonzero remainder."""
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"inexact polynomial division: remainder {r}")
        return q

    def divmod(self, other: "IntPoly"):
        """Division within Z[q]: quotient and remainder, where a nonzero
        remainder (possibly the partially reduced numerator) means the exact
        quotient does not lie in Z[q]."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.coeffs)
        den = other.coeffs
        dl = den[-1]
        out = [0] * max(0, len(num) - len(den) + 1)
        for k in range(len(out) - 1, -1, -1):
            c = num[k + len(den) - 1]
            if c % dl:
                # quotient leaves Z[q]; signal through the remainder
                return IntPoly(out), IntPoly(num)
            f = c // dl
            out[k] = f
            if f:
                for j, dj in enumerate(den):
                    num[k + j] -= f * dj
        return IntPoly(out), IntPoly(num)

    def divisible_int(self, n: int) -> bool:
        return all(c % n == 0 for c in self.coeffs)

    def divexact_int(self, n: int) -> "IntPoly":
        if not self.divisible_int(n):
            raise ValueError(f"coefficients not divisible by {n}: {self}")
        return IntPoly(tuple(c // n for c in self.coeffs))

    # -- substitutions ---------------------------------------------------
    def negate_q(self) -> "IntPoly":
        """f(q) -> f(-q)."""
        return IntPoly(tuple(-c if i % 2 else c for i, c in enumerate(self.coeffs)))

    def reverse(self, n: int) -> "IntPoly":
        """q^n * f(1/q); requires n >= deg f."""
        if n < self.degree:
            raise ValueError(f"reverse({n}) needs n >= deg = {self.degree}")
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return IntPoly(out)

    def eval(self, q0: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def eval_frac(self, q0: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    # -- io ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "IntPoly":
        return IntPoly(tuple(int(c) for c in obj["coeffs"]))

    def __repr__(self):
        return f"IntPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                t = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                t = f"{mag}q" if i == 1 else f"{mag}q^{i}"
            terms.append(("-" if c < 0 else "+", t))
        sign0, t0 = terms[0]
        out = ("-" if sign0 == "-" else "") + t0
        for sign, t in terms[1:]:
            out += sign + t
        return out


ZERO = IntPoly()
ONE = IntPoly((1,))
Q = IntPoly((0, 1))


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    """Dispatch form of +, -, * used by the CLI."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(f: IntPoly, mode: str, arg: int | None = None):
    """negate_q | reverse(N) | eval(q0), as a single entry point."""
    if mode == "negate_q":
        return f.negate_q()
    if mode == "reverse":
        if arg is None:
            raise ValueError("reverse needs a degree bound")
        return f.reverse(arg)
    if mode == "eval":
        if arg is None:
            raise ValueError("eval needs an integer argument")
        return f.eval(arg)
    raise ValueError(f"unknown substitution {mode!r}")


# ---------------------------------------------------------------------------
# rational coefficients


def _fr_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _fr_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _fr_trim(out)


def _fr_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _fr_trim(out)


def _fr_neg(a):
    return tuple(-c for c in a)


def _fr_divmod(a, b):
    num = list(a)
    lead = b[-1]
    out = [Fraction(0)] * max(0, len(num) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        f = num[k + len(b) - 1] / lead
        out[k] = f
        if f:
            for j, bj in enumerate(b):
                num[k + j] -= f * bj
    return _fr_trim(out), _fr_trim(num)


def _to_int_primitive(a):
    """Clear denominators and content; returns (int coeff tuple, scale)."""
    from math import gcd, lcm

    if not a:
        return (), Fraction(1)
    den = 1
    for c in a:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return tuple(c // g for c in ints), Fraction(g, den)


def _int_gcd_poly(a, b):
    """gcd of integer coefficient tuples via a primitive PRS; result primitive."""
    from math import gcd

    def content(u):
        g = 0
        for c in u:
            g = gcd(g, c)
        return g or 1

    def primitive(u):
        g = content(u)
        return tuple(c // g for c in u)

    a, b = _trim(a), _trim(b)
    if not a:
        return primitive(b) if b else ()
    if not b:
        return primitive(a)
    if len(a) < len(b):
        a, b = b, a
    a, b = primitive(a), primitive(b)
    while True:
        # pseudo-remainder: scale by the leading coefficient at every step so
        # everything stays integral, then strip content
        r = list(a)
        lc = b[-1]
        while r and len(r) >= len(b):
            top = r[-1]
            shift = len(r) - len(b)
            r = [lc * c for c in r]
            for j, bj in enumerate(b):
                r[shift + j] -= top * bj
            r = list(_trim(r))
        if not r:
            return b
        a, b = b, primitive(tuple(r))


class RatFun:
    """Reduced rational function num/den with rational coefficients.

    Canonical form: gcd(num, den) = 1 and den monic, so equal fractions are
    componentwise equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, IntPoly):
            num = tuple(Fraction(c) for c in num.coeffs)
        if isinstance(den, IntPoly):
            den = tuple(Fraction(c) for c in den.coeffs)
        if den is None:
            den = (Fraction(1),)
        num = _fr_trim(Fraction(c) for c in num)
        den = _fr_trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def _reduce(num, den):
        if not num:
            return (), (Fraction(1),)
        ni, ns = _to_int_primitive(num)
        di, ds = _to_int_primitive(den)
        g = _int_gcd_poly(ni, di)
        if len(g) > 1:
            gp = IntPoly(g)
            ni = IntPoly(ni).divexact(gp).coeffs
            di = IntPoly(di).divexact(gp).coeffs
        scale = ns / ds / di[-1]
        num = tuple(Fraction(c) * scale for c in ni)
        den = tuple(Fraction(c, di[-1]) for c in di)
        return num, den

    @staticmethod
    def from_int(c) -> "RatFun":
        return RatFun((Fraction(c),))

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == (Fraction(1),)

    def as_intpoly(self) -> IntPoly:
        """Convert to IntPoly; raises if not an integer polynomial."""
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        out = []
        for c in self.num:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient in {self}")
            out.append(c.numerator)
        return IntPoly(out)

    def __eq__(self, other):
        return (
            isinstance(other, RatFun)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatFun(
            _fr_add(_fr_mul(self.num, other.den), _fr_mul(other.num, self.den)),
            _fr_mul(self.den, other.den),
        )

    def __neg__(self):
        return RatFun(_fr_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFun(_fr_mul(self.num, other.num), _fr_mul(self.den, other.den))

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(_fr_mul(self.num, other.den), _fr_mul(self.den, other.num))

    def to_json(self):
        return {
            "num": {"coeffs": [str(c) for c in self.num]},
            "den": {"coeffs": [str(c) for c in self.den]},
        }

    @staticmethod
    def from_json(obj):
        return RatFun(
            tuple(Fraction(c) for c in obj["num"]["coeffs"]),
            tuple(Fraction(c) for c in obj["den"]["coeffs"]),
        )

    def __repr__(self):
        def fmt(cs):
            return "+".join(f"{c}q^{i}" if i else str(c) for i, c in enumerate(cs)) or "0"

        if self.is_polynomial():
            return f"RatFun({fmt(self.num)})"
        return f"RatFun(({fmt(self.num)})/({fmt(self.den)}))"


RF_ZERO = RatFun((), (Fraction(1),))
RF_ONE = RatFun((Fraction(1),))


class PolyMatrix:
    """Rectangular matrix over Q(q)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        ent = []
        for row in entries:
            out = []
            for e in row:
                if isinstance(e, RatFun):
                    out.append(e)
                elif isinstance(e, IntPoly):
                    out.append(RatFun(e))
                elif isinstance(e, int):
                    out.append(RatFun.from_int(e))
                else:
                    raise TypeError(f"bad matrix entry {e!r}")
            ent.append(tuple(out))
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", tuple(ent))
        object.__setattr__(self, "rows", len(ent))
        object.__setattr__(self, "cols", len(ent[0]) if ent else 0)

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix(
            [[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)]
        )

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RF_ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def inverse(self) -> "PolyMatrix":
        """Exact inverse by Gauss-Jordan elimination; verified by multiplication."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        b = [list(row) for row in PolyMatrix.identity(n).entries]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not a[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrixError(self._det_hint())
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv_p = RF_ONE / a[col][col]
            a[col] = [e * inv_p for e in a[col]]
            b[col] = [e * inv_p for e in b[col]]
            for r in range(n):
                if r == col or a[r][col].is_zero():
                    continue
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        inv = PolyMatrix(b)
        if not (self * inv - PolyMatrix.identity(n)).is_zero():
            raise ArithmeticError("inverse verification failed")
        return inv

    def determinant(self) -> RatFun:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        det = RF_ONE
        sign = 1
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not a[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                return RF_ZERO
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            det = det * a[col][col]
            inv_p = RF_ONE / a[col][col]
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv_p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        if sign < 0:
            det = -det
        return det

    def _det_hint(self):
        try:
            return self.determinant()
        except Exception:  # pragma: no cover - determinant itself failed
            return None

    def to_json(self):
        return [[e.to_json() for e in row] for row in self.entries]

    @staticmethod
    def from_json(obj):
        return PolyMatrix([[RatFun.from_json(e) for e in row] for row in obj])


class SingularMatrixError(ValueError):
    """Raised on inversion of a singular matrix; carries the determinant."""

    def __init__(self, det):
        self.determinant = det
        super().__init__(f"singular matrix (det = {det!r})")


def matrix_ops(m: PolyMatrix, op: str, other: PolyMatrix | None = None):
    """Dispatch form of matrix mul/inverse/transpose used by the CLI."""
    if op == "mul":
        if other is None:
            raise ValueError("mul needs a second matrix")
        return m * other
    if op == "inverse":
        return m.inverse()
    if op == "transpose":
        return m.transpose()
    raise ValueError(f"unknown op {op!r}")
