"""Exact arithmetic over the rationals and the polynomial ring Q[delta].

Rationals are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  Polynomials in the loop parameter delta are immutable
coefficient tuples, index i holding the coefficient of delta**i; the zero
polynomial is the empty tuple.  Determinants of polynomial matrices are
computed fraction-free so no intermediate ever leaves Q[delta].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import NonSquare

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse a decimal-free "p/q" (or plain integer) string."""
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(q)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class DeltaPoly:
    """A univariate polynomial over Q in the parameter delta."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("DeltaPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "DeltaPoly":
        return _ZERO

    @staticmethod
    def one() -> "DeltaPoly":
        return _ONE

    @staticmethod
    def const(value) -> "DeltaPoly":
        return DeltaPoly((_as_fraction(value),))

    @staticmethod
    def delta_power(k: int) -> "DeltaPoly":
        return _delta_power(k)

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        """True iff this is a nonzero constant (a unit of Q[delta])."""
        return len(self.coeffs) == 1

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (including zero)."""
        if len(self.coeffs) > 1:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "DeltaPoly") -> "DeltaPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DeltaPoly(out)

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "DeltaPoly") -> "DeltaPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            if other == 0:
                return _ZERO
            return DeltaPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DeltaPoly":
        if k < 0:
            raise ValueError("negative power")
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "DeltaPoly") -> "DeltaPoly":
        """Exact quotient in Q[delta]; raises if the division leaves a remainder."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return _ZERO
        num = list(self.coeffs)
        den = other.coeffs
        dd = len(den) - 1
        if len(num) - 1 < dd:
            raise ValueError("inexact polynomial division")
        lead = den[-1]
        q = [Fraction(0)] * (len(num) - dd)
        for i in range(len(q) - 1, -1, -1):
            c = num[i + dd] / lead
            q[i] = c
            if c:
                for j, dj in enumerate(den):
                    num[i + j] -= c * dj
        if any(num[:dd]):
            raise ValueError("inexact polynomial division")
        return DeltaPoly(q)

    def eval(self, v: Fraction) -> Fraction:
        """Horner evaluation at a rational point."""
        v = _as_fraction(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, DeltaPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DeltaPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("delta" if c == 1 else f"{c}*delta")
            else:
                parts.append(f"delta^{i}" if c == 1 else f"{c}*delta^{i}")
        return " + ".join(parts)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> "DeltaPoly":
        return DeltaPoly(tuple(parse_rational(c) for c in data["coeffs"]))


_ZERO = DeltaPoly(())
_ONE = DeltaPoly((Fraction(1),))


@lru_cache(maxsize=None)
def _delta_power(k: int) -> DeltaPoly:
    if k < 0:
        raise ValueError("delta powers in Q[delta] have nonnegative exponent")
    return DeltaPoly((Fraction(0),) * k + (Fraction(1),))


def poly_mul(a: DeltaPoly, b: DeltaPoly) -> DeltaPoly:
    return a * b


def poly_eval(p: DeltaPoly, v) -> Fraction:
    return p.eval(v)


def is_unit(p: DeltaPoly) -> bool:
    return p.is_unit()


class PolyMatrix:
    """A rows x cols matrix with DeltaPoly entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @staticmethod
    def from_rows(rows_of_entries) -> "PolyMatrix":
        rows = list(rows_of_entries)
        r = len(rows)
        c = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return PolyMatrix(r, c, flat)

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix(
            n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n))
        )

    @staticmethod
    def block_diagonal(block: "PolyMatrix", copies: int) -> "PolyMatrix":
        n, m = block.rows, block.cols
        size_r, size_c = n * copies, m * copies
        grid = [[_ZERO] * size_c for _ in range(size_r)]
        for b in range(copies):
            for i in range(n):
                for j in range(m):
                    grid[b * n + i][b * m + j] = block.entry(i, j)
        return PolyMatrix.from_rows(grid)

    def entry(self, i: int, j: int) -> DeltaPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(self.entry(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"PolyMatrix[{body}]"

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = _ZERO
                for k in range(self.cols):
                    a = ri[k]
                    if not a.is_zero:
                        b = other.entry(k, j)
                        if not b.is_zero:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, out)

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(e * factor for e in self.entries))

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(fn(e) for e in self.entries))

    def eval_at(self, v) -> "PolyMatrix":
        v = _as_fraction(v)
        return self.map_entries(lambda e: DeltaPoly.const(e.eval(v)))

    def det(self) -> DeltaPoly:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise NonSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows
        if n == 0:
            return _ONE
        a = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = _ONE
        for k in range(n - 1):
            if a[k][k].is_zero:
                for r in range(k + 1, n):
                    if not a[r][k].is_zero:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return _ZERO
            pivot = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                for j in range(k + 1, n):
                    num = pivot * a[i][j] - aik * a[k][j]
                    a[i][j] = num.exact_div(prev)
                a[i][k] = _ZERO
            prev = pivot
        result = a[n - 1][n - 1]
        return result if sign == 1 else -result

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [e.to_json() for e in self.entries],
        }

    @staticmethod
    def from_json(data: dict) -> "PolyMatrix":
        return PolyMatrix(
            data["rows"],
            data["cols"],
            tuple(DeltaPoly.from_json(e) for e in data["entries"]),
        )


def det(m: PolyMatrix) -> DeltaPoly:
    return m.det()
