"""Twisted semigroup algebras.

An algebra element is a finite formal sum of semigroup elements with
Q[delta] coefficients; the product of basis elements x, y is
alpha(x, y) (xy) for a twisting alpha satisfying the cocycle identity
alpha(x,y) alpha(xy,z) = alpha(x,yz) alpha(y,z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadParameter, SupportOutOfDomain
from .polyring import DeltaPoly
from .semigroups import FiniteSemigroup


class TwistingMap:
    """A twisting alpha: S x S -> Q[delta].

    Stored either as an integer exponent table (alpha = delta**m, possibly
    specialized at a rational delta) or as an explicit polynomial grid.
    """

    def __init__(self, semigroup: FiniteSemigroup, m_table=None, grid=None, value=None):
        self.semigroup = semigroup
        if (m_table is None) == (grid is None):
            raise BadParameter("provide exactly one of m_table or grid")
        if m_table is not None:
            m_table = np.asarray(m_table)
            if m_table.shape != (semigroup.size, semigroup.size):
                raise BadParameter("m-table shape mismatch")
            if m_table.min() < 0:
                raise BadParameter("negative twist exponent")
            m_table.setflags(write=False)
        else:
            if len(grid) != semigroup.size or any(len(r) != semigroup.size for r in grid):
                raise BadParameter("twisting grid shape mismatch")
            grid = tuple(tuple(r) for r in grid)
        self.m_table = m_table
        self.grid = grid
        self.value = None if value is None else Fraction(value)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_m_table(semigroup, m_table) -> "TwistingMap":
        return TwistingMap(semigroup, m_table=m_table)

    @staticmethod
    def trivial(semigroup) -> "TwistingMap":
        return TwistingMap(
            semigroup, m_table=np.zeros((semigroup.size, semigroup.size), dtype=np.int16)
        )

    @staticmethod
    def constant(semigroup, poly: DeltaPoly) -> "TwistingMap":
        n = semigroup.size
        return TwistingMap(semigroup, grid=[[poly] * n for _ in range(n)])

    @staticmethod
    def from_grid(semigroup, grid) -> "TwistingMap":
        return TwistingMap(semigroup, grid=grid)

    def at(self, value) -> "TwistingMap":
        """Specialize delta to a rational value."""
        value = Fraction(value)
        if self.m_table is not None:
            return TwistingMap(self.semigroup, m_table=self.m_table, value=value)
        grid = [[DeltaPoly.const(p.eval(value)) for p in row] for row in self.grid]
        return TwistingMap(self.semigroup, grid=grid)

    # -- evaluation -------------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        """True iff some twist value genuinely involves delta."""
        if self.m_table is not None:
            return self.value is None and bool(self.m_table.max() > 0)
        return any(p.degree > 0 for row in self.grid for p in row)

    def alpha(self, x: int, y: int) -> DeltaPoly:
        if self.m_table is not None:
            m = int(self.m_table[x, y])
            if self.value is None:
                return DeltaPoly.delta_power(m)
            return DeltaPoly.const(self.value**m)
        return self.grid[x][y]


@dataclass
class Report:
    """Outcome of a validation scan."""

    name: str
    ok: bool
    witness: object = None
    info: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_twisting(s: FiniteSemigroup, twisting: TwistingMap) -> Report:
    """Check the cocycle identity on every triple."""
    T = s.table
    n = s.size
    if twisting.m_table is not None and twisting.value is None:
        M = twisting.m_table.astype(np.int64)
        for x in range(n):
            lhs = M[x, :][:, None] + M[T[x, :], :]
            rhs = M[x, :][T] + M
            if not np.array_equal(lhs, rhs):
                y, z = map(int, np.argwhere(lhs != rhs)[0])
                return Report("cocycle", False, witness=(x, y, z))
        return Report("cocycle", True)
    for x in range(n):
        for y in range(n):
            xy = int(T[x, y])
            a_xy = twisting.alpha(x, y)
            for z in range(n):
                lhs = a_xy * twisting.alpha(xy, z)
                rhs = twisting.alpha(x, int(T[y, z])) * twisting.alpha(y, z)
                if lhs != rhs:
                    return Report("cocycle", False, witness=(x, y, z))
    return Report("cocycle", True)


def validate_star_twist(s: FiniteSemigroup, twisting: TwistingMap, star) -> Report:
    """Check alpha(x, y) = alpha(y*, x*) on every pair."""
    star = np.asarray(star, dtype=np.int32)
    if twisting.m_table is not None and twisting.value is None:
        M = twisting.m_table
        if np.array_equal(M, M[np.ix_(star, star)].T):
            return Report("star-twist", True)
        x, y = map(int, np.argwhere(M != M[np.ix_(star, star)].T)[0])
        return Report("star-twist", False, witness=(x, y))
    for x in range(s.size):
        for y in range(s.size):
            if twisting.alpha(x, y) != twisting.alpha(int(star[y]), int(star[x])):
                return Report("star-twist", False, witness=(x, y))
    return Report("star-twist", True)


class AlgebraElement:
    """A finite formal Q[delta]-combination of semigroup elements."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, DeltaPoly] | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero:
                    clean[int(k)] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement()

    @staticmethod
    def basis(i: int, coeff: DeltaPoly | None = None) -> "AlgebraElement":
        return AlgebraElement({i: coeff if coeff is not None else DeltaPoly.one()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset[int]:
        return frozenset(self.terms)

    def coeff(self, i: int) -> DeltaPoly:
        return self.terms.get(i, DeltaPoly.zero())

    def sorted_terms(self) -> list[tuple[int, DeltaPoly]]:
        return sorted(self.terms.items())

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                out[k] = out[k] + v
            else:
                out[k] = v
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor) -> "AlgebraElement":
        if isinstance(factor, (int, Fraction)):
            factor = DeltaPoly.const(factor)
        return AlgebraElement({k: v * factor for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.sorted_terms()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "AlgebraElement(0)"
        body = " + ".join(f"({v})*[{k}]" for k, v in self.sorted_terms())
        return f"AlgebraElement({body})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"elem": k, "coeff": v.to_json()} for k, v in self.sorted_terms()
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "AlgebraElement":
        return AlgebraElement(
            {t["elem"]: DeltaPoly.from_json(t["coeff"]) for t in data["terms"]}
        )


def alg_mul(a: AlgebraElement, b: AlgebraElement, twisting: TwistingMap) -> AlgebraElement:
    """Bilinear extension of x . y = alpha(x, y) (xy)."""
    T = twisting.semigroup.table
    out: dict[int, DeltaPoly] = {}
    for x, ca in a.terms.items():
        for y, cb in b.terms.items():
            z = int(T[x, y])
            c = ca * cb * twisting.alpha(x, y)
            if z in out:
                out[z] = out[z] + c
            else:
                out[z] = c
    return AlgebraElement(out)


def alg_star(a: AlgebraElement, star) -> AlgebraElement:
    return AlgebraElement({int(star[k]): v for k, v in a.terms.items()})


class TwistedAlgebra:
    """Bundles a semigroup, a twisting and an anti-involution."""

    def __init__(self, semigroup: FiniteSemigroup, twisting: TwistingMap, star=None):
        if twisting.semigroup is not semigroup:
            raise BadParameter("twisting belongs to a different semigroup")
        self.semigroup = semigroup
        self.twisting = twisting
        self.star_perm = None if star is None else np.asarray(star, dtype=np.int32)

    @property
    def dimension(self) -> int:
        return self.semigroup.size

    def one(self) -> AlgebraElement:
        if self.semigroup.identity is None:
            raise BadParameter("semigroup has no identity")
        return AlgebraElement.basis(self.semigroup.identity)

    def basis(self, i: int) -> AlgebraElement:
        return AlgebraElement.basis(i)

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return alg_mul(a, b, self.twisting)

    def star(self, a: AlgebraElement) -> AlgebraElement:
        if self.star_perm is None:
            raise BadParameter("no anti-involution attached")
        return alg_star(a, self.star_perm)

    def at(self, value) -> "TwistedAlgebra":
        return TwistedAlgebra(self.semigroup, self.twisting.at(value), self.star_perm)


class BetaMap:
    """A unit-valued partial twisting on L_D x L_D* for one D-class."""

    def __init__(self, domain_left, domain_right, mode: str, twisting=None, table=None):
        self.domain_left = frozenset(int(i) for i in domain_left)
        self.domain_right = frozenset(int(i) for i in domain_right)
        if mode not in ("one", "alpha", "table"):
            raise BadParameter(f"unknown beta mode {mode!r}")
        self.mode = mode
        self.twisting = twisting
        self.table = table

    @staticmethod
    def ones(domain_left, domain_right) -> "BetaMap":
        return BetaMap(domain_left, domain_right, "one")

    @staticmethod
    def alpha_restricted(domain_left, domain_right, twisting: TwistingMap) -> "BetaMap":
        return BetaMap(domain_left, domain_right, "alpha", twisting=twisting)

    @staticmethod
    def from_table(domain_left, domain_right, table: dict) -> "BetaMap":
        return BetaMap(domain_left, domain_right, "table", table=dict(table))

    def defined(self, x: int, y: int) -> bool:
        return x in self.domain_left and y in self.domain_right

    def value(self, x: int, y: int) -> DeltaPoly:
        if not self.defined(x, y):
            raise SupportOutOfDomain(f"beta undefined at ({x}, {y})")
        if self.mode == "one":
            return DeltaPoly.one()
        if self.mode == "alpha":
            return self.twisting.alpha(x, y)
        return self.table[(x, y)]


def circ(a: AlgebraElement, b: AlgebraElement, beta: BetaMap, semigroup: FiniteSemigroup) -> AlgebraElement:
    """Bilinear extension of the partial product x o y = beta(x, y) (xy)."""
    for x in a.support():
        if x not in beta.domain_left:
            raise SupportOutOfDomain(f"element {x} outside the left domain")
    for y in b.support():
        if y not in beta.domain_right:
            raise SupportOutOfDomain(f"element {y} outside the right domain")
    T = semigroup.table
    out: dict[int, DeltaPoly] = {}
    for x, ca in a.terms.items():
        for y, cb in b.terms.items():
            z = int(T[x, y])
            c = ca * cb * beta.value(x, y)
            out[z] = out[z] + c if z in out else c
    return AlgebraElement(out)


def validate_beta(frame, beta: BetaMap, twisting: TwistingMap) -> Report:
    """Validate a beta map against its defining identities.

    Checks unit-valuedness; the cocycle identity and the mixed identity
    with alpha wherever all occurring values are defined; star-symmetry;
    the derived two-sided identity; and the constant-ratio consequence
    alpha(x, z) = alpha(D) beta(x, z) on the whole domain.
    """
    sg = twisting.semigroup
    T = sg.table
    star = frame.star_perm
    left = sorted(beta.domain_left)
    right = sorted(beta.domain_right)
    mid = sorted(beta.domain_left & beta.domain_right)

    for x in left:
        for y in right:
            if not beta.value(x, y).is_unit():
                return Report("beta-units", False, witness=(x, y))

    # cocycle on beta alone: x in L_D, y in both domains, z in L_D*
    for x in left:
        for y in mid:
            xy = int(T[x, y])
            if xy not in beta.domain_left:
                continue
            bxy = beta.value(x, y)
            for z in right:
                yz = int(T[y, z])
                if yz not in beta.domain_right:
                    continue
                lhs = bxy * beta.value(xy, z)
                rhs = beta.value(x, yz) * beta.value(y, z)
                if lhs != rhs:
                    return Report("beta-cocycle", False, witness=(x, y, z))

    # mixed identity: alpha(x,y) beta(xy,z) = alpha(x,yz) beta(y,z)
    for y in left:
        for z in right:
            byz = beta.value(y, z)
            yz = int(T[y, z])
            for x in range(sg.size):
                xy = int(T[x, y])
                if xy not in beta.domain_left:
                    continue
                lhs = twisting.alpha(x, y) * beta.value(xy, z)
                rhs = twisting.alpha(x, yz) * byz
                if lhs != rhs:
                    return Report("beta-alpha", False, witness=(x, y, z))

    # star symmetry
    for x in left:
        for y in right:
            if beta.value(x, y) != beta.value(int(star[y]), int(star[x])):
                return Report("beta-star", False, witness=(x, y))

    # derived identity: beta(x,yz) alpha(y,z) = beta(x,y) alpha(xy,z)
    for x in left:
        for y in right:
            bxy = beta.value(x, y)
            xy = int(T[x, y])
            for z in range(sg.size):
                yz = int(T[y, z])
                if yz not in beta.domain_right:
                    continue
                lhs = beta.value(x, yz) * twisting.alpha(y, z)
                rhs = bxy * twisting.alpha(xy, z)
                if lhs != rhs:
                    return Report("beta-derived", False, witness=(x, y, z))

    # constant ratio alpha(x, z) = alpha(D) beta(x, z)
    one_d = frame.one_index
    alpha_d = twisting.alpha(one_d, one_d).exact_div(beta.value(one_d, one_d))
    for x in left:
        for z in right:
            if twisting.alpha(x, z) != alpha_d * beta.value(x, z):
                return Report("beta-ratio", False, witness=(x, z))
    return Report("beta", True, info={"alpha_D": alpha_d})
