"""Diagram monoids: partition, Brauer and Temperley-Lieb.

Elements are set partitions of the 2n points {1..n} u {1'..n'}; a dashed
point i' is encoded as the negative label -i.  Composition stacks two
diagrams, joins them through the shared middle row, and counts the
components that stay inside it (the exponent of the delta twisting).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .errors import BadParameter, DegreeMismatch, RankMismatch, RankTooLarge
from .semigroups import FiniteSemigroup

KINDS = ("partition", "brauer", "tl")

# default size guards for full enumeration (override with allow_large)
MAX_RANK = {"partition": 4, "brauer": 5, "tl": 7}


def _label_key(v: int) -> tuple[int, int]:
    # undashed points before dashed, each group by magnitude
    return (0, v) if v > 0 else (1, -v)


class SetPartition:
    """A partition of {1..n, -1..-n} into blocks, in canonical form.

    Blocks are internally sorted by label key and listed by the key of
    their first label, so equal partitions compare equal structurally.
    """

    __slots__ = ("n", "blocks", "_vec")

    def __init__(self, n: int, blocks):
        canon = []
        seen = set()
        for block in blocks:
            labels = sorted(set(block), key=_label_key)
            if not labels:
                raise BadParameter("empty block")
            canon.append(tuple(labels))
            seen.update(labels)
        expected = set(range(1, n + 1)) | set(range(-n, 0))
        if seen != expected or sum(len(b) for b in canon) != 2 * n:
            raise BadParameter(f"blocks do not partition the 2*{n} points exactly")
        canon.sort(key=lambda b: _label_key(b[0]))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(canon))
        object.__setattr__(self, "_vec", None)

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    @staticmethod
    def identity(n: int) -> "SetPartition":
        return SetPartition(n, [(i, -i) for i in range(1, n + 1)])

    @staticmethod
    def from_vector(n: int, vec: bytes) -> "SetPartition":
        groups: dict[int, list[int]] = {}
        for p, blk in enumerate(vec):
            label = p + 1 if p < n else -(p - n + 1)
            groups.setdefault(blk, []).append(label)
        return SetPartition(n, groups.values())

    def vector(self) -> bytes:
        """Normalized block-id vector (the kernel encoding)."""
        if self._vec is None:
            ids: dict[int, int] = {}
            out = bytearray(2 * self.n)
            pos = {}
            for bi, block in enumerate(self.blocks):
                for label in block:
                    pos[label] = bi
            for p in range(2 * self.n):
                label = p + 1 if p < self.n else -(p - self.n + 1)
                out[p] = ids.setdefault(pos[label], len(ids))
            object.__setattr__(self, "_vec", bytes(out))
        return self._vec

    def star(self) -> "SetPartition":
        """Flip top and bottom rows (negate every label)."""
        return SetPartition(self.n, [tuple(-v for v in b) for b in self.blocks])

    def is_matching(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def block_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(b) for b in self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __lt__(self, other: "SetPartition") -> bool:
        return self.vector() < other.vector()

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"SetPartition({self.n}, {{{inner}}})"

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @staticmethod
    def from_json(data: dict) -> "SetPartition":
        return SetPartition(data["n"], data["blocks"])


def partition_mul(x: SetPartition, y: SetPartition) -> tuple[SetPartition, int]:
    """Compose two diagrams; also return the middle-component count m(x, y)."""
    if x.n != y.n:
        raise RankMismatch(f"ranks differ: {x.n} vs {y.n}")
    vec, m = kernels.compose(x.vector(), y.vector(), x.n)
    return SetPartition.from_vector(x.n, vec), m


def star(x: SetPartition) -> SetPartition:
    return x.star()


def is_planar(x: SetPartition) -> bool:
    """Non-crossing test for perfect matchings.

    Walks the boundary word 1..n, n'..1' keeping a stack of open arcs;
    the matching is planar iff every arc closes against the stack top.
    """
    if not x.is_matching():
        raise BadParameter("planarity test expects a perfect matching")
    n = x.n
    pos = {}
    for bi, block in enumerate(x.blocks):
        for label in block:
            pos[label] = bi
    word = [pos[i] for i in range(1, n + 1)] + [pos[-i] for i in range(n, 0, -1)]
    stack: list[int] = []
    for blk in word:
        if stack and stack[-1] == blk:
            stack.pop()
        else:
            stack.append(blk)
    return not stack


# ---------------------------------------------------------------------------
# enumeration


def _restricted_growth_vectors(length: int):
    vec = bytearray(length)

    def rec(i: int, top: int):
        if i == length:
            yield bytes(vec)
            return
        for b in range(top + 2):
            vec[i] = b
            yield from rec(i + 1, max(top, b))

    if length == 0:
        yield b""
    else:
        vec[0] = 0
        yield from rec(1, 0)


def _matchings(points: list[int]):
    if not points:
        yield []
        return
    a = points[0]
    for idx in range(1, len(points)):
        b = points[idx]
        rest = points[1:idx] + points[idx + 1 :]
        for tail in _matchings(rest):
            yield [(a, b)] + tail


def enumerate_diagrams(kind: str, n: int, allow_large: bool = False) -> list[SetPartition]:
    """All elements of the chosen monoid at rank n, in canonical order."""
    if kind not in KINDS:
        raise BadParameter(f"unknown monoid kind: {kind!r}")
    if n < 1:
        raise BadParameter("rank must be >= 1")
    if n > MAX_RANK[kind] and not allow_large:
        raise RankTooLarge(
            f"{kind} monoid at rank {n} exceeds the default guard "
            f"({MAX_RANK[kind]}); pass allow_large (CLI: --force) to override"
        )
    if kind == "partition":
        return [SetPartition.from_vector(n, v) for v in _restricted_growth_vectors(2 * n)]
    labels = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    elems = [SetPartition(n, pairs) for pairs in _matchings(labels)]
    if kind == "tl":
        elems = [x for x in elems if is_planar(x)]
    elems.sort(key=lambda x: x.vector())
    return elems


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1*3*5*...*(2n-1)."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def bell_number(n: int) -> int:
    """Bell numbers via the triangle recurrence."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def expected_size(kind: str, n: int) -> int:
    if kind == "partition":
        return bell_number(2 * n)
    if kind == "brauer":
        return double_factorial_odd(n)
    return catalan(n)


# ---------------------------------------------------------------------------
# closed-form Green invariants


class GreenInvariants:
    """The (d, r, l) data that classify Green's relations in diagram monoids.

    d counts through-blocks; r is the top-row data (blocks inside the top
    row plus top traces of through-blocks); l is the dashed mirror.
    """

    __slots__ = ("d", "r", "l")

    def __init__(self, d, r, l):
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "l", l)

    def __setattr__(self, name, value):
        raise AttributeError("GreenInvariants is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, GreenInvariants)
            and (self.d, self.r, self.l) == (other.d, other.r, other.l)
        )

    def __hash__(self):
        return hash((self.d, self.r, self.l))

    def __repr__(self):
        return f"GreenInvariants(d={self.d}, r={self.r}, l={self.l})"


def toggle_dashes(part) -> frozenset:
    """Negate every label in a set of frozen label sets."""
    return frozenset(frozenset(-v for v in s) for s in part)


def green_invariants(kind: str, x: SetPartition) -> GreenInvariants:
    if kind == "partition":
        top_only = []
        bottom_only = []
        top_traces = []
        bottom_traces = []
        d = 0
        for block in x.blocks:
            top = frozenset(v for v in block if v > 0)
            bottom = frozenset(v for v in block if v < 0)
            if top and bottom:
                d += 1
                top_traces.append(top)
                bottom_traces.append(bottom)
            elif top:
                top_only.append(top)
            else:
                bottom_only.append(bottom)
        r = (frozenset(top_only), frozenset(top_traces))
        l = (frozenset(bottom_only), frozenset(bottom_traces))
        return GreenInvariants(d, r, l)
    if kind in ("brauer", "tl"):
        if not x.is_matching():
            raise BadParameter("not a perfect matching")
        top_pairs = []
        bottom_pairs = []
        d = 0
        for block in x.blocks:
            a, b = block
            if a > 0 and b > 0:
                top_pairs.append(frozenset(block))
            elif a < 0 and b < 0:
                bottom_pairs.append(frozenset(block))
            else:
                d += 1
        return GreenInvariants(d, frozenset(top_pairs), frozenset(bottom_pairs))
    raise BadParameter(f"unknown monoid kind: {kind!r}")


# ---------------------------------------------------------------------------
# canonical idempotents, group embeddings, L-class representatives


def canonical_idempotent(kind: str, n: int, k: int) -> SetPartition:
    """The reference idempotent of the D-class indexed by k.

    For the partition monoid the class has d = n - k; for Brauer and
    Temperley-Lieb it has d = n - 2k.
    """
    if kind == "partition":
        if not 0 <= k <= n:
            raise BadParameter(f"need 0 <= k <= n, got k={k}")
        blocks = []
        if k > 0:
            blocks.append(tuple(range(1, k + 1)))
            blocks.append(tuple(-i for i in range(1, k + 1)))
        blocks.extend((i, -i) for i in range(k + 1, n + 1))
        return SetPartition(n, blocks)
    if kind in ("brauer", "tl"):
        if not 0 <= 2 * k <= n:
            raise BadParameter(f"need 0 <= 2k <= n, got k={k}")
        blocks = [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
        blocks += [(-(2 * i - 1), -(2 * i)) for i in range(1, k + 1)]
        blocks += [(i, -i) for i in range(2 * k + 1, n + 1)]
        return SetPartition(n, blocks)
    raise BadParameter(f"unknown monoid kind: {kind!r}")


def group_degree(kind: str, n: int, k: int) -> int:
    """Degree of the symmetric group sitting inside the k-th D-class."""
    return n - k if kind == "partition" else n - 2 * k


def theta_diagram(kind: str, n: int, k: int, sigma: tuple[int, ...]) -> SetPartition:
    """Embed a permutation (0-based one-line tuple) into the group H-class.

    sigma has degree n-k (partition) or n-2k (Brauer); the image pairs
    top point off+sigma(i) with bottom point (off+i)' on top of the fixed
    blocks of the reference idempotent.
    """
    deg = group_degree(kind, n, k)
    if len(sigma) != deg:
        raise DegreeMismatch(f"permutation degree {len(sigma)} != {deg}")
    if kind == "tl" and sigma != tuple(range(deg)):
        raise BadParameter("the Temperley-Lieb group H-classes are trivial")
    if kind == "partition":
        off = k
        blocks = []
        if k > 0:
            blocks.append(tuple(range(1, k + 1)))
            blocks.append(tuple(-i for i in range(1, k + 1)))
    else:
        off = 2 * k
        blocks = [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
        blocks += [(-(2 * i - 1), -(2 * i)) for i in range(1, k + 1)]
    blocks += [(off + sigma[i] + 1, -(off + i + 1)) for i in range(deg)]
    return SetPartition(n, blocks)


def theta_inv_diagram(kind: str, n: int, k: int, x: SetPartition) -> tuple[int, ...]:
    """Recover the permutation from a group H-class diagram."""
    deg = group_degree(kind, n, k)
    off = k if kind == "partition" else 2 * k
    sigma = [None] * deg
    for block in x.blocks:
        tops = [v for v in block if v > 0]
        bottoms = [-v for v in block if v < 0]
        if len(tops) == 1 and len(bottoms) == 1 and tops[0] > off and bottoms[0] > off:
            sigma[bottoms[0] - off - 1] = tops[0] - off - 1
    if any(v is None for v in sigma):
        raise BadParameter("diagram is not in the group H-class")
    return tuple(sigma)


def matching_uL(n: int, k: int, bottom_pairs) -> SetPartition:
    """The Brauer / Temperley-Lieb L-class representative.

    Takes the top pairs {2i-1, 2i} of the reference idempotent, the given
    bottom pairs, and joins the remaining top points 2k+1..n to the free
    bottom points in increasing order.
    """
    pairs = [frozenset(p) for p in bottom_pairs]
    if len(pairs) != k or any(len(p) != 2 for p in pairs):
        raise BadParameter("expected k bottom pairs")
    used = sorted(-v for p in pairs for v in p)
    free = [j for j in range(1, n + 1) if j not in used]
    if len(free) != n - 2 * k:
        raise BadParameter("bottom pairs overlap")
    blocks = [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
    blocks += [tuple(sorted(p, key=_label_key)) for p in pairs]
    blocks += [(2 * k + i, -free[i - 1]) for i in range(1, n - 2 * k + 1)]
    return SetPartition(n, blocks)


# ---------------------------------------------------------------------------
# the full monoid


class DiagramMonoid:
    """A diagram monoid materialized with its multiplication and m-count tables."""

    def __init__(self, kind: str, n: int, elements: list[SetPartition]):
        self.kind = kind
        self.n = n
        self.elements = elements
        self.index = {x.vector(): i for i, x in enumerate(elements)}
        vectors = [x.vector() for x in elements]
        table, mtable = kernels.build_tables(vectors, n)
        self.m_table = mtable
        self.semigroup = FiniteSemigroup(table)
        self.identity_index = self.index_of(SetPartition.identity(n))
        star_perm = np.array(
            [self.index_of(x.star()) for x in elements], dtype=np.int32
        )
        self.star_perm = star_perm
        self._green = None
        self._algebra = None

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, x: SetPartition) -> int:
        try:
            return self.index[x.vector()]
        except KeyError:
            raise BadParameter(f"diagram not in {self.kind} monoid of rank {self.n}")

    def invariants(self, i: int) -> GreenInvariants:
        return green_invariants(self.kind, self.elements[i])

    def green(self):
        """Ideal-based Green data (cached)."""
        if self._green is None:
            from .semigroups import compute_green

            self._green = compute_green(self.semigroup)
        return self._green

    def algebra(self):
        """The delta-twisted semigroup algebra over Q[delta] (cached)."""
        if self._algebra is None:
            from .twisted import TwistedAlgebra, TwistingMap

            twisting = TwistingMap.from_m_table(self.semigroup, self.m_table)
            self._algebra = TwistedAlgebra(self.semigroup, twisting, self.star_perm)
        return self._algebra

    def closed_form_partitions(self):
        """Element partitions by the closed-form R / L / D invariants."""
        by_r: dict = {}
        by_l: dict = {}
        by_d: dict = {}
        for i in range(self.size):
            inv = self.invariants(i)
            by_r.setdefault(inv.r, []).append(i)
            by_l.setdefault(inv.l, []).append(i)
            by_d.setdefault(inv.d, []).append(i)
        as_sets = lambda groups: {frozenset(v) for v in groups.values()}
        return as_sets(by_r), as_sets(by_l), as_sets(by_d)


@lru_cache(maxsize=None)
def build_monoid(kind: str, n: int, allow_large: bool = False) -> DiagramMonoid:
    return DiagramMonoid(kind, n, enumerate_diagrams(kind, n, allow_large))
