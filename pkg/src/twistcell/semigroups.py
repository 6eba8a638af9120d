"""Generic finite semigroup machinery.

Semigroups are full multiplication tables.  Green's relations are computed
by closing principal ideals (with a formal identity adjoined internally
when the semigroup has none); D is the join of R and L and is checked
against the two-sided ideal relation J, which coincides with it for
finite semigroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, NotIdempotent

_FULL_ASSOC_LIMIT = 300
_SPOT_CHECK_TRIPLES = 200_000


class FiniteSemigroup:
    """A finite semigroup given by its size x size multiplication table."""

    def __init__(self, table, identity: int | None = None, check: bool = True):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise BadParameter("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise BadParameter("empty semigroup")
        if table.min() < 0 or table.max() >= n:
            raise BadParameter("table entries out of range")
        table.setflags(write=False)
        self.table = table
        self.size = n
        if check:
            self._check_associativity()
        detected = self._detect_identity()
        if identity is not None and identity != detected:
            raise BadParameter(f"claimed identity {identity} is not an identity")
        self.identity = detected

    def _check_associativity(self):
        T = self.table
        n = self.size
        if n <= _FULL_ASSOC_LIMIT:
            # (xy)z vs x(yz), chunked over x to bound memory
            for x in range(n):
                left = T[T[x, :], :]  # [y, z] -> (xy)z
                right = T[x, T]  # [y, z] -> x(yz)
                if not np.array_equal(left, right):
                    y, z = np.argwhere(left != right)[0]
                    raise BadParameter(
                        f"not associative at ({x}, {int(y)}, {int(z)})"
                    )
        else:
            rng = np.random.default_rng(0)
            xs = rng.integers(0, n, _SPOT_CHECK_TRIPLES)
            ys = rng.integers(0, n, _SPOT_CHECK_TRIPLES)
            zs = rng.integers(0, n, _SPOT_CHECK_TRIPLES)
            if not np.array_equal(T[T[xs, ys], zs], T[xs, T[ys, zs]]):
                raise BadParameter("not associative (random spot check)")

    def _detect_identity(self) -> int | None:
        rng = np.arange(self.size)
        for e in range(self.size):
            if np.array_equal(self.table[e], rng) and np.array_equal(
                self.table[:, e], rng
            ):
                return int(e)
        return None

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "table": self.table.tolist(),
            "identity": self.identity,
        }

    @staticmethod
    def from_json(data: dict) -> "FiniteSemigroup":
        return FiniteSemigroup(data["table"], identity=data.get("identity"))


@dataclass
class GroupTable:
    """A maximal subgroup: an H-class of an idempotent with its group structure."""

    parent: FiniteSemigroup
    elements: list[int]
    identity: int
    inverse: dict[int, int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, x: int, y: int) -> int:
        return self.parent.mul(x, y)


@dataclass
class GreenData:
    """Green's relation classes of a finite semigroup plus the D-class order."""

    r_index: np.ndarray
    l_index: np.ndarray
    h_index: np.ndarray
    d_index: np.ndarray
    j_index: np.ndarray
    r_classes: list[list[int]]
    l_classes: list[list[int]]
    h_classes: list[list[int]]
    d_classes: list[list[int]]
    d_lclasses: list[list[int]]  # per D-class: ids of L-classes inside it
    d_rclasses: list[list[int]]  # per D-class: ids of R-classes inside it
    d_leq: np.ndarray  # [i, j] True iff D_i <=_J D_j
    d_strict_pairs: frozenset = field(default_factory=frozenset)

    @property
    def num_d_classes(self) -> int:
        return len(self.d_classes)

    def partitions(self):
        """R / L / D partitions as sets of frozensets (for cross-validation)."""
        to_sets = lambda classes: {frozenset(c) for c in classes}
        return to_sets(self.r_classes), to_sets(self.l_classes), to_sets(self.d_classes)

    def d_less(self, a: int, b: int) -> bool:
        return bool(self.d_leq[a, b]) and a != b


def _augmented(s: FiniteSemigroup) -> np.ndarray:
    """Table with a formal identity adjoined (used only for ideal closure)."""
    n = s.size
    T1 = np.empty((n + 1, n + 1), dtype=np.int32)
    T1[:n, :n] = s.table
    T1[n, : n + 1] = np.arange(n + 1)
    T1[: n + 1, n] = np.arange(n + 1)
    return T1


def _classify(keys: list[bytes]) -> tuple[np.ndarray, list[list[int]]]:
    index: dict[bytes, int] = {}
    idx = np.empty(len(keys), dtype=np.int32)
    classes: list[list[int]] = []
    for i, key in enumerate(keys):
        c = index.get(key)
        if c is None:
            c = len(classes)
            index[key] = c
            classes.append([])
        idx[i] = c
        classes[c].append(i)
    return idx, classes


def compute_green(s: FiniteSemigroup) -> GreenData:
    n = s.size
    T1 = _augmented(s)
    rows = T1[:n, :]  # xS^1 (right ideals), row x contains x itself via the identity
    cols = T1[:, :n].T  # S^1 x (left ideals)

    def ideal_keys(mat) -> list[bytes]:
        keys = []
        for i in range(n):
            mask = np.zeros(n, dtype=bool)
            mask[mat[i]] = True
            keys.append(mask.tobytes())
        return keys

    r_index, r_classes = _classify(ideal_keys(rows))
    l_index, l_classes = _classify(ideal_keys(cols))

    h_keys = [
        int(r_index[i]).to_bytes(4, "little") + int(l_index[i]).to_bytes(4, "little")
        for i in range(n)
    ]
    h_index, h_classes = _classify(h_keys)

    # D as the join of R and L via union-find
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for classes in (r_classes, l_classes):
        for members in classes:
            root = find(members[0])
            for m in members[1:]:
                r = find(m)
                if r != root:
                    parent[r] = root
    d_keys = [find(i).to_bytes(4, "little") for i in range(n)]
    # relabel D-classes by least member for determinism
    d_index, d_classes = _classify(d_keys)

    # two-sided ideals as unions of left ideals: S^1 x S^1 = U { S^1 y : y in x S^1 },
    # with the left-ideal masks bit-packed so the unions are word-wide ORs
    left_masks = np.zeros((n, n), dtype=bool)
    for x in range(n):
        left_masks[x, cols[x]] = True
    packed = np.packbits(left_masks, axis=1)
    j_keys = []
    for x in range(n):
        mid = np.unique(T1[x, :])  # x S^1, all values < n
        j_keys.append(np.bitwise_or.reduce(packed[mid], axis=0).tobytes())
    j_index, j_classes = _classify(j_keys)

    if [sorted(c) for c in d_classes] != [sorted(c) for c in j_classes]:
        raise BadParameter("D and J partitions differ on a finite semigroup")

    nd = len(d_classes)
    d_lclasses = []
    d_rclasses = []
    for members in d_classes:
        d_lclasses.append(sorted({int(l_index[m]) for m in members}))
        d_rclasses.append(sorted({int(r_index[m]) for m in members}))

    d_leq = np.zeros((nd, nd), dtype=bool)
    reps = [c[0] for c in d_classes]
    rep_masks = [
        np.unpackbits(
            np.frombuffer(j_keys[rep], dtype=np.uint8), count=n
        ).astype(bool)
        for rep in reps
    ]
    for a in range(nd):
        for b in range(nd):
            d_leq[a, b] = bool(rep_masks[b][reps[a]])
    strict = frozenset(
        (a, b) for a in range(nd) for b in range(nd) if a != b and d_leq[a, b]
    )

    return GreenData(
        r_index=r_index,
        l_index=l_index,
        h_index=h_index,
        d_index=d_index,
        j_index=j_index,
        r_classes=r_classes,
        l_classes=l_classes,
        h_classes=h_classes,
        d_classes=d_classes,
        d_lclasses=d_lclasses,
        d_rclasses=d_rclasses,
        d_leq=d_leq,
        d_strict_pairs=strict,
    )


def idempotents(s: FiniteSemigroup) -> list[int]:
    diag = s.table[np.arange(s.size), np.arange(s.size)]
    return [int(i) for i in np.flatnonzero(diag == np.arange(s.size))]


def is_regular(s: FiniteSemigroup, g: GreenData) -> bool:
    """True iff every D-class contains an idempotent."""
    idem_d = {int(g.d_index[e]) for e in idempotents(s)}
    return idem_d == set(range(g.num_d_classes))


def maximal_subgroup(s: FiniteSemigroup, e: int) -> GroupTable:
    """The H-class of an idempotent, with identity and inverses."""
    if s.mul(e, e) != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    g = compute_green(s)
    members = g.h_classes[int(g.h_index[e])]
    member_set = set(members)
    inverse: dict[int, int] = {}
    for x in members:
        if s.mul(e, x) != x or s.mul(x, e) != x:
            raise BadParameter("H-class of the idempotent is not a group")
        for y in members:
            if s.mul(x, y) == e and s.mul(y, x) == e:
                inverse[x] = y
                break
        else:
            raise BadParameter("H-class element lacks an inverse")
        if any(s.mul(x, y) not in member_set for y in members):
            raise BadParameter("H-class is not closed")
    return GroupTable(parent=s, elements=list(members), identity=e, inverse=inverse)


def check_anti_involution(s: FiniteSemigroup, star) -> bool:
    """Check (x*)* = x and (xy)* = y* x* over all pairs."""
    star = np.asarray(star, dtype=np.int32)
    n = s.size
    if star.shape != (n,) or sorted(star.tolist()) != list(range(n)):
        return False
    if not np.array_equal(star[star], np.arange(n)):
        return False
    # star(table[x, y]) == table[star(y), star(x)]
    return bool(
        np.array_equal(star[s.table], s.table[np.ix_(star, star)].T)
    )


@dataclass
class GroupBoundReport:
    ok: bool
    d_equals_j: bool
    right_witness: tuple | None  # (x, a) with x D xa but not x R xa
    left_witness: tuple | None  # (x, y) with y D xy but not y L xy


def group_bound_checks(s: FiniteSemigroup, g: GreenData) -> GroupBoundReport:
    """Exhaustive finite-semigroup sanity checks.

    Verifies that D = J, that x D xa forces x R xa, and dually that
    y D xy forces y L xy, over all pairs.
    """
    T = s.table
    d_equals_j = bool(np.array_equal(_relabel(g.d_index), _relabel(g.j_index)))
    right_witness = None
    left_witness = None

    # right: x D xa  =>  x R xa
    same_d = g.d_index[np.arange(s.size)][:, None] == g.d_index[T]
    same_r = g.r_index[np.arange(s.size)][:, None] == g.r_index[T]
    bad = same_d & ~same_r
    if bad.any():
        x, a = map(int, np.argwhere(bad)[0])
        right_witness = (x, a)

    # left: y D xy  =>  y L xy  (rows x, columns y)
    same_d = g.d_index[np.arange(s.size)][None, :] == g.d_index[T]
    same_l = g.l_index[np.arange(s.size)][None, :] == g.l_index[T]
    bad = same_d & ~same_l
    if bad.any():
        x, y = map(int, np.argwhere(bad)[0])
        left_witness = (x, y)

    ok = d_equals_j and right_witness is None and left_witness is None
    return GroupBoundReport(ok, d_equals_j, right_witness, left_witness)


def _relabel(index: np.ndarray) -> np.ndarray:
    seen: dict[int, int] = {}
    out = np.empty_like(index)
    for i, v in enumerate(index.tolist()):
        out[i] = seen.setdefault(v, len(seen))
    return out


def green_lemma_check(s: FiniteSemigroup, g: GreenData) -> tuple | None:
    """Instance check of Green's Lemma; returns a witness or None.

    For every (x, a) with xa R x, right multiplication by a must map the
    L-class of x bijectively onto the L-class of xa, preserving R-classes.
    """
    T = s.table
    for x in range(s.size):
        lx = g.l_classes[int(g.l_index[x])]
        for a in range(s.size):
            xa = int(T[x, a])
            if g.r_index[xa] != g.r_index[x]:
                continue
            images = [int(T[z, a]) for z in lx]
            target = int(g.l_index[xa])
            if any(int(g.l_index[w]) != target for w in images):
                return (x, a, "image leaves L-class")
            if any(g.r_index[w] != g.r_index[z] for z, w in zip(lx, images)):
                return (x, a, "R-class not preserved")
            if len(set(images)) != len(lx):
                return (x, a, "not injective")
            if len(lx) != len(g.l_classes[target]):
                return (x, a, "not surjective")
    return None
