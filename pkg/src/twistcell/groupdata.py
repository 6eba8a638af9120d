"""Cell data for group algebras of symmetric groups.

The basis element attached to a pair of standard tableaux (s, t) of shape
lam is w(s) * x_lam * w(t)^-1, where x_lam sums the row stabilizer of the
row-reading tableau of lam and w(s) maps the row-reading filling to s.
Cells are ordered by reverse dominance (a strictly more dominant shape is
strictly lower), which is the direction that makes the axiom checker
pass; the choice is recorded in the datum metadata.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _permutations

import numpy as np

from .cellular import CellDatum, Poset, validate_datum
from .errors import BadParameter, SizeMismatch
from .polyring import DeltaPoly
from .semigroups import FiniteSemigroup
from .twisted import AlgebraElement, TwistedAlgebra, TwistingMap

Perm = tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Compose permutations, q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@lru_cache(maxsize=None)
def symmetric_group_algebra(m: int) -> tuple[TwistedAlgebra, list[Perm]]:
    """The group algebra Q[S_m] (trivial twist, inversion anti-involution)."""
    if m < 0:
        raise BadParameter("degree must be nonnegative")
    elems: list[Perm] = sorted(_permutations(range(m)))
    index = {p: i for i, p in enumerate(elems)}
    size = len(elems)
    table = np.empty((size, size), dtype=np.int32)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[perm_mul(p, q)]
    sg = FiniteSemigroup(table)
    star = np.array([index[perm_inv(p)] for p in elems], dtype=np.int32)
    return TwistedAlgebra(sg, TwistingMap.trivial(sg), star), elems


# ---------------------------------------------------------------------------
# partitions and tableaux


def is_partition(lam) -> bool:
    lam = tuple(lam)
    return all(isinstance(p, int) and p > 0 for p in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1)
    )


def partitions_of(n: int) -> list[tuple[int, ...]]:
    """All partitions of n, descending lexicographic."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, cap: int, prefix: tuple):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def dominance_less(lam, mu) -> bool:
    """Strict dominance: every partial sum of lam is at most that of mu."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise SizeMismatch("partitions of different integers are incomparable")
    if lam == mu:
        return False
    width = max(len(lam), len(mu))
    acc_l = acc_m = 0
    for i in range(width):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l > acc_m:
            return False
    return True


Tableau = tuple[tuple[int, ...], ...]


def standard_tableaux(lam) -> list[Tableau]:
    """All standard fillings of the shape, sorted row-reading-first."""
    lam = tuple(lam)
    if not lam:
        return [()]
    if not is_partition(lam):
        raise BadParameter(f"not a partition shape: {lam!r}")
    n = sum(lam)
    rows = [[0] * r for r in lam]
    fills: list[Tableau] = []

    def rec(value: int, row_len: list[int]):
        if value > n:
            fills.append(tuple(tuple(r[: lam[i]]) for i, r in enumerate(rows)))
            return
        for i in range(len(lam)):
            j = row_len[i]
            if j >= lam[i]:
                continue
            if i > 0 and row_len[i - 1] <= j:
                continue
            rows[i][j] = value
            row_len[i] += 1
            rec(value + 1, row_len)
            row_len[i] -= 1
        return

    rec(1, [0] * len(lam))
    fills.sort()
    return fills


def row_reading_tableau(lam) -> Tableau:
    lam = tuple(lam)
    out = []
    nxt = 1
    for r in lam:
        out.append(tuple(range(nxt, nxt + r)))
        nxt += r
    return tuple(out)


def tableau_word(lam, t: Tableau) -> Perm:
    """The permutation carrying the row-reading filling onto t, box by box."""
    base = row_reading_tableau(lam)
    n = sum(lam)
    w = [0] * n
    for row_base, row_t in zip(base, t):
        for a, b in zip(row_base, row_t):
            w[a - 1] = b - 1
    return tuple(w)


def row_stabilizer(lam) -> list[Perm]:
    """All permutations preserving each row of the row-reading tableau setwise."""
    lam = tuple(lam)
    n = sum(lam)
    perms = [tuple(range(n))]
    start = 0
    for r in lam:
        block = list(range(start, start + r))
        new_perms = []
        for base in perms:
            for arrangement in _permutations(block):
                p = list(base)
                for pos, val in zip(block, arrangement):
                    p[pos] = val
                new_perms.append(tuple(p))
        perms = new_perms
        start += r
    return perms


# ---------------------------------------------------------------------------
# data


def trivial_datum() -> CellDatum:
    """Cell datum of the trivial group algebra."""
    return murphy_datum(1)


def murphy_datum(m: int, validate: bool = True) -> CellDatum:
    """Cell datum of Q[S_m] indexed by partitions and standard tableaux."""
    if m > 5:
        raise BadParameter("symmetric-group data guarded at degree 5")
    algebra, elems = symmetric_group_algebra(m)
    index = {p: i for i, p in enumerate(elems)}
    labels = partitions_of(m)
    # reverse dominance: mu below lam iff mu strictly dominates lam
    poset = Poset.from_comparator(labels, lambda mu, lam: dominance_less(lam, mu))
    msets = {lam: standard_tableaux(lam) for lam in labels}
    basis = {}
    for lam in labels:
        stab = row_stabilizer(lam)
        for s in msets[lam]:
            ws = tableau_word(lam, s)
            for t in msets[lam]:
                wt_inv = perm_inv(tableau_word(lam, t))
                terms: dict[int, DeltaPoly] = {}
                for w in stab:
                    g = index[perm_mul(perm_mul(ws, w), wt_inv)]
                    cur = terms.get(g)
                    terms[g] = (
                        DeltaPoly.one() if cur is None else cur + DeltaPoly.one()
                    )
                basis[(lam, s, t)] = AlgebraElement(terms)
    datum = CellDatum(
        algebra,
        poset,
        msets,
        basis,
        metadata={"kind": "symmetric-group", "degree": m, "cell_order": "reverse-dominance"},
    )
    if validate:
        validate_datum(datum)
    return datum
