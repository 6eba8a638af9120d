"""Invariant batteries over a diagram monoid at a given rank.

Each check returns a Report; ``run_suite`` collects the full battery the
CLI exposes.  These are the same scans the test suite runs at the
acceptance scales.
"""

from __future__ import annotations

import numpy as np

from .diagrams import DiagramMonoid, expected_size, is_planar
from .semigroups import group_bound_checks, green_lemma_check
from .twisted import Report


def cocycle_additivity(monoid: DiagramMonoid) -> Report:
    """m(x,y) + m(xy,z) = m(x,yz) + m(y,z) on every triple."""
    M = monoid.m_table.astype(np.int64)
    T = monoid.semigroup.table
    for x in range(monoid.size):
        lhs = M[x, :][:, None] + M[T[x, :], :]
        rhs = M[x, :][T] + M
        if not np.array_equal(lhs, rhs):
            y, z = map(int, np.argwhere(lhs != rhs)[0])
            return Report("cocycle-additivity", False, witness=(x, y, z))
    return Report("cocycle-additivity", True)


def star_twist_symmetry(monoid: DiagramMonoid) -> Report:
    """m(x, y) = m(y*, x*) on every pair."""
    M = monoid.m_table
    star = monoid.star_perm
    flipped = M[np.ix_(star, star)].T
    if np.array_equal(M, flipped):
        return Report("star-twist-symmetry", True)
    x, y = map(int, np.argwhere(M != flipped)[0])
    return Report("star-twist-symmetry", False, witness=(x, y))


def star_anti_involution(monoid: DiagramMonoid) -> Report:
    star = monoid.star_perm
    T = monoid.semigroup.table
    if not np.array_equal(star[star], np.arange(monoid.size)):
        return Report("star-involution", False)
    ok = np.array_equal(star[T], T[np.ix_(star, star)].T)
    return Report("star-anti-involution", ok)


def r_constancy(monoid: DiagramMonoid) -> Report:
    """y R z forces m(x, y) = m(x, z) for every x."""
    green = monoid.green()
    M = monoid.m_table
    for members in green.r_classes:
        cols = M[:, members]
        if not np.all(cols == cols[:, :1]):
            x = int(np.argwhere(cols != cols[:, :1])[0][0])
            return Report("r-constancy", False, witness=(x, members[:2]))
    return Report("r-constancy", True)


def green_cross_validation(monoid: DiagramMonoid) -> Report:
    """Closed-form invariants induce the same R / L / D partitions as ideals."""
    green = monoid.green()
    engine = green.partitions()
    closed = monoid.closed_form_partitions()
    for name, a, b in zip(("R", "L", "D"), engine, closed):
        if a != b:
            return Report("green-cross-validation", False, witness=name)
    return Report("green-cross-validation", True)


def counting_identities(monoid: DiagramMonoid) -> Report:
    expected = expected_size(monoid.kind, monoid.n)
    if monoid.size != expected:
        return Report("counting", False, info={"expected": expected, "actual": monoid.size})
    d_values = {monoid.invariants(i).d for i in range(monoid.size)}
    want = (
        monoid.n + 1 if monoid.kind == "partition" else monoid.n // 2 + 1
    )
    if len(d_values) != want:
        return Report("counting", False, info={"d_classes": len(d_values), "expected": want})
    return Report("counting", True, info={"size": monoid.size, "d_classes": len(d_values)})


def closure_checks(monoid: DiagramMonoid) -> Report:
    """Matchings stay matchings; planar diagrams stay planar; star is internal."""
    if monoid.kind == "partition":
        return Report("closure", True)
    for i in range(monoid.size):
        if not monoid.elements[i].is_matching():
            return Report("closure", False, witness=i)
        if monoid.kind == "tl" and not is_planar(monoid.elements[i]):
            return Report("closure", False, witness=i)
    return Report("closure", True)


def group_bound(monoid: DiagramMonoid) -> Report:
    rep = group_bound_checks(monoid.semigroup, monoid.green())
    return Report(
        "group-bound",
        rep.ok,
        witness=rep.right_witness or rep.left_witness,
        info={"d_equals_j": rep.d_equals_j},
    )


def green_lemma(monoid: DiagramMonoid) -> Report:
    witness = green_lemma_check(monoid.semigroup, monoid.green())
    return Report("green-lemma", witness is None, witness=witness)


def run_suite(monoid: DiagramMonoid, include_green_lemma: bool | None = None) -> dict[str, Report]:
    """The full battery; the Green's Lemma scan is skipped above 100 elements."""
    checks = {
        "counting": counting_identities(monoid),
        "closure": closure_checks(monoid),
        "star-anti-involution": star_anti_involution(monoid),
        "cocycle-additivity": cocycle_additivity(monoid),
        "star-twist-symmetry": star_twist_symmetry(monoid),
        "r-constancy": r_constancy(monoid),
        "green-cross-validation": green_cross_validation(monoid),
        "group-bound": group_bound(monoid),
    }
    if include_green_lemma is None:
        include_green_lemma = monoid.size <= 100
    if include_green_lemma:
        checks["green-lemma"] = green_lemma(monoid)
    return checks
