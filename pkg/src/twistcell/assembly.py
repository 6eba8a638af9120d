"""Assembling cell data for twisted semigroup algebras.

Per D-class the construction fixes a star-fixed idempotent, its maximal
subgroup, one representative u_L per L-class (R-related to the
idempotent), and a unit-valued partial twisting beta.  Cells are pairs
(D-class, group cell); the basis element at ((L, s), (K, t)) is

    sum_g  c[s,t](g) * beta(u_L*, g) * beta(u_L* g, u_K) * (u_L* g u_K)

with c[s,t] the coefficients of the group cell basis.  Three modes cover
the useful betas: ``const-beta`` (beta = 1, needs the twist to be
constant on R-classes), ``unit-alpha`` (beta = alpha at an invertible
specialization of delta), and ``general-beta`` (caller-supplied).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cellular import CellDatum, Poset, cell_rho, semisimple_by_gram, radical_oracle, validate_datum
from .diagrams import (
    DiagramMonoid,
    canonical_idempotent,
    group_degree,
    matching_uL,
    theta_diagram,
)
from .errors import (
    AlphaNotUnit,
    BadParameter,
    ModePreconditionFailed,
    NoStarFixedIdempotent,
    NoSuchRepresentative,
    NotAModule,
    NotRegular,
)
from .groupdata import murphy_datum, trivial_datum, symmetric_group_algebra
from .polyring import DeltaPoly, PolyMatrix
from .semigroups import GreenData, GroupTable, idempotents
from .twisted import AlgebraElement, BetaMap, TwistedAlgebra, TwistingMap

MODES = ("const-beta", "unit-alpha", "general-beta")


@dataclass
class DClassFrame:
    """Per-D-class choices backing the assembled cell datum."""

    algebra: TwistedAlgebra
    green: GreenData
    d_class: int
    members: list[int]
    one_index: int
    group: GroupTable
    l_class_ids: list[int]
    u_reps: list[int]  # u_L per L-class, aligned with l_class_ids
    theta: dict[tuple, int]  # group-datum permutation -> monoid element
    theta_inv: dict[int, tuple]
    bridge_degree: int  # symmetric-group degree of the attached cell datum

    @property
    def star_perm(self):
        return self.algebra.star_perm

    @property
    def L_D(self) -> frozenset[int]:
        lc = int(self.green.l_index[self.one_index])
        return frozenset(self.green.l_classes[lc])

    @property
    def L_D_star(self) -> frozenset[int]:
        rc = int(self.green.r_index[self.one_index])
        return frozenset(self.green.r_classes[rc])

    def u_stars(self) -> list[int]:
        star = self.star_perm
        return [int(star[u]) for u in self.u_reps]

    def alpha_one(self) -> DeltaPoly:
        return self.algebra.twisting.alpha(self.one_index, self.one_index)

    def beta_for(self, mode: str, delta_value=None) -> BetaMap:
        if mode == "const-beta":
            return BetaMap.ones(self.L_D, self.L_D_star)
        if mode == "unit-alpha":
            tw = self.algebra.twisting
            if delta_value is not None:
                tw = tw.at(delta_value)
            return BetaMap.alpha_restricted(self.L_D, self.L_D_star, tw)
        raise BadParameter("general-beta frames need an explicit BetaMap")


def _group_table_from_green(algebra: TwistedAlgebra, green: GreenData, e: int) -> GroupTable:
    members = green.h_classes[int(green.h_index[e])]
    sg = algebra.semigroup
    inverse = {}
    for x in members:
        for y in members:
            if sg.mul(x, y) == e and sg.mul(y, x) == e:
                inverse[x] = y
                break
        else:
            raise BadParameter("H-class of the chosen idempotent is not a group")
    return GroupTable(parent=sg, elements=list(members), identity=e, inverse=inverse)


def build_frames(monoid: DiagramMonoid) -> list[DClassFrame]:
    """Canonical frames for a diagram monoid, ordered by decreasing d."""
    green = monoid.green()
    algebra = monoid.algebra()
    by_d = {}
    for ci, members in enumerate(green.d_classes):
        d = monoid.invariants(members[0]).d
        by_d[d] = ci
    frames = []
    for d in sorted(by_d, reverse=True):
        ci = by_d[d]
        members = green.d_classes[ci]
        kind, n = monoid.kind, monoid.n
        k = n - d if kind == "partition" else (n - d) // 2
        one = monoid.index_of(canonical_idempotent(kind, n, k))
        if int(green.d_index[one]) != ci:
            raise BadParameter("canonical idempotent landed in the wrong D-class")
        group = _group_table_from_green(algebra, green, one)

        if kind == "tl":
            bridge_degree = 1
            theta = {(0,): one}
        else:
            bridge_degree = group_degree(kind, n, k)
            _, perms = symmetric_group_algebra(bridge_degree)
            theta = {
                p: monoid.index_of(theta_diagram(kind, n, k, p)) for p in perms
            }
        if sorted(theta.values()) != sorted(group.elements):
            raise BadParameter("group embedding does not cover the H-class")
        theta_inv = {v: p for p, v in theta.items()}

        member_set = set(members)
        l_ids = sorted(
            {int(green.l_index[m]) for m in members},
            key=lambda lc: min(m for m in green.l_classes[lc] if m in member_set),
        )
        one_r = int(green.r_index[one])
        u_reps = []
        for lc in l_ids:
            u = _pick_uL(monoid, green, ci, lc, one_r, k)
            u_reps.append(u)
        frames.append(
            DClassFrame(
                algebra=algebra,
                green=green,
                d_class=ci,
                members=list(members),
                one_index=one,
                group=group,
                l_class_ids=l_ids,
                u_reps=u_reps,
                theta=theta,
                theta_inv=theta_inv,
                bridge_degree=bridge_degree,
            )
        )
    return frames


def _pick_uL(monoid, green, d_class, l_class, one_r, k) -> int:
    """A representative u in L with u R 1_D."""
    members = [m for m in green.l_classes[l_class] if int(green.d_index[m]) == d_class]
    if monoid.kind in ("brauer", "tl"):
        inv = monoid.invariants(members[0])
        pairs = [tuple(sorted(p, key=abs)) for p in inv.l]
        u = monoid.index_of(matching_uL(monoid.n, k, pairs))
    else:
        # lexicographically least element of L with the right R-class
        for m in sorted(members):
            if int(green.r_index[m]) == one_r:
                u = m
                break
        else:
            raise NoSuchRepresentative(
                f"no element of L-class {l_class} is R-related to the idempotent"
            )
    if int(green.r_index[u]) != one_r or int(green.l_index[u]) != l_class:
        raise NoSuchRepresentative("chosen representative misses its classes")
    return u


def choose_uL(monoid: DiagramMonoid, frame: DClassFrame, l_class: int) -> int:
    """The frame's representative for one L-class (recomputed)."""
    kind, n = monoid.kind, monoid.n
    d = monoid.invariants(frame.one_index).d
    k = n - d if kind == "partition" else (n - d) // 2
    one_r = int(frame.green.r_index[frame.one_index])
    return _pick_uL(monoid, frame.green, frame.d_class, l_class, one_r, k)


def build_frames_generic(algebra: TwistedAlgebra, green: GreenData) -> list[DClassFrame]:
    """Frames for a generic finite semigroup with a validated anti-involution.

    Requires regularity and a star-fixed idempotent in every D-class;
    representatives are the least valid elements.  Group cell data beyond
    trivial groups must be supplied by the caller at assembly time.
    """
    sg = algebra.semigroup
    star = algebra.star_perm
    idem = set(idempotents(sg))
    frames = []
    order = sorted(
        range(green.num_d_classes),
        key=lambda ci: (-int(np.sum(green.d_leq[:, ci])), green.d_classes[ci][0]),
    )
    for ci in order:
        members = green.d_classes[ci]
        d_idem = sorted(m for m in members if m in idem)
        if not d_idem:
            raise NotRegular(f"D-class {ci} contains no idempotent; the semigroup is not regular")
        fixed = [e for e in d_idem if int(star[e]) == e]
        if not fixed:
            raise NoStarFixedIdempotent(
                f"D-class {ci} has no idempotent fixed by the anti-involution"
            )
        one = fixed[0]
        group = _group_table_from_green(algebra, green, one)
        l_ids = sorted(
            {int(green.l_index[m]) for m in members},
            key=lambda lc: min(set(green.l_classes[lc]) & set(members)),
        )
        one_r = int(green.r_index[one])
        u_reps = []
        for lc in l_ids:
            for m in sorted(set(green.l_classes[lc]) & set(members)):
                if int(green.r_index[m]) == one_r:
                    u_reps.append(m)
                    break
            else:
                raise NoSuchRepresentative(f"L-class {lc} has no representative R-related to 1_D")
        if group.order == 1:
            theta = {(0,): one}
            theta_inv = {one: (0,)}
            bridge_degree = 1
        else:
            theta = None
            theta_inv = None
            bridge_degree = -1
        frames.append(
            DClassFrame(
                algebra=algebra,
                green=green,
                d_class=ci,
                members=list(members),
                one_index=one,
                group=group,
                l_class_ids=l_ids,
                u_reps=u_reps,
                theta=theta,
                theta_inv=theta_inv,
                bridge_degree=bridge_degree,
            )
        )
    return frames


# ---------------------------------------------------------------------------
# group cell data attached to frames


@dataclass
class GroupCellData:
    """A group cell datum plus the dictionary between it and the H-class."""

    datum: CellDatum
    elements: list[tuple]  # group-algebra element order (permutations)
    to_monoid: dict[int, int]
    from_monoid: dict[int, int]

    def coefficient_terms(self, lam, s, t):
        """(group element index, coefficient) pairs of one basis element."""
        return self.datum.basis[(lam, s, t)].sorted_terms()

    def to_ambient(self, elem: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(
            {self.to_monoid[g]: c for g, c in elem.terms.items()}
        )


def _scaled_murphy(degree: int, twist_constant: Fraction) -> CellDatum:
    """Cell datum of the constant-twisted group algebra.

    Scaling every basis element by 1/c pulls the plain datum back through
    the isomorphism g -> c*g between the twisted and plain group algebras.
    """
    if twist_constant == 0:
        raise ModePreconditionFailed("group twist vanishes; no unit scaling exists")
    plain = murphy_datum(degree, validate=False)
    if twist_constant == 1:
        return murphy_datum(degree)
    sg = plain.algebra.semigroup
    algebra = TwistedAlgebra(
        sg,
        TwistingMap.constant(sg, DeltaPoly.const(twist_constant)),
        plain.algebra.star_perm,
    )
    inv = Fraction(1) / twist_constant
    basis = {key: elem.scale(inv) for key, elem in plain.basis.items()}
    datum = CellDatum(algebra, plain.poset, plain.msets, basis, metadata=dict(plain.metadata))
    validate_datum(datum)
    return datum


def group_data_for(frame: DClassFrame, mode: str, delta_value=None) -> GroupCellData:
    if frame.theta is None:
        raise BadParameter(
            "frame group is nontrivial and has no symmetric-group embedding; "
            "supply explicit group cell data"
        )
    if frame.bridge_degree == 1 and len(frame.theta) == 1:
        datum = trivial_datum() if mode != "unit-alpha" else _scaled_for_frame(frame, 1, delta_value)
        _, elems = symmetric_group_algebra(1)
    elif mode == "unit-alpha":
        datum = _scaled_for_frame(frame, frame.bridge_degree, delta_value)
        _, elems = symmetric_group_algebra(frame.bridge_degree)
    else:
        datum = murphy_datum(frame.bridge_degree)
        _, elems = symmetric_group_algebra(frame.bridge_degree)
    to_monoid = {gi: frame.theta[p] for gi, p in enumerate(elems)}
    from_monoid = {v: k for k, v in to_monoid.items()}
    return GroupCellData(datum, list(elems), to_monoid, from_monoid)


def _group_twist_constant(frame: DClassFrame, delta_value) -> Fraction:
    """The (constant) value of the twist on the group H-class."""
    tw = frame.algebra.twisting.at(delta_value)
    vals = {
        tw.alpha(g, h).constant_value()
        for g in frame.group.elements
        for h in frame.group.elements
    }
    if len(vals) != 1:
        raise ModePreconditionFailed("twist is not constant on the group H-class")
    return vals.pop()


def _scaled_for_frame(frame: DClassFrame, degree: int, delta_value) -> CellDatum:
    if delta_value is None:
        raise ModePreconditionFailed("unit-alpha mode needs a rational delta")
    return _scaled_murphy(degree, _group_twist_constant(frame, delta_value))


# ---------------------------------------------------------------------------
# the assembled datum


class AssembledCellData:
    """The cell datum of a twisted semigroup algebra with its ingredients."""

    def __init__(self, monoid, algebra, mode, delta_value, frames, group_data, betas, datum):
        self.monoid = monoid
        self.algebra = algebra
        self.mode = mode
        self.delta_value = delta_value
        self.frames = frames
        self.group_data = group_data
        self.betas = betas
        self.datum = datum


def _check_mode_preconditions(algebra, frames, mode, delta_value, betas):
    tw = algebra.twisting
    green = frames[0].green if frames else None
    if mode == "const-beta":
        # alpha(x, y) must agree with alpha(x, z) whenever y R z
        M = tw.m_table
        if M is None:
            raise BadParameter("const-beta mode expects an exponent-table twisting")
        for members in green.r_classes:
            cols = M[:, members]
            if not np.all(cols == cols[:, :1]):
                x = int(np.argwhere(cols != cols[:, :1])[0][0])
                raise ModePreconditionFailed(
                    f"twist is not constant on R-classes (witness x={x}, class {members[:2]})"
                )
        return
    if mode == "unit-alpha":
        if delta_value is None:
            raise ModePreconditionFailed("unit-alpha mode needs delta specialized")
        twv = tw.at(Fraction(delta_value))
        for frame in frames:
            for x in frame.L_D:
                for y in frame.L_D_star:
                    if twv.alpha(x, y).constant_value() == 0:
                        raise ModePreconditionFailed(
                            f"alpha({x}, {y}) vanishes at delta={delta_value}"
                        )
        return
    if mode == "general-beta":
        if betas is None or len(betas) != len(frames):
            raise ModePreconditionFailed("general-beta mode needs one BetaMap per frame")
        return
    raise BadParameter(f"unknown mode {mode!r}; expected one of {MODES}")


def assemble_datum(
    algebra: TwistedAlgebra,
    frames: list[DClassFrame],
    group_data: list[GroupCellData],
    mode: str,
    delta_value=None,
    betas: list[BetaMap] | None = None,
    validate: bool = True,
    monoid=None,
) -> AssembledCellData:
    _check_mode_preconditions(algebra, frames, mode, delta_value, betas)
    if mode != "general-beta":
        betas = [f.beta_for(mode, delta_value) for f in frames]
    ambient = algebra if delta_value is None else algebra.at(delta_value)

    green = frames[0].green
    labels = []
    msets = {}
    basis = {}
    sg_table = ambient.semigroup.table
    for fi, frame in enumerate(frames):
        gcd = group_data[fi]
        beta = betas[fi]
        u_stars = frame.u_stars()
        for lam in gcd.datum.poset.labels:
            label = (fi, lam)
            labels.append(label)
            gm = gcd.datum.mset(lam)
            msets[label] = [
                (lpos, m) for lpos in range(len(frame.u_reps)) for m in gm
            ]
            for lpos, us in enumerate(u_stars):
                for kpos, uk in enumerate(frame.u_reps):
                    for s in gm:
                        for t in gm:
                            terms: dict[int, DeltaPoly] = {}
                            for gi, coeff in gcd.coefficient_terms(lam, s, t):
                                g = gcd.to_monoid[gi]
                                z1 = int(sg_table[us, g])
                                z = int(sg_table[z1, uk])
                                c = coeff * beta.value(us, g) * beta.value(z1, uk)
                                if z in terms:
                                    terms[z] = terms[z] + c
                                else:
                                    terms[z] = c
                            basis[(label, (lpos, s), (kpos, t))] = AlgebraElement(terms)

    def less(a, b):
        (f1, l1), (f2, l2) = a, b
        if f1 != f2:
            return green.d_less(frames[f1].d_class, frames[f2].d_class)
        return group_data[f1].datum.poset.less(l1, l2)

    poset = Poset.from_comparator(labels, less)
    datum = CellDatum(
        ambient,
        poset,
        msets,
        basis,
        metadata={
            "mode": mode,
            "delta": None if delta_value is None else str(Fraction(delta_value)),
            "cell_order": "J-order, then reverse dominance",
        },
    )
    if validate:
        validate_datum(datum)
    return AssembledCellData(
        monoid, ambient, mode, delta_value, frames, group_data, betas, datum
    )


def assemble(monoid: DiagramMonoid, mode: str, delta_value=None, validate: bool = True) -> AssembledCellData:
    """Frames, group data and the assembled datum for a diagram monoid."""
    frames = build_frames(monoid)
    _check_mode_preconditions(monoid.algebra(), frames, mode, delta_value, None)
    group_data = [group_data_for(f, mode, delta_value) for f in frames]
    return assemble_datum(
        monoid.algebra(),
        frames,
        group_data,
        mode,
        delta_value=delta_value,
        validate=validate,
        monoid=monoid,
    )


# ---------------------------------------------------------------------------
# sandwich matrices and the Gram factorization


@dataclass
class SandwichMatrix:
    """Twisted products u_L u_K* over the group algebra, per L-class pair."""

    frame: DClassFrame
    entries: list[list[AlgebraElement]]  # zero element when the product drops

    def entry(self, l_pos: int, k_pos: int) -> AlgebraElement:
        return self.entries[l_pos][k_pos]

    @property
    def size(self) -> int:
        return len(self.entries)


def sandwich_matrix(frame: DClassFrame, twisting: TwistingMap | None = None) -> SandwichMatrix:
    tw = twisting if twisting is not None else frame.algebra.twisting
    green = frame.green
    sg = frame.algebra.semigroup
    star = frame.star_perm
    group_set = set(frame.group.elements)
    rows = []
    for u_l in frame.u_reps:
        row = []
        for u_k in frame.u_reps:
            uks = int(star[u_k])
            z = sg.mul(u_l, uks)
            if int(green.d_index[z]) != frame.d_class:
                row.append(AlgebraElement.zero())
            else:
                if z not in group_set:
                    raise BadParameter("sandwich product left the group H-class")
                row.append(AlgebraElement.basis(z, coeff=tw.alpha(u_l, uks)))
        rows.append(row)
    return SandwichMatrix(frame, rows)


def rho_of_sandwich(
    frame: DClassFrame, gcd: GroupCellData, sandwich: SandwichMatrix, lam
) -> PolyMatrix:
    """The sandwich matrix pushed through the cell representation of lam."""
    gm = gcd.datum.mset(lam)
    k = len(gm)
    nl = len(frame.u_reps)
    zero = PolyMatrix(k, k, (DeltaPoly.zero(),) * (k * k))
    blocks = []
    for lpos in range(nl):
        row = []
        for kpos in range(nl):
            entry = sandwich.entry(lpos, kpos)
            if entry.is_zero:
                row.append(zero)
            else:
                ((z, coeff),) = entry.sorted_terms()
                gi = gcd.from_monoid[z]
                row.append(cell_rho(gcd.datum, lam, gi, verify=False).scale(coeff))
        blocks.append(row)
    grid = [
        [blocks[lpos][kpos].entry(i, j) for kpos in range(nl) for j in range(k)]
        for lpos in range(nl)
        for i in range(k)
    ]
    return PolyMatrix.from_rows(grid)


@dataclass
class GramFactorization:
    big_gram: PolyMatrix
    group_gram: PolyMatrix
    rho_sandwich: PolyMatrix
    product: PolyMatrix
    matrices_equal: bool
    det_big: DeltaPoly
    det_factored: DeltaPoly
    dets_equal: bool


def gram_factorization(assembled: AssembledCellData, frame_pos: int, lam) -> GramFactorization:
    """Both routes to the Gram matrix of an assembled cell.

    Route one reads the form straight off the assembled datum; route two
    multiplies the block-diagonal group Gram matrix by the image of the
    twisted sandwich matrix under the cell representation.
    """
    from .cellular import phi_a

    frame = assembled.frames[frame_pos]
    gcd = assembled.group_data[frame_pos]
    big = phi_a(assembled.datum, (frame_pos, lam), a=None)
    group_gram = phi_a(gcd.datum, lam, a=None)
    sw = sandwich_matrix(frame, assembled.algebra.twisting)
    rho_p = rho_of_sandwich(frame, gcd, sw, lam)
    product = PolyMatrix.block_diagonal(group_gram, len(frame.u_reps)) * rho_p
    det_big = big.det()
    det_factored = (group_gram.det() ** len(frame.u_reps)) * rho_p.det()
    return GramFactorization(
        big_gram=big,
        group_gram=group_gram,
        rho_sandwich=rho_p,
        product=product,
        matrices_equal=big == product,
        det_big=det_big,
        det_factored=det_factored,
        dets_equal=det_big == det_factored,
    )


# ---------------------------------------------------------------------------
# semisimplicity via sandwich invertibility


@dataclass
class FrameVerdict:
    d_class: int
    group_semisimple: bool
    group_dets: dict
    sandwich_invertible: bool
    sandwich_dets: dict


@dataclass
class SemisimplicityReport:
    delta: Fraction
    semisimple: bool
    per_frame: list[FrameVerdict]
    oracle_semisimple: bool
    agree: bool


def semisimplicity_report(monoid: DiagramMonoid, delta_value) -> SemisimplicityReport:
    """Semisimplicity at an invertible specialization of delta.

    Per D-class the twisted group algebra must be semisimple and the
    twisted sandwich matrix invertible, the latter decided through the
    determinants of its images under all cell representations (faithful
    once the group algebra is semisimple).  Cross-checked against the
    regular-representation trace form.
    """
    v = Fraction(delta_value)
    frames = build_frames(monoid)
    tw = monoid.algebra().twisting
    twv = tw.at(v)
    for frame in frames:
        for x in frame.L_D:
            for y in frame.L_D_star:
                if twv.alpha(x, y).constant_value() == 0:
                    raise AlphaNotUnit(
                        f"alpha is not invertible at delta={v} on D-class {frame.d_class}"
                    )
    per_frame = []
    overall = True
    for frame in frames:
        gcd = group_data_for(frame, "unit-alpha", v)
        gram = semisimple_by_gram(gcd.datum, v)
        sw = sandwich_matrix(frame, tw.at(v))
        sw_dets = {}
        invertible = True
        for lam in gcd.datum.poset.labels:
            rho_p = rho_of_sandwich(frame, gcd, sw, lam)
            d = rho_p.det().eval(v)
            sw_dets[lam] = d
            if d == 0:
                invertible = False
        per_frame.append(
            FrameVerdict(
                d_class=frame.d_class,
                group_semisimple=gram.semisimple,
                group_dets=gram.values,
                sandwich_invertible=invertible,
                sandwich_dets=sw_dets,
            )
        )
        if not (gram.semisimple and invertible):
            overall = False
    oracle = radical_oracle(monoid.semigroup, tw, v)
    return SemisimplicityReport(
        delta=v,
        semisimple=overall,
        per_frame=per_frame,
        oracle_semisimple=oracle.semisimple,
        agree=overall == oracle.semisimple,
    )


# ---------------------------------------------------------------------------
# induced modules


@dataclass
class InducedModule:
    frame: DClassFrame
    r_class_ids: list[int]
    v_reps: list[int]  # v_K per R-class, L-related to 1_D
    dim: int
    basis_labels: list[tuple]
    matrices: dict[int, PolyMatrix]


def induce_module(
    frame: DClassFrame,
    source_action: dict[int, PolyMatrix],
    twisting: TwistingMap | None = None,
    beta: BetaMap | None = None,
    verify: bool = True,
) -> InducedModule:
    """Induce a module of the group algebra up to the whole twisted algebra.

    ``source_action`` maps every group H-class element to its action
    matrix.  The element s sends the K-th copy to zero when s v_K drops
    below the D-class, and otherwise to the K'-th copy through the group
    element g with s v_K = v_K' g, weighted by alpha(s, v_K) / beta(v_K', g).
    """
    algebra = frame.algebra
    green = frame.green
    sg = algebra.semigroup
    tw = twisting if twisting is not None else algebra.twisting
    if beta is None:
        beta = BetaMap.ones(frame.L_D, frame.L_D_star)

    members = set(frame.members)
    r_ids = sorted(
        {int(green.r_index[m]) for m in frame.members},
        key=lambda rc: min(set(green.r_classes[rc]) & members),
    )
    star = frame.star_perm
    v_by_r = {}
    for u in frame.u_reps:
        us = int(star[u])
        v_by_r[int(green.r_index[us])] = us
    if sorted(v_by_r) != sorted(r_ids):
        raise BadParameter("star images of the u_L do not cover the R-classes")
    v_reps = [v_by_r[rc] for rc in r_ids]

    group_elems = frame.group.elements
    dims = {g: source_action[g].rows for g in group_elems}
    if len(set(dims.values())) != 1:
        raise BadParameter("source action matrices have mixed dimensions")
    mdim = dims[group_elems[0]]

    # every element of L_D factors uniquely as v_K g
    decomp = {}
    for kpos, vk in enumerate(v_reps):
        for g in group_elems:
            z = sg.mul(vk, g)
            if z in decomp:
                raise BadParameter("v_K g factorization is not unique")
            decomp[z] = (kpos, g)

    nK = len(v_reps)
    dim = nK * mdim
    zero_block = PolyMatrix(mdim, mdim, (DeltaPoly.zero(),) * (mdim * mdim))
    matrices = {}
    for s in range(sg.size):
        blocks = [[zero_block] * nK for _ in range(nK)]
        for kpos, vk in enumerate(v_reps):
            sv = sg.mul(s, vk)
            if int(green.d_index[sv]) != frame.d_class:
                continue
            if sv not in decomp:
                raise BadParameter("product landed in D but outside L_D")
            kp, g = decomp[sv]
            b = beta.value(v_reps[kp], g)
            if not b.is_unit():
                raise BadParameter("beta must be unit-valued")
            coeff = tw.alpha(s, vk) * (Fraction(1) / b.constant_value())
            blocks[kp][kpos] = source_action[g].scale(coeff)
        grid = [
            [blocks[i][j].entry(a, b) for j in range(nK) for b in range(mdim)]
            for i in range(nK)
            for a in range(mdim)
        ]
        matrices[s] = PolyMatrix.from_rows(grid)

    if verify:
        for s in range(sg.size):
            for t in range(sg.size):
                st = sg.mul(s, t)
                lhs = matrices[s] * matrices[t]
                rhs = matrices[st].scale(tw.alpha(s, t))
                if lhs != rhs:
                    raise NotAModule(f"action fails the product law at ({s}, {t})")

    labels = [(kpos, i) for kpos in range(nK) for i in range(mdim)]
    return InducedModule(
        frame=frame,
        r_class_ids=r_ids,
        v_reps=v_reps,
        dim=dim,
        basis_labels=labels,
        matrices=matrices,
    )


def cell_source_modules(assembled: AssembledCellData, frame_pos: int):
    """Cell modules of the frame group as induction sources: (lam, action)."""
    frame = assembled.frames[frame_pos]
    gcd = assembled.group_data[frame_pos]
    out = []
    for lam in gcd.datum.poset.labels:
        action = {}
        for gi, z in gcd.to_monoid.items():
            action[z] = cell_rho(gcd.datum, lam, gi, verify=False)
        out.append((lam, action))
    return out
