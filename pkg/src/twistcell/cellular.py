"""Cell datum machinery.

A cell datum is a finite poset of cells, an index set per cell, and a
basis element per (cell, row, column) triple, together with the ambient
algebra's anti-involution.  The three defining axioms are checked
explicitly: the elements form a basis (unit change-of-basis determinant
over Q[delta]), the anti-involution transposes row and column indices,
and left multiplication is triangular with structure coefficients that do
not depend on the column index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    C3Violation,
    InconsistentForm,
    UnknownLambda,
    ValidationFailed,
)
from .polyring import DeltaPoly, PolyMatrix
from .twisted import AlgebraElement, Report, TwistedAlgebra, TwistingMap


class Poset:
    """A finite poset given by labels and explicit strict-order pairs."""

    def __init__(self, labels, strict_pairs):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValidationFailed("duplicate poset labels")
        strict = frozenset((int(a), int(b)) for a, b in strict_pairs)
        for a, b in strict:
            if a == b:
                raise ValidationFailed("poset order is not irreflexive")
        for a, b in strict:
            for c, d in strict:
                if b == c and (a, d) not in strict:
                    raise ValidationFailed("poset order is not transitive")
        self.strict = strict

    @staticmethod
    def from_comparator(labels, lt) -> "Poset":
        labels = list(labels)
        pairs = [
            (i, j)
            for i in range(len(labels))
            for j in range(len(labels))
            if i != j and lt(labels[i], labels[j])
        ]
        return Poset(labels, pairs)

    def less(self, a, b) -> bool:
        return (self.index[a], self.index[b]) in self.strict

    def __len__(self) -> int:
        return len(self.labels)


class CellDatum:
    """(poset, index sets, basis, anti-involution) over a twisted algebra."""

    def __init__(
        self,
        algebra: TwistedAlgebra,
        poset: Poset,
        msets: dict,
        basis: dict,
        metadata: dict | None = None,
    ):
        self.algebra = algebra
        self.poset = poset
        self.msets = {lam: list(ms) for lam, ms in msets.items()}
        self.basis = dict(basis)
        self.metadata = metadata or {}
        self._solver = None
        for lam in poset.labels:
            if lam not in self.msets:
                raise ValidationFailed(f"missing index set for cell {lam!r}")

    def cells(self):
        return list(self.poset.labels)

    def mset(self, lam) -> list:
        if lam not in self.msets:
            raise UnknownLambda(f"unknown cell {lam!r}")
        return self.msets[lam]

    def element(self, lam, s, t) -> AlgebraElement:
        return self.basis[(lam, s, t)]

    def triples(self):
        for lam in self.poset.labels:
            ms = self.msets[lam]
            for s in ms:
                for t in ms:
                    yield (lam, s, t)

    def column_order(self) -> list:
        out = []
        for lam in self.poset.labels:
            ms = self.msets[lam]
            for s in ms:
                for t in ms:
                    out.append((lam, s, t))
        return out

    @property
    def dimension(self) -> int:
        return sum(len(ms) ** 2 for ms in self.msets.values())

    def solver(self) -> "_CoordinateSolver":
        if self._solver is None:
            self._solver = _CoordinateSolver(self)
        return self._solver


def lower_span_basis(datum: CellDatum, lam) -> list[AlgebraElement]:
    """All basis elements of cells strictly below lam."""
    if lam not in datum.msets:
        raise UnknownLambda(f"unknown cell {lam!r}")
    out = []
    for mu in datum.poset.labels:
        if datum.poset.less(mu, lam):
            ms = datum.msets[mu]
            out.extend(datum.basis[(mu, s, t)] for s in ms for t in ms)
    return out


class _CoordinateSolver:
    """Change of basis from the semigroup basis to the cell basis.

    The matrix decomposes into connected components (for assembled data
    these are the group-sized H-class blocks); each block is inverted
    over Q once and applied sparsely.  Requires a delta-free matrix,
    which unit-valued twist data always produce.
    """

    def __init__(self, datum: CellDatum):
        self.datum = datum
        dim = datum.algebra.dimension
        cols = datum.column_order()
        self.columns = cols
        self.col_index = {c: i for i, c in enumerate(cols)}
        if len(cols) != dim:
            self.square = False
            self.singular = True
            self.inv_columns = None
            return
        self.square = True

        entries: list[dict[int, Fraction]] = []
        for c in cols:
            elem = datum.basis[c]
            col: dict[int, Fraction] = {}
            for k, poly in elem.terms.items():
                if poly.degree > 0:
                    raise ValidationFailed(
                        "change-of-basis matrix is not delta-free; "
                        "cell coordinates over Q[delta] are unsupported here"
                    )
                col[k] = poly.constant_value()
            entries.append(col)

        # connected components over the bipartite support graph
        parent = list(range(dim))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        row_home: dict[int, int] = {}
        for j, col in enumerate(entries):
            for r in col:
                if r in row_home:
                    a, b = find(row_home[r]), find(j)
                    if a != b:
                        parent[b] = a
                else:
                    row_home[r] = j
        comps: dict[int, list[int]] = {}
        for j in range(dim):
            comps.setdefault(find(j), []).append(j)

        self.singular = False
        inv_columns: dict[int, list[tuple[int, Fraction]]] = {}
        for col_ids in comps.values():
            rows = sorted({r for j in col_ids for r in entries[j]})
            if len(rows) != len(col_ids):
                self.singular = True
                return
            k = len(rows)
            # augmented matrix [B | I] with rows indexed by semigroup elements
            aug = []
            for i, r in enumerate(rows):
                row = [entries[j].get(r, Fraction(0)) for j in col_ids]
                row += [Fraction(1) if ii == i else Fraction(0) for ii in range(k)]
                aug.append(row)
            if not _invert_in_place(aug, k):
                self.singular = True
                return
            # aug now holds B^-1 on the right; column r of B^-1 maps the
            # semigroup coordinate at rows[r] to cell coordinates
            for i, r in enumerate(rows):
                sparse = []
                for ii in range(k):
                    v = aug[ii][k + i]
                    if v:
                        sparse.append((col_ids[ii], v))
                inv_columns[r] = sparse
        self.inv_columns = inv_columns

    def coordinates(self, elem: AlgebraElement) -> dict:
        """Cell-basis coordinates of an algebra element."""
        if self.singular:
            raise ValidationFailed("cell elements do not form a basis")
        acc: dict[int, DeltaPoly] = {}
        for r, poly in elem.terms.items():
            cols = self.inv_columns.get(r)
            if cols is None:
                raise ValidationFailed(f"element {r} outside the basis span")
            for j, frac in cols:
                add = poly * frac
                acc[j] = acc[j] + add if j in acc else add
        return {
            self.columns[j]: v for j, v in acc.items() if not v.is_zero
        }


def _invert_in_place(aug: list[list[Fraction]], k: int) -> bool:
    """Gauss-Jordan on [B | I]; True on success, False if singular."""
    for col in range(k):
        piv = None
        for r in range(col, k):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            return False
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        if pv != 1:
            aug[col] = [v / pv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return True


# ---------------------------------------------------------------------------
# axiom checks


def check_C1(datum: CellDatum, ambient_dimension: int | None = None) -> Report:
    """Count and unit-determinant check for the cell basis."""
    dim = ambient_dimension if ambient_dimension is not None else datum.algebra.dimension
    count = datum.dimension
    if count != dim:
        return Report(
            "C1", False, witness=None, info={"expected": dim, "actual": count}
        )
    cols = datum.column_order()
    det, ok = _structured_det(datum, cols, dim)
    return Report("C1", ok and det.is_unit(), info={"det": det})


def _structured_det(datum: CellDatum, cols, dim: int):
    """Determinant of the change-of-basis matrix via connected components."""
    entries = [datum.basis[c].terms for c in cols]
    parent = list(range(dim))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    row_home: dict[int, int] = {}
    for j, col in enumerate(entries):
        for r in col:
            if r in row_home:
                a, b = find(row_home[r]), find(j)
                if a != b:
                    parent[b] = a
            else:
                row_home[r] = j
    comps: dict[int, list[int]] = {}
    for j in range(dim):
        comps.setdefault(find(j), []).append(j)

    det = DeltaPoly.one()
    row_order: list[int] = []
    col_order: list[int] = []
    for col_ids in sorted(comps.values()):
        rows = sorted({r for j in col_ids for r in entries[j]})
        if len(rows) != len(col_ids):
            return DeltaPoly.zero(), False
        block = PolyMatrix.from_rows(
            [
                [entries[j].get(r, DeltaPoly.zero()) for j in col_ids]
                for r in rows
            ]
        )
        det = det * block.det()
        row_order.extend(rows)
        col_order.extend(col_ids)
        if det.is_zero:
            return det, False
    if len(row_order) != dim:
        return DeltaPoly.zero(), False
    sign = _permutation_sign(row_order) * _permutation_sign(col_order)
    return det * Fraction(sign), True


def _permutation_sign(perm: list[int]) -> int:
    """Sign of the permutation sending sorted order to the given order."""
    rank = {v: i for i, v in enumerate(sorted(perm))}
    target = [rank[v] for v in perm]
    seen = [False] * len(target)
    sign = 1
    for start in range(len(target)):
        if seen[start]:
            continue
        cur = start
        length = 0
        while not seen[cur]:
            seen[cur] = True
            cur = target[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def check_C2(datum: CellDatum) -> Report:
    """star(C[lam, s, t]) must equal C[lam, t, s] exactly."""
    alg = datum.algebra
    for lam, s, t in datum.triples():
        if alg.star(datum.basis[(lam, s, t)]) != datum.basis[(lam, t, s)]:
            return Report("C2", False, witness=(lam, s, t))
    return Report("C2", True)


@dataclass
class StructureCoefficients:
    """Matrices r_a(s', s) per (generator, cell)."""

    matrices: dict = field(default_factory=dict)  # (gen_key, lam) -> PolyMatrix

    def matrix(self, gen_key, lam) -> PolyMatrix:
        return self.matrices[(gen_key, lam)]


def _coords_split(datum, coords, lam):
    """Split coordinates into (same-cell, lower, violating) parts."""
    same = {}
    violating = []
    for (mu, u, v), poly in coords.items():
        if mu == lam:
            same[(u, v)] = poly
        elif not datum.poset.less(mu, lam):
            violating.append((mu, u, v))
    return same, violating


def check_C3(datum: CellDatum, generators) -> tuple[StructureCoefficients, Report]:
    """Verify triangular left multiplication; return the structure coefficients.

    ``generators`` may contain semigroup element indices or algebra
    elements.  For each generator a and cell lam the coefficients of
    a . C[lam, s, t] above the lower ideal must sit in column t and be
    independent of t.
    """
    solver = datum.solver()
    alg = datum.algebra
    coeffs = StructureCoefficients()
    for pos, gen in enumerate(generators):
        a = AlgebraElement.basis(gen) if isinstance(gen, int) else gen
        gen_key = gen if isinstance(gen, int) else ("gen", pos)
        for lam in datum.poset.labels:
            ms = datum.mset(lam)
            mpos = {m: i for i, m in enumerate(ms)}
            ref: dict = {}
            grid = [[DeltaPoly.zero()] * len(ms) for _ in range(len(ms))]
            for s in ms:
                for ti, t in enumerate(ms):
                    prod = alg.mul(a, datum.basis[(lam, s, t)])
                    same, violating = _coords_split(datum, solver.coordinates(prod), lam)
                    if violating:
                        return coeffs, Report(
                            "C3", False, witness=(gen_key, lam, s, t, "escapes", violating[0])
                        )
                    col = {}
                    for (u, v), poly in same.items():
                        if v != t:
                            return coeffs, Report(
                                "C3", False, witness=(gen_key, lam, s, t, "wrong column", (u, v))
                            )
                        col[u] = poly
                    if ti == 0:
                        ref[s] = col
                        for u, poly in col.items():
                            grid[mpos[u]][mpos[s]] = poly
                    elif ref[s] != col:
                        return coeffs, Report(
                            "C3", False, witness=(gen_key, lam, s, t, "t-dependent", None)
                        )
            coeffs.matrices[(gen_key, lam)] = PolyMatrix.from_rows(grid)
    return coeffs, Report("C3", True)


def validate_datum(datum: CellDatum, generators=None) -> dict:
    """Run all three axiom checks; raise ValidationFailed on the first failure."""
    r1 = check_C1(datum)
    if not r1:
        raise ValidationFailed(f"basis axiom failed: {r1.info}")
    r2 = check_C2(datum)
    if not r2:
        raise ValidationFailed(f"star axiom failed at {r2.witness}")
    gens = generators if generators is not None else list(range(datum.algebra.dimension))
    coeffs, r3 = check_C3(datum, gens)
    if not r3:
        raise ValidationFailed(f"multiplication axiom failed at {r3.witness}")
    return {"C1": r1, "C2": r2, "C3": r3, "coeffs": coeffs}


# ---------------------------------------------------------------------------
# cell modules, bilinear forms, semisimplicity


def cell_rho(datum: CellDatum, lam, a, verify: bool = True) -> PolyMatrix:
    """Action matrix of ``a`` on the cell module of lam."""
    solver = datum.solver()
    alg = datum.algebra
    elem = AlgebraElement.basis(a) if isinstance(a, int) else a
    ms = datum.mset(lam)
    mpos = {m: i for i, m in enumerate(ms)}
    grid = [[DeltaPoly.zero()] * len(ms) for _ in range(len(ms))]
    t_list = ms if verify else ms[:1]
    ref: dict = {}
    for s in ms:
        for ti, t in enumerate(t_list):
            prod = alg.mul(elem, datum.basis[(lam, s, t)])
            same, violating = _coords_split(datum, solver.coordinates(prod), lam)
            if violating:
                raise C3Violation(f"action escapes the cell ideal at ({lam}, {s}, {t})")
            col = {}
            for (u, v), poly in same.items():
                if v != t:
                    raise C3Violation(f"action hits a foreign column at ({lam}, {s}, {t})")
                col[u] = poly
            if ti == 0:
                ref[s] = col
                for u, poly in col.items():
                    grid[mpos[u]][mpos[s]] = poly
            elif ref[s] != col:
                raise C3Violation(f"structure coefficients depend on t at ({lam}, {s})")
    return PolyMatrix.from_rows(grid)


def phi_a(datum: CellDatum, lam, a=None, verify: bool = True) -> PolyMatrix:
    """Matrix of the bilinear form x, y -> form(x, a . y) on the cell of lam.

    Defined through C[s', s] . a . C[t, t'] = phi(s, t) C[s', t'] modulo
    the lower ideal; the scalar must not depend on (s', t'), which is
    checked when ``verify`` is set.  With ``a`` omitted the two basis
    elements are multiplied directly (no identity element needed).
    """
    solver = datum.solver()
    alg = datum.algebra
    mid = None
    if a is not None:
        mid = AlgebraElement.basis(a) if isinstance(a, int) else a
    ms = datum.mset(lam)
    k = len(ms)
    grid = [[DeltaPoly.zero()] * k for _ in range(k)]

    def read_phi(sp, s, t, tp) -> DeltaPoly:
        left = datum.basis[(lam, sp, s)]
        right = datum.basis[(lam, t, tp)]
        prod = alg.mul(left, alg.mul(mid, right)) if mid is not None else alg.mul(left, right)
        same, violating = _coords_split(datum, solver.coordinates(prod), lam)
        if violating:
            raise InconsistentForm(f"form value escapes the cell ideal at ({lam}, {s}, {t})")
        value = DeltaPoly.zero()
        for (u, v), poly in same.items():
            if (u, v) != (sp, tp):
                raise InconsistentForm(
                    f"product of cell elements is not a multiple of C[{sp}, {tp}]"
                )
            value = poly
        return value

    for si, s in enumerate(ms):
        for tj, t in enumerate(ms):
            value = read_phi(s, s, t, t)
            if verify:
                for sp in ms:
                    for tp in ms:
                        if read_phi(sp, s, t, tp) != value:
                            raise InconsistentForm(
                                f"form value varies with the outer indices at ({lam}, {s}, {t})"
                            )
            grid[si][tj] = value
    return PolyMatrix.from_rows(grid)


@dataclass
class CellModule:
    """One cell module: its basis labels, requested action matrices, and Gram form."""

    lam: object
    basis_labels: list
    actions: dict  # element index -> PolyMatrix
    gram: PolyMatrix


def cell_module(datum: CellDatum, lam, elements=None) -> CellModule:
    """Bundle the module data of one cell; actions for the given elements."""
    if elements is None:
        elements = range(datum.algebra.dimension)
    actions = {a: cell_rho(datum, lam, a, verify=False) for a in elements}
    return CellModule(
        lam=lam,
        basis_labels=list(datum.mset(lam)),
        actions=actions,
        gram=phi_a(datum, lam, a=None, verify=False),
    )


@dataclass
class GramVerdict:
    semisimple: bool
    dets: dict  # lam -> DeltaPoly (symbolic) or evaluated constant
    values: dict  # lam -> Fraction at the evaluation point


def semisimple_by_gram(datum: CellDatum, delta_value) -> GramVerdict:
    """Semisimplicity over Q at a rational delta: no Gram determinant vanishes."""
    delta_value = Fraction(delta_value)
    dets = {}
    values = {}
    semisimple = True
    for lam in datum.poset.labels:
        gram = phi_a(datum, lam, a=None)
        d = gram.det()
        dets[lam] = d
        val = d.eval(delta_value)
        values[lam] = val
        if val == 0:
            semisimple = False
    return GramVerdict(semisimple, dets, values)


@dataclass
class OracleVerdict:
    semisimple: bool
    trace_det: Fraction


def radical_oracle(semigroup, twisting: TwistingMap, delta_value=None) -> OracleVerdict:
    """Independent semisimplicity test via the regular-representation trace form.

    Over Q the algebra is semisimple iff the form (a, b) -> trace(L_a L_b)
    is nondegenerate.  trace(L_x L_y) counts z with x y z = z, weighted by
    alpha(y, z) alpha(x, yz).
    """
    tw = twisting if delta_value is None else twisting.at(delta_value)
    if tw.is_symbolic:
        raise ValueError("the trace-form oracle needs delta specialized to Q")
    n = semigroup.size
    T = semigroup.table
    vals = [[tw.alpha(x, y).constant_value() for y in range(n)] for x in range(n)]
    gram = [[Fraction(0)] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            acc = Fraction(0)
            row_y = T[y]
            for z in range(n):
                yz = int(row_y[z])
                if int(T[x, yz]) == z:
                    acc += vals[y][z] * vals[x][yz]
            gram[x][y] = acc
    det = _fraction_det(gram)
    return OracleVerdict(det != 0, det)


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        inv = Fraction(1) / pv
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                arow = a[r]
                crow = a[col]
                for c in range(col, n):
                    arow[c] -= f * crow[c]
    return det
