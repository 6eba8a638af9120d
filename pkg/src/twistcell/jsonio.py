"""Canonical JSON forms for the CLI.

All rationals travel as decimal-free "p/q" strings; polynomials as
coefficient lists; diagrams as block lists; element order and key order
are fixed so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json

from .diagrams import DiagramMonoid, SetPartition
from .polyring import DeltaPoly, PolyMatrix
from .twisted import AlgebraElement


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def tuplify(value):
    if isinstance(value, list):
        return tuple(tuplify(v) for v in value)
    return value


def listify(value):
    if isinstance(value, tuple):
        return [listify(v) for v in value]
    return value


def monoid_to_json(monoid: DiagramMonoid) -> dict:
    return {
        "kind": monoid.kind,
        "n": monoid.n,
        "size": monoid.size,
        "identity": monoid.identity_index,
        "elements": [x.to_json() for x in monoid.elements],
        "table": monoid.semigroup.table.tolist(),
        "m_table": monoid.m_table.tolist(),
    }


def monoid_components_from_json(data: dict) -> dict:
    return {
        "kind": data["kind"],
        "n": data["n"],
        "size": data["size"],
        "identity": data["identity"],
        "elements": [SetPartition.from_json(e) for e in data["elements"]],
        "table": data["table"],
        "m_table": data["m_table"],
    }


def datum_to_json(datum) -> dict:
    labels = datum.poset.labels
    label_pos = {lab: i for i, lab in enumerate(labels)}
    cells = [
        {"label": listify(lab), "mset": [listify(m) for m in datum.msets[lab]]}
        for lab in labels
    ]
    mset_pos = {
        lab: {m: i for i, m in enumerate(datum.msets[lab])} for lab in labels
    }
    basis = []
    for lab in labels:
        ms = datum.msets[lab]
        for s in ms:
            for t in ms:
                basis.append(
                    {
                        "cell": label_pos[lab],
                        "s": mset_pos[lab][s],
                        "t": mset_pos[lab][t],
                        "element": datum.basis[(lab, s, t)].to_json(),
                    }
                )
    return {
        "dimension": datum.dimension,
        "metadata": dict(sorted(datum.metadata.items())),
        "cells": cells,
        "less_pairs": sorted(list(p) for p in datum.poset.strict),
        "basis": basis,
    }


def datum_components_from_json(data: dict) -> dict:
    labels = [tuplify(c["label"]) for c in data["cells"]]
    msets = {
        lab: [tuplify(m) for m in cell["mset"]]
        for lab, cell in zip(labels, data["cells"])
    }
    basis = {}
    for rec in data["basis"]:
        lab = labels[rec["cell"]]
        s = msets[lab][rec["s"]]
        t = msets[lab][rec["t"]]
        basis[(lab, s, t)] = AlgebraElement.from_json(rec["element"])
    return {
        "labels": labels,
        "less_pairs": {tuple(p) for p in data["less_pairs"]},
        "msets": msets,
        "basis": basis,
        "metadata": data["metadata"],
    }


def poly_matrix_to_json(m: PolyMatrix) -> dict:
    return m.to_json()


def report_to_json(report) -> dict:
    out = {"name": report.name, "ok": report.ok}
    if report.witness is not None:
        out["witness"] = listify(report.witness) if isinstance(report.witness, tuple) else report.witness
    if report.info:
        out["info"] = {
            k: (str(v) if isinstance(v, DeltaPoly) else listify(v) if isinstance(v, tuple) else v)
            for k, v in report.info.items()
        }
    return out
