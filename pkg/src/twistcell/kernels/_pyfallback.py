"""Pure-Python diagram-composition kernel (fallback for the compiled core)."""

from __future__ import annotations

import numpy as np


def _find(parent: list, i: int) -> int:
    # path halving
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def compose(pa: bytes, pb: bytes, n: int) -> tuple[bytes, int]:
    """Stack diagram ``pa`` on top of ``pb``.

    Returns the normalized vector of the product together with the number
    of connected components confined to the glued middle row.
    """
    two_n = 2 * n
    total = 3 * n
    parent = list(range(total))

    # nodes: 0..n-1 top, n..2n-1 middle, 2n..3n-1 bottom.
    # pa lives on top+middle, pb on middle+bottom.
    first: dict[int, int] = {}
    for p in range(two_n):
        node = p  # top point p -> node p; bottom point p -> middle node p
        blk = pa[p]
        root = first.setdefault(blk, node)
        if root != node:
            ra, rb = _find(parent, root), _find(parent, node)
            if ra != rb:
                parent[rb] = ra
    first.clear()
    for p in range(two_n):
        node = p + n  # top of pb -> middle node; bottom of pb -> bottom node
        blk = pb[p]
        root = first.setdefault(blk, node)
        if root != node:
            ra, rb = _find(parent, root), _find(parent, node)
            if ra != rb:
                parent[rb] = ra

    touched_outside = set()
    for i in range(n):
        touched_outside.add(_find(parent, i))
    for i in range(two_n, total):
        touched_outside.add(_find(parent, i))
    middle_roots = {_find(parent, i) for i in range(n, two_n)}
    m = len(middle_roots - touched_outside)

    out = bytearray(two_n)
    ids: dict[int, int] = {}
    for p in range(two_n):
        node = p if p < n else p + n
        root = _find(parent, node)
        out[p] = ids.setdefault(root, len(ids))
    return bytes(out), m


def build_tables(vectors: list[bytes], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Full multiplication and middle-count tables for a closed set of diagrams."""
    size = len(vectors)
    index = {v: i for i, v in enumerate(vectors)}
    table = np.empty((size, size), dtype=np.int32)
    mtable = np.empty((size, size), dtype=np.int16)
    for i, va in enumerate(vectors):
        for j, vb in enumerate(vectors):
            vc, m = compose(va, vb, n)
            try:
                table[i, j] = index[vc]
            except KeyError:
                raise ValueError("diagram set is not closed under composition")
            mtable[i, j] = m
    return table, mtable
