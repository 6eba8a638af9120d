# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled diagram-composition kernel (see _pyfallback for the reference
semantics; the two implementations must agree bit for bit)."""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np


cdef inline int _find(int* parent, int i) nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


cdef int _compose_raw(
    const unsigned char* pa,
    const unsigned char* pb,
    int n,
    int* parent,
    int* first,
    unsigned char* out,
    int* ids,
) nogil:
    """Compose into ``out``; returns the middle-component count."""
    cdef int two_n = 2 * n
    cdef int total = 3 * n
    cdef int p, node, blk, root, ra, rb, m, i
    for i in range(total):
        parent[i] = i

    # pa occupies nodes 0..2n-1; block-id workspace tracks first occurrence
    for i in range(two_n):
        first[i] = -1
    for p in range(two_n):
        blk = pa[p]
        node = p
        if first[blk] < 0:
            first[blk] = node
        else:
            ra = _find(parent, first[blk])
            rb = _find(parent, node)
            if ra != rb:
                parent[rb] = ra
    for i in range(two_n):
        first[i] = -1
    for p in range(two_n):
        blk = pb[p]
        node = p + n
        if first[blk] < 0:
            first[blk] = node
        else:
            ra = _find(parent, first[blk])
            rb = _find(parent, node)
            if ra != rb:
                parent[rb] = ra

    # count components confined to the middle row; reuse `first` as flags:
    # 1 marks a root seen from outside, 2 a middle-only root already counted
    for i in range(total):
        first[i] = 0
    for i in range(n):
        first[_find(parent, i)] = 1
    for i in range(two_n, total):
        first[_find(parent, i)] = 1
    m = 0
    for i in range(n, two_n):
        root = _find(parent, i)
        if first[root] == 0:
            first[root] = 2
            m += 1

    # normalized output vector over the surviving 2n points
    for i in range(total):
        ids[i] = -1
    blk = 0
    for p in range(two_n):
        node = p if p < n else p + n
        root = _find(parent, node)
        if ids[root] < 0:
            ids[root] = blk
            blk += 1
        out[p] = <unsigned char> ids[root]
    return m


def compose(bytes pa, bytes pb, int n):
    """Stack diagram ``pa`` on top of ``pb``.

    Returns the normalized vector of the product together with the number
    of connected components confined to the glued middle row.
    """
    cdef int two_n = 2 * n
    cdef int total = 3 * n
    cdef const unsigned char* a = pa
    cdef const unsigned char* b = pb
    cdef int* parent = <int*> malloc(total * sizeof(int))
    cdef int* first = <int*> malloc(total * sizeof(int))
    cdef int* ids = <int*> malloc(total * sizeof(int))
    cdef unsigned char* out = <unsigned char*> malloc(two_n)
    if parent == NULL or first == NULL or ids == NULL or out == NULL:
        free(parent); free(first); free(ids); free(out)
        raise MemoryError()
    try:
        m = _compose_raw(a, b, n, parent, first, out, ids)
        return out[:two_n], m
    finally:
        free(parent)
        free(first)
        free(ids)
        free(out)


def build_tables(list vectors, int n):
    """Full multiplication and middle-count tables for a closed set of diagrams."""
    cdef int size = len(vectors)
    cdef int two_n = 2 * n
    cdef int total = 3 * n
    index = {v: i for i, v in enumerate(vectors)}
    table = np.empty((size, size), dtype=np.int32)
    mtable = np.empty((size, size), dtype=np.int16)
    cdef int[:, ::1] table_view = table
    cdef short[:, ::1] mtable_view = mtable
    cdef int* parent = <int*> malloc(total * sizeof(int))
    cdef int* first = <int*> malloc(total * sizeof(int))
    cdef int* ids = <int*> malloc(total * sizeof(int))
    cdef unsigned char* out = <unsigned char*> malloc(two_n)
    if parent == NULL or first == NULL or ids == NULL or out == NULL:
        free(parent); free(first); free(ids); free(out)
        raise MemoryError()
    cdef int i, j, m
    cdef const unsigned char* va
    cdef const unsigned char* vb
    try:
        for i in range(size):
            va = <bytes> vectors[i]
            for j in range(size):
                vb = <bytes> vectors[j]
                m = _compose_raw(va, vb, n, parent, first, out, ids)
                key = out[:two_n]
                hit = index.get(key)
                if hit is None:
                    raise ValueError("diagram set is not closed under composition")
                table_view[i, j] = <int> hit
                mtable_view[i, j] = <short> m
        return table, mtable
    finally:
        free(parent)
        free(first)
        free(ids)
        free(out)
