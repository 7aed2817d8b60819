# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gray-code scan over one subcube of the hypercube.

Distances are kept as 128-bit integers scaled by D**2; the caller checks
that ``arity * (D + max|M|)**2`` fits before choosing this kernel.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"

cnp.import_array()

INT128_BUDGET_BITS = 126


def scan_block(cnp.int64_t[:, ::1] M, int64_t D, const uint8_t[::1] is_pos,
               const uint8_t[::1] table, int arity, int64_t start, int low,
               int64_t[::1] out_idx, uint8_t[::1] out_tie):
    """Visit inputs ``start .. start + 2**low - 1`` in reflected Gray order.

    Writes every failing input index to ``out_idx`` (and 1 in ``out_tie``
    when the POS and NEG minima are equal) and returns how many failed.
    """
    cdef Py_ssize_t m = M.shape[0]
    cdef Py_ssize_t i, j
    cdef int bit
    cdef int64_t k = start, t, steps = (<int64_t> 1) << low, nfail = 0
    cdef int128 acc, diff, best_pos, best_neg, d2 = (<int128> D) * D
    cdef bint has_pos = False, has_neg = False, seen_pos, seen_neg, want
    cdef int128* dist = <int128*> malloc(m * sizeof(int128))
    cdef int128* delta = <int128*> malloc(m * arity * sizeof(int128))
    if dist == NULL or delta == NULL:
        free(dist)
        free(delta)
        raise MemoryError()
    for i in range(m):
        if is_pos[i]:
            has_pos = True
        else:
            has_neg = True
    with nogil:
        for i in range(m):
            acc = 0
            for j in range(arity):
                diff = (<int128> D) * ((k >> (arity - 1 - j)) & 1) - M[i, j]
                acc += diff * diff
                delta[j * m + i] = d2 - 2 * (<int128> D) * M[i, j]
            dist[i] = acc
        t = 0
        while True:
            seen_pos = False
            seen_neg = False
            best_pos = 0
            best_neg = 0
            for i in range(m):
                if is_pos[i]:
                    if not seen_pos or dist[i] < best_pos:
                        best_pos = dist[i]
                        seen_pos = True
                else:
                    if not seen_neg or dist[i] < best_neg:
                        best_neg = dist[i]
                        seen_neg = True
            want = table[k] != 0
            if has_pos and has_neg:
                if best_pos == best_neg:
                    out_idx[nfail] = k
                    out_tie[nfail] = 1
                    nfail += 1
                elif (best_pos < best_neg) != want:
                    out_idx[nfail] = k
                    out_tie[nfail] = 0
                    nfail += 1
            elif has_pos != want:
                out_idx[nfail] = k
                out_tie[nfail] = 0
                nfail += 1
            t += 1
            if t == steps:
                break
            bit = 0
            while not ((t >> bit) & 1):
                bit += 1
            j = arity - 1 - bit
            if (k >> bit) & 1:
                k ^= (<int64_t> 1) << bit
                for i in range(m):
                    dist[i] -= delta[j * m + i]
            else:
                k ^= (<int64_t> 1) << bit
                for i in range(m):
                    dist[i] += delta[j * m + i]
    free(dist)
    free(delta)
    return nfail
