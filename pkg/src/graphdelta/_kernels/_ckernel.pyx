# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled thinness kernel.  Mirrors ``_pykernel`` exactly."""

import numpy as np
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 UNIT = 8
cdef i64 INF = 1LL << 40


def pack_graph(dist, ends_a, ends_b):
    return (
        np.ascontiguousarray(dist, dtype=np.int64),
        np.ascontiguousarray(ends_a, dtype=np.int64),
        np.ascontiguousarray(ends_b, dtype=np.int64),
    )


def pack_path(segments):
    if not segments:
        return np.zeros((0, 3), dtype=np.int64)
    return np.ascontiguousarray(segments, dtype=np.int64).reshape(-1, 3)


cdef inline i64 _imin(i64 a, i64 b) nogil:
    return a if a < b else b


cdef inline i64 _imax(i64 a, i64 b) nogil:
    return a if a > b else b


cdef i64 _envelope(i64 c, i64 A2, i64 B2, i64* s1, i64* s2, int ns) noexcept nogil:
    cdef i64 v = _imin(A2 + c, B2 - c)
    cdef i64 d
    cdef int j
    for j in range(ns):
        d = _imax(_imax(2 * s1[j] - c, c - 2 * s2[j]), 0)
        if d < v:
            v = d
    return v


cdef void _scan(
    const i64[:, ::1] dist, const i64[::1] ea, const i64[::1] eb,
    i64 e, i64 a, i64 b, bint loop, const i64[:, ::1] src,
    i64* s1, i64* s2, int* ns_ptr, i64* da_ptr, i64* db_ptr,
) noexcept nogil:
    cdef i64 pe, pf, pt, plo, phi, pa, pb, x, y, near
    cdef Py_ssize_t r
    cdef int ns = ns_ptr[0]
    cdef i64 da = da_ptr[0], db = db_ptr[0]
    for r in range(src.shape[0]):
        pe = src[r, 0]
        pf = src[r, 1]
        pt = src[r, 2]
        if pf <= pt:
            plo = pf
            phi = pt
        else:
            plo = pt
            phi = pf
        if pe == e:
            s1[ns] = plo
            s2[ns] = phi
            ns += 1
            if loop:
                s1[ns] = plo - UNIT
                s2[ns] = phi - UNIT
                ns += 1
                s1[ns] = plo + UNIT
                s2[ns] = phi + UNIT
                ns += 1
            continue
        pa = ea[pe]
        pb = eb[pe]
        if pa == pb:
            near = plo if plo < UNIT - phi else UNIT - phi
            x = dist[a, pa] + near
            y = dist[b, pa] + near
        else:
            x = _imin(dist[a, pa] + plo, dist[a, pb] + UNIT - phi)
            y = _imin(dist[b, pa] + plo, dist[b, pb] + UNIT - phi)
        if x < da:
            da = x
        if y < db:
            db = y
    ns_ptr[0] = ns
    da_ptr[0] = da
    db_ptr[0] = db


cdef void _segment_sup(
    const i64[:, ::1] dist, const i64[::1] ea, const i64[::1] eb,
    i64 e, i64 frm, i64 to,
    const i64[:, ::1] oa, const i64[:, ::1] ob,
    i64* s1, i64* s2, i64* out_val, i64* out_pos,
) noexcept nogil:
    cdef i64 a = ea[e]
    cdef i64 b = eb[e]
    cdef bint loop = a == b
    cdef i64 da = INF, db = INF
    cdef int ns = 0
    _scan(dist, ea, eb, e, a, b, loop, oa, s1, s2, &ns, &da, &db)
    _scan(dist, ea, eb, e, a, b, loop, ob, s1, s2, &ns, &da, &db)
    if loop:
        db = da
    cdef i64 A2 = 2 * da
    cdef i64 B2 = 2 * (UNIT + db)
    cdef i64 lo2, hi2
    cdef bint asc = frm <= to
    if asc:
        lo2 = 2 * frm
        hi2 = 2 * to
    else:
        lo2 = 2 * to
        hi2 = 2 * frm
    # insertion sort spans by (start, end)
    cdef int i, j
    cdef i64 k1, k2
    for i in range(1, ns):
        k1 = s1[i]
        k2 = s2[i]
        j = i - 1
        while j >= 0 and (s1[j] > k1 or (s1[j] == k1 and s2[j] > k2)):
            s1[j + 1] = s1[j]
            s2[j + 1] = s2[j]
            j -= 1
        s1[j + 1] = k1
        s2[j + 1] = k2

    cdef i64 best = -1
    cdef i64 where = lo2 if asc else hi2
    cdef i64 c, v, prev_hi = 0
    cdef bint have_prev = False
    cdef int idx, nc
    cdef i64 cand[5]
    # endpoint and A/B crossing candidates
    cand[0] = lo2
    cand[1] = hi2
    nc = 2
    if da < INF:
        cand[2] = db + UNIT - da
        nc = 3
    for idx in range(nc):
        c = cand[idx]
        if c < lo2 or c > hi2:
            continue
        v = _envelope(c, A2, B2, s1, s2, ns)
        if v > best or (v == best and ((asc and c < where) or (not asc and c > where))):
            best = v
            where = c
    for i in range(ns):
        nc = 0
        cand[nc] = 2 * s1[i]
        nc += 1
        cand[nc] = 2 * s2[i]
        nc += 1
        if da < INF:
            cand[nc] = s1[i] - da
            nc += 1
            cand[nc] = UNIT + db + s2[i]
            nc += 1
        if have_prev and prev_hi < s1[i]:
            cand[nc] = prev_hi + s1[i]
            nc += 1
        if not have_prev or s2[i] > prev_hi:
            prev_hi = s2[i]
            have_prev = True
        for idx in range(nc):
            c = cand[idx]
            if c < lo2 or c > hi2:
                continue
            v = _envelope(c, A2, B2, s1, s2, ns)
            if v > best or (v == best and ((asc and c < where) or (not asc and c > where))):
                best = v
                where = c
    out_val[0] = best
    out_pos[0] = where


cdef i64 _side_sup(
    const i64[:, ::1] dist, const i64[::1] ea, const i64[::1] eb,
    const i64[:, ::1] side, const i64[:, ::1] oa, const i64[:, ::1] ob,
    i64* buf1, i64* buf2, i64* out_k, i64* out_pos,
) noexcept nogil:
    cdef i64 best = -1, val, pos
    cdef Py_ssize_t k
    for k in range(side.shape[0]):
        _segment_sup(dist, ea, eb, side[k, 0], side[k, 1], side[k, 2],
                     oa, ob, buf1, buf2, &val, &pos)
        if val > best:
            best = val
            out_k[0] = k
            out_pos[0] = pos
    return best


def triangle_sup(gp, s0, s1, s2):
    """Exact thinness of a triangle; see ``_pykernel.triangle_sup``."""
    cdef const i64[:, ::1] dist = gp[0]
    cdef const i64[::1] ea = gp[1]
    cdef const i64[::1] eb = gp[2]
    cdef const i64[:, ::1] v0 = s0
    cdef const i64[:, ::1] v1 = s1
    cdef const i64[:, ::1] v2 = s2
    cdef Py_ssize_t total = v0.shape[0] + v1.shape[0] + v2.shape[0]
    cdef i64* buf1 = <i64*> malloc((3 * total + 1) * sizeof(i64))
    cdef i64* buf2 = <i64*> malloc((3 * total + 1) * sizeof(i64))
    if buf1 == NULL or buf2 == NULL:
        free(buf1)
        free(buf2)
        raise MemoryError()
    cdef i64 best = -1, bi = 0, bk = -1, bpos = 0
    cdef i64 val, k = -1, pos = 0
    with nogil:
        val = _side_sup(dist, ea, eb, v0, v1, v2, buf1, buf2, &k, &pos)
        if val > best:
            best = val
            bi = 0
            bk = k
            bpos = pos
        val = _side_sup(dist, ea, eb, v1, v2, v0, buf1, buf2, &k, &pos)
        if val > best:
            best = val
            bi = 1
            bk = k
            bpos = pos
        val = _side_sup(dist, ea, eb, v2, v0, v1, buf1, buf2, &k, &pos)
        if val > best:
            best = val
            bi = 2
            bk = k
            bpos = pos
    free(buf1)
    free(buf2)
    return (best, bi, bk, bpos)
