# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py; same signatures, same semantics."""

from cpython cimport array
import array

cdef array.array _INT_TEMPLATE = array.array('i', [])


cdef inline array.array _as_int_array(object seq):
    if isinstance(seq, array.array):
        return <array.array> seq
    return array.array('i', seq)


def poly_mul(a, b, int q, mul_t, add_t):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef array.array aa = _as_int_array(a)
    cdef array.array bb = _as_int_array(b)
    cdef array.array oo = array.clone(_INT_TEMPLATE, na + nb - 1, True)
    cdef int[::1] av = aa, bv = bb, ov = oo
    cdef int[::1] mt = _as_int_array(mul_t)
    cdef int[::1] at = _as_int_array(add_t)
    cdef Py_ssize_t i, j
    cdef int ai, bj, row
    for i in range(na):
        ai = av[i]
        if ai == 0:
            continue
        row = ai * q
        for j in range(nb):
            bj = bv[j]
            if bj:
                ov[i + j] = at[ov[i + j] * q + mt[row + bj]]
    return list(oo)


def poly_divmod(f, g, int q, mul_t, sub_t, inv_t):
    cdef Py_ssize_t nf = len(f), ng = len(g)
    if nf < ng:
        return [], list(f)
    cdef array.array ff = array.array('i', f)
    cdef array.array gg = _as_int_array(g)
    cdef array.array qq = array.clone(_INT_TEMPLATE, nf - ng + 1, True)
    cdef int[::1] rv = ff, gv = gg, qv = qq
    cdef int[::1] mt = _as_int_array(mul_t)
    cdef int[::1] st = _as_int_array(sub_t)
    cdef int[::1] iv = _as_int_array(inv_t)
    cdef int lead_inv = iv[gv[ng - 1]]
    cdef Py_ssize_t top, shift, j
    cdef int c, factor, frow
    for top in range(nf - 1, ng - 2, -1):
        c = rv[top]
        if c == 0:
            continue
        factor = mt[c * q + lead_inv]
        shift = top - (ng - 1)
        qv[shift] = factor
        frow = factor * q
        for j in range(ng):
            rv[shift + j] = st[rv[shift + j] * q + mt[frow + gv[j]]]
    return list(qq), list(ff[: ng - 1])


def conv_coeff(a, b, Py_ssize_t n, int q, mul_t, add_t):
    cdef array.array aa = _as_int_array(a)
    cdef array.array bb = _as_int_array(b)
    cdef int[::1] av = aa, bv = bb
    cdef int[::1] mt = _as_int_array(mul_t)
    cdef int[::1] at = _as_int_array(add_t)
    cdef Py_ssize_t lo = n - len(b) + 1
    if lo < 0:
        lo = 0
    cdef Py_ssize_t hi = len(a) - 1
    if n < hi:
        hi = n
    cdef int acc = 0, ai, bj
    cdef Py_ssize_t i
    for i in range(lo, hi + 1):
        ai = av[i]
        if ai:
            bj = bv[n - i]
            if bj:
                acc = at[acc * q + mt[ai * q + bj]]
    return acc


def vec_addmul(dst, src, int c, int q, mul_t, add_t):
    if c == 0:
        return
    cdef array.array ss = _as_int_array(src)
    cdef int[::1] sv = ss
    cdef int[::1] mt = _as_int_array(mul_t)
    cdef int[::1] at = _as_int_array(add_t)
    cdef Py_ssize_t j, n = len(src)
    cdef int row = c * q, sj
    cdef int[::1] dv
    if isinstance(dst, array.array):
        dv = <array.array> dst
        for j in range(n):
            sj = sv[j]
            if sj:
                dv[j] = at[dv[j] * q + mt[row + sj]]
    else:
        for j in range(n):
            sj = sv[j]
            if sj:
                dst[j] = at[dst[j] * q + mt[row + sj]]
