# cython: language_level=3
# Compiled twins of pure.py; the loop indices are C integers, the
# coefficient arithmetic stays generic Python object arithmetic.

BACKEND = "cython"


def convolve_trunc(list a, list b, Py_ssize_t n, zero):
    cdef Py_ssize_t i, j, la, lb, top
    cdef list out = [zero] * n
    la = len(a)
    if la > n:
        la = n
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = lb
        if top > n - i:
            top = n - i
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def convolve_full(list a, list b, zero):
    cdef Py_ssize_t i, j, la, lb
    la = len(a)
    lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef list out = [zero] * (la + lb - 1)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def series_inv(list a, Py_ssize_t n, lead_inv, zero):
    cdef Py_ssize_t k, j, la, top
    cdef list out = [zero] * n
    out[0] = lead_inv
    la = len(a)
    for k in range(1, n):
        acc = zero
        top = k
        if top > la - 1:
            top = la - 1
        for j in range(1, top + 1):
            aj = a[j]
            if aj:
                acc = acc + aj * out[k - j]
        if acc:
            out[k] = zero - lead_inv * acc
    return out
