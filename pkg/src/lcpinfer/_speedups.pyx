# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled kernels. Contract matches _kernels_py; see there for semantics."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef int _fill(object codes, int** out_codes, Py_ssize_t* out_n) except -1:
    cdef Py_ssize_t n = len(codes)
    cdef int* buf = <int*> PyMem_Malloc(n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = codes[i]
    out_codes[0] = buf
    out_n[0] = n
    return 0


def standard_permutation(codes):
    cdef int* c = NULL
    cdef Py_ssize_t n = 0
    _fill(codes, &c, &n)
    cdef Py_ssize_t i
    cdef int lo = 0, hi = 0
    try:
        for i in range(n):
            if c[i] < lo:
                lo = c[i]
            if c[i] > hi:
                hi = c[i]
        return _counting_argsort(c, n, lo, hi)
    finally:
        PyMem_Free(c)


cdef list _counting_argsort(int* c, Py_ssize_t n, int lo, int hi):
    cdef Py_ssize_t width = hi - lo + 1
    cdef Py_ssize_t* count = <Py_ssize_t*> PyMem_Malloc(width * sizeof(Py_ssize_t))
    if count == NULL:
        raise MemoryError()
    cdef list psi = [0] * n
    cdef Py_ssize_t i, pos
    try:
        for i in range(width):
            count[i] = 0
        for i in range(n):
            count[c[i] - lo] += 1
        pos = 0
        for i in range(width):
            pos, count[i] = pos + count[i], pos
        for i in range(n):
            psi[count[c[i] - lo]] = i
            count[c[i] - lo] += 1
        return psi
    finally:
        PyMem_Free(count)


def lcp_from_bwt(codes):
    cdef int* c = NULL
    cdef Py_ssize_t n = 0
    _fill(codes, &c, &n)
    cdef Py_ssize_t* psi = NULL
    cdef int* vhat = NULL
    cdef Py_ssize_t* clen = NULL
    cdef Py_ssize_t i, x, start, length, p, q, t, bound
    cdef int lo = 0, hi = 0
    cdef list order, out
    try:
        for i in range(n):
            if c[i] < lo:
                lo = c[i]
            if c[i] > hi:
                hi = c[i]
        order = _counting_argsort(c, n, lo, hi)
        psi = <Py_ssize_t*> PyMem_Malloc(n * sizeof(Py_ssize_t))
        vhat = <int*> PyMem_Malloc(n * sizeof(int))
        clen = <Py_ssize_t*> PyMem_Malloc(n * sizeof(Py_ssize_t))
        if psi == NULL or vhat == NULL or clen == NULL:
            raise MemoryError()
        for i in range(n):
            psi[i] = order[i]
            vhat[i] = c[order[i]]
            clen[i] = 0
        for start in range(n):
            if clen[start] != 0:
                continue
            length = 0
            x = start
            while clen[x] == 0:
                clen[x] = -1
                x = psi[x]
                length += 1
            x = start
            while clen[x] == -1:
                clen[x] = length
                x = psi[x]
        out = [0] * (n - 1 if n > 0 else 0)
        for i in range(1, n):
            p = i - 1
            q = i
            bound = clen[p] + clen[q]
            t = 0
            while t < bound and vhat[p] == vhat[q]:
                p = psi[p]
                q = psi[q]
                t += 1
            out[i - 1] = -1 if t == bound else t
        return out
    finally:
        PyMem_Free(c)
        PyMem_Free(psi)
        PyMem_Free(vhat)
        PyMem_Free(clen)
