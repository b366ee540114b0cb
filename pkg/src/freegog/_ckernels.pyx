# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled letter kernels; same contracts as ``_pykernels``."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef inline tuple _as_tuple(Py_ssize_t n, long *buf):
    cdef list tmp = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        tmp[i] = buf[i]
    return tuple(tmp)


def free_reduce(letters):
    cdef Py_ssize_t n = len(letters)
    cdef long *buf = <long *> PyMem_Malloc((n + 1) * sizeof(long))
    cdef Py_ssize_t top = 0
    cdef long x
    if buf == NULL:
        raise MemoryError()
    try:
        for obj in letters:
            x = obj
            if top and buf[top - 1] == -x:
                top -= 1
            else:
                buf[top] = x
                top += 1
        return _as_tuple(top, buf)
    finally:
        PyMem_Free(buf)


def multiply(tuple u, tuple v):
    cdef Py_ssize_t lu = len(u)
    cdef Py_ssize_t lv = len(v)
    cdef Py_ssize_t n = lu if lu < lv else lv
    cdef Py_ssize_t i = 0
    while i < n and <long> u[lu - 1 - i] == -(<long> v[i]):
        i += 1
    if i == 0:
        return u + v
    return u[:lu - i] + v[i:]


def inverse(tuple u):
    cdef Py_ssize_t n = len(u)
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = -(<long> u[n - 1 - i])
    return tuple(out)


def power(tuple u, long k):
    if k < 0:
        u = inverse(u)
        k = -k
    cdef tuple out = ()
    cdef tuple base = u
    while k:
        if k & 1:
            out = multiply(out, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return out


def substitute(letters, pos_images, neg_images):
    cdef Py_ssize_t total = 0
    cdef long x, y
    cdef tuple img
    for obj in letters:
        x = obj
        if x > 0:
            total += len(<tuple> pos_images[x - 1])
        else:
            total += len(<tuple> neg_images[-x - 1])
    cdef long *buf = <long *> PyMem_Malloc((total + 1) * sizeof(long))
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t j, m
    if buf == NULL:
        raise MemoryError()
    try:
        for obj in letters:
            x = obj
            if x > 0:
                img = <tuple> pos_images[x - 1]
            else:
                img = <tuple> neg_images[-x - 1]
            m = len(img)
            for j in range(m):
                y = <long> img[j]
                if top and buf[top - 1] == -y:
                    top -= 1
                else:
                    buf[top] = y
                    top += 1
        return _as_tuple(top, buf)
    finally:
        PyMem_Free(buf)


def peel_count(tuple u):
    cdef Py_ssize_t n = len(u)
    cdef Py_ssize_t k = 0
    while 2 * k + 1 < n and <long> u[k] == -(<long> u[n - 1 - k]):
        k += 1
    return k
