# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_pykernels``."""
from math import gcd


cdef inline object _norm(object c0, object c1, object c2, object c3, object den):
    if not (c0 or c1 or c2 or c3):
        return None
    g = gcd(c0, c1, c2, c3, den)
    if g != 1:
        return (c0 // g, c1 // g, c2 // g, c3 // g, den // g)
    return (c0, c1, c2, c3, den)


def cyc_norm(c0, c1, c2, c3, den):
    return _norm(c0, c1, c2, c3, den)


cdef inline object _mul(tuple a, tuple b):
    cdef object a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3]
    cdef object b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3]
    return _norm(
        a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
        a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
        a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        a[4] * b[4],
    )


cdef inline object _add(tuple a, tuple b):
    cdef object ad = a[4], bd = b[4]
    if ad == bd:
        return _norm(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], ad)
    return _norm(
        a[0] * bd + b[0] * ad,
        a[1] * bd + b[1] * ad,
        a[2] * bd + b[2] * ad,
        a[3] * bd + b[3] * ad,
        ad * bd,
    )


def cyc_mul(tuple a, tuple b):
    return _mul(a, b)


def cyc_add(tuple a, tuple b):
    return _add(a, b)


def laurent_add(dict x, dict y):
    if len(x) < len(y):
        x, y = y, x
    cdef dict out = dict(x)
    cdef object s
    for k, c in y.items():
        prev = out.get(k)
        if prev is None:
            out[k] = c
        else:
            s = _add(prev, c)
            if s is None:
                del out[k]
            else:
                out[k] = s
    return out


def laurent_mul(dict x, dict y):
    cdef dict out = {}
    cdef object p, s, prev
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            p = _mul(c1, c2)
            k = k1 + k2
            prev = out.get(k)
            if prev is None:
                out[k] = p
            else:
                s = _add(prev, p)
                if s is None:
                    del out[k]
                else:
                    out[k] = s
    return out
