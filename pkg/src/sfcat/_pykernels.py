"""Reference kernels for cyclotomic coefficient arithmetic.

A cyclotomic number a + b z + c z^2 + d z^3 (z^4 = -1) is stored as the
5-tuple ``(a, b, c, d, den)`` of Python ints with ``den > 0`` and the
gcd of all five entries equal to one.  A Laurent polynomial in pi is a
dict ``{exponent: 5-tuple}`` with no zero entries.
"""
from math import gcd


def cyc_norm(c0, c1, c2, c3, den):
    if not (c0 or c1 or c2 or c3):
        return None
    g = gcd(c0, c1, c2, c3, den)
    if g != 1:
        return (c0 // g, c1 // g, c2 // g, c3 // g, den // g)
    return (c0, c1, c2, c3, den)


def cyc_mul(a, b):
    a0, a1, a2, a3, ad = a
    b0, b1, b2, b3, bd = b
    return cyc_norm(
        a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
        a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
        a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ad * bd,
    )


def cyc_add(a, b):
    ad = a[4]
    bd = b[4]
    if ad == bd:
        return cyc_norm(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], ad)
    return cyc_norm(
        a[0] * bd + b[0] * ad,
        a[1] * bd + b[1] * ad,
        a[2] * bd + b[2] * ad,
        a[3] * bd + b[3] * ad,
        ad * bd,
    )


def laurent_add(x, y):
    if len(x) < len(y):
        x, y = y, x
    out = dict(x)
    for k, c in y.items():
        prev = out.get(k)
        if prev is None:
            out[k] = c
        else:
            s = cyc_add(prev, c)
            if s is None:
                del out[k]
            else:
                out[k] = s
    return out


def laurent_mul(x, y):
    out = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            p = cyc_mul(c1, c2)
            k = k1 + k2
            prev = out.get(k)
            if prev is None:
                out[k] = p
            else:
                s = cyc_add(prev, p)
                if s is None:
                    del out[k]
                else:
                    out[k] = s
    return out
