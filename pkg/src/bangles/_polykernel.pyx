# cython: language_level=3
"""Compiled twin of `_polypure`; same contract, same semantics.

Coefficients are Python ints (arbitrary precision is required), so the win
here is loop and dict-dispatch overhead, not numeric width.
"""


def add_merge(a: dict, b: dict) -> dict:
    """Coefficient-wise sum, zero terms pruned."""
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def mul_accum(a: dict, b: dict) -> dict:
    """Distributive product; exponent tuples add componentwise."""
    cdef Py_ssize_t n, i
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    for eb, cb in b.items():
        n = len(<tuple> eb)
        for ea, ca in a.items():
            e = tuple([(<tuple> ea)[i] + (<tuple> eb)[i] for i in range(n)])
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out
