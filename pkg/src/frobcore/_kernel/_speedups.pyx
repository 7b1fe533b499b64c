# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernel; the semantics twin of ``pure``.

Same data model: monomials are tuples of ints, polynomials are dicts
monomial -> coefficient in [1, p), orders are (kind, split) pairs with
kinds GREVLEX (0), LEX (1), BLOCK (2).
"""

BACKEND_NAME = "speedups"

GREVLEX = 0
LEX = 1
BLOCK = 2


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long> a[i] + <long> b[i]
    return tuple(out)


cpdef bint mono_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


cpdef tuple mono_div(tuple b, tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long> b[i] - <long> a[i]
    return tuple(out)


cpdef tuple mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long x, y
    cdef list out = [0] * n
    for i in range(n):
        x = <long> a[i]
        y = <long> b[i]
        out[i] = x if x > y else y
    return tuple(out)


cpdef long mono_deg(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef long d = 0
    for i in range(n):
        d += <long> a[i]
    return d


cdef int _cmp_grevlex(tuple a, tuple b, Py_ssize_t lo, Py_ssize_t hi):
    cdef long da = 0, db = 0
    cdef Py_ssize_t i
    cdef long x, y
    for i in range(lo, hi):
        da += <long> a[i]
        db += <long> b[i]
    if da != db:
        return 1 if da > db else -1
    for i in range(hi - 1, lo - 1, -1):
        x = <long> a[i]
        y = <long> b[i]
        if x != y:
            return 1 if x < y else -1
    return 0


cpdef int mono_cmp(tuple a, tuple b, int okind, int split):
    cdef Py_ssize_t i, n = len(a)
    cdef long x, y
    cdef int c
    if okind == 0:
        return _cmp_grevlex(a, b, 0, n)
    if okind == 1:
        for i in range(n):
            x = <long> a[i]
            y = <long> b[i]
            if x != y:
                return 1 if x > y else -1
        return 0
    c = _cmp_grevlex(a, b, 0, split)
    if c:
        return c
    return _cmp_grevlex(a, b, split, n)


cpdef tuple leading_term(dict f, int okind, int split):
    cdef tuple best = None
    cdef tuple m
    for m in f:
        if best is None or mono_cmp(m, best, okind, split) > 0:
            best = m
    return best, f[best]


cpdef dict poly_add(dict f, dict g, long p):
    cdef dict out = dict(f)
    cdef tuple m
    cdef long c, s
    for m, c in g.items():
        s = (<long> out.get(m, 0) + c) % p
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


cpdef dict poly_sub(dict f, dict g, long p):
    cdef dict out = dict(f)
    cdef tuple m
    cdef long c, s
    for m, c in g.items():
        s = (<long> out.get(m, 0) - c) % p
        if s < 0:
            s += p
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


cpdef dict poly_scale(dict f, long c, long p):
    cdef dict out = {}
    cdef tuple m
    cdef long v
    c %= p
    if c < 0:
        c += p
    if c == 0:
        return out
    if c == 1:
        return dict(f)
    for m, v in f.items():
        out[m] = (v * c) % p
    return out


cpdef dict poly_term_mul(dict f, long c, tuple m, long p):
    cdef dict out = {}
    cdef tuple fm
    cdef long fc, v
    c %= p
    if c < 0:
        c += p
    if c == 0:
        return out
    for fm, fc in f.items():
        v = (fc * c) % p
        if v:
            out[mono_mul(fm, m)] = v
    return out


cpdef dict poly_mul(dict f, dict g, long p):
    cdef dict out = {}
    cdef tuple fm, gm, m
    cdef long fc, gc, s
    if len(f) > len(g):
        f, g = g, f
    for fm, fc in f.items():
        for gm, gc in g.items():
            m = mono_mul(fm, gm)
            s = (<long> out.get(m, 0) + fc * gc) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


cpdef dict normal_form(dict f, list reducers, int okind, int split, long p):
    cdef dict work = dict(f)
    cdef dict remainder = {}
    cdef dict g
    cdef tuple m, gm
    cdef long c, ginv
    cdef bint hit
    cdef tuple tri
    while work:
        m, c = leading_term(work, okind, split)
        hit = False
        for tri in reducers:
            g = <dict> tri[0]
            gm = <tuple> tri[1]
            if mono_divides(gm, m):
                ginv = <long> tri[2]
                work = poly_sub(work, poly_term_mul(g, (c * ginv) % p, mono_div(m, gm), p), p)
                hit = True
                break
        if not hit:
            remainder[m] = c
            del work[m]
    return remainder


cpdef dict s_poly(dict f, tuple fm, long fc, dict g, tuple gm, long gc, int okind, int split, long p):
    cdef tuple lcm = mono_lcm(fm, gm)
    cdef dict a = poly_term_mul(f, gc, mono_div(lcm, fm), p)
    cdef dict b = poly_term_mul(g, fc, mono_div(lcm, gm), p)
    return poly_sub(a, b, p)
