"""Pure-Python arithmetic kernel.

Data model shared with the compiled twin (``_speedups``):

* monomial: tuple of non-negative ints, one slot per variable
* polynomial: dict mapping monomial -> coefficient in [1, p)  (never 0)
* order: an integer kind plus a block split —
  ``GREVLEX`` (0) graded reverse lexicographic,
  ``LEX`` (1) lexicographic,
  ``BLOCK`` (2) grevlex on the first ``split`` variables, ties broken by
  grevlex on the rest (an elimination order for the first block).

Every function here must behave identically to its compiled twin; the
backend test suite runs both against each other.
"""

BACKEND_NAME = "pure"

GREVLEX = 0
LEX = 1
BLOCK = 2


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b, i.e. a[i] <= b[i] for all i."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(b, a):
    """b / a componentwise; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def _cmp_grevlex(a, b, lo, hi):
    da = 0
    db = 0
    for i in range(lo, hi):
        da += a[i]
        db += b[i]
    if da != db:
        return 1 if da > db else -1
    for i in range(hi - 1, lo - 1, -1):
        if a[i] != b[i]:
            return 1 if a[i] < b[i] else -1
    return 0


def mono_cmp(a, b, okind, split):
    """-1, 0, or 1 as a <, ==, > b under the order."""
    n = len(a)
    if okind == GREVLEX:
        return _cmp_grevlex(a, b, 0, n)
    if okind == LEX:
        for i in range(n):
            if a[i] != b[i]:
                return 1 if a[i] > b[i] else -1
        return 0
    c = _cmp_grevlex(a, b, 0, split)
    if c:
        return c
    return _cmp_grevlex(a, b, split, n)


def leading_term(f, okind, split):
    """(monomial, coefficient) of the order-largest term; f must be nonempty."""
    best = None
    for m in f:
        if best is None or mono_cmp(m, best, okind, split) > 0:
            best = m
    return best, f[best]


def poly_add(f, g, p):
    out = dict(f)
    for m, c in g.items():
        s = (out.get(m, 0) + c) % p
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def poly_sub(f, g, p):
    out = dict(f)
    for m, c in g.items():
        s = (out.get(m, 0) - c) % p
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def poly_scale(f, c, p):
    c %= p
    if c == 0:
        return {}
    if c == 1:
        return dict(f)
    return {m: (v * c) % p for m, v in f.items()}


def poly_term_mul(f, c, m, p):
    """f * (c * x^m)."""
    c %= p
    if c == 0:
        return {}
    out = {}
    for fm, fc in f.items():
        v = (fc * c) % p
        if v:
            out[mono_mul(fm, m)] = v
    return out


def poly_mul(f, g, p):
    if len(f) > len(g):
        f, g = g, f
    out = {}
    for fm, fc in f.items():
        for gm, gc in g.items():
            m = mono_mul(fm, gm)
            s = (out.get(m, 0) + fc * gc) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def normal_form(f, reducers, okind, split, p):
    """Remainder of f on full division by reducers.

    ``reducers`` is a list of (poly, lead_monomial, inverse_lead_coeff)
    triples; every term of the result is divisible by no reducer lead.
    """
    work = dict(f)
    remainder = {}
    while work:
        m, c = leading_term(work, okind, split)
        hit = False
        for g, gm, ginv in reducers:
            if mono_divides(gm, m):
                work = poly_sub(
                    work, poly_term_mul(g, (c * ginv) % p, mono_div(m, gm), p), p
                )
                hit = True
                break
        if not hit:
            remainder[m] = c
            del work[m]
    return remainder


def s_poly(f, fm, fc, g, gm, gc, okind, split, p):
    """S-polynomial; fm/fc and gm/gc are the precomputed leading terms."""
    lcm = mono_lcm(fm, gm)
    a = poly_term_mul(f, gc, mono_div(lcm, fm), p)
    b = poly_term_mul(g, fc, mono_div(lcm, gm), p)
    return poly_sub(a, b, p)
