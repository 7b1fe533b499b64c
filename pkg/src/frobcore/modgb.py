"""Syzygy kernels over polynomial rings via module Groebner bases.

Solves for all coefficient tuples (c_0, ..., c_{d-1}) with
sum_j c_j * rows[j][i] lying in a given ideal for every constraint i.
Elements of the free module R^(n+d) are dicts {(position, monomial): coeff}
with the n constraint positions forming a dominant block, so the kernel
falls out by elimination: basis elements supported entirely on the carrier
block are exactly the syzygies.
"""

from . import _kernel as K
from .ring import Poly


def _term_cmp(a, b, split):
    """Positive when term key a = (pos, mono) is larger than b."""
    pa, ma = a
    pb, mb = b
    block_a = 0 if pa < split else 1
    block_b = 0 if pb < split else 1
    if block_a != block_b:
        return 1 if block_a == 0 else -1
    if pa != pb:
        return 1 if pa < pb else -1
    return K.mono_cmp(ma, mb, K.GREVLEX, 0)


def _lead(elem, split):
    best = None
    for key in elem:
        if best is None or _term_cmp(key, best, split) > 0:
            best = key
    return best


def _scale(elem, c, p):
    if c == 1:
        return dict(elem)
    return {k: (v * c) % p for k, v in elem.items()}


def _sub_shifted(target, src, coeff, mono, p):
    """target -= coeff * x^mono * src, in place."""
    for (pos, m), v in src.items():
        key = (pos, K.mono_mul(m, mono))
        nv = (target.get(key, 0) - coeff * v) % p
        if nv:
            target[key] = nv
        else:
            target.pop(key, None)


def _normal_form(elem, basis, split, p):
    out = {}
    work = dict(elem)
    while work:
        key = _lead(work, split)
        pos, mono = key
        coeff = work[key]
        hit = None
        for g, (gpos, gmono), ginv in basis:
            if gpos == pos and K.mono_divides(gmono, mono):
                hit = (g, gmono, ginv)
                break
        if hit is None:
            out[key] = coeff
            del work[key]
            continue
        g, gmono, ginv = hit
        shift = K.mono_div(mono, gmono)
        _sub_shifted(work, g, (coeff * ginv) % p, shift, p)
    return out


def _monic(elem, split, p):
    key = _lead(elem, split)
    inv = pow(elem[key], p - 2, p)
    return _scale(elem, inv, p)


def _module_groebner(seeds, split, p):
    basis = []  # (elem, lead key, inverse of lead coeff)

    def push(elem):
        if not elem:
            return
        elem = _monic(elem, split, p)
        key = _lead(elem, split)
        basis.append((elem, key, 1))

    for s in sorted(seeds, key=lambda e: sorted(e.items())):
        push(_normal_form(s, basis, split, p))

    pairs = [
        (i, j)
        for i in range(len(basis))
        for j in range(i + 1, len(basis))
        if basis[i][1][0] == basis[j][1][0]
    ]

    def pair_key(ij):
        i, j = ij
        lcm = K.mono_lcm(basis[i][1][1], basis[j][1][1])
        return (K.mono_deg(lcm), lcm, i, j)

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        (f, (pos, mf), _), (g, (_, mg), _) = basis[i], basis[j]
        lcm = K.mono_lcm(mf, mg)
        s = dict()
        _sub_shifted(s, g, p - 1, K.mono_div(lcm, mg), p)  # += g shifted
        _sub_shifted(s, f, 1, K.mono_div(lcm, mf), p)  # -= f shifted
        s = _normal_form(s, basis, split, p)
        if not s:
            continue
        s = _monic(s, split, p)
        key = _lead(s, split)
        new_index = len(basis)
        basis.append((s, key, 1))
        for k in range(new_index):
            if basis[k][1][0] == key[0]:
                pairs.append((k, new_index))

    # interreduce for canonical output
    changed = True
    elems = [b[0] for b in basis]
    while changed:
        changed = False
        for i in range(len(elems)):
            if not elems[i]:
                continue
            others = [
                (e, _lead(e, split), 1)
                for k, e in enumerate(elems)
                if k != i and e
            ]
            nf = _normal_form(elems[i], others, split, p)
            if nf != elems[i]:
                elems[i] = _monic(nf, split, p) if nf else {}
                changed = True
    return [e for e in elems if e]


def syzygy_kernel(rows, modulus=None):
    """All tuples (c_0..c_{d-1}) of polynomials with
    sum_j c_j * rows[j][i] in the modulus ideal for every i.

    rows: a list of d lists, each of n polynomials over one ring.
    modulus: an Ideal over the same ring, or None for the zero ideal.
    Returns a list of d-tuples of Poly generating the solution module.
    """
    if not rows:
        return []
    ring = rows[0][0].ring
    n = len(rows[0])
    d = len(rows)
    p = ring.p
    for r in rows:
        if len(r) != n:
            raise ValueError("ragged constraint matrix")
        for f in r:
            if f.ring != ring:
                raise ValueError("mixed rings in constraint matrix")

    zero_mono = (0,) * ring.nvars
    seeds = []
    for j, row in enumerate(rows):
        elem = {}
        for i, f in enumerate(row):
            for m, c in f.d.items():
                elem[(i, m)] = c
        elem[(n + j, zero_mono)] = 1
        seeds.append(elem)
    if modulus is not None:
        for g in modulus.groebner():
            for i in range(n):
                elem = {(i, m): c for m, c in g.d.items()}
                if elem:
                    seeds.append(elem)

    gb = _module_groebner(seeds, n, p)

    kernel = []
    for elem in gb:
        if any(pos < n for pos, _ in elem):
            continue
        comps = [dict() for _ in range(d)]
        for (pos, m), c in elem.items():
            comps[pos - n][m] = c
        kernel.append(tuple(Poly(ring, comp) for comp in comps))
    kernel.sort(key=lambda tup: tuple(str(f) for f in tup))
    return kernel
