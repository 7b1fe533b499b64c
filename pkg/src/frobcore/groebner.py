"""Buchberger's algorithm with Gebauer-Moeller pair pruning and sugar selection.

Works on kernel-level term dicts; `Ideal` (ideals.py) provides the
object-level interface. Reduced bases are canonical: monic, fully
interreduced, sorted by descending leading monomial, so two ideals are
equal iff their reduced bases are equal lists.
"""

from . import _kernel as K


def _modinv(c, p):
    return pow(c, p - 2, p)


def _poly_sort_key(f, okind, split):
    # Any fixed total key; used only to make seeding order deterministic.
    return sorted(f.items())


def groebner_basis(gens, okind, split, p):
    """Reduced Groebner basis (list of dicts) of the ideal generated by gens."""
    seeds = [dict(f) for f in gens if f]
    seeds.sort(key=lambda f: _poly_sort_key(f, okind, split))

    G = []        # basis polynomials
    LT = []       # (monomial, coefficient) of each
    SUGAR = []    # sugar degree of each
    alive = []    # False once superseded during the main loop? (kept simple: always alive)
    pairs = []    # [lcm, sugar, i, j]

    def lt_of(f):
        return K.leading_term(f, okind, split)

    def add_generator(h, sugar_h):
        """Gebauer-Moeller update of the pair set with the new element h."""
        t = len(G)
        lm_h, lc_h = lt_of(h)
        deg_h = K.mono_deg(lm_h)

        candidates = []
        for i in range(t):
            lcm_i = K.mono_lcm(LT[i][0], lm_h)
            candidates.append([i, lcm_i])

        kept = []
        for idx, (i, lcm_i) in enumerate(candidates):
            coprime = lcm_i == K.mono_mul(LT[i][0], lm_h)
            if coprime:
                kept.append([i, lcm_i, True])
                continue
            dominated = False
            for jdx, (j, lcm_j) in enumerate(candidates):
                if j == i:
                    continue
                if K.mono_divides(lcm_j, lcm_i):
                    if lcm_j != lcm_i:
                        dominated = True
                        break
                    # equal lcm: keep only the first of the class
                    if jdx < idx and not _already_dropped(kept, candidates, jdx, lm_h, LT):
                        dominated = True
                        break
            if not dominated:
                kept.append([i, lcm_i, False])

        # prune old pairs using h
        surviving = []
        for lcm_ij, s_ij, i, j in pairs:
            if (
                K.mono_divides(lm_h, lcm_ij)
                and K.mono_lcm(LT[i][0], lm_h) != lcm_ij
                and K.mono_lcm(LT[j][0], lm_h) != lcm_ij
            ):
                continue
            surviving.append([lcm_ij, s_ij, i, j])
        pairs.clear()
        pairs.extend(surviving)

        for i, lcm_i, coprime in kept:
            if coprime:
                continue  # Buchberger's first criterion
            s = max(
                SUGAR[i] + K.mono_deg(lcm_i) - K.mono_deg(LT[i][0]),
                sugar_h + K.mono_deg(lcm_i) - deg_h,
            )
            pairs.append([lcm_i, s, i, t])

        G.append(h)
        LT.append((lm_h, lc_h))
        SUGAR.append(sugar_h)

    def _already_dropped(kept, candidates, jdx, lm_h, LTlist):
        # helper used only for the equal-lcm tie: j survives iff it is in kept
        j = candidates[jdx][0]
        return not any(entry[0] == j for entry in kept)

    for f in seeds:
        lm, lc = lt_of(f)
        f = K.poly_scale(f, _modinv(lc, p), p)
        add_generator(f, K.mono_deg(max(f, key=K.mono_deg)))

    while pairs:
        best = 0
        for idx in range(1, len(pairs)):
            a = pairs[idx]
            b = pairs[best]
            if a[1] < b[1]:
                best = idx
            elif a[1] == b[1]:
                c = K.mono_cmp(a[0], b[0], okind, split)
                if c < 0 or (c == 0 and (a[2], a[3]) < (b[2], b[3])):
                    best = idx
        lcm_ij, sugar_ij, i, j = pairs.pop(best)

        h = K.s_poly(G[i], LT[i][0], LT[i][1], G[j], LT[j][0], LT[j][1], okind, split, p)
        if not h:
            continue
        reducers = [(G[k], LT[k][0], _modinv(LT[k][1], p)) for k in range(len(G))]
        h = K.normal_form(h, reducers, okind, split, p)
        if not h:
            continue
        lm, lc = lt_of(h)
        h = K.poly_scale(h, _modinv(lc, p), p)
        add_generator(h, max(sugar_ij, K.mono_deg(max(h, key=K.mono_deg))))

    return _reduce_basis(G, okind, split, p)


def _reduce_basis(G, okind, split, p):
    """Minimalize, interreduce, sort; the canonical reduced basis."""
    if not G:
        return []
    items = []
    for f in G:
        lm, lc = K.leading_term(f, okind, split)
        items.append((f, lm, lc))

    minimal = []
    for idx, (f, lm, lc) in enumerate(items):
        redundant = False
        for jdx, (g, gm, gc) in enumerate(items):
            if idx == jdx:
                continue
            if K.mono_divides(gm, lm) and (gm != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append((f, lm, lc))

    changed = True
    while changed:
        changed = False
        nxt = []
        for idx, (f, lm, lc) in enumerate(minimal):
            reducers = [
                (g, gm, _modinv(gc, p))
                for jdx, (g, gm, gc) in enumerate(minimal)
                if jdx != idx
            ]
            r = K.normal_form(f, reducers, okind, split, p)
            if not r:
                changed = True
                continue
            rm, rc = K.leading_term(r, okind, split)
            r = K.poly_scale(r, _modinv(rc, p), p)
            if r != f:
                changed = True
            nxt.append((r, rm, 1))
        minimal = nxt

    minimal.sort(key=lambda t: _SortWrap(t[1], okind, split), reverse=True)
    return [f for f, lm, lc in minimal]


class _SortWrap:
    """Adapter so list.sort can use mono_cmp."""

    __slots__ = ("m", "okind", "split")

    def __init__(self, m, okind, split):
        self.m = m
        self.okind = okind
        self.split = split

    def __lt__(self, other):
        return K.mono_cmp(self.m, other.m, self.okind, self.split) < 0

    def __eq__(self, other):
        return self.m == other.m


def normal_form_of(f, basis, okind, split, p):
    """Remainder of f against an already-computed basis (list of dicts)."""
    if not f:
        return {}
    reducers = []
    for g in basis:
        gm, gc = K.leading_term(g, okind, split)
        reducers.append((g, gm, _modinv(gc, p)))
    return K.normal_form(f, reducers, okind, split, p)
