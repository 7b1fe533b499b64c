"""Minimal primes and radicals of desk-scale ideals.

Recursive generator splitting: monomial-content splits, p-th-root
simplification, univariate factorization, substitution along linear
generators, free-variable reduction, zero-dimensional splitting via
minimal polynomials (with a field certificate for primality), and
bivariate root-search factorization with a completeness bound. Inputs
outside these moves raise DecompositionOutOfScope rather than guessing.
"""

import itertools
import random

from . import _kernel as K
from . import factor as UF
from .errors import DecompositionOutOfScope
from .ideals import Ideal, standard_monomials
from .ring import Poly, PolyRing

_MAX_DEPTH = 64
_ENUM_CAP = 4096
_ZDIM_RANDOM_TRIES = 8


def minimal_primes(ideal):
    """The minimal primes over the ideal, deduped, as a canonically sorted list."""
    found = _decompose(ideal, _MAX_DEPTH)
    uniq = []
    for P in found:
        if not any(P == Q for Q in uniq):
            uniq.append(P)
    minimal = [
        P
        for P in uniq
        if not any(Q is not P and P.contains_ideal(Q) and P != Q for Q in uniq)
    ]
    minimal.sort(key=lambda P: P.canonical_key())
    return minimal


def radical(ideal):
    """Intersection of the minimal primes."""
    primes = minimal_primes(ideal)
    if not primes:
        return Ideal(ideal.ring, [ideal.ring.one()])
    out = primes[0]
    for P in primes[1:]:
        out = out.intersect(P)
    return out


def is_prime(ideal):
    if ideal.is_unit():
        return False
    primes = minimal_primes(ideal)
    return len(primes) == 1 and primes[0] == ideal


def is_radical(ideal):
    return radical(ideal) == ideal


# --- the recursion ---------------------------------------------------------


def _decompose(ideal, depth):
    if depth <= 0:
        raise DecompositionOutOfScope("decomposition recursion budget exhausted")
    ring = ideal.ring
    gb = list(ideal.groebner())
    if any(g.is_one() for g in gb):
        return []
    if not gb:
        return [Ideal(ring, [])]  # the zero ideal of a polynomial ring is prime

    # -- simplification and generator splits --------------------------------
    for idx, g in enumerate(gb):
        simplified = _pth_root_iterate(g)
        if simplified is not g:
            rest = gb[:idx] + [simplified] + gb[idx + 1:]
            return _decompose(Ideal(ring, rest), depth - 1)

    for g in gb:
        content = _monomial_content(g)
        if not any(content):
            continue
        rest = [h for h in gb if h != g]
        stripped = Poly(ring, {K.mono_div(m, content): c for m, c in g.d.items()})
        if stripped.is_one():
            # g is a single monomial; a plain variable needs no split
            if sum(content) == 1:
                continue
            branches = [
                Ideal(ring, rest + [ring.gen(i)]) for i, e in enumerate(content) if e
            ]
        else:
            # in a reduced basis the stripped part is never already inside,
            # so every branch strictly enlarges the ideal
            branches = [
                Ideal(ring, rest + [ring.gen(i)]) for i, e in enumerate(content) if e
            ]
            branches.append(Ideal(ring, rest + [stripped]))
        out = []
        for b in branches:
            out.extend(_decompose(b, depth - 1))
        return out

    for idx, g in enumerate(gb):
        used = g.vars_used()
        if len(used) == 1:
            i = used[0]
            coeffs = g.to_univariate(i)
            _, factors = UF.factor(coeffs, ring.p)
            if len(factors) == 1 and factors[0][1] == 1:
                continue  # already irreducible
            out = []
            if len(factors) == 1:
                h = Poly.from_univariate(ring, factors[0][0], i)
                rest = gb[:idx] + [h] + gb[idx + 1:]
                return _decompose(Ideal(ring, rest), depth - 1)
            for fac, _ in factors:
                h = Poly.from_univariate(ring, fac, i)
                out.extend(_decompose(Ideal(ring, gb + [h]), depth - 1))
            return out

    # -- substitution along a linear generator ------------------------------
    if ring.nvars >= 2:
        for g in gb:
            lin = _linear_in(g)
            if lin is None:
                continue
            i, c, rest = lin
            inv = pow(c, ring.p - 2, ring.p)
            value = Poly(ring, K.poly_scale(rest.d, (ring.p - inv) % ring.p, ring.p))
            small = _ring_without(ring, i)
            small_gens = []
            for h in gb:
                if h == g:
                    continue
                small_gens.append(_drop_var(h.substitute({i: value}), small, i))
            out = []
            for P in _decompose(Ideal(small, small_gens), depth - 1):
                lifted = [_lift_var(q, ring, i) for q in P.gens]
                out.append(Ideal(ring, lifted + [g]))
            return out

    # -- free variables -------------------------------------------------------
    used = set()
    for g in gb:
        used.update(g.vars_used())
    if ring.nvars >= 2 and len(used) < ring.nvars:
        i = next(j for j in range(ring.nvars) if j not in used)
        small = _ring_without(ring, i)
        small_gens = [_drop_var(g, small, i) for g in gb]
        out = []
        for P in _decompose(Ideal(small, small_gens), depth - 1):
            out.append(Ideal(ring, [_lift_var(q, ring, i) for q in P.gens]))
        return out

    # -- zero-dimensional splitting -------------------------------------------
    sm = standard_monomials(ideal)
    if sm is not None:
        return _decompose_zero_dimensional(ideal, sm, depth)

    # -- principal ideal certificates -----------------------------------------
    if len(gb) == 1:
        result = _principal_case(ideal, gb[0], depth)
        if result is not None:
            return result

    raise DecompositionOutOfScope(
        f"no decomposition move applies to {ideal} over {ring!r}"
    )


def _pth_root_iterate(g):
    p = g.ring.p
    while g.d and all(all(e % p == 0 for e in m) for m in g.d):
        g = Poly(g.ring, {tuple(e // p for e in m): c for m, c in g.d.items()})
    return g


def _monomial_content(g):
    monos = list(g.d)
    content = list(monos[0])
    for m in monos[1:]:
        for i, e in enumerate(m):
            if e < content[i]:
                content[i] = e
    return tuple(content)


def _linear_in(g):
    """(var index, coefficient, rest) when g = c*x_i + rest with rest free of x_i."""
    for i in range(g.ring.nvars):
        if g.degree_in(i) != 1:
            continue
        unit = tuple(1 if j == i else 0 for j in range(g.ring.nvars))
        c = g.d.get(unit, 0)
        if not c:
            continue
        rest = {m: v for m, v in g.d.items() if m != unit}
        if any(m[i] for m in rest):
            continue
        return i, c, Poly(g.ring, rest)
    return None


def _ring_without(ring, i):
    return PolyRing(ring.p, ring.names[:i] + ring.names[i + 1:])


def _drop_var(f, small, i):
    out = {}
    for m, c in f.d.items():
        if m[i]:
            raise ValueError("variable still occurs after substitution")
        out[m[:i] + m[i + 1:]] = c
    return Poly(small, out)


def _lift_var(f, big, i):
    out = {}
    for m, c in f.d.items():
        out[m[:i] + (0,) + m[i:]] = c
    return Poly(big, out)


# --- zero-dimensional ideals ------------------------------------------------


def _decompose_zero_dimensional(ideal, sm, depth):
    ring = ideal.ring
    vdim = len(sm)
    if vdim == 1:
        return [ideal]

    candidates = [ring.gen(i) for i in range(ring.nvars)]
    rng = random.Random(0x5EED)
    for _ in range(_ZDIM_RANDOM_TRIES):
        coeffs = [rng.randrange(ring.p) for _ in range(ring.nvars)]
        if any(coeffs):
            lam = ring.zero()
            for i, c in enumerate(coeffs):
                lam = lam + ring.gen(i) * c
            candidates.append(lam)

    for lam in candidates:
        m = _minimal_polynomial(lam, ideal, vdim)
        _, factors = UF.factor(m, ring.p)
        if len(factors) == 1 and factors[0][1] == 1:
            if UF.deg(factors[0][0]) == vdim:
                return [ideal]  # F_p[lam] is a field of full dimension
            continue
        out = []
        if len(factors) == 1:
            h = _apply_univariate(factors[0][0], lam)
            return _decompose(ideal + Ideal(ring, [h]), depth - 1)
        for fac, _ in factors:
            h = _apply_univariate(fac, lam)
            out.extend(_decompose(ideal + Ideal(ring, [h]), depth - 1))
        return out

    raise DecompositionOutOfScope(
        "zero-dimensional ideal resisted all minimal-polynomial splits"
    )


def _apply_univariate(coeffs, lam):
    ring = lam.ring
    out = ring.zero()
    power = ring.one()
    for c in coeffs:
        if c:
            out = out + power * c
        power = power * lam
    return out


def _minimal_polynomial(lam, ideal, vdim):
    """Monic minimal polynomial of lam acting on ring/ideal (coefficient list)."""
    ring = ideal.ring
    p = ring.p
    rows = []  # (pivot monomial, vector dict, representation list)
    power = ring.one()
    k = 0
    while True:
        vec = dict(ideal.normal_form(power).d)
        rep = [0] * k + [1]
        for pm, prow, prep in rows:
            c = vec.get(pm)
            if c:
                for mm, vv in prow.items():
                    nv = (vec.get(mm, 0) - c * vv) % p
                    if nv:
                        vec[mm] = nv
                    else:
                        vec.pop(mm, None)
                for j, vv in enumerate(prep):
                    if j < len(rep):
                        rep[j] = (rep[j] - c * vv) % p
                    elif vv:
                        raise AssertionError("representation misalignment")
        if not vec:
            return UF.trim([r % p for r in rep])
        pivot = max(vec, key=lambda mm: _SortKey(mm))
        inv = pow(vec[pivot], p - 2, p)
        vec = {mm: (vv * inv) % p for mm, vv in vec.items()}
        rep = [(vv * inv) % p for vv in rep]
        rows.append((pivot, vec, rep))
        power = power * lam
        k += 1
        if k > vdim + 1:
            raise AssertionError("minimal polynomial search exceeded the dimension bound")


class _SortKey:
    __slots__ = ("m",)

    def __init__(self, m):
        self.m = m

    def __lt__(self, other):
        return K.mono_cmp(self.m, other.m, K.GREVLEX, 0) < 0


# --- principal ideals --------------------------------------------------------


def _principal_case(ideal, g, depth):
    """Certified decomposition for a principal ideal, or None if unsupported."""
    ring = ideal.ring
    used = g.vars_used()
    if len(used) != 2:
        return None
    t, x = used  # try both roles

    for main, other in ((t, x), (x, t)):
        res = _bivariate_factor_step(ideal, g, main, other, depth)
        if res is not None:
            return res
    return None


def _bivariate_factor_step(ideal, g, t, x, depth):
    ring = ideal.ring
    p = ring.p
    dt = g.degree_in(t)
    dx = g.degree_in(x)
    if dt < 1:
        return None

    # coefficient polynomials of powers of the main variable, univariate in x
    coeff_polys = {}
    for m, c in g.d.items():
        e = m[t]
        coeff_polys.setdefault(e, {})[m[x]] = c
    coeffs = []
    for e in range(dt + 1):
        d = coeff_polys.get(e, {})
        lst = [0] * (max(d) + 1 if d else 0)
        for j, c in d.items():
            lst[j] = c
        coeffs.append(lst)

    # content in F_p[x]
    content = []
    for lst in coeffs:
        if lst:
            content = UF.u_gcd(content, lst, p) if content else UF.u_monic(list(lst), p)
    if UF.deg(content) >= 1:
        cpoly = Poly.from_univariate(ring, content, x)
        quot, rem = _exact_divide(g, cpoly)
        if rem.is_zero():
            out = []
            out.extend(_decompose(ideal + Ideal(ring, [cpoly]), depth - 1))
            out.extend(_decompose(ideal + Ideal(ring, [quot]), depth - 1))
            return out

    monic = coeffs[dt] == [1]

    if dt == 1:
        # primitive linear in t: any factorization has a factor dividing both
        # coefficient polynomials, which are now coprime
        return [ideal]

    if not monic:
        return None
    if dt > 3:
        return _specialization_certificate(ideal, g, t, x, dt)

    root = _bivariate_root(g, t, x, dx)
    if root is _UNDECIDED:
        return _specialization_certificate(ideal, g, t, x, dt)
    if root is None:
        return [ideal]  # monic, degree <= 3, no root of bounded degree: irreducible
    lin = _t_minus(root, t)
    quot, rem = _exact_divide(g, lin)
    if not rem.is_zero():
        raise AssertionError("verified root failed to divide")
    out = []
    out.extend(_decompose(Ideal(ideal.ring, [lin]), depth - 1))
    out.extend(_decompose(Ideal(ideal.ring, [quot]), depth - 1))
    return out


_UNDECIDED = object()


def _t_minus(root_coeffs, t):
    """The polynomial t - r(x) given r as a Poly; root_coeffs is already a Poly."""
    ring = root_coeffs.ring
    return ring.gen(t) - root_coeffs


def _bivariate_root(g, t, x, bound):
    """A Poly r(x) with deg <= bound and g(t <- r) = 0, None if provably none,
    or _UNDECIDED when the search space is too large."""
    ring = g.ring
    p = ring.p
    if p ** (bound + 1) <= _ENUM_CAP:
        for coeffs in itertools.product(range(p), repeat=bound + 1):
            r = Poly.from_univariate(ring, list(coeffs), x)
            if g.substitute({t: r}).is_zero():
                return r
        return None
    if p > bound + 1:
        points = list(range(bound + 1))
        root_sets = []
        for c in points:
            uni = g.substitute({x: ring.constant(c)})
            lst = uni.to_univariate(t)
            root_sets.append(UF.roots_in_prime_field(lst, p))
        total = 1
        for rs in root_sets:
            total *= max(len(rs), 1)
            if total > _ENUM_CAP:
                return _UNDECIDED
        if any(not rs for rs in root_sets):
            return None  # some fiber has no root at all, so no polynomial root
        for combo in itertools.product(*root_sets):
            r_coeffs = _lagrange(points, combo, p)
            r = Poly.from_univariate(ring, r_coeffs, x)
            if g.substitute({t: r}).is_zero():
                return r
        return None
    return _UNDECIDED


def _lagrange(xs, ys, p):
    out = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        li = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if i == j:
                continue
            li = UF.u_mul(li, [(-xj) % p, 1], p)
            denom = (denom * (xi - xj)) % p
        li = UF.u_scale(li, yi * pow(denom, p - 2, p), p)
        out = UF.u_add(out, li, p)
    return out if out else [0]


def _specialization_certificate(ideal, g, t, x, dt):
    """Irreducibility via an irreducible specialization of the same degree."""
    ring = g.ring
    p = ring.p
    for c in range(p):
        uni = g.substitute({x: ring.constant(c)})
        try:
            lst = uni.to_univariate(t)
        except ValueError:
            continue
        if UF.deg(lst) == dt and UF.is_irreducible(lst, p):
            return [ideal]
    return None


def _exact_divide(f, g):
    from .ideals import poly_divmod

    return poly_divmod(f, g)
