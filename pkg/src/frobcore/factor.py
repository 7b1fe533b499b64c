"""Univariate polynomial factorization over F_p.

Coefficient-list representation (index = degree, values in [0, p)).
Pipeline: multiplicity bookkeeping with p-th-root descent for zero
derivatives, distinct-degree splitting, then Cantor-Zassenhaus
equal-degree splitting (trace construction in characteristic 2).
All randomness flows through an explicit ``random.Random``.
"""

import random

_DEFAULT_SEED = 0xF0B


def trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def deg(c):
    return len(c) - 1


def is_zero(c):
    return not c


def u_const(v, p):
    v %= p
    return [v] if v else []


def u_x(p):
    return [0, 1]


def u_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return trim(out)


def u_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return trim(out)


def u_scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return trim([(v * c) % p for v in a])


def u_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if not va:
            continue
        for j, vb in enumerate(b):
            out[i + j] = (out[i + j] + va * vb) % p
    return trim(out)


def u_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    db, lb = deg(b), b[-1]
    inv = pow(lb, p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, vb in enumerate(b):
            a[shift + i] = (a[shift + i] - c * vb) % p
        trim(a)
    return trim(q), a


def u_mod(a, b, p):
    return u_divmod(a, b, p)[1]


def u_monic(a, p):
    if not a:
        return a
    return u_scale(a, pow(a[-1], p - 2, p), p)


def u_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, u_mod(a, b, p)
    return u_monic(a, p)


def u_pow_mod(base, n, mod, p):
    result = u_mod([1], mod, p)
    base = u_mod(base, mod, p)
    while n:
        if n & 1:
            result = u_mod(u_mul(result, base, p), mod, p)
        base = u_mod(u_mul(base, base, p), mod, p)
        n >>= 1
    return result


def derivative(a, p):
    return trim([(i * v) % p for i, v in enumerate(a)][1:])


def pth_root(a, p):
    """Inverse of c -> c(x)^p when every exponent is divisible by p."""
    out = [0] * (deg(a) // p + 1)
    for i, v in enumerate(a):
        if v:
            if i % p:
                raise ValueError("polynomial is not a p-th power")
            out[i // p] = v
    return trim(out)


def evaluate(a, x, p):
    acc = 0
    for v in reversed(a):
        acc = (acc * x + v) % p
    return acc


def roots_in_prime_field(a, p):
    return [c for c in range(p) if evaluate(a, c, p) == 0]


def _distinct_degree(f, p):
    """[(product-of-irreducible-factors-of-degree-k, k)] for squarefree monic f."""
    out = []
    h = [0, 1]  # x
    k = 0
    f = list(f)
    while deg(f) > 0:
        k += 1
        if 2 * k > deg(f):
            out.append((f, deg(f)))
            break
        h = u_pow_mod(h, p, f, p)
        g = u_gcd(f, u_sub(h, [0, 1], p), p)
        if deg(g) > 0:
            out.append((g, k))
            f, _ = u_divmod(f, g, p)
            h = u_mod(h, f, p)
    return out


def _equal_degree_split(f, k, p, rng):
    """All monic irreducible factors of f; every factor has degree k."""
    n = deg(f)
    if n == k:
        return [u_monic(f, p)]
    while True:
        r = [rng.randrange(p) for _ in range(n)]
        trim(r)
        if deg(r) < 1:
            continue
        if p == 2:
            t = list(r)
            acc = list(r)
            for _ in range(k - 1):
                acc = u_mod(u_mul(acc, acc, p), f, p)
                t = u_add(t, acc, p)
            g = u_gcd(f, t, p)
        else:
            e = (p ** k - 1) // 2
            t = u_pow_mod(r, e, f, p)
            g = u_gcd(f, u_sub(t, [1], p), p)
        if 0 < deg(g) < n:
            left, _ = u_divmod(f, g, p)
            return _equal_degree_split(g, k, p, rng) + _equal_degree_split(left, k, p, rng)


def squarefree_factors(f, p, rng):
    """Distinct monic irreducible factors of squarefree monic f."""
    pieces = []
    for block, k in _distinct_degree(f, p):
        pieces.extend(_equal_degree_split(block, k, p, rng))
    pieces.sort()
    return pieces


def factor(f, p, rng=None):
    """Full factorization of nonzero f: (unit, [(monic irreducible, multiplicity)...])."""
    if rng is None:
        rng = random.Random(_DEFAULT_SEED)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit = f[-1] % p
    f = u_monic(f, p)
    found = {}

    def record(g, e):
        key = tuple(g)
        found[key] = found.get(key, 0) + e

    def walk(h, mult):
        if deg(h) < 1:
            return
        hp = derivative(h, p)
        if not hp:
            walk(pth_root(h, p), mult * p)
            return
        w, _ = u_divmod(h, u_gcd(h, hp, p), p)
        for g in squarefree_factors(w, p, rng):
            e = 0
            while True:
                q, r = u_divmod(h, g, p)
                if r:
                    break
                h = q
                e += 1
            record(g, mult * e)
        if deg(h) >= 1:
            walk(h, mult)  # all remaining multiplicities divisible by p

    walk(f, 1)
    out = [(list(g), e) for g, e in sorted(found.items())]
    return unit, out


def squarefree_part(f, p, rng=None):
    """Product of the distinct irreducible factors of f, monic."""
    _, factors = factor(f, p, rng)
    out = [1]
    for g, _ in factors:
        out = u_mul(out, g, p)
    return out


def is_irreducible(f, p, rng=None):
    if deg(f) < 1:
        return False
    _, factors = factor(f, p, rng)
    return len(factors) == 1 and factors[0][1] == 1 and deg(factors[0][0]) == deg(f)


def random_irreducible(degree, p, rng):
    while True:
        coeffs = [rng.randrange(p) for _ in range(degree)] + [1]
        if is_irreducible(coeffs, p, random.Random(rng.randrange(1 << 30))):
            return coeffs
