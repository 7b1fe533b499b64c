"""Frobenius bracket powers and their left adjoint, the Frobenius root.

Over F_p[x_1..x_n] the q-th bracket power of an ideal scales exponents
termwise; the q-th root is the smallest ideal J with I contained in the
bracket power J^[q].  The two are adjoint: I <= J^[q] iff root_q(I) <= J.
"""

from .errors import BudgetExceeded
from .ideals import Ideal
from .ring import Poly

MAX_FROBENIUS_POWER = 1 << 20


def power_exponent(p, q):
    """The integer e with p**e == q; rejects everything else."""
    if q < 1:
        raise ValueError(f"Frobenius power must be positive, got {q}")
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError(f"{q * p ** e} is not a power of the characteristic {p}")
    return e


def _check_power(p, q):
    power_exponent(p, q)
    if q > MAX_FROBENIUS_POWER:
        raise BudgetExceeded(
            f"Frobenius power {q} exceeds the supported bound {MAX_FROBENIUS_POWER}"
        )


def bracket_power(ideal, q):
    """The ideal generated by the q-th powers of the generators."""
    _check_power(ideal.ring.p, q)
    return Ideal(ideal.ring, [g.frobenius(q) for g in ideal.gens])


def qth_power_decompose(f, q):
    """Write f = sum_a g_a^q * x^a over exponent offsets a with entries < q.

    Returns a dict mapping each offset tuple a to the polynomial g_a.
    Coefficients are their own q-th roots in the prime field.
    """
    _check_power(f.ring.p, q)
    parts = {}
    for m, c in f.d.items():
        offset = tuple(e % q for e in m)
        base = tuple(e // q for e in m)
        parts.setdefault(offset, {})[base] = c
    return {a: Poly(f.ring, d) for a, d in sorted(parts.items())}


def frobenius_root(ideal, q):
    """The smallest ideal J with ideal <= J^[q].

    Roots distribute over sums of ideals, and the root of a principal ideal
    is generated by the components of the q-th power decomposition, so the
    root is assembled generator by generator from the reduced basis.
    """
    _check_power(ideal.ring.p, q)
    gens = []
    for g in ideal.groebner():
        gens.extend(qth_power_decompose(g, q).values())
    gens = [g for g in gens if not g.is_zero()]
    return Ideal(ideal.ring, gens)
