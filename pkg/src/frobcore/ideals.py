"""Ideals of F_p[x_1..x_n]: arithmetic, elimination, membership, equality.

All operations are exact. Equality and printing go through the reduced
Groebner basis under the default graded reverse lexicographic order, which
is a canonical form. Intersections and quotients use the standard
tag-variable eliminations.
"""

from . import _kernel as K
from .groebner import groebner_basis, normal_form_of, _modinv
from .ring import Poly, PolyRing

_TAG = "tag0"


class Ideal:
    """An ideal of a PolyRing, held as generators with cached reduced bases."""

    __slots__ = ("ring", "gens", "_gb", "_hash")

    def __init__(self, ring, gens):
        polys = []
        for g in gens:
            g = ring.poly(g)
            if not g.is_zero():
                polys.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gens", tuple(polys))
        object.__setattr__(self, "_gb", {})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Ideal is immutable")

    # --- canonical basis ---------------------------------------------------
    def groebner(self, okind=K.GREVLEX, split=0):
        key = (okind, split)
        if key not in self._gb:
            basis = groebner_basis([g.d for g in self.gens], okind, split, self.ring.p)
            self._gb[key] = tuple(Poly(self.ring, f) for f in basis)
        return self._gb[key]

    def groebner_dicts(self, okind=K.GREVLEX, split=0):
        return [g.d for g in self.groebner(okind, split)]

    # --- predicates --------------------------------------------------------
    def is_zero(self):
        return not self.groebner()

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_one()

    def is_proper(self):
        return not self.is_unit()

    def contains(self, f):
        f = self.ring.poly(f)
        if f.is_zero():
            return True
        return not normal_form_of(f.d, self.groebner_dicts(), K.GREVLEX, 0, self.ring.p)

    def normal_form(self, f):
        f = self.ring.poly(f)
        return Poly(
            self.ring, normal_form_of(f.d, self.groebner_dicts(), K.GREVLEX, 0, self.ring.p)
        )

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __le__(self, other):
        return other.contains_ideal(self)

    def __lt__(self, other):
        return self <= other and self != other

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring != other.ring:
            return NotImplemented
        return self.groebner() == other.groebner()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.ring, tuple(frozenset(g.d.items()) for g in self.groebner())))
            )
        return self._hash

    def canonical_key(self):
        """Deterministic sort key: the printed reduced basis."""
        return tuple(str(g) for g in self.groebner())

    # --- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return Ideal(self.ring, self.gens + other.gens)

    def _coerce(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise ValueError("mixed-ring ideal arithmetic")
            return other
        if isinstance(other, (list, tuple)):
            return Ideal(self.ring, other)
        return Ideal(self.ring, [self.ring.poly(other)])

    def product(self, other):
        other = self._coerce(other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def scaled(self, f):
        """The ideal f * self."""
        f = self.ring.poly(f)
        return Ideal(self.ring, [f * g for g in self.gens])

    def intersect(self, other):
        other = self._coerce(other)
        if not self.gens:
            return self
        if not other.gens:
            return other
        ring = self.ring
        big = ring.extend_front((_TAG,))
        t = big.gen(0)
        one = big.one()
        gens = [t * g.inject_front(big, 1) for g in self.gens]
        gens += [(one - t) * g.inject_front(big, 1) for g in other.gens]
        return Ideal(big, gens).eliminate_front(1)

    def intersect_many(self, others):
        out = self
        for o in others:
            out = out.intersect(o)
        return out

    def quotient(self, other):
        """Ideal quotient (self : other)."""
        other = self._coerce(other)
        if not other.gens:
            return Ideal(self.ring, [self.ring.one()])
        result = None
        for g in other.gens:
            part = self._quotient_by_poly(g)
            result = part if result is None else result.intersect(part)
        return result

    def _quotient_by_poly(self, g):
        g = self.ring.poly(g)
        if g.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        inter = self.intersect(Ideal(self.ring, [g]))
        quots = []
        for h in inter.groebner():
            q, r = poly_divmod(h, g)
            if not r.is_zero():
                raise ArithmeticError("intersection member not divisible in quotient computation")
            quots.append(q)
        return Ideal(self.ring, quots)

    def eliminate_front(self, k):
        """Intersect with the subring omitting the first k variables."""
        small = self.ring.drop_front(k)
        kept = []
        for g in self.groebner(K.BLOCK, k):
            if all(not any(m[:k]) for m in g.d):
                kept.append(g.drop_front(small, k))
        return Ideal(small, kept)

    def radical_contains(self, f):
        """Rabinowitsch membership test: f in sqrt(self)."""
        f = self.ring.poly(f)
        if f.is_zero():
            return True
        big = self.ring.extend_front((_TAG,))
        t = big.gen(0)
        gens = [g.inject_front(big, 1) for g in self.gens]
        gens.append(big.one() - t * f.inject_front(big, 1))
        return Ideal(big, gens).is_unit()

    # --- presentation ---------------------------------------------------------
    def __str__(self):
        gb = self.groebner()
        return "[" + "; ".join(str(g) for g in gb) + "]"

    def __repr__(self):
        return f"Ideal{self}"


def poly_divmod(f, g):
    """Division by a single polynomial under grevlex: f = q*g + r."""
    ring = f.ring
    p = ring.p
    gm, gc = g.leading_term()
    ginv = _modinv(gc, p)
    work = dict(f.d)
    quo = {}
    rem = {}
    while work:
        m, c = K.leading_term(work, K.GREVLEX, 0)
        if K.mono_divides(gm, m):
            factor_c = (c * ginv) % p
            factor_m = K.mono_div(m, gm)
            quo[factor_m] = factor_c
            work = K.poly_sub(work, K.poly_term_mul(g.d, factor_c, factor_m, p), p)
        else:
            rem[m] = c
            del work[m]
    return Poly(ring, quo), Poly(ring, rem)


class QuotientRing:
    """R = A/J for a polynomial ring A and an ideal J (possibly zero).

    Ideals of R are represented by ambient ideals containing J; elements by
    ambient polynomials, compared after reduction mod J.
    """

    __slots__ = ("ambient", "relations")

    def __init__(self, ambient, relations=None):
        if relations is None:
            relations = Ideal(ambient, [])
        if relations.ring != ambient:
            raise ValueError("relations must live in the ambient ring")
        if relations.is_unit():
            raise ValueError("relations generate the unit ideal; the quotient is zero")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "relations", relations)

    def __setattr__(self, *a):
        raise AttributeError("QuotientRing is immutable")

    @property
    def p(self):
        return self.ambient.p

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.ambient, self.relations))

    def __repr__(self):
        if self.relations.is_zero():
            return repr(self.ambient)
        return f"{self.ambient!r} mod {self.relations}"

    def poly(self, value):
        return self.ambient.poly(value)

    def reduce(self, f):
        return self.relations.normal_form(self.ambient.poly(f))

    def same_element(self, f, g):
        return self.reduce(f) == self.reduce(g)

    def ideal(self, gens):
        """Ambient ideal: the given generators plus the relations."""
        return Ideal(self.ambient, list(gens)) + self.relations

    def zero_ideal(self):
        return self.ideal([])

    def unit_ideal(self):
        return self.ideal([self.ambient.one()])

    def is_polynomial_ring(self):
        return self.relations.is_zero()


def staircase_dimension(ideal):
    """F_p-dimension of ring/ideal when finite, else None.

    Finite iff some leading monomial is a pure power of each variable.
    Returns the number of standard monomials.
    """
    sm = standard_monomials(ideal)
    return None if sm is None else len(sm)


def standard_monomials(ideal):
    """The standard monomial basis when finite-dimensional (sorted), else None."""
    ring = ideal.ring
    gb = ideal.groebner()
    if any(g.is_one() for g in gb):
        return []
    lts = [g.leading_term()[0] for g in gb]
    n = ring.nvars
    bounds = [None] * n
    for m in lts:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
    if any(b is None for b in bounds):
        return None
    out = []

    def rec(i, exps):
        if i == n:
            mono = tuple(exps)
            if not any(K.mono_divides(lt, mono) for lt in lts):
                out.append(mono)
            return
        for e in range(bounds[i]):
            rec(i + 1, exps + [e])

    rec(0, [])
    out.sort()
    return out
