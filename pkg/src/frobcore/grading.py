"""Cyclic gradings on polynomial quotient rings.

A Z/m-grading assigns each variable a residue mod m; a polynomial is
homogeneous when all its terms share one weight.  The module computes
homogeneous components, the homogeneous part of an ideal (its largest graded
subideal), the degree-zero projection as a trace functional on a free graded
cover, and the two ramification criteria special to graded and cyclic covers:
homogeneity of the radical fiber, and the residue-class p-th-power test.
"""

from .errors import ResidueFieldUnsupported, TypeMismatch
from .frobenius import power_exponent
from .ideals import Ideal, QuotientRing, staircase_dimension
from .minprimes import radical
from .ring import Poly, PolyRing


class CyclicGrading:
    """A Z/m-grading on a quotient ring, given by variable degrees."""

    __slots__ = ("ring", "ambient", "modulus", "degrees")

    def __init__(self, ring, modulus, degrees):
        if isinstance(ring, PolyRing):
            ring = QuotientRing(ring, None)
        if not isinstance(ring, QuotientRing):
            raise TypeMismatch("a grading needs a quotient ring or a polynomial ring")
        m = int(modulus)
        if m < 1:
            raise TypeMismatch(f"grading modulus must be positive, got {m}")
        degrees = tuple(int(d) % m for d in degrees)
        if len(degrees) != ring.ambient.nvars:
            raise TypeMismatch(
                f"need {ring.ambient.nvars} variable degrees, got {len(degrees)}"
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "ambient", ring.ambient)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "degrees", degrees)
        for g in ring.relations.gens:
            if not self.is_homogeneous(g):
                raise TypeMismatch(f"defining relation {g} is not homogeneous")

    def __setattr__(self, name, value):
        raise AttributeError("CyclicGrading is immutable")

    def __repr__(self):
        pairs = ", ".join(
            f"{n}:{d}" for n, d in zip(self.ambient.names, self.degrees)
        )
        return f"CyclicGrading(Z/{self.modulus}, {pairs})"

    def weight(self, exps):
        """The weight of an exponent tuple."""
        return sum(e * d for e, d in zip(exps, self.degrees)) % self.modulus

    def weight_of(self, f):
        """The weight of a homogeneous polynomial; None for zero."""
        f = self.ambient.poly(f)
        seen = {self.weight(m) for m in f.d}
        if not seen:
            return None
        if len(seen) > 1:
            raise TypeMismatch(f"{f} is not homogeneous: weights {sorted(seen)}")
        return seen.pop()

    def is_homogeneous(self, f):
        f = self.ambient.poly(f)
        return len({self.weight(m) for m in f.d}) <= 1

    def homogeneous_component(self, f, gamma):
        """The sum of the terms of f of weight gamma."""
        f = self.ambient.poly(f)
        gamma %= self.modulus
        return Poly(
            self.ambient, {m: c for m, c in f.d.items() if self.weight(m) == gamma}
        )

    def components(self, f):
        """All nonzero homogeneous components, as a weight -> Poly dict."""
        f = self.ambient.poly(f)
        parts = {}
        for m, c in f.d.items():
            parts.setdefault(self.weight(m), {})[m] = c
        return {g: Poly(self.ambient, d) for g, d in sorted(parts.items())}

    def homogeneous_part_ideal(self, b):
        """The largest graded ideal contained in b.

        An element f = sum of components f_gamma lies in the homogeneous part
        exactly when every f_gamma lies in b, equivalently when the twist
        f(s^{d_1} x_1, ..., s^{d_n} x_n) lies in the extension of b to
        F_p[s]/(s^m - 1) [x]: the s-power coefficients of the twist are
        precisely the components.  Eliminating s and the original variables
        from the graph of the twist map computes exactly that membership.
        """
        ring = self.ambient
        if not isinstance(b, Ideal):
            b = Ideal(ring, [ring.poly(g) for g in b])
        if b.ring != ring:
            raise TypeMismatch("ideal lives on a different ring than the grading")
        n = ring.nvars
        m = self.modulus
        taken = set(ring.names)
        s_name = _fresh_name(taken, "s")
        taken.add(s_name)
        z_names = []
        for nm in ring.names:
            z = _fresh_name(taken, nm + "_h")
            taken.add(z)
            z_names.append(z)
        big = PolyRing(ring.p, (s_name,) + ring.names + tuple(z_names))
        gens = []
        s_exp = [0] * big.nvars
        s_exp[0] = m
        gens.append(big.monomial(tuple(s_exp)) - big.one())
        for g in b.gens:
            gens.append(_embed_mid(big, g, 1, n))
        for i in range(n):
            z_exp = [0] * big.nvars
            z_exp[1 + n + i] = 1
            x_exp = [0] * big.nvars
            x_exp[0] = self.degrees[i]
            x_exp[1 + i] = 1
            gens.append(big.monomial(tuple(z_exp)) - big.monomial(tuple(x_exp)))
        elim = Ideal(big, gens).eliminate_front(n + 1)
        return Ideal(ring, [Poly(ring, g.d) for g in elim.gens])

    def is_homogeneous_ideal(self, b):
        """Whether b is generated by homogeneous elements."""
        return self.homogeneous_part_ideal(b) == b


def _fresh_name(taken, stem):
    name = stem
    while name in taken:
        name += "_"
    return name


def _embed_mid(big, g, front, back):
    """A polynomial placed into a ring with extra front and back variables."""
    return Poly(
        big, {(0,) * front + m + (0,) * back: c for m, c in g.d.items()}
    )


def homogeneous_component(grading, f, gamma):
    return grading.homogeneous_component(f, gamma)


def homogeneous_part_ideal(grading, b):
    return grading.homogeneous_part_ideal(b)


def pi0_trace(grading, cover):
    """The degree-zero projection of a free graded cover, as a trace functional.

    Requires the grading to live on the cover's total ring, the base variables
    to sit in degree zero, and the constant 1 to be the only basis element of
    weight zero (otherwise the degree-zero part is larger than the base ring
    and the projection does not land in it).
    """
    from .covers import TraceFunctional

    if grading.ambient != cover.total.ambient:
        raise TypeMismatch("grading does not live on the cover's total ring")
    if grading.ring.relations != cover.total.relations:
        raise TypeMismatch("grading was validated against different relations")
    k = cover.new_count
    if any(d != 0 for d in grading.degrees[k:]):
        raise TypeMismatch("base variables must have degree zero")
    unit_index = None
    for i, b in enumerate(cover.basis):
        w = grading.weight_of(b)
        if b.is_one():
            unit_index = i
        elif w == 0:
            raise TypeMismatch(
                f"basis element {b} has weight zero: the degree-zero part "
                "is larger than the base ring"
            )
    if unit_index is None:
        raise TypeMismatch("the basis does not contain the constant 1")
    values = [0] * cover.rank
    values[unit_index] = 1
    return TraceFunctional(cover, values)


def veronese_tame_check(grading, prime):
    """Tameness of a degree-zero prime under the graded cover S_0 -> S.

    prime: an ideal of the graded ring generated by weight-zero elements,
    spanning the extension of a prime of the degree-zero subring.  When the
    grading order is coprime to the characteristic the cover is always tame.
    When the order is a power of the characteristic, tameness is equivalent
    to the radical of the extension being a homogeneous ideal.  Mixed orders
    are rejected.
    """
    ring = grading.ambient
    if not isinstance(prime, Ideal):
        prime = Ideal(ring, [ring.poly(g) for g in prime])
    if prime.ring != ring:
        raise TypeMismatch("prime lives on a different ring than the grading")
    for g in prime.gens:
        if grading.weight_of(g) not in (0, None):
            raise TypeMismatch(
                f"generator {g} does not lie in the degree-zero subring"
            )
    p = ring.p
    m = grading.modulus
    if m % p:
        # the characteristic is prime, so this means the order is prime to it
        return True
    mm = m
    while mm % p == 0:
        mm //= p
    if mm != 1:
        raise TypeMismatch(f"grading order {m} is neither prime to {p} nor a {p}-power")
    rad = radical(prime + grading.ring.relations)
    return grading.homogeneous_part_ideal(rad) == rad


def cyclic_fiber_field_check(ring, u, root_power, prime):
    """Tameness of the degree-root_power cyclic cover R[t]/(t^root_power - u)
    at a prime, decided in the residue field.

    The fiber is a field exactly when the class of u in the residue field is
    not a p-th power (for root_power > 1).  Finite residue fields are perfect,
    so the cover is wild there; over a rational function field (prime generated
    by a subset of the variables of a polynomial ring) the class is a p-th
    power exactly when every exponent of the reduced representative is
    divisible by p.  Other residue fields are not supported.
    """
    if isinstance(ring, PolyRing):
        ring = QuotientRing(ring, None)
    ambient = ring.ambient
    p = ambient.p
    power_exponent(p, root_power)
    u = ambient.poly(u)
    if not isinstance(prime, Ideal):
        prime = Ideal(ambient, [ambient.poly(g) for g in prime])
    full = prime + ring.relations
    if full.contains(u):
        raise TypeMismatch(f"{u} vanishes at the prime: not a unit there")
    if root_power == 1:
        return True
    if staircase_dimension(full) is not None:
        # finite residue field: perfect, every class is a p-th power
        return False
    if ring.is_polynomial_ring():
        gb = full.groebner()
        var_indices = []
        subset = True
        for g in gb:
            if len(g.d) == 1:
                mono = next(iter(g.d))
                nz = [i for i, e in enumerate(mono) if e]
                if len(nz) == 1 and mono[nz[0]] == 1:
                    var_indices.append(nz[0])
                    continue
            subset = False
            break
        if subset:
            killed = set(var_indices)
            residue = {
                m: c
                for m, c in u.d.items()
                if not any(m[i] for i in killed)
            }
            is_pth_power = all(
                all(e % p == 0 for e in m) for m in residue
            )
            return not is_pth_power
    raise ResidueFieldUnsupported(
        "residue field is neither finite nor a rational function field "
        "presented by a variable-subset prime"
    )
