"""Cartier pairs and their compatible-ideal calculus.

A pair couples a quotient of a polynomial ring over F_p with a p^(-e)-linear
map, encoded by a multiplier u against the standard projection: the map sends
the class of F_* s to the class of root_q(u * s)-style images.  On top of the
two adjoint primitives (transpose and image) the module builds fixed ideals
(sigma), smallest enclosing compatible ideals (rho / lambda), Cartier cores
(kappa), the beta retraction, test ideals along compatible loci (tau), and
the enumeration of all compatible primes as a finite lattice.

Results that depend on a search carry explicit certification flags; nothing
is reported as exact unless a terminating argument applies.
"""

import itertools
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    NoTestElementFound,
    NotCompatibleMultiplier,
    TypeMismatch,
)
from .frobenius import MAX_FROBENIUS_POWER, bracket_power, frobenius_root
from .ideals import Ideal
from .minprimes import minimal_primes, radical
from .ring import Poly, PolyRing

SIGMA_ITERATION_GUARD = 4096
KAPPA_CHAIN_STEPS = 12
ENUM_COEFF_CAP = 4096
TAU_COEFF_CAP = 512
LATTICE_SIZE_CAP = 64
LATTICE_CLOSURE_CAP = 10


@dataclass(frozen=True)
class KappaResult:
    """Cartier core computation: the ideal plus how it was certified."""

    ideal: Ideal
    certified: bool
    method: str
    warnings: tuple = ()


@dataclass(frozen=True)
class TauResult:
    """Test ideal along a compatible locus, with certification status."""

    ideal: Ideal
    certified: bool
    status: str  # "certified" or "upper-bound"
    candidates_used: int = 0
    refinement_steps: int = 0


class CartierPair:
    """An exponent-e multiplier pair on A/J, validated at construction."""

    __slots__ = ("ring", "relations", "e", "u", "_sigma", "_lattice")

    def __init__(self, ring, relations, e, u):
        if not isinstance(ring, PolyRing):
            raise TypeMismatch("pair needs an ambient polynomial ring")
        if relations is None:
            relations = Ideal(ring, [])
        if relations.ring != ring:
            raise TypeMismatch("relations live in a different ring")
        if not isinstance(e, int) or e < 1:
            raise TypeMismatch(f"exponent must be a positive integer, got {e!r}")
        u = ring.poly(u)
        if u.is_zero():
            raise NotCompatibleMultiplier("zero multiplier defines the zero map")
        q = ring.p ** e
        if q > MAX_FROBENIUS_POWER:
            raise BudgetExceeded(
                f"pair power {q} exceeds the supported bound {MAX_FROBENIUS_POWER}"
            )
        if relations.gens:
            target = bracket_power(relations, q)
            for g in relations.gens:
                if not target.contains(u * g):
                    raise NotCompatibleMultiplier(
                        f"u*({g}) does not lie in the {q}-th bracket power of the relations"
                    )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "_sigma", None)
        object.__setattr__(self, "_lattice", None)

    def __setattr__(self, name, value):
        raise AttributeError("CartierPair is immutable")

    @property
    def p(self):
        return self.ring.p

    @property
    def q(self):
        return self.ring.p ** self.e

    def __repr__(self):
        rel = str(self.relations) if self.relations.gens else "0"
        return f"CartierPair(F_{self.p}{list(self.ring.names)}/{rel}, e={self.e}, u={self.u})"

    # -- plumbing ------------------------------------------------------------

    def lift(self, a):
        """The ambient ideal a + relations."""
        if not isinstance(a, Ideal):
            a = Ideal(self.ring, [self.ring.poly(g) for g in a])
        if a.ring != self.ring:
            raise TypeMismatch("ideal lives in a different ring")
        if not self.relations.gens:
            return a
        return a + self.relations

    def power(self, n):
        """The n-fold composite pair: exponent n*e, multiplier u^(1+q+...+q^(n-1))."""
        if not isinstance(n, int) or n < 1:
            raise TypeMismatch(f"pair power must be a positive integer, got {n!r}")
        q = self.q
        if q ** n > MAX_FROBENIUS_POWER:
            raise BudgetExceeded(
                f"pair power {q ** n} exceeds the supported bound {MAX_FROBENIUS_POWER}"
            )
        exponent_sum = (q ** n - 1) // (q - 1)
        return CartierPair(self.ring, self.relations, n * self.e, self.u ** exponent_sum)

    # -- the adjoint primitives -----------------------------------------------

    def transpose_ideal(self, a):
        """The largest ideal whose image lands in a: (a^[q] : u)."""
        a = self.lift(a)
        return bracket_power(a, self.q).quotient(Ideal(self.ring, [self.u]))

    def image_ideal(self, a):
        """The ideal generated by the map's values on a: root_q(u*a) + relations."""
        a = self.lift(a)
        if a.is_zero():
            return self.lift(Ideal(self.ring, []))
        scaled = Ideal(self.ring, [self.u * g for g in a.gens])
        return self.lift(frobenius_root(scaled, self.q))

    def is_compatible(self, a):
        a = self.lift(a)
        return a.contains_ideal(self.image_ideal(a))

    # -- fixed and enclosing ideals --------------------------------------------

    def sigma(self, a=None):
        """Stable value of the descending image chain starting at a (default all of A)."""
        if a is None:
            a = Ideal(self.ring, [self.ring.one()])
        a = self.lift(a)
        if not self.is_compatible(a):
            raise TypeMismatch("sigma needs a compatible starting ideal")
        if a.is_unit() and self._sigma is not None:
            return self._sigma
        current = a
        for _ in range(SIGMA_ITERATION_GUARD):
            nxt = self.image_ideal(current)
            if nxt == current:
                if a.is_unit():
                    object.__setattr__(self, "_sigma", current)
                return current
            current = nxt
        raise BudgetExceeded("sigma chain did not stabilize within the iteration guard")

    def f_pure_locus(self):
        """Ideal cutting out the non-pure locus; the pair is F-pure at p iff this is not inside p."""
        return self.sigma()

    def is_f_pure(self):
        return self.f_pure_locus().is_unit()

    def is_f_pure_at(self, prime):
        return not self.lift(prime).contains_ideal(self.f_pure_locus())

    def lambda_ideal(self, a):
        """Stable value of the ascending chain of iterated images of a."""
        a = self.lift(a)
        current = self.image_ideal(a)
        for _ in range(SIGMA_ITERATION_GUARD):
            nxt = current + self.image_ideal(current)
            if nxt == current:
                return current
            current = nxt
        raise BudgetExceeded("lambda chain did not stabilize within the iteration guard")

    def rho(self, a):
        """Smallest compatible ideal containing a: a plus its iterated images."""
        a = self.lift(a)
        return a + self.lambda_ideal(a)

    # -- Cartier core and beta ---------------------------------------------------

    def kappa(self, a):
        """The Cartier core of a: the intersection of the iterated transposes.

        Certified either by a stabilizing chain whose partial intersection is
        compatible and contained in a, or (for F-pure pairs) through the
        enumerated compatible lattice.  Anything else is flagged.
        """
        a = self.lift(a)
        q = self.q
        partial = None
        history = []
        for n in range(1, KAPPA_CHAIN_STEPS + 1):
            qn = q ** n
            if qn > MAX_FROBENIUS_POWER:
                break
            un = self.u ** ((qn - 1) // (q - 1))
            step = bracket_power(a, qn).quotient(Ideal(self.ring, [un]))
            partial = step if partial is None else partial.intersect(step)
            history.append(partial)
            if a.contains_ideal(partial) and self.is_compatible(partial):
                return KappaResult(partial, True, "chain")

        if self.is_f_pure():
            result = self._kappa_from_lattice(a)
            if result is not None:
                return result

        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return KappaResult(
                history[-1],
                False,
                "chain-heuristic",
                ("partial intersections stabilized without a certificate",),
            )
        raise BudgetExceeded(
            "kappa chain exhausted its budget without certification"
        )

    def _kappa_from_lattice(self, a):
        lattice = self.enumerate_compatible_primes()
        if len(lattice.primes) > LATTICE_CLOSURE_CAP:
            return None
        members = [m for m in lattice.intersection_closure() if a.contains_ideal(m)]
        if not members:
            core = self.lift(Ideal(self.ring, []))
        else:
            core = members[0]
            for m in members[1:]:
                core = core + m
        if not (a.contains_ideal(core) and self.is_compatible(core)):
            raise AssertionError("lattice route produced an invalid core")
        if lattice.verified:
            return KappaResult(core, True, "lattice", lattice.warnings)
        return KappaResult(core, False, "lattice-unverified", lattice.warnings)

    def beta_prime(self, prime):
        """The beta retraction: prime itself at non-F-pure points, else its Cartier core."""
        prime = self.lift(prime)
        if not self.is_f_pure_at(prime):
            return prime
        return self.kappa(prime).ideal

    def cz_closure(self, a):
        """Intersection of beta over the minimal primes of a."""
        a = self.lift(a)
        primes = minimal_primes(a)
        if not primes:
            return Ideal(self.ring, [self.ring.one()])
        out = self.beta_prime(primes[0])
        for p in primes[1:]:
            out = out.intersect(self.beta_prime(p))
        return out

    # -- test ideals ----------------------------------------------------------------

    def test_ideal_along(self, a):
        """The smallest compatible ideal not inside any minimal prime of a.

        Computed as the intersection of the compatible closures of low-degree
        test candidates, then refined against the enumerated lattice; the
        refinement fixpoint is exact, anything short of it an upper bound.
        """
        a = self.lift(a)
        if not self.is_compatible(a):
            raise TypeMismatch("test ideals are computed along compatible ideals")
        if radical(a) != a:
            raise TypeMismatch("test ideals are computed along radical ideals")
        z_primes = minimal_primes(a)
        for zp in z_primes:
            if zp.contains_ideal(self.f_pure_locus()):
                raise TypeMismatch(
                    f"degenerate along {zp}: the pair is not F-pure at a minimal prime"
                )
            if bracket_power(zp, self.q).contains(self.u):
                raise TypeMismatch(
                    f"degenerate along {zp}: the multiplier vanishes on the fiber"
                )

        candidates = _candidates_avoiding(self.ring, z_primes, TAU_COEFF_CAP)
        if not candidates:
            raise NoTestElementFound(
                "no test element of bounded degree avoids the minimal primes"
            )
        tau = None
        for c in candidates:
            closure = self.rho(Ideal(self.ring, [c]))
            tau = closure if tau is None else tau.intersect(closure)
            if tau.is_zero():
                break

        certified = False
        steps = 0
        if self.is_f_pure():
            lattice = self.enumerate_compatible_primes()
            if lattice.verified and len(lattice.primes) <= LATTICE_CLOSURE_CAP:
                members = lattice.intersection_closure()
                changed = True
                while changed:
                    changed = False
                    for m in members:
                        cut = tau.intersect(m)
                        if cut == tau:
                            continue
                        if any(zp.contains_ideal(cut) for zp in z_primes):
                            continue
                        tau = cut
                        steps += 1
                        changed = True
                certified = True
        status = "certified" if certified else "upper-bound"
        return TauResult(tau, certified, status, len(candidates), steps)

    def is_f_regular(self):
        """Whether the smallest compatible ideal beyond the minimal primes is everything."""
        if not self.is_f_pure():
            return False
        lattice = self.enumerate_compatible_primes()
        if not lattice.verified:
            raise BudgetExceeded(
                "compatible lattice could not be verified; F-regularity undecided"
            )
        base = {p.canonical_key() for p in minimal_primes(self.lift(Ideal(self.ring, [])))}
        schpec = {p.canonical_key() for p in lattice.schpec_primes()}
        return schpec <= base

    # -- enumeration -------------------------------------------------------------------

    def enumerate_compatible_primes(self, verify_degree=None):
        """All compatible primes reachable by bounded-degree branching.

        Starting from the minimal primes of the relations, each node branches
        on the compatible closures of node-avoiding candidates; the minimal
        primes of each closure are visited in turn.  The result records
        whether the candidate spaces were exhaustive (verified) or truncated.
        """
        if verify_degree is None and self._lattice is not None:
            return self._lattice

        flags = []
        warnings = []
        sigma = self.f_pure_locus()
        if not sigma.is_unit():
            flags.append(f"restricted: non-F-pure locus at {sigma}")

        visited = set()
        found = {}
        truncated = [False]
        degenerate = []

        def visit(P):
            key = P.canonical_key()
            if key in visited:
                return
            visited.add(key)
            if len(visited) > LATTICE_SIZE_CAP:
                raise BudgetExceeded("compatible-prime search exceeded the node budget")
            if self.is_compatible(P):
                found[key] = P
            if bracket_power(P, self.q).contains(self.u):
                degenerate.append(str(P))
                return
            cands, full = _candidate_space(self.ring, ENUM_COEFF_CAP)
            if not full:
                truncated[0] = True
            for c in cands:
                if P.contains(c):
                    continue
                closure = self.rho(P + Ideal(self.ring, [c]))
                if closure.is_unit():
                    continue
                for Q in minimal_primes(closure):
                    visit(Q)

        for P in minimal_primes(self.lift(Ideal(self.ring, []))):
            visit(P)

        if degenerate:
            warnings.append(
                "degenerate branches not descended at: " + ", ".join(sorted(degenerate))
            )
        if truncated[0]:
            warnings.append("candidate space truncated to monomials; lattice unverified")

        primes = sorted(found.values(), key=lambda P: P.canonical_key())
        schpec_keys = frozenset(
            P.canonical_key() for P in primes if not P.contains_ideal(sigma)
        )
        lattice = CompatibleLattice(
            pair=self,
            primes=tuple(primes),
            schpec_keys=schpec_keys,
            flags=tuple(flags),
            warnings=tuple(warnings),
            verified=not truncated[0] and not degenerate,
            verified_to_degree=2 if not truncated[0] else None,
        )
        if verify_degree is not None and verify_degree > 0:
            lattice = self._verify_lattice(lattice, verify_degree)
        if verify_degree is None:
            object.__setattr__(self, "_lattice", lattice)
        return lattice

    def _verify_lattice(self, lattice, degree):
        """Re-check closure of the lattice under branching with a degree bound."""
        known = {P.canonical_key() for P in lattice.primes}
        extra = []
        cands, full = _candidate_space(self.ring, ENUM_COEFF_CAP, degree=degree)
        for P in lattice.primes:
            if bracket_power(P, self.q).contains(self.u):
                continue
            for c in cands:
                if P.contains(c):
                    continue
                closure = self.rho(P + Ideal(self.ring, [c]))
                if closure.is_unit():
                    continue
                for Q in minimal_primes(closure):
                    if Q.canonical_key() not in known and self.is_compatible(Q):
                        extra.append(Q)
                        known.add(Q.canonical_key())
        if extra:
            warnings = lattice.warnings + (
                f"verification to degree {degree} found {len(extra)} missed primes",
            )
            primes = sorted(
                list(lattice.primes) + extra, key=lambda P: P.canonical_key()
            )
            sigma = self.f_pure_locus()
            schpec_keys = frozenset(
                P.canonical_key() for P in primes if not P.contains_ideal(sigma)
            )
            return CompatibleLattice(
                pair=self,
                primes=tuple(primes),
                schpec_keys=schpec_keys,
                flags=lattice.flags,
                warnings=warnings,
                verified=False,
                verified_to_degree=None,
            )
        return CompatibleLattice(
            pair=self,
            primes=lattice.primes,
            schpec_keys=lattice.schpec_keys,
            flags=lattice.flags,
            warnings=lattice.warnings,
            verified=lattice.verified and full,
            verified_to_degree=max(degree, lattice.verified_to_degree or 0)
            if full
            else lattice.verified_to_degree,
        )


@dataclass(frozen=True)
class CompatibleLattice:
    """The finite set of compatible primes of a pair, with classification."""

    pair: CartierPair
    primes: tuple
    schpec_keys: frozenset
    flags: tuple = ()
    warnings: tuple = ()
    verified: bool = False
    verified_to_degree: int = None

    def __len__(self):
        return len(self.primes)

    def in_schpec(self, prime):
        return self.pair.lift(prime).canonical_key() in self.schpec_keys

    def schpec_primes(self):
        return [P for P in self.primes if P.canonical_key() in self.schpec_keys]

    def cspec_primes(self):
        return list(self.primes)

    def contains_prime(self, prime):
        key = self.pair.lift(prime).canonical_key()
        return any(P.canonical_key() == key for P in self.primes)

    def intersection_closure(self):
        """All intersections of nonempty subsets of the lattice primes."""
        members = {P.canonical_key(): P for P in self.primes}
        frontier = list(self.primes)
        while frontier:
            nxt = []
            for L in frontier:
                for P in self.primes:
                    cut = L.intersect(P)
                    key = cut.canonical_key()
                    if key not in members:
                        members[key] = cut
                        nxt.append(cut)
            frontier = nxt
        return [members[k] for k in sorted(members)]

    def hasse_edges(self):
        """Cover relations (P, Q) with P strictly below Q and nothing between."""
        edges = []
        ps = list(self.primes)
        for P in ps:
            for Q in ps:
                if P is Q or not Q.contains_ideal(P) or P == Q:
                    continue
                between = any(
                    R is not P
                    and R is not Q
                    and R.contains_ideal(P)
                    and Q.contains_ideal(R)
                    and R != P
                    and R != Q
                    for R in ps
                )
                if not between:
                    edges.append((P, Q))
        return edges

    def to_dot(self, name="compatible_primes"):
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        index = {P.canonical_key(): i for i, P in enumerate(self.primes)}
        for P in self.primes:
            i = index[P.canonical_key()]
            label = str(P).replace('"', "'")
            marker = " (center)" if P.canonical_key() in self.schpec_keys else ""
            lines.append(f'  n{i} [label="{label}{marker}"];')
        for P, Q in self.hasse_edges():
            lines.append(f"  n{index[P.canonical_key()]} -> n{index[Q.canonical_key()]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- module-level operation aliases ---------------------------------------------


def new_pair(ring, relations, e, u):
    return CartierPair(ring, relations, e, u)


def transpose_ideal(pair, a):
    return pair.transpose_ideal(a)


def image_ideal(pair, a):
    return pair.image_ideal(a)


def is_compatible(pair, a):
    return pair.is_compatible(a)


def sigma(pair, a=None):
    return pair.sigma(a)


def kappa(pair, a):
    return pair.kappa(a)


def beta_prime(pair, p):
    return pair.beta_prime(p)


def rho(pair, a):
    return pair.rho(a)


def lambda_ideal(pair, a):
    return pair.lambda_ideal(a)


def is_f_pure(pair):
    return pair.is_f_pure()


def f_pure_locus(pair):
    return pair.f_pure_locus()


def enumerate_compatible_primes(pair, verify_degree=None):
    return pair.enumerate_compatible_primes(verify_degree)


def test_ideal_along(pair, a):
    return pair.test_ideal_along(a)


def is_f_regular(pair):
    return pair.is_f_regular()


def cz_closure(pair, a):
    return pair.cz_closure(a)


# -- candidate machinery ----------------------------------------------------------


def _candidate_space(ring, coeff_cap, degree=2):
    """Candidate polynomials for branching: the full coefficient space over
    monomials of total degree <= degree when small enough, else monomial
    candidates up to degree 4.  Returns (candidates, exhaustive?)."""
    monos = ring.monomials_upto(degree)
    if ring.p ** len(monos) <= coeff_cap:
        out = []
        for coeffs in itertools.product(range(ring.p), repeat=len(monos)):
            if not any(coeffs):
                continue
            d = {m: c for m, c in zip(monos, coeffs) if c}
            out.append(Poly(ring, d))
        return out, True
    fallback = [Poly(ring, {m: 1}) for m in ring.monomials_upto(4)]
    return fallback, False


def _candidates_avoiding(ring, primes, coeff_cap):
    """Test-element candidates avoiding every prime in the list."""
    cands, full = _candidate_space(ring, coeff_cap)
    out = [c for c in cands if not any(p.contains(c) for p in primes)]
    if not full and len(primes) > 1:
        avoid = _prime_avoidance_element(ring, primes)
        if avoid is not None and not any(p.contains(avoid) for p in primes):
            out.append(avoid)
    return out


def _prime_avoidance_element(ring, primes):
    """Sum of elements e_i lying in every prime except the i-th."""
    terms = []
    for i, p in enumerate(primes):
        others = [q for j, q in enumerate(primes) if j != i]
        if not others:
            return None
        inter = others[0]
        for q in others[1:]:
            inter = inter.intersect(q)
        pick = None
        for g in inter.groebner():
            if not p.contains(g):
                pick = g
                break
        if pick is None:
            return None
        terms.append(pick)
    total = ring.zero()
    for t in terms:
        total = total + t
    return total
