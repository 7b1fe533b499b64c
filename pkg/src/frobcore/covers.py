"""Finite free ring extensions with trace functionals.

A cover embeds a base quotient ring R into a total quotient ring S that is
free as an R-module on a monomial basis in the new variables.  Trace-style
functionals S -> R then transpose ideals in both directions, decide tame
ramification (transpose of a prime = radical of its extension), check the
compatibility square against Frobenius multiplier pairs on both rings, and
drive the fibered / main-theorem verdicts over the enumerated compatible
primes.

Conventions: new variables come first in the total ambient ring, so the base
embeds by appending its variables after the new block; ideals of R or S are
ambient ideals containing the respective relations.
"""

from dataclasses import dataclass

from .errors import NotMonic, TypeMismatch
from .ideals import Ideal, QuotientRing, staircase_dimension
from .minprimes import minimal_primes, radical
from .modgb import syzygy_kernel
from .ring import Poly, PolyRing
from . import _kernel as K


class FiniteCover:
    """A free module-finite extension base -> total with an explicit basis."""

    __slots__ = ("base", "total", "new_count", "basis", "_basis_monos", "_mult", "_gb")

    def __init__(self, base, total, new_count, basis):
        if not isinstance(base, QuotientRing) or not isinstance(total, QuotientRing):
            raise TypeMismatch("cover endpoints must be quotient rings")
        if total.ambient.p != base.ambient.p:
            raise TypeMismatch("cover endpoints have different characteristics")
        if total.ambient.names[new_count:] != base.ambient.names:
            raise TypeMismatch(
                "total ring must list the new variables first, then the base variables"
            )
        basis = tuple(total.ambient.poly(b) for b in basis)
        if not basis:
            raise TypeMismatch("a cover needs a module basis")
        monos = []
        for b in basis:
            if len(b.d) != 1 or next(iter(b.d.values())) != 1:
                raise TypeMismatch("basis elements must be monomials in the new variables")
            m = next(iter(b.d))
            if any(m[new_count:]):
                raise TypeMismatch("basis elements must involve only the new variables")
            monos.append(m[:new_count])
        if len(set(monos)) != len(monos):
            raise TypeMismatch("repeated basis element")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "new_count", new_count)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_basis_monos", {m: i for i, m in enumerate(monos)})
        object.__setattr__(self, "_mult", None)
        object.__setattr__(self, "_gb", None)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("FiniteCover is immutable")

    def __repr__(self):
        return (
            f"FiniteCover({self.base.ambient!r} -> {self.total.ambient!r}, "
            f"rank {len(self.basis)})"
        )

    @property
    def rank(self):
        return len(self.basis)

    def _validate(self):
        # the base must embed: contracting the total relations recovers the base ones
        contracted = self.total.relations.eliminate_front(self.new_count)
        rebuilt = Ideal(
            self.base.ambient,
            [Poly(self.base.ambient, g.d) for g in contracted.gens],
        )
        if rebuilt != self.base.relations:
            raise TypeMismatch(
                "the total relations contract to "
                f"{rebuilt}, not to the base relations {self.base.relations}"
            )
        for i, b in enumerate(self.basis):
            coords = self.coordinates(b)
            for j, c in enumerate(coords):
                expected = 1 if i == j else 0
                if c != self.base.ambient.constant(expected):
                    raise TypeMismatch("basis fails the unit-coordinate check")
        self.multiplication_matrices()  # freeness check: every product has coordinates

    # -- coordinates -----------------------------------------------------------

    def lift_to_total(self, f):
        """A base-ambient polynomial viewed inside the total ambient ring."""
        f = self.base.ambient.poly(f)
        return f.inject_front(self.total.ambient, self.new_count)

    def lift_ideal(self, a):
        """A base ideal extended to the total ring (plus the total relations)."""
        if not isinstance(a, Ideal):
            a = Ideal(self.base.ambient, [self.base.ambient.poly(g) for g in a])
        gens = [self.lift_to_total(g) for g in a.gens]
        return Ideal(self.total.ambient, gens) + self.total.relations

    def contract_ideal(self, b):
        """A total ideal contracted to the base ring (plus the base relations)."""
        small = b.eliminate_front(self.new_count)
        gens = [Poly(self.base.ambient, g.d) for g in small.gens]
        return Ideal(self.base.ambient, gens) + self.base.relations

    def _block_basis(self):
        if self._gb is None:
            gb = self.total.relations.groebner(K.BLOCK, self.new_count)
            object.__setattr__(self, "_gb", gb)
        return self._gb

    def coordinates(self, s):
        """Coordinates of a total element over the basis, as base polynomials."""
        s = self.total.ambient.poly(s)
        basis_gb = self._block_basis()
        from .groebner import normal_form_of

        nf = normal_form_of(
            s.d,
            [g.d for g in basis_gb],
            K.BLOCK,
            self.new_count,
            self.total.ambient.p,
        )
        coords = [dict() for _ in self.basis]
        k = self.new_count
        for m, c in nf.items():
            head = m[:k]
            idx = self._basis_monos.get(head)
            if idx is None:
                raise TypeMismatch(
                    f"element {s} is not in the span of the basis: "
                    f"normal form contains the new-variable monomial {head}"
                )
            coords[idx][m[k:]] = c
        return [Poly(self.base.ambient, d) for d in coords]

    def assemble(self, coords):
        """Inverse of coordinates: sum of coords[i] * basis[i] in the total ring."""
        out = self.total.ambient.zero()
        for c, b in zip(coords, self.basis):
            out = out + self.lift_to_total(c) * b
        return out

    def multiplication_matrices(self):
        """For each basis element b_j, the matrix M_j with column i holding
        the coordinates of b_j * b_i."""
        if self._mult is None:
            mats = []
            for b_j in self.basis:
                cols = [self.coordinates(b_j * b_i) for b_i in self.basis]
                # store rows: M[k][i] = coefficient of basis k in b_j*b_i
                mat = [
                    [cols[i][k] for i in range(self.rank)] for k in range(self.rank)
                ]
                mats.append(mat)
            object.__setattr__(self, "_mult", tuple(mats))
        return self._mult

    def compose(self, outer):
        """The composite cover base -> total -> outer.total.

        outer must be a cover whose base is this cover's total ring.
        """
        if outer.base.ambient != self.total.ambient or outer.base.relations != self.total.relations:
            raise TypeMismatch("covers do not compose: inner total differs from outer base")
        new_count = outer.new_count + self.new_count
        basis = []
        for b2 in outer.basis:
            for b1 in self.basis:
                lifted = b1.inject_front(outer.total.ambient, outer.new_count)
                basis.append(b2 * lifted)
        return FiniteCover(self.base, outer.total, new_count, basis)


def make_simple_extension(base, f, var="t"):
    """The cover base -> base[var]/(f) for a monic polynomial f in one new variable.

    f may be a string (parsed over the extended ring) or a polynomial already
    living in the extended ring; the extended ring lists var first.
    """
    if not isinstance(base, QuotientRing):
        base = QuotientRing(base, None)
    if var in base.ambient.names:
        raise TypeMismatch(f"variable {var!r} already occurs in the base ring")
    total_ring = PolyRing(base.ambient.p, (var,) + base.ambient.names)
    f = total_ring.poly(f)
    d = f.degree_in(0)
    if d < 1:
        raise NotMonic(f"{f} has no {var} term")
    lead = {m[1:]: c for m, c in f.d.items() if m[0] == d}
    if lead != {(0,) * base.ambient.nvars: 1}:
        raise NotMonic(f"{f} is not monic in {var}")
    relations = Ideal(
        total_ring,
        [g.inject_front(total_ring, 1) for g in base.relations.gens] + [f],
    )
    total = QuotientRing(total_ring, relations)
    basis = [total_ring.gen(0) ** i for i in range(d)]
    return FiniteCover(base, total, 1, basis)


class TraceFunctional:
    """An R-linear functional S -> R given by its values on the basis."""

    __slots__ = ("cover", "values")

    def __init__(self, cover, values):
        values = tuple(cover.base.ambient.poly(v) for v in values)
        if len(values) != cover.rank:
            raise TypeMismatch(
                f"need {cover.rank} basis values, got {len(values)}"
            )
        object.__setattr__(self, "cover", cover)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("TraceFunctional is immutable")

    def __repr__(self):
        pairs = ", ".join(
            f"{b} -> {v}" for b, v in zip(self.cover.basis, self.values)
        )
        return f"TraceFunctional({pairs})"

    def apply(self, s):
        """The value on a total-ring element, reduced mod the base relations."""
        coords = self.cover.coordinates(s)
        out = self.cover.base.ambient.zero()
        for v, c in zip(self.values, coords):
            out = out + v * c
        return self.cover.base.reduce(out)


def trace_of(cover):
    """The trace functional: basis element -> trace of its multiplication matrix."""
    values = []
    for mat in cover.multiplication_matrices():
        tr = cover.base.ambient.zero()
        for k in range(cover.rank):
            tr = tr + mat[k][k]
        values.append(cover.base.reduce(tr))
    return TraceFunctional(cover, values)


def image_T(cover, T, b):
    """The base ideal generated by T over a module generating set of b."""
    if not isinstance(b, Ideal):
        b = Ideal(cover.total.ambient, [cover.total.ambient.poly(g) for g in b])
    b = b + cover.total.relations
    gens = []
    for g in b.gens:
        for basis_elt in cover.basis:
            val = T.apply(g * basis_elt)
            if not val.is_zero():
                gens.append(val)
    return Ideal(cover.base.ambient, gens) + cover.base.relations


def transpose_T(cover, T, a):
    """The largest total ideal whose T-image lies in a, via a syzygy kernel."""
    if not isinstance(a, Ideal):
        a = Ideal(cover.base.ambient, [cover.base.ambient.poly(g) for g in a])
    a = a + cover.base.relations
    mats = cover.multiplication_matrices()
    d = cover.rank
    rows = []
    for i in range(d):  # carrier index: coefficient of basis_i
        row = []
        for j in range(d):  # constraint index: multiply by basis_j
            w = cover.base.ambient.zero()
            for k in range(d):
                w = w + T.values[k] * mats[j][k][i]
            row.append(cover.base.reduce(w))
        rows.append(row)
    kernel = syzygy_kernel(rows, a)
    gens = [cover.assemble(tup) for tup in kernel]
    gens = [g for g in gens if not g.is_zero()]
    return Ideal(cover.total.ambient, gens) + cover.total.relations


@dataclass(frozen=True)
class TameResult:
    """Tameness verdict at a prime with the two compared ideals."""

    prime: Ideal
    transpose: Ideal
    radical_extension: Ideal
    tame: bool

    def __bool__(self):
        return self.tame


def is_tame_T_ramified(cover, T, p):
    """Whether the transpose of p equals the radical of its extension."""
    if not isinstance(p, Ideal):
        p = Ideal(cover.base.ambient, [cover.base.ambient.poly(g) for g in p])
    p = p + cover.base.relations
    transpose = transpose_T(cover, T, p)
    rad = radical(cover.lift_ideal(p))
    return TameResult(
        prime=p,
        transpose=transpose,
        radical_extension=rad,
        tame=transpose == rad,
    )


def fiber_primes(cover, p):
    """The primes of the total ring over p: minimal primes of the extension."""
    return minimal_primes(cover.lift_ideal(p))


def residual_trace_nonzero(cover, T, p, q):
    """Whether the induced residue functional at the fiber prime q is nonzero.

    Computed as: the T-image of the intersection of the other fiber primes is
    not inside p.
    """
    if not isinstance(p, Ideal):
        p = Ideal(cover.base.ambient, [cover.base.ambient.poly(g) for g in p])
    p = p + cover.base.relations
    if not isinstance(q, Ideal):
        q = Ideal(cover.total.ambient, [cover.total.ambient.poly(g) for g in q])
    q = q + cover.total.relations
    fibers = fiber_primes(cover, p)
    keys = {f.canonical_key() for f in fibers}
    if q.canonical_key() not in keys:
        raise TypeMismatch(f"{q} is not a prime over {p}")
    others = [f for f in fibers if f.canonical_key() != q.canonical_key()]
    if others:
        inter = others[0]
        for f in others[1:]:
            inter = inter.intersect(f)
    else:
        inter = Ideal(cover.total.ambient, [cover.total.ambient.one()])
    return not p.contains_ideal(image_T(cover, T, inter))


def tame_via_residual_traces(cover, T, p):
    """Independent tameness oracle: T maps the radical of pS into p and every
    residual trace is nonzero."""
    if not isinstance(p, Ideal):
        p = Ideal(cover.base.ambient, [cover.base.ambient.poly(g) for g in p])
    p = p + cover.base.relations
    rad = radical(cover.lift_ideal(p))
    if not p.contains_ideal(image_T(cover, T, rad)):
        return False
    return all(
        residual_trace_nonzero(cover, T, p, q) for q in fiber_primes(cover, p)
    )


def commutes_with_frobenius(cover, T):
    """Whether T(s^p) = T(s)^p on all of the total ring.

    Checking the basis suffices: both sides are additive and p-th-power
    semilinear over the base, and the basis generates.
    """
    p = cover.base.ambient.p
    for b in cover.basis:
        lhs = cover.base.reduce(T.apply(b ** p))
        rhs = cover.base.reduce(T.apply(b) ** p)
        if lhs != rhs:
            return False
    return True


def _phi_element(u, e, s, ring):
    """The standard projection applied to u*s: keep exponents congruent to
    q-1 mod q, shift down, take q-th roots (identity on prime-field scalars)."""
    q = ring.p ** e
    t = u * s
    out = {}
    for m, c in t.d.items():
        if all(x % q == q - 1 for x in m):
            out[tuple((x - (q - 1)) // q for x in m)] = c
    return Poly(ring, out)


@dataclass(frozen=True)
class DiagramReport:
    """Result of the transposition-square check, with a witness on failure."""

    ok: bool
    witness: object = None
    lhs: object = None
    rhs: object = None

    def __bool__(self):
        return self.ok


def check_transposition_diagram(pair_base, pair_total, cover, T):
    """Whether T intertwines the two multiplier maps: T(psi(F_* s)) = phi(F_* T(s))
    for s running over a module generating set of F_* S."""
    if pair_base.e != pair_total.e:
        raise TypeMismatch("the two pairs must share the Frobenius exponent")
    if pair_base.ring != cover.base.ambient or pair_total.ring != cover.total.ambient:
        raise TypeMismatch("pairs do not live on the cover's rings")
    q = pair_base.q
    base_ring = cover.base.ambient
    total_ring = cover.total.ambient
    base_monos = base_ring.monomials_upto((q - 1) * base_ring.nvars)
    base_monos = [m for m in base_monos if all(x < q for x in m)]
    for m in base_monos:
        mono = Poly(base_ring, {m: 1})
        lifted = cover.lift_to_total(mono)
        for b in cover.basis:
            s = lifted * b
            lhs = cover.base.reduce(T.apply(_phi_element(pair_total.u, pair_total.e, s, total_ring)))
            rhs = cover.base.reduce(_phi_element(pair_base.u, pair_base.e, T.apply(s), base_ring))
            if lhs != rhs:
                return DiagramReport(False, witness=s, lhs=lhs, rhs=rhs)
    return DiagramReport(True)


@dataclass(frozen=True)
class FiberedReport:
    """Verdict of the fibered conditions with per-prime failure records."""

    fibered: bool
    failures: tuple = ()
    checked: tuple = ()

    def __bool__(self):
        return self.fibered


def quasi_fibered_check(pair_base, pair_total, cover):
    """Condition (contraction): every compatible prime upstairs contracts to a
    compatible prime downstairs, and beta commutes with contraction."""
    failures = []
    checked = []
    lattice_S = pair_total.enumerate_compatible_primes()
    for qp in lattice_S.schpec_primes():
        contracted = cover.contract_ideal(qp)
        checked.append(str(qp))
        if not pair_base.is_compatible(contracted):
            failures.append(
                ("contraction", str(qp), f"{contracted} is not compatible downstairs")
            )
            continue
        beta_down = pair_base.beta_prime(contracted)
        beta_up = cover.contract_ideal(pair_total.beta_prime(qp))
        if beta_down != beta_up:
            failures.append(
                (
                    "beta-commutation",
                    str(qp),
                    f"beta downstairs {beta_down} != contracted beta {beta_up}",
                )
            )
    return FiberedReport(not failures, tuple(failures), tuple(checked))


def fibered_check(pair_base, pair_total, cover):
    """Both fibered conditions: contraction compatibility plus fiber membership
    (every minimal prime over a downstairs center is an upstairs center)."""
    quasi = quasi_fibered_check(pair_base, pair_total, cover)
    failures = list(quasi.failures)
    checked = list(quasi.checked)
    lattice_R = pair_base.enumerate_compatible_primes()
    sigma_S = pair_total.f_pure_locus()
    for p in lattice_R.schpec_primes():
        for q in fiber_primes(cover, p):
            checked.append(f"{p} ~> {q}")
            if not pair_total.is_compatible(q):
                failures.append(
                    ("fiber-membership", str(p), f"minimal prime {q} not compatible upstairs")
                )
            elif q.contains_ideal(sigma_S):
                failures.append(
                    ("fiber-membership", str(p), f"minimal prime {q} is not a center upstairs")
                )
    return FiberedReport(not failures, tuple(failures), tuple(checked))


@dataclass(frozen=True)
class MainTheoremReport:
    """Truth values of the three main equivalences, with per-prime details."""

    tame_over_cspec: bool
    fibered_with_tau: bool
    tame_over_schpec: bool
    cspec_details: tuple
    schpec_details: tuple
    fibered: FiberedReport
    tau_matches: tuple

    def as_table(self):
        return (
            ("(a) tame over every compatible prime", self.tame_over_cspec),
            ("(b) fibered with matching test ideals", self.fibered_with_tau),
            ("(c) tame over every center", self.tame_over_schpec),
        )


def main_theorem_check(pair_base, pair_total, cover, T):
    """Evaluate the three conditions independently and assert (a) => (b) => (c)."""
    lattice_R = pair_base.enumerate_compatible_primes()

    cspec_details = []
    for p in lattice_R.cspec_primes():
        cspec_details.append((str(p), bool(is_tame_T_ramified(cover, T, p))))
    a = all(t for _, t in cspec_details)

    schpec_details = []
    for p in lattice_R.schpec_primes():
        schpec_details.append((str(p), bool(is_tame_T_ramified(cover, T, p))))
    c = all(t for _, t in schpec_details)

    fibered = fibered_check(pair_base, pair_total, cover)
    tau_matches = []
    b = bool(fibered)
    if fibered:
        lattice_S = pair_total.enumerate_compatible_primes()
        for qp in lattice_S.schpec_primes():
            tau_up = pair_total.test_ideal_along(qp)
            down = cover.contract_ideal(qp)
            tau_down = pair_base.test_ideal_along(down)
            image = image_T(cover, T, tau_up.ideal)
            match = image == tau_down.ideal
            tau_matches.append((str(qp), str(image), str(tau_down.ideal), match))
            if not match:
                b = False

    if a and not b:
        raise AssertionError(
            "implication violated: tame over all compatible primes must imply the fibered condition"
        )
    if b and not c:
        raise AssertionError(
            "implication violated: the fibered condition must imply tameness over the centers"
        )
    return MainTheoremReport(
        tame_over_cspec=a,
        fibered_with_tau=b,
        tame_over_schpec=c,
        cspec_details=tuple(cspec_details),
        schpec_details=tuple(schpec_details),
        fibered=fibered,
        tau_matches=tuple(tau_matches),
    )


def compose_covers(inner, outer, T_inner, T_outer):
    """The composite cover and the composite trace (inner after outer).

    inner: base -> mid with trace T_inner: mid -> base;
    outer: mid -> top with trace T_outer: top -> mid.
    Returns (cover base -> top, functional top -> base).
    """
    composite = inner.compose(outer)
    values = []
    for b in composite.basis:
        values.append(T_inner.apply(T_outer.apply(b)))
    return composite, TraceFunctional(composite, values)


@dataclass(frozen=True)
class FiberReport:
    """Fiber dimensions over a maximal prime, normalized by the residue degree."""

    mu: int
    rho: int
    eta: int
    residue_degree: int


def fiber_report(cover, T, p):
    """Fiber dimensions at a maximal prime: total fiber, reduced fiber, and the
    transpose quotient, all as dimensions over the residue field."""
    if not isinstance(p, Ideal):
        p = Ideal(cover.base.ambient, [cover.base.ambient.poly(g) for g in p])
    p = p + cover.base.relations
    deg = staircase_dimension(p)
    if deg is None:
        raise TypeMismatch("fiber dimensions need a maximal prime (finite residue field)")
    extension = cover.lift_ideal(p)
    mu_total = staircase_dimension(extension)
    rho_total = staircase_dimension(radical(extension))
    eta_total = staircase_dimension(transpose_T(cover, T, p))
    if mu_total is None or rho_total is None or eta_total is None:
        raise TypeMismatch("the fiber over the prime is not finite")
    for name, val in (("mu", mu_total), ("rho", rho_total), ("eta", eta_total)):
        if val % deg:
            raise AssertionError(f"{name} dimension {val} not divisible by the residue degree {deg}")
    return FiberReport(
        mu=mu_total // deg,
        rho=rho_total // deg,
        eta=eta_total // deg,
        residue_degree=deg,
    )
