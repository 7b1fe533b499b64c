"""Multivariate polynomial rings over prime fields F_p.

``PolyRing`` is a value object (characteristic + variable names);
``Poly`` wraps a kernel term dict and supports ordinary operator syntax.
Text form: terms like ``2*x^3*y + x + 1`` joined by ``+``/``-``; printing
is canonical (descending graded reverse lexicographic order, coefficients
reduced to 0..p-1, no unary minus).
"""

import itertools
import re

from . import _kernel as K
from .errors import ParseError

SUPPORTED_CHARACTERISTICS = (2, 3, 5, 7, 11, 13)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed variable order."""

    __slots__ = ("p", "names", "_index")

    def __init__(self, p, names):
        if p not in SUPPORTED_CHARACTERISTICS:
            raise ValueError(f"characteristic must be one of {SUPPORTED_CHARACTERISTICS}, got {p}")
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        seen = set()
        for nm in names:
            if nm in seen:
                raise ValueError(f"duplicate variable name {nm!r}")
            seen.add(nm)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})

    def __setattr__(self, *a):
        raise AttributeError("PolyRing is immutable")

    @property
    def nvars(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.names == other.names

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={', '.join(self.names)})"

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name!r} in {self!r}") from None

    # --- constructors -------------------------------------------------
    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: 1})

    def constant(self, c):
        c %= self.p
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, c=1):
        c %= self.p
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        return Poly(self, {exps: c} if c else {})

    def poly(self, value):
        """Coerce text, int, dict, or Poly into this ring."""
        if isinstance(value, Poly):
            if value.ring != self:
                raise ValueError(f"polynomial belongs to {value.ring!r}, not {self!r}")
            return value
        if isinstance(value, int):
            return self.constant(value)
        if isinstance(value, dict):
            out = {}
            for m, c in value.items():
                c %= self.p
                if c:
                    out[tuple(m)] = c
            return Poly(self, out)
        if isinstance(value, str):
            return parse_poly(self, value)
        raise TypeError(f"cannot coerce {type(value).__name__} to a polynomial")

    # --- ring surgery ---------------------------------------------------
    def extend_front(self, new_names):
        return PolyRing(self.p, tuple(new_names) + self.names)

    def drop_front(self, k):
        return PolyRing(self.p, self.names[k:])

    def monomials_upto(self, deg, nvars=None):
        """All exponent tuples of total degree <= deg, ascending, deterministic."""
        n = self.nvars if nvars is None else nvars
        out = []
        for d in range(deg + 1):
            for c in itertools.combinations_with_replacement(range(n), d):
                e = [0] * n
                for i in c:
                    e[i] += 1
                out.append(tuple(e))
        return out


class Poly:
    """Element of a PolyRing; wraps a kernel dict {exponents: coefficient}."""

    __slots__ = ("ring", "d")

    def __init__(self, ring, d):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # --- basic queries --------------------------------------------------
    def is_zero(self):
        return not self.d

    def is_one(self):
        return self.d == {(0,) * self.ring.nvars: 1}

    def is_constant(self):
        return all(not any(m) for m in self.d)

    def constant_value(self):
        return self.d.get((0,) * self.ring.nvars, 0)

    def total_degree(self):
        return max((K.mono_deg(m) for m in self.d), default=-1)

    def degree_in(self, i):
        return max((m[i] for m in self.d), default=-1)

    def vars_used(self):
        used = set()
        for m in self.d:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return sorted(used)

    def leading_term(self, okind=K.GREVLEX, split=0):
        if not self.d:
            raise ValueError("zero polynomial has no leading term")
        return K.leading_term(self.d, okind, split)

    def coefficient_of(self, exps):
        return self.d.get(tuple(exps), 0)

    def sorted_terms(self):
        """Terms (exponents, coefficient) descending in grevlex."""
        monos = sorted(self.d, key=_grevlex_sort_key, reverse=True)
        return [(m, self.d[m]) for m in monos]

    # --- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("mixed-ring arithmetic")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ring, K.poly_add(self.d, other.d, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ring, K.poly_sub(self.d, other.d, self.ring.p))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ring, K.poly_sub(other.d, self.d, self.ring.p))

    def __neg__(self):
        return Poly(self.ring, K.poly_scale(self.d, self.ring.p - 1, self.ring.p))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ring, K.poly_mul(self.d, other.d, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, q):
        """self**q computed termwise; q must be a power of the characteristic."""
        p = self.ring.p
        qq = q
        while qq > 1 and qq % p == 0:
            qq //= p
        if qq != 1:
            raise ValueError(f"{q} is not a power of {p}")
        return Poly(self.ring, {tuple(e * q for e in m): c for m, c in self.d.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            return self.d == self.ring.constant(other).d
        return isinstance(other, Poly) and self.ring == other.ring and self.d == other.d

    def __hash__(self):
        return hash((self.ring, frozenset(self.d.items())))

    def __bool__(self):
        return bool(self.d)

    # --- structure ops -----------------------------------------------------
    def substitute(self, mapping):
        """Substitute polynomials for variables: mapping {var_index: Poly}."""
        ring = self.ring
        for v in mapping.values():
            if v.ring != ring:
                raise ValueError("substitution values must live in the same ring")
        out = ring.zero()
        pow_cache = {i: {0: ring.one()} for i in mapping}

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * mapping[i]
            return cache[e]

        for m, c in self.d.items():
            piece = {tuple(0 if i in mapping else e for i, e in enumerate(m)): c}
            term = Poly(ring, piece)
            for i in mapping:
                if m[i]:
                    term = term * power(i, m[i])
            out = out + term
        return out

    def inject_front(self, big_ring, k):
        """View in a ring that has k extra leading variables."""
        if big_ring.p != self.ring.p or big_ring.names[k:] != self.ring.names:
            raise ValueError("target ring does not extend this ring at the front")
        zero = (0,) * k
        return Poly(big_ring, {zero + m: c for m, c in self.d.items()})

    def drop_front(self, small_ring, k):
        """Project to a ring without the k leading variables; they must not occur."""
        if small_ring.p != self.ring.p or self.ring.names[k:] != small_ring.names:
            raise ValueError("target ring does not match after dropping variables")
        out = {}
        for m, c in self.d.items():
            if any(m[:k]):
                raise ValueError("polynomial involves a variable being dropped")
            out[m[k:]] = c
        return Poly(small_ring, out)

    def to_univariate(self, i):
        """Coefficient list [c_0, ..., c_d] in variable i; other vars must not occur."""
        d = self.degree_in(i)
        coeffs = [0] * (d + 1) if d >= 0 else []
        for m, c in self.d.items():
            if any(e and j != i for j, e in enumerate(m)):
                raise ValueError("polynomial is not univariate in the requested variable")
            coeffs[m[i]] = c
        return coeffs

    def from_univariate(ring, coeffs, i):
        out = {}
        for e, c in enumerate(coeffs):
            c %= ring.p
            if c:
                exp = [0] * ring.nvars
                exp[i] = e
                out[tuple(exp)] = c
        return Poly(ring, out)

    from_univariate = staticmethod(from_univariate)

    # --- printing -----------------------------------------------------------
    def __str__(self):
        if not self.d:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(m):
                factors.append(str(c))
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} over F_{self.ring.p}>"


def _grevlex_sort_key(m):
    return (K.mono_deg(m), tuple(-e for e in reversed(m)))


# --- parsing -------------------------------------------------------------


class _Tokens:
    def __init__(self, text, line=None):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, line=self.line, col=self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start: self.pos])

    def take_name(self):
        self.skip_ws()
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a variable name")
        self.pos = m.end()
        return m.group(0)


def parse_poly(ring, text, line=None):
    """Parse polynomial text: +, -, *, ^ (or **), integers, variables, parens."""
    toks = _Tokens(text, line)
    poly = _parse_expr(ring, toks)
    toks.skip_ws()
    if toks.pos != len(toks.text):
        toks.error(f"unexpected {toks.text[toks.pos]!r} in polynomial")
    return poly


def _parse_expr(ring, toks):
    ch = toks.peek()
    negate = False
    if ch == "-":
        toks.pos += 1
        negate = True
    elif ch == "+":
        toks.pos += 1
    result = _parse_term(ring, toks)
    if negate:
        result = -result
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.pos += 1
            result = result + _parse_term(ring, toks)
        elif ch == "-":
            toks.pos += 1
            result = result - _parse_term(ring, toks)
        else:
            return result


def _parse_term(ring, toks):
    result = _parse_factor(ring, toks)
    while True:
        ch = toks.peek()
        if ch == "*" and not toks.text.startswith("**", toks.pos):
            toks.pos += 1
            result = result * _parse_factor(ring, toks)
        elif ch == "(" or ch.isdigit() or _NAME_RE.match(ch or " "):
            result = result * _parse_factor(ring, toks)
        else:
            return result


def _parse_factor(ring, toks):
    base = _parse_atom(ring, toks)
    toks.skip_ws()
    if toks.text.startswith("**", toks.pos):
        toks.pos += 2
        return base ** toks.take_int()
    if toks.peek() == "^":
        toks.pos += 1
        return base ** toks.take_int()
    return base


def _parse_atom(ring, toks):
    ch = toks.peek()
    if ch == "":
        toks.error("unexpected end of polynomial")
    if ch == "(":
        toks.pos += 1
        inner = _parse_expr(ring, toks)
        if toks.peek() != ")":
            toks.error("missing closing parenthesis")
        toks.pos += 1
        return inner
    if ch.isdigit():
        return ring.constant(toks.take_int())
    name = toks.take_name()
    return ring.gen(ring.var_index(name))
