"""Sparse multivariate polynomials with integer coefficients.

A Poly is a map from exponent vectors (over a fixed, shared variable
tuple) to nonzero int coefficients.  Integer coefficients suffice for
the whole pipeline: realification, invariant polynomials and virtual
substitution all clear denominators as they go.  Rational values only
appear when a polynomial is *evaluated* at a rational point.

Monomials are ordered graded-lexicographically over the declared
variable tuple; that order fixes printing and the canonical sign of a
polynomial (leading coefficient positive).
"""

from math import gcd

from .rationals import Rat


class Poly:
    __slots__ = ("vars", "terms", "_hash", "_key")

    def __init__(self, vars, terms):
        self.vars = vars
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None
        self._key = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars):
        return Poly(vars, {})

    @staticmethod
    def const(vars, c):
        if c == 0:
            return Poly(vars, {})
        return Poly(vars, {(0,) * len(vars): int(c)})

    @staticmethod
    def var(vars, name):
        idx = vars.index(name)
        e = tuple(1 if k == idx else 0 for k in range(len(vars)))
        return Poly(vars, {e: 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name):
        idx = self.vars.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def variables(self):
        """Names that actually occur."""
        seen = set()
        for e in self.terms:
            for idx, p in enumerate(e):
                if p:
                    seen.add(self.vars[idx])
        return seen

    def monomial_count(self):
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            assert self.vars == other.vars, "polynomials over different variable lists"
            return other
        return Poly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(self.vars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- structure ---------------------------------------------------------

    def coeffs_in(self, name):
        """Write self = sum_i c_i(other vars) * name^i; return [c_0..c_d]."""
        idx = self.vars.index(name)
        d = self.degree_in(name)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            p = e[idx]
            e0 = tuple(0 if k == idx else v for k, v in enumerate(e))
            buckets[p][e0] = buckets[p].get(e0, 0) + c
        return [Poly(self.vars, b) for b in buckets]

    def derivative_in(self, name):
        idx = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            p = e[idx]
            if p == 0:
                continue
            e2 = tuple(v - 1 if k == idx else v for k, v in enumerate(e))
            terms[e2] = terms.get(e2, 0) + c * p
        return Poly(self.vars, terms)

    def substitute(self, name, value):
        """Replace a variable by another Poly (or int), exactly."""
        value = self._coerce(value) if not isinstance(value, int) else Poly.const(self.vars, value)
        out = Poly.zero(self.vars)
        power = Poly.const(self.vars, 1)
        for c_i in self.coeffs_in(name):
            out = out + c_i * power
            power = power * value
        return out

    def eval(self, point):
        """Evaluate at {name: rational}; returns an exact rational."""
        vals = [point.get(n) for n in self.vars]
        total = Rat(0)
        for e, c in self.terms.items():
            term = Rat(c)
            for k, p in enumerate(e):
                if p:
                    v = vals[k]
                    if v is None:
                        raise KeyError(f"unassigned variable {self.vars[k]!r}")
                    term = term * v ** p
            total = total + term
        return total

    # -- normal form -------------------------------------------------------

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def leading_coeff(self):
        """Coefficient of the graded-lex leading monomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        e = max(self.terms, key=lambda e: (sum(e), e))
        return self.terms[e]

    def primitive(self):
        """Divide out integer content; keeps the sign."""
        g = self.content()
        if g <= 1:
            return self
        return Poly(self.vars, {e: c // g for e, c in self.terms.items()})

    def sign_canonical(self):
        """Primitive part with positive leading coefficient."""
        p = self.primitive()
        return -p if p.leading_coeff() < 0 else p

    # -- printing ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def to_text(self):
        """Grammar-compatible text: '*' products only, no '^'."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for idx, p in enumerate(e):
                factors.extend([self.vars[idx]] * p)
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append((c < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()})"


def poly_sort_key(p):
    """Deterministic ordering key for polynomials over one variable list.

    Used to keep clause and output ordering independent of hash seeds.
    """
    if p._key is None:
        p._key = tuple(sorted(((sum(e),) + e + (c,) for e, c in p.terms.items()),
                              reverse=True))
    return p._key
