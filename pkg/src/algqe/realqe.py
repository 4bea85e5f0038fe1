"""Quantifier elimination over ordered fields by virtual substitution.

Atoms are sign conditions p rho 0 with rho in {=, <=, <, !=} and p an
integer-coefficient polynomial.  The eliminable fragment is: every atom
has degree <= 2 in the variable being eliminated at the moment it is
eliminated.  Strict < and != atoms never appear in the surface algebra
language but arise internally from guards and negations.

Elimination of `exists x` from a conjunction works clause by clause:

  * an equality linear in x is consumed by substituting its root -r/c
    (denominators cleared, inequality signs corrected by the parity of
    the power of c), guarded by c != 0, with the c = 0 branch kept;
  * an equality quadratic in x contributes its two guarded root
    expressions (u + v*sqrt(D))/w and a degenerate a = 0 branch;
  * with no equality, the classical test point set is used: -infinity,
    the root expressions of weak (<=) atoms, and root + epsilon for
    strict (<, !=) atoms.

Root expressions are substituted *virtually*: the result is always a
polynomial formula, never a radical.  -infinity and epsilon points are
formal sign cascades over leading coefficients/derivatives, never a
numeric stand-in.
"""

from dataclasses import dataclass, field

from . import formulas as F
from .errors import DegreeTooHigh, NotApplicable, SizeLimitExceeded
from .polynomials import Poly, poly_sort_key
from .rationals import Rat

EQ, LE, LT, NE = "eq", "le", "lt", "ne"

_REL_TEXT = {EQ: "=", LE: "<=", LT: "<", NE: "!="}
_REL_SIGNS = {EQ: frozenset({0}), LE: frozenset({-1, 0}),
              LT: frozenset({-1}), NE: frozenset({-1, 1})}
_ALL_SIGNS = frozenset({-1, 0, 1})


@dataclass(frozen=True)
class RealAtom(F.Formula):
    """poly rho 0; normalized via make_atom (content removed, = and !=
    oriented with positive leading coefficient)."""

    poly: Poly
    rel: str

    def negated(self):
        if self.rel == EQ:
            return RealAtom(self.poly, NE)
        if self.rel == NE:
            return RealAtom(self.poly, EQ)
        if self.rel == LE:
            return make_atom(-self.poly, LT)
        return make_atom(-self.poly, LE)

    def variables_in_order(self):
        occurring = self.poly.variables()
        return [v for v in self.poly.vars if v in occurring]

    def atom_text(self):
        if self.rel == LT:
            # the grammar has no '<': p < 0 is printed as !(0 <= p)
            return "!(0 <= " + self.poly.to_text() + ")"
        return self.poly.to_text() + " " + _REL_TEXT[self.rel] + " 0"

    def sort_key(self):
        return (self.rel, poly_sort_key(self.poly))

    def __str__(self):
        return self.atom_text()


def make_atom(poly, rel):
    p = poly.primitive()
    if rel in (EQ, NE) and p.leading_coeff() < 0:
        p = -p
    return RealAtom(p, rel)


def const_truth(atom):
    """Truth value of an atom with a constant polynomial, else None."""
    if not atom.poly.is_const():
        return None
    c = atom.poly.const_value()
    if atom.rel == EQ:
        return c == 0
    if atom.rel == NE:
        return c != 0
    if atom.rel == LE:
        return c <= 0
    return c < 0


def true_atom(vars):
    return RealAtom(Poly.zero(vars), EQ)


def false_atom(vars):
    return RealAtom(Poly.zero(vars), NE)


def atom_holds(atom, point):
    v = atom.poly.eval(point)
    if atom.rel == EQ:
        return v == 0
    if atom.rel == NE:
        return v != 0
    if atom.rel == LE:
        return v <= 0
    return v < 0


# ---------------------------------------------------------------------------
# clauses: conjunctions of atoms, canonically ordered tuples


def make_clause(atoms):
    return tuple(sorted(set(atoms), key=lambda a: a.sort_key()))


def clause_text(clause):
    if not clause:
        return "0 = 0"
    return " && ".join(a.atom_text() for a in clause)


def _definite_signs(p):
    """Possible value signs of p readable off the monomials: if every
    exponent is even and all coefficients share a sign, p is semidefinite."""
    if p.is_zero():
        return frozenset({0})
    if p.is_const():
        c = p.const_value()
        return frozenset({1 if c > 0 else -1})
    if any(x % 2 for e in p.terms for x in e):
        return _ALL_SIGNS
    coeffs = list(p.terms.values())
    if all(c > 0 for c in coeffs):
        return frozenset({1}) if p.const_value() > 0 else frozenset({0, 1})
    if all(c < 0 for c in coeffs):
        return frozenset({-1}) if p.const_value() < 0 else frozenset({-1, 0})
    return _ALL_SIGNS


def _radical(p_mono):
    """x^2*y^4 -> x*y for a single monomial."""
    (e, _c), = p_mono.terms.items()
    e1 = tuple(1 if x else 0 for x in e)
    return Poly(p_mono.vars, {e1: 1})


def _mirror(signs):
    return frozenset(-s for s in signs)


def _emit_atoms(key, signs, possible):
    """Atoms pinning the value sign of the canonical poly `key` to
    `signs`, given that only `possible` signs can occur at all."""
    eff = signs & possible
    out = []
    if eff == possible:
        return out
    if eff == frozenset({0}):
        if possible <= frozenset({0, 1}) or possible <= frozenset({-1, 0}):
            # semidefinite sum of even monomials: zero iff each term is zero
            for e, _c in key.terms.items():
                mono = Poly(key.vars, {e: 1})
                out.append(make_atom(_radical(mono), EQ))
            return out
        return [make_atom(key, EQ)]
    if eff == frozenset({-1, 1}):
        return [make_atom(key, NE)]
    if eff == frozenset({-1, 0}):
        return [make_atom(key, LE)]
    if eff == frozenset({0, 1}):
        return [make_atom(-key, LE)]
    if eff == frozenset({-1}):
        if possible == frozenset({-1, 0}):
            return [make_atom(key, NE)]
        return [make_atom(key, LT)]
    if eff == frozenset({1}):
        if possible == frozenset({0, 1}):
            return [make_atom(key, NE)]
        return [make_atom(-key, LT)]
    raise AssertionError(f"unreachable sign set {eff}")


def simplify_clause(atoms):
    """Conjunction simplification: None means contradiction, else a
    canonical clause tuple (possibly empty = true).

    Folds constants, merges all atoms about the same polynomial through
    a sign-set calculus, uses semidefiniteness of sums of even-exponent
    monomials (splitting such p = 0 into per-monomial radicals), and
    propagates var = integer-constant equalities.
    """
    pending = make_clause(atoms)
    for _ in range(10):
        result = _simplify_pass(pending)
        if result is None:
            return None
        if result == pending:
            return result
        pending = result
    return pending


def _simplify_pass(clause):
    signmap = {}
    for atom in clause:
        t = const_truth(atom)
        if t is True:
            continue
        if t is False:
            return None
        key = atom.poly.sign_canonical()
        allowed = _REL_SIGNS[atom.rel]
        if key != atom.poly.primitive():
            allowed = _mirror(allowed)
        signmap[key] = signmap.get(key, _ALL_SIGNS) & allowed

    out = []
    definition = None
    for key in sorted(signmap, key=poly_sort_key):
        signs = signmap[key]
        possible = _definite_signs(key)
        if not (signs & possible):
            return None
        out.extend(_emit_atoms(key, signs, possible))
        if definition is None and (signs & possible) == frozenset({0}):
            lin = _unit_linear(key)
            if lin is not None:
                definition = lin

    if definition is not None:
        name, value = definition
        replaced = []
        for atom in out:
            if name in atom.poly.variables() and _unit_linear(atom.poly.sign_canonical()) != definition:
                replaced.append(make_atom(atom.poly.substitute(name, value), atom.rel))
            else:
                replaced.append(atom)
        out = replaced
    return make_clause(out)


def _unit_linear(key):
    """If key = +-(x - c) for a variable x and integer c, return (x, c)."""
    if key.total_degree() != 1 or key.monomial_count() > 2:
        return None
    lin = [(e, c) for e, c in key.terms.items() if sum(e) == 1]
    if len(lin) != 1 or abs(lin[0][1]) != 1:
        return None
    (e, c), = lin
    idx = e.index(1)
    const = key.const_value()
    # key = c*x + const with c = +-1  ->  x = -const/c
    return (key.vars[idx], -const * c)


# ---------------------------------------------------------------------------
# DNF lists of clauses


def dnf_and_clause(dnf, extra_atoms):
    """Conjoin extra atoms onto every clause; drops contradictions."""
    out = []
    for clause in dnf:
        merged = simplify_clause(clause + tuple(extra_atoms))
        if merged is not None:
            out.append(merged)
    return out


def dnf_and(d1, d2, limits=None):
    if len(d1) * len(d2) and limits is not None:
        limits.check_clauses(len(d1) * len(d2))
    out = []
    for c1 in d1:
        for c2 in d2:
            merged = simplify_clause(c1 + c2)
            if merged is not None:
                out.append(merged)
    return dedupe_clauses(out)


def dedupe_clauses(clauses):
    seen = {}
    for c in clauses:
        if c not in seen:
            seen[c] = True
        if c == ():
            return [()]
    return list(seen)


def absorb_clauses(clauses):
    """Drop clauses that are supersets of another clause."""
    if len(clauses) > 512:
        return clauses
    sets = [frozenset(c) for c in clauses]
    keep = []
    for i, c in enumerate(clauses):
        redundant = any(j != i and sets[j] <= sets[i] and (sets[j] != sets[i] or j < i)
                        for j in range(len(clauses)))
        if not redundant:
            keep.append(c)
    return keep


def clause_holds(clause, point):
    return all(atom_holds(a, point) for a in clause)


def dnf_holds(clauses, point):
    return any(clause_holds(c, point) for c in clauses)


class Limits:
    """Size bounds for elimination; exceeding either aborts."""

    def __init__(self, max_clauses=100_000, max_monomials=1_000_000):
        self.max_clauses = max_clauses
        self.max_monomials = max_monomials

    def check_clauses(self, n):
        if n > self.max_clauses:
            raise SizeLimitExceeded("clause", n, self.max_clauses)

    def check_poly(self, p):
        if p.monomial_count() > self.max_monomials:
            raise SizeLimitExceeded("monomial", p.monomial_count(), self.max_monomials)
        return p

    def check_total_monomials(self, clauses):
        total = sum(a.poly.monomial_count() for c in clauses for a in c)
        if total > self.max_monomials:
            raise SizeLimitExceeded("monomial", total, self.max_monomials)


@dataclass
class BackendCounters:
    eq_subst: int = 0
    linear_vs: int = 0
    quadratic_vs: int = 0

    def as_dict(self):
        return {"eq_subst": self.eq_subst, "linear_vs": self.linear_vs,
                "quadratic_vs": self.quadratic_vs}


# ---------------------------------------------------------------------------
# virtual substitution of test points


def _linear_parts(p, var):
    c0, c1 = (p.coeffs_in(var) + [Poly.zero(p.vars)] * 2)[:2]
    return c1, c0  # p = c1*var + c0


def _quadratic_parts(p, var):
    cs = p.coeffs_in(var) + [Poly.zero(p.vars)] * 3
    return cs[2], cs[1], cs[0]  # p = a*var^2 + b*var + c


def subst_rational(atom, var, num, den):
    """atom[var := num/den] as a conjunction (list) of atoms; den != 0 is
    the caller's guard.  Signs of order atoms are fixed by multiplying
    with den once more when the degree is odd."""
    d = atom.poly.degree_in(var)
    if d == 0:
        return [atom]
    coeffs = atom.poly.coeffs_in(var)
    P = Poly.zero(atom.poly.vars)
    num_pow = Poly.const(atom.poly.vars, 1)
    den_pows = [Poly.const(atom.poly.vars, 1)]
    for _ in range(d):
        den_pows.append(den_pows[-1] * den)
    for i, c in enumerate(coeffs):
        P = P + c * num_pow * den_pows[d - i]
        num_pow = num_pow * num
    if atom.rel in (LE, LT) and d % 2 == 1:
        P = P * den
    return [make_atom(P, atom.rel)]


def _sqrt_value(atom, var, u, v, w, D):
    """p((u + v*sqrt(D))/w) * w^d * (w if parity fix needed) = A + B*sqrt(D)."""
    d = atom.poly.degree_in(var)
    coeffs = atom.poly.coeffs_in(var)
    vars = atom.poly.vars
    one = Poly.const(vars, 1)
    A, B = Poly.zero(vars), Poly.zero(vars)
    ai, bi = one, Poly.zero(vars)  # (u + v*sqrt(D))^i = ai + bi*sqrt(D)
    w_pows = [one]
    for _ in range(d):
        w_pows.append(w_pows[-1] * w)
    for i, c in enumerate(coeffs):
        A = A + c * ai * w_pows[d - i]
        B = B + c * bi * w_pows[d - i]
        ai, bi = ai * u + bi * v * D, ai * v + bi * u
    if atom.rel in (LE, LT) and d % 2 == 1:
        A, B = A * w, B * w
    return A, B


def _sqrt_sign_dnf(A, B, D, rel):
    """DNF for sign(A + B*sqrt(D)) rel 0, assuming D >= 0 holds."""
    if B.is_zero():
        return [make_clause([make_atom(A, rel)])]
    if A.is_zero():
        # sign(B*sqrt(D)): 0 when D = 0, else sign(B)
        if rel == EQ:
            return [make_clause([make_atom(B, EQ)]), make_clause([make_atom(D, EQ)])]
        if rel == NE:
            return [make_clause([make_atom(B, NE), make_atom(D, NE)])]
        if rel == LE:
            return [make_clause([make_atom(B, LE)]), make_clause([make_atom(D, EQ)])]
        return [make_clause([make_atom(B, LT), make_atom(D, NE)])]
    AB = A * B
    A2B2D = A * A - B * B * D
    if rel == EQ:
        return [make_clause([make_atom(AB, LE), make_atom(A2B2D, EQ)])]
    if rel == NE:
        return [make_clause([make_atom(-AB, LT)]),
                make_clause([make_atom(A2B2D, NE)])]
    if rel == LE:
        # A + B*sqrt(D) <= 0  iff  (A <= 0 and B^2*D <= A^2) or (B <= 0 and A^2 <= B^2*D)
        return [make_clause([make_atom(A, LE), make_atom(-A2B2D, LE)]),
                make_clause([make_atom(B, LE), make_atom(A2B2D, LE)])]
    # LT: (<= 0) and (!= 0)
    le_dnf = _sqrt_sign_dnf(A, B, D, LE)
    ne_dnf = _sqrt_sign_dnf(A, B, D, NE)
    return dnf_and(le_dnf, ne_dnf)


def subst_sqrt(atom, var, u, v, w, D):
    """atom[var := (u + v*sqrt(D))/w] as a DNF; guards w != 0, D >= 0
    belong to the caller."""
    if atom.poly.degree_in(var) == 0:
        return [make_clause([atom])]
    A, B = _sqrt_value(atom, var, u, v, w, D)
    return _sqrt_sign_dnf(A, B, D, atom.rel)


def subst_minus_inf(atom, var):
    """atom[var := -infinity] as a DNF over coefficient signs."""
    d = atom.poly.degree_in(var)
    if d == 0:
        return [make_clause([atom])]
    coeffs = atom.poly.coeffs_in(var)
    if atom.rel == EQ:
        return [make_clause([make_atom(c, EQ) for c in coeffs])]
    if atom.rel == NE:
        return [make_clause([make_atom(c, NE)]) for c in coeffs]
    clauses = []
    # sign at -infinity is the sign of the top nonvanishing c_i times (-1)^i
    for i in range(d, -1, -1):
        lead = coeffs[i] if i % 2 == 0 else -coeffs[i]
        cl = [make_atom(lead, LT)] + [make_atom(coeffs[j], EQ) for j in range(i + 1, d + 1)]
        clauses.append(make_clause(cl))
    if atom.rel == LE:
        clauses.append(make_clause([make_atom(c, EQ) for c in coeffs]))
    return dedupe_clauses(clauses)


class RationalPoint:
    """var := num/den with guards (den != 0 unless constant)."""

    def __init__(self, num, den, guards):
        self.num = num
        self.den = den
        self.guards = guards

    def subst(self, atom, var):
        return [make_clause(subst_rational(atom, var, self.num, self.den))]


class SqrtPoint:
    """var := (u + v*sqrt(D))/w with guards (w != 0, D >= 0)."""

    def __init__(self, u, v, w, D, guards):
        self.u = u
        self.v = v
        self.w = w
        self.D = D
        self.guards = guards

    def subst(self, atom, var):
        return subst_sqrt(atom, var, self.u, self.v, self.w, self.D)


class MinusInfPoint:
    guards = ()

    def subst(self, atom, var):
        return subst_minus_inf(atom, var)


class EpsPoint:
    """base + epsilon for an infinitesimal epsilon > 0."""

    def __init__(self, base):
        self.base = base
        self.guards = base.guards

    def subst(self, atom, var):
        d = atom.poly.degree_in(var)
        if d == 0:
            return [make_clause([atom])]
        derivs = [atom.poly]
        while derivs[-1].degree_in(var) > 0:
            derivs.append(derivs[-1].derivative_in(var))

        def at_base(p, rel):
            return self.base.subst(make_atom(p, rel), var)

        if atom.rel == EQ:
            out = [()]
            for p in derivs:
                out = dnf_and(out, at_base(p, EQ))
            return out
        if atom.rel == NE:
            out = []
            for p in derivs:
                out.extend(at_base(p, NE))
            return dedupe_clauses(out)
        # sign of p(base + eps) is the first nonzero of p(base), p'(base), ...
        lt_dnf = []
        prefix = [()]
        for p in derivs:
            lt_dnf.extend(dnf_and(prefix, at_base(p, LT)))
            prefix = dnf_and(prefix, at_base(p, EQ))
        if atom.rel == LT:
            return dedupe_clauses(lt_dnf)
        return dedupe_clauses(lt_dnf + prefix)  # LE: < 0 or all derivatives zero


def subst_point_into_clause(clause, var, point, limits=None):
    """Substitute a test point into every atom of a clause; returns a DNF."""
    start = simplify_clause(point.guards)
    if start is None:
        return []
    dnf = [start]
    for atom in clause:
        dnf = dnf_and(dnf, point.subst(atom, var), limits)
        if not dnf:
            return []
    return dnf


def clause_vars(clause):
    out = set()
    for a in clause:
        out |= a.poly.variables()
    return out


def _pick_equality(eqs):
    """Prefer a constant coefficient, then small coefficient/small atom."""
    def key(item):
        c, _r, atom = item
        return (0 if c.is_const() else 1, c.monomial_count(), c.total_degree(),
                atom.poly.monomial_count(), atom.sort_key())
    return min(eqs, key=key)


def eliminate_var_clause(clause, var, counters, limits):
    """DNF equivalent to (exists var) clause, with var eliminated."""
    atoms_v = [a for a in clause if var in a.poly.variables()]
    if not atoms_v:
        return [clause]
    for a in atoms_v:
        d = a.poly.degree_in(var)
        if d > 2:
            raise DegreeTooHigh(var, a.atom_text(), d)
    rest_clause = tuple(a for a in clause if var not in a.poly.variables())

    lin_eqs = []
    quad_eqs = []
    for a in atoms_v:
        if a.rel != EQ:
            continue
        if a.poly.degree_in(var) == 1:
            c, r = _linear_parts(a.poly, var)
            lin_eqs.append((c, r, a))
        else:
            quad_eqs.append(a)

    if lin_eqs:
        c, r, eq = _pick_equality(lin_eqs)
        counters.eq_subst += 1
        others = tuple(a for a in clause if a != eq)
        main_atoms = []
        for a in others:
            for na in subst_rational(a, var, -r, c):
                if limits is not None:
                    limits.check_poly(na.poly)
                main_atoms.append(na)
        if not c.is_const():
            main_atoms.append(make_atom(c, NE))
        results = []
        main = simplify_clause(main_atoms)
        if main is not None:
            results.append(main)
        if not c.is_const():
            degen = simplify_clause(others + (make_atom(c, EQ), make_atom(r, EQ)))
            if degen is not None:
                results.extend(eliminate_var_clause(degen, var, counters, limits))
        return dedupe_clauses(results)

    if quad_eqs:
        eq = min(quad_eqs, key=lambda a: (a.poly.monomial_count(), a.sort_key()))
        counters.quadratic_vs += 1
        a2, b1, c0 = _quadratic_parts(eq.poly, var)
        others = tuple(a for a in clause if a != eq)
        D = b1 * b1 - 4 * a2 * c0
        guards = [make_atom(-D, LE)]
        if not a2.is_const():
            guards.append(make_atom(a2, NE))
        results = []
        for sv in (1, -1):
            pt = SqrtPoint(-b1, Poly.const(eq.poly.vars, sv), 2 * a2, D, tuple(guards))
            results.extend(subst_point_into_clause(others, var, pt, limits))
        if not a2.is_const():
            lin_atom = make_atom(eq.poly - a2 * Poly.var(eq.poly.vars, var) ** 2, EQ)
            degen = simplify_clause(others + (make_atom(a2, EQ), lin_atom))
            if degen is not None:
                results.extend(eliminate_var_clause(degen, var, counters, limits))
        return dedupe_clauses(results)

    # no equalities: full test point set
    if any(a.poly.degree_in(var) == 2 for a in atoms_v):
        counters.quadratic_vs += 1
    else:
        counters.linear_vs += 1
    points = [MinusInfPoint()]
    vars_ = atoms_v[0].poly.vars
    for a in atoms_v:
        candidates = []
        if a.poly.degree_in(var) == 1:
            c, r = _linear_parts(a.poly, var)
            guards = () if c.is_const() else (make_atom(c, NE),)
            candidates.append(RationalPoint(-r, c, guards))
        else:
            a2, b1, c0 = _quadratic_parts(a.poly, var)
            D = b1 * b1 - 4 * a2 * c0
            guards = [make_atom(-D, LE)]
            if not a2.is_const():
                guards.append(make_atom(a2, NE))
            for sv in (1, -1):
                candidates.append(SqrtPoint(-b1, Poly.const(vars_, sv), 2 * a2, D, tuple(guards)))
            if not a2.is_const() and not b1.is_zero():
                candidates.append(RationalPoint(-c0, b1,
                                                (make_atom(a2, EQ), make_atom(b1, NE))))
        if a.rel == LE:
            points.extend(candidates)
        else:  # strict: root + epsilon
            points.extend(EpsPoint(c) for c in candidates)
    results = []
    for pt in points:
        results.extend(subst_point_into_clause(clause, var, pt, limits))
        if limits is not None:
            limits.check_clauses(len(results))
    return dedupe_clauses(results)


def _pick_var(clause, active, order):
    if order is not None:
        for v in order:
            if v in active:
                var = v
                break
        else:
            var = sorted(active)[0]
    else:
        def key(v):
            degs = [a.poly.degree_in(v) for a in clause if v in a.poly.variables()]
            maxdeg = max(degs)
            has_lin_const = any(a.rel == EQ and a.poly.degree_in(v) == 1
                                and _linear_parts(a.poly, v)[0].is_const()
                                for a in clause)
            has_lin = any(a.rel == EQ and a.poly.degree_in(v) == 1 for a in clause)
            return (maxdeg > 2, 0 if has_lin_const else (1 if has_lin else 2),
                    maxdeg, len(degs), v)
        var = min(active, key=key)
    return var


def eliminate_block(clauses, block_vars, order=None, limits=None, counters=None):
    """Eliminate an existential block from a DNF, clause by clause.

    Returns a DNF free of every block variable.  `order` forces the
    elimination order; the default heuristic prefers variables bound by
    a linear equality (constant coefficient first), then minimal degree.
    """
    if limits is None:
        limits = Limits()
    if counters is None:
        counters = BackendCounters()
    block = tuple(block_vars)
    work = [(clause, block) for clause in clauses]
    output = []
    while work:
        clause, vars_left = work.pop()
        active = [v for v in vars_left if v in clause_vars(clause)]
        if not active:
            output.append(clause)
            continue
        var = _pick_var(clause, active, order)
        pieces = eliminate_var_clause(clause, var, counters, limits)
        rest = tuple(v for v in vars_left if v != var)
        for piece in pieces:
            work.append((piece, rest))
        limits.check_clauses(len(work) + len(output))
        limits.check_total_monomials([c for c, _ in work])
    return absorb_clauses(dedupe_clauses(output))


# ---------------------------------------------------------------------------
# spec surface: eq_substitute / linear_vs / quadratic_vs on explicit inputs


def eq_substitute(clause, var):
    """Substitute the root of an equality linear in var through the clause.

    Returns (main_clause, degenerate_clause_or_None); the main clause
    carries the guard c != 0, the degenerate branch asserts c = 0 and
    r = 0 (and may still mention var).  Raises NotApplicable when no
    equality atom is linear in var.
    """
    lin_eqs = []
    for a in clause:
        if a.rel == EQ and a.poly.degree_in(var) == 1:
            c, r = _linear_parts(a.poly, var)
            lin_eqs.append((c, r, a))
    if not lin_eqs:
        raise NotApplicable(f"no equality linear in {var!r}")
    c, r, eq = _pick_equality(lin_eqs)
    others = tuple(a for a in clause if a != eq)
    main_atoms = []
    for a in others:
        main_atoms.extend(subst_rational(a, var, -r, c))
    degen = None
    if not c.is_const():
        main_atoms.append(make_atom(c, NE))
        degen = simplify_clause(others + (make_atom(c, EQ), make_atom(r, EQ)))
    main = simplify_clause(main_atoms)
    return main, degen


def _check_degrees(clauses, var, bound):
    for clause in clauses:
        for a in clause:
            d = a.poly.degree_in(var)
            if d > bound:
                raise DegreeTooHigh(var, a.atom_text(), d)


def linear_vs(clauses, var, limits=None, counters=None):
    """Eliminate exists-var from a DNF where var occurs at degree <= 1."""
    _check_degrees(clauses, var, 1)
    return eliminate_block(clauses, [var], limits=limits, counters=counters)


def quadratic_vs(clauses, var, limits=None, counters=None):
    """Eliminate exists-var from a DNF where var occurs at degree <= 2."""
    _check_degrees(clauses, var, 2)
    return eliminate_block(clauses, [var], limits=limits, counters=counters)


# ---------------------------------------------------------------------------
# real formulas as trees


def formula_to_clauses(phi, max_clauses=100_000):
    """Quantifier-free real formula -> simplified DNF clause list."""
    out = []
    for lits in F.dnf_clauses(phi, max_clauses):
        atoms = []
        for lit in lits:
            if isinstance(lit, F.Not):
                atoms.append(lit.arg.negated())
            else:
                atoms.append(lit)
        clause = simplify_clause(atoms)
        if clause is not None:
            out.append(clause)
    return dedupe_clauses(out)


def clauses_to_real_formula(clauses, vars):
    if not clauses:
        return false_atom(vars)
    parts = []
    for clause in clauses:
        if not clause:
            parts.append(true_atom(vars))
        else:
            parts.append(F.big_and(list(clause)))
    out = parts[0]
    for p in parts[1:]:
        out = F.Or(out, p)
    return out


def real_formula_vars(phi):
    atoms = F.atoms_of(phi)
    for a in atoms:
        if isinstance(a, RealAtom):
            return a.poly.vars
    raise ValueError("formula has no polynomial atoms")


def eval_real_formula(phi, point):
    """Tarskian truth of a quantifier-free real formula at a rational point."""
    if isinstance(phi, RealAtom):
        return atom_holds(phi, point)
    if isinstance(phi, F.Not):
        return not eval_real_formula(phi.arg, point)
    if isinstance(phi, F.And):
        return eval_real_formula(phi.lhs, point) and eval_real_formula(phi.rhs, point)
    if isinstance(phi, F.Or):
        return eval_real_formula(phi.lhs, point) or eval_real_formula(phi.rhs, point)
    if isinstance(phi, F.Implies):
        return (not eval_real_formula(phi.lhs, point)) or eval_real_formula(phi.rhs, point)
    raise ValueError(f"not a quantifier-free real formula: {phi!r}")


def simplify(phi):
    """Evaluation-preserving cleanup of a real formula tree: constant
    folding, duplicate removal, tautology/contradiction pruning."""
    vars = None
    try:
        vars = real_formula_vars(phi)
    except ValueError:
        pass

    def walk(f):
        if isinstance(f, RealAtom):
            t = const_truth(f)
            if t is None:
                return f
            return true_atom(f.poly.vars) if t else false_atom(f.poly.vars)
        if isinstance(f, F.Not):
            inner = walk(f.arg)
            t = _formula_const(inner)
            if t is not None:
                return false_atom(vars) if t else true_atom(vars)
            if isinstance(inner, RealAtom):
                return inner.negated()
            return F.Not(inner)
        if isinstance(f, (F.And, F.Or)):
            both_and = isinstance(f, F.And)
            parts = []
            stack = [f]
            while stack:
                g = stack.pop()
                if isinstance(g, type(f)):
                    stack.extend([g.rhs, g.lhs])
                else:
                    parts.append(walk(g))
            kept = []
            for p in parts:
                t = _formula_const(p)
                if t is None:
                    if p not in kept:
                        kept.append(p)
                elif t != both_and:
                    return false_atom(vars) if both_and else true_atom(vars)
            if not kept:
                return true_atom(vars) if both_and else false_atom(vars)
            out = kept[0]
            for p in kept[1:]:
                out = (F.And if both_and else F.Or)(out, p)
            return out
        if isinstance(f, F.Implies):
            return walk(F.Or(F.Not(f.lhs), f.rhs))
        if isinstance(f, (F.Exists, F.Forall)):
            return type(f)(f.var, walk(f.body))
        return f

    return walk(phi)


def _formula_const(f):
    if isinstance(f, RealAtom):
        return const_truth(f)
    return None


# ---------------------------------------------------------------------------
# compiling parsed surface syntax into polynomial atoms


def compile_real_formula(phi):
    """Algebra-syntax tree (without conj) -> real formula over polynomial
    atoms.  Bound variables are renamed apart first, so each name is one
    polynomial variable."""
    phi = F.rename_apart(phi)
    names = _names_in_order(phi)
    vars = tuple(names)

    def term_poly(t):
        if isinstance(t, F.Var):
            return Poly.var(vars, t.name)
        if isinstance(t, F.Zero):
            return Poly.zero(vars)
        if isinstance(t, F.One):
            return Poly.const(vars, 1)
        if isinstance(t, F.Neg):
            return -term_poly(t.arg)
        if isinstance(t, F.Add):
            return term_poly(t.lhs) + term_poly(t.rhs)
        if isinstance(t, F.Sub):
            return term_poly(t.lhs) - term_poly(t.rhs)
        if isinstance(t, F.Mul):
            return term_poly(t.lhs) * term_poly(t.rhs)
        raise ValueError(f"term not available in the real language: {t!r}")

    def walk(f):
        if isinstance(f, F.Eq):
            return make_atom(term_poly(f.lhs) - term_poly(f.rhs), EQ)
        if isinstance(f, F.Le):
            return make_atom(term_poly(f.lhs) - term_poly(f.rhs), LE)
        if isinstance(f, F.Not):
            return F.Not(walk(f.arg))
        if isinstance(f, (F.And, F.Or, F.Implies)):
            return type(f)(walk(f.lhs), walk(f.rhs))
        if isinstance(f, (F.Exists, F.Forall)):
            return type(f)(f.var, walk(f.body))
        raise TypeError(f"unsupported node {f!r}")

    return walk(phi)


def _names_in_order(phi):
    names = []

    def note(n):
        if n not in names:
            names.append(n)

    def walk_term(t):
        if isinstance(t, F.Var):
            note(t.name)
        elif isinstance(t, (F.Neg, F.Conj)):
            walk_term(t.arg)
        elif isinstance(t, (F.Add, F.Sub, F.Mul)):
            walk_term(t.lhs)
            walk_term(t.rhs)

    def walk(f):
        if isinstance(f, (F.Eq, F.Le)):
            walk_term(f.lhs)
            walk_term(f.rhs)
        elif isinstance(f, F.Not):
            walk(f.arg)
        elif isinstance(f, (F.And, F.Or, F.Implies)):
            walk(f.lhs)
            walk(f.rhs)
        elif isinstance(f, (F.Exists, F.Forall)):
            note(f.var)
            walk(f.body)

    walk(phi)
    return names
