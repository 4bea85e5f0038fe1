"""The quantifier elimination transfer for quaternions and octonions.

Pipeline for an algebra formula phi(x_1..x_m):

  1. prenex phi; every variable (free and bound) gets dim coordinates;
  2. image formula: exists all coordinates, realified matrix AND one
     link equation z_i = s_i(free coordinates) per invariant entry;
  3. the real backend eliminates every coordinate block, innermost
     first (universal blocks via double negation), leaving a
     quantifier-free formula over the z_i alone;
  4. pullback: each z_i is replaced by its invariant term, turning
     polynomial atoms into algebra atoms over the original free
     variables; strict atoms are rewritten into the =, <=, ! fragment
     first, since the surface language has no < or !=-atom.

Free-variable coordinates are quantified too (step 2): they are bound
to the z's by the link equations, so the image set is exactly the
invariant image of the definable set, and the pullback formula defines
the original set because invariant fibers are automorphism orbits.

For a conjunction of r equality atoms with m free and l bound
variables over the quaternions this produces 4(l+m) quantified real
variables and 4r + m + m^2 + m^3 atoms (8(l+m) and 8r + |words| for
the octonions), which stats() reports without running elimination.
"""

import time
from dataclasses import dataclass, field

from . import formulas as F
from . import realqe as R
from .algebra import dimension
from .errors import ShapeNotConjunctive, TransferError
from .invariants import build_scheme
from .polynomials import Poly
from .realify import Realification, extend_poly, realify_formula


@dataclass
class TransferOptions:
    simplify: bool = True
    order: str = "auto"  # "auto" or "given" (innermost quantifier first)
    max_clauses: int = 100_000
    max_monomials: int = 1_000_000
    dedup: bool = False


@dataclass
class TransferReport:
    algebra: str
    m: int
    l: int
    r: object
    quantified_real_vars: int
    atoms_pre_qe: int
    atoms_post_qe: object
    backend_steps: dict
    status: str
    wall_ms: int
    z_vars: int = 0
    total_vars: int = 0
    conjunctive: bool = True

    def as_dict(self):
        return {
            "algebra": self.algebra, "m": self.m, "l": self.l, "r": self.r,
            "quantified_real_vars": self.quantified_real_vars,
            "atoms_pre_qe": self.atoms_pre_qe,
            "atoms_post_qe": self.atoms_post_qe,
            "backend_steps": self.backend_steps,
            "status": self.status, "wall_ms": self.wall_ms,
            "z_vars": self.z_vars, "total_vars": self.total_vars,
            "conjunctive": self.conjunctive,
        }


class TransferJob:
    """One formula prepared for transfer: prenex parts, coordinate
    context over free+bound variables, invariant scheme, z variables."""

    def __init__(self, phi, algebra, options=None):
        self.algebra = algebra
        self.options = options or TransferOptions()
        self.phi = phi
        self.prefix, self.matrix = F.prenex_parts(phi)
        self.free_names = tuple(F.free_vars(phi))
        self.bound_names = tuple(v for _, v in self.prefix)
        self.m = len(self.free_names)
        self.l = len(self.bound_names)
        dim = dimension(algebra)

        ctx0 = Realification(algebra, self.free_names)
        scheme0 = build_scheme(algebra, self.m, self.free_names, ctx0,
                               dedup=self.options.dedup)
        taken = set()
        for v in self.free_names + self.bound_names:
            taken.update(f"{v}_{k}" for k in range(dim))
        self.z_names = []
        k = 1
        while len(self.z_names) < len(scheme0):
            name = f"z{k}"
            k += 1
            if name not in taken:
                self.z_names.append(name)
        self.ctx = Realification(algebra, self.free_names + self.bound_names,
                                 extra_names=self.z_names)
        entries = tuple(e.__class__(e.label, e.term,
                                    extend_poly(e.poly, self.ctx.vars), e.word)
                        for e in scheme0.entries)
        self.scheme = scheme0.__class__(scheme0.algebra, scheme0.arity,
                                        scheme0.var_names, entries)

    def link_atoms(self):
        out = []
        for name, entry in zip(self.z_names, self.scheme.entries):
            out.append(R.make_atom(Poly.var(self.ctx.vars, name) - entry.poly, R.EQ))
        return out

    def coordinate_prefix(self):
        """[(Exists|Forall, coordinate)] with the free coordinates in an
        outermost existential block, then the realified original prefix."""
        out = [(F.Exists, c) for v in self.free_names for c in self.ctx.coords_of(v)]
        for kind, var in self.prefix:
            out.extend((kind, c) for c in self.ctx.coords_of(var))
        return out


def build_image_formula(job):
    """Prenex real formula whose free variables are exactly the z's."""
    matrix_real = realify_formula(job.matrix, job.ctx,
                                  simplify=job.options.simplify)
    links = job.link_atoms()
    matrix_full = F.big_and([matrix_real] + links) if links else matrix_real
    prefix = job.coordinate_prefix()
    out = matrix_full
    for kind, var in reversed(prefix):
        out = kind(var, out)
    return out, prefix, matrix_full


def _blocks(prefix):
    """Group a quantifier prefix into maximal same-kind blocks."""
    blocks = []
    for kind, var in prefix:
        if blocks and blocks[-1][0] is kind:
            blocks[-1][1].append(var)
        else:
            blocks.append((kind, [var]))
    return blocks


def negate_clauses(clauses, limits):
    acc = [()]
    for clause in clauses:
        if not clause:
            return []
        neg = [R.make_clause([a.negated()]) for a in clause]
        acc = R.dnf_and(acc, neg, limits)
        if not acc:
            return []
    return acc


def eliminate_prefix(clauses, prefix, options, counters, limits):
    """Run the backend over every quantifier block, innermost first."""
    order = None
    if options.order == "given":
        order = [var for _, var in reversed(prefix)]
    last = clauses
    for kind, block in reversed(_blocks(prefix)):
        if kind is F.Exists:
            last = R.eliminate_block(last, block, order=order, limits=limits,
                                     counters=counters)
        else:
            neg = negate_clauses(last, limits)
            neg = R.eliminate_block(neg, block, order=order, limits=limits,
                                    counters=counters)
            last = negate_clauses(neg, limits)
    return last


def _count_atoms(formula):
    return len(F.atoms_of(formula))


def term_from_poly(p, term_map):
    """Integer-coefficient polynomial -> algebra term, coefficients by
    repeated addition, monomials in graded-lex order."""
    if p.is_zero():
        return F.Zero()
    acc = None
    for e, c in p.sorted_terms():
        factors = []
        for idx, power in enumerate(e):
            factors.extend([term_map[p.vars[idx]]] * power)
        if factors:
            base = factors[0]
            for f in factors[1:]:
                base = F.Mul(base, f)
            mono = base
            for _ in range(abs(c) - 1):
                mono = F.Add(mono, base)
        else:
            mono = F.int_term(abs(c))
        if acc is None:
            acc = F.Neg(mono) if c < 0 else mono
        else:
            acc = F.Sub(acc, mono) if c < 0 else F.Add(acc, mono)
    return acc


def _pullback_atom(atom, term_map):
    t = term_from_poly(atom.poly, term_map)
    zero = F.Zero()
    if atom.rel == R.EQ:
        return F.Eq(t, zero)
    if atom.rel == R.LE:
        return F.Le(t, zero)
    if atom.rel == R.NE:
        return F.Not(F.Eq(t, zero))
    # strict <: rewritten into the =, <=, ! fragment
    return F.And(F.Le(t, zero), F.Not(F.Eq(t, zero)))


def pullback(clauses, scheme, z_names):
    """Quantifier-free real DNF over the z's -> algebra formula, each z
    replaced by its (central) invariant term."""
    term_map = dict(zip(z_names, (e.term for e in scheme.entries)))
    if not clauses:
        return F.Not(F.Eq(F.Zero(), F.Zero()))
    z_set = set(z_names)
    parts = []
    for clause in clauses:
        if not clause:
            parts.append(F.Eq(F.Zero(), F.Zero()))
            continue
        extra = R.clause_vars(clause) - z_set
        assert not extra, f"pullback input mentions non-z variables {extra}"
        parts.append(F.big_and([_pullback_atom(a, term_map) for a in clause]))
    out = parts[0]
    for part in parts[1:]:
        out = F.Or(out, part)
    return out


def _is_conjunction_of_atoms(matrix):
    return all(F.is_atom(c) for c in F.conjuncts(matrix))


def run_transfer(phi, algebra, options=None):
    """Eliminate quantifiers from an algebra formula.

    Returns (quantifier-free algebra formula, TransferReport).  On
    DegreeTooHigh/SizeLimitExceeded raises TransferError carrying the
    report and the partially eliminated real formula.
    """
    options = options or TransferOptions()
    start = time.perf_counter()
    job = TransferJob(phi, algebra, options)
    _, prefix, matrix_full = build_image_formula(job)
    counters = R.BackendCounters()
    limits = R.Limits(options.max_clauses, options.max_monomials)
    report = TransferReport(
        algebra=algebra, m=job.m, l=job.l,
        r=len(F.conjuncts(job.matrix)) if _is_conjunction_of_atoms(job.matrix) else None,
        quantified_real_vars=len(prefix),
        atoms_pre_qe=_count_atoms(matrix_full),
        atoms_post_qe=None,
        backend_steps=counters.as_dict(),
        status="ok", wall_ms=0,
        z_vars=len(job.z_names),
        total_vars=len(prefix) + len(job.z_names),
        conjunctive=_is_conjunction_of_atoms(job.matrix))
    try:
        clauses = R.formula_to_clauses(matrix_full, options.max_clauses)
        clauses = eliminate_prefix(clauses, prefix, options, counters, limits)
    except Exception as e:
        report.status = ("degree_too_high" if e.__class__.__name__ == "DegreeTooHigh"
                         else "size_limit" if e.__class__.__name__ == "SizeLimitExceeded"
                         else "error")
        report.backend_steps = counters.as_dict()
        report.wall_ms = int((time.perf_counter() - start) * 1000)
        if report.status == "error":
            raise
        raise TransferError(e, report, None) from e
    leftovers = set()
    for clause in clauses:
        leftovers |= R.clause_vars(clause) - set(job.z_names)
    assert not leftovers, f"elimination left variables {leftovers}"
    result = pullback(clauses, job.scheme, job.z_names)
    report.atoms_post_qe = sum(len(c) for c in clauses)
    report.backend_steps = counters.as_dict()
    report.wall_ms = int((time.perf_counter() - start) * 1000)
    return result, report


def stats(phi, algebra, options=None):
    """Dry run: reduction-size counts only, with simplification off.

    Raises ShapeNotConjunctive (report attached) when the matrix is not
    a conjunction of atoms; the counts are still in the report.
    """
    options = options or TransferOptions()
    opts = TransferOptions(simplify=False, order=options.order,
                           max_clauses=options.max_clauses,
                           max_monomials=options.max_monomials,
                           dedup=options.dedup)
    start = time.perf_counter()
    job = TransferJob(phi, algebra, opts)
    _, prefix, matrix_full = build_image_formula(job)
    conjunctive = _is_conjunction_of_atoms(job.matrix)
    report = TransferReport(
        algebra=algebra, m=job.m, l=job.l,
        r=len(F.conjuncts(job.matrix)) if conjunctive else None,
        quantified_real_vars=len(prefix),
        atoms_pre_qe=_count_atoms(matrix_full),
        atoms_post_qe=None,
        backend_steps=R.BackendCounters().as_dict(),
        status="dry_run",
        wall_ms=int((time.perf_counter() - start) * 1000),
        z_vars=len(job.z_names),
        total_vars=len(prefix) + len(job.z_names),
        conjunctive=conjunctive)
    if not conjunctive:
        raise ShapeNotConjunctive("matrix is not a conjunction of atoms", report)
    return report


def synthetic_conjunction(r, m, l):
    """A conjunction of r equality atoms over m free and l bound
    variables, for count reproduction runs."""
    if r < 1:
        raise ValueError("need at least one atom")
    frees = [F.Var(f"x{i}") for i in range(1, m + 1)]
    bounds = [F.Var(f"y{i}") for i in range(1, l + 1)]
    factors = frees + bounds
    atoms = []
    for i in range(1, r + 1):
        t = factors[0] if factors else F.One()
        for f in factors[1:]:
            t = F.Mul(t, f)
        atoms.append(F.Eq(t, F.int_term(i)))
    body = F.big_and(atoms)
    for b in reversed(bounds):
        body = F.Exists(b.name, body)
    return body
