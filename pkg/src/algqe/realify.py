"""Coordinate translation of algebra formulas into the ordered base field.

Each algebra variable x becomes dim real variables x_0 .. x_{dim-1} in
the basis order of the algebra; terms become vectors of polynomials via
the structure constants; atoms become coordinate sign conditions:

    t = u   ->   /\_i  (t_i - u_i = 0)
    t <= u  ->   imaginary coordinates of both sides vanish, and
                 t_0 - u_0 <= 0.

The second rule is the load-bearing reading of <= between values that
need not be central: the order lives on the central copy of the base
field only, and an atom comparing non-central values is false.  It is
isolated in le_coordinate_atoms so it can be swapped out wholesale.

With simplify=True coordinate equations that hold identically (zero
polynomial) are dropped and every equation is content-normalized; with
simplify=False the full dim-per-equality atom count is kept, which is
what the reduction-size accounting expects.
"""

from . import formulas as F
from .algebra import dimension, structure_table
from .polynomials import Poly
from .realqe import EQ, LE, RealAtom, make_atom, true_atom


def coord_names(name, dim):
    return [f"{name}_{k}" for k in range(dim)]


class Realification:
    """Variable map and term cache for one algebra/variable context."""

    def __init__(self, algebra, alg_vars, extra_names=()):
        self.algebra = algebra
        self.dim = dimension(algebra)
        self.alg_vars = tuple(alg_vars)
        self.var_map = {v: coord_names(v, self.dim) for v in self.alg_vars}
        names = [c for v in self.alg_vars for c in self.var_map[v]]
        names.extend(extra_names)
        if len(set(names)) != len(names):
            raise ValueError("coordinate names collide")
        self.vars = tuple(names)
        self._table = structure_table(algebra)
        self._cache = {}

    def zero_vec(self):
        return [Poly.zero(self.vars)] * self.dim

    def coords_of(self, name):
        if name not in self.var_map:
            raise KeyError(f"undeclared algebra variable {name!r}")
        return self.var_map[name]


def realify_term(t, ctx):
    """Vector of dim coordinate polynomials of an algebra term."""
    cached = ctx._cache.get(t)
    if cached is not None:
        return cached
    if isinstance(t, F.Var):
        vec = [Poly.var(ctx.vars, c) for c in ctx.coords_of(t.name)]
    elif isinstance(t, F.Zero):
        vec = ctx.zero_vec()
    elif isinstance(t, F.One):
        vec = ctx.zero_vec()
        vec[0] = Poly.const(ctx.vars, 1)
    elif isinstance(t, F.Neg):
        vec = [-p for p in realify_term(t.arg, ctx)]
    elif isinstance(t, F.Conj):
        inner = realify_term(t.arg, ctx)
        vec = [inner[0]] + [-p for p in inner[1:]]
    elif isinstance(t, F.Add):
        a, b = realify_term(t.lhs, ctx), realify_term(t.rhs, ctx)
        vec = [p + q for p, q in zip(a, b)]
    elif isinstance(t, F.Sub):
        a, b = realify_term(t.lhs, ctx), realify_term(t.rhs, ctx)
        vec = [p - q for p, q in zip(a, b)]
    elif isinstance(t, F.Mul):
        a, b = realify_term(t.lhs, ctx), realify_term(t.rhs, ctx)
        vec = ctx.zero_vec()
        for ia, pa in enumerate(a):
            if pa.is_zero():
                continue
            row = ctx._table[ia]
            for ib, pb in enumerate(b):
                if pb.is_zero():
                    continue
                sign, ic = row[ib]
                prod = pa * pb
                vec[ic] = vec[ic] + (prod if sign > 0 else -prod)
    else:
        raise TypeError(f"realify_term: unsupported node {t!r}")
    vec = tuple(vec)
    ctx._cache[t] = vec
    return vec


def eq_coordinate_atoms(tv, uv, simplify=True):
    atoms = []
    for p, q in zip(tv, uv):
        diff = p - q
        if simplify and diff.is_zero():
            continue
        atoms.append(make_atom(diff, EQ))
    return atoms


def le_coordinate_atoms(tv, uv, simplify=True):
    """t <= u: both sides central and real parts ordered."""
    atoms = []
    for vec in (tv, uv):
        for p in vec[1:]:
            if simplify and p.is_zero():
                continue
            atoms.append(make_atom(p, EQ))
    atoms.append(make_atom(tv[0] - uv[0], LE))
    return atoms


def realify_atom(atom, ctx, simplify=True):
    """Conjunction (list of RealAtom) for an algebra atom."""
    if isinstance(atom, F.Eq):
        return eq_coordinate_atoms(realify_term(atom.lhs, ctx),
                                   realify_term(atom.rhs, ctx), simplify)
    if isinstance(atom, F.Le):
        return le_coordinate_atoms(realify_term(atom.lhs, ctx),
                                   realify_term(atom.rhs, ctx), simplify)
    raise TypeError(f"realify_atom: not an algebra atom: {atom!r}")


def realify_formula(phi, ctx, simplify=True):
    """Real formula with the same connective structure; each quantified
    algebra variable becomes dim quantified coordinates."""
    if isinstance(phi, (F.Eq, F.Le)):
        atoms = realify_atom(phi, ctx, simplify)
        if not atoms:
            return true_atom(ctx.vars)
        return F.big_and(atoms)
    if isinstance(phi, F.Not):
        return F.Not(realify_formula(phi.arg, ctx, simplify))
    if isinstance(phi, (F.And, F.Or, F.Implies)):
        return type(phi)(realify_formula(phi.lhs, ctx, simplify),
                         realify_formula(phi.rhs, ctx, simplify))
    if isinstance(phi, (F.Exists, F.Forall)):
        body = realify_formula(phi.body, ctx, simplify)
        for c in reversed(ctx.coords_of(phi.var)):
            body = type(phi)(c, body)
        return body
    raise TypeError(f"realify_formula: unsupported node {phi!r}")


def extend_poly(p, new_vars):
    """Re-embed a polynomial into a longer variable list sharing its prefix."""
    assert new_vars[:len(p.vars)] == p.vars
    pad = (0,) * (len(new_vars) - len(p.vars))
    return Poly(new_vars, {e + pad: c for e, c in p.terms.items()})
