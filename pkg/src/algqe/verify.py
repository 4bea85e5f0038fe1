"""Ground truth: evaluation over H(Q)/O(Q), exact automorphism sampling,
and sampling-based equivalence and orbit-invariance reports.

Sampled maps are verified to be automorphisms before use: linearity is
by construction (they are matrices), g(1) = 1 and multiplicativity on
all basis pairs are checked exactly.  Quaternion automorphisms are the
inner conjugations v -> q v q^-1, which realize exactly the rotations
of the imaginary part.  Octonion automorphisms are compositions of
lifted quaternion automorphisms (p + r*l -> phi(p) + phi(r)*l) with the
signed basis permutations that preserve the multiplication table (a
group of order 1344, found once by exhaustive search); this generates a
subgroup of the full automorphism group, not all of it, and every
report over the octonions carries that caveat in its header.

Witness search for existential formulas is a semi-decision: reports
separate disagreement (fatal) from inconclusive (bounded search
exhausted while the eliminated formula says true).
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import formulas as F
from .algebra import basis_element, dimension, from_coords, one, structure_table, zero
from .rationals import Rat, rat_str

OCT_NOTE = ("octonion automorphisms are sampled from the subgroup generated by "
            "quaternion lifts and multiplication-table symmetries")


# ---------------------------------------------------------------------------
# evaluation


def eval_term(t, assignment, algebra):
    if isinstance(t, F.Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise KeyError(f"unassigned variable {t.name!r}") from None
    if isinstance(t, F.Zero):
        return zero(algebra)
    if isinstance(t, F.One):
        return one(algebra)
    if isinstance(t, F.Neg):
        return -eval_term(t.arg, assignment, algebra)
    if isinstance(t, F.Conj):
        return eval_term(t.arg, assignment, algebra).conj()
    if isinstance(t, F.Add):
        return eval_term(t.lhs, assignment, algebra) + eval_term(t.rhs, assignment, algebra)
    if isinstance(t, F.Sub):
        return eval_term(t.lhs, assignment, algebra) - eval_term(t.rhs, assignment, algebra)
    if isinstance(t, F.Mul):
        return eval_term(t.lhs, assignment, algebra) * eval_term(t.rhs, assignment, algebra)
    raise TypeError(f"eval_term: unsupported node {t!r}")


def le_holds(a, b):
    """t <= u is true iff both values are central and Re(t) <= Re(u);
    non-central values are incomparable, hence the atom is false.
    This is the same reading realify compiles into coordinates."""
    return a.is_central() and b.is_central() and a.re() <= b.re()


def eval_formula(phi, assignment, algebra):
    """Tarskian truth of a quantifier-free algebra formula."""
    if isinstance(phi, F.Eq):
        return eval_term(phi.lhs, assignment, algebra) == eval_term(phi.rhs, assignment, algebra)
    if isinstance(phi, F.Le):
        return le_holds(eval_term(phi.lhs, assignment, algebra),
                        eval_term(phi.rhs, assignment, algebra))
    if isinstance(phi, F.Not):
        return not eval_formula(phi.arg, assignment, algebra)
    if isinstance(phi, F.And):
        return eval_formula(phi.lhs, assignment, algebra) and eval_formula(phi.rhs, assignment, algebra)
    if isinstance(phi, F.Or):
        return eval_formula(phi.lhs, assignment, algebra) or eval_formula(phi.rhs, assignment, algebra)
    if isinstance(phi, F.Implies):
        return (not eval_formula(phi.lhs, assignment, algebra)) or \
            eval_formula(phi.rhs, assignment, algebra)
    raise ValueError(f"eval_formula: quantifier or unsupported node {phi!r}")


# ---------------------------------------------------------------------------
# automorphisms as exact rational matrices


def apply_matrix(mat, x):
    coords = x.coords()
    out = [sum((row[c] * coords[c] for c in range(len(coords))), Rat(0)) for row in mat]
    return from_coords("quat" if len(coords) == 4 else "oct", out)


def is_automorphism(algebra, mat):
    """g(1) = 1 and g(e_a e_b) = g(e_a) g(e_b) on every basis pair, exactly."""
    dim = dimension(algebra)
    units = [basis_element(algebra, a) for a in range(dim)]
    images = [apply_matrix(mat, u) for u in units]
    if images[0] != one(algebra):
        return False
    table = structure_table(algebra)
    for a in range(dim):
        for b in range(dim):
            sign, c = table[a][b]
            prod = images[a] * images[b]
            want = images[c] if sign > 0 else -images[c]
            if prod != want:
                return False
    return True


def _matrix_from_images(algebra, images):
    dim = dimension(algebra)
    cols = [x.coords() for x in images]
    return tuple(tuple(cols[c][r] for c in range(dim)) for r in range(dim))


def matmul(m1, m2):
    n = len(m1)
    return tuple(tuple(sum((m1[r][k] * m2[k][c] for k in range(n)), Rat(0))
                       for c in range(n)) for r in range(n))


def conjugation_matrix(q):
    """v -> q v q^-1 over the quaternions, as an exact 4x4 matrix."""
    qi = q.inverse()
    images = [q * basis_element("quat", b) * qi for b in range(4)]
    return _matrix_from_images("quat", images)


def lift_matrix(mat4):
    """phi + phi on Cayley-Dickson pairs: 8x8 block diagonal."""
    z = Rat(0)
    rows = []
    for r in range(8):
        row = []
        for c in range(8):
            if r < 4 and c < 4:
                row.append(mat4[r][c])
            elif r >= 4 and c >= 4:
                row.append(mat4[r - 4][c - 4])
            else:
                row.append(z)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=1)
def octonion_table_symmetries():
    """All signed basis permutations preserving the octonion table.

    The images of i, j and l determine the rest (k = ij, il, jl, kl);
    candidates are scanned exhaustively and verified, yielding the
    classical group of order 1344.
    """
    units = [basis_element("oct", a) for a in range(8)]
    signed = [s * units[a] for a in range(1, 8) for s in (1, -1)]
    out = []
    for e1 in signed:
        for e2 in signed:
            for e4 in signed:
                e3 = e1 * e2
                e5 = e1 * e4
                e6 = e2 * e4
                e7 = e3 * e4
                images = [units[0], e1, e2, e3, e4, e5, e6, e7]
                supports = set()
                ok = True
                for x in images[1:]:
                    nz = [idx for idx, v in enumerate(x.coords()) if v != 0]
                    if len(nz) != 1 or nz[0] == 0 or nz[0] in supports:
                        ok = False
                        break
                    supports.add(nz[0])
                if not ok:
                    continue
                mat = _matrix_from_images("oct", images)
                if is_automorphism("oct", mat):
                    out.append(mat)
    return tuple(out)


@dataclass
class AutoSampler:
    """Deterministic sampler of exact algebra elements and automorphisms."""

    algebra: str
    seed: int = 0
    bound: int = 10
    rng: random.Random = field(init=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    def rational(self):
        p = self.rng.randint(-self.bound, self.bound)
        q = self.rng.randint(1, self.bound)
        return Rat(p, q)

    def element(self):
        dim = dimension(self.algebra)
        return from_coords(self.algebra, [self.rational() for _ in range(dim)])

    def tuple(self, m):
        return tuple(self.element() for _ in range(m))

    def _nonzero_quaternion(self):
        while True:
            q = from_coords("quat", [self.rational() for _ in range(4)])
            if not q.is_zero():
                return q

    def automorphism(self):
        """Exact automorphism matrix; verified before return."""
        if self.algebra == "quat":
            mat = conjugation_matrix(self._nonzero_quaternion())
        else:
            syms = octonion_table_symmetries()
            mat = lift_matrix(conjugation_matrix(self._nonzero_quaternion()))
            for _ in range(self.rng.randint(1, 2)):
                mat = matmul(self.rng.choice(syms), mat)
                mat = matmul(lift_matrix(conjugation_matrix(self._nonzero_quaternion())), mat)
        assert is_automorphism(self.algebra, mat)
        return mat


# ---------------------------------------------------------------------------
# reports


def _assignment_json(assignment):
    return {name: [rat_str(c) for c in val.coords()]
            for name, val in sorted(assignment.items())}


@dataclass
class EquivalenceReport:
    kind: str
    samples: int
    agreements: int
    disagreements: list
    inconclusive: int
    seed: int
    bound: int
    note: str = None

    @property
    def ok(self):
        return not self.disagreements

    def as_dict(self):
        d = {"kind": self.kind, "samples": self.samples,
             "agreements": self.agreements,
             "disagreements": self.disagreements,
             "inconclusive": self.inconclusive,
             "seed": self.seed, "bound": self.bound}
        if self.note:
            d["note"] = self.note
        return d


def _forced_assignments(names, algebra, include_units=True):
    dim = dimension(algebra)
    out = [{n: zero(algebra) for n in names},
           {n: one(algebra) for n in names}]
    if include_units:
        for b in range(1, dim):
            u = basis_element(algebra, b)
            out.append({n: u for n in names})
    return out


def _witness_pool(assignment, algebra):
    """Structured witness candidates: 0, 1, basis units, the assigned
    values, their conjugates, inverses and halves."""
    dim = dimension(algebra)
    pool = [zero(algebra), one(algebra)]
    pool.extend(basis_element(algebra, b) for b in range(1, dim))
    half = Rat(1, 2)
    for v in assignment.values():
        pool.append(v)
        pool.append(v.conj())
        pool.append(v * half)
        pool.append(v.conj() * half)
        if not v.is_zero():
            pool.append(v.inverse())
    seen = []
    for x in pool:
        if x not in seen:
            seen.append(x)
    return seen


def check_equivalence(original, eliminated, algebra, samples=1000, seed=0,
                      witness_bound=64, bound=10):
    """Compare an original formula (quantifier-free, or one existential
    block over a quantifier-free matrix) against a quantifier-free
    candidate on random assignments.

    A found witness decides the original true; search exhaustion with
    the candidate saying false counts as consistent, with the candidate
    saying true it is recorded as inconclusive (never fatal by itself).
    """
    if not F.is_quantifier_free(eliminated):
        raise ValueError("eliminated formula must be quantifier-free")
    prefix, matrix = F.prenex_parts(original)
    if any(kind is F.Forall for kind, _ in prefix):
        raise ValueError("shape not supported: universal quantifier in original")
    bound_vars = [v for _, v in prefix]
    names = F.free_vars(original)
    extra = [v for v in F.free_vars(eliminated) if v not in names]
    if extra:
        raise ValueError(f"eliminated formula has unexpected free variables {extra}")

    sampler = AutoSampler(algebra, seed=seed, bound=bound)
    assignments = _forced_assignments(names, algebra)
    agreements = 0
    disagreements = []
    inconclusive = 0
    tested = 0
    for k in range(samples):
        if k < len(assignments):
            asg = assignments[k]
        else:
            asg = {n: sampler.element() for n in names}
        tested += 1
        elim_val = eval_formula(eliminated, asg, algebra)
        if not bound_vars:
            orig_val = eval_formula(matrix, asg, algebra)
        else:
            orig_val = _search_witness(matrix, asg, bound_vars, algebra,
                                       sampler, witness_bound)
        if orig_val is None:
            if elim_val:
                inconclusive += 1
            else:
                agreements += 1
        elif orig_val == elim_val:
            agreements += 1
        else:
            disagreements.append(_assignment_json(asg))
    return EquivalenceReport(
        kind="equivalence", samples=tested, agreements=agreements,
        disagreements=disagreements, inconclusive=inconclusive,
        seed=seed, bound=witness_bound,
        note=OCT_NOTE if algebra == "oct" else None)


def _search_witness(matrix, asg, bound_vars, algebra, sampler, witness_bound):
    """True if a witness tuple satisfies the matrix; None if the bounded
    search is exhausted (existential truth undecided)."""
    pool = _witness_pool(asg, algebra)
    tried = 0
    l = len(bound_vars)

    def attempt(values):
        full = dict(asg)
        full.update(zip(bound_vars, values))
        return eval_formula(matrix, full, algebra)

    idx = [0] * l
    while tried < witness_bound:
        values = [pool[i] for i in idx]
        if attempt(values):
            return True
        tried += 1
        pos = 0
        while pos < l:
            idx[pos] += 1
            if idx[pos] < len(pool):
                break
            idx[pos] = 0
            pos += 1
        if pos == l:
            break
    while tried < witness_bound:
        if attempt([sampler.element() for _ in range(l)]):
            return True
        tried += 1
    return None


def check_orbit_invariance(phi, algebra, samples=200, seed=0, bound=10):
    """eval(phi, tuple) must equal eval(phi, g . tuple) for sampled pairs;
    any violation is reported with its witness."""
    if not F.is_quantifier_free(phi):
        raise ValueError("orbit invariance check expects a quantifier-free formula")
    names = F.free_vars(phi)
    sampler = AutoSampler(algebra, seed=seed, bound=bound)
    disagreements = []
    agreements = 0
    for _ in range(samples):
        asg = {n: sampler.element() for n in names}
        g = sampler.automorphism()
        moved = {n: apply_matrix(g, v) for n, v in asg.items()}
        if eval_formula(phi, asg, algebra) == eval_formula(phi, moved, algebra):
            agreements += 1
        else:
            disagreements.append(_assignment_json(asg))
    return EquivalenceReport(
        kind="orbit", samples=samples, agreements=agreements,
        disagreements=disagreements, inconclusive=0, seed=seed, bound=bound,
        note=OCT_NOTE if algebra == "oct" else None)
