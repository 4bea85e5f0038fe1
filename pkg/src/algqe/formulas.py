"""First-order formulas over the algebra signature (+, -, *, 0, 1, <=, conj).

Terms and formulas are immutable trees.  Integer literals are parser
sugar: the literal n stands for the left-associated sum 1 + 1 + ... + 1
(n ones), and the printer folds exactly that shape back into a literal.

The connective layer (Not/And/Or/Implies/Exists/Forall) is shared with
formulas over the ordered base field; anything that is not one of those
six nodes is treated as an atom.  Real atoms (polynomial sign
conditions) live in realqe and plug into the same machinery.
"""

from dataclasses import dataclass

from .errors import SizeLimitExceeded

# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Sub(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Mul(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Conj(Term):
    arg: Term


def int_term(n):
    """The term standing for the integer literal n."""
    if n < 0:
        return Neg(int_term(-n))
    if n == 0:
        return Zero()
    t = One()
    for _ in range(n - 1):
        t = Add(t, One())
    return t


def _as_int_chain(t):
    """Inverse of int_term for nonnegative literals; None if not that shape."""
    if isinstance(t, Zero):
        return 0
    n = 0
    while isinstance(t, Add) and isinstance(t.rhs, One):
        n += 1
        t = t.lhs
    if isinstance(t, One):
        return n + 1
    return None


def term_vars(t, acc=None):
    """Variable names in order of first occurrence."""
    if acc is None:
        acc = []
    if isinstance(t, Var):
        if t.name not in acc:
            acc.append(t.name)
    elif isinstance(t, (Neg, Conj)):
        term_vars(t.arg, acc)
    elif isinstance(t, (Add, Sub, Mul)):
        term_vars(t.lhs, acc)
        term_vars(t.rhs, acc)
    return acc


def term_subst(t, name, repl):
    if isinstance(t, Var):
        return repl if t.name == name else t
    if isinstance(t, Neg):
        return Neg(term_subst(t.arg, name, repl))
    if isinstance(t, Conj):
        return Conj(term_subst(t.arg, name, repl))
    if isinstance(t, Add):
        return Add(term_subst(t.lhs, name, repl), term_subst(t.rhs, name, repl))
    if isinstance(t, Sub):
        return Sub(term_subst(t.lhs, name, repl), term_subst(t.rhs, name, repl))
    if isinstance(t, Mul):
        return Mul(term_subst(t.lhs, name, repl), term_subst(t.rhs, name, repl))
    return t


# ---------------------------------------------------------------------------
# formulas


class Formula:
    __slots__ = ()

    def negated(self):
        """Atom-level negation, or None if only Not(...) is available."""
        return None


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Le(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


CONNECTIVES = (Not, And, Or, Implies, Exists, Forall)


def is_atom(phi):
    return not isinstance(phi, CONNECTIVES)


def atom_vars(phi):
    """Hook: variable names of an atom, in order."""
    if isinstance(phi, (Eq, Le)):
        acc = term_vars(phi.lhs)
        return term_vars(phi.rhs, acc)
    return list(phi.variables_in_order())


def free_vars(phi):
    """Free variable names in order of first occurrence."""
    out = []

    def walk(f, bound):
        if is_atom(f):
            for v in atom_vars(f):
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(f, Not):
            walk(f.arg, bound)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.lhs, bound)
            walk(f.rhs, bound)
        else:
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return out


def all_var_names(phi):
    names = set()

    def walk(f):
        if is_atom(f):
            names.update(atom_vars(f))
        elif isinstance(f, Not):
            walk(f.arg)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.lhs)
            walk(f.rhs)
        else:
            names.add(f.var)
            walk(f.body)

    walk(phi)
    return names


def fresh_name(base, used):
    if base not in used:
        return base
    k = 1
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


def substitute(phi, name, repl):
    """Capture-avoiding substitution of an algebra term for a free variable."""
    repl_vars = set(term_vars(repl))

    def walk(f):
        if isinstance(f, Eq):
            return Eq(term_subst(f.lhs, name, repl), term_subst(f.rhs, name, repl))
        if isinstance(f, Le):
            return Le(term_subst(f.lhs, name, repl), term_subst(f.rhs, name, repl))
        if isinstance(f, Not):
            return Not(walk(f.arg))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(walk(f.lhs), walk(f.rhs))
        if isinstance(f, (Exists, Forall)):
            kind = type(f)
            if f.var == name:
                return f
            if f.var in repl_vars and name in free_vars(f.body):
                new = fresh_name(f.var, repl_vars | all_var_names(f.body) | {name})
                body = substitute(f.body, f.var, Var(new))
                return kind(new, walk(body))
            return kind(f.var, walk(f.body))
        raise TypeError(f"substitute: unsupported node {f!r}")

    return walk(phi)


def rename_apart(phi, reserved=None):
    """Rename bound variables so all binders are distinct and disjoint
    from free variables (and from `reserved`)."""
    taken = set(free_vars(phi)) | (set(reserved) if reserved else set())
    avoid = set(all_var_names(phi)) | set(taken)

    def walk(f):
        if is_atom(f):
            return f
        if isinstance(f, Not):
            return Not(walk(f.arg))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(walk(f.lhs), walk(f.rhs))
        kind = type(f)
        if f.var in taken:
            new = fresh_name(f.var, avoid)
            body = substitute(f.body, f.var, Var(new))
        else:
            new, body = f.var, f.body
        taken.add(new)
        avoid.add(new)
        return kind(new, walk(body))

    return walk(phi)


def nnf(phi, positive=True):
    """Negation normal form; expands -> and pushes ! to the atoms.
    Quantifiers flip under negation."""
    if is_atom(phi):
        if positive:
            return phi
        neg = phi.negated()
        return neg if neg is not None else Not(phi)
    if isinstance(phi, Not):
        return nnf(phi.arg, not positive)
    if isinstance(phi, And):
        kind = And if positive else Or
        return kind(nnf(phi.lhs, positive), nnf(phi.rhs, positive))
    if isinstance(phi, Or):
        kind = Or if positive else And
        return kind(nnf(phi.lhs, positive), nnf(phi.rhs, positive))
    if isinstance(phi, Implies):
        if positive:
            return Or(nnf(phi.lhs, False), nnf(phi.rhs, True))
        return And(nnf(phi.lhs, True), nnf(phi.rhs, False))
    if isinstance(phi, Exists):
        kind = Exists if positive else Forall
        return kind(phi.var, nnf(phi.body, positive))
    if isinstance(phi, Forall):
        kind = Forall if positive else Exists
        return kind(phi.var, nnf(phi.body, positive))
    raise TypeError(f"nnf: unsupported node {phi!r}")


def prenex(phi):
    """Equivalent prenex formula (matrix in NNF).  Binders are renamed
    apart first, so quantifiers can be pulled without capture."""
    prefix, matrix = prenex_parts(phi)
    out = matrix
    for kind, var in reversed(prefix):
        out = kind(var, out)
    return out


def prenex_parts(phi):
    """As prenex(), but returns ([(Exists|Forall, var), ...], matrix)."""
    f = nnf(rename_apart(phi))

    def pull(f):
        if is_atom(f) or isinstance(f, Not):
            return [], f
        if isinstance(f, (And, Or)):
            p1, m1 = pull(f.lhs)
            p2, m2 = pull(f.rhs)
            return p1 + p2, type(f)(m1, m2)
        if isinstance(f, (Exists, Forall)):
            p, m = pull(f.body)
            return [(type(f), f.var)] + p, m
        raise TypeError(f"prenex: unsupported node {f!r}")

    return pull(f)


def is_quantifier_free(phi):
    if is_atom(phi):
        return True
    if isinstance(phi, Not):
        return is_quantifier_free(phi.arg)
    if isinstance(phi, (And, Or, Implies)):
        return is_quantifier_free(phi.lhs) and is_quantifier_free(phi.rhs)
    return False


def to_dnf(phi, max_clauses=100_000):
    """Disjunction of conjunctions of literals, for a quantifier-free input.

    Raises SizeLimitExceeded when the clause count passes max_clauses.
    """
    if not is_quantifier_free(phi):
        raise ValueError("to_dnf expects a quantifier-free formula")
    clauses = dnf_clauses(phi, max_clauses)
    return clauses_to_formula(clauses)


def dnf_clauses(phi, max_clauses=100_000):
    """DNF as a list of clauses, each a list of literals (atoms or Not(atom))."""
    f = nnf(phi)

    def walk(f):
        if isinstance(f, Or):
            out = walk(f.lhs) + walk(f.rhs)
        elif isinstance(f, And):
            left, right = walk(f.lhs), walk(f.rhs)
            if len(left) * len(right) > max_clauses:
                raise SizeLimitExceeded("clause", len(left) * len(right), max_clauses)
            out = [l + r for l in left for r in right]
        else:
            out = [[f]]
        if len(out) > max_clauses:
            raise SizeLimitExceeded("clause", len(out), max_clauses)
        return out

    return walk(f)


def clauses_to_formula(clauses):
    if not clauses:
        return Not(Eq(Zero(), Zero()))
    disjuncts = []
    for clause in clauses:
        if not clause:
            disjuncts.append(Eq(Zero(), Zero()))
            continue
        c = clause[0]
        for lit in clause[1:]:
            c = And(c, lit)
        disjuncts.append(c)
    out = disjuncts[0]
    for d in disjuncts[1:]:
        out = Or(out, d)
    return out


def literal_count(phi):
    if is_atom(phi):
        return 1
    if isinstance(phi, Not):
        return literal_count(phi.arg)
    if isinstance(phi, (And, Or, Implies)):
        return literal_count(phi.lhs) + literal_count(phi.rhs)
    return literal_count(phi.body)


def atoms_of(phi):
    """All atoms, left to right (duplicates kept)."""
    if is_atom(phi):
        return [phi]
    if isinstance(phi, Not):
        return atoms_of(phi.arg)
    if isinstance(phi, (And, Or, Implies)):
        return atoms_of(phi.lhs) + atoms_of(phi.rhs)
    return atoms_of(phi.body)


def conjuncts(phi):
    """Flatten a conjunction tree."""
    if isinstance(phi, And):
        return conjuncts(phi.lhs) + conjuncts(phi.rhs)
    return [phi]


def big_and(parts):
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# ---------------------------------------------------------------------------
# printing (text that re-parses to a structurally identical tree)

_T_ATOM, _T_UNARY, _T_MUL, _T_ADD = 0, 1, 2, 3


def term_text(t, level=_T_ADD):
    n = _as_int_chain(t)
    if n is not None:
        body, my = str(n), _T_ATOM
    else:
        body, my = _term_body(t)
    if my > level:
        return "(" + body + ")"
    return body


def _term_body(t):
    if isinstance(t, Var):
        return t.name, _T_ATOM
    if isinstance(t, Zero):
        return "0", _T_ATOM
    if isinstance(t, One):
        return "1", _T_ATOM
    if isinstance(t, Conj):
        return "conj(" + term_text(t.arg, _T_ADD) + ")", _T_ATOM
    if isinstance(t, Neg):
        return "-" + term_text(t.arg, _T_UNARY), _T_UNARY
    if isinstance(t, Mul):
        return term_text(t.lhs, _T_MUL) + "*" + term_text(t.rhs, _T_UNARY), _T_MUL
    if isinstance(t, Add):
        return term_text(t.lhs, _T_ADD) + " + " + term_text(t.rhs, _T_MUL), _T_ADD
    if isinstance(t, Sub):
        return term_text(t.lhs, _T_ADD) + " - " + term_text(t.rhs, _T_MUL), _T_ADD
    raise TypeError(f"term_text: unsupported node {t!r}")


_F_ATOM, _F_NOT, _F_AND, _F_OR, _F_IMP, _F_QUANT = 0, 1, 2, 3, 4, 5


def formula_text(phi, level=_F_QUANT):
    body, my = _formula_body(phi)
    if my > level:
        return "(" + body + ")"
    return body


def _formula_body(phi):
    if isinstance(phi, Not) and isinstance(phi.arg, Eq):
        return (term_text(phi.arg.lhs) + " != " + term_text(phi.arg.rhs)), _F_ATOM
    if isinstance(phi, Eq):
        return (term_text(phi.lhs) + " = " + term_text(phi.rhs)), _F_ATOM
    if isinstance(phi, Le):
        return (term_text(phi.lhs) + " <= " + term_text(phi.rhs)), _F_ATOM
    if is_atom(phi):
        return phi.atom_text(), _F_ATOM
    if isinstance(phi, Not):
        body, _ = _formula_body(phi.arg)
        return "!(" + body + ")", _F_NOT
    if isinstance(phi, And):
        return (formula_text(phi.lhs, _F_AND) + " && " + formula_text(phi.rhs, _F_NOT)), _F_AND
    if isinstance(phi, Or):
        return (formula_text(phi.lhs, _F_OR) + " || " + formula_text(phi.rhs, _F_AND)), _F_OR
    if isinstance(phi, Implies):
        return (formula_text(phi.lhs, _F_OR) + " -> " + formula_text(phi.rhs, _F_IMP)), _F_IMP
    if isinstance(phi, Exists):
        return ("exists " + phi.var + ". " + formula_text(phi.body, _F_QUANT)), _F_QUANT
    if isinstance(phi, Forall):
        return ("forall " + phi.var + ". " + formula_text(phi.body, _F_QUANT)), _F_QUANT
    raise TypeError(f"formula_text: unsupported node {phi!r}")
