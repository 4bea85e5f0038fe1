"""Complete orbit invariants for tuples of quaternions and octonions.

For an m-tuple of quaternions the family is, writing u = v - conj(v):

    T1(i)     = v_i + conj(v_i)
    T2(i,j)   = u_i*u_j + conj(u_i*u_j)
    T3(i,j,k) = (u_i*u_j)*u_k + conj((u_i*u_j)*u_k)

(m + m^2 + m^3 entries).  For octonions the family is w + conj(w) for
every nonassociative word w of length <= 4 in the tuple entries.

Each entry evaluates to a central element, i.e. twice the real part of
the underlying product: the language has no 1/2, so the stored terms
are the doubled real parts, which separate exactly the same tuples.
Entries are stored together with the polynomial giving their central
value in the coordinates of the tuple.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from . import formulas as F
from .algebra import dimension
from .realify import Realification, realify_term

# ---------------------------------------------------------------------------
# nonassociative words as leaf-labelled binary trees


@dataclass(frozen=True)
class Leaf:
    index: int  # 0-based tuple position


@dataclass(frozen=True)
class Node:
    left: object
    right: object


def word_length(w):
    if isinstance(w, Leaf):
        return 1
    return word_length(w.left) + word_length(w.right)


def _shapes(nleaves):
    if nleaves == 1:
        yield Leaf(-1)
        return
    for lsize in range(1, nleaves):
        for ls in _shapes(lsize):
            for rs in _shapes(nleaves - lsize):
                yield Node(ls, rs)


def _label(shape, labels):
    it = iter(labels)

    def go(s):
        if isinstance(s, Leaf):
            return Leaf(next(it))
        return Node(go(s.left), go(s.right))

    return go(shape)


def enum_words(m, maxlen=4):
    """All leaf-labelled binary trees with <= maxlen leaves over m letters,
    ordered by length, then shape, then labels."""
    if m < 1:
        raise ValueError("need at least one letter")
    out = []
    for length in range(1, maxlen + 1):
        for shape in _shapes(length):
            for labels in iproduct(range(m), repeat=length):
                out.append(_label(shape, labels))
    return out


def word_count_formula(m, maxlen=4):
    """Closed form of len(enum_words(m, maxlen)): sum of Catalan(l-1)*m^l."""
    catalan = [1]
    for n in range(maxlen):
        catalan.append(sum(catalan[i] * catalan[n - i] for i in range(n + 1)))
    return sum(catalan[length - 1] * m ** length for length in range(1, maxlen + 1))


def word_term(w, names):
    if isinstance(w, Leaf):
        return F.Var(names[w.index])
    return F.Mul(word_term(w.left, names), word_term(w.right, names))


def word_text(w, names):
    if isinstance(w, Leaf):
        return names[w.index]
    return "(" + word_text(w.left, names) + "*" + word_text(w.right, names) + ")"


def eval_word(w, values, cache):
    got = cache.get(w)
    if got is not None:
        return got
    if isinstance(w, Leaf):
        v = values[w.index]
    else:
        v = eval_word(w.left, values, cache) * eval_word(w.right, values, cache)
    cache[w] = v
    return v


# ---------------------------------------------------------------------------
# schemes


@dataclass(frozen=True)
class SchemeEntry:
    label: str
    term: object       # algebra term, central-valued
    poly: object       # its central value in tuple coordinates
    word: object = None


@dataclass(frozen=True)
class InvariantScheme:
    algebra: str
    arity: int
    var_names: tuple
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def labels(self):
        return [e.label for e in self.entries]


def default_names(m):
    return tuple(f"v{i}" for i in range(1, m + 1))


def _central_value_poly(term, ctx):
    vec = realify_term(term, ctx)
    for p in vec[1:]:
        assert p.is_zero(), f"invariant term is not central: {term!r}"
    return vec[0]


def _doubled(t):
    return F.Add(t, F.Conj(t))


def quat_scheme(m, names=None, ctx=None):
    """The m + m^2 + m^3 entry family for quaternion m-tuples."""
    if m < 0:
        raise ValueError("arity must be nonnegative")
    names = tuple(names) if names is not None else default_names(m)
    assert len(names) == m
    if ctx is None:
        ctx = Realification("quat", names)
    vs = [F.Var(n) for n in names]
    us = [F.Sub(v, F.Conj(v)) for v in vs]
    entries = []
    for i in range(m):
        t = _doubled(vs[i])
        entries.append(SchemeEntry(f"T1({i + 1})", t, _central_value_poly(t, ctx)))
    for i in range(m):
        for j in range(m):
            t = _doubled(F.Mul(us[i], us[j]))
            entries.append(SchemeEntry(f"T2({i + 1},{j + 1})", t,
                                       _central_value_poly(t, ctx)))
    for i in range(m):
        for j in range(m):
            for k in range(m):
                t = _doubled(F.Mul(F.Mul(us[i], us[j]), us[k]))
                entries.append(SchemeEntry(f"T3({i + 1},{j + 1},{k + 1})", t,
                                           _central_value_poly(t, ctx)))
    assert len(entries) == m + m * m + m ** 3
    return InvariantScheme("quat", m, names, tuple(entries))


def oct_scheme(m, names=None, ctx=None, dedup=False, maxlen=4):
    """One entry per nonassociative word of length <= maxlen; dedup drops
    entries whose value polynomial is syntactically identical to an
    earlier one."""
    if m < 0:
        raise ValueError("arity must be nonnegative")
    names = tuple(names) if names is not None else default_names(m)
    assert len(names) == m
    if ctx is None:
        ctx = Realification("oct", names)
    entries = []
    seen = set()
    for w in (enum_words(m, maxlen) if m > 0 else []):
        t = _doubled(word_term(w, names))
        poly = _central_value_poly(t, ctx)
        if dedup:
            if poly in seen:
                continue
            seen.add(poly)
        entries.append(SchemeEntry(word_text(w, names), t, poly, word=w))
    return InvariantScheme("oct", m, names, tuple(entries))


def build_scheme(algebra, m, names=None, ctx=None, dedup=False):
    if algebra == "quat":
        return quat_scheme(m, names, ctx)
    if algebra == "oct":
        return oct_scheme(m, names, ctx, dedup=dedup)
    raise ValueError(f"unknown algebra {algebra!r}")


def eval_scheme(scheme, values):
    """Exact central values of all entries at a tuple, entry order."""
    if len(values) != scheme.arity:
        raise ValueError(f"tuple arity {len(values)} != scheme arity {scheme.arity}")
    two = 2
    if scheme.algebra == "quat":
        us = [v - v.conj() for v in values]
        out = []
        m = scheme.arity
        pair = {}
        for i in range(m):
            out.append(two * values[i].re())
        for i in range(m):
            for j in range(m):
                pair[(i, j)] = us[i] * us[j]
                out.append(two * pair[(i, j)].re())
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    out.append(two * (pair[(i, j)] * us[k]).re())
        return out
    cache = {}
    return [two * eval_word(e.word, values, cache).re() for e in scheme.entries]


def scheme_dump_lines(scheme):
    """label TAB term-text TAB polynomial-text, one line per entry."""
    lines = []
    for e in scheme.entries:
        lines.append("\t".join([e.label, F.term_text(e.term), e.poly.to_text()]))
    return lines
