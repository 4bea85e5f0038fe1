"""Exact univariate root isolation and sign determination over Q.

This is ground-truth machinery (Sturm chains, bisection, algebraic sign
evaluation) used to decide conjunctions of univariate polynomial sign
conditions exactly.  It shares no code path with the virtual
substitution backend, so the two can check each other.

Polynomials here are tuples of exact rationals, constant term first.
"""

from .rationals import Rat

ZERO = ()


def upoly(coeffs):
    cs = [Rat(c) if not hasattr(c, "numerator") or isinstance(c, int) else c
          for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p):
    return len(p) - 1 if p else -1


def eval_at(p, x):
    acc = Rat(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return tuple(c * k for k, c in enumerate(p) if k > 0)


def neg(p):
    return tuple(-c for c in p)


def _divmod(p, q):
    assert q, "division by zero polynomial"
    rem = list(p)
    dq = degree(q)
    quo = [Rat(0)] * max(0, len(p) - dq)
    while len(rem) - 1 >= dq and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        f = rem[-1] / q[-1]
        quo[k] = f
        for i, c in enumerate(q):
            rem[k + i] = rem[k + i] - f * c
        rem.pop()
    return tuple(quo), upoly(rem)


def rem(p, q):
    return _divmod(p, q)[1]


def monic(p):
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def gcd(p, q):
    a, b = p, q
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def squarefree(p):
    """p divided by gcd(p, p'); same root set, all roots simple."""
    if degree(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    if degree(g) == 0:
        return monic(p)
    return monic(_divmod(p, g)[0])


def sturm_chain(p):
    chain = [p, derivative(p)]
    while chain[-1]:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))
    return [c for c in chain if c]


def _variations(signs):
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            out += 1
        prev = s
    return out


def _sign(x):
    return (x > 0) - (x < 0)


def variations_at(chain, x):
    return _variations([_sign(eval_at(c, x)) for c in chain])


def variations_at_inf(chain, positive):
    signs = []
    for c in chain:
        s = _sign(c[-1])
        if not positive and degree(c) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(sf, chain, a, b):
    """Distinct roots of squarefree sf in (a, b); needs sf(a), sf(b) != 0."""
    assert eval_at(sf, a) != 0 and eval_at(sf, b) != 0
    return variations_at(chain, a) - variations_at(chain, b)


def cauchy_bound(p):
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else Rat(0)
    return Rat(1) + m / lead


class Root:
    """One real root of a squarefree polynomial, isolated in (lo, hi)
    with sf(lo) != 0 != sf(hi); exact is set when the root is rational."""

    __slots__ = ("sf", "chain", "lo", "hi", "exact")

    def __init__(self, sf, chain, lo, hi, exact=None):
        self.sf = sf
        self.chain = chain
        self.lo = lo
        self.hi = hi
        self.exact = exact

    def refine(self):
        """Halve the isolating interval."""
        if self.exact is not None:
            third = (self.hi - self.lo) / 4
            self.lo = self.exact - third
            self.hi = self.exact + third
            return
        mid = (self.lo + self.hi) / 2
        v = eval_at(self.sf, mid)
        if v == 0:
            self.exact = mid
            self.refine()
            return
        if count_roots(self.sf, self.chain, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def __repr__(self):
        return f"Root({self.lo}, {self.hi}, exact={self.exact})"


def isolate_roots(p):
    """Disjoint isolating intervals for all distinct real roots of p."""
    sf = squarefree(p)
    if degree(sf) <= 0:
        return []
    chain = sturm_chain(sf)
    bound = cauchy_bound(sf)
    lo, hi = -bound, bound
    # Cauchy bound is strict, so the endpoints are never roots
    total = count_roots(sf, chain, lo, hi)
    out = []

    def split(a, b, n):
        if n == 0:
            return
        if n == 1:
            out.append(Root(sf, chain, a, b))
            return
        mid = (a + b) / 2
        if eval_at(sf, mid) == 0:
            delta = (b - a) / 4
            while True:
                l2, h2 = mid - delta, mid + delta
                if (eval_at(sf, l2) != 0 and eval_at(sf, h2) != 0
                        and count_roots(sf, chain, l2, h2) == 1):
                    break
                delta = delta / 2
            out.append(Root(sf, chain, l2, h2, exact=mid))
            split(a, l2, count_roots(sf, chain, a, l2))
            split(h2, b, count_roots(sf, chain, h2, b))
            return
        nl = count_roots(sf, chain, a, mid)
        split(a, mid, nl)
        split(mid, b, n - nl)

    split(lo, hi, total)
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def roots_equal(r1, r2):
    """Exact equality test for roots of two squarefree polynomials."""
    if r1.exact is not None and r2.exact is not None:
        return r1.exact == r2.exact
    if r1.exact is not None:
        return eval_at(r2.sf, r1.exact) == 0 and r2.lo < r1.exact < r2.hi
    if r2.exact is not None:
        return eval_at(r1.sf, r2.exact) == 0 and r1.lo < r2.exact < r1.hi
    g = gcd(r1.sf, r2.sf)
    if degree(g) < 1:
        return False
    lo, hi = max(r1.lo, r2.lo), min(r1.hi, r2.hi)
    if lo >= hi:
        return False
    if eval_at(g, lo) == 0 or eval_at(g, hi) == 0:
        # endpoints are non-roots of both sf's, hence of g | gcd
        raise AssertionError("gcd vanishes at an isolating endpoint")
    return count_roots(g, sturm_chain(g), lo, hi) == 1


def separate(r1, r2):
    """Refine two distinct roots until their intervals are disjoint."""
    while not (r1.hi <= r2.lo or r2.hi <= r1.lo):
        (r1 if (r1.hi - r1.lo) >= (r2.hi - r2.lo) else r2).refine()


def sign_at_root(q, root):
    """Exact sign of q at the isolated root."""
    if not q:
        return 0
    if root.exact is not None:
        return _sign(eval_at(q, root.exact))
    qsf = squarefree(q)
    g = gcd(root.sf, qsf)
    if degree(g) >= 1 and count_roots(g, sturm_chain(g), root.lo, root.hi) == 1:
        return 0
    qchain = sturm_chain(qsf)
    while True:
        if (eval_at(qsf, root.lo) != 0 and eval_at(qsf, root.hi) != 0
                and count_roots(qsf, qchain, root.lo, root.hi) == 0):
            return _sign(eval_at(q, root.lo))
        root.refine()
        if root.exact is not None:
            return _sign(eval_at(q, root.exact))


_REL_OK = {
    "eq": lambda s: s == 0,
    "ne": lambda s: s != 0,
    "le": lambda s: s <= 0,
    "lt": lambda s: s < 0,
}


def satisfiable_conjunction(constraints):
    """Exact satisfiability of /\\ p_i rho_i 0 over one real variable.

    Decomposes the line into the roots of all constraint polynomials
    and the open intervals between them, and checks the sign vector on
    every cell.
    """
    varying = []
    for p, rel in constraints:
        p = upoly(p)
        if degree(p) <= 0:
            val = p[0] if p else Rat(0)
            if not _REL_OK[rel](_sign(val)):
                return False
        else:
            varying.append((p, rel))
    if not varying:
        return True

    roots = []
    for p, _rel in varying:
        roots.extend(isolate_roots(p))

    # merge equal roots, separate distinct ones
    clusters = []
    for r in roots:
        merged = False
        for cl in clusters:
            if roots_equal(cl[0], r):
                cl.append(r)
                merged = True
                break
        if not merged:
            clusters.append([r])
    reps = [cl[0] for cl in clusters]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            separate(reps[i], reps[j])
    order = sorted(range(len(reps)), key=lambda i: reps[i].lo)
    reps = [reps[i] for i in order]
    clusters = [clusters[i] for i in order]

    def holds_at_point(x):
        return all(_REL_OK[rel](_sign(eval_at(p, x))) for p, rel in varying)

    samples = []
    if not reps:
        samples.append(Rat(0))
    else:
        samples.append(reps[0].lo - 1)
        for a, b in zip(reps, reps[1:]):
            samples.append((a.hi + b.lo) / 2)
        samples.append(reps[-1].hi + 1)
    for x in samples:
        if holds_at_point(x):
            return True

    for rep, cluster in zip(reps, clusters):
        owner_sfs = {c.sf for c in cluster}
        ok = True
        for p, rel in varying:
            if squarefree(p) in owner_sfs:
                s = 0
            else:
                s = sign_at_root(p, rep)
            if not _REL_OK[rel](s):
                ok = False
                break
        if ok:
            return True
    return False
