"""Quaternions and octonions over exact rationals.

Quaternions are coordinate vectors over the basis (1, i, j, k) with
i^2 = j^2 = k^2 = -1 and ij = k = -ji.  Octonions are Cayley-Dickson
pairs of quaternions x = h0 + h1*l with

    (a + b*l)(c + d*l) = (a*c - conj(d)*b) + (d*a + b*conj(c))*l,

so their basis is (1, i, j, k, l, il, jl, kl).  The 8x8 basis product
table used elsewhere (realification) is derived from this formula at
runtime, never written out by hand.

All values are immutable; arithmetic is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rationals import Rat, rat_str

_SCALARS = (int, Fraction, type(Rat(0)))


def _as_rat(x):
    if isinstance(x, int):
        return Rat(x)
    return x


@dataclass(frozen=True)
class Quaternion:
    """a + b*i + c*j + d*k with exact rational coordinates."""

    a: object
    b: object
    c: object
    d: object

    @staticmethod
    def from_coords(coords):
        a, b, c, d = (_as_rat(x) for x in coords)
        return Quaternion(a, b, c, d)

    @staticmethod
    def zero():
        return Quaternion(Rat(0), Rat(0), Rat(0), Rat(0))

    @staticmethod
    def one():
        return Quaternion(Rat(1), Rat(0), Rat(0), Rat(0))

    @staticmethod
    def scalar(x):
        return Quaternion(_as_rat(x), Rat(0), Rat(0), Rat(0))

    def coords(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Quaternion(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            s = _as_rat(other)
            return Quaternion(self.a * s, self.b * s, self.c * s, self.d * s)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def conj(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def re(self):
        return self.a

    def im(self):
        return (self.b, self.c, self.d)

    def is_zero(self):
        return self == Quaternion.zero()

    def is_central(self):
        z = Rat(0)
        return self.b == z and self.c == z and self.d == z

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        return self.conj() * (Rat(1) / n)

    def __str__(self):
        return _coord_str(self.coords(), ("", "i", "j", "k"))


@dataclass(frozen=True)
class Octonion:
    """Cayley-Dickson pair h0 + h1*l of quaternions."""

    h0: Quaternion
    h1: Quaternion

    @staticmethod
    def from_coords(coords):
        cs = [_as_rat(x) for x in coords]
        return Octonion(Quaternion(*cs[:4]), Quaternion(*cs[4:]))

    @staticmethod
    def zero():
        return Octonion(Quaternion.zero(), Quaternion.zero())

    @staticmethod
    def one():
        return Octonion(Quaternion.one(), Quaternion.zero())

    @staticmethod
    def scalar(x):
        return Octonion(Quaternion.scalar(x), Quaternion.zero())

    @staticmethod
    def from_quaternion(q):
        return Octonion(q, Quaternion.zero())

    def coords(self):
        return self.h0.coords() + self.h1.coords()

    def __add__(self, other):
        return Octonion(self.h0 + other.h0, self.h1 + other.h1)

    def __sub__(self, other):
        return Octonion(self.h0 - other.h0, self.h1 - other.h1)

    def __neg__(self):
        return Octonion(-self.h0, -self.h1)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return Octonion(self.h0 * other, self.h1 * other)
        a, b = self.h0, self.h1
        c, d = other.h0, other.h1
        return Octonion(a * c - d.conj() * b, d * a + b * c.conj())

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def conj(self):
        return Octonion(self.h0.conj(), -self.h1)

    def norm(self):
        return self.h0.norm() + self.h1.norm()

    def re(self):
        return self.h0.a

    def im(self):
        return self.coords()[1:]

    def is_zero(self):
        return self == Octonion.zero()

    def is_central(self):
        z = Rat(0)
        return all(x == z for x in self.coords()[1:])

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("octonion 0 has no inverse")
        return self.conj() * (Rat(1) / n)

    def __str__(self):
        return _coord_str(self.coords(), ("", "i", "j", "k", "l", "il", "jl", "kl"))


def _coord_str(coords, symbols):
    parts = []
    for x, sym in zip(coords, symbols):
        if x == 0:
            continue
        t = rat_str(x) if not sym else (sym if x == 1 else ("-" + sym if x == -1 else rat_str(x) + sym))
        parts.append(t)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


QUAT_DIM = 4
OCT_DIM = 8

ALGEBRAS = ("quat", "oct")


def dimension(algebra):
    if algebra == "quat":
        return QUAT_DIM
    if algebra == "oct":
        return OCT_DIM
    raise ValueError(f"unknown algebra {algebra!r}")


def basis_element(algebra, index):
    dim = dimension(algebra)
    coords = [0] * dim
    coords[index] = 1
    return from_coords(algebra, coords)


def from_coords(algebra, coords):
    if algebra == "quat":
        return Quaternion.from_coords(coords)
    if algebra == "oct":
        return Octonion.from_coords(coords)
    raise ValueError(f"unknown algebra {algebra!r}")


def zero(algebra):
    return basis_element(algebra, 0) - basis_element(algebra, 0)


def one(algebra):
    return basis_element(algebra, 0)


@lru_cache(maxsize=None)
def structure_table(algebra):
    """Basis products e_a * e_b = sign * e_c as table[a][b] = (sign, c).

    Derived by multiplying actual basis elements, so the octonion table
    is exactly the Cayley-Dickson doubling of the quaternion one.
    """
    dim = dimension(algebra)
    units = [basis_element(algebra, idx) for idx in range(dim)]
    table = []
    for ea in units:
        row = []
        for eb in units:
            coords = (ea * eb).coords()
            nz = [(idx, x) for idx, x in enumerate(coords) if x != 0]
            assert len(nz) == 1 and abs(nz[0][1]) == 1, "basis product is not a signed unit"
            idx, s = nz[0]
            row.append((1 if s > 0 else -1, idx))
        table.append(tuple(row))
    return tuple(table)
