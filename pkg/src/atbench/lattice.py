"""Exact 2D lattice linear algebra: integer vectors, unimodular maps, rational points.

All geometry in this package runs on big-integer rationals; no floats enter
until the reporting layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Vec:
    """Integer lattice vector."""

    x: int
    y: int

    def __add__(self, other: "Vec") -> "Vec":
        return Vec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec") -> "Vec":
        return Vec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec":
        return Vec(-self.x, -self.y)

    def __mul__(self, s: int) -> "Vec":
        return Vec(self.x * s, self.y * s)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_primitive(self) -> bool:
        return not self.is_zero() and gcd(abs(self.x), abs(self.y)) == 1

    def perp(self) -> "Vec":
        """Counter-clockwise quarter turn."""
        return Vec(-self.y, self.x)

    def as_pt(self) -> "Pt":
        return Pt(Fraction(self.x), Fraction(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Vec({self.x}, {self.y})"


def wedge(v: Vec, w: Vec) -> int:
    """Determinant of the pair (v, w)."""
    return v.x * w.y - v.y * w.x


def dot(v: Vec, w: Vec) -> int:
    return v.x * w.x + v.y * w.y


def primitive_of(v: Vec) -> tuple[Vec, int]:
    """Split v = g * p with p primitive and g = gcd > 0."""
    if v.is_zero():
        raise LatticeError("zero vector has no primitive direction")
    g = gcd(abs(v.x), abs(v.y))
    return Vec(v.x // g, v.y // g), g


@dataclass(frozen=True)
class Pt:
    """Point of the rational plane; doubles as a rational displacement."""

    x: Fraction
    y: Fraction

    def __add__(self, other: "Pt") -> "Pt":
        return Pt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Pt") -> "Pt":
        return Pt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Pt":
        return Pt(-self.x, -self.y)

    def scale(self, t: Fraction | int) -> "Pt":
        return Pt(self.x * t, self.y * t)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def cross(self, other: "Pt") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot_vec(self, v: Vec) -> Fraction:
        return self.x * v.x + self.y * v.y

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Pt({self.x}, {self.y})"


def pt(x, y) -> Pt:
    return Pt(Fraction(x), Fraction(y))


def rational_direction(d: Pt) -> tuple[Vec, Fraction]:
    """Write a nonzero rational displacement d as t * w, w primitive integral, t > 0."""
    if d.is_zero():
        raise LatticeError("zero displacement has no direction")
    den = d.x.denominator * d.y.denominator // gcd(d.x.denominator, d.y.denominator)
    ix, iy = int(d.x * den), int(d.y * den)
    w, g = primitive_of(Vec(ix, iy))
    return w, Fraction(g, den)


def affine_length(p: Pt, q: Pt) -> Fraction:
    """Lattice length of the segment [p, q]: q - p = t * w with w primitive."""
    if p == q:
        return Fraction(0)
    _, t = rational_direction(q - p)
    return t


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix [[a, b], [c, d]] acting on column vectors."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        det = self.det()
        if det not in (1, -1):
            raise LatticeError(f"matrix with determinant {det} is not unimodular")
        return Mat2(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out = IDENTITY
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: Vec) -> Vec:
        return Vec(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)

    def apply_pt(self, p: Pt) -> Pt:
        return Pt(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)


IDENTITY = Mat2(1, 0, 0, 1)


def shear_matrix(c: Vec) -> Mat2:
    """The unimodular shear fixing c: x |-> x - (c ^ x) c.

    Sign convention pinned by the corner condition of the monotone triangle
    conv{(-1,-1),(2,-1),(-1,2)} with inward cuts.
    """
    if not c.is_primitive():
        raise LatticeError(f"shear direction {c} is not primitive")
    return Mat2(1 + c.x * c.y, -c.x * c.x, c.y * c.y, 1 - c.x * c.y)


def basis_completion(e: Vec) -> Mat2:
    """A determinant +1 matrix sending the primitive vector e to (1, 0)."""
    if not e.is_primitive():
        raise LatticeError(f"{e} is not primitive")
    # s*x + t*y = 1 via extended gcd
    s, t = _bezout(e.x, e.y)
    return Mat2(s, t, -e.y, e.x)


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t
