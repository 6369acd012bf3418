"""Exact rational scalars, points and affine functionals.

Every scalar in the package is a :class:`gmpy2.mpq`, which is always kept in
lowest terms with a positive denominator.  Floating point never enters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))
Point = tuple  # tuple of Rational

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^\s*(-?)(\d+)(?:/(\d+))?\s*$")


class GeometryError(ValueError):
    """Base class for malformed geometric input."""


class DimensionMismatch(GeometryError):
    pass


class AffinelyDependent(GeometryError):
    pass


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` (optional leading ``-``) into a Rational.

    Non-reduced input such as ``"2/4"`` is accepted and normalized; a zero
    or negative denominator is rejected.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    sign, num, den = m.groups()
    q = int(den) if den is not None else 1
    if q <= 0:
        raise ValueError(f"denominator must be positive: {text!r}")
    p = int(num)
    return mpq(-p if sign else p, q)


def format_rational(r) -> str:
    r = as_rational(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def as_rational(x) -> Rational:
    """Coerce ints, Fractions, strings and mpq values; floats are refused."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, (Fraction, _RationalABC)):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def make_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def parse_point(text: str) -> Point:
    """Parse a comma separated list of rationals, e.g. ``"1/4,1/2"``."""
    return tuple(parse_rational(part) for part in text.split(","))


def dot(a: Sequence, b: Sequence):
    total = ZERO
    for x, y in zip(a, b):
        total += x * y
    return total


@dataclass(frozen=True)
class AffineFunctional:
    """The map ``x -> gradient . x + offset`` on Q^n."""

    gradient: tuple
    offset: Rational

    def __post_init__(self):
        object.__setattr__(self, "gradient", make_point(self.gradient))
        object.__setattr__(self, "offset", as_rational(self.offset))

    @property
    def dim(self) -> int:
        return len(self.gradient)

    def __call__(self, x: Sequence) -> Rational:
        if len(x) != len(self.gradient):
            raise DimensionMismatch(
                f"point has dimension {len(x)}, functional expects {len(self.gradient)}"
            )
        return dot(self.gradient, x) + self.offset

    def is_constant(self) -> bool:
        return all(g == 0 for g in self.gradient)

    def normalized(self) -> "AffineFunctional":
        """Scale so the first nonzero coefficient is 1 (hyperplane identity)."""
        for c in (*self.gradient, self.offset):
            if c != 0:
                return AffineFunctional(
                    tuple(g / c for g in self.gradient), self.offset / c
                )
        return self

    def __str__(self) -> str:
        grad = ",".join(format_rational(g) for g in self.gradient)
        return f"{grad};{format_rational(self.offset)}"

    @classmethod
    def parse(cls, text: str) -> "AffineFunctional":
        """Parse ``"g1,..,gn;c"``."""
        try:
            grad, off = text.split(";")
        except ValueError:
            raise ValueError(f"expected 'g1,..,gn;c', got {text!r}") from None
        return cls(parse_point(grad), parse_rational(off))


# -- linear algebra over Q ---------------------------------------------------


def _rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivots chosen column by column, left to right,
    taking the first row with a nonzero entry."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """Solve ``rows @ z = rhs`` exactly.

    Returns None if inconsistent.  Underdetermined systems get the solution
    with every free variable set to zero.
    """
    if not rows:
        return None
    nvars = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = _rref(aug)
    if nvars in pivots:
        return None
    z = [ZERO] * nvars
    for i, c in enumerate(pivots):
        z[c] = red[i][nvars]
    return z


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_rref([list(r) for r in rows])[1])


def null_space(rows: Sequence[Sequence], nvars: int) -> list[list]:
    """Basis of ``{z : rows @ z = 0}``, one vector per free column."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(nvars)] for j in range(nvars)]
    red, pivots = _rref(rows)
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        z = [ZERO] * nvars
        z[free] = ONE
        for i, c in enumerate(pivots):
            z[c] = -red[i][free]
        basis.append(z)
    return basis


def determinant(rows: Sequence[Sequence]) -> Rational:
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _check_vertices(vertices: Sequence[Sequence], x: Optional[Sequence] = None) -> int:
    if not vertices:
        raise GeometryError("empty vertex list")
    n = len(vertices[0])
    if any(len(v) != n for v in vertices) or (x is not None and len(x) != n):
        raise DimensionMismatch("points do not share one ambient dimension")
    return n


def affinely_independent(vertices: Sequence[Sequence]) -> bool:
    if len(vertices) <= 1:
        return True
    base = vertices[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in vertices[1:]]
    return rank(diffs) == len(diffs)


def barycentric_coordinates(vertices: Sequence[Sequence], x: Sequence) -> Optional[tuple]:
    """Exact barycentric coordinates of ``x`` with respect to ``vertices``.

    Returns None when ``x`` is off the affine hull.  ``x`` lies in the simplex
    iff every coordinate is >= 0, in its relative interior iff all are > 0.
    """
    n = _check_vertices(vertices, x)
    if not affinely_independent(vertices):
        raise AffinelyDependent("vertices are affinely dependent")
    k = len(vertices)
    rows = [[vertices[i][d] for i in range(k)] for d in range(n)]
    rows.append([ONE] * k)
    sol = solve_linear(rows, [*x, ONE])
    return None if sol is None else tuple(sol)


def affine_extension(vertices: Sequence[Sequence], values: Sequence) -> AffineFunctional:
    """An affine functional on Q^n taking ``values[i]`` at ``vertices[i]``.

    The unknowns are ordered (offset, g_1, ..., g_n) and eliminated in that
    order, free ones pinned to zero, so a constant input yields a constant
    functional and the result is reproducible.
    """
    _check_vertices(vertices)
    if len(values) != len(vertices):
        raise DimensionMismatch("need exactly one value per vertex")
    if not affinely_independent(vertices):
        raise AffinelyDependent("vertices are affinely dependent")
    rows = [[ONE, *v] for v in vertices]
    sol = solve_linear(rows, [as_rational(v) for v in values])
    assert sol is not None  # independent vertices always admit a solution
    return AffineFunctional(tuple(sol[1:]), sol[0])


def affine_hull_normals(vertices: Sequence[Sequence]) -> list[AffineFunctional]:
    """Affine functionals spanning those that vanish on the affine hull."""
    n = _check_vertices(vertices)
    rows = [[ONE, *v] for v in vertices]
    return [AffineFunctional(tuple(z[1:]), z[0]) for z in null_space(rows, n + 1)]
