"""The vector lattice of continuous piecewise-linear functions on a polyhedron.

A function is a triangulation together with one exact value per vertex and
is affine on every simplex.  Lattice operations first refine both operands
to a common triangulation on which their difference has constant sign per
simplex; then min / max can be taken vertex by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exact import ZERO, as_rational, format_rational, make_point
from .refinement import (
    PolyhedraDiffer,
    common_refinement,
    interpolate,
    split_by_hyperplane,
    split_by_values,
    transfer_values,
)
from .simplicial import SimplicialComplex

__all__ = [
    "PLFunction",
    "PolyhedraDiffer",
    "NegativeFunction",
    "evaluate",
    "split_by_hyperplane",
    "common_linearization",
    "linear_combination",
    "lattice_op",
    "meet",
    "join",
    "signed_parts",
    "is_nonnegative",
    "is_zero",
    "equals",
    "zero_set_subcomplex",
    "re_express",
]


class NegativeFunction(ValueError):
    """A nonnegative function was required."""


@dataclass(frozen=True, eq=False)
class PLFunction:
    triangulation: SimplicialComplex
    values: tuple

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if len(vals) != len(self.triangulation.vertices):
            raise ValueError(
                f"{len(vals)} values for {len(self.triangulation.vertices)} vertices"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, K: SimplicialComplex, c=1) -> "PLFunction":
        c = as_rational(c)
        return cls(K, (c,) * len(K.vertices))

    @classmethod
    def zero(cls, K: SimplicialComplex) -> "PLFunction":
        return cls.constant(K, 0)

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self) -> "PLFunction":
        return self.scaled(-1)

    def __mul__(self, a) -> "PLFunction":
        return self.scaled(a)

    __rmul__ = __mul__

    def __and__(self, other: "PLFunction") -> "PLFunction":
        return meet(self, other)

    def __or__(self, other: "PLFunction") -> "PLFunction":
        return join(self, other)

    def scaled(self, a) -> "PLFunction":
        a = as_rational(a)
        return PLFunction(self.triangulation, tuple(a * v for v in self.values))

    def max_value(self):
        return max(self.values)

    def support_vertices(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v != 0]

    def __repr__(self) -> str:
        vals = ", ".join(format_rational(v) for v in self.values[:8])
        more = ", ..." if len(self.values) > 8 else ""
        return f"PLFunction({self.triangulation!r}, values=[{vals}{more}])"


def evaluate(f: PLFunction, x) -> object:
    """Barycentric interpolation of the vertex values on the carrier of x."""
    return interpolate(f.triangulation, f.values, make_point(x))


def re_express(f: PLFunction, K: SimplicialComplex) -> PLFunction:
    """The same function with vertex values on K (K must linearize f)."""
    if K is f.triangulation:
        return f
    return PLFunction(K, tuple(transfer_values(f.values, f.triangulation, K)))


def common_linearization(f: PLFunction, g: PLFunction) -> tuple[PLFunction, PLFunction]:
    """Re-express f and g on one triangulation refining both, split so that
    f - g has constant sign on every simplex."""
    K = common_refinement(f.triangulation, g.triangulation)
    fv = transfer_values(f.values, f.triangulation, K)
    gv = transfer_values(g.values, g.triangulation, K)
    Ks = split_by_values(K, [a - b for a, b in zip(fv, gv)])
    if Ks is not K:
        fv = transfer_values(fv, K, Ks)
        gv = transfer_values(gv, K, Ks)
    return PLFunction(Ks, tuple(fv)), PLFunction(Ks, tuple(gv))


def linear_combination(
    terms: Iterable[tuple], polyhedron: Optional[SimplicialComplex] = None
) -> PLFunction:
    """Pointwise sum of ``a * f`` over the (coefficient, function) terms."""
    terms = [(as_rational(a), f) for a, f in terms]
    if not terms:
        if polyhedron is None:
            raise ValueError("empty combination needs a polyhedron")
        return PLFunction.zero(polyhedron)
    K = polyhedron if polyhedron is not None else terms[0][1].triangulation
    for _, f in terms:
        K = common_refinement(K, f.triangulation)
    acc = [ZERO] * len(K.vertices)
    for a, f in terms:
        if a == 0:
            continue
        vals = transfer_values(f.values, f.triangulation, K)
        acc = [x + a * v for x, v in zip(acc, vals)]
    return PLFunction(K, tuple(acc))


def lattice_op(kind: str, f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise min (``"meet"``) or max (``"join"``)."""
    if kind not in ("meet", "join"):
        raise ValueError(f"unknown lattice operation {kind!r}")
    fl, gl = common_linearization(f, g)
    pick = min if kind == "meet" else max
    return PLFunction(fl.triangulation, tuple(pick(a, b) for a, b in zip(fl.values, gl.values)))


def meet(f: PLFunction, g: PLFunction) -> PLFunction:
    return lattice_op("meet", f, g)


def join(f: PLFunction, g: PLFunction) -> PLFunction:
    return lattice_op("join", f, g)


def signed_parts(f: PLFunction) -> tuple[PLFunction, PLFunction]:
    """(f v 0, (-f) v 0) on one shared triangulation."""
    K = split_by_values(f.triangulation, f.values)
    vals = transfer_values(f.values, f.triangulation, K)
    pos = tuple(v if v > 0 else ZERO for v in vals)
    neg = tuple(-v if v < 0 else ZERO for v in vals)
    return PLFunction(K, pos), PLFunction(K, neg)


def is_nonnegative(f: PLFunction) -> bool:
    return all(v >= 0 for v in f.values)


def is_zero(f: PLFunction) -> bool:
    return all(v == 0 for v in f.values)


def equals(f: PLFunction, g: PLFunction) -> bool:
    """Semantic equality: agreement on a common refinement."""
    if f.triangulation is g.triangulation or f.triangulation == g.triangulation:
        return f.values == g.values
    K = common_refinement(f.triangulation, g.triangulation)
    return transfer_values(f.values, f.triangulation, K) == transfer_values(
        g.values, g.triangulation, K
    )


def zero_set_subcomplex(f: PLFunction) -> frozenset:
    """Simplices of the triangulation on which the nonnegative f vanishes."""
    if not is_nonnegative(f):
        raise NegativeFunction("zero set subcomplex needs a nonnegative function")
    zero = [v == 0 for v in f.values]
    return frozenset(s for s in f.triangulation.simplices if all(zero[i] for i in s))


def from_affine(K: SimplicialComplex, ell) -> PLFunction:
    """Restriction of an affine functional to |K|."""
    return PLFunction(K, tuple(ell(v) for v in K.vertices))


def values_at(f: PLFunction, points: Sequence) -> list:
    return [evaluate(f, p) for p in points]
