"""Hats of a triangulation, hat decompositions and the hat-meet reduction."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import ONE, ZERO, format_rational
from .pl import PLFunction, equals, is_zero, linear_combination, meet, re_express
from .simplicial import GeometryError, SimplicialComplex


class HatReductionError(AssertionError):
    """A runtime check of the hat-meet reduction failed.

    ``dump`` holds the serialized inputs and the partial trace.
    """

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass(frozen=True)
class HatDecomposition:
    triangulation: SimplicialComplex
    terms: tuple  # (coefficient, vertex index) pairs

    def reconstruct(self) -> PLFunction:
        return linear_combination(
            [(a, hat(self.triangulation, v)) for a, v in self.terms],
            polyhedron=self.triangulation,
        )

    def as_dict(self) -> dict:
        return {
            "vertices": [v for _, v in self.terms],
            "coefficients": [format_rational(a) for a, _ in self.terms],
        }


def hat(K: SimplicialComplex, v: int) -> PLFunction:
    """The function that is 1 at vertex v and 0 at every other vertex of K."""
    if not 0 <= v < len(K.vertices):
        raise GeometryError(f"{v} is not a vertex index")
    return PLFunction(K, tuple(ONE if i == v else ZERO for i in range(len(K.vertices))))


def _values_on(K: SimplicialComplex, f: PLFunction) -> Optional[list]:
    """f's values at K's vertices if f is linear on K, else None."""
    if f.triangulation is K or f.triangulation == K:
        return list(f.values)
    index = f.triangulation.vertex_index
    vals = []
    for x in K.vertices:
        i = index.get(x)
        vals.append(f.values[i] if i is not None else f(x))
    if not equals(f, PLFunction(K, tuple(vals))):
        return None
    return vals


def hat_defect(K: SimplicialComplex, f: PLFunction) -> Optional[str]:
    """Why f is not a hat of K, or None when it is."""
    vals = _values_on(K, f)
    if vals is None:
        return "not linear on the given triangulation"
    ones = [i for i, v in enumerate(vals) if v == 1]
    if len(ones) != 1:
        return f"takes the value 1 at {len(ones)} vertices"
    if any(v != 0 for i, v in enumerate(vals) if i != ones[0]):
        return "nonzero at a vertex other than its apex"
    return None


def is_hat_of(K: SimplicialComplex, f: PLFunction) -> bool:
    return hat_defect(K, f) is None


def decompose(f: PLFunction) -> HatDecomposition:
    """Coefficients over the hats of f's own triangulation (nonzero ones only)."""
    terms = tuple((v, i) for i, v in enumerate(f.values) if v != 0)
    return HatDecomposition(f.triangulation, terms)


def shape_defect(f: PLFunction) -> Optional[str]:
    """Sanity check for a hat on an unknown triangulation: nonnegative, maximum
    1 at exactly one vertex, every other vertex strictly below 1."""
    if any(v < 0 for v in f.values):
        return "takes negative values"
    top = [i for i, v in enumerate(f.values) if v == 1]
    if len(top) != 1:
        return f"value 1 attained at {len(top)} vertices"
    if any(v > 1 for v in f.values):
        return "exceeds 1"
    return None


def apex(f: PLFunction) -> tuple:
    """Point where f attains its maximum (the apex of a hat)."""
    m = f.max_value()
    return next(x for x, v in zip(f.triangulation.vertices, f.values) if v == m)


def canonical_order(hats: Sequence[PLFunction]) -> list[PLFunction]:
    return sorted(hats, key=apex)


def _dump(fs: Sequence[PLFunction]) -> list:
    return [
        {
            "complex": f.triangulation.as_dict(),
            "values": [format_rational(v) for v in f.values],
        }
        for f in fs
    ]


def hat_meet_reduction(
    hat_list: Sequence[PLFunction],
    h_n: PLFunction,
    triangulation: Optional[SimplicialComplex] = None,
    verify: bool = True,
) -> list[PLFunction]:
    """Peel ``h_n`` against each hat in turn.

    ``k_i = h_i ^ h_n^i`` with ``h_n^0 = h_n`` and ``h_n^(i+1) = h_n^i - k_i``.
    Returns the k_i, all expressed on one triangulation.  With ``verify`` the
    identity ``(sum h_i) ^ h_n == sum k_i`` and the hat shape of every nonzero
    ``2 k_i`` are asserted; failures raise :class:`HatReductionError`.
    """
    hats = list(hat_list)
    everyone = hats + [h_n]
    for f in everyone:
        why = hat_defect(triangulation, f) if triangulation is not None else shape_defect(f)
        if why is not None:
            raise GeometryError(f"input is not a hat: {why}")
    apexes = [apex(f) for f in everyone]
    if len(set(apexes)) != len(apexes):
        raise GeometryError("input hats are not pairwise distinct")

    ks = []
    rest = h_n
    for h in hats:
        k = meet(h, rest)
        ks.append(k)
        rest = linear_combination([(1, rest), (-1, k)])
    if not ks:
        return []
    T = rest.triangulation
    ks = [re_express(k, T) for k in ks]
    if verify:
        _verify_reduction(hats, h_n, ks, T)
    return ks


def _verify_reduction(hats, h_n, ks, T) -> None:
    total = linear_combination([(1, re_express(h, T)) for h in hats])
    lhs = meet(total, re_express(h_n, T))
    rhs = linear_combination([(1, k) for k in ks])
    dump = {"hats": _dump(hats), "h_n": _dump([h_n])[0], "k": _dump(ks)}
    if not equals(lhs, rhs):
        raise HatReductionError("(sum h_i) ^ h_n differs from sum k_i", dump)
    doubled = [k.scaled(2) for k in ks if not is_zero(k)]
    for d in doubled:
        why = shape_defect(d)
        if why is not None:
            raise HatReductionError(f"2k is not hat-shaped: {why}", dump)
    tops = [apex(d) for d in doubled]
    if len(set(tops)) != len(tops):
        raise HatReductionError("two nonzero 2k share an apex", dump)


def dump_json(err: HatReductionError) -> str:
    return json.dumps(err.dump, sort_keys=True)
