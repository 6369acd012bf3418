"""Geometric simplicial complexes over Q^n and their topological toolkit."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .exact import (
    ONE,
    ZERO,
    GeometryError,
    affine_extension,
    affine_hull_normals,
    affinely_independent,
    barycentric_coordinates,
    determinant,
    format_rational,
    make_point,
    rank,
    solve_linear,
)


class PointOutsideError(GeometryError):
    """Raised when a point does not lie in the polyhedron of a complex."""


class NotASubcomplex(GeometryError):
    pass


class InvalidComplex(GeometryError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations[:5]))
        self.violations = violations


@dataclass(frozen=True)
class VertexTag:
    """Source of a vertex of a derived complex: the simplex it is the barycentre of.

    Original vertices are the barycentres of their own 0-simplex.
    """

    source: tuple

    @property
    def is_original(self) -> bool:
        return len(self.source) == 1

    def __str__(self) -> str:
        if self.is_original:
            return f"original({self.source[0]})"
        return f"barycentre{self.source}"


def face_closure(simplices: Iterable[Sequence[int]]) -> frozenset:
    out: set = set()
    for s in simplices:
        s = tuple(sorted(s))
        if s in out:
            continue
        for r in range(1, len(s) + 1):
            out.update(combinations(s, r))
    return frozenset(out)


def _bbox(points: Sequence[Sequence]):
    lo = tuple(min(c) for c in zip(*points))
    hi = tuple(max(c) for c in zip(*points))
    return lo, hi


def _bbox_overlap(a, b) -> bool:
    return all(al <= bh and bl <= ah for al, ah, bl, bh in zip(a[0], a[1], b[0], b[1]))


def _in_bbox(x, box) -> bool:
    return all(l <= c <= h for c, l, h in zip(x, box[0], box[1]))


class SimplexFrame:
    """Precomputed barycentric functionals of one simplex, for fast location."""

    __slots__ = ("simplex", "bbox", "lambdas", "normals")

    def __init__(self, simplex: tuple, points: Sequence[Sequence]):
        self.simplex = simplex
        self.bbox = _bbox(points)
        k = len(points)
        self.lambdas = [
            affine_extension(points, [ONE if i == j else ZERO for i in range(k)])
            for j in range(k)
        ]
        self.normals = affine_hull_normals(points) if k <= len(points[0]) else []

    def coordinates(self, x) -> Optional[tuple]:
        """Barycentric coordinates of x, or None off the affine hull."""
        if any(nl(x) != 0 for nl in self.normals):
            return None
        return tuple(l(x) for l in self.lambdas)

    def contains(self, x) -> Optional[tuple]:
        if not _in_bbox(x, self.bbox):
            return None
        bc = self.coordinates(x)
        if bc is None or any(c < 0 for c in bc):
            return None
        return bc


class SimplicialComplex:
    """A finite geometric simplicial complex with every face materialized.

    Simplices are strictly increasing tuples of indices into ``vertices``.
    A complex produced by subdividing another one keeps the parent's vertices
    as a prefix and records, for each appended vertex, a convex combination of
    parent vertices (``origins``); ``parent`` links to the complex refined.
    """

    def __init__(
        self,
        ambient_dim: int,
        vertices: Iterable,
        simplices: Iterable[Sequence[int]],
        *,
        parent: Optional["SimplicialComplex"] = None,
        origins: Optional[Sequence] = None,
        tags: Optional[Sequence[VertexTag]] = None,
        closed: bool = False,
    ):
        self.ambient_dim = int(ambient_dim)
        self.vertices = tuple(make_point(v) for v in vertices)
        if closed:
            self.simplices = frozenset(simplices)
        else:
            self.simplices = face_closure(simplices)
        self.parent = parent
        self.origins = tuple(origins) if origins is not None else None
        self.tags = tuple(tags) if tags is not None else None
        if parent is not None:
            assert self.origins is not None
            assert len(parent.vertices) + len(self.origins) == len(self.vertices)

    @classmethod
    def from_maximal(cls, ambient_dim: int, vertices, maximal_simplices) -> "SimplicialComplex":
        return cls(ambient_dim, vertices, maximal_simplices)

    @classmethod
    def empty(cls, ambient_dim: int) -> "SimplicialComplex":
        return cls(ambient_dim, (), (), closed=True)

    # -- structure -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._hash == other._hash
            and self.vertices == other.vertices
            and self.simplices == other.simplices
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.ambient_dim, self.vertices, self.simplices))

    def __repr__(self) -> str:
        counts = ",".join(str(len(self.by_dim.get(d, ()))) for d in range(self.dim + 1))
        return f"SimplicialComplex(n={self.ambient_dim}, f=({counts}))"

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def by_dim(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    @cached_property
    def maximal(self) -> list:
        covered: set = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(combinations(s, len(s) - 1))
        return sorted(s for s in self.simplices if s not in covered)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def f_vector(self) -> tuple:
        return tuple(len(self.by_dim.get(d, ())) for d in range(self.dim + 1))

    def points(self, simplex: Sequence[int]) -> list:
        return [self.vertices[i] for i in simplex]

    def barycentre(self, simplex: Sequence[int]):
        pts = self.points(simplex)
        k = mpq(len(pts))
        return tuple(sum(c, ZERO) / k for c in zip(*pts))

    def induced(self, simplices: Iterable[tuple]) -> "SimplicialComplex":
        """The subcomplex on the given (face-closed) simplices, reindexed.

        Used vertices keep their relative order; tags are carried along.
        """
        simplices = list(simplices)
        used = sorted({i for s in simplices for i in s})
        remap = {old: new for new, old in enumerate(used)}
        tags = [self.tags[i] for i in used] if self.tags is not None else None
        return SimplicialComplex(
            self.ambient_dim,
            [self.vertices[i] for i in used],
            [tuple(remap[i] for i in s) for s in simplices],
            tags=tags,
            closed=True,
        )

    def as_dict(self) -> dict:
        """Canonical JSON-ready form: vertices as rational strings, maximal simplices."""
        return {
            "ambient_dim": self.ambient_dim,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "maximal_simplices": [list(s) for s in self.maximal],
        }

    @cached_property
    def fingerprint(self) -> str:
        text = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def ancestors(self):
        k = self
        while k is not None:
            yield k
            k = k.parent

    # -- point location --------------------------------------------------

    @cached_property
    def frames(self) -> list[SimplexFrame]:
        return [SimplexFrame(s, self.points(s)) for s in self.maximal]

    def locate(self, x) -> tuple[tuple, tuple]:
        """A maximal simplex containing x and x's barycentric coordinates in it."""
        x = make_point(x)
        if len(x) != self.ambient_dim:
            raise GeometryError(
                f"point has dimension {len(x)}, complex lives in dimension {self.ambient_dim}"
            )
        idx = self.vertex_index.get(x)
        if idx is not None:
            return (idx,), (ONE,)
        for fr in self.frames:
            bc = fr.contains(x)
            if bc is not None:
                return fr.simplex, bc
        raise PointOutsideError("point not in polyhedron")

    def frames_containing(self, x) -> list[tuple[SimplexFrame, tuple]]:
        out = []
        for fr in self.frames:
            bc = fr.contains(x)
            if bc is not None:
                out.append((fr, bc))
        return out


# -- operations --------------------------------------------------------------


def geometric_simplices(K: SimplicialComplex) -> frozenset:
    """Index-free view of a complex: each simplex as a frozenset of its points."""
    return frozenset(frozenset(K.vertices[i] for i in s) for s in K.simplices)


def _max_off_common_face(P: list, Q: list, shared_p: set, shared_q: set) -> Optional[object]:
    """Largest total barycentric weight off the shared vertices, over common points.

    Solves a tiny LP exactly by enumerating basic feasible solutions.  Returns
    None when the two simplices are disjoint.
    """
    n = len(P[0])
    cols = [[*p, ONE, ZERO] for p in P] + [[*(-c for c in q), ZERO, ONE] for q in Q]
    rows = [[col[r] for col in cols] for r in range(n + 2)]
    rhs = [ZERO] * n + [ONE, ONE]
    weights = [0 if i in shared_p else 1 for i in range(len(P))] + [
        0 if j in shared_q else 1 for j in range(len(Q))
    ]
    r = rank(rows)
    best = None
    for basis in combinations(range(len(cols)), r):
        sub = [[row[c] for c in basis] for row in rows]
        if rank(sub) < r:
            continue
        z = solve_linear(sub, rhs)
        if z is None or any(v < 0 for v in z):
            continue
        val = sum((z[i] for i, c in enumerate(basis) if weights[c]), ZERO)
        if best is None or val > best:
            best = val
    return best


def _facet_separated(K: SimplicialComplex, frame: SimplexFrame, t: tuple, shared: set) -> bool:
    """Cheap sufficient test that frame's simplex meets t in their common face.

    If t lies on the far side of a facet hyperplane of the full-dimensional
    simplex, and only shared vertices of t touch that hyperplane, the two
    simplices can only meet in the hull of shared vertices.
    """
    if frame.normals:
        return False
    for lam in frame.lambdas:
        touching = []
        for v in t:
            side = lam(K.vertices[v])
            if side > 0:
                break
            if side == 0:
                touching.append(v)
        else:
            if all(v in shared for v in touching):
                return True
    return False


def validate(K: SimplicialComplex, check_intersections: bool = True) -> list[str]:
    """Check the complex invariants; returns a list of violations (empty when ok)."""
    violations: list[str] = []
    n = K.ambient_dim
    for i, v in enumerate(K.vertices):
        if len(v) != n:
            violations.append(f"vertex {i} has dimension {len(v)}, expected {n}")
    if violations:
        return violations
    seen: dict = {}
    for i, v in enumerate(K.vertices):
        if v in seen:
            violations.append(f"duplicate vertex: indices {seen[v]} and {i} share coordinates")
        else:
            seen[v] = i
    nv = len(K.vertices)
    used: set = set()
    for s in sorted(K.simplices):
        if not s or any(a >= b for a, b in zip(s, s[1:])):
            violations.append(f"simplex {s} is not a strictly increasing index tuple")
            continue
        if s[0] < 0 or s[-1] >= nv:
            violations.append(f"simplex {s} references a missing vertex")
            continue
        used.update(s)
        for r in range(1, len(s)):
            for face in combinations(s, r):
                if face not in K.simplices:
                    violations.append(f"face {face} of simplex {s} is missing")
    for i in range(nv):
        if i not in used:
            violations.append(f"vertex {i} belongs to no simplex")
    if violations:
        return violations
    for s in K.maximal:
        if not affinely_independent(K.points(s)):
            violations.append(f"simplex {s} has affinely dependent vertices")
    if violations or not check_intersections:
        return violations
    frames = K.frames
    for fs, ft in combinations(frames, 2):
        if not _bbox_overlap(fs.bbox, ft.bbox):
            continue
        s, t = fs.simplex, ft.simplex
        shared = set(s) & set(t)
        if _facet_separated(K, fs, t, shared) or _facet_separated(K, ft, s, shared):
            continue
        best = _max_off_common_face(
            K.points(s),
            K.points(t),
            {i for i, v in enumerate(s) if v in shared},
            {j for j, v in enumerate(t) if v in shared},
        )
        if best is None:
            continue
        if not shared:
            violations.append(f"simplices {s} and {t} intersect but share no vertex")
        elif best > 0:
            violations.append(
                f"simplices {s} and {t} intersect outside their common face "
                f"{tuple(sorted(shared))}"
            )
    return violations


def euler_characteristic(K: SimplicialComplex) -> int:
    """Alternating count of simplices by dimension; 0 for the empty complex."""
    return sum(1 if len(s) % 2 else -1 for s in K.simplices)


def derived_complex(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision.

    Original vertices keep their indices; barycentres of higher simplices are
    appended in lexicographic order of their source tuples.  Every vertex
    carries a :class:`VertexTag`.
    """
    higher = sorted(s for s in K.simplices if len(s) > 1)
    index = {(i,): i for i in range(len(K.vertices))}
    for j, s in enumerate(higher):
        index[s] = len(K.vertices) + j
    origins = [tuple((i, mpq(1, len(s))) for i in s) for s in higher]
    new_vertices = list(K.vertices) + [K.barycentre(s) for s in higher]
    tags = [VertexTag((i,)) for i in range(len(K.vertices))] + [VertexTag(s) for s in higher]

    chains: dict = {}
    for s in sorted(K.simplices, key=len):
        own = [(index[s],)]
        for r in range(1, len(s)):
            for face in combinations(s, r):
                own.extend(c + (index[s],) for c in chains[face])
        chains[s] = own
    simplices = frozenset(tuple(sorted(c)) for cs in chains.values() for c in cs)
    return SimplicialComplex(
        K.ambient_dim, new_vertices, simplices, parent=K, origins=origins, tags=tags, closed=True
    )


def as_subcomplex(K: SimplicialComplex, L) -> frozenset:
    """Normalize L (index tuples of K, or a complex sharing K's points) to K's indices."""
    if isinstance(L, SimplicialComplex):
        try:
            remap = [K.vertex_index[v] for v in L.vertices]
        except KeyError:
            raise NotASubcomplex("subcomplex has a vertex that is not a vertex of K") from None
        L = [tuple(sorted(remap[i] for i in s)) for s in L.simplices]
    out = frozenset(tuple(sorted(s)) for s in L)
    missing = [s for s in out if s not in K.simplices]
    if missing:
        raise NotASubcomplex(f"simplex {missing[0]} is not a simplex of K")
    if face_closure(out) != out:
        raise NotASubcomplex("L is not closed under taking faces")
    return out


def supplement(K: SimplicialComplex, L) -> SimplicialComplex:
    """Simplices of K' none of whose vertices is a barycentre of a simplex of L."""
    Lset = as_subcomplex(K, L)
    Kp = derived_complex(K)
    allowed = [t.source not in Lset for t in Kp.tags]
    keep = [s for s in Kp.simplices if all(allowed[i] for i in s)]
    return Kp.induced(keep)


def supplement_euler_characteristic(K: SimplicialComplex, L) -> int:
    """chi(supplement(K, L)) without building the derived complex.

    Simplices of the supplement are chains of K-simplices outside L, so the
    alternating count is accumulated over chains by their top element.
    """
    Lset = as_subcomplex(K, L) if not isinstance(L, frozenset) else L
    signed: dict = {}
    total = 0
    for s in sorted(K.simplices, key=len):
        if s in Lset:
            continue
        c = 1
        for r in range(1, len(s)):
            for face in combinations(s, r):
                c -= signed.get(face, 0)
        signed[s] = c
        total += c
    return total


def simplicial_neighbourhood(Kp: SimplicialComplex, v: int) -> SimplicialComplex:
    """Face closure of the simplices of Kp that contain vertex v."""
    if not 0 <= v < len(Kp.vertices):
        raise GeometryError(f"{v} is not a vertex of the complex")
    star = [s for s in Kp.simplices if v in s]
    return Kp.induced(face_closure(star))


def carrier(K: SimplicialComplex, x) -> tuple:
    """The unique simplex whose relative interior contains x."""
    simplex, bc = K.locate(x)
    return tuple(i for i, c in zip(simplex, bc) if c > 0)


def relative_volume(outer: Sequence[Sequence], inner: Sequence[Sequence]) -> object:
    """Volume of simplex ``inner`` as a fraction of ``outer`` (same dimension,
    inner inside aff(outer))."""
    if len(outer) == len(outer[0]) + 1 and len(inner) == len(outer):
        def edge_det(pts):
            return determinant([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]])

        return abs(edge_det(inner) / edge_det(outer))
    rows = [barycentric_coordinates(outer, p) for p in inner]
    if any(r is None for r in rows):
        raise GeometryError("inner simplex leaves the affine hull")
    return abs(determinant(rows))
