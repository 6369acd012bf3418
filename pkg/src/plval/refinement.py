"""Subdivision machinery: hyperplane / zero-set splits and common refinements.

Splits never drop vertices, so a refined complex keeps its parent's vertex
table as a prefix.  That lineage lets values of a function that is linear on
the parent be carried down without any point location.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence


from .exact import (
    ONE,
    ZERO,
    AffineFunctional,
    GeometryError,
    affine_extension,
    barycentric_coordinates,
    rank,
    solve_linear,
)
from .simplicial import SimplexFrame, SimplicialComplex, _bbox, _bbox_overlap, relative_volume


class PolyhedraDiffer(GeometryError):
    """Two triangulations do not have the same underlying polyhedron."""


def placing_triangulation(points: dict) -> list[tuple]:
    """Placing triangulation of a point configuration in convex position.

    ``points`` maps labels to coordinates.  Points are inserted in
    lexicographic coordinate order; each is coned over the boundary facets it
    sees strictly, or over everything when it leaves the current affine hull.
    Returns maximal simplices as sorted label tuples.
    """
    order = sorted(points, key=lambda lab: points[lab])
    simplices = [(order[0],)]
    basis = [points[order[0]]]
    for lab in order[1:]:
        p = points[lab]
        if barycentric_coordinates(basis, p) is None:
            simplices = [s + (lab,) for s in simplices]
            basis.append(p)
            continue
        owners: dict = {}
        for s in simplices:
            for o in s:
                facet = tuple(v for v in s if v != o)
                owners.setdefault(facet, []).append(o)
        new = []
        for facet, opp in owners.items():
            if len(opp) != 1:
                continue
            pts = [points[v] for v in facet] + [points[opp[0]]]
            side = affine_extension(pts, [ZERO] * len(facet) + [ONE])
            if side(p) < 0:
                new.append(facet + (lab,))
        simplices.extend(new)
    return sorted(tuple(sorted(s)) for s in simplices)


def split_by_values(K: SimplicialComplex, values: Sequence) -> SimplicialComplex:
    """Refine K along the zero set of the function with the given vertex values.

    Every simplex with a strictly positive and a strictly negative vertex is cut
    by the zero set of its own affine piece; other simplices are kept.  Since
    the function is continuous, pieces agree on shared faces and the placing
    rule makes both sides triangulate a shared face identically.  Returns K
    itself when nothing is cut.
    """
    s = list(values)
    if len(s) != len(K.vertices):
        raise GeometryError("need one value per vertex")

    def crossed(simplex):
        return any(s[v] > 0 for v in simplex) and any(s[v] < 0 for v in simplex)

    cut = [sig for sig in K.maximal if crossed(sig)]
    if not cut:
        return K
    edges = sorted(
        {(a, b) for sig in cut for a, b in combinations(sig, 2) if s[a] * s[b] < 0}
    )
    base = len(K.vertices)
    vertices = list(K.vertices)
    origins = []
    crossing = {}
    for j, (a, b) in enumerate(edges):
        t = s[a] / (s[a] - s[b])
        pa, pb = K.vertices[a], K.vertices[b]
        vertices.append(tuple(x + t * (y - x) for x, y in zip(pa, pb)))
        origins.append(((a, ONE - t), (b, t)))
        crossing[(a, b)] = base + j

    simplices = {tau for tau in K.simplices if not crossed(tau)}
    for sig in cut:
        mids = [crossing[e] for e in combinations(sig, 2) if e in crossing]
        for keep in (lambda v: s[v] >= 0, lambda v: s[v] <= 0):
            cell = [v for v in sig if keep(v)] + mids
            if len(cell) == len(sig):
                tops = [tuple(sorted(cell))]
            else:
                tops = placing_triangulation({v: vertices[v] for v in cell})
            for top in tops:
                for r in range(1, len(top) + 1):
                    simplices.update(combinations(top, r))
    return SimplicialComplex(
        K.ambient_dim, vertices, simplices, parent=K, origins=origins, closed=True
    )


def split_by_hyperplane(K: SimplicialComplex, ell: AffineFunctional) -> SimplicialComplex:
    """Refinement of K on whose simplices ``ell`` has constant sign."""
    if ell.dim != K.ambient_dim:
        raise GeometryError("functional and complex have different dimensions")
    return split_by_values(K, [ell(v) for v in K.vertices])


def is_ancestor(A: SimplicialComplex, K: SimplicialComplex) -> bool:
    return any(a is A for a in K.ancestors()) or any(a == A for a in K.ancestors())


def interpolate(K: SimplicialComplex, values: Sequence, x) -> object:
    simplex, bc = K.locate(x)
    total = ZERO
    for i, c in zip(simplex, bc):
        total += c * values[i]
    return total


def transfer_values(values: Sequence, src: SimplicialComplex, dst: SimplicialComplex) -> list:
    """Re-express vertex values of a function linear on ``src`` at ``dst``'s vertices.

    Uses lineage when ``src`` is an ancestor of ``dst``, point location otherwise.
    """
    if dst is src or dst == src:
        return list(values)
    chain = []
    k = dst
    while k is not None and not (k is src or k == src):
        chain.append(k)
        k = k.parent
    if k is not None:
        vals = list(values)
        for c in reversed(chain):
            for origin in c.origins:
                total = ZERO
                for i, w in origin:
                    total += w * vals[i]
                vals.append(total)
        return vals
    return [interpolate(src, values, x) for x in dst.vertices]


def is_refinement(fine: SimplicialComplex, coarse: SimplicialComplex) -> bool:
    """Every simplex of ``fine`` lies inside some simplex of ``coarse``."""
    for sig in fine.maximal:
        pts = fine.points(sig)
        b = fine.barycentre(sig)
        if not any(
            all(fr.contains(p) is not None for p in pts) for fr, _ in coarse.frames_containing(b)
        ):
            return False
    return True


def common_refinement(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """A triangulation refining both K1 and K2 (which must share a polyhedron).

    When one is an ancestor of the other the finer one is returned.  Otherwise
    the simplices of K1 not already inside a simplex of K2 are overlaid with
    the simplices of K2 meeting them, each piece triangulated by the placing
    rule.  The result descends from K1.  Overlays are cached, since lattice
    expressions tend to overlay the same pair many times.
    """
    if K1 is K2 or K1 == K2 or is_ancestor(K2, K1):
        return K1
    if is_ancestor(K1, K2):
        return K2
    return _overlay(K1, K2)


def _intersection_vertices(pts: list, frame: SimplexFrame) -> list[tuple]:
    """Vertices of simplex(pts) meet simplex(frame), as barycentric tuples on pts."""
    k = len(pts) - 1
    if k == 0:
        return [(ONE,)] if frame.contains(pts[0]) is not None else []

    def in_mu(ell):
        at = [ell(p) for p in pts]
        return at[0], [a - at[0] for a in at[1:]]

    eq = [in_mu(nl) for nl in frame.normals]
    clip = [in_mu(l) for l in frame.lambdas]
    if not eq and k <= 2:
        mus = _clip_segment(clip) if k == 1 else _clip_polygon(clip)
        return [(ONE - sum(mu, ZERO), *mu) for mu in mus]
    return [(ONE - sum(mu, ZERO), *mu) for mu in _enumerate_vertices(k, eq, clip)]


def _enumerate_vertices(k: int, eq: list, clip: list) -> list[tuple]:
    """Basic feasible points of {mu in the standard k-simplex : eq == 0, clip >= 0},
    found by solving every k-subset of the constraints."""
    ineq = [(ONE, [-ONE] * k)]
    ineq += [(ZERO, [ONE if i == j else ZERO for i in range(k)]) for j in range(k)]
    ineq += clip
    found: dict = {}
    for combo in combinations(eq + ineq, k):
        rows = [c for _, c in combo]
        if rank(rows) < k:
            continue
        mu = solve_linear(rows, [-c0 for c0, _ in combo])
        if mu is None:
            continue
        if any(c0 + sum((a * m for a, m in zip(c, mu)), ZERO) != 0 for c0, c in eq):
            continue
        if any(c0 + sum((a * m for a, m in zip(c, mu)), ZERO) < 0 for c0, c in ineq):
            continue
        found[tuple(mu)] = None
    return list(found)


def _clip_segment(constraints) -> list[tuple]:
    """Endpoints of {0 <= mu <= 1 : c0 + c*mu >= 0 for all constraints}."""
    lo, hi = ZERO, ONE
    for c0, (c,) in constraints:
        if c > 0:
            lo = max(lo, -c0 / c)
        elif c < 0:
            hi = min(hi, -c0 / c)
        elif c0 < 0:
            return []
    if lo > hi:
        return []
    return [(lo,)] if lo == hi else [(lo,), (hi,)]


def _clip_polygon(constraints) -> list[tuple]:
    """Corners of the standard triangle in mu-space cut by half-planes
    c0 + c*mu >= 0 (Sutherland-Hodgman, exact), without collinear points."""
    poly = [(ZERO, ZERO), (ONE, ZERO), (ZERO, ONE)]
    for c0, (a, b) in constraints:
        if not poly:
            return []
        vals = [c0 + a * p[0] + b * p[1] for p in poly]
        out = []
        for i, p in enumerate(poly):
            j = (i + 1) % len(poly)
            vp, vq = vals[i], vals[j]
            if vp >= 0:
                out.append(p)
            if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
                q = poly[j]
                t = vp / (vp - vq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        poly = out
    poly = list(dict.fromkeys(poly))
    if len(poly) <= 2:
        return poly
    corners = []
    for i, p in enumerate(poly):
        prev, nxt = poly[i - 1], poly[(i + 1) % len(poly)]
        cross = (p[0] - prev[0]) * (nxt[1] - p[1]) - (p[1] - prev[1]) * (nxt[0] - p[0])
        if cross != 0:
            corners.append(p)
    return corners


def _combine(weights, pts) -> tuple:
    return tuple(sum((w * p[d] for w, p in zip(weights, pts)), ZERO) for d in range(len(pts[0])))


def _affine_dim(points: list) -> int:
    if len(points) <= 1:
        return len(points) - 1
    return rank([[a - b for a, b in zip(p, points[0])] for p in points[1:]])


@lru_cache(maxsize=512)
def _overlay(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.ambient_dim != K2.ambient_dim:
        raise PolyhedraDiffer("complexes live in different dimensions")
    good = []
    bad = []
    tau_volume = {fr.simplex: ZERO for fr in K2.frames}
    for sig in K1.maximal:
        pts = K1.points(sig)
        containing = K2.frames_containing(K1.barycentre(sig))
        if not containing:
            raise PolyhedraDiffer(f"simplex {sig} of the first triangulation leaves the second")
        home = next(
            (fr for fr, _ in containing if all(fr.contains(p) is not None for p in pts)), None
        )
        if home is None:
            bad.append(sig)
            continue
        good.append(sig)
        if len(sig) == len(home.simplex):
            tau_volume[home.simplex] += relative_volume(K2.points(home.simplex), pts)

    # pieces: (sigma, tau frame, [(barycentric-on-sigma, point)])
    pieces = []
    for sig in bad:
        pts = K1.points(sig)
        box = _bbox(pts)
        k = len(sig) - 1
        for fr in K2.frames:
            if not _bbox_overlap(box, fr.bbox):
                continue
            mus = _intersection_vertices(pts, fr)
            if len(mus) < k + 1:
                continue
            corners = [_combine(mu, pts) for mu in mus]
            if _affine_dim(corners) < k:
                continue
            pieces.append((sig, fr, list(zip(mus, corners))))

    index = dict(K1.vertex_index)
    fresh = {}
    for sig, _, corners in pieces:
        for mu, x in corners:
            if x not in index and x not in fresh:
                fresh[x] = tuple((v, m) for v, m in zip(sig, mu) if m != 0)
    vertices = list(K1.vertices)
    origins = []
    for x in sorted(fresh):
        index[x] = len(vertices)
        vertices.append(x)
        origins.append(fresh[x])

    tops = list(good)
    sigma_volume = {sig: ZERO for sig in bad}
    for sig, fr, corners in pieces:
        labelled = {index[x]: x for _, x in corners}
        tri = placing_triangulation(labelled)
        tops.extend(tri)
        sig_pts = K1.points(sig)
        for t in tri:
            tpts = [vertices[i] for i in t]
            sigma_volume[sig] += relative_volume(sig_pts, tpts)
            if len(fr.simplex) == len(t):
                tau_volume[fr.simplex] += relative_volume(K2.points(fr.simplex), tpts)
    for sig, vol in sigma_volume.items():
        if vol != 1:
            raise PolyhedraDiffer(
                f"simplex {sig} of the first triangulation is not covered by the second"
            )
    for tau, vol in tau_volume.items():
        if vol != 1:
            raise PolyhedraDiffer(
                f"simplex {tau} of the second triangulation is not covered by the first"
            )

    simplices: set = set()
    for top in tops:
        for r in range(1, len(top) + 1):
            simplices.update(combinations(top, r))
    return SimplicialComplex(
        K1.ambient_dim, vertices, simplices, parent=K1, origins=origins, closed=True
    )
