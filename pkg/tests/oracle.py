"""Reference computations that share no code with the package.

They work on plain ``fractions.Fraction`` data and only handle the easy
cases (1-dimensional polyhedra, small explicit complexes), which is enough
to freeze expected values and to cross-check the general machinery.
"""

from fractions import Fraction
from itertools import combinations


def alternating_count(maximal):
    """Euler characteristic of the face closure of the given index tuples."""
    faces = set()
    for s in maximal:
        for r in range(1, len(s) + 1):
            faces.update(combinations(sorted(s), r))
    return sum(1 if len(f) % 2 else -1 for f in faces)


def interp_1d(xs, ys, x):
    """Piecewise-linear interpolation through sorted breakpoints, None outside."""
    x = Fraction(x)
    for (a, fa), (b, fb) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        if a <= x <= b:
            return fa + (fb - fa) * (x - a) / (b - a)
    if xs and x == xs[0]:
        return ys[0]
    return None


def components_of_support_1d(segments):
    """alpha_plus on a disjoint union of 1D paths: the number of maximal runs
    of consecutive breakpoints where the function is positive.

    ``segments`` holds one (xs, ys) pair of breakpoint lists per component.
    A function that is 0 at both ends of an edge vanishes on the whole edge,
    so runs of positive breakpoints are exactly the support components.
    """
    count = 0
    for _, ys in segments:
        if any(y < 0 for y in ys):
            raise ValueError("negative value")
        count += sum(1 for i, y in enumerate(ys) if y > 0 and (i == 0 or ys[i - 1] == 0))
    return count


def meet_1d(xs, f, g):
    """Vertex values of min(f, g) on the breakpoints plus all crossings."""
    pts = set(Fraction(x) for x in xs)
    for (a, fa, ga), (b, fb, gb) in zip(zip(xs, f, g), zip(xs[1:], f[1:], g[1:])):
        da, db = fa - ga, fb - gb
        if da * db < 0:
            pts.add(a + (b - a) * da / (da - db))
    out = sorted(pts)
    return out, [min(interp_1d(xs, f, x), interp_1d(xs, g, x)) for x in out]
