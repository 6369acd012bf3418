"""Seeded random instances: preset polyhedra, refinements and PL functions.

Randomness comes from xoshiro256** (Blackman and Vigna) with its 256-bit
state filled by four successive outputs of splitmix64 applied to the 64-bit
seed.  Integers in ``[0, n)`` are drawn by rejection: a raw 64-bit output r is
rejected while ``r < 2**64 mod n``, then ``r mod n`` is returned.  Every
random choice below is a sequence of such draws, so instances reproduce in
any language that implements the same two generators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .exact import AffineFunctional, ONE, ZERO
from .hats import hat
from .io import load_complex
from .pl import PLFunction
from .refinement import split_by_hyperplane
from .simplicial import SimplicialComplex, derived_complex

MASK64 = (1 << 64) - 1
PRESETS = ("interval", "square", "square-with-hole", "two-components")


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    def __init__(self, seed: int = 0, *, state: Optional[tuple] = None):
        if state is None:
            sm = seed & MASK64
            words = []
            for _ in range(4):
                sm, out = splitmix64(sm)
                words.append(out)
            state = tuple(words)
        if len(state) != 4 or not any(state):
            raise ValueError("state must be four 64-bit words, not all zero")
        self.s = [w & MASK64 for w in state]

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("bound must be positive")
        floor = (1 << 64) % n
        while True:
            r = self.next_u64()
            if r >= floor:
                return r % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def sample(self, population: list, k: int) -> list:
        """k distinct items by a partial Fisher-Yates shuffle."""
        items = list(population)
        for i in range(k):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]

    def positive_rational(self) -> mpq:
        return mpq(self.between(1, 9), self.between(1, 4))


def preset_complex(name: str) -> SimplicialComplex:
    """Base triangulation of a named preset, or a complex file path."""
    if name == "interval":
        return SimplicialComplex.from_maximal(1, [(0,), (1,)], [(0, 1)])
    if name == "square":
        return SimplicialComplex.from_maximal(
            2, [(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 3), (0, 2, 3)]
        )
    if name == "square-with-hole":
        outer = [(0, 0), (3, 0), (3, 3), (0, 3)]
        inner = [(1, 1), (2, 1), (2, 2), (1, 2)]
        tris = []
        for i in range(4):
            j = (i + 1) % 4
            tris.append((i, j, 4 + i))
            tris.append((j, 4 + i, 4 + j))
        return SimplicialComplex.from_maximal(2, outer + inner, tris)
    if name == "two-components":
        return SimplicialComplex.from_maximal(
            1, [(0,), (1,), (2,), (3,)], [(0, 1), (2, 3)]
        )
    if os.path.exists(name):
        return load_complex(name)
    raise ValueError(f"unknown preset {name!r}")


def random_interior_point(rng: Xoshiro256StarStar, K: SimplicialComplex) -> tuple:
    """A point in the relative interior of a random maximal simplex."""
    sig = K.maximal[rng.below(len(K.maximal))]
    weights = [rng.between(1, 6) for _ in sig]
    total = sum(weights)
    pts = K.points(sig)
    return tuple(
        sum((mpq(w, total) * p[d] for w, p in zip(weights, pts)), ZERO)
        for d in range(K.ambient_dim)
    )


def random_hyperplane(rng: Xoshiro256StarStar, K: SimplicialComplex) -> AffineFunctional:
    """A rational hyperplane through an interior point of some top simplex."""
    n = K.ambient_dim
    while True:
        gradient = tuple(mpq(rng.between(-3, 3)) for _ in range(n))
        if any(gradient):
            break
    p = random_interior_point(rng, K)
    offset = -sum((g * x for g, x in zip(gradient, p)), ZERO)
    return AffineFunctional(gradient, offset)


def refine_step(rng: Xoshiro256StarStar, K: SimplicialComplex) -> SimplicialComplex:
    """One random refinement: a hyperplane split three times out of four,
    otherwise a barycentric subdivision."""
    if rng.below(4) == 0:
        return derived_complex(K)
    return split_by_hyperplane(K, random_hyperplane(rng, K))


def random_nonnegative(
    rng: Xoshiro256StarStar, K: SimplicialComplex, max_terms: int = 8
) -> PLFunction:
    """Positive rational combination of 1..max_terms distinct hats of K."""
    n = len(K.vertices)
    count = 1 + rng.below(min(max_terms, n))
    chosen = rng.sample(list(range(n)), count)
    values = [ZERO] * n
    for v in chosen:
        values[v] = rng.positive_rational()
    return PLFunction(K, tuple(values))


def random_general(
    rng: Xoshiro256StarStar, K: SimplicialComplex, max_terms: int = 8
) -> PLFunction:
    """Like :func:`random_nonnegative` but each coefficient gets a random sign."""
    f = random_nonnegative(rng, K, max_terms)
    signs = [ONE if rng.below(2) else -ONE for _ in f.values]
    return PLFunction(K, tuple(s * v for s, v in zip(signs, f.values)))


@dataclass(frozen=True)
class InstanceSpec:
    """``hat_count`` functions are emitted, each a combination of at most
    ``max_terms`` hats of the final triangulation."""

    preset: str = "interval"
    depth: int = 0
    hat_count: int = 0
    seed: int = 0
    max_terms: int = 8

    def __post_init__(self):
        if self.depth < 0 or self.hat_count < 0 or self.max_terms < 1:
            raise ValueError("depth and hat_count must be >= 0, max_terms >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def generate_instance(spec: InstanceSpec) -> tuple[SimplicialComplex, list[PLFunction]]:
    rng = Xoshiro256StarStar(spec.seed)
    K = preset_complex(spec.preset)
    for _ in range(spec.depth):
        K = refine_step(rng, K)
    fs = [random_nonnegative(rng, K, spec.max_terms) for _ in range(spec.hat_count)]
    return K, fs


def case_seed(seed: int, index: int) -> int:
    """Independent per-case seed, so case i does not depend on cases < i."""
    _, out = splitmix64((seed ^ (index * 0xD1B54A32D192ED03)) & MASK64)
    return out


@dataclass
class Case:
    triangulation: SimplicialComplex
    x: PLFunction
    y: PLFunction
    u: PLFunction
    v: PLFunction
    a: mpq
    hat: PLFunction


class Sampler:
    """Reproducible stream of test cases over one preset.

    Case i draws a fresh triangulation of the preset refined ``depth`` times,
    nonnegative functions ``x`` and ``y``, general functions ``u`` and ``v``,
    a positive rational ``a`` and one hat.  ``x`` and ``y`` are built on
    independent refinements so lattice operations must genuinely overlay.
    """

    def __init__(self, preset: str, seed: int, depth: int = 1, max_terms: int = 4):
        self.preset = preset
        self.seed = seed
        self.depth = depth
        self.max_terms = max_terms
        self.base = preset_complex(preset)

    def triangulation(self, rng: Xoshiro256StarStar) -> SimplicialComplex:
        K = self.base
        for _ in range(self.depth):
            K = refine_step(rng, K)
        return K

    def case(self, index: int) -> Case:
        rng = Xoshiro256StarStar(case_seed(self.seed, index))
        K1 = self.triangulation(rng)
        K2 = self.triangulation(rng)
        x = random_nonnegative(rng, K1, self.max_terms)
        y = random_nonnegative(rng, K2, self.max_terms)
        u = random_general(rng, K1, self.max_terms)
        v = random_general(rng, K2, self.max_terms)
        a = rng.positive_rational()
        h = hat(K1, rng.below(len(K1.vertices)))
        return Case(K1, x, y, u, v, a, h)

    def cases(self, count: int):
        for i in range(count):
            yield self.case(i)


def hat_family(rng: Xoshiro256StarStar, K: SimplicialComplex, size: int) -> list[PLFunction]:
    """``size`` distinct hats of K (fewer if K has fewer vertices)."""
    picks = rng.sample(list(range(len(K.vertices))), min(size, len(K.vertices)))
    return [hat(K, v) for v in picks]


__all__ = [
    "Case",
    "InstanceSpec",
    "PRESETS",
    "Sampler",
    "Xoshiro256StarStar",
    "case_seed",
    "generate_instance",
    "hat_family",
    "preset_complex",
    "random_general",
    "random_hyperplane",
    "random_nonnegative",
    "refine_step",
    "splitmix64",
]
