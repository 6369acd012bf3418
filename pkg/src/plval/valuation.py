"""The Euler characteristic valuation on PL functions, computed two ways.

``alpha_plus`` is topological: the Euler characteristic of the supplement of
the zero set, i.e. of a complex homotopy equivalent to the support.
``alpha_plus_recursive`` never looks at topology; it only uses lattice
operations, the modular law and the value 1 on hats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .hats import canonical_order, hat, hat_meet_reduction
from .pl import NegativeFunction, PLFunction, is_nonnegative, is_zero, signed_parts, zero_set_subcomplex
from .simplicial import supplement_euler_characteristic

EVALUATORS = ("topological", "recursive")


@dataclass(frozen=True)
class ValuationReport:
    value: int
    evaluator: str
    triangulation_fingerprint: str
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if type(self.value) is not int:
            raise TypeError(f"valuation produced a non-integer: {self.value!r}")
        if self.evaluator not in EVALUATORS:
            raise ValueError(f"unknown evaluator {self.evaluator!r}")

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "evaluator": self.evaluator,
            "triangulation_fingerprint": self.triangulation_fingerprint,
            "stats": dict(self.stats),
        }


def _require_nonnegative(f: PLFunction) -> None:
    if not is_nonnegative(f):
        raise NegativeFunction("alpha_plus is only defined on nonnegative functions")


def alpha_plus(f: PLFunction) -> ValuationReport:
    """Euler characteristic of the support of a nonnegative f."""
    _require_nonnegative(f)
    K = f.triangulation
    value = supplement_euler_characteristic(K, zero_set_subcomplex(f))
    return ValuationReport(value, "topological", K.fingerprint)


def alpha(f: PLFunction, evaluator: str = "topological") -> ValuationReport:
    """alpha_plus(f+) - alpha_plus(f-)."""
    plus_fn = alpha_plus if evaluator == "topological" else alpha_plus_recursive
    pos, neg = signed_parts(f)
    a, b = plus_fn(pos), plus_fn(neg)
    stats = {"positive_part": a.value, "negative_part": b.value}
    if evaluator == "recursive":
        stats["calls"] = a.stats["calls"] + b.stats["calls"]
        stats["max_depth"] = max(a.stats["max_depth"], b.stats["max_depth"])
    return ValuationReport(a.value - b.value, evaluator, pos.triangulation.fingerprint, stats)


class _Recursion:
    """nu over sets of hats, memoized on their exact serialization."""

    def __init__(self, verify: bool):
        self.verify = verify
        self.memo: dict = {}
        self.calls = 0
        self.memo_hits = 0
        self.max_depth = 0

    @staticmethod
    def key(hats) -> tuple:
        return tuple((h.triangulation.fingerprint, h.values) for h in hats)

    def nu(self, hats: list, depth: int = 0) -> int:
        self.calls += 1
        self.max_depth = max(self.max_depth, depth)
        if not hats:
            return 0
        if len(hats) == 1:
            return 1
        key = self.key(hats)
        if key in self.memo:
            self.memo_hits += 1
            return self.memo[key]
        *prefix, last = hats
        ks = hat_meet_reduction(prefix, last, verify=self.verify)
        doubled = canonical_order([k.scaled(2) for k in ks if not is_zero(k)])
        value = self.nu(prefix, depth + 1) + 1 - self.nu(doubled, depth + 1)
        self.memo[key] = value
        return value


def hat_set(f: PLFunction) -> list[PLFunction]:
    """Hats of f's triangulation at the vertices where f is positive, in
    canonical order (all positive coefficients replaced by 1)."""
    K = f.triangulation
    return canonical_order([hat(K, i) for i, v in enumerate(f.values) if v > 0])


def alpha_plus_recursive(f: PLFunction, verify: bool = True) -> ValuationReport:
    """alpha_plus via the hat recursion

    nu({h_0..h_m}) = nu({h_0..h_{m-1}}) + 1 - nu({2 k_i != 0}),

    where the k_i come from :func:`hat_meet_reduction`.
    """
    _require_nonnegative(f)
    rec = _Recursion(verify)
    value = rec.nu(hat_set(f))
    stats = {"calls": rec.calls, "max_depth": rec.max_depth, "memo_hits": rec.memo_hits}
    return ValuationReport(value, "recursive", f.triangulation.fingerprint, stats)


def evaluate_with(evaluator: str, f: PLFunction) -> ValuationReport:
    if evaluator == "topological":
        return alpha_plus(f)
    if evaluator == "recursive":
        return alpha_plus_recursive(f)
    raise ValueError(f"unknown evaluator {evaluator!r}")


def value_of(result) -> int:
    """Accept either a bare integer or a report from a valuation callback."""
    return result.value if isinstance(result, ValuationReport) else result


Valuation = Callable[[PLFunction], object]
