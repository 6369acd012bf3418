"""Randomized checks of the valuation laws on the positive cone and on the
whole lattice.

A valuation callback takes a :class:`PLFunction` and returns an integer or a
:class:`ValuationReport`.  Every violated law is reported with the serialized
functions that witness it; exceptions raised by the callback count as
violations too.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .exact import format_rational
from .io import function_to_dict
from .pl import PLFunction, join, linear_combination, meet, signed_parts
from .valuation import value_of

PC_LAWS = ("P1", "P2", "P3", "translation", "homogeneity", "normalization")
VL_LAWS = ("V1", "V2", "V3", "V4", "normalization")


@dataclass
class Counterexample:
    law: str
    case: int
    detail: str
    inputs: dict

    def as_dict(self) -> dict:
        return {"law": self.law, "case": self.case, "detail": self.detail, "inputs": self.inputs}


@dataclass
class AxiomReport:
    which: str
    cases: int
    checked: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    def passed(self, law: str | None = None) -> bool:
        return not any(law is None or c.law == law for c in self.failures)

    def laws(self) -> tuple:
        return PC_LAWS if self.which == "pc" else VL_LAWS

    def failed_laws(self) -> set:
        return {c.law for c in self.failures}

    def lines(self) -> list[str]:
        out = []
        for law in self.laws():
            bad = sum(1 for c in self.failures if c.law == law)
            status = "PASS" if bad == 0 else "FAIL"
            out.append(f"{status} {self.which}:{law} ({self.checked[law]} checks, {bad} failures)")
        return out

    def as_dict(self) -> dict:
        return {
            "which": self.which,
            "cases": self.cases,
            "checked": dict(self.checked),
            "failures": [c.as_dict() for c in self.failures],
        }


class _Runner:
    def __init__(self, report: AxiomReport, nu: Callable):
        self.report = report
        self.nu = nu

    def value(self, f: PLFunction) -> int:
        return value_of(self.nu(f))

    def law(self, name: str, index: int, inputs: dict, check: Callable[[], tuple]) -> None:
        """``check`` returns (lhs, rhs); they must be equal."""
        self.report.checked[name] += 1
        try:
            lhs, rhs = check()
        except Exception as exc:  # the callback may refuse an input
            detail = f"raised {type(exc).__name__}: {exc}"
        else:
            if lhs == rhs:
                return
            detail = f"lhs={lhs} rhs={rhs}"
        serial = {
            k: format_rational(v) if not isinstance(v, PLFunction) else function_to_dict(v)
            for k, v in inputs.items()
        }
        self.report.failures.append(Counterexample(name, index, detail, serial))


def _pc_case(r: _Runner, i: int, case) -> None:
    nu = r.value
    x, y, a = case.x, case.y, case.a
    zero = PLFunction.zero(case.triangulation)
    r.law("P1", i, {"zero": zero}, lambda: (nu(zero), 0))
    r.law("P2", i, {"x": x, "y": y}, lambda: (nu(join(x, y)), nu(x) + nu(y) - nu(meet(x, y))))
    r.law("P3", i, {"x": x, "y": y}, lambda: (nu(x + y), nu(join(x, y))))
    r.law(
        "translation",
        i,
        {"x": x, "y": y, "a": a},
        lambda: (nu(linear_combination([(1, x), (a, y)])), nu(x + y)),
    )
    r.law("homogeneity", i, {"x": x, "a": a}, lambda: (nu(x.scaled(a)), nu(x)))
    r.law("normalization", i, {"hat": case.hat}, lambda: (nu(case.hat), 1))


def _vl_case(r: _Runner, i: int, case) -> None:
    nu = r.value
    u, v, x, y = case.u, case.v, case.x, case.y
    zero = PLFunction.zero(case.triangulation)
    r.law("V1", i, {"zero": zero}, lambda: (nu(zero), 0))
    r.law("V2", i, {"x": u, "y": v}, lambda: (nu(u) + nu(v), nu(join(u, v)) + nu(meet(u, v))))
    r.law("V3", i, {"x": x, "y": y}, lambda: (nu(x + y), nu(join(x, y))))

    def v4():
        pos, neg = signed_parts(u)
        return nu(pos - neg), nu(pos) - nu(neg)

    r.law("V4", i, {"f": u}, v4)
    r.law("normalization", i, {"hat": case.hat}, lambda: (nu(case.hat), 1))


def check_axioms(which: str, nu: Callable, sampler, cases: int) -> AxiomReport:
    """Run ``cases`` sampled cases of the ``"pc"`` or ``"vl"`` law set.

    ``sampler`` must provide ``case(index)`` returning an object with the
    attributes of :class:`plval.generate.Case`.
    """
    if which not in ("pc", "vl"):
        raise ValueError("which must be 'pc' or 'vl'")
    if cases < 1:
        raise ValueError("need at least one case")
    report = AxiomReport(which, cases)
    runner = _Runner(report, nu)
    body = _pc_case if which == "pc" else _vl_case
    for i in range(cases):
        body(runner, i, sampler.case(i))
    return report


def merge_lines(reports: Iterable[AxiomReport]) -> list[str]:
    return [line for rep in reports for line in rep.lines()]
