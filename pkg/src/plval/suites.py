"""Property suites shared by ``plval check`` and the test-suite.

Each suite returns :class:`SuiteResult` rows, one per property, holding the
number of checks made and the serialized counterexamples found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import check_axioms
from .exact import ONE
from .generate import (
    PRESETS,
    InstanceSpec,
    Sampler,
    Xoshiro256StarStar,
    case_seed,
    generate_instance,
    hat_family,
    random_hyperplane,
)
from .hats import HatReductionError, apex, decompose, hat_meet_reduction
from .io import function_to_dict
from .pl import PLFunction, equals, is_zero, linear_combination, meet, re_express, signed_parts
from .refinement import split_by_hyperplane
from .simplicial import derived_complex, euler_characteristic
from .valuation import alpha, alpha_plus, alpha_plus_recursive

SUITES = ("axioms", "lemmas", "oracle")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **witness) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(witness)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.checks} checks, {len(self.failures)} failures)"


def _ser(f: PLFunction) -> dict:
    return function_to_dict(f)


def axioms_suite(seed: int, cases: int, presets=PRESETS) -> list[SuiteResult]:
    rows = []
    for preset in presets:
        sampler = Sampler(preset, seed)
        for which, nu in (("pc", alpha_plus), ("vl", alpha)):
            report = check_axioms(which, nu, sampler, cases)
            for law in report.laws():
                row = SuiteResult(f"{preset}:{which}:{law}", report.checked[law])
                row.failures = [c.as_dict() for c in report.failures if c.law == law]
                rows.append(row)
    return rows


def reduction_check(hats: list, h_n: PLFunction) -> str | None:
    """Problem found in one hat-meet reduction, or None."""
    try:
        ks = hat_meet_reduction(hats, h_n)
    except HatReductionError as exc:
        return str(exc)
    for h, k in zip(hats, ks):
        if not equals(meet(k, h), k) or not equals(meet(k, h_n), k):
            return "k_i exceeds h_i or h_n"
    doubled = [k.scaled(2) for k in ks if not is_zero(k)]
    if len({apex(d) for d in doubled}) != len(doubled):
        return "two nonzero 2k_i coincide"
    return None


def lemmas_suite(seed: int, cases: int, presets=PRESETS) -> list[SuiteResult]:
    names = (
        "hat-meet-identity",
        "decomposition",
        "signed-parts",
        "unit-value",
        "positive-restriction",
        "triangulation-independence",
    )
    rows = {n: SuiteResult(n) for n in names}
    for preset in presets:
        sampler = Sampler(preset, seed)
        for i in range(cases):
            case = sampler.case(i)
            K = case.triangulation
            rng = Xoshiro256StarStar(case_seed(seed ^ 0x5EED, i))

            family = hat_family(rng, K, 2 + rng.below(5))
            why = reduction_check(family[:-1], family[-1])
            rows["hat-meet-identity"].record(
                why is None, preset=preset, case=i, reason=why, hats=[_ser(h) for h in family]
            )

            rows["decomposition"].record(
                equals(decompose(case.u).reconstruct(), case.u), preset=preset, case=i, f=_ser(case.u)
            )

            pos, neg = signed_parts(case.u)
            ok = equals(pos - neg, case.u) and is_zero(meet(pos, neg))
            rows["signed-parts"].record(ok, preset=preset, case=i, f=_ser(case.u))

            one = PLFunction.constant(K, ONE)
            rows["unit-value"].record(
                alpha(one).value == euler_characteristic(K), preset=preset, case=i
            )

            rows["positive-restriction"].record(
                alpha(case.x).value == alpha_plus(case.x).value
                and alpha(case.u).value == alpha_plus(pos).value - alpha_plus(neg).value,
                preset=preset,
                case=i,
                x=_ser(case.x),
                f=_ser(case.u),
            )

            reference = alpha_plus(case.x).value
            finer = [
                derived_complex(K),
                split_by_hyperplane(K, random_hyperplane(rng, K)),
            ]
            same = all(alpha_plus(re_express(case.x, L)).value == reference for L in finer)
            a = case.a
            same = same and alpha_plus(case.x.scaled(a)).value == reference
            same = same and (
                alpha_plus(linear_combination([(1, case.x), (a, case.y)])).value
                == alpha_plus(case.x + case.y).value
            )
            rows["triangulation-independence"].record(same, preset=preset, case=i, x=_ser(case.x))
    return list(rows.values())


def oracle_instances(preset: str, count: int, seed_base: int = 0):
    """``count`` nonnegative functions with at most 8 hats, one per seed."""
    for s in range(1, count + 1):
        seed = seed_base + s
        _, fs = generate_instance(
            InstanceSpec(preset, depth=2 + seed % 3, hat_count=1, seed=seed, max_terms=8)
        )
        yield seed, fs[0]


def oracle_suite(seed: int, cases: int, presets=PRESETS) -> list[SuiteResult]:
    rows = []
    for preset in presets:
        row = SuiteResult(f"{preset}:recursive=topological")
        for s, f in oracle_instances(preset, cases, seed_base=seed):
            top = alpha_plus(f).value
            try:
                rec = alpha_plus_recursive(f).value
            except HatReductionError as exc:
                rec = f"error: {exc}"
            row.record(top == rec, preset=preset, seed=s, topological=top, recursive=rec, f=_ser(f))
        rows.append(row)
    return rows


def run_suite(name: str, seed: int, cases: int) -> list[SuiteResult]:
    runner = {"axioms": axioms_suite, "lemmas": lemmas_suite, "oracle": oracle_suite}.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}")
    return runner(seed, cases)
