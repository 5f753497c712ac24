"""The acceptance battery: ten exhaustive checks with a quick and a full profile.

Each check returns a ``Result``; ``run_suite`` runs them in order. Witness
lists are capped so reports stay small, and contain no timings, so the JSON
of a run is reproducible byte for byte.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import dayconv, finseg, monoids, operad, segal, simplex
from .fincat import completion
from .fincat.fibration import check_grothendieck_fibration
from .fincat.standard import build_standard, preimage_subset

PROFILES = ("quick", "full")
MAX_WITNESSES = 10


@dataclass
class Result:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "criterion": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "witnesses": self.witnesses[:MAX_WITNESSES],
        }


def _bounds(profile: str, quick, full):
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    return quick if profile == "quick" else full


def factorization(profile: str) -> Result:
    bound = _bounds(profile, 4, 5)
    witnesses, checked = finseg.verify_factorization_system(bound)
    return Result("factorization system", not witnesses, {"bound": bound, "maps": checked}, witnesses)


def smash(profile: str) -> Result:
    bound = _bounds(profile, 2, 3)
    witnesses = finseg.verify_smash_laws(bound)
    return Result("smash associativity, unit and bifunctoriality", not witnesses, {"bound": bound}, witnesses)


def gamma_monoids(profile: str) -> Result:
    order, search = _bounds(profile, (3, 2), (4, 2))
    witnesses = []
    ms = monoids.all_comm_monoids(order)
    for i, A in enumerate(ms):
        M = segal.comm_monoid_to_gamma(A, 4)
        bad = M.validate() + segal.check_gamma_segal(M)
        if bad:
            witnesses.append({"monoid": A.name, "stage": "functor", "first": bad[0]})
            continue
        B = segal.gamma_to_comm_monoid(M)
        if B.table != A.table or B.unit != A.unit or B.elements != A.elements:
            witnesses.append({"monoid": A.name, "stage": "round trip"})
        R = segal.random_relabeling(M, seed=i)
        bad = R.validate() + segal.check_gamma_segal(R) + segal.segal_comparison(R)
        if bad:
            witnesses.append({"monoid": A.name, "stage": "relabeled copy", "first": bad[0]})
        elif not monoids.isomorphic(segal.gamma_to_comm_monoid(R), A):
            witnesses.append({"monoid": A.name, "stage": "relabeled copy extracts another monoid"})
    tried_total = 0
    for k in range(1, search + 1):
        survivors, tried = segal.normalized_segal_search(k)
        tried_total += tried
        found = [monoids.CommMonoid(tuple(range(k)), t, u) for t, u in survivors]
        classes = monoids.enumerate_comm_monoids(k)
        for F in found:
            if not any(monoids.isomorphic(F, A) for A in classes):
                witnesses.append({"order": k, "stage": "search", "reason": "normalized Segal functor from no monoid"})
        for A in classes:
            if not any(monoids.isomorphic(F, A) for F in found):
                witnesses.append({"order": k, "stage": "search", "reason": f"{A.name} missing"})
    details = {"max_order": order, "monoids": len(ms), "truncation": 4, "search_order": search, "candidates": tried_total}
    return Result("Gamma-sets and commutative monoids", not witnesses, details, witnesses)


def phi_comparison(profile: str) -> Result:
    bound, order = _bounds(profile, (3, 3), (4, 4))
    witnesses = [dict(w, stage="phi functorial") for w in simplex.verify_phi_functorial(bound)]
    witnesses += [dict(w, stage="convex to inert") for w in simplex.verify_convex_inert(bound)]
    ms = monoids.all_assoc_monoids(order)
    noncommutative = 0
    for A in ms:
        report = segal.simplicial_monoid_roundtrip(A, N=4)
        noncommutative += not A.is_commutative()
        for check, ws in report["checks"].items():
            if ws:
                witnesses.append({"monoid": A.name, "check": check, "first": ws[0]})
    control = monoids.as_comm(monoids.symmetric_group3())
    if not control.validate():
        witnesses.append({"stage": "negative control", "reason": "S3 passed commutative validation"})
    details = {"bound": bound, "max_order": order, "monoids": len(ms), "noncommutative": noncommutative}
    return Result("gap functor and associative monoids", not witnesses, details, witnesses)


def operad_categories(profile: str) -> Result:
    L = _bounds(profile, 2, 3)
    witnesses = []
    for kind in ("comm", "ass", "triv", "e0"):
        for n in range(L + 1):
            witnesses += [dict(w, operad=kind, L=n) for w in operad.check_standard_isomorphism(kind, n)]
    OC = operad.operad_category(operad.builtin("ass"), 2)
    sizes = [len(OC.underlying.hom(("c", "c"), ("c",))), len(build_standard("catass", 2)[0].hom(2, 1))]
    if sizes != [5, 5]:
        witnesses.append({"reason": "Hom(<2>, <1>) in the associative category", "sizes": sizes})
    return Result("operad categories", not witnesses, {"L": L, "hom_2_1": sizes}, witnesses)


def fibration(profile: str) -> Result:
    N = _bounds(profile, 2, 3)
    witnesses = []
    E, p = build_standard("fintimes", N)
    report = check_grothendieck_fibration(p)
    witnesses += [dict(w, functor="fintimes") for w in report.witnesses()]
    for (n, S), f, found in report.lifts:
        sources = {phi.source for phi in found}
        if sources != {(f.m, preimage_subset(f, S))}:
            witnesses.append({"object": [n, list(S)], "base_morphism": list(f.values), "lift_sources": sorted(map(repr, sources))})
    _, q = build_standard("triv", N)
    triv = check_grothendieck_fibration(q)
    if triv.fibration:
        witnesses.append({"functor": "triv", "reason": "inclusion of inert maps passed"})
    details = {"N": N, "checked": report.checked, "triv_missing": len(triv.missing)}
    return Result("Fintimes fibration and the inert counterexample", not witnesses, details, witnesses)


def contractibility(profile: str) -> Result:
    bounds = _bounds(profile, (1, 2, 1), (2, 3, 2))
    witnesses, count = [], 0
    for inst in completion.instances(*bounds):
        count += 1
        summary = completion.completion_betti(inst, 2)
        if summary.betti != (1, 0, 0):
            witnesses.append({"instance": inst.to_json(), "betti": list(summary.betti)})
        bad = completion.check_image_coreflection(inst)
        if bad:
            witnesses.append({"instance": inst.to_json(), "reason": "image is not a coreflection", "first": bad[0]})
    return Result("square-completion contractibility", not witnesses, {"bounds": list(bounds), "instances": count}, witnesses)


def pushouts(profile: str) -> Result:
    bound = _bounds(profile, 3, 4)
    witnesses, squares = finseg.verify_pushout_semi_inert(bound)
    return Result("semi-inert legs in pushouts", not witnesses, {"bound": bound, "squares": squares}, witnesses)


def day_convolution(profile: str) -> Result:
    seeds = _bounds(profile, 5, 20)
    witnesses = []
    for seed in range(seeds):
        for check, ws in dayconv.day_battery(seed).items():
            witnesses += [dict(w, seed=seed, check=check) for w in ws]
    return Result("Day convolution", not witnesses, {"seeds": seeds}, witnesses)


def free_and_coproduct(profile: str) -> Result:
    order, bound = _bounds(profile, (3, 3), (4, 4))
    witnesses = []
    ms = monoids.all_comm_monoids(order)
    for k in range(4):
        for A in ms:
            r = dayconv.adjunction_check([f"x{i}" for i in range(k)], A)
            if not r["passed"] or r["functions"] != len(A) ** k:
                witnesses.append({"generators": k, "monoid": A.name, "first": (r["witnesses"] or [r])[0]})
    pairs = 0
    for i, A in enumerate(ms):
        for B in ms[i:]:
            r = dayconv.universal_check(A, B, bound)
            pairs += r["pairs"]
            witnesses += [dict(w, A=A.name, B=B.name) for w in r["witnesses"][:2]]
            witnesses += [dict(w, A=A.name, B=B.name) for w in dayconv.swap_check(A, B)]
    details = {"max_order": order, "test_bound": bound, "cocone_pairs": pairs}
    return Result("free and coproduct commutative monoids", not witnesses, details, witnesses)


CRITERIA: list[tuple[str, Callable[[str], Result]]] = [
    ("factorization", factorization),
    ("smash", smash),
    ("gamma", gamma_monoids),
    ("phi", phi_comparison),
    ("operad", operad_categories),
    ("fibration", fibration),
    ("contractibility", contractibility),
    ("pushout", pushouts),
    ("dayconv", day_convolution),
    ("free", free_and_coproduct),
]


def run_criterion(key: str, profile: str) -> Result:
    fn = dict(CRITERIA)[key]
    start = time.perf_counter()
    result = fn(profile)
    result.seconds = time.perf_counter() - start
    return result


def run_suite(profile: str = "quick", only=None, progress: Callable[[Result], None] | None = None) -> list[Result]:
    results = []
    for key, _ in CRITERIA:
        if only and key not in only:
            continue
        result = run_criterion(key, profile)
        if progress:
            progress(result)
        results.append(result)
    return results

