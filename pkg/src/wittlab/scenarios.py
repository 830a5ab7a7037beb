"""Frozen example scenarios with golden expectations.

Each ``run_example_k`` returns a deterministic report dict whose ``verdict``
is ``PASS`` exactly when every golden check matched.
"""

from __future__ import annotations

from typing import Callable, Dict, List

from .closure import SearchConfig, SearchStats, bs_pipeline, tc_refute_layer0, tc_search_lifts
from .lccolim import ColimContext, Zero, classes_equal_bounded, is_zero_bounded, scalar_act
from .rings import QuotientRing
from .serialize import bounds_of, ic_record, make_report, membership_record, tc_record
from .witt import witt_context
from .witt_ideal import TeichIdeal

BUILTIN_RINGS: Dict[str, Callable[[], QuotientRing]] = {
    "ex1": lambda: QuotientRing(2, "xyz", ["x^3+y^3+z^3"]),
    "ex2": lambda: QuotientRing(2, "xyz", ["z^4+x^5+y^8"]),
    "ex3": lambda: QuotientRing(2, "xy"),
}

# Example 2 needs E = 5 before the presentations separate (see README).
EX1_CERTIFY = SearchConfig(depth=3, mult_degree=4, power_bound=8)
EX1_REFUTE = SearchConfig(depth=4, mult_degree=6)
EX2_SEARCH = SearchConfig(depth=5, mult_degree=4, lift_degree=4)
EX3_STAGE_BOUND = 6
EX3_LIFT_DEGREE = 4


def builtin_ring(name: str) -> QuotientRing:
    return BUILTIN_RINGS[name]()


def _check(name: str, expected, observed, **data) -> dict:
    row = {"check": name, "expected": expected, "observed": observed}
    row["verdict"] = "PASS" if expected == observed else "FAIL"
    row.update(data)
    return row


def _overall(checks: List[dict]) -> str:
    return "PASS" if all(c["verdict"] == "PASS" for c in checks) else "FAIL"


def run_example_1(command=("examples", "run", "1")) -> dict:
    """z^2 certified through integral closure, z refuted at layer 0, for n = 2, 3."""
    R = builtin_ring("ex1")
    checks = []
    for n in (2, 3):
        ctx = witt_context(R, n)
        I = TeichIdeal(ctx, ["x", "y"])
        res = bs_pipeline(R("z^2"), I, 1, EX1_CERTIFY)
        data = {"n": n}
        if res is not None:
            z2 = ctx.teichmuller(R("z^2"))
            data["integral_closure"] = {
                "certificate": ic_record(R("z^2"), I.base, res.ic_certificate)
            }
            data["certificate"] = tc_record(z2, res.ideal, res.tc_certificate)
        checks.append(_check(f"z^2 tight closure, n={n}", "certified",
                             "certified" if res is not None else "not_certified", **data))
        ref = tc_refute_layer0(R("z"), I, EX1_REFUTE)
        data = {"n": n}
        if ref is not None:
            data["multipliers_refuted"] = len(ref.failures)
            data["failing_depths"] = sorted({e for _, e in ref.failures})
        checks.append(_check(f"z layer-0 refutation, n={n}", "refuted",
                             "refuted" if ref is not None else "not_refuted", **data))
    bounds = {
        "certify": bounds_of(EX1_CERTIFY, 2, lam=1),
        "refute": bounds_of(EX1_REFUTE, 2),
    }
    return make_report(command, R, _overall(checks), bounds, checks=checks)


def run_example_2(command=("examples", "run", "2")) -> dict:
    """Lift search for z against ([x],[y]) and ([x+y],[y]); the verdicts must differ."""
    R = builtin_ring("ex2")
    ctx = witt_context(R, 2)
    checks = []
    stats = {}
    for label, base, expected in (("([x],[y])", ["x", "y"], "certified"),
                                  ("([x+y],[y])", ["x+y", "y"], "exhausted")):
        I = TeichIdeal(ctx, base)
        st = SearchStats()
        found = tc_search_lifts(R("z"), I, EX2_SEARCH, st)
        data = {"ideal": label}
        if found is not None:
            lift, cert = found
            data["lift"] = str(lift)
            data["certificate"] = tc_record(lift, I, cert)
        else:
            data["evidence"] = "bounded: no lift/multiplier pair within the search bounds"
        stats[label] = st.as_dict()
        checks.append(_check(f"z against {label}", expected,
                             "certified" if found is not None else "exhausted", **data))
    return make_report(command, R, _overall(checks), bounds_of(EX2_SEARCH, 2, n=2),
                       statistics=stats, checks=checks)


def run_example_3(command=("examples", "run", "3")) -> dict:
    """Classes (1, a)/[xy] are [x]- and [y]-torsion but [x+y] sends them to the (0, xy) class."""
    R = builtin_ring("ex3")
    ctx = witt_context(R, 2)
    colim = ColimContext(ctx, ["x", "y"])
    M = EX3_STAGE_BOUND
    target = colim.cls(1, "(0; x*y)")
    checks = []
    for a in R.monomials(EX3_LIFT_DEGREE, include_zero=True):
        cl = colim.cls(1, [R.one(), a])
        data = {"class": f"({cl.rep[0]}; {cl.rep[1]})/[x*y]"}
        observed = {}
        for f in ("x", "y"):
            v = is_zero_bounded(scalar_act(cl, ctx.teichmuller(f)), M)
            observed[f"[{f}]"] = "zero" if v.is_zero else f"nonzero_up_to_{v.bound}"
            if isinstance(v, Zero):
                data[f"[{f}] kills at stage {v.stage}"] = {
                    "certificate": membership_record(v.element, colim.stage_ideal(v.stage),
                                                     v.certificate)
                }
        act = scalar_act(cl, ctx.teichmuller("x+y"))
        v = is_zero_bounded(act, M)
        observed["[x+y]"] = "zero" if v.is_zero else f"nonzero_up_to_{v.bound}"
        observed["[x+y] image is (0; x*y)"] = classes_equal_bounded(act, target, M)
        expected = {"[x]": "zero", "[y]": "zero", "[x+y]": f"nonzero_up_to_{M}",
                    "[x+y] image is (0; x*y)": True}
        checks.append(_check(f"torsion of (1; {a})/[x*y]", expected, observed, **data))
    bounds = {"M": M, "D_lift": EX3_LIFT_DEGREE, "n": 2, "sop": ["x", "y"]}
    return make_report(command, R, _overall(checks), bounds, checks=checks)


EXAMPLES = {1: run_example_1, 2: run_example_2, 3: run_example_3}
