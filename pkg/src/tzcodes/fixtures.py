"""Embedded regression fixtures: every worked example plus a few derived checks.

Each fixture returns ``(expected, actual, source)``; it passes when the two
compare equal.  ``source`` joins the tags of the oracles involved with ``+``.  Values are decimal strings or dicts of them so a report can
be serialised as is.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .construct import (build_Ce, build_extended_augmented, predicted_dual_low_weights,
                        predicted_wd_base, predicted_wd_extended, predicted_wd_shortened)
from .counts import (QuadSpec, TripleSpec, combined_N_t4, kloosterman, n_of_triple,
                     nbar_of_quad, quadruple_count, zero_a_quadruple_count)
from .designs import blocks_from_code, design_identity_holds, predicted_lambda_min_weight, verify_t_design
from .gf2m import get_field
from .lincode import (WeightDistribution, augment, dual, enumerate_weight_distribution, extend,
                      macwilliams_dual_distribution, pless_moment_check, shorten)

DEFAULT_SCOPES = ("closed-form", "m5", "m7")
OPT_IN_SCOPES = ("m9", "m10", "designs-m7-w64")
SCOPES = DEFAULT_SCOPES + OPT_IN_SCOPES

EXT_M5 = {0: 1, 8: 620, 12: 13888, 16: 36518, 20: 13888, 24: 620, 32: 1}
EXT_M7 = {0: 1, 48: 42672, 56: 877824, 64: 2353310, 72: 877824, 80: 42672, 128: 1}

# (m, e, exponents of T, enumerator of C_T)
SHORTENED = [
    (5, 1, (1,), {0: 1, 8: 345, 12: 5320, 16: 8835, 20: 1848, 24: 35}),
    (5, 2, (1, 2), {0: 1, 8: 253, 12: 3192, 16: 4123, 20: 616, 24: 7}),
    (5, 1, (1, 2, 3), {0: 1, 8: 183, 12: 1872, 16: 1847, 20: 192, 24: 1}),
    (5, 1, (1, 3, 6), {0: 1, 8: 189, 12: 1848, 16: 1883, 20: 168, 24: 7}),
    (7, 1, (1, 20, 30), {0: 1, 48: 6430, 56: 84240, 64: 140783, 72: 29808, 80: 882}),
    (5, 1, (2, 4, 5, 8), {0: 1, 8: 130, 12: 1072, 16: 789, 20: 56}),
    (5, 1, (1, 3, 6, 7), {0: 1, 8: 135, 12: 1056, 16: 807, 20: 48, 24: 1}),
    (5, 1, (2, 3, 6, 7), {0: 1, 8: 130, 12: 1072, 16: 789, 20: 56}),
    (7, 1, (2, 3, 6, 7), {0: 1, 48: 3878, 56: 46416, 64: 67839, 72: 12656, 80: 282}),
]


@dataclass(frozen=True)
class Fixture:
    name: str
    scope: str
    run: Callable[[], tuple]


@dataclass
class FixtureResult:
    name: str
    scope: str
    passed: bool
    expected: object
    actual: object
    source: str
    error: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "scope": self.scope, "passed": self.passed,
               "expected": self.expected, "actual": self.actual, "source": self.source}
        if self.error is not None:
            out["error"] = self.error
        return out


def _counts(d: dict) -> dict:
    return {str(w): str(c) for w, c in sorted(d.items()) if c}


def _wd_counts(wd: WeightDistribution) -> dict:
    return _counts(wd.counts)


@lru_cache(maxsize=None)
def _ext_code(m: int, e: int):
    return build_extended_augmented(get_field(m), e)


@lru_cache(maxsize=None)
def _ext_wd(m: int, e: int) -> WeightDistribution:
    return enumerate_weight_distribution(_ext_code(m, e))


def _t_elements(m: int, exps) -> list[int]:
    F = get_field(m)
    return [F.w(k) for k in exps]


def shortened_prediction(m: int, e: int, T: list[int]) -> tuple[WeightDistribution, dict]:
    """Closed-form distribution of ``C_T`` with ``N``/``Nbar`` from the counting formulas."""
    F = get_field(m)
    t = len(T)
    info: dict = {}
    N = Nbar = None
    if t == 3:
        N = int(n_of_triple(TripleSpec(F, T)).value)
        info["N"] = N
    elif t == 4:
        report = combined_N_t4(QuadSpec(F, T))
        N, Nbar = int(report.value), int(report.details["Nbar"])
        info.update(N=N, Nbar=Nbar, trace_criterion=report.details["trace_criterion"])
    return predicted_wd_shortened(m, t, N, Nbar), info


# -- fixture bodies ----------------------------------------------------------------


def _ext_enumerated(m, e, quoted):
    return lambda: (_counts(quoted), _wd_counts(_ext_wd(m, e)), "enumerated")


def _ext_dual_enumerated(m, e):
    def run():
        wd = enumerate_weight_distribution(dual(_ext_code(m, e)))
        return _counts(EXT_M5), _wd_counts(wd), "enumerated"
    return run


def _ext_params(m, e, params):
    def run():
        code = _ext_code(m, e)
        return list(params), [code.n, code.k, _ext_wd(m, e).min_distance], "enumerated"
    return run


def _tables_match(m, e):
    def run():
        F = get_field(m)
        base = enumerate_weight_distribution(build_Ce(F, e))
        return ({"base": _wd_counts(predicted_wd_base(m, e)), "extended": _wd_counts(predicted_wd_extended(m, e))},
                {"base": _wd_counts(base), "extended": _wd_counts(_ext_wd(m, e))}, "closed-form+enumerated")
    return run


def _m10_prediction():
    wd = predicted_wd_extended(10, 2)
    got = {str(w): str(wd[w]) for w in (384, 480, 512)}
    return {"384": "278256", "480": "263983104", "512": "1618960926"}, got, "closed-form"


def _dual_a8(m, expected):
    def run():
        return str(expected), str(predicted_dual_low_weights(m, 1)[8]), "closed-form"
    return run


def _m10_a4():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return "87296", str(predicted_dual_low_weights(10, 2, strict=False)[4]), "closed-form"


def _macwilliams_a8(m, e, expected):
    def run():
        dual_wd = macwilliams_dual_distribution(_ext_wd(m, e))
        return str(expected), str(dual_wd[8]), "enumerated"
    return run


def _pless(m, e):
    def run():
        wd = _ext_wd(m, e)
        a8 = predicted_dual_low_weights(m, 1)[8]
        prefix = [1] + [0] * 7 + [a8]
        ok = all(pless_moment_check(wd, prefix, wd.k, wd.n, t) for t in range(9))
        return True, ok, "closed-form+enumerated"
    return run


def _structural(m, e, exact):
    def run():
        F = get_field(m)
        trace_form = build_extended_augmented(F, e)
        built = extend(augment(build_Ce(F, e)), front=True, label=0)
        if exact:
            same = ({trace_form.encode(i) for i in range(1 << trace_form.k)}
                    == {built.encode(i) for i in range(1 << built.k)})
        else:
            same = trace_form.same_code(built)
        return True, same and trace_form.coordinate_labels == built.coordinate_labels, "enumerated"
    return run


def _shortened(m, e, exps, quoted):
    def run():
        T = _t_elements(m, exps)
        code = build_Ce(get_field(m), e)
        short = shorten(code, [code.position(x) for x in T])
        enumerated = enumerate_weight_distribution(short)
        predicted, info = shortened_prediction(m, e, T)
        expected = {"enumerator": _counts(quoted), "params": [short.n, short.k]}
        actual = {"enumerator": _wd_counts(enumerated), "params": [enumerated.n, enumerated.k],
                  "closed_form_matches": predicted == enumerated}
        expected["closed_form_matches"] = True
        return expected, actual, "closed-form+enumerated"
    return run


def _count(fn, expected, source="formula"):
    def run():
        report = fn()
        ok = report.agrees in (None, True)
        return str(expected), str(report.value) if ok else f"{report.value} (check {report.check})", source
    return run


def _design(m, e, w, lam, which="code", method="auto"):
    def run():
        code = _ext_code(m, e)
        if which == "dual":
            code = dual(code)
        design = blocks_from_code(code, w)
        got = verify_t_design(design, 3, method)
        identity = bool(got) and design_identity_holds(design)
        return ({"lambda": str(lam), "identity": True},
                {"lambda": str(got) if isinstance(got, int) else got.to_dict(), "identity": identity},
                "enumerated")
    return run


def _m9_enumeration():
    wd = _ext_wd(9, 1)
    return _wd_counts(predicted_wd_extended(9, 1)), _wd_counts(wd), "closed-form+enumerated"


def _m10_enumeration():
    wd = enumerate_weight_distribution(_ext_code(10, 2), guard=31)
    return _wd_counts(predicted_wd_extended(10, 2)), _wd_counts(wd), "closed-form+enumerated"


def _all_fixtures() -> list[Fixture]:
    F5 = lambda exps: _t_elements(5, exps)  # noqa: E731
    F7 = lambda exps: _t_elements(7, exps)  # noqa: E731
    f5, f7 = get_field(5), get_field(7)
    fx = [
        Fixture("table2-m10-d2-predicted", "closed-form", _m10_prediction),
        Fixture("dual-a8-m5-formula", "closed-form", _dual_a8(5, 620)),
        Fixture("dual-a8-m7-formula", "closed-form", _dual_a8(7, 774192)),
        Fixture("dual-a4-m10-d2-formula", "closed-form", _m10_a4),
        Fixture("lambda-min-weight-m5", "closed-form", lambda: ("7", str(predicted_lambda_min_weight(5)), "closed-form")),
        Fixture("lambda-min-weight-m7", "closed-form", lambda: ("2162", str(predicted_lambda_min_weight(7)), "closed-form")),
    ]
    for e in (1, 2):
        fx += [
            Fixture(f"ext-aug-m5-e{e}-enumerator", "m5", _ext_enumerated(5, e, EXT_M5)),
            Fixture(f"ext-aug-m5-e{e}-dual-enumerator", "m5", _ext_dual_enumerated(5, e)),
            Fixture(f"ext-aug-m5-e{e}-params", "m5", _ext_params(5, e, (32, 16, 8))),
            Fixture(f"tables-m5-e{e}", "m5", _tables_match(5, e)),
            Fixture(f"structure-m5-e{e}", "m5", _structural(5, e, exact=True)),
            Fixture(f"ext-aug-m7-e{e}-enumerator", "m7", _ext_enumerated(7, e, EXT_M7)),
            Fixture(f"ext-aug-m7-e{e}-params", "m7", _ext_params(7, e, (128, 22, 48))),
            Fixture(f"tables-m7-e{e}", "m7", _tables_match(7, e)),
        ]
    fx += [
        Fixture("structure-m7-e1", "m7", _structural(7, 1, exact=False)),
        Fixture("macwilliams-a8-m7", "m7", _macwilliams_a8(7, 1, 774192)),
        Fixture("pless-moments-m7", "m7", _pless(7, 1)),
        Fixture("kloosterman-m5-a0", "m5", lambda: ("-1", str(kloosterman(f5, 0)), "formula")),
        Fixture("quadruple-count-w12-w21-w27", "m5",
                _count(lambda: quadruple_count(f5, f5.w(12), f5.w(21), f5.w(27), "both"), 2)),
        Fixture("zero-a-quadruple-count", "m5",
                _count(lambda: zero_a_quadruple_count(f5, f5.w(10), f5.w(3), "both"), 8)),
        Fixture("n-of-triple-w-w2-w3", "m5", _count(lambda: n_of_triple(TripleSpec(f5, F5((1, 2, 3))), "both"), 1)),
        Fixture("n-of-triple-w-w3-w6", "m5", _count(lambda: n_of_triple(TripleSpec(f5, F5((1, 3, 6))), "both"), 7)),
        Fixture("n-of-triple-m7-w-w20-w30", "m7",
                _count(lambda: n_of_triple(TripleSpec(f7, F7((1, 20, 30))), "both"), 31)),
        Fixture("nbar-w-w3-w6-w7", "m5", _count(lambda: nbar_of_quad(QuadSpec(f5, F5((1, 3, 6, 7))), "both"), 1)),
        Fixture("nbar-w2-w3-w6-w7", "m5", _count(lambda: nbar_of_quad(QuadSpec(f5, F5((2, 3, 6, 7))), "both"), 0)),
        Fixture("nbar-w2-w4-w5-w8", "m5", _count(lambda: nbar_of_quad(QuadSpec(f5, F5((2, 4, 5, 8))), "both"), 0)),
        Fixture("trace-criterion-w2-w4-w5-w8", "m5", lambda: (
            "1", str(nbar_of_quad(QuadSpec(f5, F5((2, 4, 5, 8)))).details["trace_criterion"]), "formula")),
        Fixture("N-t4-w2-w4-w5-w8", "m5", _count(lambda: combined_N_t4(QuadSpec(f5, F5((2, 4, 5, 8))), "both"), 5)),
        Fixture("N-t4-w-w3-w6-w7", "m5", _count(lambda: combined_N_t4(QuadSpec(f5, F5((1, 3, 6, 7))), "both"), 6)),
        Fixture("N-t4-w2-w3-w6-w7", "m5", _count(lambda: combined_N_t4(QuadSpec(f5, F5((2, 3, 6, 7))), "both"), 5)),
        Fixture("N-t4-m7-w2-w3-w6-w7", "m7",
                _count(lambda: combined_N_t4(QuadSpec(f7, F7((2, 3, 6, 7))), "both"), 27)),
    ]
    for m, e, exps, quoted in SHORTENED:
        tag = "-".join(f"w{k}" for k in exps)
        fx.append(Fixture(f"shortened-m{m}-e{e}-{tag}", f"m{m}", _shortened(m, e, exps, quoted)))
    lam5 = {8: 7, 12: 616, 16: 4123, 20: 3192, 24: 253}
    for w, lam in lam5.items():
        fx.append(Fixture(f"design-m5-w{w}", "m5", _design(5, 1, w, lam)))
        fx.append(Fixture(f"design-m5-dual-w{w}", "m5", _design(5, 1, w, lam, "dual")))
    fx += [
        Fixture("design-m7-w48", "m7", _design(7, 1, 48, 2162)),
        Fixture("design-m7-w56", "m7", _design(7, 1, 56, 71280)),
        Fixture("tables-m9-e1", "m9", _m9_enumeration),
        Fixture("extended-m10-e2-enumerated", "m10", _m10_enumeration),
        Fixture("design-m7-w64", "designs-m7-w64", _design(7, 1, 64, 2353310 * 64 * 63 * 62 // (128 * 127 * 126))),
    ]
    return fx


FIXTURES = _all_fixtures()


def select(scope: str = "all") -> list[Fixture]:
    """``"all"`` runs the default scopes; opt-in scopes must be named."""
    if scope == "all":
        wanted = set(DEFAULT_SCOPES)
    elif scope in SCOPES:
        wanted = {scope}
    else:
        raise ValueError(f"unknown scope {scope!r}; choose all or one of {', '.join(SCOPES)}")
    return [f for f in FIXTURES if f.scope in wanted]


def run_fixture(fixture: Fixture) -> FixtureResult:
    try:
        expected, actual, source = fixture.run()
    except Exception as exc:  # a crash is a failed fixture, not a crashed suite
        return FixtureResult(fixture.name, fixture.scope, False, None, None, "error",
                             f"{type(exc).__name__}: {exc}")
    return FixtureResult(fixture.name, fixture.scope, expected == actual, expected, actual, source)


def run_scope(scope: str = "all") -> list[FixtureResult]:
    return [run_fixture(f) for f in select(scope)]
