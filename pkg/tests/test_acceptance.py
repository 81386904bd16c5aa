"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Lines are written with capture disabled so they show on a green run too.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import combinations
from pathlib import Path

import pytest

from tzcodes.construct import (build_Ce, build_extended_augmented, predicted_dual_low_weights,
                               predicted_wd_base, predicted_wd_extended, predicted_wd_shortened)
from tzcodes.counts import (BRUTE, FORMULA, QuadSpec, SupportIndex, TripleSpec, combined_N_t4,
                            n_of_power_sums, n_of_triple, nbar_of_quad, power_sum_index)
from tzcodes.designs import (blocks_from_code, design_identity_holds, predicted_lambda_min_weight,
                             verify_t_design)
from tzcodes.fixtures import SHORTENED, shortened_prediction
from tzcodes.gf2m import get_field
from tzcodes.lincode import (WeightDistribution, augment, dual, enumerate_weight_distribution,
                             extend, macwilliams_dual_distribution, pless_moment_check, shorten)

EXT_M5 = WeightDistribution(32, {0: 1, 8: 620, 12: 13888, 16: 36518, 20: 13888, 24: 620, 32: 1}, 16)
EXT_M7 = WeightDistribution(128, {0: 1, 48: 42672, 56: 877824, 64: 2353310, 72: 877824, 80: 42672,
                                  128: 1}, 22)

# N and Nbar quoted with each shortened example, keyed by (m, exponents)
EXAMPLE_COUNTS = {(5, (1, 2, 3)): {"N": 1}, (5, (1, 3, 6)): {"N": 7}, (7, (1, 20, 30)): {"N": 31},
                  (5, (2, 4, 5, 8)): {"N": 5, "Nbar": 0}, (5, (1, 3, 6, 7)): {"N": 6, "Nbar": 1},
                  (5, (2, 3, 6, 7)): {"N": 5, "Nbar": 0}, (7, (2, 3, 6, 7)): {"N": 27, "Nbar": 0}}

PROPERTY_MODULES = ["test_gf2m.py", "test_lincode.py", "test_construct.py", "test_counts.py",
                    "test_designs.py"]


@pytest.fixture
def criterion(capsys):
    """``with criterion(n, title) as notes:`` prints the criterion's verdict line."""
    def emit(line: str):
        with capsys.disabled():
            print("\n" + line, flush=True)

    @contextmanager
    def run(number: int, title: str):
        notes: list[str] = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException as exc:
            first = str(exc).splitlines()[0] if str(exc) else ""
            emit(f"ACCEPTANCE {number} FAIL {title} ({time.perf_counter() - start:.1f}s): "
                 f"{type(exc).__name__}: {first}")
            raise
        extra = f" [{'; '.join(notes)}]" if notes else ""
        emit(f"ACCEPTANCE {number} PASS {title} ({time.perf_counter() - start:.1f}s){extra}")

    return run


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_criterion_1_m5_extended_code_and_dual(criterion):
    with criterion(1, "m=5 extended augmented code and its dual enumerate to the quoted enumerator") as notes:
        F = get_field(5)
        for e in (1, 2):
            start = time.perf_counter()
            code = build_extended_augmented(F, e)
            wd = enumerate_weight_distribution(code)
            wd_dual = enumerate_weight_distribution(dual(code))
            elapsed = time.perf_counter() - start
            assert wd == EXT_M5, wd
            assert wd_dual == EXT_M5, wd_dual
            assert elapsed < 1.0, f"e={e} took {elapsed:.2f}s"
            notes.append(f"e={e} {elapsed:.2f}s")


def test_criterion_2_m7_extended_code(criterion):
    with criterion(2, "m=7 extended augmented code enumerates to the quoted enumerator") as notes:
        F = get_field(7)
        for e in (1, 2):
            start = time.perf_counter()
            wd = enumerate_weight_distribution(build_extended_augmented(F, e))
            elapsed = time.perf_counter() - start
            assert wd == EXT_M7, wd
            assert elapsed < 30.0, f"e={e} took {elapsed:.1f}s"
            notes.append(f"e={e} {elapsed:.2f}s")


def test_criterion_3_closed_form_tables(criterion):
    with criterion(3, "cyclic and extended closed-form tables match enumeration; m=10 d=2 predicted values") as notes:
        for m, e in [(5, 1), (5, 2), (7, 1), (7, 2), (9, 1)]:
            F = get_field(m)
            base, t1 = _timed(enumerate_weight_distribution, build_Ce(F, e))
            ext, t2 = _timed(enumerate_weight_distribution, build_extended_augmented(F, e))
            assert base == predicted_wd_base(m, e), (m, e, base)
            assert ext == predicted_wd_extended(m, e), (m, e, ext)
            notes.append(f"({m},{e}) {t1 + t2:.1f}s")
        wd = predicted_wd_extended(10, 2)
        assert (wd[384], wd[480], wd[512]) == (278256, 263983104, 1618960926)


def test_criterion_4_dual_low_weights(criterion):
    with criterion(4, "dual A_8 formula: 620 (m=5), 774192 (m=7) with enumeration/MacWilliams/Pless"):
        a8_5 = predicted_dual_low_weights(5, 1)[8]
        a8_7 = predicted_dual_low_weights(7, 1)[8]
        assert (a8_5, a8_7) == (620, 774192)
        code5 = build_extended_augmented(get_field(5), 1)
        dual5 = enumerate_weight_distribution(dual(code5))
        assert dual5.min_distance == 8 and dual5[8] == a8_5
        primal7 = enumerate_weight_distribution(build_extended_augmented(get_field(7), 1))
        dual7 = macwilliams_dual_distribution(primal7)
        assert dual7.min_distance == 8 and dual7[8] == a8_7
        prefix = [1, 0, 0, 0, 0, 0, 0, 0, a8_7]
        for t in range(9):
            assert pless_moment_check(primal7, prefix, 22, 128, t), f"Pless t={t}"


def test_criterion_5_designs(criterion):
    with criterion(5, "3-designs: all m=5 weights for code and dual; m=7 w=48 (lambda=2162) and w=56") as notes:
        for e in (1, 2):
            code = build_extended_augmented(get_field(5), e)
            for which, c in (("code", code), ("dual", dual(code))):
                for w in (8, 12, 16, 20, 24):
                    design = blocks_from_code(c, w)
                    lam = verify_t_design(design, 3, "tuples")
                    assert isinstance(lam, int), (e, which, w, lam)
                    assert verify_t_design(blocks_from_code(c, w), 3, "gram") == lam
                    assert design_identity_holds(design)
                    if w == 8:
                        assert lam == 7
        code7 = build_extended_augmented(get_field(7), 1)
        design = blocks_from_code(code7, 48)
        lam, elapsed = _timed(verify_t_design, design, 3)
        assert lam == 2162 == predicted_lambda_min_weight(7)
        assert design_identity_holds(design)
        assert elapsed < 300
        notes.append(f"w=48 {elapsed:.1f}s")
        design = blocks_from_code(code7, 56)
        lam, elapsed = _timed(verify_t_design, design, 3)
        assert isinstance(lam, int) and design_identity_holds(design)
        notes.append(f"w=56 lambda={lam} {elapsed:.1f}s")


def test_criterion_6_shortened_codes(criterion):
    with criterion(6, "shortened-code examples match the quoted enumerators and the shortened closed forms") as notes:
        start = time.perf_counter()
        for m, e, exps, quoted in SHORTENED:
            F = get_field(m)
            code = build_Ce(F, e)
            T = [F.w(k) for k in exps]
            short = shorten(code, [code.position(x) for x in T])
            wd = enumerate_weight_distribution(short)
            assert wd == WeightDistribution(short.n, quoted), (m, exps, wd)
            assert (short.n, short.k, wd.min_distance) == (F.q - 1 - len(T), 3 * m - len(T), 2 ** (m - 1) - 2 ** ((m + 1) // 2))
            predicted, info = shortened_prediction(m, e, T)
            assert predicted == wd, (m, exps, predicted)
            for key, value in EXAMPLE_COUNTS.get((m, exps), {}).items():
                assert info[key] == value, (m, exps, key, info)
            if len(T) == 4 and info.get("trace_criterion") == 1:
                assert predicted_wd_shortened(m, 4, info["N"], trace_one=True) == wd
        elapsed = time.perf_counter() - start
        assert elapsed < 60
        notes.append(f"{len(SHORTENED)} codes")


def test_criterion_7_counting_oracles(criterion):
    with criterion(7, "N(a) and Nbar: formula = brute force (all m=5, 1000 random m=7) = dual incidence") as notes:
        start = time.perf_counter()
        F = get_field(5)
        code = dual(build_Ce(F, 1))
        labels = code.coordinate_labels
        lam7, lam8 = SupportIndex(code, 7), SupportIndex(code, 8)
        idx = power_sum_index(F)
        elems = list(range(1, F.q))
        pos = {x: labels.index(x) for x in elems}

        for T in combinations(elems, 3):
            r = n_of_triple(TripleSpec(F, T), "both")
            assert r.agrees, ("triple", T, r)
            assert r.value == lam7.count([pos[x] for x in T]), ("triple vs dual", T)

        findings = 0
        for T in combinations(elems, 4):
            spec = QuadSpec(F, T)
            cols = [pos[x] for x in T]
            nb = nbar_of_quad(spec, "both")
            if nb.method == BRUTE:
                findings += 1
            else:
                assert nb.agrees, ("quad", T, nb)
            assert nb.value == lam7.count(cols), ("quad vs dual", T)
            s = (spec.S(1), spec.S(3), spec.S(5))
            direct8 = idx.count4(*s, exclude=T, include_zero=False)
            assert direct8 == lam8.count(cols)
            if nb.method == FORMULA:
                assert n_of_power_sums(F, *s) - nb.value == direct8, ("lambda_T8", T)
        notes.append(f"m=5 {findings} quads with S3+S1^3 or S5+S1^5 zero (brute-force fallback)")

        F7 = get_field(7)
        rnd = random.Random(2024)
        nonzero = list(range(1, F7.q))
        quads_checked = 0
        for _ in range(1000):
            r = n_of_triple(TripleSpec(F7, rnd.sample(nonzero, 3)), "both")
            assert r.agrees, r
            q = QuadSpec(F7, rnd.sample(nonzero, 4))
            nb = nbar_of_quad(q, "both")
            if nb.method == FORMULA:
                assert nb.agrees, nb
                quads_checked += 1
                assert combined_N_t4(q, "both").agrees
        notes.append(f"m=7 1000 triples, {quads_checked} nondegenerate quads")
        elapsed = time.perf_counter() - start
        assert elapsed < 300, f"{elapsed:.0f}s"


def test_criterion_8_structural_identity(criterion):
    with criterion(8, "trace-form extended code = extend(augment(C^(e))) with x=0 first"):
        for m, e in [(5, 1), (5, 2), (7, 1)]:
            F = get_field(m)
            trace_form = build_extended_augmented(F, e)
            built = extend(augment(build_Ce(F, e)), front=True, label=0)
            assert built.coordinate_labels[0] == 0 == trace_form.coordinate_labels[0]
            assert built.coordinate_labels == trace_form.coordinate_labels
            if m == 5:
                assert ({trace_form.encode(i) for i in range(1 << trace_form.k)}
                        == {built.encode(i) for i in range(1 << built.k)})
            else:
                assert trace_form.same_code(built)


def test_criterion_9_property_suites(criterion):
    with criterion(9, "property suites (field, trace, cubic solver, criterion, MacWilliams/Pless, invariants)") as notes:
        here = Path(__file__).parent
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                               *[str(here / m) for m in PROPERTY_MODULES]],
                              capture_output=True, text=True, cwd=here.parent)
        summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
        notes.append(summary)
        assert proc.returncode == 0, summary
