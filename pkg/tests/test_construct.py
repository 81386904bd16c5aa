import warnings
from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from tzcodes.construct import (EVEN_M_REMARK, FamilyParams, FormulaError, InvalidParameters,
                               build_Ce, build_extended_augmented, dual_min_weight_count_d1,
                               predicted_dual_low_weights, predicted_wd_base, predicted_wd_extended,
                               predicted_wd_shortened, trace_codeword)
from tzcodes.counts import QuadSpec, TripleSpec, combined_N_t4, nbar_of_quad, n_of_triple
from tzcodes.gf2m import get_field
from tzcodes.lincode import augment, enumerate_weight_distribution, extend, krawtchouk, shorten


def valid_pairs(max_m):
    for m in range(3, max_m + 1):
        for e in range(1, m):
            try:
                FamilyParams(m, e)
            except InvalidParameters:
                continue
            yield m, e


def test_parameter_predicate():
    FamilyParams(5, 3)
    for m, e in [(6, 2), (6, 4), (6, 1), (5, 0), (5, 5), (4, 2)]:
        with pytest.raises(InvalidParameters):
            FamilyParams(m, e)
    assert FamilyParams(10, 2).d == 2
    assert FamilyParams(5, 2).exponents == (17, 5, 1)


@pytest.mark.parametrize("m,e", [(5, 1), (5, 2), (5, 3), (7, 3), (9, 2)])
def test_code_is_cyclic_and_has_dimension_3m(m, e):
    F = get_field(m)
    code = build_Ce(F, e)
    assert (code.n, code.k) == (F.q - 1, 3 * m)
    n = code.n
    for g in code.generator:
        assert ((g << 1) | (g >> (n - 1))) & ((1 << n) - 1) in code


@settings(max_examples=40)
@given(st.integers(0, 31), st.integers(0, 31), st.integers(0, 31), st.integers(0, 1))
def test_trace_codewords_lie_in_codes(a, b, c, h):
    F = get_field(5)
    assert trace_codeword(F, 1, a, b, c) in build_Ce(F, 1)
    assert trace_codeword(F, 1, a, b, c, h) in build_extended_augmented(F, 1)


@pytest.mark.parametrize("m,e,exact", [(5, 1, True), (5, 2, True), (7, 1, False), (7, 2, False),
                                       (9, 2, False)])
def test_trace_form_equals_extend_augment(m, e, exact):
    F = get_field(m)
    trace_form = build_extended_augmented(F, e)
    built = extend(augment(build_Ce(F, e)), front=True, label=0)
    assert trace_form.coordinate_labels == built.coordinate_labels
    if exact:
        assert ({trace_form.encode(i) for i in range(1 << trace_form.k)}
                == {built.encode(i) for i in range(1 << built.k)})
    else:
        assert trace_form.same_code(built)


def test_base_table_matches_enumeration_m5():
    for e in (1, 2):
        assert enumerate_weight_distribution(build_Ce(get_field(5), e)) == predicted_wd_base(5, e)


@pytest.mark.parametrize("m,e", list(valid_pairs(20)))
def test_closed_form_tables_are_distributions(m, e):
    base = predicted_wd_base(m, e)
    ext = predicted_wd_extended(m, e)
    assert base.total == 2 ** (3 * m) and ext.total == 2 ** (3 * m + 1)
    assert ext.is_symmetric
    assert all(w % 2 == 0 for w in ext.counts)


def _dual_low(wd, upto=8):
    return [sum(a * krawtchouk(wd.n, j, i) for i, a in wd.counts.items()) // wd.total
            for j in range(upto + 1)]


@pytest.mark.parametrize("m,e", list(valid_pairs(13)))
def test_dual_low_weights_against_macwilliams_of_table(m, e):
    d = FamilyParams(m, e).d
    low = _dual_low(predicted_wd_extended(m, e))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        formula = predicted_dual_low_weights(m, d, strict=False)
    assert low[4] == formula[4]
    assert low[8] == formula[8]
    # the printed A_6 form is short by a factor 2^m - 1 whenever it is nonzero
    assert low[6] == (2 ** m - 1) * formula[6]
    if d == 1:
        assert low[4] == low[6] == 0 and low[8] == dual_min_weight_count_d1(m)


def test_dual_a6_nonintegral_is_reported():
    with pytest.raises(FormulaError):
        predicted_dual_low_weights(10, 2)
    with pytest.warns(UserWarning):
        low = predicted_dual_low_weights(10, 2, strict=False)
    assert low[4] == 87296


def test_m10_extended_table_values():
    wd = predicted_wd_extended(10, 2)
    assert (wd[384], wd[480], wd[512]) == (278256, 263983104, 1618960926)


def test_shortened_rejects_even_m():
    with pytest.raises(InvalidParameters, match="even m"):
        predicted_wd_shortened(6, 2)
    assert "not covered" in EVEN_M_REMARK


@pytest.mark.parametrize("m", [5, 7, 9, 11])
def test_trace_one_table_is_nbar_zero_case(m):
    for N in range(0, 40, 3):
        try:
            general = predicted_wd_shortened(m, 4, N, 0)
        except FormulaError:
            continue
        assert predicted_wd_shortened(m, 4, N, trace_one=True) == general


@settings(max_examples=40)
@given(st.sampled_from([(5, 1), (5, 2)]), st.integers(1, 4), st.randoms(use_true_random=False))
def test_shortened_tables_match_enumeration_m5(me, t, rnd):
    m, e = me
    F = get_field(m)
    code = build_Ce(F, e)
    pos = rnd.sample(range(code.n), t)
    T = [code.coordinate_labels[p] for p in pos]
    N = Nbar = None
    if t == 3:
        N = int(n_of_triple(TripleSpec(F, T), "brute-force").value)
    elif t == 4:
        N = int(combined_N_t4(QuadSpec(F, T), "brute-force").value)
        Nbar = int(nbar_of_quad(QuadSpec(F, T), "brute-force").value)
    assert enumerate_weight_distribution(shorten(code, pos)) == predicted_wd_shortened(m, t, N, Nbar)


def test_shortened_tables_match_enumeration_m7_sample():
    import random
    F = get_field(7)
    code = build_Ce(F, 1)
    rnd = random.Random(7)
    for t in (1, 2, 3, 4):
        pos = rnd.sample(range(code.n), t)
        T = [code.coordinate_labels[p] for p in pos]
        N = Nbar = None
        if t == 3:
            N = int(n_of_triple(TripleSpec(F, T), "both").value)
        elif t == 4:
            r = combined_N_t4(QuadSpec(F, T), "both")
            assert r.agrees
            N, Nbar = int(r.value), int(r.details["Nbar"])
        assert enumerate_weight_distribution(shorten(code, pos)) == predicted_wd_shortened(7, t, N, Nbar)
