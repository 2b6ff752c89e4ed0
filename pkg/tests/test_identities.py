import json

import pytest

from quiver_durfee import series as S
from quiver_durfee.identities import (
    UnknownIdentity,
    cauchy_durfee_rhs,
    enriched_cauchy_rhs,
    lhs_enriched,
    lhs_product,
    main_term,
    rhs_cancel,
    rhs_enriched,
    rhs_main,
    rhs_main_terms,
    rhs_reineke,
    verify,
)
from quiver_durfee.lacing import InvalidPermSeq, PermSeq, parse_permseq
from quiver_durfee.quiver import OrientationWord, all_orientations, wq

from oracles import all_perm_tuples, multipartition_counts, poly_mul, series_inverse

N = 30
W3 = parse_permseq("1/12/123")


def one_over(*factors, shift=0, n=N):
    """q^shift / prod(factors), each factor a coefficient list."""
    den = [1]
    for f in factors:
        den = poly_mul(den, f)
    inv = [0] * shift + series_inverse(den, n + 1 - shift)
    return S.from_q_poly(inv, n)


def test_121_summands():
    a, b = [1, -1], [1, 0, -1]
    expected = [
        one_over(a, a, a, b, shift=4),
        one_over(a, a, a, shift=2),
        one_over(a, a, a, shift=2),
        one_over(a, a, shift=1),
        one_over(a, a),
    ]
    rows = rhs_main_terms((1, 2, 1), W3, N)
    assert [r for _, r, _ in rows] == [4, 2, 2, 1, 0]
    assert [term for _, _, term in rows] == expected
    for (eta, r, term) in rows:
        assert main_term(eta, W3, N).shift(0, r) == term


def test_lhs_product_examples():
    assert lhs_product((1, 2, 1), N) == one_over([1, -1], [1, -1, -1, 1], [1, -1])
    assert lhs_product((0, 0, 0), N) == S.one(N)
    assert lhs_product((), N) == S.one(N)


@pytest.mark.parametrize("d", [(1,), (0,), (2, 2), (1, 2, 1), (2, 1, 2), (3, 1, 2), (1, 1, 1, 1)])
def test_main_and_cancel_equal_lhs(d):
    lhs = lhs_product(d, 25)
    for tuples in all_perm_tuples(len(d)):
        w = PermSeq(tuples)
        assert rhs_main(d, w, 25) == lhs
        assert rhs_cancel(d, w, 25) == lhs


def test_single_class_cases():
    assert rhs_cancel((1,), parse_permseq("1"), N) == S.inv_q_pochhammer(1, N)
    assert rhs_main((0,), parse_permseq("1"), N) == S.one(N)
    for Q in all_orientations(1):
        assert rhs_reineke((1,), Q, N) == S.inv_q_pochhammer(1, N)


@pytest.mark.parametrize("k", range(1, 7))
def test_two_column_reduces_to_cauchy(k):
    w = parse_permseq("1/12")
    poch = S.q_pochhammer(k, N)
    assert S.mul(rhs_main((k, k), w, N), poch) == cauchy_durfee_rhs(k, N)
    assert S.mul(rhs_cancel((k, k), w, N), poch) == cauchy_durfee_rhs(k, N)
    assert cauchy_durfee_rhs(k, N) == S.inv_q_pochhammer(k, N)


def test_reineke_121_and_reversal():
    assert rhs_reineke((1, 2, 1), OrientationWord("RR"), N) == lhs_product((1, 2, 1), N)
    for n in range(1, 5):
        for Q in all_orientations(n):
            d = (2, 1, 2, 1)[:n]
            a = rhs_reineke(d, Q, 20, check_oracle=True)
            b = rhs_reineke(d, Q.reversed_arrows(), 20, check_oracle=True)
            assert a == b == lhs_product(d, 20)
            assert a == rhs_cancel(d, wq(Q), 20)


@pytest.mark.parametrize("d, rmax", [((4,), 25), ((1, 2, 1), 25), ((3, 3, 3), 20), ((2, 4, 1, 3), 20)])
def test_lhs_coefficients_count_multipartitions(d, rmax):
    assert lhs_product(d, rmax).q_coeffs() == multipartition_counts(d, rmax)


@pytest.mark.parametrize("k", range(1, 6))
def test_enriched_two_column_durfee(k):
    lhs = S.inv_zq_pochhammer(k, 20, 10)
    assert enriched_cauchy_rhs(k, 20, 10) == lhs
    rhs = rhs_enriched((k, k), parse_permseq("1/12"), 20, 10)
    assert rhs == lhs_enriched((k, k), 20, 10)


def test_enriched_z_slices_sum_to_main_identity():
    # both sides are polynomial in z per q-degree, so summing z-slices up to
    # the q bound is exact when trunc_z >= trunc_q
    d, w = (2, 2), parse_permseq("1/12")
    enriched = rhs_enriched(d, w, 12, 12)
    collapsed = [sum(enriched.coeff(z, q) for z in range(13)) for q in range(13)]
    assert collapsed == rhs_main(d, w, 12).q_coeffs()


def test_enriched_fails_for_121():
    # every class for d=(1,2,1) has a strand ending before the last column,
    # so no summand is free of z while the left side has constant term 1
    report = verify("enriched", (1, 2, 1), w=W3, trunc_q=20, trunc_z=10)
    assert not report.equal
    assert report.first_mismatch == (0, 0, 1, 0)


def test_enriched_trivial():
    assert rhs_enriched((0, 0), parse_permseq("1/12"), 5, 3) == S.one(5, 3)


# -- verify and reports -------------------------------------------------------------


def test_verify_examples():
    assert verify("main", (1, 2, 1), w=W3, trunc_q=30).equal
    assert verify("reineke", (2, 2), orientation=OrientationWord("R"), trunc_q=40).equal
    with pytest.raises(InvalidPermSeq):
        verify("main", (1, 1), w=parse_permseq("1/21"))


def test_verify_argument_errors():
    with pytest.raises(UnknownIdentity):
        verify("nope", (1,), w=parse_permseq("1"))
    with pytest.raises(ValueError):
        verify("main", (1, 1), w=parse_permseq("1/12"), orientation=OrientationWord("R"))
    with pytest.raises(ValueError):
        verify("main", (1, 1, 1), w=parse_permseq("1/12"))
    with pytest.raises(ValueError):
        verify("reineke", (1, 1))


def test_enriched_with_orientation_is_labelled():
    report = verify("enriched", (2, 2), orientation=OrientationWord("R"), trunc_q=20, trunc_z=10)
    assert report.equal
    assert any("derived by composition" in note for note in report.notes)


def test_report_serialization():
    report = verify("main", (1, 2, 1), w=W3, trunc_q=6)
    doc = json.loads(report.to_json())
    assert doc["equal"] is True and doc["first_mismatch"] is None
    assert doc["class_count"] == 5
    assert doc["params"]["w"] == "1/12/123"
    rows = report.to_csv().strip().splitlines()
    assert rows[0] == "zdeg,qdeg,lhs,rhs,equal"
    assert len(rows) == 1 + 7
    assert rows[1] == "0,0,1,1,1"
    bad = verify("enriched", (1, 2, 1), w=W3, trunc_q=4, trunc_z=2)
    doc = bad.to_dict()
    assert doc["first_mismatch"] == {"zdeg": 0, "qdeg": 0, "lhs": "1", "rhs": "0"}
    assert "MISMATCH" in bad.to_text()


@pytest.mark.parametrize("n", [2, 3])
def test_enriched_holds_exactly_for_weakly_increasing_dims(n):
    from itertools import product

    for d in product(range(3), repeat=n):
        increasing = all(d[i] <= d[i + 1] for i in range(n - 1))
        for tuples in all_perm_tuples(n):
            report = verify("enriched", d, w=PermSeq(tuples), trunc_q=10, trunc_z=6)
            assert report.equal == increasing, (d, tuples)
