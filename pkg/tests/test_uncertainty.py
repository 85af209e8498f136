import itertools

import pytest
from hypothesis import given, settings, strategies as st

from corpus import cyclotomic_corpus, random_cyclotomic_integer, random_cyclotomic_poly
from cyclominors.cyclotomic import divisors, root_power
from cyclominors.errors import TheoremViolation, UsageError
from cyclominors.linalg import kernel_basis, rank
from cyclominors.spectral import SparsePoly, circulant, dft_matrix, root_count
from cyclominors.uncertainty import (
    check_bound,
    classify_extremal,
    decompose_progression,
    enumerate_extremal,
    generate_extremal,
    prime_case_check,
    rotate,
    scale,
    sigma,
    size_classes,
    verify_theorem_exhaustive,
    weight,
)


def poly(n, terms):
    return SparsePoly.from_terms(n, terms)


def test_weight_examples():
    assert weight(poly(4, {})) == 0
    for n, r, l in ((12, 3, 2), (8, 8, 5), (9, 1, 0)):
        assert weight(generate_extremal(n, r, l)) == n // r
    assert weight(poly(4, {0: 1, 2: -1})) == 2


def test_check_bound_examples():
    b = check_bound(poly(4, {0: 1, 2: 1}))
    assert (b.w, b.k, b.product, b.holds, b.equality) == (2, 2, 4, True, True)
    b = check_bound(poly(4, {0: 1, 1: 1, 2: 1}))
    assert (b.w, b.k, b.product, b.holds, b.equality) == (3, 0, 12, True, False)
    for n in (2, 7, 10):
        for l in range(n):
            b = check_bound(poly(n, {l: 1}))
            assert (b.w, b.k, b.product, b.equality) == (1, 0, n, True)


def test_check_bound_rejects():
    with pytest.raises(UsageError):
        check_bound(poly(4, {}))
    with pytest.raises(UsageError):
        check_bound(poly(1, {0: 1}))


def test_prime_case_examples():
    for p in (2, 3, 5, 7, 11):
        full = poly(p, {e: 1 for e in range(p)})
        assert (full.weight(), root_count(full)) == (p, p - 1)
        assert prime_case_check(full)
    assert prime_case_check(poly(5, {0: 1}))
    one_minus = poly(7, {0: 1, 1: -1})
    assert root_count(one_minus) == 1 and prime_case_check(one_minus)
    with pytest.raises(UsageError):
        prime_case_check(poly(6, {0: 1}))


def test_generate_extremal_examples():
    assert generate_extremal(4, 2, 0) == poly(4, {0: 1, 2: 1})
    assert generate_extremal(6, 3, 1) == poly(6, {1: 1, 4: 1})
    assert generate_extremal(5, 5, 3) == poly(5, {3: 1})
    with pytest.raises(UsageError):
        generate_extremal(6, 4, 0)
    with pytest.raises(UsageError):
        generate_extremal(6, 3, 3)


def test_rotate_examples():
    d = generate_extremal(4, 2, 0)
    assert rotate(d, 1) == poly(4, {0: 1, 2: -1})
    p = poly(6, {0: 2, 1: -1, 5: 3})
    assert rotate(p, 0) == p
    for a in range(6):
        for b in range(6):
            assert rotate(rotate(p, a), b) == rotate(p, a + b)


def test_scale_examples():
    p = poly(4, {0: 1, 2: 1})
    assert scale(p, 1) == p
    three = scale(p, 3)
    assert three == poly(4, {0: 3, 2: 3})
    assert check_bound(three) == check_bound(p)
    w = root_power(4, 1)
    assert scale(p, w) == SparsePoly.from_terms(4, {0: w, 2: w})
    with pytest.raises(UsageError):
        scale(p, 0)


def test_decompose_progression_examples():
    l, r, q = decompose_progression(poly(4, {0: 1, 2: 1}))
    assert (l, r) == (0, 2)
    assert q == SparsePoly.from_terms(2, {0: 1, 1: 1}, conductor=4)
    assert decompose_progression(poly(4, {0: 1, 1: 1, 2: 1})) is None
    l, r, q = decompose_progression(poly(6, {1: 1, 4: 1}))
    assert (l, r, q.modulus, q.weight()) == (1, 3, 2, 2)
    # right spacing, wrong offset class
    assert decompose_progression(poly(6, {0: 1, 2: 1})) is None


def test_classify_examples():
    d = classify_extremal(poly(4, {0: 1, 2: -1}))
    assert (d.r, d.l, d.j, d.c) == (2, 0, 1, 1)
    assert d.polynomial() == poly(4, {0: 1, 2: -1})
    d = classify_extremal(poly(4, {0: 3, 2: 3}))
    assert (d.r, d.l, d.j, d.c) == (2, 0, 0, 3)
    assert classify_extremal(poly(4, {0: 1, 1: 1, 2: 1})) is None
    d = classify_extremal(poly(6, {3: 1}))
    assert (d.r, d.l, d.j, d.c) == (6, 3, 0, 1)


def test_classify_raises_on_impossible_equality(monkeypatch):
    # force the bound to report equality for a polynomial outside the family
    import cyclominors.uncertainty as u

    p = poly(4, {0: 1, 1: 1})
    fake = u.BoundReport(4, 2, 2, 4, True, True)
    monkeypatch.setattr(u, "check_bound", lambda _: fake)
    with pytest.raises(TheoremViolation):
        u.classify_extremal(p)


def test_enumerate_extremal_examples():
    pairs = [(r, l) for r, l, _ in enumerate_extremal(4)]
    assert pairs == [(1, 0), (2, 0), (2, 1), (4, 0), (4, 1), (4, 2), (4, 3)]
    assert len(enumerate_extremal(2)) == 3 == sigma(2)
    assert len(enumerate_extremal(6)) == 12 == sigma(6)
    for r, l, p in enumerate_extremal(12):
        assert p == generate_extremal(12, r, l)


@pytest.mark.parametrize("n", range(2, 17))
def test_bound_on_cyclotomic_corpus(n):
    for p in cyclotomic_corpus(n, 60, seed=400):
        b = check_bound(p)
        assert b.holds
        assert b.product == b.w * (n - b.k)


@pytest.mark.parametrize("n", [2, 3, 5, 7, 11, 13])
def test_prime_case_corpus(n):
    for p in cyclotomic_corpus(n, 60, seed=500):
        assert prime_case_check(p)


@pytest.mark.parametrize("n", range(2, 17))
def test_family_members_attain_equality(n):
    for r in divisors(n):
        for l in range(r):
            d = generate_extremal(n, r, l)
            for j in range(n):
                p = rotate(d, j)
                assert check_bound(p).equality
                desc = classify_extremal(p)
                assert (desc.r, desc.l, desc.j) == (r, l, j % (n // r))
                assert desc.polynomial() == p


@st.composite
def poly_and_scalar(draw):
    import random

    n = draw(st.integers(2, 14))
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    return random_cyclotomic_poly(rng, n), random_cyclotomic_integer(rng, n), draw(st.integers(-30, 30))


@given(poly_and_scalar())
@settings(max_examples=120, deadline=None)
def test_rotation_and_scaling_invariance(data):
    p, c, j = data
    base = check_bound(p)
    assert check_bound(rotate(p, j)) == base
    assert check_bound(scale(p, c)) == base


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
def test_support_disjointness_for_extremal_rows(n):
    for r in divisors(n):
        for l in range(r):
            p = scale(rotate(generate_extremal(n, r, l), 1), root_power(n, 1))
            c = circulant(p)
            supports = {tuple(i for i, x in enumerate(c.row(j)) if x) for j in range(n)}
            assert len(supports) == r
            union = set()
            for s in supports:
                assert not union & set(s)
                union |= set(s)
            assert union == set(range(n))


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_rank_one_subcirculant(n):
    for r in divisors(n):
        for l in range(r):
            for j in (0, 1, n - 1):
                _, _, q = decompose_progression(rotate(generate_extremal(n, r, l), j))
                assert rank(circulant(q)) == 1


def test_theorem_n4_report():
    report = verify_theorem_exhaustive(4)
    assert report.passed
    entry = next(e for e in report.classified if e["support"] == [0, 2] and e["roots"] == [1, 3])
    assert (entry["r"], entry["l"], entry["j"], entry["c"]) == (2, 0, 0, "1")


def test_theorem_n4_two_term_supports_without_spacing():
    omega = dft_matrix(4)
    for roots in itertools.combinations(range(4), 2):
        for supp in ((0, 1), (1, 2), (2, 3)):
            assert kernel_basis(omega.submatrix(roots, supp)) == []


def test_size_classes_are_the_nonstrict_region():
    for n in range(2, 10):
        for w, k in size_classes(n):
            assert w * (n - k) <= n
        assert len(set(size_classes(n))) == len(size_classes(n))


@pytest.mark.parametrize("n", range(2, 13))
def test_theorem_exhaustive(n, backend):
    report = verify_theorem_exhaustive(n, backend=backend)
    assert report.passed, report.to_dict()
    assert not report.strict_failures and not report.boundary_anomalies
    # every rotation of every family member shows up exactly once as a boundary kernel
    assert len(report.classified) == n * len(divisors(n))


@pytest.mark.parametrize("n", [3, 5, 7, 11])
def test_theorem_prime_strict_region_is_chebotarev(n):
    """For prime n the strict region is exactly minor non-vanishing, so it must pass."""
    report = verify_theorem_exhaustive(n)
    assert report.passed
    assert all(e["r"] in (1, n) for e in report.classified)


def test_theorem_detects_planted_strict_failure(monkeypatch):
    import numpy as np
    from cyclominors import _minors
    import cyclominors.uncertainty as u

    real = _minors.iter_minor_levels

    def broken(n, **kw):
        for level in real(n, **kw):
            if level.size == 2:
                level.nonzero = np.zeros_like(level.nonzero)
            yield level

    monkeypatch.setattr(_minors, "iter_minor_levels", broken)
    report = u.verify_theorem_exhaustive(5)
    assert not report.passed
    assert report.strict_failures


def test_theorem_threaded_matches():
    assert verify_theorem_exhaustive(9, threads=3).to_dict() == verify_theorem_exhaustive(9).to_dict()


def test_theorem_limit():
    with pytest.raises(UsageError):
        verify_theorem_exhaustive(13)
    with pytest.raises(UsageError):
        verify_theorem_exhaustive(1)
