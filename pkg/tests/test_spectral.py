import cmath
import itertools
import random

import pytest

from corpus import cyclotomic_corpus, integer_corpus
from cyclominors.cyclotomic import CycElem, root_power
from cyclominors.errors import UsageError
from cyclominors.linalg import CycMatrix
from cyclominors.spectral import (
    SparsePoly,
    circulant,
    dft_matrix,
    eigencheck,
    find_vanishing_minors,
    minor,
    rank_lemma_check,
    root_count,
    root_count_gcd,
    verify_chebotarev,
)


def poly(n, terms):
    return SparsePoly.from_terms(n, terms)


def brute_vanishing(n):
    """All vanishing minors by plain enumeration and elimination, in (size, rows, cols) order."""
    for s in range(1, n + 1):
        for rows in itertools.combinations(range(n), s):
            for cols in itertools.combinations(range(n), s):
                if not minor(n, rows, cols).det:
                    yield rows, cols


def complex_roots(p: SparsePoly) -> int:
    """Float oracle: count n-th roots of unity where |P| is tiny.  Integer coefficients only."""
    n = p.modulus
    hits = 0
    for i in range(n):
        z = cmath.exp(2j * cmath.pi * i / n)
        val = sum(float(c.to_rational()) * z ** e for e, c in p.terms)
        hits += abs(val) < 1e-9
    return hits


class TestSparsePoly:
    def test_rejects_bad_terms(self):
        with pytest.raises(UsageError):
            poly(4, {4: 1})
        with pytest.raises(UsageError):
            SparsePoly(4, ((0, CycElem.zero(4)),))
        with pytest.raises(UsageError):
            SparsePoly(4, ((0, CycElem.one(5)),))
        with pytest.raises(UsageError):
            SparsePoly(4, ((1, CycElem.one(4)), (1, CycElem.one(4))))

    def test_from_terms_drops_zeros(self):
        p = poly(5, {0: 1, 2: 0, 3: -2})
        assert p.support() == (0, 3)
        assert p.weight() == 2

    def test_evaluate(self):
        p = poly(4, {0: 1, 2: 1})
        assert [bool(p.evaluate(i)) for i in range(4)] == [True, False, True, False]


def test_dft_matrix_examples():
    assert dft_matrix(1).entries == (CycElem.one(1),)
    assert dft_matrix(2) == CycMatrix.from_rows(2, [[1, 1], [1, -1]])
    assert dft_matrix(4)[3, 3] == root_power(4, 1)


def test_minor_examples():
    assert minor(4, {1, 3}, {1, 3}).det.is_zero()
    w = root_power(3, 1)
    d = minor(3, {1, 2}, {1, 2}).det
    assert d == w ** 2 - w
    assert d and d.coords == (-1, -2)
    for n in (2, 5, 6):
        for i in range(n):
            for j in range(n):
                assert minor(n, [i], [j]).det == root_power(n, i * j)


@pytest.mark.parametrize("rows, cols", [([0, 1], [0]), ([], []), ([0, 4], [1, 2]), ([1, 1], [0, 2])])
def test_minor_rejects(rows, cols):
    with pytest.raises(UsageError):
        minor(4, rows, cols)


def test_minor_symmetry():
    rng = random.Random(2)
    for n in (4, 6, 7, 9):
        for _ in range(20):
            s = rng.randint(1, n)
            a, b = rng.sample(range(n), s), rng.sample(range(n), s)
            assert minor(n, a, b).det == minor(n, b, a).det


def test_chebotarev_small_primes(backend):
    report = verify_chebotarev(5, backend=backend)
    assert report.passed and report.checked == 251 and report.witness is None
    report = verify_chebotarev(2, backend=backend)
    assert report.passed and report.checked == 5


@pytest.mark.parametrize("n", [4, 6, 8])
def test_first_witness_matches_brute_force(n, backend):
    report = verify_chebotarev(n, backend=backend)
    brute = list(brute_vanishing(n)) if n < 8 else None
    first = next(brute_vanishing(n))
    assert not report.passed
    assert (report.witness.row_indices, report.witness.col_indices) == first
    assert report.witness.det.is_zero()
    if brute is not None:
        assert report.vanishing == len(brute)


def test_n4_witness_precedes_paper_example():
    w = verify_chebotarev(4).witness
    key = (len(w.row_indices), w.row_indices, w.col_indices)
    assert key <= (2, (1, 3), (1, 3))
    assert key == (2, (0, 2), (0, 2))


def test_find_vanishing_minors():
    (w,) = find_vanishing_minors(4, 1)
    assert w.det.is_zero()
    assert find_vanishing_minors(7, 10) == []
    (w,) = find_vanishing_minors(6, 1)
    assert minor(6, w.row_indices, w.col_indices).det.is_zero()
    many = find_vanishing_minors(6, 50)
    assert len(many) == 50
    expected = list(itertools.islice(brute_vanishing(6), 50))
    assert [(x.row_indices, x.col_indices) for x in many] == expected


def test_sampled_mode_reproducible():
    a = verify_chebotarev(6, "sampled", count=80, seed=9)
    b = verify_chebotarev(6, "sampled", count=80, seed=9)
    assert a.to_dict() == b.to_dict()
    assert a.witnesses
    for w in a.witnesses:
        assert minor(6, w.row_indices, w.col_indices).det.is_zero()
    assert verify_chebotarev(7, "sampled", count=100, seed=1).passed


def test_sampled_mode_requires_seed():
    with pytest.raises(UsageError):
        verify_chebotarev(6, "sampled", count=5)
    with pytest.raises(UsageError):
        verify_chebotarev(1)


def test_circulant_examples():
    assert circulant(poly(2, {0: 1, 1: 1})) == CycMatrix.from_rows(2, [[1, 1], [1, 1]])
    assert circulant(poly(3, {1: 1})) == CycMatrix.from_rows(3, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert circulant(poly(2, {})) == CycMatrix.from_rows(2, [[0, 0], [0, 0]])


def test_circulant_layout_matches_displayed_matrix():
    p = poly(4, {0: 10, 1: 11, 2: 12, 3: 13})
    c = circulant(p)
    assert [x.to_rational() for x in c.row(0)] == [10, 11, 12, 13]
    assert [x.to_rational() for x in c.row(1)] == [13, 10, 11, 12]
    assert [x.to_rational() for x in c.row(3)] == [11, 12, 13, 10]


def test_root_count_examples():
    assert root_count(poly(4, {0: 1, 1: 1, 2: 1, 3: 1})) == 3
    for n in (3, 8):
        for l in range(n):
            assert root_count(poly(n, {l: 5})) == 0
    assert root_count(poly(4, {0: 1, 2: 1})) == 2
    with pytest.raises(UsageError):
        root_count(poly(4, {}))


def test_root_count_gcd_examples():
    assert root_count_gcd(poly(4, {0: 1, 2: 1})) == 2
    assert root_count_gcd(poly(6, {0: 3})) == 0
    assert root_count_gcd(poly(4, {0: 1, 1: 1, 2: 1})) == 0
    with pytest.raises(UsageError):
        root_count_gcd(SparsePoly.from_terms(4, {0: root_power(4, 1)}))


def test_eigencheck_examples():
    p = poly(2, {0: 1, 1: 1})
    c = circulant(p)
    assert list(c.matvec([CycElem.one(2), -CycElem.one(2)])) == [0, 0]
    assert p.evaluate(1).is_zero()
    assert eigencheck(p)
    for n in (1, 5, 6):
        assert eigencheck(poly(n, {0: 7}))
    q = poly(4, {0: 1, 1: 1, 2: 1, 3: 1})
    assert q.evaluate(0) == 4
    assert list(circulant(q).matvec([CycElem.one(4)] * 4)) == [4] * 4


def test_eigencheck_orientation_matters():
    # with the row action (f C) the identity fails for a non-symmetric P
    p = poly(3, {1: 1})
    c = circulant(p)
    f = [root_power(3, t) for t in range(3)]
    lam = p.evaluate(1)
    row_action = list(c.transpose().matvec(f))
    assert row_action != [lam * x for x in f]
    assert eigencheck(p)


def test_rank_lemma_examples():
    r = rank_lemma_check(poly(4, {0: 1, 1: 1, 2: 1, 3: 1}))
    assert (r.rank, r.k, r.holds) == (1, 3, True)
    for n in (2, 5, 9):
        r = rank_lemma_check(poly(n, {0: 1}))
        assert (r.rank, r.k, r.holds) == (n, 0, True)
    r = rank_lemma_check(poly(4, {0: 1, 2: 1}))
    assert (r.rank, r.k, r.holds) == (2, 2, True)


@pytest.mark.parametrize("n", range(2, 17))
def test_rank_lemma_corpus(n):
    for p in integer_corpus(n, 40, seed=100):
        assert rank_lemma_check(p).holds
        assert root_count(p) == root_count_gcd(p) == complex_roots(p)


@pytest.mark.parametrize("n", range(2, 13))
def test_eigencheck_corpus(n):
    for p in integer_corpus(n, 15, seed=200) + cyclotomic_corpus(n, 5, seed=200):
        assert eigencheck(p)


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
def test_rank_lemma_cyclotomic_coefficients(n):
    for p in cyclotomic_corpus(n, 20, seed=300):
        assert rank_lemma_check(p).holds


@pytest.mark.parametrize("n", [4, 6, 8, 9, 10, 12, 15, 16])
def test_root_count_of_cyclotomic_products(n):
    """prod(Phi_d for d in D) with D a proper subset of divisors vanishes at exactly sum(phi(d)) roots."""
    from cyclominors.cyclotomic import cyclotomic_polynomial, divisors, euler_phi, poly_mul

    divs = divisors(n)
    for size in range(len(divs)):
        for chosen in itertools.combinations(divs, size):
            coeffs = [1]
            for d in chosen:
                coeffs = poly_mul(coeffs, cyclotomic_polynomial(d))
            p = SparsePoly.from_dense(coeffs, n)
            k = sum(euler_phi(d) for d in chosen)
            assert root_count(p) == root_count_gcd(p) == k
            assert rank_lemma_check(p).rank == n - k
