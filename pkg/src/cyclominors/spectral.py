"""The DFT matrix and its minors; circulant matrices of sparse polynomials.

Indices run over ``0..n-1``.  The DFT row of index 0 is the all-ones row,
which is the same row as index ``n`` in a ``1..n`` convention, so both
conventions have the same rows and columns as sets and the same minors.

A circulant acts on column vectors: with row ``j`` equal to
``(p_{(i-j) mod n})_i`` one has ``C f_k = P(w^k) f_k`` for
``f_k = (w^(k t))_t``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from cyclominors import _minors
from cyclominors.cyclotomic import CycElem, format_elem, poly_gcd, root_power
from cyclominors.errors import UsageError
from cyclominors.linalg import CycMatrix, determinant, rank


@dataclass(frozen=True)
class SparsePoly:
    """``sum(c * z^e)`` with exponents below ``modulus``.

    Coefficients live in Q(w_conductor), where ``modulus`` divides
    ``conductor``; the two differ only for the reduced polynomial ``Q`` of
    a progression ``P(z) = z^l Q(z^r)``.  The zero polynomial has no terms.
    """

    modulus: int
    terms: tuple[tuple[int, CycElem], ...]
    conductor: int = 0

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise UsageError(f"polynomial modulus must be >= 1, got {m}")
        if not self.conductor:
            object.__setattr__(self, "conductor", m)
        if self.conductor % m:
            raise UsageError(f"modulus {m} does not divide conductor {self.conductor}")
        terms = tuple(sorted(self.terms, key=lambda t: t[0]))
        seen = set()
        for e, c in terms:
            if not 0 <= e < m:
                raise UsageError(f"exponent {e} out of range 0..{m - 1}")
            if e in seen:
                raise UsageError(f"duplicate exponent {e}")
            seen.add(e)
            if c.n != self.conductor:
                raise UsageError(f"coefficient of z^{e} lives over n={c.n}, expected {self.conductor}")
            if not c:
                raise UsageError(f"stored coefficient of z^{e} is zero")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, modulus: int, terms: Mapping[int, object] | Iterable[tuple[int, object]],
                   conductor: int | None = None) -> SparsePoly:
        """Build from exponent -> coefficient; ints/Fractions are promoted, zeros dropped."""
        conductor = conductor or modulus
        items = terms.items() if isinstance(terms, Mapping) else terms
        out = []
        for e, c in items:
            if not isinstance(c, CycElem):
                c = CycElem.rational(conductor, c)
            if c:
                out.append((e, c))
        return cls(modulus, tuple(out), conductor)

    @classmethod
    def from_dense(cls, coeffs: Iterable, modulus: int, conductor: int | None = None) -> SparsePoly:
        return cls.from_terms(modulus, list(enumerate(coeffs)), conductor)

    def weight(self) -> int:
        return len(self.terms)

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> CycElem:
        for k, c in self.terms:
            if k == e:
                return c
        return CycElem.zero(self.conductor)

    def dense(self) -> list[CycElem]:
        out = [CycElem.zero(self.conductor)] * self.modulus
        for e, c in self.terms:
            out[e] = c
        return out

    def is_rational(self) -> bool:
        return all(c.is_rational() for _, c in self.terms)

    def evaluate(self, i: int) -> CycElem:
        """P(zeta^i) for zeta the primitive modulus-th root, summed term by term."""
        n = self.conductor
        step = n // self.modulus
        den = math.lcm(*(c.den for _, c in self.terms)) if self.terms else 1
        acc = [0] * n
        for e, c in self.terms:
            shift = step * i * e
            scale = den // c.den
            for t, x in enumerate(c.nums):
                if x:
                    acc[(t + shift) % n] += x * scale
        return CycElem.from_group_ring(n, acc, den)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                parts.append(f"({format_elem(c)})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({format_elem(c)})*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class MinorWitness:
    n: int
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    det: CycElem

    def to_dict(self) -> dict:
        return {"n": self.n, "rows": list(self.row_indices), "cols": list(self.col_indices),
                "det": format_elem(self.det)}


@dataclass
class ChebotarevReport:
    n: int
    mode: str
    checked: int
    vanishing: int
    witnesses: list[MinorWitness]
    seed: int | None = None
    elapsed: float = dc_field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.vanishing == 0

    @property
    def witness(self) -> MinorWitness | None:
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        out = {"n": self.n, "mode": self.mode, "checked": self.checked,
               "vanishing": self.vanishing, "passed": self.passed,
               "witness": self.witness.to_dict() if self.witness else None}
        if self.seed is not None:
            out["seed"] = self.seed
            out["witnesses"] = [w.to_dict() for w in self.witnesses]
        return out


@dataclass(frozen=True)
class RankLemmaReport:
    rank: int
    k: int
    holds: bool

    def to_dict(self) -> dict:
        return {"rank": self.rank, "k": self.k, "holds": self.holds}


def dft_matrix(n: int) -> CycMatrix:
    if n < 1:
        raise UsageError(f"dft_matrix: n must be >= 1, got {n}")
    return CycMatrix(n, n, n, tuple(root_power(n, i * j) for i in range(n) for j in range(n)))


def _check_index_set(n: int, idx, what: str) -> tuple[int, ...]:
    idx = tuple(sorted(idx))
    if len(set(idx)) != len(idx):
        raise UsageError(f"{what}: repeated index in {idx}")
    for i in idx:
        if not 0 <= i < n:
            raise UsageError(f"{what}: index {i} out of range 0..{n - 1}")
    return idx


def minor(n: int, rows, cols) -> MinorWitness:
    rows = _check_index_set(n, rows, "rows")
    cols = _check_index_set(n, cols, "cols")
    if len(rows) != len(cols) or not rows:
        raise UsageError(f"minor needs equal nonempty index sets, got {len(rows)} and {len(cols)}")
    sub = CycMatrix(n, len(rows), len(cols),
                    tuple(root_power(n, i * j) for i in rows for j in cols))
    return MinorWitness(n, rows, cols, determinant(sub))


def _level_witnesses(n: int, level: _minors.MinorLevel, limit: int | None):
    zeros = np.argwhere(~level.nonzero)
    if limit is not None:
        zeros = zeros[:limit]
    for ri, ci in zeros.tolist():
        det = CycElem.from_group_ring(n, level.values[ri, ci].tolist())
        yield MinorWitness(n, tuple(level.rows[ri].tolist()), tuple(level.rows[ci].tolist()), det)


def verify_chebotarev(n: int, mode: str = "exhaustive", *, count: int = 0, seed: int | None = None,
                      threads: int = 1, backend: str | None = None) -> ChebotarevReport:
    """Check that every (exhaustive) or every sampled minor of the DFT matrix is nonzero.

    Exhaustive mode walks all ``sum_s C(n,s)^2`` minors in (size, rows, cols)
    lexicographic order and keeps the first vanishing one as the witness.
    Sampled mode draws ``count`` subset pairs uniformly from ``random.Random(seed)``
    and evaluates each by Gaussian elimination.
    """
    if n < 2:
        raise UsageError(f"verify_chebotarev needs n >= 2, got {n}")
    t0 = time.perf_counter()
    if mode == "exhaustive":
        checked = vanishing = 0
        first: list[MinorWitness] = []
        for level in _minors.iter_minor_levels(n, backend=backend, threads=threads):
            checked += level.nonzero.size
            zeros = int(level.nonzero.size - np.count_nonzero(level.nonzero))
            if zeros and not first:
                first = list(_level_witnesses(n, level, 1))
            vanishing += zeros
        return ChebotarevReport(n, mode, checked, vanishing, first,
                                elapsed=time.perf_counter() - t0)
    if mode == "sampled":
        if seed is None:
            raise UsageError("sampled verification requires an explicit seed")
        if count < 1:
            raise UsageError(f"sample count must be >= 1, got {count}")
        rng = random.Random(seed)
        sizes = list(range(1, n + 1))
        weights = [math.comb(n, s) ** 2 for s in sizes]
        found = {}
        for _ in range(count):
            s = rng.choices(sizes, weights)[0]
            rows = tuple(sorted(rng.sample(range(n), s)))
            cols = tuple(sorted(rng.sample(range(n), s)))
            w = minor(n, rows, cols)
            if not w.det:
                found[(s, rows, cols)] = w
        witnesses = [found[key] for key in sorted(found)]
        return ChebotarevReport(n, mode, count, len(witnesses), witnesses, seed=seed,
                                elapsed=time.perf_counter() - t0)
    raise UsageError(f"unknown verification mode {mode!r}")


def find_vanishing_minors(n: int, max_results: int, *, backend: str | None = None) -> list[MinorWitness]:
    if max_results < 1:
        return []
    out: list[MinorWitness] = []
    for level in _minors.iter_minor_levels(n, backend=backend):
        out.extend(_level_witnesses(n, level, max_results - len(out)))
        if len(out) >= max_results:
            break
    return out


def circulant(p: SparsePoly) -> CycMatrix:
    """Row j holds p_{(i-j) mod n} in column i."""
    m = p.modulus
    coeffs = p.dense()
    return CycMatrix(p.conductor, m, m, tuple(coeffs[(i - j) % m] for j in range(m) for i in range(m)))


def _require_nonzero(p: SparsePoly, what: str):
    if p.is_zero():
        raise UsageError(f"{what} is undefined for the zero polynomial")


def root_count(p: SparsePoly) -> int:
    """Number of i in 0..modulus-1 with P(zeta^i) = 0, evaluated exactly."""
    _require_nonzero(p, "root_count")
    return sum(1 for i in range(p.modulus) if not p.evaluate(i))


def root_count_gcd(p: SparsePoly) -> int:
    """deg gcd(P, x^m - 1) over Q; agrees with root_count since x^m - 1 is squarefree."""
    _require_nonzero(p, "root_count_gcd")
    if not p.is_rational():
        raise UsageError("root_count_gcd needs rational coefficients")
    dense = [Fraction(0)] * p.modulus
    for e, c in p.terms:
        dense[e] = c.to_rational()
    return len(poly_gcd(dense, [-1] + [0] * (p.modulus - 1) + [1])) - 1


def root_vector(modulus: int, i: int, conductor: int | None = None) -> list[CycElem]:
    """f_i = (zeta^(i t))_{t < modulus}."""
    conductor = conductor or modulus
    step = conductor // modulus
    return [root_power(conductor, step * i * t) for t in range(modulus)]


def eigencheck(p: SparsePoly) -> bool:
    _require_nonzero(p, "eigencheck")
    c = circulant(p)
    for i in range(p.modulus):
        f = root_vector(p.modulus, i, p.conductor)
        lam = p.evaluate(i)
        if list(c.matvec(f)) != [lam * x for x in f]:
            return False
    return True


def rank_lemma_check(p: SparsePoly) -> RankLemmaReport:
    _require_nonzero(p, "rank_lemma_check")
    r = rank(circulant(p))
    k = root_count(p)
    return RankLemmaReport(r, k, r == p.modulus - k)
