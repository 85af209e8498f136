"""Weight versus root-count bound for polynomials of degree < n.

For a nonzero P with w nonzero coefficients and k roots among the n-th roots
of unity, ``w * (n - k) >= n``.  Equality holds exactly for scalar multiples
of rotated progressions ``D_{n,r,l}(w^j z)``, where
``D_{n,r,l}(z) = z^l (1 + z^r + ... + z^(n-r))`` with ``r | n`` and
``0 <= l < r``.

The bound is always handled in the integer product form, never as a ratio.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from cyclominors import _minors
from cyclominors.cyclotomic import CycElem, divisors, format_elem, root_power
from cyclominors.errors import TheoremViolation, UsageError
from cyclominors.linalg import CycMatrix, kernel_basis, rank
from cyclominors.spectral import SparsePoly, circulant, root_count

log = logging.getLogger(__name__)

THEOREM_MAX_N = 12


@dataclass(frozen=True)
class BoundReport:
    n: int
    w: int
    k: int
    product: int
    holds: bool
    equality: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "w": self.w, "k": self.k, "product": self.product,
                "holds": self.holds, "equality": self.equality}


@dataclass(frozen=True)
class ExtremalDescriptor:
    """``c * D_{n,r,l}(w^j z)`` with ``0 <= j < n/r``."""

    n: int
    r: int
    l: int
    j: int
    c: CycElem

    def polynomial(self) -> SparsePoly:
        return scale(rotate(generate_extremal(self.n, self.r, self.l, self.c.n), self.j), self.c)

    def to_dict(self) -> dict:
        return {"r": self.r, "l": self.l, "j": self.j, "c": format_elem(self.c)}


@dataclass
class TheoremReport:
    n: int
    pairs_checked: int = 0
    strict_pairs: int = 0
    boundary_pairs: int = 0
    boundary_kernels: int = 0
    left_boundary: int = 0
    strict_failures: list = dc_field(default_factory=list)
    boundary_anomalies: list = dc_field(default_factory=list)
    classified: list = dc_field(default_factory=list)
    elapsed: float = dc_field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.strict_failures and not self.boundary_anomalies

    def to_dict(self) -> dict:
        return {
            "n": self.n, "pairs_checked": self.pairs_checked,
            "strict_pairs": self.strict_pairs, "boundary_pairs": self.boundary_pairs,
            "boundary_kernels": self.boundary_kernels, "left_boundary": self.left_boundary,
            "classified_count": len(self.classified),
            "strict_failures": [{"support": list(s), "roots": list(r)} for s, r in self.strict_failures],
            "boundary_anomalies": self.boundary_anomalies,
            "classified": self.classified,
            "passed": self.passed,
        }


def _zeta(p: SparsePoly, e: int) -> int:
    """Exponent of w_conductor equal to zeta_modulus^e."""
    return (p.conductor // p.modulus) * e


def weight(p: SparsePoly) -> int:
    return p.weight()


def check_bound(p: SparsePoly) -> BoundReport:
    if p.is_zero():
        raise UsageError("check_bound is undefined for the zero polynomial")
    n = p.modulus
    if n < 2:
        raise UsageError(f"check_bound needs modulus >= 2, got {n}")
    w = p.weight()
    k = root_count(p)
    product = w * (n - k)
    report = BoundReport(n, w, k, product, product >= n, product == n)
    if not report.holds:
        log.error("sparsity bound violated by %s: %s", p, report)
    return report


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_case_check(p: SparsePoly) -> bool:
    """w(P) > k for prime modulus; a False return is a counterexample."""
    if p.is_zero():
        raise UsageError("prime_case_check is undefined for the zero polynomial")
    if not is_prime(p.modulus):
        raise UsageError(f"prime_case_check needs a prime modulus, got {p.modulus}")
    ok = p.weight() > root_count(p)
    if not ok:
        log.error("prime-case counterexample: %s", p)
    return ok


def generate_extremal(n: int, r: int, l: int, conductor: int | None = None) -> SparsePoly:
    if r < 1 or n % r:
        raise UsageError(f"r={r} does not divide n={n}")
    if not 0 <= l < r:
        raise UsageError(f"l={l} outside 0..{r - 1}")
    return SparsePoly.from_terms(n, {l + m * r: 1 for m in range(n // r)}, conductor)


def rotate(p: SparsePoly, j: int) -> SparsePoly:
    """Substitute z -> zeta^j z."""
    return SparsePoly(p.modulus, tuple((e, c.mul_root(_zeta(p, j * e))) for e, c in p.terms),
                      p.conductor)


def scale(p: SparsePoly, c) -> SparsePoly:
    if not isinstance(c, CycElem):
        c = CycElem.rational(p.conductor, c)
    if not c:
        raise UsageError("scaling by zero would store zero coefficients")
    return SparsePoly(p.modulus, tuple((e, a * c) for e, a in p.terms), p.conductor)


def decompose_progression(p: SparsePoly):
    """``(l, r, Q)`` with ``P(z) = z^l Q(z^r)`` when the support is a full progression."""
    if p.is_zero():
        raise UsageError("decompose_progression is undefined for the zero polynomial")
    n = p.modulus
    supp = p.support()
    w = len(supp)
    if n % w:
        return None
    r = n // w
    l = supp[0]
    if l >= r or supp != tuple(range(l, n, r)):
        return None
    q = SparsePoly(w, tuple((m, c) for m, (_, c) in enumerate(p.terms)), p.conductor)
    return l, r, q


def classify_extremal(p: SparsePoly) -> ExtremalDescriptor | None:
    """Recover ``(r, l, j, c)`` for a polynomial attaining the bound, else None.

    Raises :class:`TheoremViolation` when the bound is attained (or broken)
    but the polynomial is not in the extremal family.
    """
    report = check_bound(p)
    if not report.holds:
        raise TheoremViolation(f"bound violated by {p}", report)
    if not report.equality:
        return None
    n = p.modulus

    def fail(why):
        raise TheoremViolation(f"{p} attains the bound but {why}", report)

    dec = decompose_progression(p)
    if dec is None:
        fail("its support is not a progression l + r*m with r | n")
    l, r, q = dec
    m = n // r
    if rank(circulant(q)) != 1:
        fail(f"the circulant of Q has rank {rank(circulant(q))}, expected 1")
    coeffs = [c for _, c in q.terms]
    nu = coeffs[1] / coeffs[0] if m > 1 else CycElem.one(p.conductor)
    if any(b != a * nu for a, b in zip(coeffs, coeffs[1:])):
        fail("consecutive coefficient ratios of Q are not constant")
    if nu ** m != 1:
        fail("the coefficient ratio is not an (n/r)-th root of unity")
    j = next((j for j in range(m) if root_power(p.conductor, _zeta(p, j * r)) == nu), None)
    if j is None:
        fail("the coefficient ratio is not a power of w^r")
    c = coeffs[0].mul_root(-_zeta(p, j * l))
    desc = ExtremalDescriptor(n, r, l, j, c)
    if desc.polynomial() != p:
        fail(f"descriptor {desc.to_dict()} does not reconstruct it")
    return desc


def sigma(n: int) -> int:
    return sum(divisors(n))


def enumerate_extremal(n: int) -> list[tuple[int, int, SparsePoly]]:
    if n < 2:
        raise UsageError(f"enumerate_extremal needs n >= 2, got {n}")
    return [(r, l, generate_extremal(n, r, l)) for r in divisors(n) for l in range(r)]


# -- exhaustive finite verification ------------------------------------------------

def _dft_block(n: int, rows, cols) -> CycMatrix:
    return CycMatrix(n, len(rows), len(cols), tuple(root_power(n, i * j) for i in rows for j in cols))


def size_classes(n: int) -> list[tuple[int, int]]:
    """(w, k) pairs with w*(n-k) <= n, in lexicographic order."""
    return [(w, k) for w in range(1, n + 1) for k in range(n + 1) if w * (n - k) <= n]


def _full_column_rank(n: int, nonzero: list[np.ndarray], w: int, k: int) -> np.ndarray:
    """(C(n,w), C(n,k)) mask: rank of the (R x S) DFT block equals |S| = w.

    The block has full column rank iff one of its w x w minors is nonzero.
    """
    n_rows = len(_minors.subsets(n, k)[0])
    n_cols = len(_minors.subsets(n, w)[0])
    if k < w:
        return np.zeros((n_cols, n_rows), dtype=bool)
    inner = _minors.inner_subsets(n, k, w)
    out = np.empty((n_rows, n_cols), dtype=bool)
    step = max(1, (1 << 24) // max(1, inner.shape[1] * n_cols))
    for lo in range(0, n_rows, step):
        out[lo:lo + step] = nonzero[w][inner[lo:lo + step]].any(axis=1)
    return out.T


def _check_boundary_kernel(n, supp, roots, report: TheoremReport):
    basis = kernel_basis(_dft_block(n, roots, supp))
    if len(basis) > 1:
        report.boundary_anomalies.append(
            {"support": list(supp), "roots": list(roots), "reason": f"kernel dimension {len(basis)}"})
        return
    report.boundary_kernels += 1
    v = basis[0]
    p = SparsePoly.from_terms(n, zip(supp, v.entries))
    bound = check_bound(p)
    kernel_text = [format_elem(x) for x in v.entries]
    if bound.product > n:
        report.left_boundary += 1
        return
    if bound.product < n:
        report.boundary_anomalies.append(
            {"support": list(supp), "roots": list(roots), "kernel": kernel_text,
             "reason": f"kernel vector has w*(n-k) = {bound.product} < n"})
        return
    try:
        desc = classify_extremal(p)
    except TheoremViolation as exc:
        report.boundary_anomalies.append(
            {"support": list(supp), "roots": list(roots), "kernel": kernel_text, "reason": str(exc)})
        return
    report.classified.append({"support": list(supp), "roots": list(roots), **desc.to_dict()})


def _run_class(n: int, nonzero, w: int, k: int) -> TheoremReport:
    part = TheoremReport(n)
    supports = _minors.subsets(n, w)[0]
    roots = _minors.subsets(n, k)[0]
    full = _full_column_rank(n, nonzero, w, k)
    pairs = full.size
    part.pairs_checked = pairs
    deficient = np.argwhere(~full).tolist()
    if w * (n - k) < n:
        part.strict_pairs = pairs
        for si, ri in deficient:
            part.strict_failures.append((tuple(supports[si].tolist()), tuple(roots[ri].tolist())))
    else:
        part.boundary_pairs = pairs
        for si, ri in deficient:
            _check_boundary_kernel(n, tuple(supports[si].tolist()), tuple(roots[ri].tolist()), part)
    return part


def verify_theorem_exhaustive(n: int, *, limit: int = THEOREM_MAX_N, threads: int = 1,
                              backend: str | None = None) -> TheoremReport:
    """Check the bound and its equality case for every support S and root set R.

    For each pair with ``|S| * (n - |R|) < n`` the DFT block with rows R and
    columns S must have full column rank: no polynomial supported on S
    vanishes on all of R.  For pairs on the boundary ``= n`` the kernel must
    have dimension at most 1, and a kernel polynomial that stays on the
    boundary must classify into the extremal family.
    """
    if not 2 <= n <= limit:
        raise UsageError(f"verify_theorem_exhaustive needs 2 <= n <= {limit}, got {n}")
    t0 = time.perf_counter()
    nonzero = [np.ones((1, 1), dtype=bool)]
    for level in _minors.iter_minor_levels(n, backend=backend, threads=threads):
        nonzero.append(level.nonzero)
    classes = size_classes(n)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda wk: _run_class(n, nonzero, *wk), classes))
    else:
        parts = [_run_class(n, nonzero, w, k) for w, k in classes]
    report = TheoremReport(n)
    for part in parts:
        report.pairs_checked += part.pairs_checked
        report.strict_pairs += part.strict_pairs
        report.boundary_pairs += part.boundary_pairs
        report.boundary_kernels += part.boundary_kernels
        report.left_boundary += part.left_boundary
        report.strict_failures += part.strict_failures
        report.boundary_anomalies += part.boundary_anomalies
        report.classified += part.classified
    report.elapsed = time.perf_counter() - t0
    return report
