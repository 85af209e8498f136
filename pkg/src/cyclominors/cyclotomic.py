"""Exact arithmetic in the cyclotomic field Q(w), w a primitive n-th root of unity.

Elements are stored in the power basis ``1, w, ..., w^(phi(n)-1)`` of
``Q[x]/(Phi_n)``.  Since ``Phi_n`` is irreducible this basis is canonical:
an element is zero iff every coordinate is zero, so equality is decidable
by comparing coordinates.

Internally the coordinates are kept as integer numerators over one shared
positive denominator, always reduced so that the gcd of the numerators and
the denominator is 1.  :attr:`CycElem.coords` exposes them as
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from cyclominors.errors import UsageError

IntPoly = tuple  # ascending integer coefficients, trailing zeros stripped


# -- integer / rational polynomial helpers ---------------------------------

def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division over Q.  Returns exact integers when ``b`` is monic."""
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _strip(list(a))
    lead = b[-1]
    monic = lead == 1
    if len(rem) < len(b):
        return [], rem
    quot = [0] * (len(rem) - len(b) + 1)
    while len(rem) >= len(b):
        c = rem[-1] if monic else Fraction(rem[-1]) / lead
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem.pop()
        _strip(rem)
    return _strip(quot), rem


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q (Euclid with rational remainders)."""
    a = _strip([Fraction(x) for x in a])
    b = _strip([Fraction(x) for x in b])
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPoly:
    """Phi_n as ascending integer coefficients.

    Computed as ``(x^n - 1) / prod(Phi_d for d | n, d < n)`` by exact
    division; the division is exact with integer quotient since every
    divisor polynomial is monic.
    """
    if n < 1:
        raise UsageError(f"cyclotomic_polynomial: n must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in divisors(n)[:-1]:
        den = poly_mul(den, cyclotomic_polynomial(d))
    quot, rem = poly_divmod(num, den)
    assert not rem, "x^n - 1 not divisible by the proper cyclotomic factors"
    return tuple(int(c) for c in quot)


def format_int_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mag = abs(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class _Field:
    """Per-conductor constants: phi(n), Phi_n and the table of x^t mod Phi_n."""

    __slots__ = ("n", "phi", "modulus", "powers")

    def __init__(self, n: int):
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.phi = len(self.modulus) - 1
        phi = self.phi
        size = max(n, 2 * phi - 1, 1)
        powers = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(size):
            powers.append(tuple(cur))
            # multiply by x, folding x^phi = -(Phi_0 + ... + Phi_{phi-1} x^{phi-1})
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.modulus[i]
        self.powers = tuple(powers)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Integer vector in Z[x] (any length) reduced modulo Phi_n.

        Exponents are taken modulo n first, so ``vec`` may be a group-ring
        element of ``Z[x]/(x^n - 1)`` or a raw product.
        """
        phi, n, powers = self.phi, self.n, self.powers
        out = [0] * phi
        for t, c in enumerate(vec):
            if c:
                row = powers[t % n] if t >= len(powers) else powers[t]
                for i, v in enumerate(row):
                    if v:
                        out[i] += c * v
        return out


@lru_cache(maxsize=None)
def field(n: int) -> _Field:
    if n < 1:
        raise UsageError(f"conductor must be >= 1, got {n}")
    return _Field(n)


class CycElem:
    """An element of Q(w_n), immutable, in canonical power-basis form."""

    __slots__ = ("n", "nums", "den")

    def __init__(self, n: int, coords: Iterable = ()):
        f = field(n)
        coords = [Fraction(c) for c in coords]
        if len(coords) > f.phi:
            raise UsageError(
                f"CycElem over n={n} takes at most phi(n)={f.phi} coordinates, got {len(coords)}")
        coords += [Fraction(0)] * (f.phi - len(coords))
        den = math.lcm(*(c.denominator for c in coords)) if coords else 1
        self._set(n, [c.numerator * (den // c.denominator) for c in coords], den)

    def _set(self, n, nums, den):
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self.n = n
        self.nums = tuple(nums)
        self.den = den

    @classmethod
    def _raw(cls, n: int, nums: Sequence[int], den: int = 1) -> CycElem:
        obj = object.__new__(cls)
        if den < 0:
            nums, den = [-x for x in nums], -den
        obj._set(n, nums, den)
        return obj

    @classmethod
    def zero(cls, n: int) -> CycElem:
        return cls._raw(n, [0] * field(n).phi)

    @classmethod
    def one(cls, n: int) -> CycElem:
        return cls.rational(n, 1)

    @classmethod
    def rational(cls, n: int, q) -> CycElem:
        q = Fraction(q)
        nums = [0] * field(n).phi
        nums[0] = q.numerator
        return cls._raw(n, nums, q.denominator)

    @classmethod
    def from_group_ring(cls, n: int, vec: Sequence[int], den: int = 1) -> CycElem:
        """The element ``sum(vec[t] * w^t) / den``."""
        return cls._raw(n, field(n).reduce(vec), den)

    # -- views ---------------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise UsageError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def __bool__(self) -> bool:
        return any(self.nums)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.nums == other.nums

    def __hash__(self) -> int:
        return hash((self.n, self.nums, self.den))

    def __repr__(self) -> str:
        return f"CycElem({self.n}, {format_elem(self)!r})"

    def __str__(self) -> str:
        return format_elem(self)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> CycElem:
        if isinstance(other, CycElem):
            if other.n != self.n:
                raise UsageError(f"conductor mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElem.rational(self.n, other)
        return NotImplemented

    def __add__(self, other) -> CycElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        da, db = self.den, other.den
        if da == db:
            nums = [x + y for x, y in zip(self.nums, other.nums)]
        else:
            nums = [x * db + y * da for x, y in zip(self.nums, other.nums)]
            da *= db
        return CycElem._raw(self.n, nums, da)

    __radd__ = __add__

    def __neg__(self) -> CycElem:
        return CycElem._raw(self.n, [-x for x in self.nums], self.den)

    def __sub__(self, other) -> CycElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycElem:
        return (-self) + other

    def __mul__(self, other) -> CycElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.n
        a, b = self.nums, other.nums
        den = self.den * other.den
        if not any(a[1:]):
            c = a[0]
            return CycElem._raw(n, [c * y for y in b], den)
        if not any(b[1:]):
            c = b[0]
            return CycElem._raw(n, [c * x for x in a], den)
        f = field(n)
        phi = f.phi
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        powers = f.powers
        for t in range(phi, 2 * phi - 1):
            c = conv[t]
            if c:
                for i, v in enumerate(powers[t]):
                    if v:
                        out[i] += c * v
        return CycElem._raw(n, out, den)

    __rmul__ = __mul__

    def mul_root(self, e: int) -> CycElem:
        """Multiply by w^e (a rotation in the group ring, then reduce)."""
        n = self.n
        e %= n
        if not e:
            return self
        f = field(n)
        out = [0] * f.phi
        powers = f.powers
        for t, x in enumerate(self.nums):
            if x:
                for i, v in enumerate(powers[(t + e) % n]):
                    if v:
                        out[i] += x * v
        return CycElem._raw(n, out, self.den)

    def inverse(self) -> CycElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        n = self.n
        if self.is_rational():
            return CycElem.rational(n, Fraction(self.den, self.nums[0]))
        # extended Euclid on (lift(self), Phi_n) over Q: s*a + t*Phi = g, g constant
        old_r = _strip([Fraction(x, self.den) for x in self.nums])
        r = [Fraction(c) for c in field(n).modulus]
        old_s, s = [Fraction(1)], []
        while r:
            q, rem = poly_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, _poly_sub(old_s, poly_mul(q, s))
        assert len(old_r) == 1, "Phi_n is irreducible, gcd must be constant"
        g = old_r[0]
        return CycElem(n, [c / g for c in old_s])

    def __truediv__(self, other) -> CycElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycElem:
        return self.inverse() * other

    def __pow__(self, e: int) -> CycElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycElem.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def _poly_sub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _strip(out)


# -- functional surface --------------------------------------------------------

def root_power(n: int, e: int) -> CycElem:
    """w^(e mod n) in canonical form."""
    return CycElem._raw(n, field(n).powers[e % n])


def add(a: CycElem, b: CycElem) -> CycElem:
    return a + b


def mul(a: CycElem, b: CycElem) -> CycElem:
    return a * b


def neg(a: CycElem) -> CycElem:
    return -a


def inv(a: CycElem) -> CycElem:
    return a.inverse()


def geometric_root_sum(n: int, i: int) -> CycElem:
    """sum_{t<n} w^(i*t), accumulated term by term."""
    acc = [0] * n
    for t in range(n):
        acc[(i * t) % n] += 1
    return CycElem.from_group_ring(n, acc)


# -- text syntax ----------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*)?(w(?:\^(-?\d+))?)?")


def parse_elem(text: str, n: int) -> CycElem:
    """Parse ``a/b*w^e`` sums, e.g. ``"1 - 1/2*w^3 + w"``; exponents taken mod n."""
    s = "".join(text.split())
    if not s:
        raise UsageError("empty cyclotomic element")
    acc = [Fraction(0)] * n
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, coef, star, mono, exp = m.groups()
        if m.end() == pos or (coef is None and mono is None):
            raise UsageError(f"cannot parse cyclotomic element {text!r} at offset {pos}")
        if star and (coef is None or mono is None):
            raise UsageError(f"dangling '*' in cyclotomic element {text!r}")
        if pos > 0 and not sign:
            raise UsageError(f"missing operator in cyclotomic element {text!r} at offset {pos}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = 0
        if mono is not None:
            e = int(exp) if exp is not None else 1
        acc[e % n] += c
        pos = m.end()
    den = math.lcm(*(c.denominator for c in acc))
    return CycElem.from_group_ring(n, [c.numerator * (den // c.denominator) for c in acc], den)


def format_elem(a: CycElem) -> str:
    parts = []
    for t, q in enumerate(a.coords):
        if not q:
            continue
        mag = abs(q)
        if t == 0:
            body = str(mag)
        else:
            mono = "w" if t == 1 else f"w^{t}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if q < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
