"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are residues modulo the N-th cyclotomic polynomial, with rational
coefficients.  Mixed-conductor arithmetic promotes both operands to the lcm
of their conductors, so any finite computation lives in a single field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Optional, Union


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def _int_poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # den has leading coefficient 1; division is exact by construction.
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    assert all(c == 0 for c in num[:dn]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        poly = _int_poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> list[Fraction]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(deg + 1):
                coeffs[i - deg + j] -= c * phi[j]
        coeffs[i] = Fraction(0)
    out = coeffs[:deg]
    while len(out) < deg:
        out.append(Fraction(0))
    return out


Scalar = Union[int, Fraction, "CycloNumber"]


def cyclo_reduce(coeffs: Iterable[Union[int, Fraction]], n: int) -> "CycloNumber":
    """Residue of sum(coeffs[k] * zeta_n^k) modulo Phi_n, canonical form."""
    raw = [Fraction(c) for c in coeffs]
    if not raw:
        raw = [Fraction(0)]
    return CycloNumber(n, _reduce_mod_phi(raw, n))


class CycloNumber:
    """An element of Q(zeta_n), stored as a coefficient vector mod Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Fraction]):
        self.n = n
        cs = tuple(Fraction(c) for c in coeffs)
        deg = euler_phi(n)
        if len(cs) != deg:
            raise ValueError(f"expected {deg} coefficients for conductor {n}")
        self.coeffs = cs

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rational(q: Union[int, Fraction]) -> "CycloNumber":
        return CycloNumber(1, (Fraction(q),))

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CycloNumber":
        """zeta_n^k as an element of Q(zeta_n)."""
        if n < 1:
            raise ValueError("conductor must be positive")
        k %= n
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        return CycloNumber(n, _reduce_mod_phi(raw, n))

    @staticmethod
    def coerce(value: Scalar) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloNumber.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycloNumber")

    # -- promotion between conductors ----------------------------------

    def promote(self, n: int) -> "CycloNumber":
        """Re-express in Q(zeta_n); requires self.n | n."""
        if n == self.n:
            return self
        if n % self.n != 0:
            raise ValueError(f"cannot promote conductor {self.n} into {n}")
        step = n // self.n
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1 or 1)
        for i, c in enumerate(self.coeffs):
            if c:
                raw[i * step] += c
        return CycloNumber(n, _reduce_mod_phi(raw, n))

    @staticmethod
    def _common(a: "CycloNumber", b: "CycloNumber") -> tuple["CycloNumber", "CycloNumber"]:
        n = a.n * b.n // gcd(a.n, b.n)
        return a.promote(n), b.promote(n)

    # -- ring/field operations -----------------------------------------

    def __add__(self, other: Scalar) -> "CycloNumber":
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        a, b = CycloNumber._common(self, CycloNumber.coerce(other))
        return CycloNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> "CycloNumber":
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other: Scalar) -> "CycloNumber":
        return CycloNumber.coerce(other) - self

    def __mul__(self, other: Scalar) -> "CycloNumber":
        if not isinstance(other, (int, Fraction, CycloNumber)):
            return NotImplemented
        a, b = CycloNumber._common(self, CycloNumber.coerce(other))
        raw = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return CycloNumber(a.n, _reduce_mod_phi(raw, a.n))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # Extended Euclid against Phi_n in Q[t]; Phi_n is irreducible over Q.
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = phi, list(self.coeffs)
        while r1 and not any(r1):
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p: list[Fraction]) -> int:
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            q = [Fraction(0)] * (d0 - d1 + 1)
            rr = list(r0)
            for i in range(d0, d1 - 1, -1):
                c = rr[i] / r1[d1]
                q[i - d1] = c
                if c:
                    for j in range(d1 + 1):
                        rr[i - d1 + j] -= c * r1[j]
            r0, r1 = r1, rr[: max(deg(rr) + 1, 1)]
            qs = _poly_mul_frac(q, s1)
            new_s = [x - y for x, y in _pad(s0, qs)]
            s0, s1 = s1, new_s
        lead = r1[deg(r1)]
        inv_coeffs = [c / lead for c in s1]
        return CycloNumber(self.n, _reduce_mod_phi(inv_coeffs, self.n))

    def __truediv__(self, other: Scalar) -> "CycloNumber":
        return self * CycloNumber.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "CycloNumber":
        return CycloNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycloNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates and canonical form ----------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = CycloNumber._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        d = self.deflate()
        return hash((d.n, d.coeffs))

    # -- deflation to the minimal conductor ------------------------------

    def deflate(self) -> "CycloNumber":
        """Rewrite over the smallest Q(zeta_m) with m | n containing self."""
        cur = self
        if cur.is_rational():
            return CycloNumber(1, (cur.coeffs[0],))
        changed = True
        while changed:
            changed = False
            for p in prime_factors(cur.n):
                m = cur.n // p
                down = _try_descend(cur, m)
                if down is not None:
                    cur = down
                    changed = True
                    break
        return cur

    def __repr__(self) -> str:
        return f"CycloNumber({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(_frac_str(c))
            else:
                z = f"zeta({self.n})" if i == 1 else f"zeta({self.n})^{i}"
                if c == 1:
                    parts.append(z)
                elif c == -1:
                    parts.append(f"-{z}")
                else:
                    parts.append(f"{_frac_str(c)}*{z}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pad(a: list[Fraction], b: list[Fraction]) -> Iterable[tuple[Fraction, Fraction]]:
    ln = max(len(a), len(b))
    a = a + [Fraction(0)] * (ln - len(a))
    b = b + [Fraction(0)] * (ln - len(b))
    return zip(a, b)


@lru_cache(maxsize=None)
def _embedding_matrix(n: int, m: int) -> tuple[tuple[Fraction, ...], ...]:
    # Columns: coordinates of zeta_n^(j*n/m) in the power basis of Q(zeta_n).
    step = n // m
    cols = []
    for j in range(euler_phi(m)):
        raw = [Fraction(0)] * (j * step + 1)
        raw[j * step] = Fraction(1)
        cols.append(tuple(_reduce_mod_phi(raw, n)))
    return tuple(cols)


def _try_descend(x: CycloNumber, m: int) -> Optional[CycloNumber]:
    """Solve for coordinates of x in Q(zeta_m) inside Q(zeta_n); None if absent."""
    n = x.n
    cols = _embedding_matrix(n, m)
    rows = euler_phi(n)
    width = len(cols)
    # Gaussian elimination on the augmented system A y = x.
    aug = [[cols[j][i] for j in range(width)] + [x.coeffs[i]] for i in range(rows)]
    piv_rows = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_rows.append(c)
        r += 1
        if r == rows:
            break
    # Consistency: rows below the pivots must have zero rhs.
    for i in range(r, rows):
        if aug[i][width] != 0:
            return None
    y = [Fraction(0)] * width
    for i, c in enumerate(piv_rows):
        y[c] = aug[i][width]
    return CycloNumber(m, y)


ZERO = CycloNumber.from_rational(0)
ONE = CycloNumber.from_rational(1)


class SquareTest:
    """Outcome of an exact constant square test."""

    __slots__ = ("status", "root")

    def __init__(self, status: str, root: Optional[CycloNumber] = None):
        assert status in ("square", "nonsquare", "indeterminate")
        self.status = status
        self.root = root

    def __repr__(self) -> str:
        if self.status == "square":
            return f"SquareTest(square, root={self.root})"
        return f"SquareTest({self.status})"


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def is_square_constant(c: CycloNumber, field_conductor: Optional[int] = None) -> SquareTest:
    """Exact square test in Q(zeta_n) for n in {1, 2, 3, 4, 6}; else indeterminate.

    The answer depends on the ambient field: -3 is a square in Q(zeta_3) but
    not in Q.  By default the field is the one the element was constructed
    in; pass field_conductor to test inside a larger field.  Conductors
    outside the resolved range would need number-field factorization, which
    is out of scope, so the answer there is a positive certificate when one
    is found in a resolved subfield and indeterminate otherwise.
    """
    c = CycloNumber.coerce(c)
    if c.is_zero():
        raise ValueError("square test of zero")
    n = field_conductor if field_conductor is not None else c.n
    if n % c.n != 0:
        raise ValueError(f"element of conductor {c.n} does not lie in Q(zeta_{n})")
    if n % 2 == 0 and (n // 2) % 2 == 1:
        n //= 2  # Q(zeta_{2m}) = Q(zeta_m) for odd m
    d = c.deflate()
    if n == 1:
        r = _rational_sqrt(d.coeffs[0])
        if r is not None:
            return SquareTest("square", CycloNumber.from_rational(r))
        return SquareTest("nonsquare")
    if n == 4:
        return _square_test_gaussian(d.promote(4))
    if n == 3:
        return _square_test_eisenstein(d.promote(3))
    # Unresolved field: certify squares found in a resolved subfield.
    if d.n in (1, 3, 4):
        for sub in (1, 3, 4):
            if sub % d.n == 0 and n % sub == 0:
                t = is_square_constant(d, sub)
                if t.status == "square":
                    return t
    return SquareTest("indeterminate")


def _square_test_gaussian(c: CycloNumber) -> SquareTest:
    a, b = c.coeffs  # c = a + b*i
    if b == 0:
        r = _rational_sqrt(a)
        if r is not None:
            return SquareTest("square", CycloNumber.from_rational(r))
        r = _rational_sqrt(-a)
        if r is not None:
            return SquareTest("square", CycloNumber(4, (Fraction(0), r)))
        return SquareTest("nonsquare")
    m = _rational_sqrt(a * a + b * b)
    if m is None:
        return SquareTest("nonsquare")
    u2 = (a + m) / 2
    u = _rational_sqrt(u2)
    if u is None or u == 0:
        return SquareTest("nonsquare")
    v = b / (2 * u)
    root = CycloNumber(4, (u, v))
    assert root * root == c
    return SquareTest("square", root)


def _square_test_eisenstein(c: CycloNumber) -> SquareTest:
    a, b = c.coeffs  # c = a + b*w with w = zeta_3
    if b == 0:
        r = _rational_sqrt(a)
        if r is not None:
            return SquareTest("square", CycloNumber.from_rational(r))
        r = _rational_sqrt(Fraction(-a, 3))
        if r is not None:
            # sqrt(-3) = 1 + 2*zeta_3
            root = CycloNumber(3, (r, 2 * r))
            assert root * root == c
            return SquareTest("square", root)
        return SquareTest("nonsquare")
    m = _rational_sqrt(a * a - a * b + b * b)
    if m is None:
        return SquareTest("nonsquare")
    for sign in (1, -1):
        v2 = (b - 2 * a + sign * 2 * m) / 3
        v = _rational_sqrt(v2)
        if v is None or v == 0:
            continue
        u = (b + v * v) / (2 * v)
        root = CycloNumber(3, (u, v))
        if root * root == c:
            return SquareTest("square", root)
    return SquareTest("nonsquare")
