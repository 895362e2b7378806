"""Univariate polynomials and rational functions over Q(zeta_N).

Polynomials are dense coefficient tuples with the zero polynomial stored as
an empty tuple.  Rational functions are kept reduced with a monic
denominator, so structural equality is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .cyclo import CycloNumber, SquareTest, is_square_constant

Coeffish = Union[int, Fraction, CycloNumber]


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Coeffish] = (), var: str = "x"):
        cs = [CycloNumber.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(var: str = "x") -> "UniPoly":
        return UniPoly((), var)

    @staticmethod
    def constant(c: Coeffish, var: str = "x") -> "UniPoly":
        return UniPoly((c,), var)

    @staticmethod
    def x(var: str = "x") -> "UniPoly":
        return UniPoly((0, 1), var)

    @staticmethod
    def from_roots(roots: Sequence[Coeffish], var: str = "x") -> "UniPoly":
        p = UniPoly.constant(1, var)
        for r in roots:
            p = p * UniPoly((-CycloNumber.coerce(r), 1), var)
        return p

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> CycloNumber:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> CycloNumber:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return CycloNumber.from_rational(0)

    def _wrap(self, coeffs: Iterable[Coeffish]) -> "UniPoly":
        return UniPoly(coeffs, self.var)

    def _check_var(self, other: "UniPoly") -> None:
        if self.var != other.var and not (self.is_constant() or other.is_constant()):
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Union[Coeffish, "UniPoly"]) -> "UniPoly":
        other = _coerce_poly(other, self.var)
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other: Union[Coeffish, "UniPoly"]) -> "UniPoly":
        return self + (-_coerce_poly(other, self.var))

    def __rsub__(self, other: Union[Coeffish, "UniPoly"]) -> "UniPoly":
        return _coerce_poly(other, self.var) - self

    def __mul__(self, other: Union[Coeffish, "UniPoly"]) -> "UniPoly":
        other = _coerce_poly(other, self.var)
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [CycloNumber.from_rational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = _coerce_poly(other, self.var)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        self._check_var(other)
        rem = list(self.coeffs)
        dn = other.degree
        lead_inv = other.leading().inverse()
        quo = [CycloNumber.from_rational(0)] * max(len(rem) - dn, 0)
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i] * lead_inv
            if not c.is_zero():
                quo[i - dn] = c
                for j in range(dn + 1):
                    rem[i - dn + j] = rem[i - dn + j] - c * other.coeffs[j]
            rem[i] = CycloNumber.from_rational(0)
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return self._wrap([c * inv for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return self._wrap([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def evaluate(self, value: Coeffish) -> CycloNumber:
        v = CycloNumber.coerce(value)
        acc = CycloNumber.from_rational(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def compose_poly(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x)), by Horner evaluation in the polynomial ring."""
        acc = UniPoly.zero(inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def compose_mobius(self, a, b, c, d) -> "RatFunc":
        """self((a*x+b)/(c*x+d)) as a rational function."""
        a, b, c, d = (_coerce_poly(t, self.var) for t in (a, b, c, d))
        num_lin = a * UniPoly.x(self.var) + b
        den_lin = c * UniPoly.x(self.var) + d
        n = self.degree
        if n < 0:
            return RatFunc(UniPoly.zero(self.var), UniPoly.constant(1, self.var))
        num = UniPoly.zero(self.var)
        for i, coef in enumerate(self.coeffs):
            if not coef.is_zero():
                num = num + coef * num_lin**i * den_lin ** (n - i)
        return RatFunc(num, den_lin**n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = UniPoly.constant(other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(c.deflate().coeffs + (c.deflate().n,) for c in self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                term = _coeff_str(c)
            else:
                xi = self.var if i == 1 else f"{self.var}^{i}"
                if c.is_one():
                    term = xi
                elif (-c).is_one():
                    term = f"-{xi}"
                else:
                    term = f"{_coeff_str(c)}*{xi}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _coeff_str(c: CycloNumber) -> str:
    s = str(c)
    return f"({s})" if ("+" in s[1:] or "-" in s[1:] or "*" in s) else s


def _coerce_poly(value: Union[Coeffish, UniPoly], var: str) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.constant(value, var)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if a.is_zero() and b.is_zero():
        return UniPoly.zero(a.var)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class SquareFreeDecomposition:
    """p = constant * radical * square_root**2, radical monic square-free."""

    __slots__ = ("radical", "square_root", "constant", "cofactor_is_square")

    def __init__(self, radical: UniPoly, square_root: UniPoly, constant: CycloNumber):
        self.radical = radical
        self.square_root = square_root
        self.constant = constant
        self.cofactor_is_square = True

    def __repr__(self) -> str:
        return (
            f"SquareFreeDecomposition(radical={self.radical}, "
            f"square_root={self.square_root}, constant={self.constant})"
        )


def squarefree_part(p: UniPoly) -> SquareFreeDecomposition:
    """Odd-multiplicity radical of p, via Yun's algorithm (no factorization)."""
    if p.is_zero():
        raise ValueError("squarefree_part of the zero polynomial")
    constant = p.leading()
    mono = p.monic()
    radical = UniPoly.constant(1, p.var)
    square_root = UniPoly.constant(1, p.var)
    if mono.degree > 0:
        for mult, factor in _yun(mono):
            if mult % 2 == 1:
                radical = radical * factor
            square_root = square_root * factor ** (mult // 2)
    dec = SquareFreeDecomposition(radical, square_root, constant)
    assert constant * radical * square_root**2 == p
    return dec


def _yun(p: UniPoly) -> list[tuple[int, UniPoly]]:
    # Yun's square-free decomposition; valid in characteristic zero.
    out = []
    g = poly_gcd(p, p.derivative())
    w = p.exact_div(g)
    y = p.derivative().exact_div(g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        a = poly_gcd(w, z)
        if a.degree > 0:
            out.append((i, a))
        w = w.exact_div(a)
        y = z.exact_div(a)
        i += 1
    return out


class RatFunc:
    """Reduced fraction of univariate polynomials, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: Optional[UniPoly] = None):
        if den is None:
            den = UniPoly.constant(1, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_one() and not g.is_zero():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead_inv = den.leading().inverse()
        self.num = num * lead_inv
        self.den = den * lead_inv

    @staticmethod
    def coerce(value: Union[Coeffish, UniPoly, "RatFunc"], var: str = "x") -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, UniPoly):
            return RatFunc(value)
        return RatFunc(UniPoly.constant(value, var))

    @staticmethod
    def x(var: str = "x") -> "RatFunc":
        return RatFunc(UniPoly.x(var))

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_constant() else self.den.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> CycloNumber:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] / self.den[0]

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other, self.var)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.coerce(other, self.var))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other, self.var) - self

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other, self.var)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other, self.var)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other, self.var) / self

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def substitute_mobius(self, a, b, c, d) -> "RatFunc":
        """self((a*x+b)/(c*x+d)); degree padding keeps the substitution exact."""
        n = max(self.num.degree, self.den.degree, 0)
        var = self.var
        lin_num = _coerce_poly(a, var) * UniPoly.x(var) + _coerce_poly(b, var)
        lin_den = _coerce_poly(c, var) * UniPoly.x(var) + _coerce_poly(d, var)

        def lift(p: UniPoly) -> UniPoly:
            acc = UniPoly.zero(var)
            for i in range(p.degree + 1):
                ci = p[i]
                if not ci.is_zero():
                    acc = acc + ci * lin_num**i * lin_den ** (n - i)
            return acc

        return RatFunc(lift(self.num), lift(self.den))

    def evaluate(self, value: Coeffish) -> CycloNumber:
        den = self.den.evaluate(value)
        if den.is_zero():
            raise ZeroDivisionError("pole of rational function")
        return self.num.evaluate(value) / den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycloNumber, UniPoly)):
            other = RatFunc.coerce(other, self.var)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def det_square_class_poly(f: RatFunc) -> UniPoly:
    """Polynomial representing the square class of f: numerator * denominator."""
    if f.is_zero():
        raise ValueError("square class of zero")
    return f.num * f.den


def square_class_of_ratfunc(f: RatFunc) -> tuple[UniPoly, CycloNumber, SquareTest]:
    """(monic square-free radical, constant, constant square test) for f mod squares."""
    p = det_square_class_poly(f)
    dec = squarefree_part(p)
    return dec.radical, dec.constant, is_square_constant(dec.constant)
