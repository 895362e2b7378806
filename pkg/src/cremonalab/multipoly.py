"""Sparse multivariate polynomials over Q(zeta_N).

Terms map exponent tuples to nonzero coefficients.  The monomial order used
for leading terms and canonical scaling is lexicographic on exponent tuples,
which is stable across runs.  The gcd is computed by recursive
content/primitive-part Euclid, adequate for the small degrees in scope.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .cyclo import CycloNumber

Coeffish = Union[int, Fraction, CycloNumber]


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], Coeffish] = ()):
        self.vars = tuple(vars)
        clean: dict[tuple[int, ...], CycloNumber] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for expo, c in items:
            c = CycloNumber.coerce(c)
            if c.is_zero():
                continue
            expo = tuple(expo)
            if len(expo) != len(self.vars):
                raise ValueError("exponent arity does not match variable roster")
            if expo in clean:
                s = clean[expo] + c
                if s.is_zero():
                    del clean[expo]
                else:
                    clean[expo] = s
            else:
                clean[expo] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(vars: Sequence[str]) -> "MultiPoly":
        return MultiPoly(vars)

    @staticmethod
    def constant(vars: Sequence[str], c: Coeffish) -> "MultiPoly":
        return MultiPoly(vars, {tuple([0] * len(vars)): c})

    @staticmethod
    def variable(vars: Sequence[str], name: str) -> "MultiPoly":
        idx = list(vars).index(name)
        expo = [0] * len(vars)
        expo[idx] = 1
        return MultiPoly(vars, {tuple(expo): 1})

    @staticmethod
    def monomial(vars: Sequence[str], expo: Sequence[int], c: Coeffish = 1) -> "MultiPoly":
        return MultiPoly(vars, {tuple(expo): c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_value(self) -> CycloNumber:
        if self.is_zero():
            return CycloNumber.from_rational(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if self.is_zero():
            return -1
        return max(sum(w * e for w, e in zip(weights, expo)) for expo in self.terms)

    def is_weighted_homogeneous(self, weights: Sequence[int]) -> bool:
        if self.is_zero():
            return True
        degs = {sum(w * e for w, e in zip(weights, expo)) for expo in self.terms}
        return len(degs) == 1

    def degree_in(self, var: str) -> int:
        if self.is_zero():
            return -1
        i = self.vars.index(var)
        return max(expo[i] for expo in self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def leading_coeff(self) -> CycloNumber:
        return self.terms[self.leading_monomial()]

    def coeff(self, expo: Sequence[int]) -> CycloNumber:
        return self.terms.get(tuple(expo), CycloNumber.from_rational(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycloNumber]]:
        return sorted(self.terms.items(), reverse=True)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other: Union[Coeffish, "MultiPoly"]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable roster mismatch: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.constant(self.vars, other)

    def __add__(self, other: Union[Coeffish, "MultiPoly"]) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            if expo in out:
                s = out[expo] + c
                if s.is_zero():
                    del out[expo]
                else:
                    out[expo] = s
            else:
                out[expo] = c
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: Union[Coeffish, "MultiPoly"]) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union[Coeffish, "MultiPoly"]) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union[Coeffish, "MultiPoly"]) -> "MultiPoly":
        other = self._coerce(other)
        out: dict[tuple[int, ...], CycloNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if expo in out:
                    s = out[expo] + c
                    if s.is_zero():
                        del out[expo]
                    else:
                        out[expo] = s
                else:
                    out[expo] = c
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of polynomial")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Coeffish) -> "MultiPoly":
        c = CycloNumber.coerce(c)
        if c.is_zero():
            return MultiPoly.zero(self.vars)
        p = MultiPoly.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = {e: v * c for e, v in self.terms.items()}
        return p

    # -- substitution and evaluation ----------------------------------------

    def subs(self, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials (over a common target roster) for variables."""
        target_vars: Optional[tuple[str, ...]] = None
        for img in images.values():
            target_vars = img.vars
            break
        if target_vars is None:
            target_vars = self.vars
        # Power tables, one per substituted variable.
        powers: dict[str, list[MultiPoly]] = {}
        for name in self.vars:
            if name in images:
                powers[name] = [MultiPoly.constant(target_vars, 1)]
        result = MultiPoly.zero(target_vars)
        for expo, c in self.terms.items():
            term = MultiPoly.constant(target_vars, c)
            for i, e in enumerate(expo):
                if e == 0:
                    continue
                name = self.vars[i]
                if name in images:
                    table = powers[name]
                    while len(table) <= e:
                        table.append(table[-1] * images[name])
                    term = term * table[e]
                else:
                    if name not in target_vars:
                        raise ValueError(f"no image for variable {name}")
                    term = term * MultiPoly.variable(target_vars, name) ** e
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Coeffish]) -> CycloNumber:
        acc = CycloNumber.from_rational(0)
        vals = [CycloNumber.coerce(values[v]) for v in self.vars]
        for expo, c in self.terms.items():
            t = c
            for v, e in zip(vals, expo):
                if e:
                    t = t * v**e
            acc = acc + t
        return acc

    # -- division and gcd --------------------------------------------------

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient; raises if the division leaves a remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.scale(other.constant_value().inverse())
        rem = self
        quo = MultiPoly.zero(self.vars)
        lt = other.leading_monomial()
        lc_inv = other.terms[lt].inverse()
        while not rem.is_zero():
            rm = rem.leading_monomial()
            diff = tuple(a - b for a, b in zip(rm, lt))
            if any(d < 0 for d in diff):
                raise ValueError("inexact multivariate division")
            c = rem.terms[rm] * lc_inv
            mono = MultiPoly.monomial(self.vars, diff, c)
            quo = quo + mono
            rem = rem - mono * other
        return quo

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    def as_univariate(self, var: str) -> list["MultiPoly"]:
        """Coefficient list in var, entries over the full roster with var absent."""
        i = self.vars.index(var)
        deg = self.degree_in(var)
        out = [MultiPoly.zero(self.vars) for _ in range(max(deg + 1, 1))]
        for expo, c in self.terms.items():
            e = expo[i]
            rest = list(expo)
            rest[i] = 0
            out[e] = out[e] + MultiPoly.monomial(self.vars, rest, c)
        return out

    def _used_vars(self) -> list[str]:
        used = []
        for i, name in enumerate(self.vars):
            if any(expo[i] for expo in self.terms):
                used.append(name)
        return used

    def normalized(self) -> "MultiPoly":
        """Scale so the lexicographic leading coefficient is one."""
        if self.is_zero():
            return self
        return self.scale(self.leading_coeff().inverse())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset((e, c) for e, c in self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for expo, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.vars, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = str(c)
            wrapped = f"({cs})" if ("+" in cs[1:] or "-" in cs[1:] or "*" in cs) else cs
            if not factors:
                parts.append(wrapped)
            elif c.is_one():
                parts.append("*".join(factors))
            elif (-c).is_one():
                parts.append("-" + "*".join(factors))
            else:
                parts.append(wrapped + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def multi_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Gcd normalized to leading coefficient one; gcd(0, 0) = 0."""
    if a.vars != b.vars:
        raise ValueError("variable roster mismatch in gcd")
    if a.is_zero():
        return b.normalized() if not b.is_zero() else b
    if b.is_zero():
        return a.normalized()
    g = _gcd_rec(a, b)
    return g.normalized()


def _gcd_rec(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(a.vars, 1)
    used = a._used_vars() or b._used_vars()
    var = used[0] if used else a.vars[0]
    if a.degree_in(var) < 0 or b.degree_in(var) < 0:
        # var appears in only one of them; gcd has no var dependence.
        ca = _content(a, var)
        cb = _content(b, var)
        return _gcd_rec(ca, cb)
    ca, pa = _content_pp(a, var)
    cb, pb = _content_pp(b, var)
    cont = _gcd_rec(ca, cb)
    # Primitive-part Euclid with pseudo-remainders.
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, var)
        pa, pb = pb, _primitive(r, var)
    return cont * pa


def _content(p: MultiPoly, var: str) -> MultiPoly:
    coeffs = [c for c in p.as_univariate(var) if not c.is_zero()]
    g = MultiPoly.zero(p.vars)
    for c in coeffs:
        g = _gcd_rec(g, c)
        if g.is_constant() and not g.is_zero():
            return MultiPoly.constant(p.vars, 1)
    return g if not g.is_zero() else MultiPoly.constant(p.vars, 1)


def _content_pp(p: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    cont = _content(p, var)
    return cont, p.exact_div(cont)


def _primitive(p: MultiPoly, var: str) -> MultiPoly:
    if p.is_zero():
        return p
    return p.exact_div(_content(p, var))


def _pseudo_rem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    da = a.degree_in(var)
    db = b.degree_in(var)
    if da < db:
        return a
    b_coeffs = b.as_univariate(var)
    lead_b = b_coeffs[db]
    xv = MultiPoly.variable(a.vars, var)
    rem = a
    while not rem.is_zero():
        dr = rem.degree_in(var)
        if dr < db:
            break
        lead_r = rem.as_univariate(var)[dr]
        rem = rem * lead_b - b * lead_r * xv ** (dr - db)
    return rem


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    it = iter(polys)
    try:
        g = next(it)
    except StopIteration:
        raise ValueError("gcd of empty collection")
    g = g.normalized() if not g.is_zero() else g
    for p in it:
        g = multi_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g
