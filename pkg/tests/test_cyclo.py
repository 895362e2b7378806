import random
from fractions import Fraction

import pytest

from cremonalab.cyclo import (
    CycloNumber,
    cyclo_reduce,
    cyclotomic_polynomial,
    euler_phi,
    is_square_constant,
)


def test_cyclo_reduce():
    # zeta_4^2 = -1
    assert cyclo_reduce([0, 0, 1], 4) == -1
    # zeta_3^2 + zeta_3 + 1 = 0
    assert cyclo_reduce([1, 1, 1], 3).is_zero()
    # zeta_8^2 stays the element representing i
    assert cyclo_reduce([0, 0, 1], 8) == CycloNumber.zeta(4)
    assert cyclo_reduce([], 5).is_zero()


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_reduction_examples():
    z4 = CycloNumber.zeta(4)
    assert z4 * z4 == -1
    z3 = CycloNumber.zeta(3)
    assert z3 * z3 + z3 + 1 == 0
    z8 = CycloNumber.zeta(8)
    assert z8**2 == CycloNumber.zeta(4)
    assert CycloNumber.zeta(6) == -CycloNumber.zeta(3) ** 2


def test_zeta_n_is_nth_root():
    for n in (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 24):
        z = CycloNumber.zeta(n)
        assert z**n == 1
        if n > 1:
            assert z != 1


def _random_element(rng, n):
    deg = euler_phi(n)
    return CycloNumber(
        n, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg))
    )


def test_field_axioms_randomized():
    rng = random.Random(20240811)
    for n in (4, 3, 8, 12):
        for _ in range(40):
            a, b, c = (_random_element(rng, n) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            if not a.is_zero():
                assert a * a.inverse() == 1


def test_mixed_conductor_promotion():
    z3 = CycloNumber.zeta(3)
    z4 = CycloNumber.zeta(4)
    prod = z3 * z4
    assert prod.n == 12
    assert prod == CycloNumber.zeta(12) ** 7  # zeta12^4 = zeta3, zeta12^3 = zeta4


def test_deflation():
    z8 = CycloNumber.zeta(8)
    assert (z8**2).deflate().n == 4
    assert (z8**4).deflate().n == 1
    assert (z8 + 1).deflate().n == 8
    # deflation is stable under representation
    a = CycloNumber.zeta(12) ** 4  # = zeta3
    assert a.deflate() == CycloNumber.zeta(3)
    assert hash(a) == hash(CycloNumber.zeta(3))


def test_square_constants_rational():
    four = CycloNumber.from_rational(4)
    t = is_square_constant(four)
    assert t.status == "square" and t.root == 2
    assert is_square_constant(CycloNumber.from_rational(2)).status == "nonsquare"
    assert is_square_constant(CycloNumber.from_rational(Fraction(9, 4))).root == Fraction(3, 2)
    with pytest.raises(ValueError):
        is_square_constant(CycloNumber.from_rational(0))


def test_square_constants_gaussian():
    i = CycloNumber.zeta(4)
    t = is_square_constant(2 * i)
    assert t.status == "square" and t.root == 1 + i
    assert is_square_constant(-CycloNumber.from_rational(1), 4).root == i
    assert is_square_constant(CycloNumber.from_rational(2), 4).status == "nonsquare"
    t = is_square_constant(3 + 4 * i)
    assert t.status == "square" and t.root * t.root == 3 + 4 * i


def test_square_constants_eisenstein():
    w = CycloNumber.zeta(3)
    t = is_square_constant(CycloNumber.from_rational(-3), 3)
    assert t.status == "square" and t.root * t.root == -3
    t = is_square_constant(w)
    assert t.status == "square" and t.root * t.root == w
    assert is_square_constant(CycloNumber.from_rational(5), 3).status == "nonsquare"


def test_square_constants_indeterminate_and_field_dependence():
    z8 = CycloNumber.zeta(8)
    assert is_square_constant(z8 + 1).status == "indeterminate"
    # 2 is a square in Q(zeta_8) but the library will not claim either way
    assert is_square_constant(CycloNumber.from_rational(2), 8).status == "indeterminate"
    # 4 stays recognizable in any field
    assert is_square_constant(CycloNumber.from_rational(4), 8).status == "square"
    # -1 depends on the field
    assert is_square_constant(CycloNumber.from_rational(-1)).status == "nonsquare"
    assert is_square_constant(CycloNumber.from_rational(-1), 4).status == "square"


def test_square_randomized_roundtrip():
    rng = random.Random(7)
    for n in (1, 3, 4):
        for _ in range(30):
            a = _random_element(rng, n)
            if a.is_zero():
                continue
            sq = a * a
            t = is_square_constant(sq, n if n > 1 else None)
            assert t.status == "square"
            assert t.root * t.root == sq
