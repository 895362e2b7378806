import random

import pytest

from cremonalab.cyclo import CycloNumber
from cremonalab.multipoly import MultiPoly, gcd_many, multi_gcd

VARS = ("x", "y", "z")


def _vars():
    return tuple(MultiPoly.variable(VARS, v) for v in VARS)


def test_basic_arithmetic():
    x, y, z = _vars()
    p = (x + y) * (x - y)
    assert p == x**2 - y**2
    assert (p - p).is_zero()
    assert p.total_degree() == 2
    assert (x * y * z).coeff((1, 1, 1)) == 1


def test_weighted_homogeneity():
    w, x, y, z = (MultiPoly.variable(("w", "x", "y", "z"), n) for n in ("w", "x", "y", "z"))
    surface = w**2 - (z**3 + x**4 * z + y**6)
    assert surface.is_weighted_homogeneous((3, 1, 1, 2))
    assert surface.weighted_degree((3, 1, 1, 2)) == 6
    assert not (w + x).is_weighted_homogeneous((3, 1, 1, 2))


def test_substitution():
    x, y, z = _vars()
    f = x**2 + y * z
    g = f.subs({"x": y, "y": z, "z": x})
    assert g == y**2 + z * x
    # substitution composes
    h = g.subs({"x": y, "y": z, "z": x})
    assert h == z**2 + x * y


def test_exact_division_and_gcd():
    x, y, z = _vars()
    p = (x + y) * (y + z) ** 2
    assert p.exact_div(y + z) == (x + y) * (y + z)
    with pytest.raises(ValueError):
        (x**2 + y).exact_div(x + y)
    g = multi_gcd((x + y) * (x + z), (x + y) * (y + z))
    assert g == (x + y).normalized()
    assert gcd_many([x * y, x * z, x * (y + z)]) == x.normalized()
    assert multi_gcd(MultiPoly.zero(VARS), x * y) == (x * y).normalized()


def test_gcd_randomized_products():
    rng = random.Random(17)
    x, y, z = _vars()
    lin = [x + y, x - y, y + z, x + z, x + y + z]
    for _ in range(25):
        common = lin[rng.randrange(len(lin))]
        a = common * lin[rng.randrange(len(lin))]
        b = common * lin[rng.randrange(len(lin))]
        g = multi_gcd(a, b)
        assert g.divides(a) and g.divides(b)
        assert common.divides(g)


def test_gcd_with_cyclotomic_coefficients():
    x, y, z = _vars()
    i = CycloNumber.zeta(4)
    a = (x + y.scale(i)) * (x - y)
    b = (x + y.scale(i)) * (y + z)
    assert multi_gcd(a, b) == (x + y.scale(i)).normalized()


def test_evaluation():
    x, y, z = _vars()
    f = x**3 + 2 * y - z
    assert f.evaluate({"x": 2, "y": 3, "z": 1}) == 13
    i = CycloNumber.zeta(4)
    assert (x**2).evaluate({"x": i, "y": 0, "z": 0}) == -1


def test_string_forms_are_deterministic():
    x, y, z = _vars()
    f = x * y - z**2 + 3
    assert str(f) == str(x * y - z**2 + 3)
