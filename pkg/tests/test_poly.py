import random

import pytest

from liesplit import QQ, Polynomial


def x_y(n=2):
    return Polynomial.variable(n, 0), Polynomial.variable(n, 1)


def random_poly(rng, nvars, max_terms=6, max_exp=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = bytes(rng.randint(0, max_exp) for _ in range(nvars))
        terms[e] = QQ(rng.randint(-9, 9), rng.randint(1, 9))
    return Polynomial(nvars, terms)


def test_difference_of_squares():
    x, y = x_y()
    assert (x + y) * (x - y) == x * x - y * y


def test_scale_by_zero_empties_term_map():
    x, y = x_y()
    p = (x + y) * (x - y)
    z = p.scale(0)
    assert z.terms == {}
    assert z.is_zero()
    assert z.degree() is None


def test_binomial_square():
    x, y = x_y()
    assert (x + y) ** 2 == x**2 + 2 * x * y + y**2


def test_diff_power_rule():
    x, y = x_y()
    assert (x**2 * y).diff(0) == 2 * x * y


def test_eval_direct_substitution():
    x, y = x_y()
    assert (x**2 + y).eval((2, 3)) == QQ(7)


def test_diff_constant_is_zero():
    c = Polynomial.constant(3, QQ(5, 2))
    for v in range(3):
        assert c.diff(v).is_zero()


def test_variable_count_mismatch_raises():
    with pytest.raises(ValueError):
        Polynomial.variable(2, 0) * Polynomial.variable(3, 0)
    with pytest.raises(ValueError):
        Polynomial.variable(2, 0).eval((1,))
    with pytest.raises(ValueError):
        Polynomial.variable(2, 0).diff(5)


def test_leibniz_rule_on_random_polynomials():
    rng = random.Random(20240)
    for _ in range(40):
        n = rng.randint(1, 4)
        p = random_poly(rng, n)
        q = random_poly(rng, n)
        v = rng.randrange(n)
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


def test_central_difference_telescoping_degree_three():
    # For deg <= 3 the Taylor expansion terminates:
    # (P(x+e) - P(x-e))/2 == dP(x) + dddP(x)/6, exactly.
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 3)
        p = random_poly(rng, n, max_terms=5, max_exp=3)
        p = Polynomial(
            n, {e: c for e, c in p.terms.items() if sum(e) <= 3}
        )
        v = rng.randrange(n)
        x = [QQ(rng.randint(-5, 5)) for _ in range(n)]
        up = list(x)
        dn = list(x)
        up[v] = up[v] + 1
        dn[v] = dn[v] - 1
        central = (p.eval(up) - p.eval(dn)) / 2
        d1 = p.diff(v)
        d3 = d1.diff(v).diff(v)
        assert central == d1.eval(x) + d3.eval(x) / 6


def test_homogeneous_components_sum_back():
    rng = random.Random(99)
    p = random_poly(rng, 3, max_terms=8)
    parts = p.homogeneous_components()
    total = Polynomial.zero(3)
    for d, comp in parts.items():
        assert comp.is_homogeneous()
        assert comp.degree() == d
        total = total + comp
    assert total == p


def test_map_vars_linear_change():
    x, y = x_y()
    p = x**2 + y
    # x -> u + v, y -> 2v over a 2-variable target space
    u = Polynomial.variable(2, 0)
    v = Polynomial.variable(2, 1)
    q = p.map_vars([u + v, 2 * v], 2)
    assert q == u**2 + 2 * u * v + v**2 + 2 * v


def test_lift_and_restrict_round_trip():
    x, y = x_y()
    p = x**2 * y + 3 * x
    lifted = p.lift(5, offset=2)
    assert lifted.nvars == 5
    assert lifted.restrict_vars([2, 3]) == p
    with pytest.raises(ValueError):
        lifted.restrict_vars([2])


def test_canonical_identifies_scalar_multiples():
    x, y = x_y()
    p = 2 * x * y + 4 * x
    q = QQ(-3, 7) * p
    assert p.canonical()[0] == q.canonical()[0]


def test_power_zero_is_one():
    x, _ = x_y()
    assert x**0 == Polynomial.constant(2, 1)
