import random

import pytest

from gammadepth.ring import (
    LinearChange,
    LinearForm,
    PolynomialSyntaxError,
    Ring,
    change_sending_form_to_last_variable,
    drop_last_variable,
    format_polynomial,
    grevlex_key,
    invert_matrix,
    matrix_rank,
    monomial_cmp,
    parse_polynomial,
)


@pytest.fixture
def R2():
    return Ring(2, 32003)


@pytest.fixture
def R3():
    return Ring(3, 32003)


class TestMonomialOrder:
    def test_degree_dominates(self):
        assert monomial_cmp((2, 0, 0), (1, 1, 1)) < 0

    def test_degrevlex_tiebreak(self):
        # x1 x3 < x2^2 in degrevlex (last exponent of the difference is positive)
        assert monomial_cmp((1, 0, 1), (0, 2, 0)) < 0
        assert monomial_cmp((1, 1, 0), (1, 0, 1)) > 0

    def test_key_consistent_with_cmp(self):
        rng = random.Random(0)
        for _ in range(200):
            a = tuple(rng.randint(0, 4) for _ in range(3))
            b = tuple(rng.randint(0, 4) for _ in range(3))
            c = monomial_cmp(a, b)
            if c < 0:
                assert grevlex_key(a) < grevlex_key(b)
            elif c > 0:
                assert grevlex_key(a) > grevlex_key(b)
            else:
                assert a == b


class TestArithmetic:
    def test_add_mul(self, R2):
        x, y = R2.variable(0), R2.variable(1)
        f = (x + y) * (x - y)
        assert f == x * x - y * y

    def test_char_p(self, R2):
        f = R2.constant(32003)
        assert f.is_zero()

    def test_homogeneous_degree(self, R3):
        f = R3.variable(0) * R3.variable(1) + R3.variable(2) * R3.variable(2)
        assert f.is_homogeneous() and f.degree() == 2

    def test_random_polynomial_dense_homogeneous(self, R3):
        rng = random.Random(5)
        f = R3.random_polynomial(3, rng)
        assert f.is_homogeneous() and f.degree() == 3


class TestParsing:
    def test_basic(self, R2):
        f = parse_polynomial(R2, "x1^2 + 2x1x2 - x2^2")
        x, y = R2.variable(0), R2.variable(1)
        assert f == x * x + (x * y) * 2 - y * y

    def test_roundtrip(self, R3):
        rng = random.Random(11)
        for _ in range(20):
            f = R3.random_polynomial(rng.randint(1, 4), rng)
            assert parse_polynomial(R3, format_polynomial(f)) == f

    def test_double_caret_positioned_error(self, R2):
        with pytest.raises(PolynomialSyntaxError) as exc:
            parse_polynomial(R2, "x1^^2")
        assert exc.value.position is not None

    def test_unknown_variable(self, R2):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(R2, "x3 + x1")

    def test_aliases_only_when_enabled(self, R2):
        assert parse_polynomial(R2, "x + y", aliases=True) == \
            R2.variable(0) + R2.variable(1)
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(R2, "x + y")


class TestLinearAlgebra:
    def test_invert_matrix(self):
        p = 32003
        m = [(1, 2), (3, 4)]
        inv = invert_matrix(m, p)
        # m * inv == identity
        for i in range(2):
            for j in range(2):
                s = sum(m[i][k] * inv[k][j] for k in range(2)) % p
                assert s == (1 if i == j else 0)

    def test_singular(self):
        assert invert_matrix([(1, 2), (2, 4)], 32003) is None

    def test_rank(self):
        assert matrix_rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]], 32003) == 2


class TestLinearChange:
    def test_apply_invertible(self, R2):
        change = LinearChange(R2, ((1, 1), (0, 1)))
        f = parse_polynomial(R2, "x1^2 + x2^2")
        g = change.inverted().apply(change.apply(f))
        assert g == f

    def test_form_to_last_variable(self, R3):
        rng = random.Random(3)
        for _ in range(10):
            z = LinearForm.random(R3, rng)
            change = change_sending_form_to_last_variable(z)
            image = change.apply(z.polynomial())
            assert image == R3.variable(2)

    def test_drop_last_variable(self, R2):
        f = parse_polynomial(R2, "x1^2 + x1x2 + x2^2")
        g = drop_last_variable(f, Ring(1, 32003))
        assert format_polynomial(g) == "x1^2"
