"""Normalized field arithmetic, constants, p-th roots, lattices."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idalg import polys
from idalg.field import is_constant, lattice_index, make_field, p_root
from idalg.fq import get_field
from idalg.sampling import random_element


@pytest.fixture(scope="module")
def F2():
    return make_field(2, 1, "squares", 12)


@pytest.fixture(scope="module")
def F3():
    return make_field(3, 1, "squares", 12)


@pytest.fixture(scope="module")
def F9():
    return make_field(3, 2, "squares", 12)


class TestPolys:
    def test_gcd_by_multiply_back(self):
        fq = get_field(5, 1)
        rng = random.Random(11)

        def rand_poly():
            return {(rng.randint(0, 3), rng.randint(0, 2)): rng.randint(1, 4)
                    for _ in range(rng.randint(1, 3))}

        for _ in range(40):
            a, b, g = rand_poly(), rand_poly(), rand_poly()
            f1 = polys.pmul(fq, a, g)
            f2 = polys.pmul(fq, b, g)
            h = polys.gcd2(fq, f1, f2)
            # g divides the gcd and the gcd divides both products
            polys.pdivexact(fq, h, polys.gcd2(fq, h, g))
            polys.pdivexact(fq, f1, h)
            polys.pdivexact(fq, f2, h)

    def test_divexact_detects_inexact(self):
        fq = get_field(3, 1)
        f = {(1, 0): 1, (0, 0): 1}
        g = {(1, 0): 1, (0, 0): 2}
        with pytest.raises(ArithmeticError):
            polys.pdivexact(fq, f, g)

    def test_reduce_fraction_power(self):
        fq = get_field(2, 1)
        d = {(1, 0): 1, (0, 0): 1}          # t + 1
        num = polys.ppow(fq, d, 3)          # (t+1)^3
        n, dn = polys.reduce_fraction_power(fq, num, d, 5)
        assert n == polys.ONE
        assert dn == polys.ppow(fq, d, 2)


class TestArith:
    def test_polynomial_identity_cancellation(self, F2):
        t = F2.t()
        one = F2.one()
        lhs = (t * t - one) / (t - one)
        assert lhs == t + one

    def test_self_division(self, F3):
        e = F3.element({(2, 1): 2, (0, 0): 1}, {(1, 0): 1, (0, 1): 2})
        assert (e / e).is_one()

    def test_difference_of_squares_division(self, F3):
        # (t^2 x^2 - t^2) / (tx - t) = tx + t, certified by multiplying back
        t, x = F3.t(), F3.x()
        num = t ** 2 * x ** 2 - t ** 2
        den = t * x - t
        q = num / den
        assert q == t * x + t
        assert q * den == num

    def test_division_by_zero(self, F2):
        with pytest.raises(ZeroDivisionError):
            F2.one() / F2.zero()

    def test_monomial_multiplicativity(self, F3):
        rng = random.Random(5)
        for _ in range(20):
            a1, b1, a2, b2 = (rng.randint(-4, 4) for _ in range(4))
            m1 = F3.monomial(a1, b1)
            m2 = F3.monomial(a2, b2)
            assert m1 * m2 == F3.monomial(a1 + a2, b1 + b2)

    def test_normalization_idempotent(self, F3):
        rng = random.Random(9)
        for _ in range(30):
            e = random_element(F3, rng)
            again = F3.element(dict(e.num), dict(e.den))
            assert again == e

    def test_arith_results_normalized(self, F2):
        rng = random.Random(10)
        for _ in range(30):
            e = random_element(F2, rng) * random_element(F2, rng)
            assert F2.element(dict(e.num), dict(e.den)) == e

    @given(st.integers(-3, 3), st.integers(-2, 2), st.integers(1, 4))
    @settings(max_examples=40, deadline=None)
    def test_pow_matches_repeated_product(self, a, b, e):
        ctx = make_field(3, 1, "squares", 8)
        base = ctx.element({(a, b): 1, (0, 0): 1})
        prod = ctx.one()
        for _ in range(e):
            prod = prod * base
        assert base ** e == prod


class TestConstants:
    def test_scalar_is_constant(self):
        F7 = make_field(7, 1, "squares", 8)
        assert is_constant(F7.from_int(5))

    def test_t_not_constant(self, F2):
        assert not is_constant(F2.t())

    def test_normalizing_quotient_is_constant(self, F3):
        t, x = F3.t(), F3.x()
        assert is_constant((t * x) / (x * t))

    def test_constants_are_exactly_the_scalars(self, F3):
        rng = random.Random(3)
        found = 0
        while found < 100:
            e = random_element(F3, rng)
            if e.support() <= {(0, 0)}:
                continue
            found += 1
            assert not is_constant(e)
        for c in range(F3.q):
            assert is_constant(F3.scalar(c))


class TestPRoot:
    def test_t_power(self, F2):
        assert p_root(F2.monomial(2, 0)) == F2.t()

    def test_x_is_not_a_pth_power(self, F2):
        with pytest.raises(ValueError, match="not a p-th power"):
            p_root(F2.x())

    def test_coefficient_root_in_f9(self, F9):
        # c * t^(2p) -> c^3 * t^2 over GF(9): inverse Frobenius is c -> c^3
        fq = F9.fq
        for c in range(1, 9):
            e = F9.monomial(6, 0, coeff=c)
            r = p_root(e)
            assert r == F9.monomial(2, 0, coeff=fq.pow(c, 3))
            assert fq.pow(fq.pow(c, 3), 3) == c

    def test_root_of_pth_power_roundtrip(self, F3):
        rng = random.Random(4)
        for _ in range(25):
            e = random_element(F3, rng)
            if e.is_zero():
                continue
            assert p_root(e ** 3) == e


class TestLattice:
    def test_membership(self, F2):
        lat = F2.lattice
        assert lat.contains_exponent(F2.exponent(3, -2))
        sub = type(lat)(F2.oracle, 0, 2, 2)  # 2 * (Z + Z alpha)
        assert not sub.contains_exponent(F2.exponent(1, 0))
        assert sub.contains_exponent(F2.exponent(4, 2))

    def test_index_self(self, F2):
        assert lattice_index(F2.lattice, F2.lattice) == 1

    def test_non_containment_rejected(self, F2):
        sub = type(F2.lattice)(F2.oracle, 0, 2, 2)
        with pytest.raises(ValueError):
            lattice_index(F2.lattice, sub)


class TestContext:
    def test_invalid_p(self):
        with pytest.raises(ValueError):
            make_field(6, 1, "squares", 8)

    def test_rank1_has_no_x(self):
        L = make_field(3, 1, None, 8)
        with pytest.raises(ValueError):
            L.x()
        assert L.imperfection_degree == 1

    def test_rank2_imperfection(self, F2):
        assert F2.imperfection_degree == 2

    def test_irrational_claim_validated(self):
        # "ones" is periodic; forcing the irrational flag must be rejected
        from idalg.padic import FunctionOracle
        bad = FunctionOracle(2, 24, lambda i: 1, irrational=True, spec="allones")
        with pytest.raises(ValueError, match="periodic"):
            make_field(2, 1, bad, 8)

    def test_budget_floor_enforced(self):
        with pytest.raises(ValueError, match="budget"):
            make_field(2, 1, "squares", 12, budget=2)

    def test_restrict_to_t(self, F3):
        L = F3.restrict_to_t()
        assert L.rank == 1
        assert (L.t() ** 2 / L.t()) == L.t()
