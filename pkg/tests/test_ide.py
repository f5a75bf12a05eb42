"""Equations theta(y) = Ay: derivation of A, verification, Frobenius level."""

import random

import pytest

from idalg import linalg
from idalg.field import make_field
from idalg.ide import (FundamentalMatrix, IdeMatrix, derive_matrix,
                       frobenius_level, generation_lattice_check,
                       monomial_solution, pullback, verify_ide,
                       verify_solution)
from idalg.linalg import SingularMatrixError
from idalg.padic import lucas_binom
from idalg.sampling import random_element
from idalg.tower import root_extension


@pytest.fixture(scope="module")
def F2():
    return make_field(2, 1, "squares", 20)


@pytest.fixture(scope="module")
def F3():
    return make_field(3, 1, "squares", 12)


def multiplicative_example(ctx, order):
    y = monomial_solution(ctx, 0, 1)  # Y = (x)
    return y, derive_matrix(y, order)


class TestDeriveMatrix:
    def test_coefficients_of_x_equation(self, F3):
        y, a = multiplicative_example(F3, 12)
        alpha = F3.exponent(0, 1)
        for n in range(13):
            c = lucas_binom(alpha, n)
            want = F3.element({(-n, 0): c}) if c else F3.zero()
            assert a[n][0][0] == want

    def test_identity_solution(self, F3):
        y = FundamentalMatrix(F3, linalg.identity(F3, 2))
        a = derive_matrix(y, 6)
        assert linalg.mat_eq(a[0], linalg.identity(F3, 2))
        for k in range(1, 7):
            assert linalg.is_zero_matrix(a[k])

    def test_singular_rejected(self, F3):
        t = F3.t()
        y = FundamentalMatrix(F3, linalg.freeze([[t, t], [t, t]]))
        with pytest.raises(SingularMatrixError):
            derive_matrix(y, 4)


class TestVerifyIde:
    def test_multiplicative_example_full_window(self, F2):
        _, a = multiplicative_example(F2, 20)
        rep = verify_ide(a)
        assert rep.ok
        assert sum(1 for l in rep.lines if l.name.startswith("compat")) == \
            (21 * 22) // 2

    def test_a0_not_identity_flagged(self, F3):
        _, a = multiplicative_example(F3, 6)
        bad0 = linalg.mat_scale(a[0], F3.from_int(2))
        bad = IdeMatrix(F3, (bad0,) + a.coeffs[1:])
        rep = verify_ide(bad)
        assert not rep.lines[0].ok

    def test_perturbation_detected(self, F3):
        _, a = multiplicative_example(F3, 8)
        rows = [list(r) for r in a[1]]
        rows[0][0] = rows[0][0] + F3.one()
        bad = IdeMatrix(F3, (a[0], linalg.freeze(rows)) + a.coeffs[2:])
        rep = verify_ide(bad)
        assert not rep.ok
        assert rep.failures()


class TestVerifySolution:
    def test_derived_pair_agrees(self, F3):
        y, a = multiplicative_example(F3, 10)
        rep = verify_solution(a, y)
        assert rep.solves and rep.iterative and rep.agree

    def test_identity_equation_with_t_fails(self, F3):
        a = derive_matrix(FundamentalMatrix(F3, linalg.identity(F3, 1)), 6)
        y = FundamentalMatrix(F3, linalg.freeze([[F3.t()]]))
        rep = verify_solution(a, y)
        assert not rep.solves
        assert rep.iterative
        assert not rep.agree

    def test_constant_rescaling_still_solves(self, F3):
        y, a = multiplicative_example(F3, 8)
        y2 = FundamentalMatrix(F3, linalg.mat_scale(y.entries, F3.from_int(2)))
        rep = verify_solution(a, y2)
        assert rep.solves and rep.iterative

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_equivalence_on_random_matrices(self, F3, n):
        # for derived pairs, the compatibility condition and entrywise
        # iterativity stand or fall together
        rng = random.Random(50 + n)
        built = 0
        while built < 4:
            rows = [[random_element(F3, rng, max_terms=1, abound=1)
                     for _ in range(n)] for _ in range(n)]
            y = FundamentalMatrix(F3, linalg.freeze(rows))
            try:
                a = derive_matrix(y, 6)
            except SingularMatrixError:
                continue
            built += 1
            assert y.determinant().is_zero() is False
            rep = verify_solution(a, y, 6)
            ide_rep = verify_ide(a, 6)
            assert ide_rep.ok == rep.iterative
            assert rep.agree


class TestFrobeniusLevel:
    def test_generic_solution_is_level_zero(self, F3):
        _, a = multiplicative_example(F3, 8)
        info = frobenius_level(a)
        assert info["level"] == 0  # theta^(1)(x) != 0 since d_0 = 1

    @pytest.mark.parametrize("p,ell", [(2, 1), (2, 2), (3, 1)])
    def test_kernel_power_solutions(self, p, ell):
        ctx = make_field(p, 1, "squares", 12)
        y = monomial_solution(ctx, 0, p ** ell)  # Y = (x^(p^ell))
        a = derive_matrix(y, 12)
        info = frobenius_level(a)
        assert info["level"] >= ell
        assert info["entries_in_kernel_field"]

    def test_identity_is_capped_sentinel(self, F2):
        a = derive_matrix(FundamentalMatrix(F2, linalg.identity(F2, 2)), 16)
        info = frobenius_level(a)
        assert info["capped"]
        assert info["level"] == 4  # 2^4 = 16 <= order


class TestPullback:
    @pytest.mark.parametrize("p", [2, 3])
    def test_level_one_roundtrip(self, p):
        # entries of Y in the level-1 kernel: entrywise p-th roots solve the
        # root-field equation built from the surviving coefficients
        ctx = make_field(p, 1, "squares", 12)
        y = monomial_solution(ctx, 0, p)
        a = derive_matrix(y, 12)
        tl = root_extension(ctx, 1)
        a2, y2 = pullback(a, y, tl)
        assert y2.entries[0][0] == tl.ctx.x()
        rep = verify_solution(a2, y2)
        assert rep.solves and rep.iterative

    def test_wrong_level_rejected(self, F3):
        y, a = multiplicative_example(F3, 6)
        tl = root_extension(F3, 1)
        with pytest.raises(ValueError, match="level"):
            pullback(a, y, tl)


class TestGeneration:
    def test_multiplicative_solution_generates(self, F3):
        y, _ = multiplicative_example(F3, 4)
        assert generation_lattice_check(y)

    def test_kernel_power_does_not_generate(self, F2):
        y = monomial_solution(F2, 0, 2)
        assert not generation_lattice_check(y)

    def test_rank1(self):
        L = make_field(5, 1, None, 8)
        y = monomial_solution(L, 1, 0)
        assert generation_lattice_check(y)
