"""Kernel subfields, root extensions, lattice indices, the L_1 = L^p test."""

import pytest

from idalg.derivation import theta_series
from idalg.field import lattice_index, make_field
from idalg.tower import (in_kernel_subfield, kernel_field_is_pth_powers,
                         kernel_lattice, pth_power_lattice, root_extension,
                         tower_level, tower_report)


@pytest.fixture(scope="module")
def F2():
    return make_field(2, 1, "squares", 12)


@pytest.fixture(scope="module")
def F3():
    return make_field(3, 1, "squares", 12)


class TestKernelMembership:
    @pytest.mark.parametrize("ell", [0, 1, 2, 3])
    def test_t_power_is_member(self, F2, ell):
        assert in_kernel_subfield(F2.monomial(2 ** ell, 0), ell)

    def test_t_is_not_member(self, F2):
        assert not in_kernel_subfield(F2.t(), 1)
        assert not in_kernel_subfield(F2.t(), 3)

    @pytest.mark.parametrize("p,ell", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_x_shifted_by_prefix(self, p, ell):
        # x * t^(-alpha_ell) = t^(alpha - alpha_ell) has vanishing low digits
        ctx = make_field(p, 1, "squares", 12)
        tl = tower_level(ctx, ell)
        member = ctx.monomial(-tl.alpha_prefix, 1)
        assert in_kernel_subfield(member, ell)
        if tl.alpha_prefix:
            assert not in_kernel_subfield(ctx.x(), ell)

    def test_membership_matches_lattice(self, F2):
        # monomial members are exactly the lattice points
        for ell in (1, 2):
            lat = kernel_lattice(F2, ell)
            for a in range(-4, 5):
                for b in range(-2, 3):
                    m = F2.monomial(a, b)
                    assert in_kernel_subfield(m, ell) == \
                        lat.contains_exponent(F2.exponent(a, b))

    def test_budget_precondition(self, F2):
        with pytest.raises(ValueError, match="truncation"):
            in_kernel_subfield(F2.t(), 5)  # needs order 16 > 12


class TestLatticeIndices:
    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_index_of_kernel_field(self, p, ell):
        ctx = make_field(p, 1, "squares", 12)
        assert lattice_index(kernel_lattice(ctx, ell), ctx.lattice) == p ** ell

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_index_of_root_extension(self, p, ell):
        ctx = make_field(p, 1, "squares", 12)
        tl = root_extension(ctx, ell)
        assert lattice_index(ctx.lattice, tl.root_lattice) == p ** ell

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("ell", [0, 1, 2])
    def test_single_step_has_index_p(self, p, ell):
        ctx = make_field(p, 1, "squares", 12)
        sub = kernel_lattice(ctx, ell + 1)
        sup = kernel_lattice(ctx, ell)
        assert lattice_index(sub, sup) == p

    def test_multiplicativity(self, F2):
        l1 = kernel_lattice(F2, 1)
        l3 = kernel_lattice(F2, 3)
        direct = lattice_index(l3, F2.lattice)
        composed = lattice_index(l3, l1) * lattice_index(l1, F2.lattice)
        assert direct == composed == 8

    def test_rank1_tower(self):
        L = make_field(3, 1, None, 12)
        assert lattice_index(kernel_lattice(L, 2), L.lattice) == 9
        tl = root_extension(L, 2)
        assert tl.ctx is L
        assert lattice_index(L.lattice, tl.root_lattice) == 1


class TestRootExtension:
    def test_level_zero_is_identity(self, F2):
        tl = root_extension(F2, 0)
        assert tl.ctx is F2
        e = F2.element({(1, 1): 1, (0, 0): 1})
        assert tl.embed(e) == e

    @pytest.mark.parametrize("p,ell", [(2, 1), (2, 2), (3, 1)])
    def test_embedding_is_a_field_hom(self, p, ell):
        ctx = make_field(p, 1, "squares", 12)
        tl = root_extension(ctx, ell)
        e1 = ctx.element({(1, 1): 1, (0, 0): 1})
        e2 = ctx.element({(-1, 0): 1}, {(0, 1): 1, (1, 0): p - 1})
        assert tl.embed(e1 * e2) == tl.embed(e1) * tl.embed(e2)
        assert tl.embed(e1 + e2) == tl.embed(e1) + tl.embed(e2)

    @pytest.mark.parametrize("p,ell", [(2, 1), (2, 2), (3, 1)])
    def test_embedded_theta_matches(self, p, ell):
        # theta commutes with the embedding, coefficient by coefficient
        ctx = make_field(p, 1, "squares", 12)
        tl = root_extension(ctx, ell)
        for e in [ctx.x(), ctx.t() + ctx.x(),
                  ctx.element({(0, 1): 1}, {(1, 0): 1, (0, 0): 1})]:
            ts = theta_series(e, 8)
            ts_emb = theta_series(tl.embed(e), 8)
            for n in range(9):
                assert tl.embed(ts[n]) == ts_emb[n]

    def test_root_of_kernel_element(self, F2):
        tl = root_extension(F2, 1)
        z = F2.monomial(2, 2)  # (t x)^2, in the level-1 kernel
        r = tl.root_of_kernel_element(z)
        assert r == tl.embed(F2.monomial(1, 1))

    def test_tower_consistency(self, F2):
        # the root extension of the root extension continues the digit shift
        tl1 = root_extension(F2, 1)
        tl2 = root_extension(tl1.ctx, 1)
        direct = root_extension(F2, 2)
        assert tl2.ctx.oracle.key == direct.ctx.oracle.key
        n = min(tl2.ctx.oracle.budget, direct.ctx.oracle.budget, 8)
        assert [tl2.ctx.oracle.digit(i) for i in range(n)] == \
               [direct.ctx.oracle.digit(i) for i in range(n)]


class TestL1Criterion:
    def test_rational_field_satisfies_it(self):
        for p in (2, 3, 5):
            L = make_field(p, 1, None, 8)
            assert kernel_field_is_pth_powers(L)

    def test_parameter_field_does_not(self):
        for p in (2, 3):
            F = make_field(p, 1, "squares", 8)
            assert not kernel_field_is_pth_powers(F)

    def test_why_it_fails(self, F2):
        # the kernel lattice contains alpha - alpha_1, the p-th powers do not
        tl = tower_level(F2, 1)
        beta = F2.exponent(-tl.alpha_prefix, 1)
        assert kernel_lattice(F2, 1).contains_exponent(beta)
        assert not pth_power_lattice(F2).contains_exponent(beta)


class TestReport:
    def test_tower_report_shape(self, F2):
        rep = tower_report(F2, 3)
        assert rep["level"] == 3
        assert rep["index_F_over_Fell"] == 8
        assert rep["index_Fbracket_over_F"] == 8
        assert rep["alpha_ell"] == 3  # digits 1,1,0 -> 1 + 2
        assert rep["gamma_digits_prefix"][:3] == [0, 1, 0]  # squares shifted by 3
