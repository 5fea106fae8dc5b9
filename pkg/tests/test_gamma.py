import math
import random

import pytest

from gammadepth.ring import LinearForm, Ring, parse_polynomial
from gammadepth.modules import (
    FreeModule,
    PresentedModule,
    minimal_generators,
    presented_from_submodule,
    submodule_from_polys,
)
from gammadepth.resolution import betti_table
from gammadepth.gamma import (
    alpha,
    beta1,
    cd_invariant,
    cmod,
    cmod_component,
    component_of_presented,
    delta_invariant,
    gamma_depth,
    gamma_m_dims,
    is_componentwise_linear,
    is_gamma_regular,
    is_gamma_sequence,
    is_hat_gamma_regular,
    reduce_mod_linear,
    socle_dims,
    splitting_audit,
    syz1_data,
    transport_form,
    truncate_ge,
    verify_main_theorem,
)
from gammadepth.families import power_of_m, random_ideal, rm_ord_example

from oracles import dense_colon_dim

P = 32003


def ideal(ring, *texts):
    return submodule_from_polys(ring, [parse_polynomial(ring, t) for t in texts])


def quotient(ring, *texts):
    return PresentedModule.quotient_by_ideal(ideal(ring, *texts))


@pytest.fixture
def R2():
    return Ring(2, P)


@pytest.fixture
def rm_ord():
    return rm_ord_example()[0]


class TestSocleGamma:
    def test_socle_rm_ord(self, rm_ord):
        assert socle_dims(rm_ord) == {1: 1, 2: 1}

    def test_socle_free(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (0,)))
        assert socle_dims(M) == {}

    def test_socle_residue_field_shift(self, R2):
        # k(-5) = (R/m)(-5)
        F = FreeModule(R2, (5,))
        gens = [F.gen(0).mul_poly(R2.variable(i)) for i in range(2)]
        from gammadepth.modules import Submodule
        M = PresentedModule(F, Submodule(F, gens))
        assert socle_dims(M) == {5: 1}

    def test_gamma_m_finite_length_module(self, rm_ord):
        assert gamma_m_dims(rm_ord) == {0: 1, 1: 2, 2: 1}

    def test_gamma_m_xm(self, R2):
        M = quotient(R2, "x1^2", "x1x2")
        assert gamma_m_dims(M) == {1: 1}

    def test_gamma_m_torsion_free(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (2,)))
        assert gamma_m_dims(M) == {}

    def test_socle_top_betti_duality(self, rm_ord):
        bt = betti_table(rm_ord)
        soc = socle_dims(rm_ord)
        n = 2
        js = {j for (i, j) in bt.entries if i == n} | {s + n for s in soc}
        for j in js:
            assert bt.beta(n, j) == soc.get(j - n, 0)


class TestAlpha:
    def test_values(self, rm_ord, R2):
        assert alpha(rm_ord, LinearForm(R2, (0, 1))) == 2
        assert alpha(rm_ord, LinearForm(R2, (1, 0))) == 3

    def test_free_module(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (0,)))
        assert alpha(M, LinearForm(R2, (1, 1))) == 0

    def test_infinite_flagged(self, R2):
        # M = R/(x): multiplication by x is zero on M, so 0 : x is all of M
        M = quotient(R2, "x1")
        assert alpha(M, LinearForm(R2, (1, 0))) == math.inf

    def test_alpha_against_dense_oracle(self):
        R = Ring(2, P)
        rng = random.Random(41)
        for _ in range(5)  :
            I = random_ideal(2, rng, max_gens=3, max_degree=3)
            z = LinearForm.random(R, rng)
            M = PresentedModule.quotient_by_ideal(I)
            a = alpha(M, z)
            if a == math.inf:
                continue
            F, U = syz1_data(M)
            total = 0
            for d in range(0, 10):
                udim = U.dim_at(d)
                total += dense_colon_dim(U, z, d) - udim
            assert a == total


class TestComponents:
    def test_ideal_component(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        assert I.component_submodule(2).equals(ideal(R2, "x1^2", "x1x2"))
        assert I.component_submodule(3).equals(
            ideal(R2, "x1^3", "x1^2x2", "x1x2^2", "x2^3"))

    def test_component_below_indeg_is_zero(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        assert not I.component_submodule(1).gens

    def test_component_of_presented(self, rm_ord, R2):
        # (R/I)_<1> = m/I as a module: generated by classes of x, y in degree 1
        comp = component_of_presented(rm_ord, 1)
        assert comp.dim_at(1) == 2 and comp.dim_at(2) == 1 and comp.dim_at(3) == 0

    def test_cmod(self, R2):
        assert betti_table(cmod(power_of_m(2, 1), 1)).entries == \
            betti_table(power_of_m(2, 2)).entries

    def test_cmod_component(self, rm_ord, R2):
        C2 = cmod_component(rm_ord, 2)
        expect = quotient(R2, "x1^2", "x1x2")
        assert betti_table(C2).entries == betti_table(expect).entries
        C3 = cmod_component(rm_ord, 3)
        assert betti_table(C3).entries == betti_table(power_of_m(2, 2)).entries
        C1 = cmod_component(rm_ord, 1)
        assert C1.dim_at(3) == 4  # all of R in degree 3

    def test_truncate(self, R2):
        Rfree = PresentedModule.free_module(FreeModule(R2, (0,)))
        T = truncate_ge(Rfree, 2)
        # m^2 has Hilbert function 3,4,5,... from degree 2
        assert T.dim_at(2) == 3 and T.dim_at(3) == 4 and T.dim_at(1) == 0

    def test_truncate_below_indeg_is_identity(self, rm_ord):
        T = truncate_ge(rm_ord, 0)
        assert T.hilbert_function(0, 3) == rm_ord.hilbert_function(0, 3)

    def test_truncate_drops_low_part(self, rm_ord):
        T = truncate_ge(rm_ord, 2)
        assert T.dim_at(2) == 1 and T.dim_at(1) == 0


class TestGammaRegular:
    def test_rm_ord_element(self, rm_ord, R2):
        cy = is_gamma_regular(rm_ord, LinearForm(R2, (0, 1)))
        assert cy.regular and cy.alpha == 2 and cy.beta1 == 3 and cy.beta1_bar == 1
        assert cy.m_full is True and cy.c1_alpha == 3
        cx = is_gamma_regular(rm_ord, LinearForm(R2, (1, 0)))
        assert not cx.regular and cx.alpha == 3

    def test_free_module_any_form(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (0, 1)))
        assert is_gamma_regular(M, LinearForm(R2, (5, 7))).regular

    def test_zero_module(self, R2):
        assert is_gamma_regular(quotient(R2, "1"), LinearForm(R2, (1, 0))).regular

    def test_sequences(self, rm_ord, R2):
        zx, zy = LinearForm(R2, (1, 0)), LinearForm(R2, (0, 1))
        u, v = LinearForm(R2, (1, 1)), LinearForm(R2, (1, P - 1))
        ok, alphas, _ = is_gamma_sequence(rm_ord, [zy, zx])
        assert ok and alphas == [2, 1]
        ok, _, _ = is_gamma_sequence(rm_ord, [zx, zy])
        assert not ok
        assert is_gamma_sequence(rm_ord, [u, v])[0]
        assert is_gamma_sequence(rm_ord, [v, u])[0]

    def test_dependent_sequence_rejected(self, rm_ord, R2):
        zy = LinearForm(R2, (0, 1))
        ok, _, _ = is_gamma_sequence(rm_ord, [zy, zy])
        assert not ok

    def test_variables_on_power_of_m(self):
        # x1, ..., xn is a gamma-regular sequence on R/m^{r+1}
        for n, r in ((2, 1), (3, 2)):
            M = power_of_m(n, r)
            R = M.ring
            forms = [LinearForm(R, tuple(1 if j == i else 0 for j in range(n)))
                     for i in range(n)]
            ok, alphas, _ = is_gamma_sequence(M, forms)
            assert ok and len(alphas) == n


class TestReduce:
    def test_reduce_generic_form(self, rm_ord, R2):
        z = LinearForm(R2, (1, 2))
        mbar, _ = reduce_mod_linear(rm_ord, z)
        assert mbar.ring.n == 1
        # R/(I + z) is K[t]/(t^2) for generic z
        assert mbar.hilbert_function(0, 3) == {0: 1, 1: 1, 2: 0, 3: 0}

    def test_transport_chain(self, R2):
        z1 = LinearForm(R2, (1, 1))
        M = power_of_m(2, 1)
        _, change = reduce_mod_linear(M, z1)
        moved = transport_form(LinearForm(R2, (1, 0)), [change])
        assert moved is not None and moved.ring.n == 1
        # a form proportional to z1 dies in the quotient
        assert transport_form(LinearForm(R2, (2, 2)), [change]) is None


class TestDepthAndInvariants:
    def test_depth_rm_ord(self, rm_ord):
        w = gamma_depth(rm_ord, seed=1)
        assert w.depth == 2 and w.alphas == [2, 1]

    def test_depth_of_free(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (0,)))
        assert gamma_depth(M, seed=0).depth == 2

    def test_depth_zero_module(self, R2):
        assert gamma_depth(quotient(R2, "1"), seed=0).depth == 2

    def test_depth_zero_for_non_cwl(self, R2):
        # I = (x^2, y^2): not componentwise linear, depth must be 0
        M = quotient(R2, "x1^2", "x2^2")
        assert gamma_depth(M, seed=0, trials=8).depth == 0

    def test_verify_main(self, rm_ord, R2):
        assert verify_main_theorem(rm_ord, seed=0).agree
        rep = verify_main_theorem(quotient(R2, "x1^2", "x2^2"), seed=0, trials=5)
        assert rep.agree and not rep.cwl_syz and rep.depth == 0

    def test_delta_and_cd(self, rm_ord, R2):
        assert delta_invariant(rm_ord, seed=0) == 0
        assert cd_invariant(rm_ord) == 0
        M = quotient(R2, "x1^2", "x2^2")
        # m*(x^2, y^2) has gens x^3, x^2 y, x y^2, y^3 minus nothing: m-full?
        d = delta_invariant(M, seed=0)
        assert d >= 1
        assert cd_invariant(M) + gamma_depth(M, seed=0, trials=5).depth <= 2

    def test_cd_of_free(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (1,)))
        assert cd_invariant(M) == 0


class TestHatGamma:
    def test_rm_ord(self, rm_ord, R2):
        assert is_hat_gamma_regular(rm_ord, LinearForm(R2, (0, 1)))
        assert not is_hat_gamma_regular(rm_ord, LinearForm(R2, (1, 0)))

    def test_power_of_m(self):
        M = power_of_m(2, 1)
        R = M.ring
        assert is_hat_gamma_regular(M, LinearForm(R, (1, 3)))

    def test_free(self, R2):
        M = PresentedModule.free_module(FreeModule(R2, (0,)))
        assert is_hat_gamma_regular(M, LinearForm(R2, (1, 0)))


class TestComponentwiseLinear:
    def test_rm_ord_ideal(self, R2):
        assert is_componentwise_linear(ideal(R2, "x1^2", "x1x2", "x2^3"))

    def test_complete_intersection_not_cwl(self, R2):
        assert not is_componentwise_linear(ideal(R2, "x1^2", "x2^2"))

    def test_powers_of_m(self):
        for n, r in ((2, 2), (3, 1)):
            R = Ring(n, P)
            I = submodule_from_polys(R, [R.monomial(e) for e in R.monomials(r + 1)])
            assert is_componentwise_linear(I)

    def test_zero_is_cwl(self, R2):
        from gammadepth.modules import Submodule
        assert is_componentwise_linear(Submodule(FreeModule(R2, (0,)), []))

    def test_presented_module_path(self, rm_ord):
        F, U = syz1_data(rm_ord)
        S = presented_from_submodule(U)
        assert is_componentwise_linear(S)


class TestSplitting:
    def test_rm_ord_audit(self, rm_ord, R2):
        rep = splitting_audit(rm_ord, LinearForm(R2, (0, 1)))
        assert rep.ok, rep.failures

    def test_requires_regular(self, rm_ord, R2):
        with pytest.raises(ValueError):
            splitting_audit(rm_ord, LinearForm(R2, (1, 0)))

    def test_power_of_m_audit(self):
        M = power_of_m(2, 1)
        rep = splitting_audit(M, LinearForm(M.ring, (1, 2)))
        assert rep.ok, rep.failures
