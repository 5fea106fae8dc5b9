import random

import pytest

from gammadepth.ring import LinearForm, Ring, parse_polynomial
from gammadepth.modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    colon_by_linear,
    colon_by_maximal,
    kernel_of_map,
    minimal_generators,
    presented_from_submodule,
    prune_presentation,
    quotient_dims,
    saturate,
    submodule_from_polys,
)

from oracles import dense_contains, dense_submodule_dim

P = 32003


def ideal(ring, *texts):
    return submodule_from_polys(ring, [parse_polynomial(ring, t) for t in texts])


@pytest.fixture
def R2():
    return Ring(2, P)


@pytest.fixture
def R3():
    return Ring(3, P)


class TestGroebner:
    def test_monomial_ideal_is_its_own_basis(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        leads = {e for _, e in I.lead_terms()}
        assert leads == {(2, 0), (1, 1), (0, 3)}

    def test_buchberger_closes_under_spolys(self, R2):
        I = ideal(R2, "x1^2 - x2^2", "x1x2")
        # x2^3 = x2*(x1^2-x2^2) - x1*(x1x2) up to sign
        assert I.contains(I.module.element([parse_polynomial(R2, "x2^3")]))

    def test_normal_form_is_reduced(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        f = parse_polynomial(R2, "x1^2 + x1x2 + x2^2")
        nf = I.normal_form(I.module.element([f]))
        assert nf.component(0) == parse_polynomial(R2, "x2^2")

    def test_module_generators(self, R2):
        F = FreeModule(R2, (0, 0))
        x, y = R2.variable(0), R2.variable(1)
        U = Submodule(F, [F.element([x, y]), F.element([y, x])])
        # (x^2-y^2, 0) = x*(x,y) - y*(y,x)
        v = F.element([x * x - y * y, R2.zero()])
        assert U.contains(v)

    def test_dims_match_dense_oracle(self, R3):
        rng = random.Random(17)
        for _ in range(6):
            F = FreeModule(R3, tuple(sorted(rng.randint(0, 1)
                                            for _ in range(rng.randint(1, 2)))))
            gens = []
            for _ in range(rng.randint(1, 3)):
                d = rng.randint(1, 3)
                terms = {}
                for pos in range(F.rank):
                    f = R3.random_polynomial(d - F.twists[pos] + 1, rng)
                    for e, c in f.terms.items():
                        terms[(pos, e)] = c
                gens.append(FreeElement(F, terms))
            U = Submodule(F, gens)
            for degree in range(0, 7):
                assert U.dim_at(degree) == dense_submodule_dim(U, degree)


class TestKernel:
    def test_koszul_kernel(self, R2):
        # kernel of R(-2)^2 -> R, (f,g) |-> f x^2 + g y^2 is generated by (y^2,-x^2)
        F = FreeModule(R2, (0,))
        G = FreeModule(R2, (2, 2))
        x2 = parse_polynomial(R2, "x1^2")
        y2 = parse_polynomial(R2, "x2^2")
        K = kernel_of_map(G, PresentedModule.free_module(F),
                          [F.element([x2]), F.element([y2])])
        gens = minimal_generators(K)
        assert len(gens) == 1 and gens[0].degree() == 4
        assert K.contains(G.element([y2, -x2]))

    def test_kernel_elements_map_to_zero(self, R3):
        rng = random.Random(23)
        F = FreeModule(R3, (0,))
        I = Submodule(F, [F.element([R3.random_polynomial(2, rng)])
                          for _ in range(2)])
        target = PresentedModule(F, I)
        images = [F.element([R3.random_polynomial(2, rng)]) for _ in range(3)]
        G = FreeModule(R3, (2, 2, 2))
        K = kernel_of_map(G, target, images)
        for g in K.gens:
            image = F.zero()
            for k in range(3):
                image = image + images[k].mul_poly(g.component(k))
            assert I.contains(image)


class TestPrune:
    def test_unit_entry_eliminated(self, R2):
        F = FreeModule(R2, (0, 1))
        x = R2.variable(0)
        # second generator equals x times the first: relation (x, -1)
        gens = [F.element([x, -R2.one()])]
        Fmin, new_gens, surviving = prune_presentation(F, gens)
        assert Fmin.rank == 1 and surviving == [0] and not new_gens

    def test_minimal_generators_drop_redundant(self, R2):
        x, y = R2.variable(0), R2.variable(1)
        I = ideal(R2, "x1^2", "x1x2")
        J = Submodule(I.module, I.gens + [I.module.element([x * x * y])])
        assert len(minimal_generators(J)) == 2


class TestColonSaturation:
    def test_colon_by_linear_values(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        Iy = colon_by_linear(I, LinearForm(R2, (0, 1)))
        assert Iy.equals(ideal(R2, "x1", "x2^2"))
        Ix = colon_by_linear(I, LinearForm(R2, (1, 0)))
        assert Ix.equals(ideal(R2, "x1", "x2"))

    def test_colon_two_sided_membership(self, R3):
        rng = random.Random(31)
        for _ in range(4):
            I = submodule_from_polys(
                R3, [R3.random_polynomial(rng.randint(1, 3), rng)
                     for _ in range(rng.randint(1, 3))])
            z = LinearForm.random(R3, rng)
            W = colon_by_linear(I, z)
            zp = z.polynomial()
            for g in W.gens:
                assert dense_contains(I.gens, I.module, g.mul_poly(zp))
            # I itself is inside the colon
            for g in I.gens:
                assert W.contains(g)

    def test_colon_by_maximal(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        soc_lift = colon_by_maximal(I)
        assert soc_lift.equals(ideal(R2, "x1", "x2^2"))

    def test_saturate(self, R2):
        xm = ideal(R2, "x1^2", "x1x2")
        assert saturate(xm).equals(ideal(R2, "x1"))

    def test_saturate_fixes_saturated(self, R2):
        I = ideal(R2, "x1")
        assert saturate(I).equals(I)


class TestQuotientDims:
    def test_finite(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        W = colon_by_linear(I, LinearForm(R2, (0, 1)))
        dims, finite = quotient_dims(W, I)
        assert finite and dims == {1: 1, 2: 1}

    def test_infinite_flagged(self, R2):
        W = ideal(R2, "x1")
        U = ideal(R2, "x1^2")
        _, finite = quotient_dims(W, U)
        assert not finite

    def test_equal_modules(self, R2):
        I = ideal(R2, "x1^2", "x2^2")
        dims, finite = quotient_dims(I, I)
        assert finite and dims == {}


class TestPresentedModule:
    def test_hilbert_function(self, R2):
        M = PresentedModule.quotient_by_ideal(ideal(R2, "x1^2", "x1x2", "x2^3"))
        assert M.hilbert_function(0, 4) == {0: 1, 1: 2, 2: 1, 3: 0, 4: 0}

    def test_zero_module(self, R2):
        M = PresentedModule.quotient_by_ideal(ideal(R2, "1"))
        assert M.is_zero()

    def test_presented_from_submodule(self, R2):
        I = ideal(R2, "x1^2", "x1x2", "x2^3")
        M = presented_from_submodule(I)
        assert sorted(M.free.twists) == [2, 2, 3]
        # presentation of I has two syzygies, degrees 3 and 4
        degs = sorted(g.degree() for g in minimal_generators(M.relations))
        assert degs == [3, 4]
