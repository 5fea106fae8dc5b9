"""Special theory for cyclic modules R/I over R = GF(p)[x1, x2]:

- the numeric first-Betti criterion for componentwise linear first syzygies
- structural decomposition I = m^{d_1-e_1} f_1 + ... + m^{d_r-e_r} f_r with
  a divisibility chain f_{i+1} | f_i
- construction of such ideals from prescribed data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import Polynomial
from .modules import (
    PresentedModule,
    Submodule,
    minimal_generators,
    saturate,
    submodule_from_polys,
)
from .resolution import betti_table
from .gamma import gamma_m_dims, is_componentwise_linear, socle_dims, syz1_data

POS_INF = float("inf")


def _require_two_vars(ring):
    if ring.n != 2:
        raise ValueError("this analysis requires exactly two variables")


@dataclass
class BetaFormulaReport:
    pd: int
    beta1: int
    indeg_gens: float
    indeg_gamma: float
    formula_holds: bool | None
    cwl_syz: bool
    agree: bool


def beta_formula_check(ideal):
    """For M = R/I with pd 2: beta_1(M) = indeg(I ⊗ k) - indeg(Gamma_m M) + 1
    holds iff Syz1 M is componentwise linear.  Modules of pd <= 1 have a
    componentwise linear first syzygy automatically and the formula does not
    apply; those report formula_holds=None and agree=True.
    """
    ring = ideal.ring
    _require_two_vars(ring)
    M = PresentedModule.quotient_by_ideal(ideal)
    bt = betti_table(M)
    pd = bt.projective_dimension()
    pd = 0 if pd < 0 else int(pd)
    _, syz = syz1_data(M)
    cwl = is_componentwise_linear(syz)
    gens = minimal_generators(ideal)
    indeg_gens = min((g.degree() for g in gens), default=POS_INF)
    gm = gamma_m_dims(M)
    indeg_gamma = min(gm) if gm else POS_INF
    if pd < 2:
        if not cwl:
            raise RuntimeError("pd <= 1 module must have cwl first syzygy")
        return BetaFormulaReport(pd, bt.beta(1), indeg_gens, indeg_gamma,
                                 None, cwl, True)
    b1 = bt.beta(1)
    formula = (b1 == indeg_gens - indeg_gamma + 1)
    return BetaFormulaReport(pd, b1, indeg_gens, indeg_gamma,
                             formula, cwl, formula == cwl)


@dataclass
class CwlDecomposition:
    degrees: list          # d_1 < ... < d_r, generator degrees of I
    factors: list          # monic f_i with indeg e_i, f_{i+1} | f_i
    factor_degrees: list   # e_1, ..., e_r


def _principal_generator(ideal):
    """The monic generator of a principal ideal, or None."""
    gens = minimal_generators(ideal)
    if len(gens) != 1:
        return None
    return gens[0].component(0).monic()


def _divides(f, g):
    """f | g via ideal membership."""
    return submodule_from_polys(f.ring, [f]).contains(
        submodule_from_polys(f.ring, [g]).module.element([g]))


def decompose_cwl_ideal(ideal):
    """Decompose an ideal I ⊆ GF(p)[x1,x2] whose cyclic quotient has a
    componentwise linear first syzygy and pd 2 as

        I = m^{d_1-e_1} f_1 + ... + m^{d_r-e_r} f_r,

    where d_i are the generator degrees of I, f_i = gen(I_<d_i> : m^inf)
    is principal of degree e_i, and f_{i+1} | f_i.  Every structural claim
    is verified; any failure raises, so a successful return is a
    certificate."""
    ring = ideal.ring
    _require_two_vars(ring)
    gens = minimal_generators(ideal)
    if not gens:
        raise ValueError("the zero ideal has no decomposition")
    degrees = sorted({g.degree() for g in gens})
    factors = []
    edegs = []
    for d in degrees:
        comp = ideal.component_submodule(d)
        J = saturate(comp)
        f = _principal_generator(J)
        if f is None:
            raise ValueError(
                f"saturation of the degree-{d} component is not principal")
        e = f.degree()
        # verify I_<d> = m^{d-e} f
        target = submodule_from_polys(ring, [f]).multiplied_by_maximal_power(d - e)
        if not comp.equals(target):
            raise ValueError(
                f"degree-{d} component is not m^{d - e} times its saturation")
        factors.append(f)
        edegs.append(e)
    for i in range(len(factors) - 1):
        if not _divides(factors[i + 1], factors[i]):
            raise ValueError("divisibility chain broken between factors")
    # the components must recover I itself
    total = Submodule(ideal.module,
                      [g for d in degrees for g in ideal.component_submodule(d).gens])
    if not total.equals(ideal):
        raise ValueError("component sum does not recover the ideal")
    return CwlDecomposition(degrees, factors, edegs)


def build_cwl_ideal(ring, degrees, factors):
    """Build I = sum m^{d_i-e_i} f_i from strictly increasing degrees d_i and
    homogeneous f_i with f_{i+1} a proper divisor of f_i (so the factor
    degrees strictly decrease and every d_i really is a minimal generator
    degree).  Returns the ideal as a rank-1 submodule."""
    _require_two_vars(ring)
    if len(degrees) != len(factors):
        raise ValueError("need one factor per degree")
    if sorted(set(degrees)) != list(degrees):
        raise ValueError("degrees must be strictly increasing")
    edegs = [f.degree() for f in factors]
    if any(e1 <= e2 for e1, e2 in zip(edegs, edegs[1:])):
        raise ValueError("factor degrees must strictly decrease")
    gens = []
    for d, f in zip(degrees, factors):
        e = f.degree()
        if d - e < 0:
            raise ValueError("degree below the factor degree")
        sub = submodule_from_polys(ring, [f]).multiplied_by_maximal_power(d - e)
        gens.extend(sub.gens)
    for i in range(len(factors) - 1):
        if not _divides(factors[i + 1], factors[i]):
            raise ValueError("divisibility chain broken")
    return Submodule(gens[0].module, gens)


def corollary_dims_check(ideal, decomposition):
    """dim_K(I ⊗ k) = d_1 - e_r + 1 and dim_K soc(R/I) = d_1 - e_r for a
    decomposed ideal.  Returns (ok, got, expected)."""
    d1 = decomposition.degrees[0]
    er = decomposition.factor_degrees[-1]
    ngens = len(minimal_generators(ideal))
    soc = sum(socle_dims(PresentedModule.quotient_by_ideal(ideal)).values())
    ok = (ngens == d1 - er + 1) and (soc == d1 - er)
    return ok, (ngens, soc), (d1 - er + 1, d1 - er)
