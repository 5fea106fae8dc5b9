"""The gamma-regularity calculus: socles, alpha invariants, gamma-regular
elements and sequences, gamma-depth, hat-gamma-regularity, componentwise
linearity, and the invariants delta and cd.

Modules are handled through minimal presentations F/U; U plays the role of
the first syzygy submodule throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .ring import (
    LinearForm,
    Ring,
    change_sending_form_to_last_variable,
    drop_last_variable,
)
from .modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    colon_by_linear,
    colon_by_maximal,
    kernel_of_map,
    minimal_generators,
    presented_from_submodule,
    quotient_dims,
    saturate,
)
from .resolution import (
    BettiTable,
    betti_table,
    first_syzygy_module,
    minimal_cover,
    one_plus_t_power,
    poly_add,
    poly_scale,
    resolve,
    syzygy_module,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


# ---------------------------------------------------------------------------
# basic invariants

def syz1_data(mod):
    """(F_min, U) with U the first syzygy submodule inside the minimal cover."""
    F0, syz, _ = minimal_cover(mod)
    return F0, syz


def beta1(mod):
    """Number of minimal generators of the first syzygy module."""
    _, syz = syz1_data(mod)
    return len(minimal_generators(syz))


def syz1_gen_degrees(mod):
    _, syz = syz1_data(mod)
    return sorted(g.degree() for g in minimal_generators(syz))


def socle_dims(mod):
    """Degreewise dims of soc M = 0 :_M m."""
    F, U = syz1_data(mod)
    if F.rank == 0:
        return {}
    dims, finite = quotient_dims(colon_by_maximal(U), U)
    if not finite:
        raise RuntimeError("socle of a finitely generated module must be finite")
    return dims


def gamma_m_dims(mod):
    """Degreewise dims of the finite length module Gamma_m(M)."""
    F, U = syz1_data(mod)
    if F.rank == 0:
        return {}
    dims, finite = quotient_dims(saturate(U), U)
    if not finite:
        raise RuntimeError("Gamma_m of a finitely generated module must be finite")
    return dims


def alpha(mod, z):
    """alpha(M; z) = dim_K(0 :_M z); math.inf when z is not almost regular."""
    F, U = syz1_data(mod)
    if F.rank == 0:
        return 0
    dims, finite = quotient_dims(colon_by_linear(U, z), U)
    if not finite:
        return POS_INF
    return sum(dims.values())


def cmod(mod, i=1):
    """C_i M = F_M / m^i Syz1 M (C_0 M is M itself, minimally presented)."""
    F, U = syz1_data(mod)
    return PresentedModule(F, U.multiplied_by_maximal_power(i))


def cmod_component(mod, j):
    """C_<j> M = F_M / (Syz1 M)_<j>."""
    F, U = syz1_data(mod)
    return PresentedModule(F, U.component_submodule(j))


# ---------------------------------------------------------------------------
# reduction modulo linear forms

def reduce_mod_linear(mod, z):
    """M/zM as a module over R/zR, realized as a polynomial ring in one
    fewer variable.  Returns (reduced module, coordinate change used)."""
    ring = mod.ring
    if ring.n == 0:
        raise ValueError("no linear forms in zero variables")
    change = change_sending_form_to_last_variable(z)
    new_ring = Ring(ring.n - 1, ring.p)
    F, U = syz1_data(mod)
    Fbar = FreeModule(new_ring, F.twists)
    gens = []
    for g in U.gens:
        terms = {}
        for pos in range(F.rank):
            f = drop_last_variable(change.apply(g.component(pos)), new_ring)
            for e, c in f.terms.items():
                terms[(pos, e)] = c
        elem = FreeElement(Fbar, terms)
        if not elem.is_zero():
            gens.append(elem)
    return PresentedModule(Fbar, Submodule(Fbar, gens)), change


def transport_form(z, changes):
    """Image of an original-ring linear form through a chain of coordinate
    changes, dropping the eliminated variable at each step.  None if the
    image vanishes."""
    coeffs = list(z.coeffs)
    ring = z.ring
    for change in changes:
        w = LinearForm(ring, coeffs) if any(c % ring.p for c in coeffs) else None
        if w is None:
            return None
        image = change.apply_form(w)
        if image is None:
            return None
        coeffs = list(image.coeffs[:-1])
        ring = Ring(ring.n - 1, ring.p)
        if not any(c % ring.p for c in coeffs):
            return None
    return LinearForm(ring, coeffs)


# ---------------------------------------------------------------------------
# gamma-regular elements

@dataclass
class GammaCertificate:
    regular: bool
    alpha: float
    beta1: int
    beta1_bar: int | None = None
    m_full: bool | None = None
    c1_alpha: float | None = None

    def __bool__(self):
        return self.regular


def is_gamma_regular(mod, z, full=True):
    """Is z a gamma-regular element for M?

    Primary criterion: beta_1(M) = alpha(M; z) + beta_1(M/zM over R/zR).
    With full=True this is cross-checked against alpha(C M; z) = beta_1(M)
    and the m-fullness of Syz1 M in F_M with respect to z; the three
    criteria are equivalent, so any disagreement is an internal error.
    """
    F, U = syz1_data(mod)
    if F.rank == 0:
        return GammaCertificate(True, 0, 0, 0, None, None)
    b1 = len(minimal_generators(U))
    a = alpha(mod, z)
    if a == POS_INF:
        # not even almost regular; the equivalent m-full test must fail too
        if full:
            mU = U.multiplied_by_maximal_power(1)
            mfull = colon_by_linear(mU, z).equals(U)
            if mfull:
                raise RuntimeError("m-full check contradicts infinite alpha")
        return GammaCertificate(False, a, b1, None, False if full else None, None)
    mbar, _ = reduce_mod_linear(mod, z)
    b1bar = beta1(mbar)
    regular = (b1 == a + b1bar)
    cert = GammaCertificate(regular, a, b1, b1bar)
    if full:
        ca = alpha(PresentedModule(F, U.multiplied_by_maximal_power(1)), z)
        mU = U.multiplied_by_maximal_power(1)
        mfull = colon_by_linear(mU, z).equals(U)
        cert.c1_alpha = ca
        cert.m_full = mfull
        if (ca == b1) != regular or mfull != regular:
            raise RuntimeError(
                "gamma-regularity criteria disagree: "
                f"beta1={b1} alpha={a} beta1_bar={b1bar} "
                f"alpha(C M;z)={ca} m_full={mfull}")
    return cert


def is_gamma_sequence(mod, forms, full=True):
    """Is z_1, ..., z_r a gamma-regular sequence for M?

    Returns (ok, alphas, certs).  Checks each step and, with full=True, the
    aggregate identity beta_1(M) = sum alpha_i + beta_1 of the final
    reduction."""
    current = mod
    changes = []
    alphas = []
    certs = []
    b1_top = beta1(mod)
    ok = True
    for z in forms:
        zbar = transport_form(z, changes)
        if zbar is None:
            return False, alphas, certs
        cert = is_gamma_regular(current, zbar, full=full)
        certs.append(cert)
        alphas.append(cert.alpha)
        if not cert.regular:
            ok = False
            break
        current, change = reduce_mod_linear(current, zbar)
        changes.append(change)
    if ok and full:
        b1_final = beta1(current)
        agg = (b1_top == sum(alphas) + b1_final)
        if not agg:
            raise RuntimeError(
                "aggregate sequence criterion disagrees with stepwise checks")
    return ok, alphas, certs


@dataclass
class DepthWitness:
    sequence: list
    depth: int
    alphas: list
    trials_used: int
    seed: int


def gamma_depth(mod, seed=0, trials=20, retry_budget=8, verify="full"):
    """gamma-depth of M: the maximal length of a gamma-regular sequence,
    computed by randomized greedy search.  Over a large field a random
    element is generic, so the greedy maximum equals the true depth with
    high probability; `trials` independent restarts take the best run.

    verify="full" rechecks the witness with all three regularity criteria,
    "light" with the primary criterion only, "none" trusts the greedy run
    (used by callers that re-verify the witness themselves).

    The zero module has gamma-depth n by convention (every nonzero linear
    form is gamma-regular on it).
    """
    ring = mod.ring
    n = ring.n
    if n == 0:
        return DepthWitness([], 0, [], 0, seed)
    if mod.is_zero():
        rng = random.Random(seed)
        seq = []
        while len(seq) < n:
            z = LinearForm.random(ring, rng)
            if transport_via_sequence_independent(seq, z):
                seq.append(z)
        return DepthWitness(seq, n, [0] * n, 1, seed)
    best = None
    trials_used = 0
    stagnant = 0
    for t in range(trials):
        rng = random.Random((seed << 16) ^ t)
        trials_used = t + 1
        seq, alphas = _greedy_sequence(mod, rng, retry_budget)
        if best is None or len(seq) > len(best[0]):
            best = (seq, alphas)
            stagnant = 0
        else:
            # random candidates are generic over a large field, so two runs
            # hitting the same ceiling is decisive; stop early
            stagnant += 1
        if len(best[0]) == n or stagnant >= 2:
            break
    seq, alphas = best
    if verify != "none":
        ok, check_alphas, _ = is_gamma_sequence(mod, seq, full=(verify == "full"))
        if not ok or check_alphas != alphas:
            raise RuntimeError("depth witness failed full verification")
    return DepthWitness(seq, len(seq), alphas, trials_used, seed)


def transport_via_sequence_independent(seq, z):
    """Linear independence of z from the span of seq (cheap pre-filter)."""
    if not seq:
        return True
    from .ring import matrix_rank
    rows = [list(w.coeffs) for w in seq] + [list(z.coeffs)]
    return matrix_rank(rows, z.ring.p) == len(rows)


def _greedy_sequence(mod, rng, retry_budget):
    ring = mod.ring
    current = mod
    changes = []
    seq = []
    alphas = []
    while len(seq) < ring.n:
        found = False
        for _ in range(retry_budget):
            z = LinearForm.random(ring, rng)
            zbar = transport_form(z, changes)
            if zbar is None:
                continue
            cert = is_gamma_regular(current, zbar, full=False)
            if cert.regular:
                seq.append(z)
                alphas.append(cert.alpha)
                current, change = reduce_mod_linear(current, zbar)
                changes.append(change)
                found = True
                break
        if not found:
            break
    return seq, alphas


# ---------------------------------------------------------------------------
# hat-gamma-regular elements

def is_hat_gamma_regular(mod, z, full=True, scan_extra=2):
    """Is z a hat-gamma-regular element for M?

    Exact finite criterion: z is gamma-regular on C_<d> M for every degree d
    of a minimal generator of Syz1 M.  Cross-checked (full=True) against a
    bounded scan of the strong m-fullness conditions
    m^{i+1} U :_F z = m^i U."""
    F, U = syz1_data(mod)
    if F.rank == 0 or not U.gens:
        return True
    degrees = sorted({g.degree() for g in minimal_generators(U)})
    verdict = all(
        is_gamma_regular(cmod_component(mod, d), z, full=full).regular
        for d in degrees)
    if full:
        bound = degrees[-1] - degrees[0] + scan_extra
        scan = True
        for i in range(bound + 1):
            mi = U.multiplied_by_maximal_power(i)
            mi1 = U.multiplied_by_maximal_power(i + 1)
            if not colon_by_linear(mi1, z).equals(mi):
                scan = False
                break
        if scan != verdict:
            raise RuntimeError(
                "hat-gamma criteria disagree within the scan bound")
    return verdict


# ---------------------------------------------------------------------------
# componentwise linearity

def component_of_presented(mod, j):
    """M_<j>: the submodule of M generated by its degree-j slice, presented
    as a quotient of a free module with all twists j."""
    F, U = syz1_data(mod)
    uleads = U.lead_terms()
    basis = [t for t in F.terms_of_degree(j)
             if not any(lp == t[0] and _div(le, t[1]) for lp, le in uleads)]
    G = FreeModule(mod.ring, (j,) * len(basis))
    if not basis:
        return PresentedModule.free_module(G)
    images = [FreeElement(F, {t: 1}) for t in basis]
    K = kernel_of_map(G, PresentedModule(F, U), images)
    return PresentedModule(G, K)


def _div(a, b):
    return all(x <= y for x, y in zip(a, b))


def truncate_ge(mod, d):
    """M_{>= d}: the submodule of M of elements of degree at least d,
    generated by bases of the slices M_d, ..., M_D with D the larger of d
    and the maximal generator degree.  Returns M itself (minimally
    presented) when d is at most the initial generator degree."""
    F, U = syz1_data(mod)
    if F.rank == 0:
        return PresentedModule(F, U)
    if d <= min(F.twists):
        return PresentedModule(F, U)
    D = max(d, max(F.twists))
    uleads = U.lead_terms()
    basis = []
    for j in range(d, D + 1):
        for t in F.terms_of_degree(j):
            if not any(lp == t[0] and _div(le, t[1]) for lp, le in uleads):
                basis.append((j, t))
    G = FreeModule(mod.ring, tuple(j for j, _ in basis))
    if not basis:
        return PresentedModule.free_module(G)
    images = [FreeElement(F, {t: 1}) for _, t in basis]
    K = kernel_of_map(G, PresentedModule(F, U), images)
    return PresentedModule(G, K)


def is_componentwise_linear(obj):
    """Componentwise linearity: reg X_<j> <= j for every j.

    Accepts a Submodule (fast path: X_<j> is generated by the degree-j
    slice) or a PresentedModule.  The zero module is componentwise linear.
    Only generator degrees need checking: for other j, X_<j> is a power of m
    times a generator-degree component, which preserves linear resolutions.
    """
    if isinstance(obj, Submodule):
        gens = minimal_generators(obj)
        if not gens:
            return True
        for j in sorted({g.degree() for g in gens}):
            comp = obj.component_submodule(j)
            from .modules import presented_from_submodule
            if betti_table(presented_from_submodule(comp)).regularity() > j:
                return False
        return True
    if isinstance(obj, PresentedModule):
        F, U = syz1_data(obj)
        if F.rank == 0:
            return True
        for j in sorted(set(F.twists)):
            if betti_table(component_of_presented(obj, j)).regularity() > j:
                return False
        return True
    raise TypeError("expected a Submodule or a PresentedModule")


# ---------------------------------------------------------------------------
# the main equivalence, delta, and cd

@dataclass
class MainTheoremReport:
    cwl_syz: bool
    depth: int
    nvars: int
    agree: bool
    retried: bool
    witness: DepthWitness


def verify_main_theorem(mod, seed=0, trials=20):
    """Check the equivalence: Syz1 M is componentwise linear iff
    gamma-depth M = n.  A randomized depth search can miss a full-depth
    sequence, so when cwl holds but the search comes up short, retry once
    with a fresh seed before declaring disagreement."""
    n = mod.ring.n
    _, syz = syz1_data(mod)
    cwl = is_componentwise_linear(syz)
    witness = gamma_depth(mod, seed=seed, trials=trials)
    retried = False
    if cwl and witness.depth < n:
        retried = True
        witness = gamma_depth(mod, seed=seed + 104729, trials=trials)
    agree = cwl == (witness.depth == n)
    return MainTheoremReport(cwl, witness.depth, n, agree, retried, witness)


def default_delta_cap(mod):
    """Safety cap for the delta search.  Multiplying Syz1 M by m^i forces a
    linear resolution once i exceeds reg(Syz1 M) - indeg(Syz1 M), so the
    search succeeds inside the cap with room to spare."""
    n = mod.ring.n
    F, U = syz1_data(mod)
    if not U.gens:
        return 4
    indeg_syz = min(g.degree() for g in minimal_generators(U))
    reg_syz = betti_table(presented_from_submodule(U)).regularity()
    return max(reg_syz - indeg_syz, 0) + n + 2


def delta_invariant(mod, seed=0, trials=1, cap=None, retry_budget=4):
    """delta(M) = min{ i >= 0 : gamma-depth C_i M = n }.  This is finite;
    the cap is a safety valve and exhausting it raises an error.

    The search settings are lighter than gamma_depth's defaults: the winning
    witness is re-verified with full certificates before returning, so a
    cheap search can only overestimate, and over a large field a generic
    candidate misses a nonempty open locus with negligible probability."""
    n = mod.ring.n
    if cap is None:
        cap = default_delta_cap(mod)
    for i in range(cap + 1):
        C = cmod(mod, i)
        w = gamma_depth(C, seed=seed, trials=trials,
                        retry_budget=retry_budget, verify="none")
        if w.depth == n:
            ok, _, _ = is_gamma_sequence(C, w.sequence, full=True)
            if not ok:
                raise RuntimeError("delta witness failed full verification")
            return i
    raise RuntimeError(f"delta search exhausted the cap {cap}")


def cd_invariant(mod):
    """cd(M) = min{ i >= 0 : Syz_{i+1} M is componentwise linear }."""
    n = mod.ring.n
    current = mod
    for i in range(n + 1):
        _, syz = syz1_data(current)
        if is_componentwise_linear(syz):
            return i
        current = first_syzygy_module(current)
    raise RuntimeError("cd exceeded the number of variables")


# ---------------------------------------------------------------------------
# splitting identities for a certified gamma-regular element

@dataclass
class SplittingReport:
    ok: bool
    failures: list = field(default_factory=list)


def splitting_audit(mod, z):
    """Audit the splitting identities attached to a gamma-regular element z:

    - graded Betti split of Syz1 M into Syz1(M/zM) and soc M(-1)
    - both Poincare recursions p(Syz1 M) and p(M)
    - socle degree support inside the syzygy generator degrees
    - the regularity max formula for Syz1 M.

    z must be gamma-regular on M; raises otherwise.
    """
    cert = is_gamma_regular(mod, z, full=True)
    if not cert.regular:
        raise ValueError("z is not gamma-regular on M")
    n = mod.ring.n
    failures = []
    bt = betti_table(mod)
    syz_entries = {(i - 1, j): b for (i, j), b in bt.entries.items() if i >= 1}
    mbar, _ = reduce_mod_linear(mod, z)
    bt_bar = betti_table(mbar)
    syz_bar = {(i - 1, j): b for (i, j), b in bt_bar.entries.items() if i >= 1}
    soc = socle_dims(mod)

    # graded Betti numbers of soc M(-1) over the smaller polynomial ring
    soc_part = {}
    for s, dim in soc.items():
        for i in range(n):
            b = dim * math.comb(n - 1, i)
            if b:
                key = (i, s + 1 + i)
                soc_part[key] = soc_part.get(key, 0) + b
    combined = dict(syz_bar)
    for key, b in soc_part.items():
        combined[key] = combined.get(key, 0) + b
    if syz_entries != combined:
        failures.append(("betti_split", syz_entries, combined))

    asum = int(cert.alpha)
    p_syz = BettiTable(syz_entries).poincare() if syz_entries else [0]
    p_syz_bar = BettiTable(syz_bar).poincare() if syz_bar else [0]
    expect = poly_add(p_syz_bar, poly_scale(one_plus_t_power(n - 1), asum))
    if p_syz != expect:
        failures.append(("poincare_syz", p_syz, expect))

    p_m = bt.poincare()
    p_m_bar = bt_bar.poincare()
    expect = poly_add(p_m_bar,
                      poly_scale([0] + one_plus_t_power(n - 1), asum))
    if p_m != expect:
        failures.append(("poincare_mod", p_m, expect))

    syz_gen_degs = {j for (i, j) in syz_entries if i == 0}
    soc_degs = {s + 1 for s in soc}
    if not soc_degs <= syz_gen_degs:
        failures.append(("socle_support", sorted(soc_degs), sorted(syz_gen_degs)))

    reg_syz = BettiTable(syz_entries).regularity()
    reg_syz_bar = BettiTable(syz_bar).regularity()
    deg_gens = max(syz_gen_degs) if syz_gen_degs else NEG_INF
    if reg_syz != max(reg_syz_bar, deg_gens):
        failures.append(("regularity_max", reg_syz, (reg_syz_bar, deg_gens)))

    return SplittingReport(not failures, failures)
