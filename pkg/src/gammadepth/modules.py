"""Graded free modules, submodules, presented modules, and the Groebner
engine: Buchberger for submodules of free modules, normal forms, kernels of
graded maps, colon modules, saturation, and Hilbert functions.

Module term order: position-over-term on top of degrevlex.  Positions are
ranked (ascending twist, then index) by default; kernel computations use an
explicit ranking that eliminates the target positions.
"""

from __future__ import annotations

import heapq
import math

from .ring import (
    Polynomial,
    grevlex_key,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


class FreeModule:
    """Twisted graded free module ⊕_k R(-j_k)."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring, twists):
        self.ring = ring
        self.twists = tuple(twists)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and self.ring == other.ring
                and self.twists == other.twists)

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return f"FreeModule({self.ring!r}, twists={self.twists})"

    def zero(self):
        return FreeElement(self, {})

    def gen(self, k):
        zero = (0,) * self.ring.n
        return FreeElement(self, {(k, zero): 1})

    def element(self, polys):
        if len(polys) != self.rank:
            raise ValueError("component count does not match rank")
        terms = {}
        for k, f in enumerate(polys):
            for e, c in f.terms.items():
                terms[(k, e)] = c
        return FreeElement(self, terms)

    def term(self, pos, exps, coeff=1):
        return FreeElement(self, {(pos, tuple(exps)): coeff % self.ring.p})

    def dim_at(self, degree):
        """dim_K of the degree slice of the free module itself."""
        total = 0
        for j in self.twists:
            d = degree - j
            if d >= 0:
                total += math.comb(d + self.ring.n - 1, self.ring.n - 1) \
                    if self.ring.n > 0 else (1 if d == 0 else 0)
        return total

    def terms_of_degree(self, degree):
        for pos, j in enumerate(self.twists):
            for e in monomials_of_degree(self.ring.n, degree - j):
                yield (pos, e)


class FreeElement:
    """Homogeneous element of a graded free module, stored sparsely as
    {(position, exponent tuple): coefficient}."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms, normalize=True):
        self.module = module
        if normalize:
            p = module.ring.p
            terms = {t: c % p for t, c in terms.items() if c % p}
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Common degree of the element, or None when zero."""
        if not self.terms:
            return None
        degs = {mono_deg(e) + self.module.twists[pos] for pos, e in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {mono_deg(e) + self.module.twists[pos] for pos, e in self.terms}
        return len(degs) == 1

    def component(self, pos):
        ring = self.module.ring
        return Polynomial(ring, {e: c for (q, e), c in self.terms.items() if q == pos},
                          normalize=False)

    def components(self):
        return [self.component(k) for k in range(self.module.rank)]

    def _check(self, other):
        if self.module != other.module:
            raise ValueError("elements of different free modules")

    def __add__(self, other):
        self._check(other)
        p = self.module.ring.p
        terms = dict(self.terms)
        for t, c in other.terms.items():
            v = (terms.get(t, 0) + c) % p
            if v:
                terms[t] = v
            elif t in terms:
                del terms[t]
        return FreeElement(self.module, terms, normalize=False)

    def __neg__(self):
        p = self.module.ring.p
        return FreeElement(self.module, {t: p - c for t, c in self.terms.items()},
                           normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.module.ring.p
        c %= p
        if c == 0:
            return self.module.zero()
        return FreeElement(self.module, {t: (v * c) % p for t, v in self.terms.items()},
                           normalize=False)

    def mul_term(self, exps, coeff):
        """Multiply by coeff * x^exps."""
        p = self.module.ring.p
        coeff %= p
        if coeff == 0:
            return self.module.zero()
        return FreeElement(
            self.module,
            {(pos, mono_mul(e, exps)): (c * coeff) % p
             for (pos, e), c in self.terms.items()},
            normalize=False)

    def mul_poly(self, f):
        result = self.module.zero()
        for e, c in f.terms.items():
            result = result + self.mul_term(e, c)
        return result

    def __eq__(self, other):
        return (isinstance(other, FreeElement) and self.module == other.module
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def __repr__(self):
        parts = " | ".join(str(self.component(k)) for k in range(self.module.rank))
        return f"[{parts}]"


# ---------------------------------------------------------------------------
# term order and reduction machinery

def default_posrank(module):
    """Position priority: ascending twist, then index; rank 0 is greatest."""
    order = sorted(range(module.rank), key=lambda k: (module.twists[k], k))
    rank = [0] * module.rank
    for r, pos in enumerate(order):
        rank[pos] = r
    return rank


def _term_key(posrank):
    cache = {}

    def key(term):
        k = cache.get(term)
        if k is None:
            pos, e = term
            k = (-posrank[pos],) + grevlex_key(e)
            cache[term] = k
        return k
    return key


class _GBElement:
    __slots__ = ("elem", "lead", "single_position")

    def __init__(self, elem, keyfn):
        self.elem = elem
        self.lead = max(elem.terms, key=keyfn)
        self.single_position = len({pos for pos, _ in elem.terms}) == 1


def _reduce(terms, index, keyfn, p):
    """Full normal form of a term dict against GB elements indexed by lead
    position.  Returns a new term dict.  The current lead is tracked with a
    lazy max-heap (stale entries are skipped) instead of rescanning."""
    work = dict(terms)
    result = {}
    heap = [(tuple(-v for v in keyfn(t)), t) for t in work]
    heapq.heapify(heap)
    while heap:
        _, t = heapq.heappop(heap)
        c = work.get(t)
        if c is None:
            continue
        pos, e = t
        reducer = None
        for g in index.get(pos, ()):
            le = g.lead[1]
            if mono_divides(le, e):
                reducer = g
                break
        if reducer is None:
            result[t] = c
            del work[t]
            continue
        q = mono_div(e, reducer.lead[1])
        for (p2, e2), c2 in reducer.elem.terms.items():
            tt = (p2, mono_mul(e2, q))
            old = work.get(tt)
            v = ((old or 0) - c * c2) % p
            if v:
                work[tt] = v
                if old is None:
                    heapq.heappush(heap, (tuple(-x for x in keyfn(tt)), tt))
            elif old is not None:
                del work[tt]
    return result


def buchberger(module, generators, posrank=None):
    """Groebner basis (auto-reduced, monic, deterministic) of the submodule
    generated by `generators`.  Normal selection strategy; the product
    criterion is applied only to pairs of single-position elements, where it
    is valid for modules."""
    ring = module.ring
    p = ring.p
    if posrank is None:
        posrank = default_posrank(module)
    keyfn = _term_key(posrank)

    G = []
    index = {}

    def add(elem):
        g = _GBElement(elem, keyfn)
        G.append(g)
        index.setdefault(g.lead[0], []).append(g)
        return g

    def pair_entry(i, j):
        gi, gj = G[i], G[j]
        if gi.lead[0] != gj.lead[0]:
            return None
        pos = gi.lead[0]
        l = mono_lcm(gi.lead[1], gj.lead[1])
        if (gi.single_position and gj.single_position
                and mono_mul(gi.lead[1], gj.lead[1]) == l):
            return None  # coprime leads, both single-position: S-pair reduces to 0
        degree = mono_deg(l) + module.twists[pos]
        return (degree, i, j, l)

    heap = []
    counter = 0
    gens = sorted((g for g in generators if not g.is_zero()),
                  key=lambda v: (v.degree(), sorted(v.terms)))
    for v in gens:
        r = _reduce(v.terms, index, keyfn, p)
        if not r:
            continue
        elem = FreeElement(module, r, normalize=False)
        lc = elem.terms[max(r, key=keyfn)]
        elem = elem.scale(ring.inv(lc))
        add(elem)
        i = len(G) - 1
        for j in range(i):
            entry = pair_entry(j, i)
            if entry:
                heapq.heappush(heap, (entry[0], counter, j, i, entry[3]))
                counter += 1

    while heap:
        _, _, i, j, l = heapq.heappop(heap)
        gi, gj = G[i], G[j]
        qi = mono_div(l, gi.lead[1])
        qj = mono_div(l, gj.lead[1])
        s = gi.elem.mul_term(qi, 1) - gj.elem.mul_term(qj, 1)
        r = _reduce(s.terms, index, keyfn, p)
        if not r:
            continue
        elem = FreeElement(module, r, normalize=False)
        lc = elem.terms[max(r, key=keyfn)]
        elem = elem.scale(ring.inv(lc))
        add(elem)
        k = len(G) - 1
        for m in range(k):
            entry = pair_entry(m, k)
            if entry:
                heapq.heappush(heap, (entry[0], counter, m, k, entry[3]))
                counter += 1

    # interreduce
    changed = True
    basis = [g.elem for g in G]
    while changed:
        changed = False
        # drop elements whose lead is divisible by another lead
        keep = []
        leads = []
        for elem in sorted(basis, key=lambda v: keyfn(max(v.terms, key=keyfn))):
            lead = max(elem.terms, key=keyfn)
            if any(lp == lead[0] and mono_divides(le, lead[1]) for lp, le in leads):
                changed = True
                continue
            keep.append(elem)
            leads.append(lead)
        basis = keep
        # tail-reduce each element against the others
        reduced = []
        for k, elem in enumerate(basis):
            idx = {}
            for m, other in enumerate(basis):
                if m == k:
                    continue
                g = _GBElement(other, keyfn)
                idx.setdefault(g.lead[0], []).append(g)
            r = _reduce(elem.terms, idx, keyfn, p)
            relem = FreeElement(module, r, normalize=False)
            lc = relem.terms[max(r, key=keyfn)]
            relem = relem.scale(ring.inv(lc))
            if relem != elem:
                changed = True
            reduced.append(relem)
        basis = reduced
    basis.sort(key=lambda v: keyfn(max(v.terms, key=keyfn)), reverse=True)
    return basis


class Submodule:
    """Submodule of a graded free module, given by homogeneous generators.
    The Groebner basis is computed once and cached eagerly on first use."""

    __slots__ = ("module", "gens", "_posrank", "_gb", "_gb_index", "_keyfn",
                 "_mingens")

    def __init__(self, module, generators, posrank=None):
        self.module = module
        gens = []
        for g in generators:
            if g.module != module:
                raise ValueError("generator not in the ambient free module")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
            gens.append(g)
        self.gens = gens
        self._posrank = posrank if posrank is not None else default_posrank(module)
        self._gb = None
        self._gb_index = None
        self._keyfn = _term_key(self._posrank)
        self._mingens = None

    @property
    def ring(self):
        return self.module.ring

    def groebner(self):
        if self._gb is None:
            gb = buchberger(self.module, self.gens, self._posrank)
            index = {}
            for elem in gb:
                g = _GBElement(elem, self._keyfn)
                index.setdefault(g.lead[0], []).append(g)
            self._gb = gb
            self._gb_index = index
        return self._gb

    def lead_terms(self):
        return [max(g.terms, key=self._keyfn) for g in self.groebner()]

    def normal_form(self, v):
        if v.module != self.module:
            raise ValueError("ambient mismatch")
        self.groebner()
        r = _reduce(v.terms, self._gb_index, self._keyfn, self.ring.p)
        return FreeElement(self.module, r, normalize=False)

    def contains(self, v):
        return self.normal_form(v).is_zero()

    def contains_all(self, elements):
        return all(self.contains(v) for v in elements)

    def equals(self, other):
        if self.module != other.module:
            return False
        return self.contains_all(other.gens) and other.contains_all(self.gens)

    def is_full(self):
        """Is this the whole ambient free module?"""
        return all(self.contains(self.module.gen(k))
                   for k in range(self.module.rank))

    def dim_at(self, degree):
        """dim_K of the degree slice of the submodule."""
        leads = self.lead_terms()
        count = 0
        for pos, e in self.module.terms_of_degree(degree):
            if any(lp == pos and mono_divides(le, e) for lp, le in leads):
                count += 1
        return count

    def degree_slice_spanning_set(self, degree):
        """Homogeneous elements spanning the degree slice as a K-space."""
        out = []
        for g in self.groebner():
            d = degree - g.degree()
            if d < 0:
                continue
            for e in monomials_of_degree(self.ring.n, d):
                out.append(g.mul_term(e, 1))
        return out

    def multiplied_by_maximal_power(self, i):
        """Submodule m^i * self."""
        if i == 0:
            return self
        gens = []
        for g in self.gens:
            for e in monomials_of_degree(self.ring.n, i):
                gens.append(g.mul_term(e, 1))
        return Submodule(self.module, gens)

    def component_submodule(self, degree):
        """Submodule generated by the degree slice (the degree-j component)."""
        return Submodule(self.module, self.degree_slice_spanning_set(degree))

    def min_gen_degrees(self):
        return sorted(g.degree() for g in minimal_generators(self))


def submodule_from_polys(ring, polys):
    """Ideal as a submodule of the rank-1 free module R."""
    F = FreeModule(ring, (0,))
    gens = [F.element([f]) for f in polys if not f.is_zero()]
    return Submodule(F, gens)


class PresentedModule:
    """Finitely generated graded module M = F/U."""

    __slots__ = ("free", "relations", "_minimal", "_cover")

    def __init__(self, free, relations):
        if relations.module != free:
            raise ValueError("relations must live in the given free module")
        self.free = free
        self.relations = relations
        self._minimal = None
        self._cover = None

    @property
    def ring(self):
        return self.free.ring

    @classmethod
    def quotient_by_ideal(cls, ideal):
        """R/I for an ideal I given as a rank-1 submodule."""
        return cls(ideal.module, ideal)

    @classmethod
    def free_module(cls, free):
        return cls(free, Submodule(free, []))

    def minimal(self):
        """Pruned presentation (F_min, U_min, surviving original positions)."""
        if self._minimal is None:
            self._minimal = prune_presentation(self.free, self.relations.gens)
        return self._minimal

    def minimal_free(self):
        return self.minimal()[0]

    def minimal_relations(self):
        F, gens, _ = self.minimal()
        return Submodule(F, gens)

    def is_zero(self):
        return self.minimal()[0].rank == 0

    def dim_at(self, degree):
        F, gens, _ = self.minimal()
        if F.rank == 0:
            return 0
        return F.dim_at(degree) - Submodule(F, gens).dim_at(degree)

    def hilbert_function(self, lo, hi):
        """dims[j] = dim_K M_j for lo <= j <= hi."""
        if lo > hi:
            raise ValueError("lo must be <= hi")
        F, gens, _ = self.minimal()
        U = Submodule(F, gens)
        dims = {}
        for j in range(lo, hi + 1):
            dims[j] = F.dim_at(j) - U.dim_at(j) if F.rank else 0
        return dims


def prune_presentation(free, gens):
    """Minimalize a presentation F/<gens>: repeatedly eliminate positions hit
    by unit entries.  Returns (new free module, new generators, surviving
    original position indices)."""
    ring = free.ring
    twists = list(free.twists)
    surviving = list(range(free.rank))
    zero_exps = (0,) * ring.n
    current = [dict(g.terms) for g in gens if not g.is_zero()]

    while True:
        hit = None
        for gi, terms in enumerate(current):
            for (pos, e), c in terms.items():
                if e == zero_exps:
                    hit = (gi, pos, c)
                    break
            if hit:
                break
        if hit is None:
            break
        gi, pos, c = hit
        inv = ring.inv(c)
        w = {t: (v * inv) % ring.p for t, v in current[gi].items()}
        new = []
        for k, terms in enumerate(current):
            if k == gi:
                continue
            # subtract (component of terms at pos) * w
            vpos = [(e, cv) for (q, e), cv in terms.items() if q == pos]
            if vpos:
                acc = dict(terms)
                for e, cv in vpos:
                    for (q2, e2), c2 in w.items():
                        t = (q2, mono_mul(e2, e))
                        v = (acc.get(t, 0) - cv * c2) % ring.p
                        if v:
                            acc[t] = v
                        elif t in acc:
                            del acc[t]
                terms = acc
            if terms:
                new.append(terms)
        # drop position pos everywhere
        remap = {q: (q if q < pos else q - 1) for q in range(len(twists)) if q != pos}
        del twists[pos]
        del surviving[pos]
        current = [{(remap[q], e): v for (q, e), v in terms.items()} for terms in new]

    Fmin = FreeModule(ring, twists)
    out = []
    for terms in current:
        if terms:
            out.append(FreeElement(Fmin, terms, normalize=False))
    return Fmin, out, surviving


def minimal_generators(sub):
    """Minimal generating set (a subset of spanning data) of a submodule,
    via degreewise linear algebra against the previously kept generators."""
    if sub._mingens is not None:
        return sub._mingens
    module = sub.module
    ring = module.ring
    gens = sorted(sub.gens, key=lambda g: (g.degree(), sorted(g.terms)))
    kept = []
    i = 0
    while i < len(gens):
        d = gens[i].degree()
        group = []
        while i < len(gens) and gens[i].degree() == d:
            group.append(gens[i])
            i += 1
        lower = Submodule(module, kept, sub._posrank)
        pivots = {}
        keyfn = sub._keyfn
        for g in group:
            vec = dict(lower.normal_form(g).terms)
            while vec:
                t = max(vec, key=keyfn)
                if t not in pivots:
                    break
                c = vec[t]
                for t2, c2 in pivots[t].items():
                    v = (vec.get(t2, 0) - c * c2) % ring.p
                    if v:
                        vec[t2] = v
                    elif t2 in vec:
                        del vec[t2]
            if vec:
                t = max(vec, key=keyfn)
                inv = ring.inv(vec[t])
                pivots[t] = {tt: (cc * inv) % ring.p for tt, cc in vec.items()}
                kept.append(g)
    sub._mingens = kept
    return kept


def kernel_of_map(source, target, images):
    """Kernel of the graded map source -> target.free/target.relations sending
    the k-th generator to images[k].  Computed by an elimination Groebner
    basis in F ⊕ source with the F positions ranked highest."""
    F = target.free
    ring = F.ring
    if len(images) != source.rank:
        raise ValueError("one image per source generator required")
    for k, img in enumerate(images):
        if img.module != F:
            raise ValueError("image not in the target free module")
        if not img.is_zero() and img.degree() != source.twists[k]:
            raise ValueError(
                f"image degree {img.degree()} does not match twist {source.twists[k]}")
    m = F.rank
    big = FreeModule(ring, F.twists + source.twists)
    posrank = list(range(big.rank))  # eliminate the F block
    gens = []
    for k, img in enumerate(images):
        terms = {(pos, e): c for (pos, e), c in img.terms.items()}
        terms[(m + k, (0,) * ring.n)] = 1
        gens.append(FreeElement(big, terms))
    for u in target.relations.gens:
        gens.append(FreeElement(big, dict(u.terms)))
    gb = buchberger(big, gens, posrank)
    ker = []
    for g in gb:
        if all(pos >= m for pos, _ in g.terms):
            ker.append(FreeElement(source,
                                   {(pos - m, e): c for (pos, e), c in g.terms.items()},
                                   normalize=False))
    return Submodule(source, ker)


def presented_from_submodule(sub):
    """Present a submodule S ⊆ F as a module: G on minimal generators of S,
    relations the kernel of G -> F."""
    gens = minimal_generators(sub)
    G = FreeModule(sub.ring, tuple(g.degree() for g in gens))
    if not gens:
        return PresentedModule.free_module(G)
    K = kernel_of_map(G, PresentedModule.free_module(sub.module), gens)
    return PresentedModule(G, K)


# ---------------------------------------------------------------------------
# colon modules and saturation

def colon_by_linear(U, z):
    """U :_F z for a linear form z: the largest W ⊆ F with z·W ⊆ U."""
    F = U.module
    zp = z.polynomial() if hasattr(z, "polynomial") else z
    source = FreeModule(F.ring, tuple(j + 1 for j in F.twists))
    images = [F.gen(k).mul_poly(zp) for k in range(F.rank)]
    K = kernel_of_map(source, PresentedModule(F, U), images)
    gens = [FreeElement(F, dict(g.terms)) for g in K.gens]
    return Submodule(F, gens)


def colon_by_maximal(U):
    """U :_F m, computed as the kernel of f |-> (x1 f, ..., xn f)."""
    F = U.module
    ring = F.ring
    n = ring.n
    if n == 0:
        # m = 0, so the colon is all of F
        return Submodule(F, [F.gen(k) for k in range(F.rank)])
    m = F.rank
    target_free = FreeModule(ring, F.twists * n)
    rel_gens = []
    for i in range(n):
        for u in U.gens:
            rel_gens.append(FreeElement(
                target_free,
                {(i * m + pos, e): c for (pos, e), c in u.terms.items()},
                normalize=False))
    target = PresentedModule(target_free, Submodule(target_free, rel_gens))
    source = FreeModule(ring, tuple(j + 1 for j in F.twists))
    images = []
    for k in range(F.rank):
        terms = {}
        for i in range(n):
            e = [0] * n
            e[i] = 1
            terms[(i * m + k, tuple(e))] = 1
        images.append(FreeElement(target_free, terms))
    K = kernel_of_map(source, target, images)
    gens = [FreeElement(F, dict(g.terms)) for g in K.gens]
    return Submodule(F, gens)


def saturate(U):
    """U :_F m^∞ by iterating U :_F m to a fixpoint."""
    current = U
    while True:
        nxt = colon_by_maximal(current)
        if current.contains_all(nxt.gens):
            return current
        current = Submodule(U.module, current.gens + nxt.gens)


# ---------------------------------------------------------------------------
# dimensions of subquotients W/U (U ⊆ W ⊆ F)

def _monomial_colon(gens, b):
    """Generators of the monomial ideal (gens : b)."""
    out = []
    for a in gens:
        out.append(tuple(max(x - y, 0) for x, y in zip(a, b)))
    return out


def _is_m_primary_monomial(gens, n):
    """Does the monomial ideal contain a power of every variable?"""
    if n == 0:
        return bool(gens)
    bounds = [None] * n
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) == 0:
            return True  # contains 1
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or g[i] < bounds[i]:
                bounds[i] = g[i]
    return all(b is not None for b in bounds)


def quotient_dims(W, U):
    """Degreewise dims of W/U for submodules U ⊆ W of the same free module.
    Returns (dims dict, finite flag); dims is only meaningful when finite."""
    F = W.module
    n = F.ring.n
    wleads = W.lead_terms()
    uleads = U.lead_terms()
    by_pos_u = {}
    for pos, e in uleads:
        by_pos_u.setdefault(pos, []).append(e)
    # finiteness certificate and degree bound
    bound = None
    for pos, b in wleads:
        ugens = by_pos_u.get(pos, [])
        if any(mono_divides(a, b) for a in ugens):
            continue
        colon = _monomial_colon(ugens, b)
        if not _is_m_primary_monomial(colon, n):
            return {}, False
        slack = 0
        for i in range(n):
            k = min(g[i] for g in colon
                    if sum(1 for x in g if x) <= 1 and (g[i] or not any(g)))
            slack += max(k - 1, 0)
        d = mono_deg(b) + F.twists[pos] + slack
        bound = d if bound is None else max(bound, d)
    if bound is None:
        return {}, True  # W and U have the same lead-term module
    lo = min(mono_deg(e) + F.twists[pos] for pos, e in wleads)
    dims = {}
    for j in range(lo, bound + 1):
        d = W.dim_at(j) - U.dim_at(j)
        if d:
            dims[j] = d
    return dims, True


def dims_degree(dims):
    """deg of a graded K-space given by its dims; -inf for zero."""
    return max(dims) if dims else NEG_INF


def dims_indeg(dims):
    """indeg; +inf for zero."""
    return min(dims) if dims else POS_INF
