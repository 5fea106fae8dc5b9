"""Minimal graded free resolutions, Betti tables, regularity, and Poincare
series for finitely generated graded modules over GF(p)[x1..xn]."""

from __future__ import annotations

import math
from collections import Counter

from .modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    kernel_of_map,
    minimal_generators,
    prune_presentation,
)

NEG_INF = float("-inf")


class BettiTable:
    """Graded Betti numbers beta_{i,j}, stored as {(i, j): beta}."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in entries.items() if v}

    def beta(self, i, j=None):
        if j is not None:
            return self.entries.get((i, j), 0)
        return sum(v for (ii, _), v in self.entries.items() if ii == i)

    def projective_dimension(self):
        if not self.entries:
            return NEG_INF
        return max(i for i, _ in self.entries)

    def regularity(self):
        if not self.entries:
            return NEG_INF
        return max(j - i for i, j in self.entries)

    def poincare(self):
        """Coefficients of p(t) = sum beta_i t^i as a list."""
        if not self.entries:
            return [0]
        pd = self.projective_dimension()
        return [self.beta(i) for i in range(pd + 1)]

    def graded_poincare(self):
        """{(i, j): beta} view of P(t, u) = sum beta_{i,j} t^i u^j."""
        return dict(self.entries)

    def rows(self):
        """Macaulay2-style display rows: row j-i, column i."""
        out = {}
        for (i, j), b in sorted(self.entries.items()):
            out.setdefault(j - i, {})[i] = b
        return out

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.entries})"

    def format(self):
        if not self.entries:
            return "0"
        pd = self.projective_dimension()
        rows = self.rows()
        lines = []
        header = ["    "] + [f"{i:>6}" for i in range(pd + 1)]
        lines.append("".join(header))
        for r in sorted(rows):
            cells = [f"{r:>4}"]
            for i in range(pd + 1):
                v = rows[r].get(i)
                cells.append(f"{v:>6}" if v else "     .")
            lines.append("".join(cells))
        return "\n".join(lines)


class Resolution:
    """Minimal graded free resolution ... -> F_1 -> F_0 -> M -> 0.

    frees[i] is F_i; maps[i] (for i >= 1) holds the columns of F_i -> F_{i-1}
    as elements of F_{i-1}.
    """

    def __init__(self, frees, maps):
        self.frees = frees
        self.maps = maps

    def length(self):
        return len(self.frees) - 1

    def betti(self):
        entries = Counter()
        for i, F in enumerate(self.frees):
            for j in F.twists:
                entries[(i, j)] += 1
        return BettiTable(entries)


def minimal_cover(mod):
    """Minimal presentation data of M: (F0, syzygy submodule of F0 with
    Syz1 ⊆ m F0, surviving original positions).  Cached on the module."""
    if mod._cover is None:
        F0, rel_gens, surviving = mod.minimal()
        syz = Submodule(F0, minimal_generators(Submodule(F0, rel_gens)))
        mod._cover = (F0, syz, surviving)
    return mod._cover


def resolve(mod, max_steps=None):
    """Minimal free resolution of a presented module.  Over a polynomial
    ring this terminates within n steps; max_steps is a safety valve."""
    ring = mod.ring
    limit = ring.n + 1 if max_steps is None else max_steps
    F0, syz, _ = minimal_cover(mod)
    frees = [F0]
    maps = []
    current = syz
    step = 0
    while True:
        gens = minimal_generators(current)
        if not gens:
            break
        step += 1
        if step > limit:
            raise RuntimeError("resolution did not terminate within the step limit")
        Fi = FreeModule(ring, tuple(g.degree() for g in gens))
        frees.append(Fi)
        maps.append(list(gens))
        current = kernel_of_map(
            Fi, PresentedModule.free_module(frees[step - 1]), gens)
    return Resolution(frees, maps)


def betti_table(mod, max_steps=None):
    return resolve(mod, max_steps).betti()


def first_syzygy_module(mod):
    """Syz1 M as a presented module: cokernel presentation of the minimal
    first syzygies, i.e. F1 / ker(F1 -> F0)."""
    ring = mod.ring
    F0, syz, _ = minimal_cover(mod)
    gens = minimal_generators(syz)
    F1 = FreeModule(ring, tuple(g.degree() for g in gens))
    if not gens:
        return PresentedModule.free_module(F1)
    K = kernel_of_map(F1, PresentedModule.free_module(F0), gens)
    return PresentedModule(F1, K)


def syzygy_module(mod, i):
    """Syz_i M (Syz_0 M = M itself)."""
    current = mod
    for _ in range(i):
        current = first_syzygy_module(current)
    return current


def regularity(mod):
    return betti_table(mod).regularity()


def poincare(mod):
    return betti_table(mod).poincare()


def poly_str(coeffs, var="t"):
    """Human-readable polynomial from a coefficient list."""
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}"
            exp = var if i == 1 else f"{var}^{i}"
            parts.append(head + exp)
    return " + ".join(parts) if parts else "0"


def graded_poly_str(entries):
    """P(t, u) as a string from {(i, j): beta}."""
    parts = []
    for (i, j), b in sorted(entries.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        factors = []
        if b != 1:
            factors.append(str(b))
        if i == 1:
            factors.append("t")
        elif i > 1:
            factors.append(f"t^{i}")
        if j == 1:
            factors.append("u")
        elif j > 1:
            factors.append(f"u^{j}")
        parts.append("".join(factors) if factors else "1")
    return " + ".join(parts) if parts else "0"


def poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if not c:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_scale(a, c):
    out = [c * v for v in a]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def one_plus_t_power(k):
    """(1 + t)^k as a coefficient list."""
    return [math.comb(k, i) for i in range(k + 1)]
