"""Independent dense linear algebra oracles used to cross-check the Groebner
engine.  Everything here works degreewise with explicit coordinate vectors
over GF(p) and row reduction; no Groebner machinery is used."""

from gammadepth.ring import matrix_rank
from gammadepth.modules import FreeElement


def term_basis(free, degree):
    """Ordered list of (position, exponent) terms spanning the degree slice
    of a free module."""
    return sorted(free.terms_of_degree(degree))


def coords(elem, basis_index):
    row = [0] * len(basis_index)
    for t, c in elem.terms.items():
        row[basis_index[t]] = c
    return row


def slice_rows(gens, free, degree):
    """Coordinate rows spanning the degree slice of the span of gens."""
    basis = term_basis(free, degree)
    index = {t: i for i, t in enumerate(basis)}
    rows = []
    for g in gens:
        d = degree - g.degree()
        if d < 0:
            continue
        from gammadepth.ring import monomials_of_degree
        for e in monomials_of_degree(free.ring.n, d):
            rows.append(coords(g.mul_term(e, 1), index))
    return rows, index


def dense_submodule_dim(sub, degree):
    """dim_K of the degree slice of a submodule by dense row reduction."""
    rows, _ = slice_rows(sub.gens, sub.module, degree)
    if not rows:
        return 0
    return matrix_rank(rows, sub.ring.p)


def dense_contains(gens, free, v):
    """Membership of a homogeneous element in the span of gens, decided by a
    rank comparison in its degree slice."""
    if v.is_zero():
        return True
    d = v.degree()
    rows, index = slice_rows(gens, free, d)
    r0 = matrix_rank(rows, free.ring.p) if rows else 0
    rows.append(coords(v, index))
    return matrix_rank(rows, free.ring.p) == r0


def dense_colon_dim(U, z, degree):
    """dim_K of {v in F_degree : z v in U_{degree+1}} by dense algebra:
    the nullity of multiplication by z composed with projection mod U."""
    F = U.module
    p = F.ring.p
    basis = term_basis(F, degree)
    if not basis:
        return 0
    target = term_basis(F, degree + 1)
    tindex = {t: i for i, t in enumerate(target)}
    urows, _ = slice_rows(U.gens, F, degree + 1)
    rank_u = matrix_rank(urows, p) if urows else 0
    zp = z.polynomial()
    rows = list(urows)
    image_rows = []
    for t in basis:
        v = FreeElement(F, {t: 1}).mul_poly(zp)
        image_rows.append(coords(v, tindex))
    # rank of [U slice; z * F slice] minus rank of U slice = rank of the
    # composite map F_degree -> (F/U)_{degree+1}
    rank_total = matrix_rank(rows + image_rows, p)
    return len(basis) - (rank_total - rank_u)
